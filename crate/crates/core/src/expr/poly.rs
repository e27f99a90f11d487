use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::{Rational, Scalar};

/// An indeterminate of the polynomial ring. Coordinates order before
/// applications; applications order by name, derivative order, argument.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Coord(usize),
    Apply(Arc<Application>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Application {
    pub name: String,
    pub order: u32,
    pub arg: Scalar,
}

impl Atom {
    pub fn apply(name: impl Into<String>, order: u32, arg: Scalar) -> Atom {
        Atom::Apply(Arc::new(Application { name: name.into(), order, arg }))
    }

    pub(crate) fn remap_coords(&self, f: &dyn Fn(usize) -> usize) -> Atom {
        match self {
            Atom::Coord(i) => Atom::Coord(f(*i)),
            Atom::Apply(app) => Atom::apply(app.name.clone(), app.order, app.arg.remap_coords(f)),
        }
    }
}

/// Power product, sorted by atom with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Atom, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn atom(a: Atom, e: u32) -> Self {
        let mut v = SmallVec::new();
        if e > 0 {
            v.push((a, e));
        }
        Monomial(v)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn factors(&self) -> &[(Atom, u32)] {
        &self.0
    }

    pub fn exponent(&self, a: &Atom) -> u32 {
        self.0.iter().find(|(b, _)| b == a).map_or(0, |(_, e)| *e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.merge(other, |x, y| x + y)
    }

    /// Exact quotient, `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::new();
        let mut j = 0;
        for (a, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < *a {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == *a {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => continue,
                    Ordering::Greater => out.push((a.clone(), e - f)),
                }
            } else {
                out.push((a.clone(), *e));
            }
        }
        (j == other.0.len()).then_some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = SmallVec::new();
        for (a, e) in &self.0 {
            let f = other.exponent(a);
            if f > 0 {
                out.push((a.clone(), (*e).min(f)));
            }
        }
        Monomial(out)
    }

    /// Splits off the power of `a`.
    pub fn split(&self, a: &Atom) -> (u32, Monomial) {
        let mut rest = self.clone();
        let mut e = 0;
        rest.0.retain(|(b, f)| {
            if b == a {
                e = *f;
                false
            } else {
                true
            }
        });
        (e, rest)
    }

    fn merge(&self, other: &Monomial, op: impl Fn(u32, u32) -> u32) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), op(a[i].1, b[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().cloned());
        Monomial(out)
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((x, e)), Some((y, f))) => match x.cmp(y) {
                    // earlier atoms are the more significant variables
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match e.cmp(f) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        o => return o,
                    },
                },
            }
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with rational coefficients, terms in strictly
/// decreasing graded-lex order, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly {
    terms: Vec<(Monomial, Rational)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(Monomial::one(), c)] }
        }
    }

    pub fn atom(a: Atom) -> Self {
        Poly { terms: vec![(Monomial::atom(a, 1), Rational::one())] }
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: BTreeMap<Monomial, Rational>) -> Self {
        Poly { terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn lead(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn lead_coeff(&self) -> Rational {
        self.terms.first().map_or_else(Rational::zero, |t| t.1.clone())
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.combine(other, true)
    }

    fn combine(&self, other: &Poly, negate: bool) -> Poly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let sgn = |c: &Rational| if negate { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), sgn(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sgn(c))));
        Poly { terms: out }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                *acc.entry(m.mul(n)).or_insert_with(Rational::zero) += c * d;
            }
        }
        Self::from_map(acc)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        // multiplying by a monomial preserves the term order
        Poly { terms: self.terms.iter().map(|(n, d)| (n.mul(m), d * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Exact quotient, `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (dm, dc) = d.lead().cloned()?;
        let mut q = Vec::new();
        let mut r = self.clone();
        while let Some((rm, rc)) = r.lead().cloned() {
            let m = rm.div(&dm)?;
            let c = rc / &dc;
            r = r.sub(&d.mul_term(&m, &c));
            q.push((m, c));
        }
        Some(Poly { terms: q })
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.lead() {
            Some((_, c)) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut s = BTreeSet::new();
        for (m, _) in &self.terms {
            for (a, _) in m.factors() {
                s.insert(a.clone());
            }
        }
        s
    }

    pub fn contains_atom(&self, a: &Atom) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(a) > 0)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else { return Monomial::one() };
        let mut g = first.clone();
        for (m, _) in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    pub fn div_monomial(&self, m: &Monomial) -> Poly {
        if m.is_one() {
            return self.clone();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(n, c)| (n.div(m).expect("monomial divides every term"), c.clone()))
                .collect(),
        }
    }

    /// Coefficients in `a`, lowest power first.
    pub fn to_univariate(&self, a: &Atom) -> Vec<Poly> {
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = Vec::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(a);
            let e = e as usize;
            if buckets.len() <= e {
                buckets.resize_with(e + 1, Vec::new);
            }
            buckets[e].push((rest, c.clone()));
        }
        buckets.into_iter().map(Poly::from_terms).collect()
    }

    pub fn from_univariate(a: &Atom, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&c.mul_term(&Monomial::atom(a.clone(), e as u32), &Rational::one()));
            }
        }
        out
    }

    pub fn is_negative_lead(&self) -> bool {
        self.lead().is_some_and(|(_, c)| c.is_negative())
    }

    pub(crate) fn remap_coords(&self, f: &dyn Fn(usize) -> usize) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut out = Monomial::one();
            for (a, e) in m.factors() {
                out = out.mul(&Monomial::atom(a.remap_coords(f), *e));
            }
            (out, c.clone())
        }))
    }
}
