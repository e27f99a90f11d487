use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::gcd::gcd;
use super::poly::{Atom, Monomial, Poly};
use super::{ExprError, Rational, BUILTINS};
use crate::Chart;

/// Canonical rational function: `num / den` with gcd 1, monic denominator
/// and a zero numerator always paired with denominator 1. Two scalars are
/// mathematically equal exactly when they compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Scalar { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_rational(q: Rational) -> Self {
        Scalar { num: Poly::constant(q), den: Poly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_rational(Rational::new(n.into(), d.into()))
    }

    pub fn coord(i: usize) -> Self {
        Self::from_poly(Poly::atom(Atom::Coord(i)))
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar { num: p, den: Poly::one() }
    }

    pub fn from_atom(a: Atom) -> Self {
        Self::from_poly(Poly::atom(a))
    }

    /// `name^(order)(arg)`. Builtins are rewritten through their derivative
    /// rules and folded at zero.
    pub fn apply(name: &str, order: u32, arg: Scalar) -> Scalar {
        match name {
            "sin" | "cos" | "exp" => {
                let (base, sign) = builtin_derivative(name, order);
                if arg.is_zero() {
                    let v = match base {
                        "sin" => 0,
                        _ => 1,
                    };
                    return Scalar::from_int(v * sign);
                }
                let s = Scalar::from_atom(Atom::apply(base, 0, arg));
                if sign < 0 {
                    -s
                } else {
                    s
                }
            }
            _ => Scalar::from_atom(Atom::apply(name, order, arg)),
        }
    }

    /// Builds `num / den`, reducing to canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self, ExprError> {
        if den.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.as_constant() {
            return Scalar { num: num.scale(&c.recip()), den: Poly::one() };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lc = den.lead_coeff();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.recip();
            Scalar { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn scale(&self, q: &Rational) -> Scalar {
        if q.is_zero() {
            return Scalar::zero();
        }
        Scalar { num: self.num.scale(q), den: self.den.clone() }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ExprError> {
        Ok(self * &other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar, ExprError> {
        if self.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        let lc = self.num.lead_coeff().recip();
        Ok(Scalar { num: self.den.scale(&lc), den: self.num.scale(&lc) })
    }

    pub fn pow(&self, e: i64) -> Result<Scalar, ExprError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = u32::try_from(e.unsigned_abs()).map_err(|_| ExprError::ExponentTooLarge)?;
        Ok(Scalar { num: base.num.pow(k), den: base.den.pow(k) })
    }

    /// Partial derivative in coordinate `k`, treating applications through
    /// the chain rule.
    pub fn derivative(&self, k: usize) -> Scalar {
        let dn = poly_derivative(&self.num, k);
        if self.den.is_one() {
            return dn;
        }
        let dd = poly_derivative(&self.den, k);
        if dn.is_zero() && dd.is_zero() {
            return Scalar::zero();
        }
        let den = Scalar::from_poly(self.den.clone());
        (&dn - &(self * &dd)).checked_div(&den).expect("denominator is nonzero")
    }

    pub fn depends_on(&self, k: usize) -> bool {
        let atom_dep = |p: &Poly| p.atoms().iter().any(|a| atom_depends_on(a, k));
        atom_dep(&self.num) || atom_dep(&self.den)
    }

    pub fn eval(&self, env: &Environment) -> Result<Rational, ExprError> {
        let d = eval_poly(&self.den, env)?;
        if d.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        Ok(eval_poly(&self.num, env)? / d)
    }

    pub(crate) fn remap_coords(&self, f: &dyn Fn(usize) -> usize) -> Scalar {
        Scalar::normalize(self.num.remap_coords(f), self.den.remap_coords(f))
    }

    pub fn display<'a>(&'a self, chart: &'a Chart) -> ScalarDisplay<'a> {
        ScalarDisplay { s: self, chart }
    }

    pub fn to_string_in(&self, chart: &Chart) -> String {
        self.display(chart).to_string()
    }
}

fn builtin_derivative(name: &str, order: u32) -> (&'static str, i64) {
    match name {
        "exp" => ("exp", 1),
        "sin" => [("sin", 1), ("cos", 1), ("sin", -1), ("cos", -1)][(order % 4) as usize],
        _ => [("cos", 1), ("sin", -1), ("cos", -1), ("sin", 1)][(order % 4) as usize],
    }
}

fn atom_depends_on(a: &Atom, k: usize) -> bool {
    match a {
        Atom::Coord(i) => *i == k,
        Atom::Apply(app) => app.arg.depends_on(k),
    }
}

fn atom_derivative(a: &Atom, k: usize) -> Scalar {
    match a {
        Atom::Coord(i) => {
            if *i == k {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        }
        Atom::Apply(app) => {
            let darg = app.arg.derivative(k);
            if darg.is_zero() {
                return Scalar::zero();
            }
            let outer = if BUILTINS.contains(&app.name.as_str()) {
                Scalar::apply(&app.name, app.order + 1, app.arg.clone())
            } else {
                Scalar::from_atom(Atom::apply(app.name.clone(), app.order + 1, app.arg.clone()))
            };
            &outer * &darg
        }
    }
}

fn poly_derivative(p: &Poly, k: usize) -> Scalar {
    let mut cache: BTreeMap<&Atom, Scalar> = BTreeMap::new();
    let mut poly_part: Vec<(Monomial, Rational)> = Vec::new();
    let mut rational_part = Scalar::zero();
    for (m, c) in p.terms() {
        for (a, e) in m.factors() {
            let da = cache.entry(a).or_insert_with(|| atom_derivative(a, k));
            if da.is_zero() {
                continue;
            }
            let (_, rest) = m.split(a);
            let rest = rest.mul(&Monomial::atom(a.clone(), e - 1));
            let coeff = c * Rational::from_integer((*e).into());
            if da.is_polynomial() {
                for (n, d) in da.num().terms() {
                    poly_part.push((rest.mul(n), &coeff * d));
                }
            } else {
                rational_part = &rational_part + &(&*da * &Scalar::from_poly(Poly::term(rest, coeff)));
            }
        }
    }
    &Scalar::from_poly(Poly::from_terms(poly_part)) + &rational_part
}

fn eval_poly(p: &Poly, env: &Environment) -> Result<Rational, ExprError> {
    let mut atoms: HashMap<&Atom, Rational> = HashMap::new();
    let mut total = Rational::zero();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (a, e) in m.factors() {
            let v = match atoms.get(a) {
                Some(v) => v.clone(),
                None => {
                    let v = env.atom_value(a)?;
                    atoms.insert(a, v.clone());
                    v
                }
            };
            t *= num_traits::pow(v, *e as usize);
        }
        total += t;
    }
    Ok(total)
}

/// Values for coordinates and opaque applications used by exact evaluation.
/// An opaque function can be bound pointwise or modelled by a polynomial,
/// in which case its derivatives are evaluated from the model.
#[derive(Clone, Debug, Default)]
pub struct Environment {
    point: BTreeMap<usize, Rational>,
    values: HashMap<(String, u32, Rational), Rational>,
    models: HashMap<String, Vec<Rational>>,
}

impl Environment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn at(point: &[Rational]) -> Self {
        let mut env = Self::new();
        for (i, v) in point.iter().enumerate() {
            env.point.insert(i, v.clone());
        }
        env
    }

    pub fn set_coord(&mut self, i: usize, v: Rational) -> &mut Self {
        self.point.insert(i, v);
        self
    }

    pub fn bind(&mut self, name: &str, order: u32, arg: Rational, value: Rational) -> &mut Self {
        self.values.insert((name.to_string(), order, arg), value);
        self
    }

    /// Models `name` by the polynomial with the given coefficients, lowest
    /// degree first.
    pub fn model(&mut self, name: &str, coeffs: Vec<Rational>) -> &mut Self {
        self.models.insert(name.to_string(), coeffs);
        self
    }

    pub fn coord(&self, i: usize) -> Option<&Rational> {
        self.point.get(&i)
    }

    fn atom_value(&self, a: &Atom) -> Result<Rational, ExprError> {
        match a {
            Atom::Coord(i) => self.point.get(i).cloned().ok_or(ExprError::Unbound(format!("coordinate #{i}"))),
            Atom::Apply(app) => {
                let arg = app.arg.eval(self)?;
                if let Some(v) = self.values.get(&(app.name.clone(), app.order, arg.clone())) {
                    return Ok(v.clone());
                }
                if let Some(coeffs) = self.models.get(&app.name) {
                    return Ok(poly_model_derivative(coeffs, app.order, &arg));
                }
                if BUILTINS.contains(&app.name.as_str()) {
                    return Err(ExprError::NotRational(app.name.clone()));
                }
                Err(ExprError::Unbound(format!("{}{}", app.name, "'".repeat(app.order as usize))))
            }
        }
    }
}

fn poly_model_derivative(coeffs: &[Rational], order: u32, x: &Rational) -> Rational {
    let order = order as usize;
    let mut total = Rational::zero();
    let mut power = Rational::one();
    for (k, c) in coeffs.iter().enumerate().skip(order) {
        let falling: i64 = ((k - order + 1)..=k).map(|v| v as i64).product();
        total += c * Rational::from_integer(falling.into()) * &power;
        power *= x;
    }
    total
}

pub struct ScalarDisplay<'a> {
    s: &'a Scalar,
    chart: &'a Chart,
}

impl fmt::Display for ScalarDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Scalar { num, den } = self.s;
        if den.is_one() {
            return write_poly(f, num, self.chart);
        }
        if num.len() > 1 {
            write!(f, "(")?;
            write_poly(f, num, self.chart)?;
            write!(f, ")")?;
        } else {
            write_poly(f, num, self.chart)?;
        }
        write!(f, "/")?;
        let simple_den = den.len() == 1 && den.terms()[0].0.factors().len() == 1 && den.terms()[0].1.is_one();
        if simple_den {
            write_poly(f, den, self.chart)
        } else {
            write!(f, "(")?;
            write_poly(f, den, self.chart)?;
            write!(f, ")")
        }
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &Rational) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

fn write_atom(f: &mut fmt::Formatter<'_>, a: &Atom, chart: &Chart) -> fmt::Result {
    match a {
        Atom::Coord(i) => write!(f, "{}", chart.coord_name(*i)),
        Atom::Apply(app) => {
            write!(f, "{}{}(", app.name, "'".repeat(app.order as usize))?;
            write!(f, "{}", app.arg.display(chart))?;
            write!(f, ")")
        }
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial, chart: &Chart) -> fmt::Result {
    for (k, (a, e)) in m.factors().iter().enumerate() {
        if k > 0 {
            write!(f, "*")?;
        }
        write_atom(f, a, chart)?;
        if *e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &Poly, chart: &Chart) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        match (k, neg) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        let c = c.abs();
        if m.is_one() {
            write_rational(f, &c)?;
        } else {
            if !c.is_one() {
                write_rational(f, &c)?;
                write!(f, "*")?;
            }
            write_monomial(f, m, chart)?;
        }
    }
    Ok(())
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

fn add_impl(a: &Scalar, b: &Scalar, negate: bool) -> Scalar {
    let comb = |x: &Poly, y: &Poly| if negate { x.sub(y) } else { x.add(y) };
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate { -b } else { b.clone() };
    }
    if a.den == b.den {
        let num = comb(&a.num, &b.num);
        if a.den.is_one() {
            return Scalar { num, den: Poly::one() };
        }
        return Scalar::normalize(num, a.den.clone());
    }
    let g = gcd(&a.den, &b.den);
    let ad = a.den.div_exact(&g).expect("gcd divides");
    let bd = b.den.div_exact(&g).expect("gcd divides");
    let num = comb(&a.num.mul(&bd), &b.num.mul(&ad));
    Scalar::normalize(num, ad.mul(&b.den))
}

binop!(Add, add, |a, b| add_impl(a, b, false));
binop!(Sub, sub, |a, b| add_impl(a, b, true));
binop!(Mul, mul, |a, b| {
    if a.is_zero() || b.is_zero() {
        return Scalar::zero();
    }
    if a.den.is_one() && b.den.is_one() {
        return Scalar { num: a.num.mul(&b.num), den: Poly::one() };
    }
    let g1 = gcd(&a.num, &b.den);
    let g2 = gcd(&b.num, &a.den);
    let n1 = a.num.div_exact(&g1).expect("gcd divides");
    let d2 = b.den.div_exact(&g1).expect("gcd divides");
    let n2 = b.num.div_exact(&g2).expect("gcd divides");
    let d1 = a.den.div_exact(&g2).expect("gcd divides");
    let num = n1.mul(&n2);
    let den = d1.mul(&d2);
    let lc = den.lead_coeff();
    if lc.is_one() {
        Scalar { num, den }
    } else {
        let inv = lc.recip();
        Scalar { num: num.scale(&inv), den: den.scale(&inv) }
    }
});

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::from_rational(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Scalar {
        Scalar::coord(0)
    }
    fn y() -> Scalar {
        Scalar::coord(1)
    }

    #[test]
    fn cancels_common_factors() {
        let a = &(&x() * &x()) - &(&y() * &y());
        let b = &x() - &y();
        let q = a.checked_div(&b).unwrap();
        assert_eq!(q, &x() + &y());
        assert!(q.is_polynomial());
    }

    #[test]
    fn sums_of_fractions() {
        let one = Scalar::one();
        let a = one.checked_div(&x()).unwrap();
        let b = one.checked_div(&y()).unwrap();
        let s = &a + &b;
        let expect = (&x() + &y()).checked_div(&(&x() * &y())).unwrap();
        assert_eq!(s, expect);
        assert!((&s - &expect).is_zero());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(x().checked_div(&Scalar::zero()), Err(ExprError::DivisionByZero));
        assert!(Scalar::zero().pow(-1).is_err());
    }

    #[test]
    fn derivative_of_quotient() {
        // d/dx (x / (x + y)) = y / (x + y)^2
        let s = x().checked_div(&(&x() + &y())).unwrap();
        let d = s.derivative(0);
        let expect = y().checked_div(&(&x() + &y()).pow(2).unwrap()).unwrap();
        assert_eq!(d, expect);
    }

    #[test]
    fn builtin_rules() {
        let s = Scalar::apply("sin", 0, &x() * &y());
        let d = s.derivative(0);
        assert_eq!(d, &y() * &Scalar::apply("cos", 0, &x() * &y()));
        assert_eq!(Scalar::apply("cos", 0, Scalar::zero()), Scalar::one());
        assert_eq!(Scalar::apply("sin", 2, x()), -Scalar::apply("sin", 0, x()));
    }

    #[test]
    fn opaque_chain_rule() {
        let f = Scalar::apply("f", 0, &x() + &y());
        let d = f.derivative(1);
        assert_eq!(d, Scalar::apply("f", 1, &x() + &y()));
        assert!(!Scalar::apply("f", 0, x()).depends_on(1));
    }

    #[test]
    fn evaluation() {
        let mut env = Environment::at(&[Rational::from_integer(2.into()), Rational::from_integer(3.into())]);
        env.model("f", vec![Rational::zero(), Rational::zero(), Rational::one()]);
        let f1 = Scalar::apply("f", 1, &x() + &y());
        assert_eq!(f1.eval(&env).unwrap(), Rational::from_integer(10.into()));
        let s = x().checked_div(&y()).unwrap();
        assert_eq!(s.eval(&env).unwrap(), Rational::new(2.into(), 3.into()));
        assert!(matches!(Scalar::apply("g", 0, x()).eval(&env), Err(ExprError::Unbound(_))));
    }

    #[test]
    fn printing() {
        let chart = Chart::with_opaque(["x", "y"], ["f"]).unwrap();
        let s = (&(&x() * &x()) - &y().scale(&Rational::new(3.into(), 2.into()))).checked_div(&(&y() + &Scalar::one())).unwrap();
        assert_eq!(s.to_string_in(&chart), "(x^2 - 3/2*y)/(y + 1)");
        let t = Scalar::apply("f", 2, x()).checked_div(&y()).unwrap();
        assert_eq!(t.to_string_in(&chart), "f''(x)/y");
        assert_eq!((-x()).to_string_in(&chart), "-x");
    }
}
