use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use super::Blade;
use crate::{same_chart, Chart, Error, Result, Scalar};

/// Tangent or cotangent side of a sparse antisymmetric tensor.
pub trait Kind: Clone + Copy + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Dual: Kind<Dual = Self>;
    /// Prefix used when printing a basis element.
    const PREFIX: &'static str;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tangent;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cotangent;

impl Kind for Tangent {
    type Dual = Cotangent;
    const PREFIX: &'static str = "∂";
}

impl Kind for Cotangent {
    type Dual = Tangent;
    const PREFIX: &'static str = "d";
}

/// Homogeneous element of the exterior algebra over a chart. Only nonzero
/// components are stored, keyed by blade.
#[derive(Clone)]
pub struct Multi<K: Kind> {
    chart: Arc<Chart>,
    grade: usize,
    comps: BTreeMap<Blade, Scalar>,
    _kind: PhantomData<K>,
}

pub type MultiVector = Multi<Tangent>;
pub type Form = Multi<Cotangent>;

impl<K: Kind> PartialEq for Multi<K> {
    fn eq(&self, other: &Self) -> bool {
        self.grade == other.grade && self.comps == other.comps && same_chart(&self.chart, &other.chart)
    }
}

impl<K: Kind> fmt::Debug for Multi<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

pub(crate) fn check_chart(a: &Arc<Chart>, b: &Arc<Chart>) -> Result<()> {
    if same_chart(a, b) {
        Ok(())
    } else {
        Err(Error::ChartMismatch)
    }
}

impl<K: Kind> Multi<K> {
    pub fn zero(chart: &Arc<Chart>, grade: usize) -> Self {
        Multi { chart: chart.clone(), grade, comps: BTreeMap::new(), _kind: PhantomData }
    }

    pub fn scalar(chart: &Arc<Chart>, s: Scalar) -> Self {
        let mut m = Self::zero(chart, 0);
        m.add_at(Blade::EMPTY, s);
        m
    }

    /// Basis element `∂_i` or `dx_i`. Panics if `i` is out of range.
    pub fn basis(chart: &Arc<Chart>, i: usize) -> Self {
        assert!(i < chart.dim(), "basis index {i} out of range");
        Self::blade(chart, Blade::single(i), Scalar::one())
    }

    pub fn blade(chart: &Arc<Chart>, b: Blade, s: Scalar) -> Self {
        let mut m = Self::zero(chart, b.grade());
        m.add_at(b, s);
        m
    }

    /// Builds from `(indices, coefficient)` pairs. Unsorted indices pick up
    /// the permutation sign; repeated blades are summed.
    pub fn from_components(
        chart: &Arc<Chart>,
        grade: usize,
        comps: impl IntoIterator<Item = (Vec<usize>, Scalar)>,
    ) -> Result<Self> {
        let mut m = Self::zero(chart, grade);
        for (idx, s) in comps {
            if idx.len() != grade {
                return Err(Error::Degree { expected: grade, found: idx.len() });
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= chart.dim()) {
                return Err(Error::IndexOutOfRange { index: bad, dim: chart.dim() });
            }
            let (b, sign) = Blade::from_indices(&idx).ok_or_else(|| {
                let mut sorted = idx.clone();
                sorted.sort_unstable();
                let rep = sorted.windows(2).find(|w| w[0] == w[1]).map_or(0, |w| w[0]);
                Error::RepeatedIndex(rep)
            })?;
            m.add_at(b, if sign < 0 { -s } else { s });
        }
        Ok(m)
    }

    /// Vector or covector from its components.
    pub fn from_vec(chart: &Arc<Chart>, comps: Vec<Scalar>) -> Self {
        let mut m = Self::zero(chart, 1);
        for (i, s) in comps.into_iter().enumerate() {
            m.add_at(Blade::single(i), s);
        }
        m
    }

    pub(crate) fn add_at(&mut self, b: Blade, s: Scalar) {
        debug_assert_eq!(b.grade(), self.grade);
        if s.is_zero() {
            return;
        }
        match self.comps.entry(b) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(s);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + &s;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Blade, &Scalar)> {
        self.comps.iter().map(|(b, s)| (*b, s))
    }

    pub fn coeff(&self, b: Blade) -> Scalar {
        self.comps.get(&b).cloned().unwrap_or_default()
    }

    /// Component at arbitrary (possibly unsorted) indices.
    pub fn component(&self, idx: &[usize]) -> Scalar {
        match Blade::from_indices(idx) {
            Some((b, 1)) => self.coeff(b),
            Some((b, _)) => -self.coeff(b),
            None => Scalar::zero(),
        }
    }

    /// Grade-1 components as a dense vector.
    pub fn to_vec(&self) -> Vec<Scalar> {
        (0..self.dim()).map(|i| self.coeff(Blade::single(i))).collect()
    }

    pub fn as_scalar(&self) -> Result<Scalar> {
        if self.grade != 0 {
            return Err(Error::Degree { expected: 0, found: self.grade });
        }
        Ok(self.coeff(Blade::EMPTY))
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        check_chart(&self.chart, &other.chart)?;
        if self.grade != other.grade {
            return Err(Error::Degree { expected: self.grade, found: other.grade });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (b, s) in other.iter() {
            out.add_at(b, s.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (b, s) in other.iter() {
            out.add_at(b, -s);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map(|s| -s)
    }

    pub fn mul_scalar(&self, f: &Scalar) -> Self {
        if f.is_zero() {
            return Self::zero(&self.chart, self.grade);
        }
        self.map(|s| s * f)
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        let mut out = Self::zero(&self.chart, self.grade);
        for (b, s) in self.iter() {
            out.add_at(b, f(s));
        }
        out
    }

    /// Componentwise partial derivative.
    pub fn partial(&self, k: usize) -> Self {
        self.map(|s| s.derivative(k))
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        check_chart(&self.chart, &other.chart)?;
        let mut out = Self::zero(&self.chart, self.grade + other.grade);
        for (a, s) in self.iter() {
            for (b, t) in other.iter() {
                if let Some((c, sign)) = a.wedge(b) {
                    let v = s * t;
                    out.add_at(c, if sign < 0 { -v } else { v });
                }
            }
        }
        Ok(out)
    }

    /// Sum of a list of same-grade elements.
    pub fn sum<'a>(chart: &Arc<Chart>, grade: usize, items: impl IntoIterator<Item = &'a Self>) -> Result<Self> {
        let mut out = Self::zero(chart, grade);
        for x in items {
            out = out.add(x)?;
        }
        Ok(out)
    }

    /// Moves the tensor to `chart` with coordinate `i` renamed to `f(i)`.
    pub fn remap(&self, chart: &Arc<Chart>, f: &dyn Fn(usize) -> usize) -> Self {
        let mut out = Self::zero(chart, self.grade);
        for (b, s) in self.iter() {
            let idx: Vec<usize> = b.indices().map(f).collect();
            let (nb, sign) = Blade::from_indices(&idx).expect("injective remap");
            let v = s.remap_coords(f);
            out.add_at(nb, if sign < 0 { -v } else { v });
        }
        out
    }

    pub fn same_chart(&self, chart: &Arc<Chart>) -> bool {
        same_chart(&self.chart, chart)
    }
}

impl<K: Kind> fmt::Display for Multi<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (b, s)) in self.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let text = s.to_string_in(&self.chart);
            let basis: Vec<String> =
                b.indices().map(|i| format!("{}{}", K::PREFIX, self.chart.coord_name(i))).collect();
            if basis.is_empty() {
                write!(f, "{text}")?;
            } else if s.is_one() {
                write!(f, "{}", basis.join("∧"))?;
            } else if (-s).is_one() {
                write!(f, "-{}", basis.join("∧"))?;
            } else if s.num().len() > 1 || !s.is_polynomial() {
                write!(f, "({text})*{}", basis.join("∧"))?;
            } else {
                write!(f, "{text}*{}", basis.join("∧"))?;
            }
        }
        Ok(())
    }
}

/// `ι_a t`: contracts the first slots of `t` with `a`, one factor at a time
/// in the order the blade lists them, so `ι_{α∧β} = ι_β ι_α`.
pub fn iota<K: Kind>(a: &Multi<K::Dual>, t: &Multi<K>) -> Result<Multi<K>> {
    check_chart(a.chart(), t.chart())?;
    if a.grade() > t.grade() {
        return Err(Error::Degree { expected: t.grade(), found: a.grade() });
    }
    let mut out = Multi::zero(t.chart(), t.grade() - a.grade());
    for (ab, s) in a.iter() {
        for (tb, v) in t.iter() {
            let mut rest = tb;
            let mut sign = 1;
            let mut ok = true;
            for i in ab.indices() {
                match rest.remove(i) {
                    Some((r, sg)) => {
                        rest = r;
                        sign *= sg;
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                let c = s * v;
                out.add_at(rest, if sign < 0 { -c } else { c });
            }
        }
    }
    Ok(out)
}

/// Full pairing of equal-grade elements.
pub fn pairing<K: Kind>(a: &Multi<K::Dual>, t: &Multi<K>) -> Result<Scalar> {
    if a.grade() != t.grade() {
        return Err(Error::Degree { expected: t.grade(), found: a.grade() });
    }
    iota(a, t)?.as_scalar()
}

/// `t(a_1, …, a_k)`.
pub fn evaluate<K: Kind>(t: &Multi<K>, args: &[Multi<K::Dual>]) -> Result<Scalar> {
    if args.len() != t.grade() {
        return Err(Error::Degree { expected: t.grade(), found: args.len() });
    }
    let mut cur = t.clone();
    for a in args {
        if a.grade() != 1 {
            return Err(Error::Degree { expected: 1, found: a.grade() });
        }
        cur = iota(a, &cur)?;
    }
    cur.as_scalar()
}

/// Applies the exterior power of a linear map given on basis elements.
pub fn exterior_map<K: Kind, L: Kind>(
    t: &Multi<K>,
    target: &Arc<Chart>,
    image: &dyn Fn(usize) -> Multi<L>,
) -> Result<Multi<L>> {
    let images: Vec<Multi<L>> = (0..t.dim()).map(image).collect();
    let mut out = Multi::zero(target, t.grade());
    for (b, s) in t.iter() {
        let mut acc = Multi::<L>::scalar(target, s.clone());
        for i in b.indices() {
            acc = acc.wedge(&images[i])?;
        }
        out = out.add(&acc)?;
    }
    Ok(out)
}
