//! Anchored bundles over a chart and the operators every such bundle
//! carries: the generalized Schouten bracket on multisections, the Cartan
//! differential on dual multisections, and Lie derivatives.

use std::sync::Arc;

use super::basic::apply_vector;
use crate::tensor::{check_chart, iota, sharp_matrix, Blade, Endo, Kind, Matrix, Multi, MultiVector};
use crate::{Chart, Error, Result, Scalar};

/// A bundle with a frame `e_i`, an anchor and a bracket on frame elements.
pub trait AnchoredBundle {
    type Side: Kind;

    fn chart(&self) -> &Arc<Chart>;

    /// `a(e_i)`.
    fn anchor_basis(&self, i: usize) -> &MultiVector;

    /// `[e_i, e_j]`.
    fn bracket_basis(&self, i: usize, j: usize) -> &Multi<Self::Side>;

    /// `a(e_i) f`.
    fn derive(&self, i: usize, f: &Scalar) -> Scalar {
        apply_vector(self.anchor_basis(i), f)
    }

    fn anchor(&self, s: &Multi<Self::Side>) -> Result<MultiVector> {
        check_chart(self.chart(), s.chart())?;
        let mut out = MultiVector::zero(self.chart(), 1);
        for (b, c) in s.iter() {
            let i = b.indices().next().ok_or(Error::Degree { expected: 1, found: 0 })?;
            out = out.add(&self.anchor_basis(i).mul_scalar(c))?;
        }
        Ok(out)
    }
}

/// `TM` with anchor `N` and bracket `[·,·]_N`; `N = id` gives the usual
/// tangent Lie algebroid.
#[derive(Clone, Debug)]
pub struct TangentAlgebroid {
    chart: Arc<Chart>,
    anchors: Vec<MultiVector>,
    brackets: Vec<Vec<MultiVector>>,
}

impl TangentAlgebroid {
    pub fn standard(chart: &Arc<Chart>) -> Self {
        Self::deformed(&Endo::identity(chart))
    }

    pub fn deformed(n: &Endo) -> Self {
        let chart = n.chart().clone();
        let dim = chart.dim();
        let anchors: Vec<MultiVector> = (0..dim).map(|j| n.column(j)).collect();
        // [∂_i, ∂_j]_N = ∂_i(N∂_j) - ∂_j(N∂_i)
        let brackets = (0..dim)
            .map(|i| (0..dim).map(|j| anchors[j].partial(i).sub(&anchors[i].partial(j)).expect("same chart")).collect())
            .collect();
        TangentAlgebroid { chart, anchors, brackets }
    }
}

impl AnchoredBundle for TangentAlgebroid {
    type Side = crate::tensor::Tangent;

    fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    fn anchor_basis(&self, i: usize) -> &MultiVector {
        &self.anchors[i]
    }

    fn bracket_basis(&self, i: usize, j: usize) -> &MultiVector {
        &self.brackets[i][j]
    }
}

/// `T*M` with anchor `P` (normally `π♯`) and bracket
/// `[dx_i, dx_j] = -d(P_{ij})`, which is `d(π^{ij})` for `P = π♯`.
#[derive(Clone, Debug)]
pub struct CotangentAlgebroid {
    chart: Arc<Chart>,
    anchors: Vec<MultiVector>,
    brackets: Vec<Vec<crate::Form>>,
}

impl CotangentAlgebroid {
    pub fn from_bivector(pi: &MultiVector) -> Result<Self> {
        Ok(Self::from_anchor(pi.chart(), &sharp_matrix(pi)?))
    }

    /// Arbitrary anchor `P: T* → T`, entry `(i, j)` the `∂_i` part of `P dx_j`.
    pub fn from_anchor(chart: &Arc<Chart>, p: &Matrix) -> Self {
        let dim = chart.dim();
        let anchors = (0..dim).map(|j| MultiVector::from_vec(chart, (0..dim).map(|i| p.get(i, j).clone()).collect())).collect();
        let brackets = (0..dim)
            .map(|i| (0..dim).map(|j| super::basic::df(chart, p.get(i, j)).neg()).collect())
            .collect();
        CotangentAlgebroid { chart: chart.clone(), anchors, brackets }
    }
}

impl AnchoredBundle for CotangentAlgebroid {
    type Side = crate::tensor::Cotangent;

    fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    fn anchor_basis(&self, i: usize) -> &MultiVector {
        &self.anchors[i]
    }

    fn bracket_basis(&self, i: usize, j: usize) -> &crate::Form {
        &self.brackets[i][j]
    }
}

fn sign_of(e: usize) -> i32 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

fn signed<K: Kind>(m: Multi<K>, sign: i32) -> Multi<K> {
    if sign < 0 {
        m.neg()
    } else {
        m
    }
}

/// Bracket of two sections (grade 1).
fn section_bracket<B: AnchoredBundle>(b: &B, f: &Scalar, i: usize, g: &Scalar, j: usize) -> Result<Multi<B::Side>> {
    let chart = b.chart();
    let mut out = b.bracket_basis(i, j).mul_scalar(&(f * g));
    let ag = b.derive(i, g);
    if !ag.is_zero() {
        out.add_at(Blade::single(j), f * &ag);
    }
    let af = b.derive(j, f);
    if !af.is_zero() {
        out.add_at(Blade::single(i), -(g * &af));
    }
    debug_assert!(out.same_chart(chart));
    Ok(out)
}

// Recursive biderivation expansion on single terms f e_I and g e_J.
fn term_rec<B: AnchoredBundle>(b: &B, f: &Scalar, i: Blade, g: &Scalar, j: Blade) -> Result<Multi<B::Side>> {
    let chart = b.chart();
    let (p, q) = (i.grade(), j.grade());
    if p + q == 0 {
        return Ok(Multi::zero(chart, 0));
    }
    if q >= 2 {
        // [P, Q'∧e] = [P,Q']∧e + (-1)^{(p+1)(q-1)} Q'∧[P,e]
        let last = j.indices().last().expect("nonempty");
        let rest = Blade::from_mask(j.mask() & !(1 << last));
        let e = Multi::basis(chart, last);
        let t1 = term_rec(b, f, i, g, rest)?.wedge(&e)?;
        let t2 = Multi::blade(chart, rest, g.clone()).wedge(&term_rec(b, f, i, &Scalar::one(), Blade::single(last))?)?;
        return t1.add(&signed(t2, sign_of((p + 1) * (q - 1))));
    }
    if p >= 2 {
        // graded symmetry
        let r = term_rec(b, g, j, f, i)?;
        return Ok(signed(r, -sign_of((p - 1) * (q + 1))));
    }
    match (p, q) {
        (1, 0) => {
            let k = i.indices().next().unwrap();
            Ok(Multi::scalar(chart, f * &b.derive(k, g)))
        }
        (0, 1) => {
            let k = j.indices().next().unwrap();
            Ok(Multi::scalar(chart, -(g * &b.derive(k, f))))
        }
        _ => section_bracket(b, f, i.indices().next().unwrap(), g, j.indices().next().unwrap()),
    }
}

fn result_grade(p: usize, q: usize) -> usize {
    (p + q).saturating_sub(1)
}

/// Generalized Schouten bracket on multisections, by recursive biderivation
/// expansion from the base cases.
pub fn schouten_in<B: AnchoredBundle>(b: &B, x: &Multi<B::Side>, y: &Multi<B::Side>) -> Result<Multi<B::Side>> {
    check_chart(b.chart(), x.chart())?;
    check_chart(b.chart(), y.chart())?;
    let mut out = Multi::zero(b.chart(), result_grade(x.grade(), y.grade()));
    for (i, f) in x.iter() {
        for (j, g) in y.iter() {
            out = out.add(&term_rec(b, f, i, g, j)?)?;
        }
    }
    Ok(out)
}

/// The same bracket by the closed double-sum formula over decomposables:
/// `Σ (-1)^{a+b} [X_a, Y_b] ∧ X_1…X̂_a…X_p ∧ Y_1…Ŷ_b…Y_q`, with the
/// coefficient absorbed into the first factor.
pub fn schouten_direct<B: AnchoredBundle>(b: &B, x: &Multi<B::Side>, y: &Multi<B::Side>) -> Result<Multi<B::Side>> {
    check_chart(b.chart(), x.chart())?;
    check_chart(b.chart(), y.chart())?;
    let chart = b.chart();
    let (p, q) = (x.grade(), y.grade());
    let mut out = Multi::zero(chart, result_grade(p, q));
    if p + q == 0 {
        return Ok(out);
    }
    for (ib, f) in x.iter() {
        for (jb, g) in y.iter() {
            let term = if q == 0 {
                contract_function(b, f, ib, g)?
            } else if p == 0 {
                signed(contract_function(b, g, jb, f)?, sign_of(q))
            } else {
                pair_sum(b, f, ib, g, jb)?
            };
            out = out.add(&term)?;
        }
    }
    Ok(out)
}

// [f e_I, g] = Σ_a (-1)^{p-a} X_a(g) X_1…X̂_a…X_p with X_1 = f e_{i_1}.
fn contract_function<B: AnchoredBundle>(b: &B, f: &Scalar, ib: Blade, g: &Scalar) -> Result<Multi<B::Side>> {
    let chart = b.chart();
    let idx = ib.to_vec();
    let p = idx.len();
    let mut out = Multi::zero(chart, p - 1);
    for a in 0..p {
        let mut coeff = b.derive(idx[a], g);
        if coeff.is_zero() {
            continue;
        }
        let mut acc = Multi::scalar(chart, Scalar::one());
        for (pos, &k) in idx.iter().enumerate() {
            if pos == a {
                continue;
            }
            acc = acc.wedge(&Multi::basis(chart, k))?;
        }
        // f rides on the first factor, wherever it ends up
        coeff = &coeff * f;
        out = out.add(&signed(acc.mul_scalar(&coeff), sign_of(p - (a + 1))))?;
    }
    Ok(out)
}

fn pair_sum<B: AnchoredBundle>(b: &B, f: &Scalar, ib: Blade, g: &Scalar, jb: Blade) -> Result<Multi<B::Side>> {
    let chart = b.chart();
    let (xi, yj) = (ib.to_vec(), jb.to_vec());
    let one = Scalar::one();
    let mut out = Multi::zero(chart, xi.len() + yj.len() - 1);
    for a in 0..xi.len() {
        for c in 0..yj.len() {
            let fa = if a == 0 { f } else { &one };
            let gc = if c == 0 { g } else { &one };
            let mut acc = section_bracket(b, fa, xi[a], gc, yj[c])?;
            for (pos, &k) in xi.iter().enumerate() {
                if pos != a {
                    let factor = if pos == 0 { Multi::blade(chart, Blade::single(k), f.clone()) } else { Multi::basis(chart, k) };
                    acc = acc.wedge(&factor)?;
                }
            }
            for (pos, &k) in yj.iter().enumerate() {
                if pos != c {
                    let factor = if pos == 0 { Multi::blade(chart, Blade::single(k), g.clone()) } else { Multi::basis(chart, k) };
                    acc = acc.wedge(&factor)?;
                }
            }
            out = out.add(&signed(acc, sign_of(a + c)))?;
        }
    }
    Ok(out)
}

/// Cartan differential on sections of `Λ^k E*`:
/// `(dζ)(e_0…e_k) = Σ (-1)^a a(e_a) ζ(…ê_a…) + Σ_{a<b} (-1)^{a+b} ζ([e_a,e_b], …ê_a…ê_b…)`.
pub fn differential_in<B: AnchoredBundle>(b: &B, z: &Multi<<B::Side as Kind>::Dual>) -> Result<Multi<<B::Side as Kind>::Dual>> {
    check_chart(b.chart(), z.chart())?;
    let chart = b.chart();
    let n = chart.dim();
    let k = z.grade();
    let mut out = Multi::zero(chart, k + 1);
    if z.is_zero() {
        return Ok(out);
    }
    for blade in crate::tensor::blades(n, k + 1) {
        let idx = blade.to_vec();
        let mut total = Scalar::zero();
        for a in 0..=k {
            let rest: Vec<usize> = idx.iter().enumerate().filter(|(p, _)| *p != a).map(|(_, &v)| v).collect();
            let v = b.derive(idx[a], &z.component(&rest));
            if !v.is_zero() {
                total = if a % 2 == 0 { &total + &v } else { &total - &v };
            }
        }
        for a in 0..=k {
            for c in a + 1..=k {
                let br = b.bracket_basis(idx[a], idx[c]);
                if br.is_zero() {
                    continue;
                }
                let rest: Vec<usize> =
                    idx.iter().enumerate().filter(|(p, _)| *p != a && *p != c).map(|(_, &v)| v).collect();
                let mut v = Scalar::zero();
                for (mb, s) in br.iter() {
                    let m = mb.indices().next().unwrap();
                    let mut args = vec![m];
                    args.extend_from_slice(&rest);
                    let zc = z.component(&args);
                    if !zc.is_zero() {
                        v = &v + &(s * &zc);
                    }
                }
                total = if (a + c) % 2 == 0 { &total + &v } else { &total - &v };
            }
        }
        out.add_at(blade, total);
    }
    Ok(out)
}

/// `L_s T` for a section `s` of `E` and `T` in `Λ E*`: `ι_s d + d ι_s`.
pub fn dual_lie_in<B: AnchoredBundle>(
    b: &B,
    s: &Multi<B::Side>,
    t: &Multi<<B::Side as Kind>::Dual>,
) -> Result<Multi<<B::Side as Kind>::Dual>> {
    if s.grade() != 1 {
        return Err(Error::Degree { expected: 1, found: s.grade() });
    }
    if t.grade() == 0 {
        let f = t.as_scalar()?;
        let v = apply_vector(&b.anchor(s)?, &f);
        return Ok(Multi::scalar(b.chart(), v));
    }
    iota(s, &differential_in(b, t)?)?.add(&differential_in(b, &iota(s, t)?)?)
}

/// Which anchored bundle a generic operation runs in.
#[derive(Clone, Debug)]
pub enum AnchoredBundleSpec {
    /// Tangent bundle with anchor and bracket deformed by `N`; `None` is the
    /// identity, i.e. the classical calculus.
    Tangent(Option<Endo>),
    /// Cotangent bundle with anchor `π♯` and bracket `[·,·]_π`.
    Cotangent(MultiVector),
}

/// Homogeneous element on either side.
#[derive(Clone, Debug, PartialEq)]
pub enum GradedElement {
    Vector(MultiVector),
    Form(crate::Form),
}

impl GradedElement {
    pub fn grade(&self) -> usize {
        match self {
            GradedElement::Vector(v) => v.grade(),
            GradedElement::Form(f) => f.grade(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            GradedElement::Vector(v) => v.is_zero(),
            GradedElement::Form(f) => f.is_zero(),
        }
    }
}

fn side_mismatch() -> Error {
    Error::Param("element does not live on the bundle's side".into())
}

impl AnchoredBundleSpec {
    fn tangent(&self) -> Option<TangentAlgebroid> {
        match self {
            AnchoredBundleSpec::Tangent(None) => None,
            AnchoredBundleSpec::Tangent(Some(n)) => Some(TangentAlgebroid::deformed(n)),
            AnchoredBundleSpec::Cotangent(_) => None,
        }
    }
}

/// Generalized Schouten bracket in the bundle described by `spec`.
pub fn schouten(spec: &AnchoredBundleSpec, a: &GradedElement, b: &GradedElement) -> Result<GradedElement> {
    match (spec, a, b) {
        (AnchoredBundleSpec::Tangent(n), GradedElement::Vector(x), GradedElement::Vector(y)) => {
            let alg = match n {
                Some(_) => spec.tangent().unwrap(),
                None => TangentAlgebroid::standard(x.chart()),
            };
            Ok(GradedElement::Vector(schouten_in(&alg, x, y)?))
        }
        (AnchoredBundleSpec::Cotangent(pi), GradedElement::Form(x), GradedElement::Form(y)) => {
            let alg = CotangentAlgebroid::from_bivector(pi)?;
            Ok(GradedElement::Form(schouten_in(&alg, x, y)?))
        }
        _ => Err(side_mismatch()),
    }
}

/// Lie derivative along a section: the derivation extension of the bracket
/// on the bundle's own side, Cartan's formula on the dual side.
pub fn cartan_lie(spec: &AnchoredBundleSpec, gen: &GradedElement, t: &GradedElement) -> Result<GradedElement> {
    if gen.grade() != 1 {
        return Err(Error::Degree { expected: 1, found: gen.grade() });
    }
    match (spec, gen, t) {
        (AnchoredBundleSpec::Tangent(_), GradedElement::Vector(_), GradedElement::Vector(_))
        | (AnchoredBundleSpec::Cotangent(_), GradedElement::Form(_), GradedElement::Form(_)) => schouten(spec, gen, t),
        (AnchoredBundleSpec::Tangent(n), GradedElement::Vector(x), GradedElement::Form(z)) => {
            let alg = match n {
                Some(n) => TangentAlgebroid::deformed(n),
                None => TangentAlgebroid::standard(x.chart()),
            };
            Ok(GradedElement::Form(dual_lie_in(&alg, x, z)?))
        }
        (AnchoredBundleSpec::Cotangent(pi), GradedElement::Form(a), GradedElement::Vector(d)) => {
            let alg = CotangentAlgebroid::from_bivector(pi)?;
            Ok(GradedElement::Vector(dual_lie_in(&alg, a, d)?))
        }
        _ => Err(side_mismatch()),
    }
}
