//! Differential operators and brackets.

mod algebroid;
mod basic;

pub use algebroid::{
    cartan_lie, differential_in, dual_lie_in, schouten, schouten_direct, schouten_in, AnchoredBundle,
    AnchoredBundleSpec, CotangentAlgebroid, GradedElement, TangentAlgebroid,
};
pub use basic::{apply_vector, bracket_anchor, bracket_n, bracket_pi, d, df, lie, lie_bracket, torsion, LieDerivative};

use crate::tensor::{check_chart, Form, Kind, Multi, MultiVector};
use crate::{Endo, Result, Scalar};

/// Classical Schouten–Nijenhuis bracket.
pub fn schouten_nijenhuis(a: &MultiVector, b: &MultiVector) -> Result<MultiVector> {
    schouten_in(&TangentAlgebroid::standard(a.chart()), a, b)
}

/// `[·,·]_N` extended to multivector fields.
pub fn schouten_n(n: &Endo, a: &MultiVector, b: &MultiVector) -> Result<MultiVector> {
    schouten_in(&TangentAlgebroid::deformed(n), a, b)
}

/// `[·,·]_π` extended to forms.
pub fn schouten_pi(pi: &MultiVector, a: &Form, b: &Form) -> Result<Form> {
    schouten_in(&CotangentAlgebroid::from_bivector(pi)?, a, b)
}

/// `d_π` on multivector fields, from the Cartan formula of `(T*M)_π`.
pub fn d_pi(pi: &MultiVector, x: &MultiVector) -> Result<MultiVector> {
    check_chart(pi.chart(), x.chart())?;
    let out = differential_in(&CotangentAlgebroid::from_bivector(pi)?, x)?;
    if cfg!(feature = "self-check") {
        let other = schouten_nijenhuis(pi, x)?;
        assert_eq!(out, other, "d_pi disagrees with the Schouten bracket");
    }
    Ok(out)
}

/// `d_N` on forms.
pub fn d_n(n: &Endo, z: &Form) -> Result<Form> {
    check_chart(n.chart(), z.chart())?;
    differential_in(&TangentAlgebroid::deformed(n), z)
}

fn defect<K: Kind>(
    bracket: &dyn Fn(&Multi<K>, &Multi<K>) -> Result<Multi<K>>,
    diff: &dyn Fn(&Multi<K>) -> Result<Multi<K>>,
    a: &Multi<K>,
    b: &Multi<K>,
) -> Result<Multi<K>> {
    let chart = a.chart();
    let (p, q) = (a.grade(), b.grade());
    // the bracket of two functions has degree -1 and vanishes
    let first = if p + q == 0 { Multi::zero(chart, 0) } else { diff(&bracket(a, b)?)? };
    let second = bracket(&diff(a)?, b)?;
    let third = bracket(a, &diff(b)?)?;
    let third = if p % 2 == 0 { third.neg() } else { third };
    first.sub(&second)?.sub(&third)
}

/// `A_{π,N}(D1,D2) = d_π[D1,D2]_N - [d_π D1,D2]_N - (-1)^{deg D1 + 1}[D1,d_π D2]_N`.
pub fn derivation_defect(pi: &MultiVector, n: &Endo, d1: &MultiVector, d2: &MultiVector) -> Result<MultiVector> {
    let tn = TangentAlgebroid::deformed(n);
    let cot = CotangentAlgebroid::from_bivector(pi)?;
    defect::<crate::tensor::Tangent>(
        &|x, y| schouten_in(&tn, x, y),
        &|x| differential_in(&cot, x),
        d1,
        d2,
    )
}

/// The dual defect with `(d_N, [·,·]_π)` on forms.
pub fn dual_derivation_defect(pi: &MultiVector, n: &Endo, x1: &Form, x2: &Form) -> Result<Form> {
    let tn = TangentAlgebroid::deformed(n);
    let cot = CotangentAlgebroid::from_bivector(pi)?;
    defect::<crate::tensor::Cotangent>(
        &|x, y| schouten_in(&cot, x, y),
        &|x| differential_in(&tn, x),
        x1,
        x2,
    )
}

/// `π_N♯ = N∘π♯`, as a bivector when that composite is antisymmetric.
pub fn pi_n(pi: &MultiVector, n: &Endo) -> Result<MultiVector> {
    let p = n.matrix().mul(&crate::tensor::sharp_matrix(pi)?);
    crate::tensor::bivector_from_sharp(pi.chart(), &p)
}

/// `⟨α, X⟩`.
pub fn contract(a: &Form, x: &MultiVector) -> Result<Scalar> {
    crate::tensor::pairing(a, x)
}
