//! Musical maps between forms and multivectors.

use std::sync::Arc;

use super::multi::{check_chart, exterior_map};
use super::{Blade, Form, Matrix, MultiVector};
use crate::{Chart, Error, Result};

fn require_grade<K: super::Kind>(t: &super::Multi<K>, k: usize) -> Result<()> {
    if t.grade() == k {
        Ok(())
    } else {
        Err(Error::Degree { expected: k, found: t.grade() })
    }
}

/// `π♯α = ι_α π`.
pub fn sharp(pi: &MultiVector, a: &Form) -> Result<MultiVector> {
    require_grade(pi, 2)?;
    require_grade(a, 1)?;
    super::iota(a, pi)
}

/// Matrix of `π♯`: entry `(i, j) = π^{ji}`.
pub fn sharp_matrix(pi: &MultiVector) -> Result<Matrix> {
    require_grade(pi, 2)?;
    Ok(Matrix::from_fn(pi.dim(), |i, j| pi.component(&[j, i])))
}

/// `ω♭X = ι_X ω`.
pub fn flat(omega: &Form, x: &MultiVector) -> Result<Form> {
    require_grade(omega, 2)?;
    require_grade(x, 1)?;
    super::iota(x, omega)
}

/// Matrix of `ω♭`: entry `(i, j) = ω_{ji}`.
pub fn flat_matrix(omega: &Form) -> Result<Matrix> {
    require_grade(omega, 2)?;
    Ok(Matrix::from_fn(omega.dim(), |i, j| omega.component(&[j, i])))
}

/// Bivector whose sharp map has matrix `p`. Fails unless `p` is antisymmetric.
pub fn bivector_from_sharp(chart: &Arc<Chart>, p: &Matrix) -> Result<MultiVector> {
    if !p.is_antisymmetric() {
        return Err(Error::NotAntisymmetric);
    }
    let mut out = MultiVector::zero(chart, 2);
    for i in 0..p.n() {
        for j in i + 1..p.n() {
            out.add_at(Blade::from_indices(&[i, j]).unwrap().0, p.get(j, i).clone());
        }
    }
    Ok(out)
}

/// The bivector `π` with `π♯ = (ω♭)⁻¹`.
pub fn invert_flat(omega: &Form) -> Result<MultiVector> {
    let w = flat_matrix(omega)?;
    let p = w.inverse().map_err(|_| Error::Degenerate("two-form is not invertible".into()))?;
    bivector_from_sharp(omega.chart(), &p)
}

/// `(Pφ)(α_1, …) = φ(Pα_1, …)` for a map `P: T* → T` given by its matrix.
pub fn push_form(p: &Matrix, phi: &Form) -> Result<MultiVector> {
    let chart = phi.chart().clone();
    let n = chart.dim();
    exterior_map(phi, &chart, &|j| MultiVector::from_vec(&chart, (0..n).map(|i| p.get(j, i).clone()).collect()))
}

/// `(WΦ)(X_1, …) = Φ(WX_1, …)` for a map `W: T → T*` given by its matrix.
pub fn pull_multivector(w: &Matrix, big_phi: &MultiVector) -> Result<Form> {
    let chart = big_phi.chart().clone();
    let n = chart.dim();
    exterior_map(big_phi, &chart, &|j| Form::from_vec(&chart, (0..n).map(|i| w.get(j, i).clone()).collect()))
}

/// `φ = ω♭Φ`.
pub fn lower_3(omega: &Form, big_phi: &MultiVector) -> Result<Form> {
    check_chart(omega.chart(), big_phi.chart())?;
    require_grade(big_phi, 3)?;
    pull_multivector(&flat_matrix(omega)?, big_phi)
}

/// `Φ = π♯φ`.
pub fn raise_3(pi: &MultiVector, phi: &Form) -> Result<MultiVector> {
    check_chart(pi.chart(), phi.chart())?;
    require_grade(phi, 3)?;
    push_form(&sharp_matrix(pi)?, phi)
}

pub fn is_nondegenerate(pi: &MultiVector) -> Result<bool> {
    Ok(!sharp_matrix(pi)?.det().is_zero())
}
