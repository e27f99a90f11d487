//! Classical operators: de Rham differential, vector-field brackets, Lie
//! derivatives and the deformed brackets written through them.

use crate::tensor::{check_chart, iota, pairing, Blade, Endo, Form, Matrix, MultiVector};
use crate::{Error, Result, Scalar};

fn require_grade<K: crate::tensor::Kind>(t: &crate::Multi<K>, k: usize) -> Result<()> {
    if t.grade() == k {
        Ok(())
    } else {
        Err(Error::Degree { expected: k, found: t.grade() })
    }
}

/// `X(f) = Σ X^k ∂_k f`.
pub fn apply_vector(x: &MultiVector, f: &Scalar) -> Scalar {
    x.iter()
        .map(|(b, c)| {
            let k = b.indices().next().expect("grade one");
            let d = f.derivative(k);
            if d.is_zero() {
                d
            } else {
                c * &d
            }
        })
        .sum()
}

pub fn df(chart: &std::sync::Arc<crate::Chart>, f: &Scalar) -> Form {
    Form::from_vec(chart, (0..chart.dim()).map(|k| f.derivative(k)).collect())
}

/// de Rham differential.
pub fn d(zeta: &Form) -> Form {
    let chart = zeta.chart();
    let mut out = Form::zero(chart, zeta.grade() + 1);
    for (b, s) in zeta.iter() {
        for k in 0..chart.dim() {
            if b.contains(k) {
                continue;
            }
            let ds = s.derivative(k);
            if ds.is_zero() {
                continue;
            }
            let (nb, sign) = Blade::single(k).wedge(b).expect("disjoint");
            out.add_at(nb, if sign < 0 { -ds } else { ds });
        }
    }
    out
}

/// Lie bracket of vector fields.
pub fn lie_bracket(x: &MultiVector, y: &MultiVector) -> Result<MultiVector> {
    check_chart(x.chart(), y.chart())?;
    require_grade(x, 1)?;
    require_grade(y, 1)?;
    let n = x.dim();
    let (xv, yv) = (x.to_vec(), y.to_vec());
    Ok(MultiVector::from_vec(
        x.chart(),
        (0..n).map(|i| &apply_vector(x, &yv[i]) - &apply_vector(y, &xv[i])).collect(),
    ))
}

/// Types carrying a Lie derivative along a vector field.
pub trait LieDerivative: Sized {
    fn lie_along(&self, x: &MultiVector) -> Result<Self>;
}

impl LieDerivative for Scalar {
    fn lie_along(&self, x: &MultiVector) -> Result<Self> {
        require_grade(x, 1)?;
        Ok(apply_vector(x, self))
    }
}

impl LieDerivative for Form {
    /// Cartan's formula `ι_X d + d ι_X`.
    fn lie_along(&self, x: &MultiVector) -> Result<Self> {
        check_chart(x.chart(), self.chart())?;
        require_grade(x, 1)?;
        if self.grade() == 0 {
            return Ok(Form::scalar(self.chart(), apply_vector(x, &self.as_scalar()?)));
        }
        iota(x, &d(self))?.add(&d(&iota(x, self)?))
    }
}

impl LieDerivative for MultiVector {
    /// Derivation rule with `L_X ∂_b = -∂_b X`.
    fn lie_along(&self, x: &MultiVector) -> Result<Self> {
        check_chart(x.chart(), self.chart())?;
        require_grade(x, 1)?;
        let chart = self.chart();
        let cols: Vec<MultiVector> = (0..chart.dim()).map(|b| x.partial(b).neg()).collect();
        let mut out = MultiVector::zero(chart, self.grade());
        for (b, s) in self.iter() {
            let xs = apply_vector(x, s);
            if !xs.is_zero() {
                out.add_at(b, xs);
            }
            let idx = b.to_vec();
            for a in 0..idx.len() {
                let mut acc = MultiVector::scalar(chart, s.clone());
                for (pos, &i) in idx.iter().enumerate() {
                    let factor = if pos == a { cols[i].clone() } else { MultiVector::basis(chart, i) };
                    acc = acc.wedge(&factor)?;
                }
                out = out.add(&acc)?;
            }
        }
        Ok(out)
    }
}

impl LieDerivative for Endo {
    /// Returns `M` with `M* = L_X N*`, i.e. `α ↦ L_X(N*α) - N*(L_X α)`.
    fn lie_along(&self, x: &MultiVector) -> Result<Self> {
        check_chart(x.chart(), self.chart())?;
        require_grade(x, 1)?;
        let chart = self.chart();
        let n = chart.dim();
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let dxi = Form::basis(chart, i);
            let a = self.star_row(i).lie_along(x)?;
            let b = self.star_apply(&dxi.lie_along(x)?)?;
            rows.push(a.sub(&b)?.to_vec());
        }
        Endo::new(chart, Matrix::from_rows(rows)?)
    }
}

pub fn lie<T: LieDerivative>(x: &MultiVector, t: &T) -> Result<T> {
    t.lie_along(x)
}

/// `[X,Y]_N = [NX,Y] + [X,NY] - N[X,Y]`.
pub fn bracket_n(n: &Endo, x: &MultiVector, y: &MultiVector) -> Result<MultiVector> {
    check_chart(n.chart(), x.chart())?;
    let a = lie_bracket(&n.apply(x)?, y)?;
    let b = lie_bracket(x, &n.apply(y)?)?;
    let c = n.apply(&lie_bracket(x, y)?)?;
    a.add(&b)?.sub(&c)
}

/// Nijenhuis torsion `[NX,NY] - N[X,Y]_N`.
pub fn torsion(n: &Endo, x: &MultiVector, y: &MultiVector) -> Result<MultiVector> {
    lie_bracket(&n.apply(x)?, &n.apply(y)?)?.sub(&n.apply(&bracket_n(n, x, y)?)?)
}

/// Koszul-type bracket on 1-forms for an arbitrary anchor `P: T* → T`:
/// `L_{Pα}β - L_{Pβ}α - d⟨Pα, β⟩`.
pub fn bracket_anchor(p: &Matrix, a: &Form, b: &Form) -> Result<Form> {
    check_chart(a.chart(), b.chart())?;
    require_grade(a, 1)?;
    require_grade(b, 1)?;
    let chart = a.chart();
    let pa = MultiVector::from_vec(chart, p.mul_vec(&a.to_vec()));
    let pb = MultiVector::from_vec(chart, p.mul_vec(&b.to_vec()));
    let pair = pairing(b, &pa)?;
    b.lie_along(&pa)?.sub(&a.lie_along(&pb)?)?.sub(&d(&Form::scalar(chart, pair)))
}

/// `[α,β]_π = L_{π♯α}β - L_{π♯β}α - d π(α,β)`.
pub fn bracket_pi(pi: &MultiVector, a: &Form, b: &Form) -> Result<Form> {
    check_chart(pi.chart(), a.chart())?;
    bracket_anchor(&crate::tensor::sharp_matrix(pi)?, a, b)
}
