//! Ready-made structures: three pseudo-Poisson Nijenhuis triples, a family
//! on a 6-dimensional torus chart and a pseudo-symplectic Nijenhuis
//! structure on R^4.

use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;

use super::checks::kernel_star_basis;
use super::data::StructureData;
use crate::calculus::schouten_nijenhuis;
use crate::tensor::{flat_matrix, sharp_matrix, Blade};
use crate::{Chart, Endo, Error, Form, Matrix, MultiVector, Rational, Result, Scalar};

pub const EXAMPLES: [&str; 5] = ["pn_zero_phi", "poisson_n_zero", "scalar_n", "torus6", "r4"];

/// Which verdict an example is meant to be checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleKind {
    PseudoPoisson,
    PseudoSymplectic,
}

#[derive(Clone, Debug)]
pub struct Example {
    pub name: String,
    pub kind: ExampleKind,
    pub data: StructureData,
}

struct Params<'a> {
    given: &'a [(String, String)],
    known: &'static [&'static str],
}

impl Params<'_> {
    fn check_known(&self) -> Result<()> {
        for (k, _) in self.given {
            if !self.known.contains(&k.as_str()) {
                return Err(Error::Param(format!("unknown parameter `{k}`")));
            }
        }
        Ok(())
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.given.iter().rev().find(|(k, _)| k == key).map(|(_, v)| v.trim())
    }

    fn rational(&self, key: &str, default: i64) -> Result<Rational> {
        match self.raw(key) {
            None => Ok(Rational::from_integer(default.into())),
            Some(v) => Rational::from_str(v).map_err(|_| Error::Param(format!("`{key}` must be a rational number, got `{v}`"))),
        }
    }

    fn indices(&self, key: &str, default: &[usize], dim: usize) -> Result<Vec<usize>> {
        let Some(v) = self.raw(key) else { return Ok(default.to_vec()) };
        if v.is_empty() || v == "none" {
            return Ok(Vec::new());
        }
        v.split(',')
            .map(|s| {
                let i: usize = s.trim().parse().map_err(|_| Error::Param(format!("`{key}`: bad index `{s}`")))?;
                if i == 0 || i > dim {
                    return Err(Error::Param(format!("`{key}`: index {i} outside 1..={dim}")));
                }
                Ok(i - 1)
            })
            .collect()
    }
}

pub fn builtin_example(name: &str, params: &[(String, String)]) -> Result<Example> {
    match name {
        "pn_zero_phi" => pn_zero_phi(&Params { given: params, known: &[] }),
        "poisson_n_zero" => poisson_n_zero(&Params { given: params, known: &[] }),
        "scalar_n" => scalar_n(&Params { given: params, known: &["a"] }),
        "torus6" => torus6(&Params { given: params, known: &["lambda", "a", "b", "c", "phi"] }),
        "r4" => r4(&Params { given: params, known: &["n11", "n33", "n12", "n34"] }),
        other => Err(Error::UnknownExample(other.to_string())),
    }
}

fn c(v: Rational) -> Scalar {
    Scalar::from_rational(v)
}

fn bivector(chart: &Arc<Chart>, pairs: &[(usize, usize, Scalar)]) -> Result<MultiVector> {
    let mut out = MultiVector::zero(chart, 2);
    for (i, j, s) in pairs {
        let t = MultiVector::basis(chart, *i).wedge(&MultiVector::basis(chart, *j))?.mul_scalar(s);
        out = out.add(&t)?;
    }
    Ok(out)
}

/// A Poisson Nijenhuis pair in action-angle style coordinates with `Φ = 0`.
fn pn_zero_phi(p: &Params) -> Result<Example> {
    p.check_known()?;
    let chart = Chart::new(["l1", "m1", "l2", "m2"])?;
    let pi = bivector(&chart, &[(0, 1, Scalar::one()), (2, 3, Scalar::one())])?;
    let (l1, l2) = (Scalar::coord(0), Scalar::coord(2));
    let mut m = Matrix::zero(4);
    m.set(0, 0, l1.clone());
    m.set(1, 1, l1);
    m.set(2, 2, l2.clone());
    m.set(3, 3, l2);
    let n = Endo::new(&chart, m)?;
    let data = StructureData::with_bivector(pi, Some(n), Some(MultiVector::zero(&chart, 3)))?;
    Ok(Example { name: "pn_zero_phi".into(), kind: ExampleKind::PseudoPoisson, data })
}

/// `N = 0` with a constant Poisson bivector and an arbitrary closed 3-vector.
fn poisson_n_zero(p: &Params) -> Result<Example> {
    p.check_known()?;
    let chart = Chart::new(["x", "y", "z"])?;
    let pi = bivector(&chart, &[(0, 1, Scalar::one())])?;
    let big_phi = MultiVector::blade(&chart, Blade::from_mask(0b111), Scalar::one());
    let data = StructureData::with_bivector(pi, Some(Endo::zero(&chart)), Some(big_phi))?;
    Ok(Example { name: "poisson_n_zero".into(), kind: ExampleKind::PseudoPoisson, data })
}

/// `N = a·id` and `Φ = [π,π]/2a` for a non-Poisson `π`.
fn scalar_n(p: &Params) -> Result<Example> {
    p.check_known()?;
    let a = p.rational("a", 2)?;
    if a.is_zero() {
        return Err(Error::Param("`a` must be a non-zero real number".into()));
    }
    let chart = Chart::new(["x", "y"])?;
    let pi = bivector(&chart, &[(0, 1, Scalar::coord(0))])?;
    let data = scalar_triple(&pi, a)?;
    Ok(Example { name: "scalar_n".into(), kind: ExampleKind::PseudoPoisson, data })
}

/// `(π, a·id, [π,π]/2a)` for any bivector.
pub fn scalar_triple(pi: &MultiVector, a: Rational) -> Result<StructureData> {
    if a.is_zero() {
        return Err(Error::Param("`a` must be a non-zero real number".into()));
    }
    let chart = pi.chart();
    let factor = c(Rational::from_integer(1.into()) / (a.clone() * Rational::from_integer(2.into())));
    let big_phi = schouten_nijenhuis(pi, pi)?.mul_scalar(&factor);
    StructureData::with_bivector(pi.clone(), Some(Endo::scaled_identity(chart, a)), Some(big_phi))
}

/// Standard symplectic form on a 6-dimensional chart and
/// `N_λ = π_λ♯∘ω♭` with `π_λ = ∂_a∧(∂_b + λ∂_c)`.
fn torus6(p: &Params) -> Result<Example> {
    p.check_known()?;
    let chart = Chart::new(["t1", "t2", "t3", "t4", "t5", "t6"])?;
    let lambda = p.rational("lambda", 1)?;
    let pick = |key: &str, default: usize| -> Result<usize> {
        // defaults are 0-based, user input 1-based
        let v = p.indices(key, &[default], 6)?;
        match v.as_slice() {
            [i] => Ok(*i),
            _ => Err(Error::Param(format!("`{key}` takes one index"))),
        }
    };
    let (a, b, cc) = (pick("a", 0)?, pick("b", 1)?, pick("c", 2)?);
    if a == b || b == cc || a == cc {
        return Err(Error::Param("indices a, b, c must be distinct".into()));
    }
    let mut omega = Form::zero(&chart, 2);
    for k in 0..3 {
        let t = Form::basis(&chart, 2 * k).wedge(&Form::basis(&chart, 2 * k + 1))?;
        omega = omega.add(&t)?;
    }
    let pi_l = bivector(&chart, &[(a, b, Scalar::one()), (a, cc, c(lambda))])?;
    let n = Endo::new(&chart, sharp_matrix(&pi_l)?.mul(&flat_matrix(&omega)?))?;
    let kernel = kernel_star_basis(&n)?;
    let chosen = p.indices("phi", &[0, 1, 2], kernel.len())?;
    let phi = match chosen.len() {
        0 => Form::zero(&chart, 3),
        3 => kernel[chosen[0]].wedge(&kernel[chosen[1]])?.wedge(&kernel[chosen[2]])?,
        _ => return Err(Error::Param("`phi` takes three kernel indices or `none`".into())),
    };
    let data = StructureData::with_two_form(omega, Some(n), Some(phi))?;
    Ok(Example { name: "torus6".into(), kind: ExampleKind::PseudoSymplectic, data })
}

/// Pseudo-symplectic Nijenhuis structure on R^4 built from two
/// non-vanishing opaque functions `f` and `g`.
fn r4(p: &Params) -> Result<Example> {
    p.check_known()?;
    let n11 = p.rational("n11", 2)?;
    let n33 = p.rational("n33", 1)?;
    let n12 = p.rational("n12", 1)?;
    let n34 = p.rational("n34", 1)?;
    if n11 == n33 {
        return Err(Error::Param("n11 and n33 must differ".into()));
    }
    for (k, v) in [("n11", &n11), ("n33", &n33), ("n12", &n12), ("n34", &n34)] {
        if v.is_zero() {
            return Err(Error::Param(format!("`{k}` must be non-zero")));
        }
    }
    let chart = Chart::with_opaque(["x1", "x2", "x3", "x4"], ["f", "g"])?;
    let gap = n11.clone() - n33.clone();
    let gap2 = gap.clone() * gap.clone();
    let z = Rational::zero;
    let rows = vec![
        vec![n11.clone(), gap2.clone() / n12.clone(), z(), z()],
        vec![n12.clone(), n11.clone(), z(), z()],
        vec![z(), z(), n33.clone(), gap2 / n34.clone()],
        vec![z(), z(), n34.clone(), n33.clone()],
    ];
    let n = Endo::from_rows(&chart, rows.into_iter().map(|r| r.into_iter().map(c).collect()).collect())?;

    let (a1, a2, a3, a4) = (c(n12), c(gap.clone()), c(n34), c(gap));
    let x = |i| Scalar::coord(i);
    let u = &(&a3 * &x(2)) + &(&a4 * &x(3));
    let v = &(&a1 * &x(0)) + &(&a2 * &x(1));
    let dx = |i| Form::basis(&chart, i);
    let dx12 = dx(0).wedge(&dx(1))?;
    let dx34 = dx(2).wedge(&dx(3))?;
    let omega = dx12.mul_scalar(&Scalar::apply("f", 0, u.clone())).add(&dx34.mul_scalar(&Scalar::apply("g", 0, v.clone())))?;

    let du = dx(2).mul_scalar(&a3).add(&dx(3).mul_scalar(&a4))?;
    let dv = dx(0).mul_scalar(&a1).add(&dx(1).mul_scalar(&a2))?;
    let first = dx12.wedge(&du)?.mul_scalar(&(&Scalar::apply("f", 1, u) * &c(n11.recip())));
    let second = dv.wedge(&dx34)?.mul_scalar(&(&Scalar::apply("g", 1, v) * &c(n33.recip())));
    let phi = first.add(&second)?;

    let data = StructureData::with_two_form(omega, Some(n), Some(phi))?;
    Ok(Example { name: "r4".into(), kind: ExampleKind::PseudoSymplectic, data })
}
