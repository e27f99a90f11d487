use std::sync::Arc;

use crate::tensor::{invert_flat, raise_3, Form, MultiVector};
use crate::{Chart, Endo, Error, Result};

/// Tensors describing one structure on a chart. Exactly one of `bivector`
/// and `two_form` is the primary 2-tensor.
#[derive(Clone, Debug)]
pub struct StructureData {
    pub chart: Arc<Chart>,
    pub bivector: Option<MultiVector>,
    pub endo: Option<Endo>,
    pub trivector: Option<MultiVector>,
    pub two_form: Option<Form>,
    pub three_form: Option<Form>,
    /// Coordinates renamed while building a product, as `(old, new)`.
    pub renamed: Vec<(String, String)>,
}

impl StructureData {
    pub fn with_bivector(pi: MultiVector, n: Option<Endo>, big_phi: Option<MultiVector>) -> Result<Self> {
        let s = StructureData {
            chart: pi.chart().clone(),
            bivector: Some(pi),
            endo: n,
            trivector: big_phi,
            two_form: None,
            three_form: None,
            renamed: Vec::new(),
        };
        s.validate()?;
        Ok(s)
    }

    pub fn with_two_form(omega: Form, n: Option<Endo>, phi: Option<Form>) -> Result<Self> {
        let s = StructureData {
            chart: omega.chart().clone(),
            bivector: None,
            endo: n,
            trivector: None,
            two_form: Some(omega),
            three_form: phi,
            renamed: Vec::new(),
        };
        s.validate()?;
        Ok(s)
    }

    /// Only an endomorphism, for Nijenhuis checks.
    pub fn with_endo(n: Endo) -> Self {
        StructureData {
            chart: n.chart().clone(),
            bivector: None,
            endo: Some(n),
            trivector: None,
            two_form: None,
            three_form: None,
            renamed: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.bivector.is_some() && self.two_form.is_some() {
            return Err(Error::Param("give either a bivector or a two-form, not both".into()));
        }
        let grades = [
            self.bivector.as_ref().map(|t| (t.grade(), 2, t.chart())),
            self.trivector.as_ref().map(|t| (t.grade(), 3, t.chart())),
            self.two_form.as_ref().map(|t| (t.grade(), 2, t.chart())),
            self.three_form.as_ref().map(|t| (t.grade(), 3, t.chart())),
        ];
        for (found, expected, chart) in grades.into_iter().flatten() {
            if found != expected {
                return Err(Error::Degree { expected, found });
            }
            crate::tensor::check_chart(&self.chart, chart)?;
        }
        if let Some(n) = &self.endo {
            crate::tensor::check_chart(&self.chart, n.chart())?;
        }
        Ok(())
    }

    pub fn endo(&self) -> Result<&Endo> {
        self.endo.as_ref().ok_or(Error::Missing("endomorphism"))
    }

    /// The bivector, derived from the two-form when that is primary.
    pub fn pi(&self) -> Result<MultiVector> {
        match (&self.bivector, &self.two_form) {
            (Some(pi), _) => Ok(pi.clone()),
            (None, Some(omega)) => invert_flat(omega),
            _ => Err(Error::Missing("bivector or two-form")),
        }
    }

    /// The 3-vector, derived as `π♯φ` from a 3-form when needed; zero if
    /// absent.
    pub fn big_phi(&self) -> Result<MultiVector> {
        if let Some(p) = &self.trivector {
            return Ok(p.clone());
        }
        match &self.three_form {
            Some(phi) => raise_3(&self.pi()?, phi),
            None => Ok(MultiVector::zero(&self.chart, 3)),
        }
    }

    pub fn omega(&self) -> Result<&Form> {
        self.two_form.as_ref().ok_or(Error::Missing("two-form"))
    }

    pub fn small_phi(&self) -> Form {
        self.three_form.clone().unwrap_or_else(|| Form::zero(&self.chart, 3))
    }
}

fn unique_name(taken: &[String], base: &str) -> String {
    let mut k = 2;
    loop {
        let candidate = format!("{base}_{k}");
        if !taken.contains(&candidate) {
            return candidate;
        }
        k += 1;
    }
}

/// Product structure on the concatenated chart. Colliding coordinate names
/// of the second factor get a numeric suffix. Missing endomorphisms count as
/// zero; a two-form factor is converted to bivector data unless both factors
/// are two-form based.
pub fn product(s1: &StructureData, s2: &StructureData) -> Result<StructureData> {
    let n1 = s1.chart.dim();
    let mut names: Vec<String> = s1.chart.coords().to_vec();
    let mut opaque: Vec<String> = s1.chart.opaque().to_vec();
    for o in s2.chart.opaque() {
        if !opaque.contains(o) {
            opaque.push(o.clone());
        }
    }
    let mut renamed = s1.renamed.clone();
    for c in s2.chart.coords() {
        let clash = names.contains(c) || opaque.contains(c);
        if clash {
            let mut taken = names.clone();
            taken.extend(opaque.iter().cloned());
            taken.extend(s2.chart.coords().iter().cloned());
            let fresh = unique_name(&taken, c);
            renamed.push((c.clone(), fresh.clone()));
            names.push(fresh);
        } else {
            names.push(c.clone());
        }
    }
    let chart = Chart::with_opaque(names, opaque)?;
    let left = |i: usize| i;
    let right = move |i: usize| i + n1;
    let endo = {
        let a = s1.endo.clone().unwrap_or_else(|| Endo::zero(&s1.chart)).remap(&chart, &left);
        let b = s2.endo.clone().unwrap_or_else(|| Endo::zero(&s2.chart)).remap(&chart, &right);
        Endo::new(&chart, a.matrix().add(b.matrix()))?
    };
    let both_forms = s1.two_form.is_some() && s2.two_form.is_some();
    let mut out = if both_forms {
        let omega = s1.omega()?.remap(&chart, &left).add(&s2.omega()?.remap(&chart, &right))?;
        let phi = s1.small_phi().remap(&chart, &left).add(&s2.small_phi().remap(&chart, &right))?;
        StructureData::with_two_form(omega, Some(endo), Some(phi))?
    } else {
        let pi = s1.pi()?.remap(&chart, &left).add(&s2.pi()?.remap(&chart, &right))?;
        let big_phi = s1.big_phi()?.remap(&chart, &left).add(&s2.big_phi()?.remap(&chart, &right))?;
        StructureData::with_bivector(pi, Some(endo), Some(big_phi))?
    };
    out.renamed = renamed;
    Ok(out)
}
