//! Courant algebroids on `TM ⊕ T*M`: the standard one and the double of the
//! quasi-Lie bialgebroid `((TM)_N, d_π, Φ)`.

use std::fmt;
use std::sync::Arc;

use crate::calculus::{bracket_n, bracket_pi, d, d_n, d_pi, df, lie_bracket, LieDerivative};
use crate::random::Gen;
use crate::structures::{ppn_check, CheckReport, Condition, Residual};
use crate::tensor::{check_chart, iota, pairing as contract, sharp};
use crate::{Chart, Endo, Error, Form, MultiVector, Result, Scalar};

/// `X + ξ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Section {
    pub vector: MultiVector,
    pub form: Form,
}

impl Section {
    pub fn new(vector: MultiVector, form: Form) -> Result<Self> {
        check_chart(vector.chart(), form.chart())?;
        for g in [vector.grade(), form.grade()] {
            if g != 1 {
                return Err(Error::Degree { expected: 1, found: g });
            }
        }
        Ok(Section { vector, form })
    }

    pub fn zero(chart: &Arc<Chart>) -> Self {
        Section { vector: MultiVector::zero(chart, 1), form: Form::zero(chart, 1) }
    }

    pub fn from_vector(vector: MultiVector) -> Result<Self> {
        let form = Form::zero(vector.chart(), 1);
        Section::new(vector, form)
    }

    pub fn from_form(form: Form) -> Result<Self> {
        let vector = MultiVector::zero(form.chart(), 1);
        Section::new(vector, form)
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.vector.chart()
    }

    pub fn is_zero(&self) -> bool {
        self.vector.is_zero() && self.form.is_zero()
    }

    pub fn add(&self, o: &Section) -> Result<Section> {
        Ok(Section { vector: self.vector.add(&o.vector)?, form: self.form.add(&o.form)? })
    }

    pub fn sub(&self, o: &Section) -> Result<Section> {
        Ok(Section { vector: self.vector.sub(&o.vector)?, form: self.form.sub(&o.form)? })
    }

    pub fn neg(&self) -> Section {
        Section { vector: self.vector.neg(), form: self.form.neg() }
    }

    pub fn mul_scalar(&self, f: &Scalar) -> Section {
        Section { vector: self.vector.mul_scalar(f), form: self.form.mul_scalar(f) }
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}", self.vector, self.form)
    }
}

#[derive(Clone, Debug)]
pub enum Mode {
    Standard,
    Double { pi: MultiVector, n: Endo, big_phi: MultiVector },
}

#[derive(Clone, Debug)]
pub struct CourantStructure {
    chart: Arc<Chart>,
    mode: Mode,
    exploratory: bool,
}

impl CourantStructure {
    pub fn standard(chart: &Arc<Chart>) -> Self {
        CourantStructure { chart: chart.clone(), mode: Mode::Standard, exploratory: false }
    }

    /// The double of `((TM)_N, d_π, Φ)`. When the triple fails the
    /// pseudo-Poisson Nijenhuis check the structure is still built but marked
    /// exploratory: the axioms are then not expected to hold.
    pub fn double(pi: &MultiVector, n: &Endo, big_phi: &MultiVector) -> Result<Self> {
        let exploratory = !ppn_check(pi, n, big_phi)?.passed();
        Ok(CourantStructure {
            chart: pi.chart().clone(),
            mode: Mode::Double { pi: pi.clone(), n: n.clone(), big_phi: big_phi.clone() },
            exploratory,
        })
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn mode(&self) -> &Mode {
        &self.mode
    }

    pub fn is_exploratory(&self) -> bool {
        self.exploratory
    }
}

/// `⟨X+ξ, Y+η⟩ = ½(ξ(Y) + η(X))`.
pub fn pairing(e1: &Section, e2: &Section) -> Result<Scalar> {
    check_chart(e1.chart(), e2.chart())?;
    let s = &contract(&e1.form, &e2.vector)? + &contract(&e2.form, &e1.vector)?;
    Ok(s.scale(&half()))
}

fn half() -> crate::Rational {
    crate::Rational::new(1.into(), 2.into())
}

pub fn anchor(s: &CourantStructure, e: &Section) -> Result<MultiVector> {
    check_chart(s.chart(), e.chart())?;
    match &s.mode {
        Mode::Standard => Ok(e.vector.clone()),
        Mode::Double { pi, n, .. } => n.apply(&e.vector)?.add(&sharp(pi, &e.form)?),
    }
}

/// `𝒟f`, characterized by `⟨𝒟f, e⟩ = ½ρ(e)f`.
pub fn d_operator(s: &CourantStructure, f: &Scalar) -> Result<Section> {
    let chart = s.chart();
    match &s.mode {
        Mode::Standard => Section::from_form(df(chart, f)),
        Mode::Double { pi, n, .. } => {
            let v = d_pi(pi, &MultiVector::scalar(chart, f.clone()))?;
            let w = d_n(n, &Form::scalar(chart, f.clone()))?;
            Section::new(v, w)
        }
    }
}

/// `[[X, ξ]] = (ι_X d_N ξ + ½ d_N⟨ξ,X⟩) - (ι_ξ d_π X + ½ d_π⟨ξ,X⟩)`.
fn mixed(pi: &MultiVector, n: &Endo, x: &MultiVector, xi: &Form) -> Result<Section> {
    let chart = x.chart();
    let p = contract(xi, x)?.scale(&half());
    let form = iota(x, &d_n(n, xi)?)?.add(&d_n(n, &Form::scalar(chart, p.clone()))?)?;
    let vector = iota(xi, &d_pi(pi, x)?)?.add(&d_pi(pi, &MultiVector::scalar(chart, p))?)?.neg();
    Section::new(vector, form)
}

pub fn bracket(s: &CourantStructure, e1: &Section, e2: &Section) -> Result<Section> {
    check_chart(s.chart(), e1.chart())?;
    check_chart(s.chart(), e2.chart())?;
    let (x, xi, y, eta) = (&e1.vector, &e1.form, &e2.vector, &e2.form);
    match &s.mode {
        Mode::Standard => {
            let chart = s.chart();
            let p = (&contract(xi, y)? - &contract(eta, x)?).scale(&half());
            let form = eta.lie_along(x)?.sub(&xi.lie_along(y)?)?.add(&d(&Form::scalar(chart, p)))?;
            Section::new(lie_bracket(x, y)?, form)
        }
        Mode::Double { pi, n, big_phi } => {
            let vector = bracket_n(n, x, y)?.add(&iota(&xi.wedge(eta)?, big_phi)?)?;
            let form = bracket_pi(pi, xi, eta)?;
            let base = Section::new(vector, form)?;
            base.add(&mixed(pi, n, x, eta)?)?.sub(&mixed(pi, n, y, xi)?)
        }
    }
}

pub const AXIOM_I: &str = "(i) Jacobiator = 1/3 sum D<[[e1,e2]],e3>";
pub const AXIOM_II: &str = "(ii) rho [[e1,e2]] = [rho e1, rho e2]";
pub const AXIOM_III: &str = "(iii) [[e1, f e2]] = f[[e1,e2]] + (rho(e1) f) e2 - <e1,e2> D f";
pub const AXIOM_IV: &str = "(iv) rho D f = 0 and <D f, D g> = 0";
pub const AXIOM_V: &str = "(v) rho(e)<e1,e2> = <[[e,e1]] + D<e,e1>, e2> + <e1, [[e,e2]] + D<e,e2>>";
pub const D_PAIRING: &str = "<D f, e> = 1/2 rho(e) f";

/// Coordinates and their pairwise products.
pub fn default_functions(chart: &Arc<Chart>) -> Vec<Scalar> {
    let n = chart.dim();
    let mut out: Vec<Scalar> = (0..n).map(Scalar::coord).collect();
    for i in 0..n {
        for j in i..n {
            out.push(&Scalar::coord(i) * &Scalar::coord(j));
        }
    }
    out
}

/// Sections with polynomial coefficients of degree at most 2.
pub fn random_sections(chart: &Arc<Chart>, count: usize, seed: u64) -> Vec<Section> {
    let mut g = Gen::new(seed);
    (0..count)
        .map(|_| Section {
            vector: g.multi(chart, 1, 2, 0.6),
            form: g.multi(chart, 1, 2, 0.6),
        })
        .collect()
}

/// Coordinate sections `∂_i` and `dx_i`.
pub fn coordinate_sections(chart: &Arc<Chart>) -> Vec<Section> {
    let n = chart.dim();
    let mut out: Vec<Section> = (0..n).map(|i| Section::from_vector(MultiVector::basis(chart, i)).unwrap()).collect();
    out.extend((0..n).map(|i| Section::from_form(Form::basis(chart, i)).unwrap()));
    out
}

fn push_section(out: &mut Vec<Residual>, slot: &str, s: &Section) {
    crate::structures::report_collect(out, slot, &s.vector);
    crate::structures::report_collect(out, slot, &s.form);
}

/// Evaluates the five axioms, and the defining property of `𝒟`, on every
/// tuple drawn from `sections` and `functions`.
pub fn verify_axioms(s: &CourantStructure, sections: &[Section], functions: &[Scalar]) -> Result<CheckReport> {
    if sections.len() < 3 {
        return Err(Error::Param(format!("need at least 3 sections, got {}", sections.len())));
    }
    for e in sections {
        check_chart(s.chart(), e.chart())?;
    }
    let chart = s.chart();
    let title = if s.exploratory {
        "courant axioms (exploratory: the triple is not pseudo-Poisson Nijenhuis)"
    } else {
        "courant axioms"
    };
    let mut report = CheckReport::new(title);
    let m = sections.len();
    let br = |a: &Section, b: &Section| bracket(s, a, b);
    let third = crate::Rational::new(1.into(), 3.into());

    let mut brackets = vec![vec![None; m]; m];
    for i in 0..m {
        for j in 0..m {
            brackets[i][j] = Some(br(&sections[i], &sections[j])?);
        }
    }
    let b = |i: usize, j: usize| brackets[i][j].as_ref().unwrap();

    // (i)
    let mut res = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let cyc = [(i, j, k), (j, k, i), (k, i, j)];
                let mut lhs = Section::zero(chart);
                let mut inner = Scalar::zero();
                for &(a, bb, c) in &cyc {
                    lhs = lhs.add(&br(b(a, bb), &sections[c])?)?;
                    inner = &inner + &pairing(b(a, bb), &sections[c])?;
                }
                let rhs = d_operator(s, &inner.scale(&third))?;
                push_section(&mut res, &format!("(e{i}, e{j}, e{k})"), &lhs.sub(&rhs)?);
            }
        }
    }
    report.push(Condition::from_residuals(AXIOM_I, res));

    // (ii)
    let anchors: Vec<MultiVector> = sections.iter().map(|e| anchor(s, e)).collect::<Result<_>>()?;
    let mut res = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let diff = anchor(s, b(i, j))?.sub(&lie_bracket(&anchors[i], &anchors[j])?)?;
            crate::structures::report_collect(&mut res, &format!("(e{i}, e{j})"), &diff);
        }
    }
    report.push(Condition::from_residuals(AXIOM_II, res));

    // (iii)
    let dfs: Vec<Section> = functions.iter().map(|f| d_operator(s, f)).collect::<Result<_>>()?;
    let mut res = Vec::new();
    for i in 0..m {
        for j in 0..m {
            let p = pairing(&sections[i], &sections[j])?;
            for (fi, f) in functions.iter().enumerate() {
                let lhs = br(&sections[i], &sections[j].mul_scalar(f))?;
                let rho_f = crate::calculus::apply_vector(&anchors[i], f);
                let rhs = b(i, j)
                    .mul_scalar(f)
                    .add(&sections[j].mul_scalar(&rho_f))?
                    .sub(&dfs[fi].mul_scalar(&p))?;
                push_section(&mut res, &format!("(e{i}, f{fi} e{j})"), &lhs.sub(&rhs)?);
            }
        }
    }
    report.push(Condition::from_residuals(AXIOM_III, res));

    // (iv)
    let mut res = Vec::new();
    for (a, dfa) in dfs.iter().enumerate() {
        crate::structures::report_collect(&mut res, &format!("rho D f{a}"), &anchor(s, dfa)?);
        for (bb, dfb) in dfs.iter().enumerate().skip(a) {
            let p = pairing(dfa, dfb)?;
            if !p.is_zero() {
                res.push(Residual { slot: format!("<D f{a}, D f{bb}>"), expr: p.to_string_in(chart) });
            }
        }
    }
    report.push(Condition::from_residuals(AXIOM_IV, res));

    // (v)
    let mut res = Vec::new();
    for e in 0..m {
        for i in 0..m {
            for j in i..m {
                let lhs = crate::calculus::apply_vector(&anchors[e], &pairing(&sections[i], &sections[j])?);
                let left = b(e, i).add(&d_operator(s, &pairing(&sections[e], &sections[i])?)?)?;
                let right = b(e, j).add(&d_operator(s, &pairing(&sections[e], &sections[j])?)?)?;
                let rhs = &pairing(&left, &sections[j])? + &pairing(&sections[i], &right)?;
                let diff = &lhs - &rhs;
                if !diff.is_zero() {
                    res.push(Residual { slot: format!("(e{e}; e{i}, e{j})"), expr: diff.to_string_in(chart) });
                }
            }
        }
    }
    report.push(Condition::from_residuals(AXIOM_V, res));

    let mut res = Vec::new();
    for (fi, f) in functions.iter().enumerate() {
        for (i, e) in sections.iter().enumerate() {
            let lhs = pairing(&dfs[fi], e)?;
            let rhs = crate::calculus::apply_vector(&anchors[i], f).scale(&half());
            let diff = &lhs - &rhs;
            if !diff.is_zero() {
                res.push(Residual { slot: format!("(f{fi}, e{i})"), expr: diff.to_string_in(chart) });
            }
        }
    }
    report.push(Condition::from_residuals(D_PAIRING, res));
    Ok(report)
}
