use std::sync::Arc;

use num_traits::{One, Zero};

use super::report::{collect, collect_scalar, CheckReport, Condition, Residual};
use crate::calculus::{
    bracket_anchor, bracket_pi, d, d_n, d_pi, derivation_defect, dual_derivation_defect, dual_lie_in, lie, pi_n,
    schouten_n, schouten_nijenhuis, torsion, CotangentAlgebroid, LieDerivative,
};
use crate::tensor::{
    bivector_from_sharp, check_chart, flat_matrix, invert_flat, iota, raise_3, sharp_matrix, Blade, Form, MultiVector,
};
use crate::{Chart, Endo, Error, Rational, Result, Scalar};

const NIJENHUIS: &str = "N is Nijenhuis";
const MATRIX_IDENTITY: &str = "N pi# = pi# N*";
const CONCOMITANT: &str = "C(pi, N) = 0";
const PI_N_ANTISYMMETRIC: &str = "pi_N antisymmetric";

fn pair_slot(chart: &Chart, prefix: &str, i: usize, j: usize) -> String {
    format!("({prefix}{}, {prefix}{})", chart.coord_name(i), chart.coord_name(j))
}

pub fn is_poisson(pi: &MultiVector) -> Result<CheckReport> {
    let mut report = CheckReport::new("poisson");
    report.push(poisson_condition("[pi, pi] = 0", pi)?);
    Ok(report)
}

fn poisson_condition(name: &str, pi: &MultiVector) -> Result<Condition> {
    let mut res = Vec::new();
    collect(&mut res, "[pi,pi]", &schouten_nijenhuis(pi, pi)?);
    Ok(Condition::from_residuals(name, res))
}

pub fn is_nijenhuis(n: &Endo) -> Result<CheckReport> {
    let mut report = CheckReport::new("nijenhuis");
    report.push(nijenhuis_condition(n)?);
    Ok(report)
}

fn nijenhuis_condition(n: &Endo) -> Result<Condition> {
    let chart = n.chart();
    let dim = chart.dim();
    let mut res = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            let t = torsion(n, &MultiVector::basis(chart, i), &MultiVector::basis(chart, j))?;
            collect(&mut res, &format!("T_N{}", pair_slot(chart, "∂", i, j)), &t);
        }
    }
    Ok(Condition::from_residuals(NIJENHUIS, res))
}

/// `C_π^N(α,β) = [α,β]_{Nπ♯} - [α,β]_π^{N*}`.
pub fn concomitant(pi: &MultiVector, n: &Endo, a: &Form, b: &Form) -> Result<Form> {
    check_chart(pi.chart(), n.chart())?;
    let p = n.matrix().mul(&sharp_matrix(pi)?);
    let first = bracket_anchor(&p, a, b)?;
    let deformed = bracket_pi(pi, &n.star_apply(a)?, b)?
        .add(&bracket_pi(pi, a, &n.star_apply(b)?)?)?
        .sub(&n.star_apply(&bracket_pi(pi, a, b)?)?)?;
    first.sub(&deformed)
}

fn compatibility_conditions(pi: &MultiVector, n: &Endo) -> Result<Vec<Condition>> {
    check_chart(pi.chart(), n.chart())?;
    let chart = pi.chart();
    let dim = chart.dim();
    let p = sharp_matrix(pi)?;
    let np = n.matrix().mul(&p);
    let diff = np.sub(&p.mul(&n.matrix().transpose()));
    let mut res = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            collect_scalar(&mut res, format!("entry ({}, {})", chart.coord_name(i), chart.coord_name(j)), diff.get(i, j), chart);
        }
    }
    let matrix_ok = res.is_empty();
    let mut out = vec![Condition::from_residuals(MATRIX_IDENTITY, res)];

    let mut res = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            let c = concomitant(pi, n, &Form::basis(chart, i), &Form::basis(chart, j))?;
            collect(&mut res, &format!("C{}", pair_slot(chart, "d", i, j)), &c);
        }
    }
    out.push(Condition::from_residuals(CONCOMITANT, res));

    if matrix_ok {
        let ok = np.is_antisymmetric();
        out.push(Condition::flag(PI_N_ANTISYMMETRIC, ok, (!ok).then(|| "N pi# is not antisymmetric".to_string())));
    } else {
        out.push(Condition::skipped(PI_N_ANTISYMMETRIC, "matrix identity failed"));
    }
    Ok(out)
}

pub fn compatibility(pi: &MultiVector, n: &Endo) -> Result<CheckReport> {
    let mut report = CheckReport::new("compatibility");
    for c in compatibility_conditions(pi, n)? {
        report.push(c);
    }
    Ok(report)
}

/// Test elements for the equivalence probe.
#[derive(Clone, Debug)]
pub struct ProbeSamples {
    pub functions: Vec<Scalar>,
    pub fields: Vec<MultiVector>,
    pub forms: Vec<Form>,
}

impl ProbeSamples {
    /// Coordinate functions, coordinate fields and 1-forms, plus one
    /// quadratic-coefficient bivector and 2-form.
    pub fn coordinate(chart: &Arc<Chart>) -> Self {
        let dim = chart.dim();
        let functions = (0..dim).map(Scalar::coord).collect();
        let mut fields: Vec<MultiVector> = (0..dim).map(|i| MultiVector::basis(chart, i)).collect();
        let mut forms: Vec<Form> = (0..dim).map(|i| Form::basis(chart, i)).collect();
        if dim >= 2 {
            let last = Scalar::coord(dim - 1);
            let coeff = &last * &last;
            let b = Blade::from_mask(0b11);
            fields.push(MultiVector::blade(chart, b, coeff.clone()));
            forms.push(Form::blade(chart, b, coeff));
        }
        ProbeSamples { functions, fields, forms }
    }
}

pub const PROBE_COMPATIBLE: &str = "(i) compatible";
pub const PROBE_DUAL_DEFECT: &str = "(ii) dual derivation defect vanishes";
pub const PROBE_DEFECT: &str = "(iii) derivation defect vanishes";
pub const PROBE_LEMMA: &str = "lemma: L^pi_{d_N f} X + [d_pi f, X]_N = 0";
pub const PROBE_CONSISTENT: &str = "verdicts (i), (ii), (iii) agree";

pub fn equivalence_probe(pi: &MultiVector, n: &Endo, samples: &ProbeSamples) -> Result<CheckReport> {
    check_chart(pi.chart(), n.chart())?;
    let chart = pi.chart();
    let mut report = CheckReport::new("equivalence probe");

    let compatible = compatibility_conditions(pi, n)?.iter().all(|c| !c.failed());
    report.push(Condition::flag(PROBE_COMPATIBLE, compatible, (!compatible).then(|| "see compatibility".into())));

    let mut forms: Vec<Form> = samples.functions.iter().map(|f| Form::scalar(chart, f.clone())).collect();
    forms.extend(samples.forms.iter().cloned());
    let mut res = Vec::new();
    for (a, x) in forms.iter().enumerate() {
        for (b, y) in forms.iter().enumerate() {
            collect(&mut res, &format!("B(s{a}, s{b})"), &dual_derivation_defect(pi, n, x, y)?);
        }
    }
    let dual_ok = res.is_empty();
    report.push(Condition::from_residuals(PROBE_DUAL_DEFECT, res));

    let mut fields: Vec<MultiVector> =
        samples.functions.iter().map(|f| MultiVector::scalar(chart, f.clone())).collect();
    fields.extend(samples.fields.iter().cloned());
    let mut res = Vec::new();
    for (a, x) in fields.iter().enumerate() {
        for (b, y) in fields.iter().enumerate() {
            collect(&mut res, &format!("A(s{a}, s{b})"), &derivation_defect(pi, n, x, y)?);
        }
    }
    let defect_ok = res.is_empty();
    report.push(Condition::from_residuals(PROBE_DEFECT, res));

    let cot = CotangentAlgebroid::from_bivector(pi)?;
    let mut res = Vec::new();
    for (a, f) in samples.functions.iter().enumerate() {
        let fs = MultiVector::scalar(chart, f.clone());
        let dnf = d_n(n, &Form::scalar(chart, f.clone()))?;
        let dpf = d_pi(pi, &fs)?;
        for (b, x) in samples.fields.iter().enumerate().filter(|(_, x)| x.grade() == 1) {
            let lhs = dual_lie_in(&cot, &dnf, x)?.add(&schouten_n(n, &dpf, x)?)?;
            collect(&mut res, &format!("(f{a}, X{b})"), &lhs);
        }
    }
    report.push(Condition::from_residuals(PROBE_LEMMA, res));

    let agree = compatible == dual_ok && dual_ok == defect_ok;
    report.push(Condition::flag(
        PROBE_CONSISTENT,
        agree,
        (!agree).then(|| format!("(i)={compatible} (ii)={dual_ok} (iii)={defect_ok}")),
    ));
    Ok(report)
}

pub const PPN_I: &str = "(i) [pi, Phi] = 0";
pub const PPN_II: &str = "(ii) 1/2 i_{a^b}[pi,pi] = N i_{a^b} Phi";
pub const PPN_III: &str = "(iii) Lie derivative condition";
pub const QLB_DEFECT: &str = "qLb: d_pi is a derivation of [.,.]_N";
pub const QLB_FUNCTIONS: &str = "qLb: d_pi^2 = [Phi, .]_N on functions";
pub const QLB_FIELDS: &str = "qLb: d_pi^2 = [Phi, .]_N on coordinate fields";
pub const QLB_CLOSED: &str = "qLb: d_pi Phi = 0";
pub const AGREEMENT: &str = "pPN verdict agrees with quasi-Lie bialgebroid verdict";

/// Conditions of a pseudo-Poisson Nijenhuis triple.
fn ppn_conditions(pi: &MultiVector, n: &Endo, big_phi: &MultiVector) -> Result<Vec<Condition>> {
    check_chart(pi.chart(), n.chart())?;
    check_chart(pi.chart(), big_phi.chart())?;
    if big_phi.grade() != 3 {
        return Err(Error::Degree { expected: 3, found: big_phi.grade() });
    }
    let chart = pi.chart();
    let dim = chart.dim();
    let mut out = vec![nijenhuis_condition(n)?];
    out.extend(compatibility_conditions(pi, n)?);

    let mut res = Vec::new();
    collect(&mut res, "[pi,Phi]", &schouten_nijenhuis(pi, big_phi)?);
    out.push(Condition::from_residuals(PPN_I, res));

    let pp = schouten_nijenhuis(pi, pi)?;
    let half = Scalar::ratio(1, 2);
    let mut res = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            let ab = Form::basis(chart, i).wedge(&Form::basis(chart, j))?;
            let lhs = iota(&ab, &pp)?.mul_scalar(&half);
            let rhs = n.apply(&iota(&ab, big_phi)?)?;
            collect(&mut res, &pair_slot(chart, "d", i, j), &lhs.sub(&rhs)?);
        }
    }
    let ii_ok = res.is_empty();
    out.push(Condition::from_residuals(PPN_II, res));

    if !ii_ok {
        out.push(Condition::skipped(PPN_III, "not tensorial without (ii)"));
        return Ok(out);
    }
    let mut res = Vec::new();
    for k in 0..dim {
        let dk = MultiVector::basis(chart, k);
        let l_phi = big_phi.lie_along(&dk)?;
        let l_n_phi = big_phi.lie_along(&n.column(k))?;
        let m = lie(&dk, n)?;
        for i in 0..dim {
            for j in i + 1..dim {
                let (a, b) = (Form::basis(chart, i), Form::basis(chart, j));
                let ab = a.wedge(&b)?;
                let first = n.apply(&iota(&ab, &l_phi)?)?;
                let second = iota(&ab, &l_n_phi)?;
                let third = iota(&m.star_apply(&a)?.wedge(&b)?, big_phi)?
                    .add(&iota(&a.wedge(&m.star_apply(&b)?)?, big_phi)?)?;
                let slot = format!("{} along ∂{}", pair_slot(chart, "d", i, j), chart.coord_name(k));
                collect(&mut res, &slot, &first.sub(&second)?.sub(&third)?);
            }
        }
    }
    out.push(Condition::from_residuals(PPN_III, res));
    Ok(out)
}

/// Conditions making `((TM)_N, d_π, Φ)` a quasi-Lie bialgebroid, checked on
/// coordinate generators.
fn qlb_conditions(pi: &MultiVector, n: &Endo, big_phi: &MultiVector) -> Result<Vec<Condition>> {
    let chart = pi.chart();
    let dim = chart.dim();
    let mut out = vec![nijenhuis_condition(n)?];

    let mut gens: Vec<MultiVector> = (0..dim).map(|i| MultiVector::scalar(chart, Scalar::coord(i))).collect();
    gens.extend((0..dim).map(|i| MultiVector::basis(chart, i)));
    let name = |g: &MultiVector| -> String {
        let i = g.iter().next().map(|(b, s)| if b.grade() == 0 { s.to_string_in(chart) } else { format!("∂{}", chart.coord_name(b.indices().next().unwrap())) });
        i.unwrap_or_else(|| "0".into())
    };
    let mut res = Vec::new();
    for x in &gens {
        for y in &gens {
            collect(&mut res, &format!("A({}, {})", name(x), name(y)), &derivation_defect(pi, n, x, y)?);
        }
    }
    out.push(Condition::from_residuals(QLB_DEFECT, res));

    let square = |g: &MultiVector| -> Result<MultiVector> {
        d_pi(pi, &d_pi(pi, g)?)?.sub(&schouten_n(n, big_phi, g)?)
    };
    let mut res = Vec::new();
    for g in &gens[..dim] {
        collect(&mut res, &name(g), &square(g)?);
    }
    out.push(Condition::from_residuals(QLB_FUNCTIONS, res));
    let mut res = Vec::new();
    for g in &gens[dim..] {
        collect(&mut res, &name(g), &square(g)?);
    }
    out.push(Condition::from_residuals(QLB_FIELDS, res));

    let mut res = Vec::new();
    collect(&mut res, "d_pi Phi", &d_pi(pi, big_phi)?);
    out.push(Condition::from_residuals(QLB_CLOSED, res));
    Ok(out)
}

pub fn qlb_check(pi: &MultiVector, n: &Endo, big_phi: &MultiVector) -> Result<CheckReport> {
    check_chart(pi.chart(), n.chart())?;
    check_chart(pi.chart(), big_phi.chart())?;
    let mut report = CheckReport::new("quasi-Lie bialgebroid");
    for c in qlb_conditions(pi, n, big_phi)? {
        report.push(c);
    }
    Ok(report)
}

/// Checks a pseudo-Poisson Nijenhuis triple and cross-checks the verdict
/// against the quasi-Lie bialgebroid conditions.
pub fn ppn_check(pi: &MultiVector, n: &Endo, big_phi: &MultiVector) -> Result<CheckReport> {
    let mut report = CheckReport::new("pseudo-Poisson Nijenhuis");
    let conds = ppn_conditions(pi, n, big_phi)?;
    let ppn_ok = conds.iter().all(|c| !c.failed());
    for c in conds {
        report.push(c);
    }
    let qlb = qlb_conditions(pi, n, big_phi)?;
    // the Nijenhuis condition is shared and already reported
    let qlb_ok = qlb.iter().all(|c| !c.failed());
    for c in qlb.into_iter().skip(1) {
        report.push(c);
    }
    report.push(Condition::flag(
        AGREEMENT,
        ppn_ok == qlb_ok,
        (ppn_ok != qlb_ok).then(|| format!("pPN={ppn_ok} qLb={qlb_ok}")),
    ));
    Ok(report)
}

/// `π_0 = π`, `π_{k+1}♯ = N∘π_k♯`.
pub fn hierarchy(pi: &MultiVector, n: &Endo, k: usize) -> Result<Vec<MultiVector>> {
    let mut pre = vec![nijenhuis_condition(n)?];
    pre.extend(compatibility_conditions(pi, n)?);
    if let Some(c) = pre.iter().find(|c| c.failed()) {
        return Err(Error::Precondition(format!("{} does not hold", c.name)));
    }
    let mut out = vec![pi.clone()];
    for _ in 0..k {
        let p = n.matrix().mul(&sharp_matrix(out.last().unwrap())?);
        out.push(bivector_from_sharp(pi.chart(), &p)?);
    }
    Ok(out)
}

/// `[π_k, Q]_{N^{l+1}} = [π_{k+1}, Q]_{N^l}`.
pub fn hierarchy_identity_check(pi: &MultiVector, n: &Endo, k: usize, l: u32, q: &MultiVector) -> Result<CheckReport> {
    let pis = hierarchy(pi, n, k + 1)?;
    let lhs = schouten_n(&n.pow(l + 1), &pis[k], q)?;
    let rhs = schouten_n(&n.pow(l), &pis[k + 1], q)?;
    let mut res = Vec::new();
    collect(&mut res, "difference", &lhs.sub(&rhs)?);
    let name = format!("[pi_{k}, Q]_N^{} = [pi_{}, Q]_N^{l} for Q = {}", l + 1, k + 1, q);
    let mut report = CheckReport::new("hierarchy identity");
    report.push(Condition::from_residuals(name, res));
    Ok(report)
}

/// Compatibility of every `(π_j, N^p)` with `j ≤ depth`, `1 ≤ p ≤ max_power`.
pub fn hierarchy_compatibility(pi: &MultiVector, n: &Endo, depth: usize, max_power: u32) -> Result<CheckReport> {
    let pis = hierarchy(pi, n, depth)?;
    let mut report = CheckReport::new("hierarchy compatibility");
    for (j, pj) in pis.iter().enumerate() {
        for p in 1..=max_power {
            let conds = compatibility_conditions(pj, &n.pow(p))?;
            let mut res: Vec<Residual> = Vec::new();
            for c in &conds {
                for r in &c.residuals {
                    res.push(Residual { slot: format!("{}: {}", c.name, r.slot), expr: r.expr.clone() });
                }
            }
            let ok = conds.iter().all(|c| !c.failed());
            let mut cond = Condition::from_residuals(format!("(pi_{j}, N^{p}) compatible"), res);
            if !ok && cond.residuals.is_empty() {
                cond = Condition::flag(cond.name, false, Some("pi_N not antisymmetric".into()));
            }
            report.push(cond);
        }
    }
    Ok(report)
}

fn require_nondegenerate(omega: &Form) -> Result<()> {
    if flat_matrix(omega)?.det().is_zero() {
        return Err(Error::Degenerate("degenerate two-form".into()));
    }
    Ok(())
}

pub const PSN_NONDEGENERATE: &str = "omega nondegenerate";
pub const PSN_CLOSED: &str = "d phi = 0";
pub const PSN_II: &str = "(ii)' i_{X^Y} d omega = N* i_{X^Y} phi";
pub const PSN_AGREEMENT: &str = "agrees with pPN check of (pi, N, pi# phi)";

/// Checks a pseudo-symplectic Nijenhuis structure.
pub fn psn_check(omega: &Form, n: &Endo, phi: &Form) -> Result<CheckReport> {
    check_chart(omega.chart(), n.chart())?;
    check_chart(omega.chart(), phi.chart())?;
    require_nondegenerate(omega)?;
    let chart = omega.chart();
    let dim = chart.dim();
    let pi = invert_flat(omega)?;
    let mut report = CheckReport::new("pseudo-symplectic Nijenhuis");
    report.push(Condition::flag(PSN_NONDEGENERATE, true, None));
    report.push(nijenhuis_condition(n)?);
    for c in compatibility_conditions(&pi, n)? {
        report.push(c);
    }

    let mut res = Vec::new();
    collect(&mut res, "d phi", &d(phi));
    report.push(Condition::from_residuals(PSN_CLOSED, res));

    let d_omega = d(omega);
    let mut res = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            let xy = MultiVector::basis(chart, i).wedge(&MultiVector::basis(chart, j))?;
            let lhs = iota(&xy, &d_omega)?;
            let rhs = n.star_apply(&iota(&xy, phi)?)?;
            collect(&mut res, &pair_slot(chart, "∂", i, j), &lhs.sub(&rhs)?);
        }
    }
    report.push(Condition::from_residuals(PSN_II, res));

    let own = report.passed();
    let ppn = ppn_check(&pi, n, &raise_3(&pi, phi)?)?;
    let same = own == ppn.passed();
    report.push(Condition::flag(
        PSN_AGREEMENT,
        same,
        (!same).then(|| format!("pSN={own} pPN={}", ppn.passed())),
    ));
    Ok(report)
}

/// Basis of `ker N*` for a constant `N`.
pub fn kernel_star_basis(n: &Endo) -> Result<Vec<Form>> {
    let m = n.matrix();
    let dim = m.n();
    // rows of N* are the columns of N
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut row = Vec::with_capacity(dim);
        for i in 0..dim {
            let c = m.get(i, j).as_constant().ok_or_else(|| Error::Unsupported("kernel of a non-constant endomorphism".into()))?;
            row.push(c);
        }
        rows.push(row);
    }
    let pivots = rref(&mut rows);
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    let chart = n.chart();
    let mut out = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Rational::zero(); dim];
        v[f] = Rational::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -rows[r][f].clone();
        }
        out.push(Form::from_vec(chart, v.into_iter().map(Scalar::from_rational).collect()));
    }
    Ok(out)
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(rows: &mut [Vec<Rational>]) -> Vec<usize> {
    let (h, w) = (rows.len(), rows.first().map_or(0, |r| r.len()));
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..w {
        let Some(p) = (r..h).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..h {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for col in 0..w {
                    let t = &rows[r][col] * &f;
                    rows[i][col] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == h {
            break;
        }
    }
    pivots
}

pub const TWISTED_CLOSED: &str = "d phi = 0";
pub const TWISTED_IDENTITY: &str = "1/2 [pi_N, pi_N] = pi_N# phi";

/// Whether `(π_N, φ)` is a twisted Poisson structure.
pub fn twisted_poisson_check(pi: &MultiVector, n: &Endo, phi: &Form) -> Result<CheckReport> {
    check_chart(pi.chart(), n.chart())?;
    check_chart(pi.chart(), phi.chart())?;
    let mut report = CheckReport::new("twisted Poisson");
    let mut res = Vec::new();
    collect(&mut res, "d phi", &d(phi));
    report.push(Condition::from_residuals(TWISTED_CLOSED, res));
    let pin = match pi_n(pi, n) {
        Ok(p) => p,
        Err(Error::NotAntisymmetric) => {
            report.push(Condition::flag(PI_N_ANTISYMMETRIC, false, Some("N pi# is not antisymmetric".into())));
            report.push(Condition::skipped(TWISTED_IDENTITY, "pi_N is not a bivector"));
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    let lhs = schouten_nijenhuis(&pin, &pin)?.mul_scalar(&Scalar::ratio(1, 2));
    let rhs = raise_3(&pin, phi)?;
    let mut res = Vec::new();
    collect(&mut res, "difference", &lhs.sub(&rhs)?);
    report.push(Condition::from_residuals(TWISTED_IDENTITY, res));
    Ok(report)
}

pub const NONDEG_PREMISES: &str = "premises: Nijenhuis, compatible, (i), (ii)";
pub const NONDEG_THEOREM: &str = "premises imply (iii)";

/// For nondegenerate `π`, conditions (i) and (ii) of a compatible pair with
/// Nijenhuis `N` force (iii). A failure here is a bug in the checker.
pub fn nondeg_reduction_probe(pi: &MultiVector, n: &Endo, big_phi: &MultiVector) -> Result<CheckReport> {
    if sharp_matrix(pi)?.det().is_zero() {
        return Err(Error::Degenerate("bivector has zero determinant".into()));
    }
    let conds = ppn_conditions(pi, n, big_phi)?;
    let premises = conds.iter().filter(|c| c.name != PPN_III).all(|c| !c.failed());
    let mut report = CheckReport::new("nondegenerate reduction");
    report.push(Condition::flag(NONDEG_PREMISES, premises, (!premises).then(|| "some premise failed".into())));
    let iii = conds.iter().find(|c| c.name == PPN_III).cloned();
    if premises {
        let iii = iii.expect("(iii) runs once (ii) holds");
        let ok = iii.passed();
        let mut cond = Condition::from_residuals(NONDEG_THEOREM, iii.residuals);
        if !ok && cond.residuals.is_empty() {
            cond = Condition::flag(NONDEG_THEOREM, false, None);
        }
        report.push(cond);
    } else {
        report.push(Condition::skipped(NONDEG_THEOREM, "premises do not hold"));
    }
    for c in conds {
        report.push(c);
    }
    Ok(report)
}
