use std::sync::Arc;

use super::*;
use crate::tensor::{sharp_matrix, Blade};
use crate::{Chart, Endo, Error, Form, Matrix, MultiVector, Rational, Scalar};

fn r3() -> Arc<Chart> {
    Chart::new(["x", "y", "z"]).unwrap()
}

fn s(text: &str, chart: &Chart) -> Scalar {
    crate::expr::parse_scalar(text, chart).unwrap()
}

fn biv(chart: &Arc<Chart>, terms: &[(usize, usize, &str)]) -> MultiVector {
    let mut out = MultiVector::zero(chart, 2);
    for &(i, j, c) in terms {
        let t = MultiVector::basis(chart, i).wedge(&MultiVector::basis(chart, j)).unwrap().mul_scalar(&s(c, chart));
        out = out.add(&t).unwrap();
    }
    out
}

fn endo(chart: &Arc<Chart>, rows: &[&[&str]]) -> Endo {
    Endo::from_rows(chart, rows.iter().map(|r| r.iter().map(|c| s(c, chart)).collect()).collect()).unwrap()
}

fn so3(chart: &Arc<Chart>) -> MultiVector {
    biv(chart, &[(0, 1, "z"), (1, 2, "x"), (2, 0, "y")])
}

fn status(r: &CheckReport, name: &str) -> Status {
    r.condition(name).unwrap_or_else(|| panic!("no condition {name}\n{r}")).status.clone()
}

#[test]
fn poisson_examples() {
    let c = r3();
    assert!(is_poisson(&biv(&c, &[(0, 1, "1")])).unwrap().passed());
    assert!(is_poisson(&so3(&c)).unwrap().passed());
    let bad = is_poisson(&biv(&c, &[(0, 1, "1"), (1, 2, "y")])).unwrap();
    assert!(!bad.passed());
    assert!(!bad.conditions[0].residuals.is_empty());
}

#[test]
fn nijenhuis_examples() {
    let c = Chart::new(["x", "y"]).unwrap();
    let scaled = Endo::scaled_identity(&c, Rational::from_integer(3.into()));
    assert!(is_nijenhuis(&scaled).unwrap().passed());
    // N∂x = ∂y, N∂y = x∂x
    let n = endo(&c, &[&["0", "x"], &["1", "0"]]);
    let r = is_nijenhuis(&n).unwrap();
    assert!(!r.passed());
    let res = &r.conditions[0].residuals;
    assert_eq!(res.len(), 1);
    assert!(res[0].slot.ends_with("[∂y]"), "{}", res[0].slot);
    assert_eq!(res[0].expr, "-1");
}

#[test]
fn compatibility_examples() {
    let c = r3();
    let pi = so3(&c);
    let n = Endo::scaled_identity(&c, Rational::from_integer(2.into()));
    assert!(compatibility(&pi, &n).unwrap().passed());

    let c2 = Chart::new(["x", "y"]).unwrap();
    let pi = biv(&c2, &[(0, 1, "1")]);
    let n = endo(&c2, &[&["y", "0"], &["0", "0"]]);
    let r = compatibility(&pi, &n).unwrap();
    assert_eq!(status(&r, "N pi# = pi# N*"), Status::Fail);
    assert!(matches!(status(&r, "pi_N antisymmetric"), Status::Skipped(_)));
}

#[test]
fn concomitant_is_antisymmetric() {
    let c = r3();
    // the matrix identity holds, C itself need not vanish
    let pi = biv(&c, &[(0, 1, "z^2")]);
    let n = endo(&c, &[&["x", "0", "0"], &["0", "x", "0"], &["0", "0", "1"]]);
    let mut nonzero = false;
    for i in 0..3 {
        for j in 0..3 {
            let (a, b) = (Form::basis(&c, i), Form::basis(&c, j));
            let lhs = concomitant(&pi, &n, &a, &b).unwrap();
            let rhs = concomitant(&pi, &n, &b, &a).unwrap();
            assert_eq!(lhs, rhs.neg());
            nonzero |= !lhs.is_zero();
        }
    }
    assert!(nonzero);
}

#[test]
fn equivalence_probe_agrees() {
    let c = r3();
    let samples = ProbeSamples::coordinate(&c);
    let pi = biv(&c, &[(0, 1, "1")]);
    let good = equivalence_probe(&pi, &Endo::scaled_identity(&c, Rational::from_integer(3.into())), &samples).unwrap();
    assert!(good.passed(), "{good}");

    let bad_n = endo(&c, &[&["y", "0", "0"], &["0", "0", "0"], &["0", "0", "0"]]);
    let bad = equivalence_probe(&pi, &bad_n, &samples).unwrap();
    assert_eq!(status(&bad, PROBE_COMPATIBLE), Status::Fail);
    assert_eq!(status(&bad, PROBE_DEFECT), Status::Fail);
    assert_eq!(status(&bad, PROBE_CONSISTENT), Status::Pass);
}

#[test]
fn lemma_on_scalar_pair() {
    let c = Chart::new(["x", "y"]).unwrap();
    let pi = biv(&c, &[(0, 1, "1")]);
    let samples = ProbeSamples {
        functions: vec![Scalar::coord(0)],
        fields: vec![MultiVector::basis(&c, 1)],
        forms: vec![],
    };
    let r = equivalence_probe(&pi, &Endo::scaled_identity(&c, Rational::from_integer(5.into())), &samples).unwrap();
    assert_eq!(status(&r, PROBE_LEMMA), Status::Pass);
}

#[test]
fn builtin_ppn_examples_pass() {
    for name in ["pn_zero_phi", "poisson_n_zero", "scalar_n"] {
        let ex = builtin_example(name, &[]).unwrap();
        assert_eq!(ex.kind, ExampleKind::PseudoPoisson);
        let d = &ex.data;
        let r = ppn_check(&d.pi().unwrap(), d.endo().unwrap(), &d.big_phi().unwrap()).unwrap();
        assert!(r.passed(), "{name}\n{r}");
        assert_eq!(status(&r, AGREEMENT), Status::Pass);
    }
}

#[test]
fn scalar_triple_on_random_looking_bivector() {
    let c = r3();
    let pi = biv(&c, &[(0, 1, "x*y + 1"), (0, 2, "z^2"), (1, 2, "3/2*x")]);
    for a in [1, -2] {
        let d = scalar_triple(&pi, Rational::from_integer(a.into())).unwrap();
        let r = ppn_check(&pi, d.endo().unwrap(), &d.big_phi().unwrap()).unwrap();
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn wrong_phi_fails_ii_and_skips_iii() {
    let c = r3();
    let pi = biv(&c, &[(0, 1, "x")]);
    let n = Endo::identity(&c);
    let phi = MultiVector::blade(&c, Blade::from_mask(0b111), Scalar::one());
    let r = ppn_check(&pi, &n, &phi).unwrap();
    assert_eq!(status(&r, PPN_II), Status::Fail);
    assert!(matches!(status(&r, PPN_III), Status::Skipped(_)));
    assert_eq!(status(&r, AGREEMENT), Status::Pass);
    assert!(!r.passed());
}

#[test]
fn ppn_with_zero_phi_implies_poisson() {
    let c = r3();
    let pi = so3(&c);
    let r = ppn_check(&pi, &Endo::identity(&c), &MultiVector::zero(&c, 3)).unwrap();
    assert!(r.passed());
    assert!(is_poisson(&pi).unwrap().passed());
}

#[test]
fn scalar_examples_rejects_zero() {
    let p = vec![("a".to_string(), "0".to_string())];
    assert!(matches!(builtin_example("scalar_n", &p), Err(Error::Param(_))));
    assert!(matches!(builtin_example("nope", &[]), Err(Error::UnknownExample(_))));
    let p = vec![("n11".to_string(), "1".to_string())];
    assert!(matches!(builtin_example("r4", &p), Err(Error::Param(_))));
    let p = vec![("a".to_string(), "2".to_string()), ("b".to_string(), "2".to_string())];
    assert!(matches!(builtin_example("torus6", &p), Err(Error::Param(_))));
}

#[test]
fn hierarchy_scalar_powers() {
    let c = r3();
    let pi = so3(&c);
    let a = Rational::from_integer(3.into());
    let n = Endo::scaled_identity(&c, a.clone());
    let pis = hierarchy(&pi, &n, 3).unwrap();
    for (k, pk) in pis.iter().enumerate() {
        let f = Scalar::from_rational(num_traits::pow(a.clone(), k));
        assert_eq!(pk, &pi.mul_scalar(&f));
    }
    let q = MultiVector::basis(&c, 0);
    assert!(hierarchy_identity_check(&pi, &n, 0, 0, &q).unwrap().passed());
    assert!(hierarchy_compatibility(&pi, &n, 2, 2).unwrap().passed());
}

#[test]
fn hierarchy_requires_compatibility() {
    let c = Chart::new(["x", "y"]).unwrap();
    let pi = biv(&c, &[(0, 1, "1")]);
    let n = endo(&c, &[&["y", "0"], &["0", "0"]]);
    assert!(matches!(hierarchy(&pi, &n, 1), Err(Error::Precondition(_))));
}

#[test]
fn torus_hierarchy_stays_compatible() {
    let ex = builtin_example("torus6", &[]).unwrap();
    let pi = ex.data.pi().unwrap();
    let n = ex.data.endo().unwrap();
    let pis = hierarchy(&pi, n, 1).unwrap();
    assert!(compatibility(&pis[1], n).unwrap().passed());
}

#[test]
fn kernel_basis() {
    let c = r3();
    assert!(kernel_star_basis(&Endo::identity(&c)).unwrap().is_empty());
    let k = kernel_star_basis(&Endo::zero(&c)).unwrap();
    assert_eq!(k, (0..3).map(|i| Form::basis(&c, i)).collect::<Vec<_>>());
    let ex = builtin_example("torus6", &[]).unwrap();
    let n = ex.data.endo().unwrap();
    let k = kernel_star_basis(n).unwrap();
    assert_eq!(k.len(), 4);
    for a in &k {
        assert!(n.star_apply(a).unwrap().is_zero());
    }
    let nonconst = endo(&c, &[&["x", "0", "0"], &["0", "0", "0"], &["0", "0", "0"]]);
    assert!(matches!(kernel_star_basis(&nonconst), Err(Error::Unsupported(_))));
}

fn psn_of(ex: &Example) -> CheckReport {
    let d = &ex.data;
    psn_check(d.omega().unwrap(), d.endo().unwrap(), &d.small_phi()).unwrap()
}

#[test]
fn torus_examples_pass_psn() {
    for lambda in ["0", "1", "2"] {
        let ex = builtin_example("torus6", &[("lambda".into(), lambda.into())]).unwrap();
        let r = psn_of(&ex);
        assert!(r.passed(), "lambda={lambda}\n{r}");
    }
    let ex = builtin_example("torus6", &[("phi".into(), "none".into())]).unwrap();
    assert!(psn_of(&ex).passed());
}

#[test]
fn degenerate_omega_is_an_error() {
    let c = r3();
    let omega = Form::basis(&c, 0).wedge(&Form::basis(&c, 1)).unwrap();
    let err = psn_check(&omega, &Endo::identity(&c), &Form::zero(&c, 3)).unwrap_err();
    assert!(matches!(err, Error::Degenerate(_)));
    let pi = biv(&c, &[(0, 1, "1")]);
    let err = nondeg_reduction_probe(&pi, &Endo::identity(&c), &MultiVector::zero(&c, 3)).unwrap_err();
    assert!(matches!(err, Error::Degenerate(_)));
}

#[test]
fn r4_nijenhuis_and_closed() {
    let ex = builtin_example("r4", &[]).unwrap();
    let r = psn_of(&ex);
    assert_eq!(status(&r, "N is Nijenhuis"), Status::Pass);
    assert_eq!(status(&r, PSN_CLOSED), Status::Pass);
    assert_eq!(status(&r, PSN_NONDEGENERATE), Status::Pass);
    assert_eq!(status(&r, PSN_AGREEMENT), Status::Pass);
}

#[test]
fn twisted_poisson_trivial_case() {
    let c = r3();
    let pi = so3(&c);
    let r = twisted_poisson_check(&pi, &Endo::identity(&c), &Form::zero(&c, 3)).unwrap();
    assert!(r.passed());
    let torus = builtin_example("torus6", &[]).unwrap();
    let d = &torus.data;
    let r = twisted_poisson_check(&d.pi().unwrap(), d.endo().unwrap(), &d.small_phi()).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn nondeg_probe_on_scalar_r4() {
    let c = Chart::new(["x1", "x2", "x3", "x4"]).unwrap();
    let pi = biv(&c, &[(0, 1, "1"), (2, 3, "1")]);
    let d = scalar_triple(&pi, Rational::from_integer(2.into())).unwrap();
    let r = nondeg_reduction_probe(&pi, d.endo().unwrap(), &d.big_phi().unwrap()).unwrap();
    assert!(r.passed(), "{r}");
    let pi = biv(&c, &[(0, 1, "x3 + 1"), (2, 3, "1"), (0, 3, "x2")]);
    let d = scalar_triple(&pi, Rational::from_integer((-1).into())).unwrap();
    let r = nondeg_reduction_probe(&pi, d.endo().unwrap(), &d.big_phi().unwrap()).unwrap();
    assert_eq!(status(&r, NONDEG_THEOREM), Status::Pass, "{r}");
}

#[test]
fn product_of_scalar_examples() {
    let c = Chart::new(["x", "y"]).unwrap();
    let pi = biv(&c, &[(0, 1, "1")]);
    let one = scalar_triple(&pi, Rational::from_integer(1.into())).unwrap();
    let p = product(&one, &one).unwrap();
    assert_eq!(p.chart.coords(), &["x", "y", "x_2", "y_2"]);
    assert_eq!(p.renamed, vec![("x".to_string(), "x_2".to_string()), ("y".to_string(), "y_2".to_string())]);
    let r = ppn_check(&p.pi().unwrap(), p.endo().unwrap(), &p.big_phi().unwrap()).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn product_with_trivial_factor() {
    let ex = builtin_example("scalar_n", &[]).unwrap();
    let c = Chart::new(["u"]).unwrap();
    let trivial = StructureData::with_bivector(MultiVector::zero(&c, 2), None, None).unwrap();
    let p = product(&ex.data, &trivial).unwrap();
    let r = ppn_check(&p.pi().unwrap(), p.endo().unwrap(), &p.big_phi().unwrap()).unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(p.pi().unwrap().remap(&ex.data.chart, &|i| i).len(), ex.data.pi().unwrap().len());
}

#[test]
fn product_of_torus_and_r4() {
    let a = builtin_example("torus6", &[]).unwrap();
    let b = builtin_example("r4", &[]).unwrap();
    let p = product(&a.data, &b.data).unwrap();
    assert_eq!(p.chart.dim(), 10);
    assert!(p.two_form.is_some());
    let r = ppn_check(&p.pi().unwrap(), p.endo().unwrap(), &p.big_phi().unwrap()).unwrap();
    // only the R^4 factor's known compatibility defect may fail
    let r4 = psn_of(&b);
    assert_eq!(r.passed(), r4.passed(), "{r}");
}

#[test]
fn structure_data_validation() {
    let c = r3();
    let pi = biv(&c, &[(0, 1, "1")]);
    let wrong = Form::basis(&c, 0);
    let err = StructureData::with_two_form(wrong, None, None).unwrap_err();
    assert_eq!(err, Error::Degree { expected: 2, found: 1 });
    let d = StructureData::with_bivector(pi, None, None).unwrap();
    assert_eq!(d.endo().unwrap_err(), Error::Missing("endomorphism"));
    assert!(d.big_phi().unwrap().is_zero());
}

#[test]
fn omega_data_converts_to_pi() {
    let c = Chart::new(["x", "y"]).unwrap();
    let omega = Form::basis(&c, 0).wedge(&Form::basis(&c, 1)).unwrap();
    let d = StructureData::with_two_form(omega.clone(), None, None).unwrap();
    let pi = d.pi().unwrap();
    let p = sharp_matrix(&pi).unwrap();
    let w = crate::tensor::flat_matrix(&omega).unwrap();
    assert_eq!(p.mul(&w), Matrix::identity(2));
}
