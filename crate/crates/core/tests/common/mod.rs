//! Seeded laws and fixtures shared by the property suite and the acceptance
//! harness. Every law takes a seed and returns the first violation it finds.

#![allow(dead_code)]

use std::sync::Arc;

use pnkit::calculus::{
    bracket_n, bracket_pi, contract, d, d_n, derivation_defect, df, schouten_direct, schouten_in, schouten_nijenhuis,
    TangentAlgebroid,
};
use pnkit::random::Gen;
use pnkit::structures::is_nijenhuis;
use pnkit::tensor::{iota, sharp, sharp_matrix, Blade};
use pnkit::{Chart, Endo, Expr, Form, Multi, MultiVector, Rational, Scalar};

pub type Law = fn(u64) -> Result<(), String>;

pub const CASES: u64 = 200;

pub fn chart(n: usize) -> Arc<Chart> {
    let names = ["x", "y", "z", "w"];
    Chart::with_opaque(names[..n].iter().copied(), ["f", "g"]).unwrap()
}

fn eq<T: PartialEq + std::fmt::Debug>(what: &str, a: T, b: T) -> Result<(), String> {
    if a == b {
        Ok(())
    } else {
        Err(format!("{what}: {a:?} != {b:?}"))
    }
}

fn sign(odd: bool) -> Scalar {
    if odd {
        Scalar::from_int(-1)
    } else {
        Scalar::one()
    }
}

/// Polynomial, possibly times an opaque function of a polynomial, possibly
/// over a nonzero polynomial.
pub fn scalar(g: &mut Gen, c: &Chart) -> Scalar {
    let mut s = g.polynomial(c, 2, 3);
    if g.chance(0.4) {
        let inner = g.polynomial(c, 1, 2);
        let name = if g.chance(0.5) { "f" } else { "g" };
        s = &s * &Scalar::apply(name, g.below(2) as u32, inner);
    }
    if g.chance(0.3) {
        let den = g.nonzero_polynomial(c, 1, 2);
        s = s.checked_div(&den).unwrap();
    }
    s
}

fn random_expr(g: &mut Gen, c: &Chart, depth: u32) -> Expr {
    let leaf = depth == 0 || g.chance(0.3);
    if leaf {
        return if g.chance(0.5) { Expr::Coord(g.below(c.dim())) } else { Expr::Num(g.rational()) };
    }
    match g.below(5) {
        0 => Expr::Add(vec![random_expr(g, c, depth - 1), random_expr(g, c, depth - 1)]),
        1 => Expr::Mul(vec![random_expr(g, c, depth - 1), random_expr(g, c, depth - 1)]),
        2 => Expr::Neg(Box::new(random_expr(g, c, depth - 1))),
        3 => Expr::Pow(Box::new(random_expr(g, c, depth - 1)), g.below(3) as i64 + 1),
        _ => Expr::Apply { name: "f".into(), order: g.below(2) as u32, arg: Box::new(random_expr(g, c, depth - 1)) },
    }
}

// ---------------------------------------------------------------- expressions

pub fn product_rule(seed: u64) -> Result<(), String> {
    let c = chart(3);
    let mut g = Gen::new(seed);
    let (a, b) = (scalar(&mut g, &c), scalar(&mut g, &c));
    let k = g.below(3);
    eq("product rule", (&a * &b).derivative(k), &(&a.derivative(k) * &b) + &(&a * &b.derivative(k)))
}

pub fn quotient_rule(seed: u64) -> Result<(), String> {
    let c = chart(3);
    let mut g = Gen::new(seed);
    let a = scalar(&mut g, &c);
    let b = g.nonzero_polynomial(&c, 2, 3);
    let k = g.below(3);
    let lhs = a.checked_div(&b).unwrap().derivative(k);
    let num = &(&a.derivative(k) * &b) - &(&a * &b.derivative(k));
    eq("quotient rule", lhs, num.checked_div(&(&b * &b)).unwrap())
}

pub fn chain_rule(seed: u64) -> Result<(), String> {
    let c = chart(3);
    let mut g = Gen::new(seed);
    let inner = scalar(&mut g, &c);
    let order = g.below(3) as u32;
    let k = g.below(3);
    let lhs = Scalar::apply("g", order, inner.clone()).derivative(k);
    let rhs = &Scalar::apply("g", order + 1, inner.clone()) * &inner.derivative(k);
    eq("chain rule", lhs, rhs)
}

pub fn partials_commute(seed: u64) -> Result<(), String> {
    let c = chart(3);
    let mut g = Gen::new(seed);
    let a = scalar(&mut g, &c);
    let (i, j) = (g.below(3), g.below(3));
    eq("mixed partials", a.derivative(i).derivative(j), a.derivative(j).derivative(i))
}

/// Differentiating the tree and then normalizing agrees with normalizing first.
pub fn tree_derivative(seed: u64) -> Result<(), String> {
    let c = chart(3);
    let mut g = Gen::new(seed);
    let e = random_expr(&mut g, &c, 4);
    let k = g.below(3);
    let via_tree = e.differentiate(k).canonicalize().map_err(|e| e.to_string())?;
    let via_canon = e.canonicalize().map_err(|e| e.to_string())?.derivative(k);
    eq("tree derivative", via_tree, via_canon)
}

pub const EXPR_LAWS: [(&str, Law); 5] = [
    ("product rule", product_rule),
    ("quotient rule", quotient_rule),
    ("chain rule", chain_rule),
    ("mixed partials commute", partials_commute),
    ("tree and canonical derivatives agree", tree_derivative),
];

// ------------------------------------------------------------ exterior algebra

fn multi<K: pnkit::tensor::Kind>(g: &mut Gen, c: &Arc<Chart>, grade: usize) -> Multi<K> {
    g.multi::<K>(c, grade, 2, 0.6)
}

pub fn wedge_associative(seed: u64) -> Result<(), String> {
    let c = chart(4);
    let mut g = Gen::new(seed);
    let p = g.below(3);
    let a: Form = multi(&mut g, &c, p);
    let b: Form = multi(&mut g, &c, 1);
    let cc: Form = multi(&mut g, &c, 1);
    let lhs = a.wedge(&b).unwrap().wedge(&cc).unwrap();
    let rhs = a.wedge(&b.wedge(&cc).unwrap()).unwrap();
    eq("wedge associativity", lhs, rhs)
}

pub fn wedge_graded_commutative(seed: u64) -> Result<(), String> {
    let c = chart(4);
    let mut g = Gen::new(seed);
    let (p, q) = (g.below(3), g.below(3));
    let a: MultiVector = multi(&mut g, &c, p);
    let b: MultiVector = multi(&mut g, &c, q);
    let rhs = b.wedge(&a).unwrap().mul_scalar(&sign(p * q % 2 == 1));
    eq("graded commutativity", a.wedge(&b).unwrap(), rhs)
}

/// `i_α` is an odd derivation for a 1-form `α`.
pub fn iota_derivation(seed: u64) -> Result<(), String> {
    let c = chart(4);
    let mut g = Gen::new(seed);
    let (p, q) = (1 + g.below(2), 1 + g.below(2));
    let alpha: Form = multi(&mut g, &c, 1);
    let x: MultiVector = multi(&mut g, &c, p);
    let y: MultiVector = multi(&mut g, &c, q);
    let lhs = iota(&alpha, &x.wedge(&y).unwrap()).unwrap();
    let first = iota(&alpha, &x).unwrap().wedge(&y).unwrap();
    let second = x.wedge(&iota(&alpha, &y).unwrap()).unwrap().mul_scalar(&sign(p % 2 == 1));
    eq("iota derivation", lhs, first.add(&second).unwrap())
}

/// `i_{α∧β} = i_β i_α`: the first factor contracts the first slot.
pub fn iota_composition(seed: u64) -> Result<(), String> {
    let c = chart(4);
    let mut g = Gen::new(seed);
    let alpha: Form = multi(&mut g, &c, 1);
    let beta: Form = multi(&mut g, &c, 1);
    let k = 2 + g.below(2);
    let t: MultiVector = multi(&mut g, &c, k);
    let lhs = iota(&alpha.wedge(&beta).unwrap(), &t).unwrap();
    let rhs = iota(&beta, &iota(&alpha, &t).unwrap()).unwrap();
    eq("iota composition", lhs, rhs)
}

/// Pairing of decomposables is the determinant of the 2x2 evaluations.
pub fn pairing_determinant(seed: u64) -> Result<(), String> {
    let c = chart(4);
    let mut g = Gen::new(seed);
    let (a, b): (Form, Form) = (multi(&mut g, &c, 1), multi(&mut g, &c, 1));
    let (x, y): (MultiVector, MultiVector) = (multi(&mut g, &c, 1), multi(&mut g, &c, 1));
    let ev = |f: &Form, v: &MultiVector| contract(f, v).unwrap();
    let det = &(&ev(&a, &x) * &ev(&b, &y)) - &(&ev(&a, &y) * &ev(&b, &x));
    eq("pairing", contract(&a.wedge(&b).unwrap(), &x.wedge(&y).unwrap()).unwrap(), det)
}

pub const EXTERIOR_LAWS: [(&str, Law); 5] = [
    ("wedge is associative", wedge_associative),
    ("wedge is graded commutative", wedge_graded_commutative),
    ("interior product is an odd derivation", iota_derivation),
    ("interior product of a wedge composes", iota_composition),
    ("pairing of decomposables is a determinant", pairing_determinant),
];

// -------------------------------------------------------------------- brackets

fn vector(g: &mut Gen, c: &Arc<Chart>) -> MultiVector {
    g.multi(c, 1, 2, 0.7)
}

fn apply(x: &MultiVector, f: &Scalar) -> Scalar {
    contract(&df(x.chart(), f), x).unwrap()
}

pub fn leibniz_n(seed: u64) -> Result<(), String> {
    let c = chart(3);
    let mut g = Gen::new(seed);
    let n = g.endo(&c, 1, 0.5);
    let (x, y) = (vector(&mut g, &c), vector(&mut g, &c));
    let f = scalar(&mut g, &c);
    let lhs = bracket_n(&n, &x, &y.mul_scalar(&f)).unwrap();
    let nx = n.apply(&x).unwrap();
    let rhs = bracket_n(&n, &x, &y).unwrap().mul_scalar(&f).add(&y.mul_scalar(&apply(&nx, &f))).unwrap();
    eq("Leibniz for [.,.]_N", lhs, rhs)
}

pub fn leibniz_pi(seed: u64) -> Result<(), String> {
    let c = chart(3);
    let mut g = Gen::new(seed);
    let pi: MultiVector = g.multi(&c, 2, 2, 0.7);
    let (a, b): (Form, Form) = (g.multi(&c, 1, 2, 0.7), g.multi(&c, 1, 2, 0.7));
    let f = scalar(&mut g, &c);
    let lhs = bracket_pi(&pi, &a, &b.mul_scalar(&f)).unwrap();
    let anchor = sharp(&pi, &a).unwrap();
    let rhs = bracket_pi(&pi, &a, &b).unwrap().mul_scalar(&f).add(&b.mul_scalar(&apply(&anchor, &f))).unwrap();
    eq("Leibniz for [.,.]_pi", lhs, rhs)
}

/// `[P, Q∧R] = [P,Q]∧R + (-1)^{(p+1)q} Q∧[P,R]`.
pub fn schouten_biderivation(seed: u64) -> Result<(), String> {
    let c = chart(3);
    let mut g = Gen::new(seed);
    let (p, q, r) = (g.below(3), g.below(2), g.below(2));
    let a: MultiVector = g.multi(&c, p, 2, 0.6);
    let b: MultiVector = g.multi(&c, q, 2, 0.6);
    let cc: MultiVector = g.multi(&c, r, 2, 0.6);
    // a bracket of two functions would have grade -1
    if p + q == 0 || p + r == 0 || q + r > 3 {
        return Ok(());
    }
    let lhs = schouten_nijenhuis(&a, &b.wedge(&cc).unwrap()).unwrap();
    let first = schouten_nijenhuis(&a, &b).unwrap().wedge(&cc).unwrap();
    let second = b.wedge(&schouten_nijenhuis(&a, &cc).unwrap()).unwrap().mul_scalar(&sign((p + 1) * q % 2 == 1));
    let rhs = first.add(&second).map_err(|e| e.to_string())?;
    eq("Schouten biderivation", lhs, rhs)
}

/// `[A,[B,C]] = [[A,B],C] + (-1)^{(a-1)(b-1)}[B,[A,C]]`.
pub fn schouten_jacobi(seed: u64) -> Result<(), String> {
    let c = chart(3);
    let mut g = Gen::new(seed);
    let (p, q, r) = (1 + g.below(2), 1 + g.below(2), 1 + g.below(2));
    let a: MultiVector = g.multi(&c, p, 2, 0.5);
    let b: MultiVector = g.multi(&c, q, 2, 0.5);
    let cc: MultiVector = g.multi(&c, r, 1, 0.5);
    let br = schouten_nijenhuis;
    let lhs = br(&a, &br(&b, &cc).unwrap()).unwrap();
    let rhs = br(&br(&a, &b).unwrap(), &cc)
        .unwrap()
        .add(&br(&b, &br(&a, &cc).unwrap()).unwrap().mul_scalar(&sign((p + 1) * (q + 1) % 2 == 1)))
        .unwrap();
    eq("graded Jacobi", lhs, rhs)
}

/// `[A,B] = -(-1)^{(a-1)(b-1)}[B,A]`.
pub fn schouten_symmetry(seed: u64) -> Result<(), String> {
    let c = chart(3);
    let mut g = Gen::new(seed);
    let (p, q) = (g.below(4), g.below(4));
    if p + q == 0 || p + q > 4 {
        return Ok(());
    }
    let a: MultiVector = g.multi(&c, p, 2, 0.6);
    let b: MultiVector = g.multi(&c, q, 2, 0.6);
    let rhs = schouten_nijenhuis(&b, &a).unwrap().mul_scalar(&sign((p + 1) * (q + 1) % 2 == 0));
    eq("graded symmetry", schouten_nijenhuis(&a, &b).unwrap(), rhs)
}

pub const BRACKET_LAWS: [(&str, Law); 5] = [
    ("Leibniz for the deformed vector field bracket", leibniz_n),
    ("Leibniz for the bracket of 1-forms", leibniz_pi),
    ("Schouten bracket is a biderivation", schouten_biderivation),
    ("Schouten bracket is graded skew", schouten_symmetry),
    ("graded Jacobi for the Schouten bracket", schouten_jacobi),
];

// ----------------------------------------------------------------- differentials

pub fn d_squared(seed: u64) -> Result<(), String> {
    let c = chart(4);
    let mut g = Gen::new(seed);
    let k = g.below(3);
    let mut z: Form = g.multi(&c, k, 2, 0.6);
    if g.chance(0.5) {
        z = z.mul_scalar(&scalar(&mut g, &c));
    }
    let dd = d(&d(&z));
    if dd.is_zero() {
        Ok(())
    } else {
        Err(format!("d^2 of {z} is {dd}"))
    }
}

/// Random Nijenhuis endomorphism: constant, or diagonal with each entry a
/// function of its own coordinate.
pub fn nijenhuis_endo(g: &mut Gen, c: &Arc<Chart>) -> Endo {
    let n = c.dim();
    if g.chance(0.5) {
        let rows = (0..n).map(|_| (0..n).map(|_| Scalar::from_rational(g.rational())).collect()).collect();
        return Endo::from_rows(c, rows).unwrap();
    }
    let one = Chart::new(["t"]).unwrap();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i != j {
                        return Scalar::zero();
                    }
                    let p = g.polynomial(&one, 2, 2);
                    // substitute t -> x_i
                    let src = p.to_string_in(&one).replace('t', c.coord_name(i));
                    pnkit::expr::parse_scalar(&src, c).unwrap()
                })
                .collect()
        })
        .collect();
    Endo::from_rows(c, rows).unwrap()
}

pub fn d_n_squared(seed: u64) -> Result<(), String> {
    let c = chart(3);
    let mut g = Gen::new(seed);
    let n = nijenhuis_endo(&mut g, &c);
    if !is_nijenhuis(&n).unwrap().passed() {
        return Err(format!("generated endomorphism is not Nijenhuis: {:?}", n.matrix()));
    }
    let k = g.below(3);
    let z: Form = g.multi(&c, k, 2, 0.6);
    let dd = d_n(&n, &d_n(&n, &z).unwrap()).unwrap();
    if dd.is_zero() {
        Ok(())
    } else {
        Err(format!("d_N^2 of {z} is {dd}"))
    }
}

/// `A(f,g) = <(N pi# - pi# N*) df, dg>`.
pub fn defect_on_functions(seed: u64) -> Result<(), String> {
    let c = chart(3);
    let mut g = Gen::new(seed);
    let pi: MultiVector = g.multi(&c, 2, 2, 0.7);
    let n = g.endo(&c, 1, 0.5);
    let (f, h) = (scalar(&mut g, &c), scalar(&mut g, &c));
    let a = derivation_defect(&pi, &n, &MultiVector::scalar(&c, f.clone()), &MultiVector::scalar(&c, h.clone()))
        .unwrap()
        .as_scalar()
        .unwrap();
    let p = sharp_matrix(&pi).unwrap();
    let m = n.matrix().mul(&p).sub(&p.mul(&n.matrix().transpose()));
    let v = MultiVector::from_vec(&c, m.mul_vec(&df(&c, &f).to_vec()));
    eq("defect on functions", a, contract(&df(&c, &h), &v).unwrap())
}

pub const DIFFERENTIAL_LAWS: [(&str, Law); 3] = [
    ("d squares to zero", d_squared),
    ("d_N squares to zero for Nijenhuis N", d_n_squared),
    ("derivation defect on functions", defect_on_functions),
];

pub fn all_laws() -> Vec<(&'static str, Law)> {
    [&EXPR_LAWS[..], &EXTERIOR_LAWS[..], &BRACKET_LAWS[..], &DIFFERENTIAL_LAWS[..]].concat()
}

// --------------------------------------------------------------------- fixtures

/// Odd-variable formula for the classical bracket, written independently of
/// the library:
/// `[P,Q] = Σ_i (P ∂←/∂θ_i)(∂Q/∂x_i) - (-1)^{(p-1)(q-1)} (Q ∂←/∂θ_i)(∂P/∂x_i)`.
pub fn odd_variable_schouten(p: &MultiVector, q: &MultiVector) -> MultiVector {
    fn right_derivative(t: &MultiVector, i: usize) -> MultiVector {
        let k = t.grade();
        let mut out = MultiVector::zero(t.chart(), k - 1);
        for (b, c) in t.iter() {
            if b.contains(i) {
                let pos = b.position(i);
                let rest = Blade::from_mask(b.mask() & !(1 << i));
                let v = if (k - 1 - pos) % 2 == 0 { c.clone() } else { -c };
                out = out.add(&MultiVector::blade(t.chart(), rest, v)).unwrap();
            }
        }
        out
    }
    let (pg, qg) = (p.grade(), q.grade());
    let mut out = MultiVector::zero(p.chart(), (pg + qg).saturating_sub(1));
    if pg + qg == 0 {
        return out;
    }
    let swap = ((pg + 1) * (qg + 1)) % 2 == 1;
    for i in 0..p.dim() {
        if pg > 0 {
            out = out.add(&right_derivative(p, i).wedge(&q.partial(i)).unwrap()).unwrap();
        }
        if qg > 0 {
            let t = right_derivative(q, i).wedge(&p.partial(i)).unwrap();
            out = if swap { out.add(&t).unwrap() } else { out.sub(&t).unwrap() };
        }
    }
    out
}

/// Seeded pair of homogeneous multivectors for the bracket comparison.
pub fn schouten_pair(seed: u64) -> (MultiVector, MultiVector) {
    let c = Chart::new(["x", "y", "z"]).unwrap();
    let mut g = Gen::new(seed);
    loop {
        let (p, q) = (g.below(4), g.below(4));
        if p + q == 0 || p + q > 4 {
            continue;
        }
        return (g.multi(&c, p, 2, 0.6), g.multi(&c, q, 2, 0.6));
    }
}

pub fn recursive_and_direct(p: &MultiVector, q: &MultiVector) -> (MultiVector, MultiVector) {
    let t = TangentAlgebroid::standard(p.chart());
    (schouten_in(&t, p, q).unwrap(), schouten_direct(&t, p, q).unwrap())
}

/// Seeded polynomial bivectors on ℝ³, each paired with
/// `N = a·id` and `Φ = [π,π]/(2a)` for `a ∈ {1, 2}`.
pub fn scalar_family() -> Vec<(String, MultiVector, Endo, MultiVector)> {
    let c = Chart::new(["x", "y", "z"]).unwrap();
    let mut out = Vec::new();
    for seed in 0..5u64 {
        let mut g = Gen::new(1000 + seed);
        let pi: MultiVector = g.multi(&c, 2, 2, 0.8);
        for a in [1i64, 2] {
            let data = pnkit::structures::scalar_triple(&pi, Rational::from_integer(a.into())).unwrap();
            out.push((format!("seed {seed}, a = {a}"), pi.clone(), data.endo().unwrap().clone(), data.big_phi().unwrap()));
        }
    }
    out
}

pub fn so3() -> MultiVector {
    let c = Chart::new(["x", "y", "z"]).unwrap();
    let s = |i: usize| Scalar::coord(i);
    MultiVector::from_components(&c, 2, [(vec![0, 1], s(2)), (vec![1, 2], s(0)), (vec![0, 2], -s(1))]).unwrap()
}
