//! Multivariate gcd over the rationals by recursive primitive remainder
//! sequences. Results are monic.

use super::poly::Poly;

pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() || a == b {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let (ma, mb) = (a.monomial_content(), b.monomial_content());
    let mg = ma.gcd(&mb);
    let g = gcd_free(&a.div_monomial(&ma), &b.div_monomial(&mb));
    g.mul_term(&mg, &num_traits::One::one()).monic()
}

// Both arguments have trivial monomial content.
fn gcd_free(a: &Poly, b: &Poly) -> Poly {
    if a.len() == 1 || b.len() == 1 {
        return Poly::one();
    }
    if a.len() < b.len() && b.div_exact(a).is_some() {
        return a.monic();
    }
    if b.len() <= a.len() && a.div_exact(b).is_some() {
        return b.monic();
    }
    let (sa, sb) = (a.atoms(), b.atoms());
    // an atom missing from one side only contributes through the content,
    // so fold the other side against the coefficients and stop at 1
    if let Some(v) = sa.iter().find(|v| !sb.contains(v)) {
        return content_with(b.clone(), &a.to_univariate(v));
    }
    if let Some(v) = sb.iter().find(|v| !sa.contains(v)) {
        return content_with(a.clone(), &b.to_univariate(v));
    }
    let v = sa
        .iter()
        .min_by_key(|v| a.to_univariate(v).len().max(b.to_univariate(v).len()))
        .expect("non-constant")
        .clone();
    let (ua, ub) = (a.to_univariate(&v), b.to_univariate(&v));
    let (ca, cb) = (content(&ua), content(&ub));
    let pa: Vec<Poly> = ua.iter().map(|c| exact(c, &ca)).collect();
    let pb: Vec<Poly> = ub.iter().map(|c| exact(c, &cb)).collect();
    let gc = gcd(&ca, &cb);
    let gp = primitive_prs(pa, pb);
    Poly::from_univariate(&v, &gp).mul(&gc).monic()
}

fn exact(a: &Poly, b: &Poly) -> Poly {
    a.div_exact(b).expect("content divides coefficients")
}

fn content(coeffs: &[Poly]) -> Poly {
    content_with(Poly::zero(), coeffs)
}

// gcd of `start` and all of `coeffs`, smallest coefficients first.
fn content_with(start: Poly, coeffs: &[Poly]) -> Poly {
    let mut cs: Vec<&Poly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    cs.sort_by_key(|c| c.len());
    let mut g = start;
    for c in cs {
        if g.is_one() {
            break;
        }
        g = gcd(&g, c);
    }
    g.monic()
}

fn degree(p: &[Poly]) -> usize {
    p.len().saturating_sub(1)
}

fn trim(p: &mut Vec<Poly>) {
    while p.last().is_some_and(Poly::is_zero) {
        p.pop();
    }
}

fn primitive_prs(a: Vec<Poly>, b: Vec<Poly>) -> Vec<Poly> {
    let (mut r0, mut r1) = if degree(&a) >= degree(&b) { (a, b) } else { (b, a) };
    loop {
        let mut r = prem(&r0, &r1);
        if r.is_empty() {
            return r1;
        }
        if r.len() == 1 {
            return vec![Poly::one()];
        }
        let c = content(&r);
        for t in r.iter_mut() {
            *t = exact(t, &c);
        }
        r0 = r1;
        r1 = r;
    }
}

// Pseudo-remainder of univariate polynomials with polynomial coefficients.
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let lb = b.last().expect("nonzero divisor");
    let mut r = a.to_vec();
    trim(&mut r);
    while !r.is_empty() && r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        for t in r.iter_mut() {
            *t = t.mul(lb);
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].sub(&bc.mul(&lr));
        }
        trim(&mut r);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::poly::Atom;
    use crate::expr::Rational;

    fn x(i: usize) -> Poly {
        Poly::atom(Atom::Coord(i))
    }

    fn c(n: i64) -> Poly {
        Poly::constant(Rational::from_integer(n.into()))
    }

    #[test]
    fn simple_gcds() {
        let a = x(0).add(&x(1));
        let b = x(0).sub(&x(1));
        let p = a.mul(&b).mul(&x(2));
        let q = a.pow(2).mul(&x(2).pow(3));
        assert_eq!(gcd(&p, &q), a.mul(&x(2)).monic());
        assert_eq!(gcd(&a, &b), Poly::one());
        assert_eq!(gcd(&a.scale(&Rational::from_integer(6.into())), &a), a.monic());
    }

    #[test]
    fn shared_factor_in_several_variables() {
        let f = x(0).mul(&x(1)).add(&x(2).pow(2)).add(&c(1));
        let g1 = x(0).pow(2).sub(&x(2));
        let g2 = x(1).add(&x(0).mul(&x(2))).add(&c(3));
        let got = gcd(&f.mul(&g1), &f.mul(&g2));
        assert_eq!(got, f.monic());
    }

    #[test]
    fn denominator_in_one_atom_against_wide_numerator() {
        let f = Poly::atom(Atom::apply("g", 0, crate::expr::Scalar::coord(0)));
        let df = Poly::atom(Atom::apply("g", 1, crate::expr::Scalar::coord(0)));
        let lin = x(0).sub(&c(4).scale(&Rational::new(1.into(), 3.into())));
        let wide = x(0).pow(2).mul(&x(2)).mul(&f).add(&x(1).mul(&x(2)).mul(&df)).add(&x(2).pow(3)).add(&c(2));
        assert_eq!(gcd(&wide.mul(&lin), &lin.pow(3)), lin.monic());
        assert_eq!(gcd(&wide, &lin.pow(2)), Poly::one());
    }
}
