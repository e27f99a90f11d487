//! Seeded generators for randomized checks. ChaCha keeps streams identical
//! across platforms for a given seed.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::{Monomial, Poly};
use crate::tensor::{blades, Kind, Multi};
use crate::{Atom, Chart, Endo, Rational, Scalar};

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    /// Small nonzero rational.
    pub fn rational(&mut self) -> Rational {
        let num: i64 = loop {
            let v = self.rng.gen_range(-4..=4);
            if v != 0 {
                break v;
            }
        };
        let den: i64 = self.rng.gen_range(1..=3);
        Rational::new(num.into(), den.into())
    }

    /// Polynomial of total degree at most `max_degree` with up to
    /// `max_terms` terms.
    pub fn polynomial(&mut self, chart: &Chart, max_degree: u32, max_terms: usize) -> Scalar {
        let n = chart.dim();
        let terms = self.rng.gen_range(1..=max_terms.max(1));
        let mut out = Vec::with_capacity(terms);
        for _ in 0..terms {
            let deg = self.rng.gen_range(0..=max_degree);
            let mut m = Monomial::one();
            for _ in 0..deg {
                m = m.mul(&Monomial::atom(Atom::Coord(self.rng.gen_range(0..n)), 1));
            }
            out.push((m, self.rational()));
        }
        Scalar::from_poly(Poly::from_terms(out))
    }

    /// Polynomial that is nonzero.
    pub fn nonzero_polynomial(&mut self, chart: &Chart, max_degree: u32, max_terms: usize) -> Scalar {
        loop {
            let p = self.polynomial(chart, max_degree, max_terms);
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// Homogeneous element with polynomial coefficients. Each blade is kept
    /// with probability `density`.
    pub fn multi<K: Kind>(&mut self, chart: &Arc<Chart>, grade: usize, max_degree: u32, density: f64) -> Multi<K> {
        let mut comps = Vec::new();
        for b in blades(chart.dim(), grade) {
            if self.rng.gen_bool(density) {
                comps.push((b.to_vec(), self.polynomial(chart, max_degree, 2)));
            }
        }
        Multi::from_components(chart, grade, comps).expect("valid blades")
    }

    pub fn endo(&mut self, chart: &Arc<Chart>, max_degree: u32, density: f64) -> Endo {
        let n = chart.dim();
        let rows = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| if self.rng.gen_bool(density) { self.polynomial(chart, max_degree, 2) } else { Scalar::zero() })
                    .collect()
            })
            .collect();
        Endo::from_rows(chart, rows).expect("square")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let c = Chart::new(["x", "y", "z"]).unwrap();
        let a: Vec<Scalar> = {
            let mut g = Gen::new(7);
            (0..5).map(|_| g.polynomial(&c, 2, 3)).collect()
        };
        let b: Vec<Scalar> = {
            let mut g = Gen::new(7);
            (0..5).map(|_| g.polynomial(&c, 2, 3)).collect()
        };
        assert_eq!(a, b);
    }
}
