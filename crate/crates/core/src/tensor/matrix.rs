use std::fmt;

use crate::{Chart, Error, Result, Scalar};

/// Dense square matrix of scalars.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix {
    n: usize,
    rows: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Matrix { n, rows: vec![vec![Scalar::zero(); n]; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.rows[i][i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::Degree { expected: n, found: r.len() });
        }
        Ok(Matrix { n, rows })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        Matrix { n, rows: (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        self.rows[i][j] = s;
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.rows[j][i].clone())
    }

    pub fn add(&self, o: &Matrix) -> Self {
        Self::from_fn(self.n, |i, j| &self.rows[i][j] + &o.rows[i][j])
    }

    pub fn sub(&self, o: &Matrix) -> Self {
        Self::from_fn(self.n, |i, j| &self.rows[i][j] - &o.rows[i][j])
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::from_fn(self.n, |i, j| &self.rows[i][j] * s)
    }

    pub fn mul(&self, o: &Matrix) -> Self {
        Self::from_fn(self.n, |i, j| {
            (0..self.n)
                .filter(|&k| !self.rows[i][k].is_zero() && !o.rows[k][j].is_zero())
                .map(|k| &self.rows[i][k] * &o.rows[k][j])
                .sum()
        })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        (0..self.n)
            .map(|i| (0..self.n).filter(|&k| !v[k].is_zero()).map(|k| &self.rows[i][k] * &v[k]).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Scalar::is_zero)
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|i| (i..self.n).all(|j| (&self.rows[i][j] + &self.rows[j][i]).is_zero()))
    }

    pub fn is_constant(&self) -> bool {
        self.rows.iter().flatten().all(|s| s.as_constant().is_some())
    }

    pub fn pow(&self, p: u32) -> Self {
        let mut out = Self::identity(self.n);
        for _ in 0..p {
            out = out.mul(self);
        }
        out
    }

    /// Gaussian elimination over the field of rational functions.
    fn eliminate(&self, augment: bool) -> (Scalar, Option<Matrix>) {
        let n = self.n;
        let mut a = self.rows.clone();
        let mut inv = Self::identity(n).rows;
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return (Scalar::zero(), None);
            };
            if p != col {
                a.swap(p, col);
                inv.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            det = &det * &pivot;
            let pinv = pivot.inv().expect("pivot is nonzero");
            for j in 0..n {
                a[col][j] = &a[col][j] * &pinv;
                if augment {
                    inv[col][j] = &inv[col][j] * &pinv;
                }
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    if !a[col][j].is_zero() {
                        a[r][j] = &a[r][j] - &(&f * &a[col][j]);
                    }
                    if augment && !inv[col][j].is_zero() {
                        inv[r][j] = &inv[r][j] - &(&f * &inv[col][j]);
                    }
                }
            }
        }
        (det, augment.then_some(Matrix { n, rows: inv }))
    }

    pub fn det(&self) -> Scalar {
        self.eliminate(false).0
    }

    pub fn inverse(&self) -> Result<Matrix> {
        self.eliminate(true).1.ok_or(Error::Singular)
    }

    pub fn display<'a>(&'a self, chart: &'a Chart) -> MatrixDisplay<'a> {
        MatrixDisplay { m: self, chart }
    }
}

pub struct MatrixDisplay<'a> {
    m: &'a Matrix,
    chart: &'a Chart,
}

impl fmt::Display for MatrixDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.m.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|s| s.to_string_in(self.chart)).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Determinant by cofactor expansion; an oracle for the elimination path.
#[cfg(test)]
pub(crate) fn small_det(m: &[Vec<Scalar>]) -> Scalar {
    match m.len() {
        0 => Scalar::one(),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        n => {
            let mut acc = Scalar::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Scalar>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, s)| s.clone()).collect()).collect();
                let t = &m[0][j] * &small_det(&minor);
                acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            acc
        }
    }
}
