use std::sync::Arc;

use super::multi::{check_chart, exterior_map};
use super::{Form, Matrix, MultiVector};
use crate::{Chart, Error, Rational, Result, Scalar};

/// (1,1)-tensor field. Entry `(i, j)` is the `∂_i` coefficient of `N ∂_j`;
/// the transpose `N*` acts on covectors.
#[derive(Clone, PartialEq, Debug)]
pub struct Endo {
    chart: Arc<Chart>,
    matrix: Matrix,
}

impl Endo {
    pub fn new(chart: &Arc<Chart>, matrix: Matrix) -> Result<Self> {
        if matrix.n() != chart.dim() {
            return Err(Error::Degree { expected: chart.dim(), found: matrix.n() });
        }
        Ok(Endo { chart: chart.clone(), matrix })
    }

    pub fn from_rows(chart: &Arc<Chart>, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        Self::new(chart, Matrix::from_rows(rows)?)
    }

    pub fn identity(chart: &Arc<Chart>) -> Self {
        Endo { chart: chart.clone(), matrix: Matrix::identity(chart.dim()) }
    }

    pub fn scaled_identity(chart: &Arc<Chart>, c: Rational) -> Self {
        Endo { chart: chart.clone(), matrix: Matrix::identity(chart.dim()).scale(&Scalar::from_rational(c)) }
    }

    pub fn zero(chart: &Arc<Chart>) -> Self {
        Endo { chart: chart.clone(), matrix: Matrix::zero(chart.dim()) }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        self.matrix.get(i, j)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == Matrix::identity(self.chart.dim())
    }

    /// `N ∂_j`.
    pub fn column(&self, j: usize) -> MultiVector {
        MultiVector::from_vec(&self.chart, (0..self.chart.dim()).map(|i| self.matrix.get(i, j).clone()).collect())
    }

    /// `N* dx_i`.
    pub fn star_row(&self, i: usize) -> Form {
        Form::from_vec(&self.chart, self.matrix.rows()[i].clone())
    }

    pub fn apply(&self, x: &MultiVector) -> Result<MultiVector> {
        check_chart(&self.chart, x.chart())?;
        if x.grade() != 1 {
            return Err(Error::Degree { expected: 1, found: x.grade() });
        }
        Ok(MultiVector::from_vec(&self.chart, self.matrix.mul_vec(&x.to_vec())))
    }

    pub fn star_apply(&self, a: &Form) -> Result<Form> {
        check_chart(&self.chart, a.chart())?;
        if a.grade() != 1 {
            return Err(Error::Degree { expected: 1, found: a.grade() });
        }
        Ok(Form::from_vec(&self.chart, self.matrix.transpose().mul_vec(&a.to_vec())))
    }

    /// `Λ^k N` on a multivector of any grade.
    pub fn apply_multi(&self, x: &MultiVector) -> Result<MultiVector> {
        check_chart(&self.chart, x.chart())?;
        exterior_map(x, &self.chart, &|j| self.column(j))
    }

    /// `Λ^k N*` on a form of any grade.
    pub fn star_apply_multi(&self, a: &Form) -> Result<Form> {
        check_chart(&self.chart, a.chart())?;
        exterior_map(a, &self.chart, &|i| self.star_row(i))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Endo) -> Result<Endo> {
        check_chart(&self.chart, other.chart())?;
        Ok(Endo { chart: self.chart.clone(), matrix: self.matrix.mul(&other.matrix) })
    }

    pub fn pow(&self, p: u32) -> Endo {
        Endo { chart: self.chart.clone(), matrix: self.matrix.pow(p) }
    }

    pub fn sub(&self, other: &Endo) -> Result<Endo> {
        check_chart(&self.chart, other.chart())?;
        Ok(Endo { chart: self.chart.clone(), matrix: self.matrix.sub(&other.matrix) })
    }

    pub fn remap(&self, chart: &Arc<Chart>, f: &dyn Fn(usize) -> usize) -> Endo {
        let n = self.chart.dim();
        let mut m = Matrix::zero(chart.dim());
        for i in 0..n {
            for j in 0..n {
                m.set(f(i), f(j), self.matrix.get(i, j).remap_coords(f));
            }
        }
        Endo { chart: chart.clone(), matrix: m }
    }
}
