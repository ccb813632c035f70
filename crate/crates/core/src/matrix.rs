//! Square max-plus matrices, functions on a finite state set, and the
//! labeled one-step kernel.

use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::value::{oplus, otimes, MaxPlusValue, NegInf};

/// Dense square matrix over the max-plus semiring, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    data: Vec<MaxPlusValue>,
}

impl Matrix {
    pub fn filled(n: usize, value: MaxPlusValue) -> Self {
        Matrix { n, data: vec![value; n * n] }
    }

    /// Max-plus identity: 0 on the diagonal, -∞ elsewhere.
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::filled(n, NegInf);
        for i in 0..n {
            m[(i, i)] = MaxPlusValue::ZERO;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<MaxPlusValue>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { n, data })
    }

    /// Convenience for tests and examples: `f64::NEG_INFINITY` maps to -∞.
    pub fn from_f64_rows(rows: &[&[f64]]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| MaxPlusValue::new(v)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> impl Iterator<Item = &[MaxPlusValue]> {
        self.data.chunks(self.n.max(1))
    }

    pub fn to_rows(&self) -> Vec<Vec<MaxPlusValue>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<MaxPlusValue> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &MaxPlusValue> {
        self.data.iter()
    }

    pub fn map(&self, f: impl Fn(MaxPlusValue) -> MaxPlusValue) -> Matrix {
        Matrix { n: self.n, data: self.data.iter().map(|&v| f(v)).collect() }
    }

    /// Max-plus product `(AB)<x,y> = max_z A<x,z> + B<z,y>`.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_dim(other.n)?;
        let n = self.n;
        let mut out = Matrix::filled(n, NegInf);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.is_neg_inf() {
                    continue;
                }
                for j in 0..n {
                    let cur = out[(i, j)];
                    out[(i, j)] = oplus(cur, otimes(a, other[(k, j)]));
                }
            }
        }
        Ok(out)
    }

    /// Entrywise maximum.
    pub fn oplus(&self, other: &Matrix) -> Result<Matrix> {
        self.check_dim(other.n)?;
        Ok(Matrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| oplus(a, b)).collect(),
        })
    }

    /// `A^t` by repeated squaring; `A^0` is the identity.
    pub fn power(&self, mut t: u64) -> Matrix {
        let mut result = Matrix::identity(self.n);
        let mut base = self.clone();
        while t > 0 {
            if t & 1 == 1 {
                result = result.mul(&base).expect("same dimension");
            }
            t >>= 1;
            if t > 0 {
                base = base.mul(&base).expect("same dimension");
            }
        }
        result
    }

    /// Kernel action `(A g)(x) = max_y A<x,y> + g(y)`.
    pub fn apply(&self, g: &MaxPlusFunction) -> Result<MaxPlusFunction> {
        self.check_dim(g.len())?;
        Ok(MaxPlusFunction(
            self.rows()
                .map(|row| {
                    row.iter()
                        .zip(g.iter())
                        .fold(NegInf, |acc, (&a, &gy)| oplus(acc, otimes(a, gy)))
                })
                .collect(),
        ))
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = MaxPlusValue;

    fn index(&self, (i, j): (usize, usize)) -> &MaxPlusValue {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut MaxPlusValue {
        &mut self.data[i * self.n + j]
    }
}

/// A map from states (by index) to `R ∪ {-∞}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MaxPlusFunction(pub Vec<MaxPlusValue>);

impl MaxPlusFunction {
    pub fn constant(n: usize, value: MaxPlusValue) -> Self {
        MaxPlusFunction(vec![value; n])
    }

    pub fn from_f64(values: &[f64]) -> Self {
        MaxPlusFunction(values.iter().map(|&v| MaxPlusValue::new(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, MaxPlusValue> {
        self.0.iter()
    }

    /// `c ⊗ self`, i.e. the constant added pointwise.
    pub fn shift(&self, c: MaxPlusValue) -> Self {
        MaxPlusFunction(self.0.iter().map(|&v| otimes(c, v)).collect())
    }

    /// Pointwise maximum.
    pub fn oplus(&self, other: &Self) -> Self {
        MaxPlusFunction(self.0.iter().zip(&other.0).map(|(&a, &b)| oplus(a, b)).collect())
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a.approx_eq(*b))
    }

    pub fn approx_le(&self, other: &Self) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a.approx_le(*b))
    }

    pub fn has_pos_inf(&self) -> bool {
        self.0.iter().any(|v| matches!(v, MaxPlusValue::PosInf))
    }
}

impl Index<usize> for MaxPlusFunction {
    type Output = MaxPlusValue;

    fn index(&self, i: usize) -> &MaxPlusValue {
        &self.0[i]
    }
}

impl FromIterator<MaxPlusValue> for MaxPlusFunction {
    fn from_iter<I: IntoIterator<Item = MaxPlusValue>>(iter: I) -> Self {
        MaxPlusFunction(iter.into_iter().collect())
    }
}

/// One-step kernel `A<x,y>` over a labeled state set with a basepoint.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelMatrix {
    states: Vec<String>,
    matrix: Matrix,
    basepoint: usize,
}

impl KernelMatrix {
    pub fn new(states: Vec<String>, matrix: Matrix, basepoint: usize) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::InvalidArgument("kernel needs at least one state".into()));
        }
        if matrix.dim() != states.len() {
            return Err(Error::DimensionMismatch { expected: states.len(), found: matrix.dim() });
        }
        if basepoint >= states.len() {
            return Err(Error::InvalidArgument(format!(
                "basepoint index {basepoint} out of range for {} states",
                states.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for s in &states {
            if !seen.insert(s.as_str()) {
                return Err(Error::InvalidArgument(format!("duplicate state label {s:?}")));
            }
        }
        Ok(KernelMatrix { states, matrix, basepoint })
    }

    /// States labeled `0..n`, basepoint 0.
    pub fn unlabeled(matrix: Matrix) -> Result<Self> {
        let states = (0..matrix.dim()).map(|i| i.to_string()).collect();
        KernelMatrix::new(states, matrix, 0)
    }

    pub fn from_f64_rows(rows: &[&[f64]]) -> Result<Self> {
        KernelMatrix::unlabeled(Matrix::from_f64_rows(rows)?)
    }

    pub fn with_matrix(&self, matrix: Matrix) -> Result<Self> {
        KernelMatrix::new(self.states.clone(), matrix, self.basepoint)
    }

    pub fn with_basepoint(&self, basepoint: usize) -> Result<Self> {
        KernelMatrix::new(self.states.clone(), self.matrix.clone(), basepoint)
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn state_index(&self, label: &str) -> Option<usize> {
        self.states.iter().position(|s| s == label)
    }

    pub fn get(&self, x: usize, y: usize) -> MaxPlusValue {
        self.matrix[(x, y)]
    }

    pub fn power(&self, t: u64) -> Matrix {
        self.matrix.power(t)
    }

    pub fn apply(&self, g: &MaxPlusFunction) -> Result<MaxPlusFunction> {
        self.matrix.apply(g)
    }
}

/// `(A g)(x) = max_y A<x,y> + g(y)`.
pub fn apply(a: &KernelMatrix, g: &MaxPlusFunction) -> Result<MaxPlusFunction> {
    a.apply(g)
}
