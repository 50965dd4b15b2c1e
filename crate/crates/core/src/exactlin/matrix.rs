use std::fmt;

use num_traits::{One, Zero};

use super::scalar::Rational;
use super::subspace::{dense_from_sparse, sparse_from_dense, Subspace};
use crate::error::{Error, Result};

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let n = rows.len();
        Ok(ExactMatrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::Dimension("column length mismatch".into()));
        }
        Ok(Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone()))
    }

    pub fn column_vector(v: Vec<Rational>) -> Self {
        ExactMatrix {
            rows: v.len(),
            cols: 1,
            data: v,
        }
    }

    pub fn scalar(x: Rational) -> Self {
        Self::column_vector(vec![x])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Entries read column by column.
    pub fn flatten_columns(&self) -> Vec<Rational> {
        (0..self.cols).flat_map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// `self · rhs`, skipping zero entries of `self`.
    pub fn mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        Ok(self.mul(&Self::column_vector(v.to_vec()))?.data)
    }

    pub fn add(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        self.same_shape(rhs)?;
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        self.same_shape(rhs)?;
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }

    fn same_shape(&self, rhs: &ExactMatrix) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    pub fn scale(&self, c: &Rational) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|a| if a.is_zero() { a.clone() } else { a * c })
                .collect(),
        }
    }

    /// Kronecker product; the left factor indexes the most significant digit.
    pub fn kron(&self, rhs: &ExactMatrix) -> ExactMatrix {
        let mut out = Self::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = rhs.get(k, l);
                        if !b.is_zero() {
                            out.set(i * rhs.rows + k, j * rhs.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn row_space(&self) -> Subspace {
        let mut s = Subspace::new(self.cols);
        for i in 0..self.rows {
            s.insert_dense(self.row(i));
        }
        s
    }

    pub fn rank(&self) -> usize {
        if self.rows <= self.cols {
            self.row_space().dim()
        } else {
            self.transpose().row_space().dim()
        }
    }

    /// Basis of `{x : self·x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        self.row_space()
            .orthogonal_kernel()
            .iter()
            .map(|v| dense_from_sparse(v, self.cols))
            .collect()
    }

    /// Column space as a subspace of `Q^rows`.
    pub fn column_space(&self) -> Subspace {
        self.transpose().row_space()
    }

    /// Some `x` with `self·x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side has length {}, expected {}",
                b.len(),
                self.rows
            )));
        }
        let mut s = Subspace::new(self.cols + 1);
        for i in 0..self.rows {
            let mut row = self.row(i).to_vec();
            row.push(b[i].clone());
            s.insert(sparse_from_dense(&row));
        }
        let mut x = vec![Rational::zero(); self.cols];
        for row in s.basis() {
            let pivot = row[0].0;
            if pivot == self.cols {
                return Ok(None);
            }
            if let Some((_, v)) = row.iter().find(|(i, _)| *i == self.cols) {
                x[pivot] = v.clone();
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Option<ExactMatrix>> {
        if self.rows != self.cols {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[j] = Rational::one();
            match self.solve(&e)? {
                Some(x) => cols.push(x),
                None => return Ok(None),
            }
        }
        Ok(Some(Self::from_columns(n, &cols)?))
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::scalar::{int, rat};

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn rank_by_hand() {
        // third row = first + second
        let a = m(&[&[1, 0, 0, 1], &[0, 1, 1, 0], &[1, 1, 1, 1]]);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.nullspace().len(), 2);
        for x in a.nullspace() {
            assert!(a.mul_vec(&x).unwrap().iter().all(|v| v.is_zero()));
        }
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let x = a.solve(&[int(3), int(2)]).unwrap().unwrap();
        assert_eq!(x, vec![int(1), int(1)]);
        let inv = a.inverse().unwrap().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), ExactMatrix::identity(2));
        let singular = m(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().unwrap().is_none());
        assert!(singular.solve(&[int(1), int(0)]).unwrap().is_none());
    }

    #[test]
    fn fractions_survive() {
        let a = m(&[&[3]]);
        assert_eq!(a.inverse().unwrap().unwrap().get(0, 0), &rat(1, 3));
    }

    #[test]
    fn kron_order() {
        let a = m(&[&[1, 2]]);
        let b = m(&[&[1], &[10]]);
        assert_eq!(a.kron(&b), m(&[&[1, 2], &[10, 20]]));
    }
}
