//! Small dense matrices with fraction-free determinants.

use std::ops::Div;

use super::TridiagError;
use crate::exactmath::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, TridiagError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(TridiagError::Shape("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    /// Rows and columns kept, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let data = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        Self { rows: rows.len(), cols: cols.len(), data }
    }

    /// Deletes the listed rows and columns.
    pub fn delete(&self, rows: &[usize], cols: &[usize]) -> Self {
        let keep_r: Vec<usize> = (0..self.rows).filter(|i| !rows.contains(i)).collect();
        let keep_c: Vec<usize> = (0..self.cols).filter(|j| !cols.contains(j)).collect();
        self.select(&keep_r, &keep_c)
    }
}

impl<T: Scalar + Div<Output = T>> DenseMatrix<T> {
    /// Bareiss elimination; every division is exact.
    pub fn determinant(&self) -> Result<T, TridiagError> {
        if self.rows != self.cols {
            return Err(TridiagError::Shape(format!("{}x{} is not square", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut m: Vec<Vec<T>> = (0..n).map(|i| self.data[i * n..(i + 1) * n].to_vec()).collect();
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        negate = !negate;
                    }
                    None => return Ok(T::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                    m[i][j] = v / prev.clone();
                }
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }
}
