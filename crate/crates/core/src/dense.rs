//! Small real dense-matrix helpers: rank and least-squares solves.
//!
//! Everything here works on row-major `f64` storage and is sized for the
//! `d^2 x N` systems the decomposition produces (tens of rows and columns).

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// Builds a matrix from row vectors. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`. Panics on ragged input.
    pub fn from_columns(columns: &[Vec<f64>]) -> Self {
        let rows = columns.first().map_or(0, Vec::len);
        assert!(columns.iter().all(|c| c.len() == rows), "ragged columns");
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Submatrix made of the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m[(i, k)] = self[(i, j)];
            }
        }
        m
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn transpose_mul_vec(&self, y: &[f64]) -> Vec<f64> {
        assert_eq!(y.len(), self.rows);
        let mut out = vec![0.0; self.cols];
        for (i, &yi) in y.iter().enumerate() {
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o += a * yi;
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Numerical rank by Gaussian elimination with full pivoting.
    ///
    /// Elimination stops once the largest remaining entry falls below
    /// `tol * max(1, max |a_ij|)`.
    pub fn rank(&self, tol: f64) -> usize {
        let mut a = self.data.clone();
        let (m, n) = (self.rows, self.cols);
        let threshold = tol * self.max_abs().max(1.0);
        let mut rank = 0;
        let mut row_used = vec![false; m];
        let mut col_used = vec![false; n];
        while rank < m.min(n) {
            let mut best = (0.0, 0, 0);
            for i in (0..m).filter(|&i| !row_used[i]) {
                for j in (0..n).filter(|&j| !col_used[j]) {
                    let v = a[i * n + j].abs();
                    if v > best.0 {
                        best = (v, i, j);
                    }
                }
            }
            let (pivot, pr, pc) = best;
            if pivot <= threshold {
                break;
            }
            row_used[pr] = true;
            col_used[pc] = true;
            for i in (0..m).filter(|&i| !row_used[i]) {
                let f = a[i * n + pc] / a[pr * n + pc];
                if f != 0.0 {
                    for j in 0..n {
                        a[i * n + j] -= f * a[pr * n + j];
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Least-squares solution of `self * x = b` via Householder QR.
    ///
    /// Requires `rows >= cols`. Returns `None` when a column is numerically
    /// dependent on the previous ones (diagonal of `R` below
    /// `tol * max(1, max |a_ij|)`).
    pub fn solve_least_squares(&self, b: &[f64], tol: f64) -> Option<Vec<f64>> {
        let (m, n) = (self.rows, self.cols);
        assert_eq!(b.len(), m);
        if n > m {
            return None;
        }
        let threshold = tol * self.max_abs().max(1.0);
        let mut r = self.data.clone();
        let mut y = b.to_vec();
        for j in 0..n {
            let norm = (j..m).map(|i| r[i * n + j].powi(2)).sum::<f64>().sqrt();
            if norm <= threshold {
                return None;
            }
            let alpha = if r[j * n + j] > 0.0 { -norm } else { norm };
            let mut v: Vec<f64> = (j..m).map(|i| r[i * n + j]).collect();
            v[0] -= alpha;
            let vnorm2: f64 = v.iter().map(|x| x * x).sum();
            if vnorm2 == 0.0 {
                continue;
            }
            for k in j..n {
                let dot: f64 = (j..m).map(|i| v[i - j] * r[i * n + k]).sum();
                let f = 2.0 * dot / vnorm2;
                for i in j..m {
                    r[i * n + k] -= f * v[i - j];
                }
            }
            let dot: f64 = (j..m).map(|i| v[i - j] * y[i]).sum();
            let f = 2.0 * dot / vnorm2;
            for i in j..m {
                y[i] -= f * v[i - j];
            }
        }
        let mut x = vec![0.0; n];
        for j in (0..n).rev() {
            let s: f64 = ((j + 1)..n).map(|k| r[j * n + k] * x[k]).sum();
            x[j] = (y[j] - s) / r[j * n + j];
        }
        Some(x)
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

pub(crate) fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}
