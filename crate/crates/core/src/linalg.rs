//! Sparse row-list matrices, ranks and spectral norms.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::scalar::Scalar;

/// Row-major sparse matrix; each row is sorted by column and holds no exact zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, S)>>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].push((i, S::one()));
        }
        m
    }

    pub fn diagonal(values: &[S]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            if !v.is_zero() {
                m.data[i].push((i, *v));
            }
        }
        m
    }

    pub fn from_dense(rows: usize, cols: usize, entries: &[S]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = entries[i * cols + j];
                if !v.is_zero() {
                    m.data[i].push((j, v));
                }
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

    pub fn row(&self, i: usize) -> &[(usize, S)] {
        &self.data[i]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|(_, v)| v.is_zero()))
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        match self.data[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(p) => self.data[i][p].1,
            Err(_) => S::zero(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        let row = &mut self.data[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(p) => {
                if v.is_zero() {
                    row.remove(p);
                } else {
                    row[p].1 = v;
                }
            }
            Err(p) => {
                if !v.is_zero() {
                    row.insert(p, (j, v));
                }
            }
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: S) {
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    /// Iterates over stored entries `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, S)> + '_ {
        self.data.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, *v)))
    }

    pub fn mul(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        let mut acc = vec![S::zero(); other.cols];
        let mut touched = vec![false; other.cols];
        let mut list = Vec::new();
        for i in 0..self.rows {
            for &(k, a) in &self.data[i] {
                for &(j, b) in &other.data[k] {
                    if !touched[j] {
                        touched[j] = true;
                        list.push(j);
                    }
                    acc[j] = acc[j] + a * b;
                }
            }
            list.sort_unstable();
            for &j in &list {
                if !acc[j].is_zero() {
                    out.data[i].push((j, acc[j]));
                }
                acc[j] = S::zero();
                touched[j] = false;
            }
            list.clear();
        }
        out
    }

    fn combine(&self, other: &Matrix<S>, sign: S) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch");
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            let (a, b) = (&self.data[i], &other.data[i]);
            let (mut p, mut q) = (0, 0);
            let row = &mut out.data[i];
            while p < a.len() || q < b.len() {
                let (j, v) = if q >= b.len() || (p < a.len() && a[p].0 < b[q].0) {
                    p += 1;
                    (a[p - 1].0, a[p - 1].1)
                } else if p >= a.len() || b[q].0 < a[p].0 {
                    q += 1;
                    (b[q - 1].0, sign * b[q - 1].1)
                } else {
                    p += 1;
                    q += 1;
                    (a[p - 1].0, a[p - 1].1 + sign * b[q - 1].1)
                };
                if !v.is_zero() {
                    row.push((j, v));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix<S>) -> Matrix<S> {
        self.combine(other, S::one())
    }

    pub fn sub(&self, other: &Matrix<S>) -> Matrix<S> {
        self.combine(other, -S::one())
    }

    pub fn scale(&self, s: S) -> Matrix<S> {
        let mut out = Self::zeros(self.rows, self.cols);
        if s.is_zero() {
            return out;
        }
        for i in 0..self.rows {
            out.data[i] = self.data[i].iter().map(|&(j, v)| (j, v * s)).collect();
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix<S> {
        let mut out = Self::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for &(j, v) in row {
                out.data[j].push((i, v.conj()));
            }
        }
        out
    }

    pub fn apply(&self, x: &[S]) -> Vec<S> {
        assert_eq!(x.len(), self.cols);
        self.data
            .iter()
            .map(|row| row.iter().fold(S::zero(), |acc, &(j, v)| acc + v * x[j]))
            .collect()
    }

    /// First entry where the matrices differ by more than `tol`.
    pub fn first_difference(&self, other: &Matrix<S>, tol: f64) -> Option<(usize, usize)> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch");
        let d = self.sub(other);
        for (i, j, v) in d.entries() {
            if !v.approx_eq(S::zero(), tol) {
                return Some((i, j));
            }
        }
        None
    }

    /// First difference restricted to the given columns.
    pub fn first_difference_on_columns(
        &self,
        other: &Matrix<S>,
        columns: &[usize],
        tol: f64,
    ) -> Option<(usize, usize)> {
        let mut mask = vec![false; self.cols];
        for &c in columns {
            mask[c] = true;
        }
        let d = self.sub(other);
        for (i, j, v) in d.entries() {
            if mask[j] && !v.approx_eq(S::zero(), tol) {
                return Some((i, j));
            }
        }
        None
    }

    pub fn approx_eq(&self, other: &Matrix<S>, tol: f64) -> bool {
        self.first_difference(other, tol).is_none()
    }

    /// Dense sub-block with the given row and column indices.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<S>> {
        rows.iter().map(|&i| cols.iter().map(|&j| self.get(i, j)).collect()).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<S>> {
        let mut out = vec![vec![S::zero(); self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            out[i][j] = v;
        }
        out
    }
}

/// Rank of a list of row vectors by Gaussian elimination. Pivots below `tol`
/// in magnitude count as zero (ignored for exact scalars).
pub fn rank<S: Scalar>(rows: &[Vec<S>], tol: f64) -> usize {
    let mut m: Vec<Vec<S>> = rows.to_vec();
    if m.is_empty() {
        return 0;
    }
    let ncols = m[0].len();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let mut best = None;
        let mut best_mag = 0.0;
        for (i, row) in m.iter().enumerate().skip(r) {
            let v = row[c];
            if v.is_zero() {
                continue;
            }
            let mag = v.magnitude();
            if S::EXACT {
                best = Some(i);
                break;
            }
            if mag > best_mag {
                best_mag = mag;
                best = Some(i);
            }
        }
        let Some(p) = best else { continue };
        if !S::EXACT && best_mag <= tol {
            continue;
        }
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for i in r + 1..m.len() {
            let f = m[i][c] * inv;
            if f.is_zero() {
                continue;
            }
            for j in c..ncols {
                let t = m[r][j];
                m[i][j] = m[i][j] - f * t;
            }
        }
        r += 1;
    }
    r
}

/// Largest singular value of a dense complex matrix.
pub fn spectral_norm(block: &[Vec<Complex64>]) -> f64 {
    let n = block.len();
    if n == 0 {
        return 0.0;
    }
    let m = block[0].len();
    if m == 0 {
        return 0.0;
    }
    // H = B* B (m x m Hermitian), embedded as a real symmetric 2m x 2m matrix.
    let mut h = vec![vec![Complex64::new(0.0, 0.0); m]; m];
    for i in 0..m {
        for j in 0..m {
            let mut s = Complex64::new(0.0, 0.0);
            for row in block {
                s += row[i].conj() * row[j];
            }
            h[i][j] = s;
        }
    }
    let mut a = vec![vec![0.0f64; 2 * m]; 2 * m];
    for i in 0..m {
        for j in 0..m {
            a[i][j] = h[i][j].re;
            a[i + m][j + m] = h[i][j].re;
            a[i][j + m] = -h[i][j].im;
            a[i + m][j] = h[i][j].im;
        }
    }
    let eig = symmetric_eigenvalues(a);
    let top = eig.into_iter().fold(0.0f64, f64::max);
    Float::sqrt(top.max(0.0))
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
pub fn symmetric_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off += a[i][j] * a[i][j];
                }
            }
        }
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + Float::sqrt(theta * theta + 1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / Float::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}
