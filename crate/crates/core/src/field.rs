//! Dense linear algebra over a prime field `F_p`.
//!
//! Entries are stored as `u64` in `[0, p)`; the prime is bounded by `2^32` so
//! products of two entries never overflow.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub const DEFAULT_PRIME: u64 = 32003;
pub const MIN_PRIME: u64 = 97;

/// A prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn new(p: u64) -> Result<Self> {
        if p < MIN_PRIME {
            return Err(Error::InvalidField(format!("p = {p} is below {MIN_PRIME}")));
        }
        if p >= 1 << 32 {
            return Err(Error::InvalidField(format!("p = {p} exceeds 2^32")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("p = {p} is not prime")));
        }
        Ok(FieldSpec { p })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    /// Reduces a signed integer into `[0, p)`.
    pub fn from_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec { p: DEFAULT_PRIME }
    }
}

/// Dense row-major matrix over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<u64>) -> Self {
        assert_eq!(rows * cols, data.len());
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<u64>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row of length {} in a matrix with {} columns",
                    r.len(),
                    cols
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(Mat { rows: rows.len(), cols, data })
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat, f: &FieldSpec) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let p = f.p();
        let mut out = Mat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let orow = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o = (*o + a * b) % p;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64], f: &FieldSpec) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| (acc + a * b) % f.p())
            })
            .collect()
    }

    pub fn add(&self, other: &Mat, f: &FieldSpec) -> Mat {
        assert_eq!(self.shape(), other.shape());
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Mat, f: &FieldSpec) -> Mat {
        assert_eq!(self.shape(), other.shape());
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: u64, f: &FieldSpec) -> Mat {
        let data = self.data.iter().map(|&a| f.mul(a, s)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn pow(&self, e: usize, f: &FieldSpec) -> Mat {
        assert_eq!(self.rows, self.cols);
        let mut r = Mat::identity(self.rows);
        for _ in 0..e {
            r = r.mul(self, f);
        }
        r
    }

    /// Block-diagonal sum `diag(self, other)`.
    pub fn block_diag(&self, other: &Mat) -> Mat {
        let mut out = Mat::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = self[(r, c)];
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out[(self.rows + r, self.cols + c)] = other[(r, c)];
            }
        }
        out
    }

    /// Columns `cols` of `self`, in the given order.
    pub fn select_cols(&self, cols: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                out[(r, k)] = self[(r, c)];
            }
        }
        out
    }

    pub fn from_cols(rows: usize, cols: &[Vec<u64>]) -> Mat {
        let mut out = Mat::zeros(rows, cols.len());
        for (c, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), rows);
            for (r, &x) in v.iter().enumerate() {
                out[(r, c)] = x;
            }
        }
        out
    }

    pub fn rank(&self, f: &FieldSpec) -> usize {
        let mut m = self.clone();
        m.row_reduce(f).len()
    }

    /// In-place reduced row echelon form. Returns the pivot columns.
    pub fn row_reduce(&mut self, f: &FieldSpec) -> Vec<usize> {
        let p = f.p();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..cols {
            if prow == rows {
                break;
            }
            let Some(sel) = (prow..rows).find(|&r| self.data[r * cols + c] != 0) else {
                continue;
            };
            if sel != prow {
                for k in 0..cols {
                    self.data.swap(sel * cols + k, prow * cols + k);
                }
            }
            let inv = f.inv(self.data[prow * cols + c]);
            for k in c..cols {
                let idx = prow * cols + k;
                self.data[idx] = self.data[idx] * inv % p;
            }
            let (head, tail) = self.data.split_at_mut(prow * cols);
            let (pivot_row, rest) = tail.split_at_mut(cols);
            let eliminate = |row: &mut [u64]| {
                let factor = row[c];
                if factor == 0 {
                    return;
                }
                let m = p - factor;
                for k in c..cols {
                    row[k] = (row[k] + m * pivot_row[k]) % p;
                }
            };
            head.chunks_mut(cols).for_each(eliminate);
            rest.chunks_mut(cols).for_each(eliminate);
            pivots.push(c);
            prow += 1;
        }
        pivots
    }

    /// Basis of the right kernel `{x : self * x = 0}`.
    ///
    /// Each basis vector has a 1 at one free column and 0 at every other free
    /// column, so coordinates of a kernel element are read off at the free
    /// columns (see [`Kernel::coords`]).
    pub fn kernel(&self, f: &FieldSpec) -> Kernel {
        let mut m = self.clone();
        let pivots = m.row_reduce(f);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let basis = free
            .iter()
            .map(|&fc| {
                let mut v = vec![0; self.cols];
                v[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m[(r, fc)]);
                }
                v
            })
            .collect();
        Kernel { basis, free }
    }

    pub fn inverse(&self, f: &FieldSpec) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Mat::zeros(0, 0));
        }
        let mut aug = Mat::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)];
            }
            aug[(r, n + r)] = 1;
        }
        let pivots = aug.row_reduce(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = aug[(r, n + c)];
            }
        }
        Some(inv)
    }

    /// Basis (as columns) of the column space, taken from the original columns.
    pub fn column_basis(&self, f: &FieldSpec) -> Mat {
        let mut m = self.clone();
        let pivots = m.row_reduce(f);
        self.select_cols(&pivots)
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = u64;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &u64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut u64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

/// Kernel basis together with the free columns that index it.
#[derive(Debug, Clone)]
pub struct Kernel {
    pub basis: Vec<Vec<u64>>,
    pub free: Vec<usize>,
}

impl Kernel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a vector known to lie in the kernel.
    pub fn coords(&self, v: &[u64]) -> Vec<u64> {
        self.free.iter().map(|&c| v[c]).collect()
    }
}

/// Extends the column space of `span` (columns, `n` rows) by standard basis
/// vectors to a full basis of `F^n`; returns the indices of the added vectors.
pub fn complement_indices(span: &Mat, f: &FieldSpec) -> Vec<usize> {
    let n = span.rows();
    let mut aug = Mat::zeros(n, span.cols() + n);
    for r in 0..n {
        for c in 0..span.cols() {
            aug[(r, c)] = span[(r, c)];
        }
        aug[(r, span.cols() + r)] = 1;
    }
    aug.row_reduce(f)
        .into_iter()
        .filter(|&c| c >= span.cols())
        .map(|c| c - span.cols())
        .collect()
}
