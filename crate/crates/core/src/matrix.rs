//! Dense column-major matrices.
//!
//! [`Matrix`] is the `N x T` time-series container used everywhere in the
//! crate: rows are sensors/locations, columns are timestamps. Storage is
//! column-major so each column (and each frontal tensor slice built from
//! columns) is a contiguous block that the linear algebra backend can view
//! without copying.

use crate::scalar::Scalar;

/// Dense real matrix, column-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    data: Vec<T>,
    nrows: usize,
    ncols: usize,
}

impl<T: Scalar> Matrix<T> {
    /// Zero matrix of the given shape.
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self { data: vec![T::zero(); nrows * ncols], nrows, ncols }
    }

    /// Build from a closure over `(row, col)`.
    pub fn from_fn(nrows: usize, ncols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(nrows * ncols);
        for j in 0..ncols {
            for i in 0..nrows {
                data.push(f(i, j));
            }
        }
        Self { data, nrows, ncols }
    }

    /// Wrap a column-major buffer. Panics if the length does not match.
    pub fn from_col_major(nrows: usize, ncols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), nrows * ncols, "buffer length must equal nrows * ncols");
        Self { data, nrows, ncols }
    }

    /// Build from row slices, e.g. `Matrix::from_rows(&[&[1.0, 2.0], &[3.0, 4.0]])`.
    pub fn from_rows(rows: &[&[T]]) -> Self {
        let nrows = rows.len();
        let ncols = if nrows == 0 { 0 } else { rows[0].len() };
        for r in rows {
            assert_eq!(r.len(), ncols, "all rows must have equal length");
        }
        Self::from_fn(nrows, ncols, |i, j| rows[i][j])
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// `(nrows, ncols)`.
    pub fn dims(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        debug_assert!(i < self.nrows && j < self.ncols);
        self.data[i + j * self.nrows]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        debug_assert!(i < self.nrows && j < self.ncols);
        self.data[i + j * self.nrows] = v;
    }

    /// Column-major backing slice.
    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.data
    }

    /// Contiguous view of column `j`.
    pub fn col(&self, j: usize) -> &[T] {
        &self.data[j * self.nrows..(j + 1) * self.nrows]
    }

    pub fn col_mut(&mut self, j: usize) -> &mut [T] {
        &mut self.data[j * self.nrows..(j + 1) * self.nrows]
    }

    /// Contiguous view of the column block `cols.start..cols.end`.
    pub fn col_range(&self, cols: std::ops::Range<usize>) -> &[T] {
        &self.data[cols.start * self.nrows..cols.end * self.nrows]
    }

    pub fn col_range_mut(&mut self, cols: std::ops::Range<usize>) -> &mut [T] {
        &mut self.data[cols.start * self.nrows..cols.end * self.nrows]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ncols, self.nrows, |i, j| self.get(j, i))
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Self {
            data: self.data.iter().map(|&v| f(v)).collect(),
            nrows: self.nrows,
            ncols: self.ncols,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|v| v * s)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> T) -> Self {
        assert_eq!(self.dims(), other.dims(), "shape mismatch");
        Self {
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
            nrows: self.nrows,
            ncols: self.ncols,
        }
    }

    /// Frobenius norm.
    pub fn fro_norm(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, &v| acc + v * v).sqrt()
    }

    /// Entrywise l1 norm.
    pub fn l1_norm(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, &v| acc + v.abs())
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, &v| acc.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Frobenius inner product `<self, other>`.
    pub fn dot(&self, other: &Self) -> T {
        assert_eq!(self.dims(), other.dims(), "shape mismatch");
        self.data.iter().zip(&other.data).fold(T::zero(), |acc, (&a, &b)| acc + a * b)
    }
}

/// Dense boolean matrix, column-major; used for observation masks and
/// anomaly flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolMatrix {
    data: Vec<bool>,
    nrows: usize,
    ncols: usize,
}

impl BoolMatrix {
    pub fn filled(nrows: usize, ncols: usize, value: bool) -> Self {
        Self { data: vec![value; nrows * ncols], nrows, ncols }
    }

    pub fn from_fn(nrows: usize, ncols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut data = Vec::with_capacity(nrows * ncols);
        for j in 0..ncols {
            for i in 0..nrows {
                data.push(f(i, j));
            }
        }
        Self { data, nrows, ncols }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.nrows && j < self.ncols);
        self.data[i + j * self.nrows]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        debug_assert!(i < self.nrows && j < self.ncols);
        self.data[i + j * self.nrows] = v;
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.data
    }

    pub fn count_true(&self) -> usize {
        self.data.iter().filter(|&&b| b).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn col_major_layout() {
        let m = Matrix::<f64>::from_rows(&[&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]]);
        assert_eq!(m.dims(), (2, 3));
        assert_eq!(m.as_slice(), &[1.0, 4.0, 2.0, 5.0, 3.0, 6.0]);
        assert_eq!(m.col(1), &[2.0, 5.0]);
        assert_eq!(m.get(1, 2), 6.0);
    }

    #[test]
    fn norms() {
        let m = Matrix::<f64>::from_rows(&[&[3.0, 0.0], &[0.0, -4.0]]);
        assert_eq!(m.fro_norm(), 5.0);
        assert_eq!(m.l1_norm(), 7.0);
        assert_eq!(m.max_abs(), 4.0);
    }

    #[test]
    fn transpose_roundtrip() {
        let m = Matrix::<f64>::from_fn(3, 5, |i, j| (i * 10 + j) as f64);
        assert_eq!(m.transpose().transpose(), m);
    }
}
