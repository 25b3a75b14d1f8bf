//! Temporal Hankel delay embedding and its averaging inverse.
//!
//! `hankelize` lifts an `N x T` matrix to an `N x (T-tau+1) x tau` tensor
//! whose frontal slice `k` is the window of `T-tau+1` consecutive columns
//! starting at column `k`. `dehankelize` maps back by averaging the entries
//! that originated from the same matrix cell, so it is an exact left inverse
//! of `hankelize`.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::tensor::Tensor3;

/// Delay embedding `H_tau`: frontal slice `k` is columns `k..k+T-tau+1` of `x`.
pub fn hankelize<T: Scalar>(x: &Matrix<T>, tau: usize) -> Result<Tensor3<T>> {
    let (n, t) = x.dims();
    if tau < 1 || tau > t {
        return Err(Error::TauOutOfRange { tau, t });
    }
    let window = t - tau + 1;
    let mut out = Tensor3::zeros(n, window, tau);
    for k in 0..tau {
        out.slice_mut(k).copy_from_slice(x.col_range(k..k + window));
    }
    Ok(out)
}

/// Number of Hankel-tensor entries that map to each matrix cell. Identical
/// across rows; column `j` (1-based) holds `min(j, tau, t-j+1, t-tau+1)`.
pub fn count_matrix<T: Scalar>(n: usize, t: usize, tau: usize) -> Result<Matrix<T>> {
    if tau < 1 || tau > t {
        return Err(Error::TauOutOfRange { tau, t });
    }
    Ok(Matrix::from_fn(n, t, |_, j| T::from_usize(column_count(j, t, tau)).unwrap()))
}

#[inline]
fn column_count(j: usize, t: usize, tau: usize) -> usize {
    (j + 1).min(tau).min(t - j).min(t - tau + 1)
}

/// Inverse embedding `H_tau^-1`: averages the tensor entries that map to the
/// same matrix cell. `tau` and `T` are inferred from the tensor dims as
/// `tau = n3`, `T = n2 + n3 - 1`.
///
/// Each cell is computed as `first + mean(entry - first)` over its
/// contributors, where `first` is the contributor from the lowest slice.
/// When all contributors are equal (in particular for any `hankelize`
/// output) the correction term is exactly zero, making
/// `dehankelize(hankelize(x, tau)) == x` bit-for-bit.
pub fn dehankelize<T: Scalar>(a: &Tensor3<T>) -> Matrix<T> {
    let (n, window, tau) = a.dims();
    let t = window + tau - 1;

    // Contributor from the lowest slice for every cell: slice 0 covers
    // columns 0..window, and column c >= window first appears as the last
    // column of slice c - window + 1.
    let mut first = Matrix::zeros(n, t);
    first.col_range_mut(0..window).copy_from_slice(a.slice(0));
    for c in window..t {
        let k = c - window + 1;
        first.col_mut(c).copy_from_slice(&a.slice(k)[(window - 1) * n..window * n]);
    }

    let mut acc = Matrix::<T>::zeros(n, t);
    for k in 0..tau {
        let base: &[T] = &first.as_slice()[k * n..(k + window) * n];
        let dst: &mut [T] = acc.col_range_mut(k..k + window);
        for ((d, &s), &f) in dst.iter_mut().zip(a.slice(k)).zip(base) {
            *d += s - f;
        }
    }

    let mut out = first;
    for c in 0..t {
        let count = T::from_usize(column_count(c, t, tau)).unwrap();
        let corr: Vec<T> = acc.col(c).to_vec();
        for (o, d) in out.col_mut(c).iter_mut().zip(corr) {
            *o += d / count;
        }
    }
    out
}

/// Adjoint of [`hankelize`]: per-cell sums instead of means, so that
/// `<hankelize(x), g> = <x, dehankelize_sum(g)>`.
pub fn dehankelize_sum<T: Scalar>(a: &Tensor3<T>) -> Matrix<T> {
    let (n, window, tau) = a.dims();
    let t = window + tau - 1;
    let mut out = Matrix::zeros(n, t);
    for k in 0..tau {
        let dst = &mut out.col_range_mut(k..k + window)[..];
        for (d, &s) in dst.iter_mut().zip(a.slice(k)) {
            *d += s;
        }
    }
    out
}
