//! Shared helpers for the integration suites: seeded random data and a
//! self-contained one-sided Jacobi SVD used as an oracle independent of the
//! library's factorization backend.

#![allow(dead_code)]

use hankel_rpca::{Matrix, Tensor3};
use num_complex::Complex;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(n: usize, t: usize, seed: u64) -> Matrix<f64> {
    let mut r = rng(seed);
    Matrix::from_fn(n, t, |_, _| r.random::<f64>() * 2.0 - 1.0)
}

pub fn random_tensor(n1: usize, n2: usize, n3: usize, seed: u64) -> Tensor3<f64> {
    let mut r = rng(seed);
    Tensor3::from_fn(n1, n2, n3, |_, _, _| r.random::<f64>() * 2.0 - 1.0)
}

pub fn max_abs_diff_mat(a: &Matrix<f64>, b: &Matrix<f64>) -> f64 {
    assert_eq!(a.dims(), b.dims());
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .fold(0.0f64, |m, (&x, &y)| m.max((x - y).abs()))
}

pub fn max_abs_diff_tensor(a: &Tensor3<f64>, b: &Tensor3<f64>) -> f64 {
    assert_eq!(a.dims(), b.dims());
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .fold(0.0f64, |m, (&x, &y)| m.max((x - y).abs()))
}

/// Column-major complex matrix for the Jacobi oracle.
#[derive(Clone)]
pub struct CMat {
    pub data: Vec<Complex<f64>>,
    pub nrows: usize,
    pub ncols: usize,
}

impl CMat {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self { data: vec![Complex::new(0.0, 0.0); nrows * ncols], nrows, ncols }
    }

    pub fn from_real_slice(data: &[f64], nrows: usize, ncols: usize) -> Self {
        Self {
            data: data.iter().map(|&v| Complex::new(v, 0.0)).collect(),
            nrows,
            ncols,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<f64> {
        self.data[i + j * self.nrows]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex<f64>) {
        self.data[i + j * self.nrows] = v;
    }

    fn col_pair_mut(&mut self, p: usize, q: usize) -> (&mut [Complex<f64>], &mut [Complex<f64>]) {
        assert!(p < q);
        let n = self.nrows;
        let (lo, hi) = self.data.split_at_mut(q * n);
        (&mut lo[p * n..(p + 1) * n], &mut hi[..n])
    }
}

/// Singular values of `a` via one-sided Jacobi, descending. Independent of
/// the library's SVD route; intended for small matrices.
pub fn jacobi_singular_values(a: &CMat) -> Vec<f64> {
    let (_, s, _) = jacobi_svd(a);
    s
}

/// One-sided Jacobi SVD: returns `(u, s, v)` with `a = u * diag(s) * v^H`,
/// `s` descending. `u` has orthonormal columns spanning the range; columns
/// beyond the numerical rank are zero.
pub fn jacobi_svd(a: &CMat) -> (CMat, Vec<f64>, CMat) {
    // Work on the transpose when wide, so columns are the short side.
    if a.ncols > a.nrows {
        let mut at = CMat::zeros(a.ncols, a.nrows);
        for j in 0..a.ncols {
            for i in 0..a.nrows {
                at.set(j, i, a.get(i, j).conj());
            }
        }
        let (u, s, v) = jacobi_svd(&at);
        return (v, s, u);
    }

    let (m, n) = (a.nrows, a.ncols);
    let mut w = a.clone();
    let mut v = CMat::zeros(n, n);
    for j in 0..n {
        v.set(j, j, Complex::new(1.0, 0.0));
    }

    let eps = 1e-15f64;
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                let mut app = 0.0f64;
                let mut aqq = 0.0f64;
                let mut apq = Complex::new(0.0, 0.0);
                for i in 0..m {
                    let x = w.get(i, p);
                    let y = w.get(i, q);
                    app += x.norm_sqr();
                    aqq += y.norm_sqr();
                    apq += x.conj() * y;
                }
                let mag = apq.norm();
                if mag <= eps * (app * aqq).sqrt() {
                    continue;
                }
                off = off.max(mag / (app * aqq).sqrt().max(f64::MIN_POSITIVE));
                // Hermitian 2x2 [[app, apq], [conj(apq), aqq]]: absorb the
                // phase of apq, then the classical real Jacobi rotation.
                let phase = apq / mag;
                let tau = (aqq - app) / (2.0 * mag);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;

                let rotate = |cp: &mut [Complex<f64>], cq: &mut [Complex<f64>]| {
                    for i in 0..cp.len() {
                        let x = cp[i];
                        let y = cq[i] * phase.conj();
                        cp[i] = x * c - y * s;
                        cq[i] = (x * s + y * c) * phase;
                    }
                };
                {
                    let (cp, cq) = w.col_pair_mut(p, q);
                    rotate(cp, cq);
                }
                {
                    let (cp, cq) = v.col_pair_mut(p, q);
                    rotate(cp, cq);
                }
            }
        }
        if off <= eps {
            break;
        }
    }

    // Column norms are the singular values; sort descending.
    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = (0..n)
        .map(|j| (0..m).map(|i| w.get(i, j).norm_sqr()).sum::<f64>().sqrt())
        .collect();
    order.sort_by(|&x, &y| norms[y].partial_cmp(&norms[x]).unwrap());

    let mut u = CMat::zeros(m, n);
    let mut vs = CMat::zeros(n, n);
    let mut s = Vec::with_capacity(n);
    let scale = norms.iter().cloned().fold(0.0f64, f64::max);
    for (dst, &src) in order.iter().enumerate() {
        let sigma = norms[src];
        s.push(sigma);
        if sigma > scale * 1e-300 {
            for i in 0..m {
                u.set(i, dst, w.get(i, src) / sigma);
            }
        }
        for i in 0..n {
            vs.set(i, dst, v.get(i, src));
        }
    }
    (u, s, vs)
}

/// Singular-value shrinkage via the Jacobi oracle: `u max(s - lambda, 0) v^H`.
pub fn jacobi_shrink(a: &CMat, lambda: f64) -> CMat {
    let (u, s, v) = jacobi_svd(a);
    let (m, n) = (a.nrows, a.ncols);
    let mut out = CMat::zeros(m, n);
    for (r, &sigma) in s.iter().enumerate() {
        let shrunk = (sigma - lambda).max(0.0);
        if shrunk == 0.0 {
            continue;
        }
        for j in 0..n {
            let vj = v.get(j, r).conj() * shrunk;
            for i in 0..m {
                let cur = out.get(i, j);
                out.set(i, j, cur + u.get(i, r) * vj);
            }
        }
    }
    out
}

#[test]
fn jacobi_svd_reconstructs() {
    let mut r = rng(99);
    for &(m, n) in &[(5usize, 3usize), (3, 5), (4, 4), (6, 1)] {
        let mut a = CMat::zeros(m, n);
        for j in 0..n {
            for i in 0..m {
                a.set(i, j, Complex::new(r.random::<f64>() - 0.5, r.random::<f64>() - 0.5));
            }
        }
        let (u, s, v) = jacobi_svd(&a);
        let mut err = 0.0f64;
        for j in 0..n {
            for i in 0..m {
                let mut acc = Complex::new(0.0, 0.0);
                for (k, &sigma) in s.iter().enumerate() {
                    acc += u.get(i, k) * sigma * v.get(j, k).conj();
                }
                err = err.max((acc - a.get(i, j)).norm());
            }
        }
        assert!(err < 1e-12, "({m},{n}): reconstruction error {err:e}");
        for w in s.windows(2) {
            assert!(w[0] >= w[1]);
        }
        // Orthonormal singular vectors certify the sweep converged.
        for (p, &sp) in s.iter().enumerate() {
            if sp == 0.0 {
                continue;
            }
            for (q, &sq) in s.iter().enumerate().skip(p) {
                if sq == 0.0 {
                    continue;
                }
                let mut dot = Complex::new(0.0, 0.0);
                for i in 0..m {
                    dot += u.get(i, p).conj() * u.get(i, q);
                }
                let expected = if p == q { 1.0 } else { 0.0 };
                assert!((dot - expected).norm() < 1e-12, "u^H u [{p},{q}] = {dot}");
            }
        }
    }
}
