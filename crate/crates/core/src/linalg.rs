//! Dense factorization backend.
//!
//! Thin wrappers around faer's SVD and self-adjoint eigendecomposition. Every
//! call runs with `Par::Seq`, so results are identical regardless of how many
//! threads the surrounding program uses.

use faer::diag::Diag;
use faer::dyn_stack::{MemBuffer, MemStack};
use faer::linalg::evd::{self, ComputeEigenvectors, SelfAdjointEvdParams};
use faer::linalg::matmul::matmul;
use faer::linalg::svd::{self, ComputeSvdVectors, SvdParams};
use faer::prelude::{Reborrow, ReborrowMut};
use faer::traits::{ComplexField, Conjugate};
use faer::{Accum, Mat, MatMut, MatRef, Par, Spec};

/// A factorization did not converge; callers attach context.
#[derive(Debug, Clone, Copy)]
pub(crate) struct NonConvergence;

/// `(u, singular values, v)` with `a = u * diag(s) * v^H`.
pub(crate) type FullSvd<C> = (Mat<C>, Vec<<C as ComplexField>::Real>, Mat<C>);

pub(crate) fn gemm_into<C, L, R>(dst: MatMut<'_, C>, lhs: MatRef<'_, L>, rhs: MatRef<'_, R>)
where
    C: ComplexField,
    L: Conjugate<Canonical = C>,
    R: Conjugate<Canonical = C>,
{
    matmul(dst, Accum::Replace, lhs, rhs, C::one_impl(), Par::Seq);
}

/// Singular values of `a` in nonincreasing order.
pub(crate) fn singular_values<C: ComplexField>(
    a: MatRef<'_, C>,
) -> Result<Vec<C::Real>, NonConvergence> {
    let k = Ord::min(a.nrows(), a.ncols());
    if k == 0 {
        return Ok(Vec::new());
    }
    let params = Spec::<SvdParams, C>::default();
    let mut s = Diag::<C>::zeros(k);
    let mut mem = MemBuffer::new(svd::svd_scratch::<C>(
        a.nrows(),
        a.ncols(),
        ComputeSvdVectors::No,
        ComputeSvdVectors::No,
        Par::Seq,
        params,
    ));
    svd::svd(a, s.as_mut(), None, None, Par::Seq, MemStack::new(&mut mem), params)
        .map_err(|_| NonConvergence)?;
    Ok((0..k).map(|i| C::real_part_impl(&s[i])).collect())
}

/// Full SVD `a = u * diag(s) * v^H` with square `u` (m x m) and `v` (n x n).
pub(crate) fn svd_full<C: ComplexField>(
    a: MatRef<'_, C>,
) -> Result<FullSvd<C>, NonConvergence> {
    let (m, n) = (a.nrows(), a.ncols());
    let k = Ord::min(m, n);
    let params = Spec::<SvdParams, C>::default();
    let mut u = Mat::<C>::zeros(m, m);
    let mut v = Mat::<C>::zeros(n, n);
    let mut s = Diag::<C>::zeros(k);
    let mut mem = MemBuffer::new(svd::svd_scratch::<C>(
        m,
        n,
        ComputeSvdVectors::Full,
        ComputeSvdVectors::Full,
        Par::Seq,
        params,
    ));
    svd::svd(
        a,
        s.as_mut(),
        Some(u.as_mut()),
        Some(v.as_mut()),
        Par::Seq,
        MemStack::new(&mut mem),
        params,
    )
    .map_err(|_| NonConvergence)?;
    let sv = (0..k).map(|i| C::real_part_impl(&s[i])).collect();
    Ok((u, sv, v))
}

/// Replaces `a` by the singular value shrinkage `U max(S - lambda, 0) V^H`.
///
/// Works through the Gram matrix of the smaller side: with `m <= n` and
/// `A = U S V^H`, the eigendecomposition of `A A^H` yields `U` and `S^2`, so
/// the shrunk matrix is the spectral filter
/// `U diag(max(s - lambda, 0) / s) U^H A` and the wide `V` is never formed.
/// Eigenvalues are clamped at zero before the square root to absorb rounding.
///
/// Squaring the spectrum costs resolution at the bottom: singular values
/// below `sqrt(eps) * s_max` carry absolute errors up to about
/// `sqrt(eps) * s_max`. Components that small survive the shrinkage only
/// when `lambda` is smaller still, so the result differs from a direct-SVD
/// shrinkage by at most that amount.
pub(crate) fn shrink_singular_values_in_place<C: ComplexField>(
    mut a: MatMut<'_, C>,
    lambda: C::Real,
) -> Result<(), NonConvergence> {
    let (m, n) = (a.nrows(), a.ncols());
    let k = Ord::min(m, n);
    if k == 0 {
        return Ok(());
    }

    let mut gram = Mat::<C>::zeros(k, k);
    if m <= n {
        gemm_into(gram.as_mut(), a.rb(), a.rb().adjoint());
    } else {
        gemm_into(gram.as_mut(), a.rb().adjoint(), a.rb());
    }

    let params = Spec::<SelfAdjointEvdParams, C>::default();
    let mut w = Diag::<C>::zeros(k);
    let mut q = Mat::<C>::zeros(k, k);
    let mut mem = MemBuffer::new(evd::self_adjoint_evd_scratch::<C>(
        k,
        ComputeEigenvectors::Yes,
        Par::Seq,
        params,
    ));
    evd::self_adjoint_evd(
        gram.as_ref(),
        w.as_mut(),
        Some(q.as_mut()),
        Par::Seq,
        MemStack::new(&mut mem),
        params,
    )
    .map_err(|_| NonConvergence)?;

    // Filter factor per singular value: max(sigma - lambda, 0) / sigma.
    let zero = <C::Real as ComplexField>::zero_impl();
    let factors: Vec<C::Real> = (0..k)
        .map(|i| {
            let wi = C::real_part_impl(&w[i]);
            let wi = if wi > zero { wi } else { zero.clone() };
            let sigma = <C::Real as ComplexField>::sqrt_impl(&wi);
            if sigma > lambda {
                (sigma.clone() - lambda.clone()) / sigma
            } else {
                zero.clone()
            }
        })
        .collect();

    if m <= n {
        // a <- (Q diag(f)) (Q^H a)
        let mut p = Mat::<C>::zeros(k, n);
        gemm_into(p.as_mut(), q.as_ref().adjoint(), a.rb());
        scale_cols_in_place(q.as_mut(), &factors);
        gemm_into(a.rb_mut(), q.as_ref(), p.as_ref());
    } else {
        // a <- (a Q) diag(f) Q^H
        let mut p = Mat::<C>::zeros(m, k);
        gemm_into(p.as_mut(), a.rb(), q.as_ref());
        scale_cols_in_place(p.as_mut(), &factors);
        gemm_into(a.rb_mut(), p.as_ref(), q.as_ref().adjoint());
    }

    Ok(())
}

fn scale_cols_in_place<C: ComplexField>(mut m: MatMut<'_, C>, factors: &[C::Real]) {
    for (j, f) in factors.iter().enumerate() {
        for x in m.rb_mut().col_mut(j).iter_mut() {
            *x = C::mul_real_impl(x, f);
        }
    }
}
