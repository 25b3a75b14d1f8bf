//! ADMM solvers: Hankel-tensor robust PCA, its robust-matrix-completion
//! variant for partially observed data, and the plain matrix RPCA baseline.
//!
//! All three minimize a nuclear-norm + `gamma * l1` objective subject to
//! `L + S = M` by alternating a singular-value shrinkage step for the
//! low-rank part, a soft shrinkage step for the sparse part, and a dual
//! ascent step with a geometrically growing penalty `rho`.

use faer::MatMut;

use crate::error::{Error, Result};
use crate::hankel::{dehankelize, hankelize};
use crate::linalg;
use crate::matrix::{BoolMatrix, Matrix};
use crate::scalar::Scalar;
use crate::tensor::t_svt;

/// Hyperparameters shared by all solvers.
///
/// `new` fills in the standard defaults (`rho0 = 5e-5`, `rho_max = 1e6`,
/// `beta = 1.1`, `tol = 1e-5`, `max_iter = 500`); fields are public for
/// direct adjustment.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig<T> {
    /// Delay embedding length (ignored by [`rpca`]).
    pub tau: usize,
    /// Low-rank / sparsity trade-off.
    pub gamma: T,
    /// Initial penalty.
    pub rho0: T,
    /// Penalty ceiling.
    pub rho_max: T,
    /// Penalty growth factor per iteration, `>= 1` (typically in `[1.0, 1.2]`).
    pub beta: T,
    /// Stopping threshold on the relative residual.
    pub tol: T,
    pub max_iter: usize,
}

impl<T: Scalar> SolverConfig<T> {
    pub fn new(tau: usize, gamma: T) -> Self {
        Self {
            tau,
            gamma,
            rho0: T::from_f64_c(5e-5),
            rho_max: T::from_f64_c(1e6),
            beta: T::from_f64_c(1.1),
            tol: T::from_f64_c(1e-5),
            max_iter: 500,
        }
    }

    /// Checks every field except `tau` (which only constrains the Hankel
    /// solvers; see [`SolverConfig::validate_tau`]).
    // Negated comparisons so NaN fields fail validation.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > T::zero()) {
            return Err(Error::InvalidParameter(format!("gamma = {} must be > 0", self.gamma)));
        }
        if !(self.rho0 > T::zero()) {
            return Err(Error::InvalidParameter(format!("rho0 = {} must be > 0", self.rho0)));
        }
        if !(self.rho0 <= self.rho_max) {
            return Err(Error::InvalidParameter(format!(
                "rho0 = {} must not exceed rho_max = {}",
                self.rho0, self.rho_max
            )));
        }
        if !(self.beta >= T::one()) {
            return Err(Error::InvalidParameter(format!("beta = {} must be >= 1", self.beta)));
        }
        if !(self.tol > T::zero()) {
            return Err(Error::InvalidParameter(format!("tol = {} must be > 0", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidParameter("max_iter must be >= 1".into()));
        }
        Ok(())
    }

    pub fn validate_tau(&self, t: usize) -> Result<()> {
        if self.tau < 1 || self.tau > t {
            return Err(Error::TauOutOfRange { tau: self.tau, t });
        }
        Ok(())
    }
}

/// Boolean `N x T` mask marking observed entries; at least one entry must be
/// observed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservationMask {
    mask: BoolMatrix,
    observed: usize,
}

impl ObservationMask {
    /// Everything observed.
    pub fn full(nrows: usize, ncols: usize) -> Self {
        Self { mask: BoolMatrix::filled(nrows, ncols, true), observed: nrows * ncols }
    }

    pub fn new(mask: BoolMatrix) -> Result<Self> {
        let observed = mask.count_true();
        if observed == 0 {
            return Err(Error::EmptyMask);
        }
        Ok(Self { mask, observed })
    }

    pub fn dims(&self) -> (usize, usize) {
        self.mask.dims()
    }

    #[inline]
    pub fn is_observed(&self, i: usize, j: usize) -> bool {
        self.mask.get(i, j)
    }

    pub fn observed_count(&self) -> usize {
        self.observed
    }

    pub fn is_full(&self) -> bool {
        let (n, t) = self.dims();
        self.observed == n * t
    }

    pub fn as_bool_matrix(&self) -> &BoolMatrix {
        &self.mask
    }

    /// Column-major slice of observation flags, matching [`Matrix`] layout.
    pub fn as_slice(&self) -> &[bool] {
        self.mask.as_slice()
    }
}

/// Output of a solver run.
#[derive(Debug, Clone)]
pub struct DecompositionResult<T> {
    /// Recovered low-rank component `L`.
    pub low_rank: Matrix<T>,
    /// Recovered sparse component `S`.
    pub sparse: Matrix<T>,
    /// Completed matrix `M` (only for [`ht_rmc`]); equals the input on
    /// observed entries exactly.
    pub completed: Option<Matrix<T>>,
    pub iterations: usize,
    /// Relative residual after each iteration; `residual_history.len() ==
    /// iterations`.
    pub residual_history: Vec<T>,
    pub converged: bool,
}

/// Elementwise soft shrinkage `sgn(y) * max(|y| - lambda, 0)`, the proximal
/// operator of `lambda * l1`.
pub fn soft_shrink<T: Scalar>(y: &Matrix<T>, lambda: T) -> Result<Matrix<T>> {
    if lambda < T::zero() {
        return Err(Error::InvalidParameter(format!("soft_shrink: lambda = {lambda} must be >= 0")));
    }
    Ok(y.map(|v| shrink_scalar(v, lambda)))
}

#[inline]
fn shrink_scalar<T: Scalar>(v: T, lambda: T) -> T {
    let mag = v.abs() - lambda;
    if mag > T::zero() {
        mag * v.signum()
    } else {
        T::zero()
    }
}

/// Matrix singular value thresholding: `U max(S - lambda, 0) V^T`.
pub fn matrix_svt<T: Scalar>(y: &Matrix<T>, lambda: T) -> Result<Matrix<T>> {
    if lambda < T::zero() {
        return Err(Error::InvalidParameter(format!("matrix_svt: lambda = {lambda} must be >= 0")));
    }
    let mut out = y.clone();
    let (n, t) = out.dims();
    let view = MatMut::from_column_major_slice_mut(out.as_mut_slice(), n, t);
    linalg::shrink_singular_values_in_place(view, lambda)
        .map_err(|_| Error::FactorizationFailed { slice: 0 })?;
    Ok(out)
}

/// Stopping quantity `||P_Omega(m - l - s)||_F / ||P_Omega(m)||_F`.
pub fn relative_residual<T: Scalar>(
    m: &Matrix<T>,
    l: &Matrix<T>,
    s: &Matrix<T>,
    mask: &ObservationMask,
) -> Result<T> {
    if m.dims() != l.dims() || m.dims() != s.dims() || m.dims() != mask.dims() {
        return Err(Error::DimensionMismatch(format!(
            "relative_residual: m {:?}, l {:?}, s {:?}, mask {:?}",
            m.dims(),
            l.dims(),
            s.dims(),
            mask.dims()
        )));
    }
    let mut num_sq = T::zero();
    let mut den_sq = T::zero();
    for (((&mv, &lv), &sv), &obs) in m
        .as_slice()
        .iter()
        .zip(l.as_slice())
        .zip(s.as_slice())
        .zip(mask.as_slice())
    {
        if obs {
            let d = mv - lv - sv;
            num_sq += d * d;
            den_sq += mv * mv;
        }
    }
    if den_sq == T::zero() {
        return Err(Error::ZeroDenominator("||P_Omega(m)||_F"));
    }
    Ok(num_sq.sqrt() / den_sq.sqrt())
}

/// Default trade-off parameter `1 / sqrt(max(n, t))`.
pub fn default_gamma<T: Scalar>(n: usize, t: usize) -> T {
    debug_assert!(n >= 1 && t >= 1);
    T::one() / T::from_usize(n.max(t)).unwrap().sqrt()
}

/// Hankel-tensor robust PCA on fully observed data.
///
/// Per iteration: the low-rank Hankel tensor is re-estimated by tensor
/// singular value thresholding of `H_tau(M - S + E/rho)` at level `1/rho`,
/// the sparse part by soft shrinkage of `M - L + E/rho` at level
/// `gamma/rho`, then the dual `E` ascends and `rho` grows by `beta` up to
/// `rho_max`. Stops when the relative residual drops below `tol`.
pub fn ht_rpca<T: Scalar>(m: &Matrix<T>, cfg: &SolverConfig<T>) -> Result<DecompositionResult<T>> {
    cfg.validate()?;
    cfg.validate_tau(m.ncols())?;
    if !m.is_finite() {
        return Err(Error::NonFinite("input matrix"));
    }
    let tau = cfg.tau;
    admm_loop(m, None, cfg, |work, shrink_level| {
        let lifted = hankelize(work, tau)?;
        Ok(dehankelize(&t_svt(&lifted, shrink_level)?))
    })
}

/// Hankel-tensor robust matrix completion on partially observed data.
///
/// Same iteration as [`ht_rpca`] plus an `M`-step: unobserved entries are
/// re-estimated as `L + S - E/rho` while observed entries stay pinned to the
/// input. The returned `completed` matrix equals `z` on the mask exactly.
pub fn ht_rmc<T: Scalar>(
    z: &Matrix<T>,
    mask: &ObservationMask,
    cfg: &SolverConfig<T>,
) -> Result<DecompositionResult<T>> {
    cfg.validate()?;
    cfg.validate_tau(z.ncols())?;
    if z.dims() != mask.dims() {
        return Err(Error::DimensionMismatch(format!(
            "ht_rmc: data {:?} vs mask {:?}",
            z.dims(),
            mask.dims()
        )));
    }
    for (&v, &obs) in z.as_slice().iter().zip(mask.as_slice()) {
        if obs && !v.is_finite() {
            return Err(Error::NonFinite("observed entries"));
        }
    }
    let tau = cfg.tau;
    admm_loop(z, Some(mask), cfg, |work, shrink_level| {
        let lifted = hankelize(work, tau)?;
        Ok(dehankelize(&t_svt(&lifted, shrink_level)?))
    })
}

/// Vanilla RPCA baseline: the same ADMM loop with matrix singular value
/// thresholding in place of the Hankel-tensor step (`tau` is ignored).
pub fn rpca<T: Scalar>(m: &Matrix<T>, cfg: &SolverConfig<T>) -> Result<DecompositionResult<T>> {
    cfg.validate()?;
    if !m.is_finite() {
        return Err(Error::NonFinite("input matrix"));
    }
    admm_loop(m, None, cfg, |work, shrink_level| matrix_svt(work, shrink_level))
}

/// Shared ADMM iteration. `l_update` maps `(M - S + E/rho, 1/rho)` to the new
/// low-rank estimate; with `mask = Some`, unobserved entries of `M` are
/// re-estimated each iteration (robust completion), otherwise `M` stays the
/// input.
fn admm_loop<T: Scalar>(
    z: &Matrix<T>,
    mask: Option<&ObservationMask>,
    cfg: &SolverConfig<T>,
    mut l_update: impl FnMut(&Matrix<T>, T) -> Result<Matrix<T>>,
) -> Result<DecompositionResult<T>> {
    let (n, t) = z.dims();

    // M starts as the observed data with unobserved entries zeroed.
    let mut m = match mask {
        None => z.clone(),
        Some(mk) => {
            let mut init = Matrix::zeros(n, t);
            for ((dst, &src), &obs) in
                init.as_mut_slice().iter_mut().zip(z.as_slice()).zip(mk.as_slice())
            {
                if obs {
                    *dst = src;
                }
            }
            init
        }
    };
    let mut s = Matrix::<T>::zeros(n, t);
    let mut e = Matrix::<T>::zeros(n, t);
    let mut l = Matrix::<T>::zeros(n, t);
    let mut rho = cfg.rho0;

    // P_Omega(M) never changes, so the residual denominator is fixed.
    let den_sq = match mask {
        None => m.as_slice().iter().fold(T::zero(), |acc, &v| acc + v * v),
        Some(mk) => m
            .as_slice()
            .iter()
            .zip(mk.as_slice())
            .filter(|(_, &obs)| obs)
            .fold(T::zero(), |acc, (&v, _)| acc + v * v),
    };
    let den = den_sq.sqrt();

    let mut history = Vec::new();
    let mut converged = false;
    let mut iterations = 0;

    let mut work = Matrix::<T>::zeros(n, t);
    while iterations < cfg.max_iter {
        iterations += 1;
        let inv_rho = T::one() / rho;

        // L-step: prox of the nuclear-norm term at M - S + E/rho.
        for (((w, &mv), &sv), &ev) in work
            .as_mut_slice()
            .iter_mut()
            .zip(m.as_slice())
            .zip(s.as_slice())
            .zip(e.as_slice())
        {
            *w = mv - sv + ev * inv_rho;
        }
        l = l_update(&work, inv_rho)?;

        // S-step: prox of the l1 term at M - L + E/rho.
        let level = cfg.gamma * inv_rho;
        for (((sv, &mv), &lv), &ev) in s
            .as_mut_slice()
            .iter_mut()
            .zip(m.as_slice())
            .zip(l.as_slice())
            .zip(e.as_slice())
        {
            *sv = shrink_scalar(mv - lv + ev * inv_rho, level);
        }

        // M-step (completion only): re-estimate unobserved entries.
        if let Some(mk) = mask {
            for (((&obs, mv), (&lv, &sv)), &ev) in mk
                .as_slice()
                .iter()
                .zip(m.as_mut_slice())
                .zip(l.as_slice().iter().zip(s.as_slice()))
                .zip(e.as_slice())
            {
                if !obs {
                    *mv = lv + sv - ev * inv_rho;
                }
            }
        }

        // Dual ascent (mask-free) and the masked residual, fused.
        let mut num_sq = T::zero();
        match mask {
            None => {
                for (((ev, &mv), &lv), &sv) in e
                    .as_mut_slice()
                    .iter_mut()
                    .zip(m.as_slice())
                    .zip(l.as_slice())
                    .zip(s.as_slice())
                {
                    let d = mv - lv - sv;
                    *ev += rho * d;
                    num_sq += d * d;
                }
            }
            Some(mk) => {
                for ((((ev, &mv), &lv), &sv), &obs) in e
                    .as_mut_slice()
                    .iter_mut()
                    .zip(m.as_slice())
                    .zip(l.as_slice())
                    .zip(s.as_slice())
                    .zip(mk.as_slice())
                {
                    let d = mv - lv - sv;
                    *ev += rho * d;
                    if obs {
                        num_sq += d * d;
                    }
                }
            }
        }
        rho = (rho * cfg.beta).min(cfg.rho_max);

        let num = num_sq.sqrt();
        let residual = if den == T::zero() { num } else { num / den };
        history.push(residual);
        if residual < cfg.tol {
            converged = true;
            break;
        }
    }

    Ok(DecompositionResult {
        low_rank: l,
        sparse: s,
        completed: mask.map(|_| m.clone()),
        iterations,
        residual_history: history,
        converged,
    })
}
