//! Evaluation: masked errors, the `xi`-sigma anomaly flag rule, and spectral
//! low-rank diagnostics.

use faer::MatRef;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{BoolMatrix, Matrix};
use crate::scalar::Scalar;
use crate::solvers::ObservationMask;

/// Masked error summary; `mae <= rmse` always.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalReport<T> {
    pub mae: T,
    pub rmse: T,
    /// Number of observed entries the errors were averaged over.
    pub observed_count: usize,
}

/// Parameters of the day-over-day anomaly flag rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlagParams<T> {
    /// Std-deviation multiplier.
    pub xi: T,
    /// Timestamps per day.
    pub period: usize,
    /// Number of days; `period * days` must equal the matrix width.
    pub days: usize,
}

/// MAE and RMSE of `s_hat` against `s_true` over the observed entries.
pub fn masked_errors<T: Scalar>(
    s_true: &Matrix<T>,
    s_hat: &Matrix<T>,
    mask: &ObservationMask,
) -> Result<EvalReport<T>> {
    if s_true.dims() != s_hat.dims() || s_true.dims() != mask.dims() {
        return Err(Error::DimensionMismatch(format!(
            "masked_errors: truth {:?}, estimate {:?}, mask {:?}",
            s_true.dims(),
            s_hat.dims(),
            mask.dims()
        )));
    }
    let mut abs_sum = T::zero();
    let mut sq_sum = T::zero();
    for ((&a, &b), &obs) in s_true.as_slice().iter().zip(s_hat.as_slice()).zip(mask.as_slice()) {
        if obs {
            let d = a - b;
            abs_sum += d.abs();
            sq_sum += d * d;
        }
    }
    let count = T::from_usize(mask.observed_count()).unwrap();
    Ok(EvalReport {
        mae: abs_sum / count,
        rmse: (sq_sum / count).sqrt(),
        observed_count: mask.observed_count(),
    })
}

/// Flags cell `(n, t)` of day `k` when its value deviates from the across-day
/// mean at that time-of-day by strictly more than `xi` population standard
/// deviations.
///
/// Each row is viewed as `days` blocks of `period` columns; means and sigmas
/// are taken over the `days` values at a fixed offset within the block.
pub fn flag_anomalies<T: Scalar>(m: &Matrix<T>, params: &FlagParams<T>) -> Result<BoolMatrix> {
    let (n, t) = m.dims();
    if params.period == 0 || params.days == 0 || params.period * params.days != t {
        return Err(Error::DimensionMismatch(format!(
            "flag_anomalies: period {} * days {} != T = {}",
            params.period, params.days, t
        )));
    }
    if params.xi < T::zero() {
        return Err(Error::InvalidParameter(format!("xi = {} must be >= 0", params.xi)));
    }
    let days = params.days;
    let days_t = T::from_usize(days).unwrap();
    let mut flags = BoolMatrix::filled(n, t, false);
    for row in 0..n {
        for offset in 0..params.period {
            let mut sum = T::zero();
            for k in 0..days {
                sum += m.get(row, k * params.period + offset);
            }
            let mean = sum / days_t;
            let mut var = T::zero();
            for k in 0..days {
                let d = m.get(row, k * params.period + offset) - mean;
                var += d * d;
            }
            let sigma = (var / days_t).sqrt();
            let band = params.xi * sigma;
            for k in 0..days {
                let col = k * params.period + offset;
                let v = m.get(row, col);
                if v > mean + band || v < mean - band {
                    flags.set(row, col, true);
                }
            }
        }
    }
    Ok(flags)
}

/// Cumulative singular-value percentage: element `k` is the fraction of the
/// total singular-value mass carried by the `k+1` largest singular values.
/// Nondecreasing, ends at exactly 1.
pub fn cumulative_eigenvalue_percentage<T: Scalar>(m: &Matrix<T>) -> Result<Vec<T>> {
    if m.max_abs() == T::zero() {
        return Err(Error::ZeroDenominator("singular value sum of the zero matrix"));
    }
    let view = MatRef::from_column_major_slice(m.as_slice(), m.nrows(), m.ncols());
    let sv = linalg::singular_values(view).map_err(|_| Error::FactorizationFailed { slice: 0 })?;
    let total = sv.iter().fold(T::zero(), |acc, &s| acc + s);
    let mut cum = T::zero();
    Ok(sv
        .iter()
        .map(|&s| {
            cum += s;
            cum / total
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn masked_errors_examples() {
        let truth = Matrix::from_rows(&[&[1.0, 2.0]]);
        let full = ObservationMask::full(1, 2);
        let r = masked_errors(&truth, &truth, &full).unwrap();
        assert_eq!((r.mae, r.rmse), (0.0, 0.0));

        // Single observed entry, error 2.
        let est = Matrix::from_rows(&[&[3.0, 99.0]]);
        let mut bm = BoolMatrix::filled(1, 2, false);
        bm.set(0, 0, true);
        let single = ObservationMask::new(bm).unwrap();
        let r = masked_errors(&truth, &est, &single).unwrap();
        assert_eq!((r.mae, r.rmse, r.observed_count), (2.0, 2.0, 1));

        // Two observed entries with errors (0, 2): MAE 1, RMSE sqrt(2).
        let est = Matrix::from_rows(&[&[1.0, 4.0]]);
        let r = masked_errors(&truth, &est, &full).unwrap();
        assert_eq!(r.mae, 1.0);
        assert!((r.rmse - 2f64.sqrt()).abs() < 1e-15);
        assert!(r.mae <= r.rmse);

        let wide = Matrix::from_rows(&[&[1.0, 2.0, 3.0]]);
        assert!(matches!(
            masked_errors(&truth, &wide, &full),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn flags_constant_matrix_is_empty() {
        let m = Matrix::from_fn(3, 10, |_, _| 4.2);
        let params = FlagParams { xi: 2.0, period: 2, days: 5 };
        let flags = flag_anomalies(&m, &params).unwrap();
        assert_eq!(flags.count_true(), 0);
    }

    #[test]
    fn flags_strict_inequality_boundary() {
        // Values (0,0,0,0,10): mean 2, population sigma 4. xi = 2 puts the
        // bound exactly at 10, and the strict inequality keeps it unflagged;
        // xi = 1.9 flags day 5.
        let m = Matrix::from_rows(&[&[0.0, 0.0, 0.0, 0.0, 10.0]]);
        let at_bound = FlagParams { xi: 2.0, period: 1, days: 5 };
        assert_eq!(flag_anomalies(&m, &at_bound).unwrap().count_true(), 0);
        let below = FlagParams { xi: 1.9, period: 1, days: 5 };
        let flags = flag_anomalies(&m, &below).unwrap();
        assert_eq!(flags.count_true(), 1);
        assert!(flags.get(0, 4));
    }

    #[test]
    fn flags_shape_mismatch() {
        let m = Matrix::from_fn(2, 10, |_, _| 0.0);
        let params = FlagParams { xi: 2.0, period: 3, days: 4 };
        assert!(matches!(flag_anomalies(&m, &params), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn flags_scale_invariant() {
        let m = Matrix::from_fn(2, 12, |i, j| ((i + 2 * j) as f64 * 0.7).sin() * 3.0);
        let params = FlagParams { xi: 1.5, period: 3, days: 4 };
        let base = flag_anomalies(&m, &params).unwrap();
        let scaled = flag_anomalies(&m.scale(10.0), &params).unwrap();
        assert_eq!(base, scaled);
    }

    #[test]
    fn cep_examples() {
        // Rank-1 matrix: first element already 1.
        let rank1 = Matrix::from_fn(3, 4, |i, j| ((i + 1) * (j + 1)) as f64);
        let cep = cumulative_eigenvalue_percentage(&rank1).unwrap();
        assert!((cep[0] - 1.0).abs() < 1e-12);
        assert_eq!(*cep.last().unwrap(), 1.0);

        let diag = Matrix::<f64>::from_rows(&[&[3.0, 0.0], &[0.0, 1.0]]);
        let cep = cumulative_eigenvalue_percentage(&diag).unwrap();
        assert!((cep[0] - 0.75f64).abs() < 1e-12);
        assert_eq!(cep[1], 1.0);

        for w in cep.windows(2) {
            assert!(w[1] >= w[0]);
        }
        assert!(matches!(
            cumulative_eigenvalue_percentage(&Matrix::<f64>::zeros(2, 2)),
            Err(Error::ZeroDenominator(_))
        ));
    }
}
