//! Seeded generator for corrupted periodic benchmark time series and random
//! observation masks.
//!
//! The generated matrix is `low_rank + sparse + noise`: a rank-`r` product of
//! a Gaussian factor and sinusoidal rows, plus Gaussian-magnitude anomalies
//! on a uniformly sampled index set, plus dense Gaussian noise. Every draw
//! comes from a fixed-order set of ChaCha streams derived from one seed, so
//! datasets are bit-reproducible.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use faer::MatRef;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{BoolMatrix, Matrix};
use crate::scalar::Scalar;
use crate::solvers::ObservationMask;

/// Generator parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig<T> {
    /// Number of series (rows).
    pub n: usize,
    /// Number of timestamps (columns).
    pub t: usize,
    /// True rank of the clean component.
    pub r: usize,
    /// Std of the Gaussian factor entries.
    pub sigma_u: T,
    /// Std of the anomaly magnitudes.
    pub sigma_s: T,
    /// Std of the dense noise (may be zero).
    pub sigma_noise: T,
    /// Fraction of cells carrying an anomaly, in `[0, 1]`.
    pub anomaly_ratio: T,
    pub seed: u64,
}

impl<T: Scalar> SynthConfig<T> {
    /// The standard benchmark configuration: 100 series, 1200 timestamps,
    /// rank 4, `sigma_u = 20`, `sigma_s = 40`, `sigma_noise = 0.1`, 10%
    /// anomalies.
    pub fn benchmark(seed: u64) -> Self {
        Self {
            n: 100,
            t: 1200,
            r: 4,
            sigma_u: T::from_f64_c(20.0),
            sigma_s: T::from_f64_c(40.0),
            sigma_noise: T::from_f64_c(0.1),
            anomaly_ratio: T::from_f64_c(0.1),
            seed,
        }
    }

    // Negated comparisons so NaN fields fail validation.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<()> {
        if self.n < 1 || self.t < 1 {
            return Err(Error::InvalidParameter("n and t must be >= 1".into()));
        }
        if self.r < 1 || self.r > self.n.min(self.t) {
            return Err(Error::InvalidParameter(format!(
                "r = {} must satisfy 1 <= r <= min(n, t) = {}",
                self.r,
                self.n.min(self.t)
            )));
        }
        if !(self.sigma_u > T::zero()) || !(self.sigma_s > T::zero()) {
            return Err(Error::InvalidParameter("sigma_u and sigma_s must be > 0".into()));
        }
        if !(self.sigma_noise >= T::zero()) {
            return Err(Error::InvalidParameter("sigma_noise must be >= 0".into()));
        }
        if !(self.anomaly_ratio >= T::zero() && self.anomaly_ratio <= T::one()) {
            return Err(Error::InvalidParameter("anomaly_ratio must be in [0, 1]".into()));
        }
        Ok(())
    }
}

/// Generated dataset. `corrupted` is assembled as
/// `(low_rank + sparse) + noise` in exactly that order, so the identity can
/// be re-checked bitwise; `noise` is retained for that purpose.
#[derive(Debug, Clone)]
pub struct SynthDataset<T> {
    pub corrupted: Matrix<T>,
    pub low_rank: Matrix<T>,
    pub sparse: Matrix<T>,
    /// Anomaly positions `(row, col)`, sorted by column-major linear index.
    pub anomaly_index: Vec<(usize, usize)>,
    /// The dense noise draw.
    pub noise: Matrix<T>,
}

// Sub-stream ids; fixed so later additions never perturb earlier draws.
const STREAM_FACTOR: u64 = 0;
const STREAM_ANOMALY_POSITIONS: u64 = 1;
const STREAM_ANOMALY_VALUES: u64 = 2;
const STREAM_NOISE: u64 = 3;

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

/// Draws the benchmark dataset described by `cfg`. All randomness derives
/// from `cfg.seed`; identical configs produce bit-identical datasets.
pub fn gen_synthetic<T: Scalar>(cfg: &SynthConfig<T>) -> Result<SynthDataset<T>> {
    cfg.validate()?;
    let (n, t, r) = (cfg.n, cfg.t, cfg.r);

    // Factor U ~ N(0, sigma_u^2), filled in column-major order.
    let mut rng = stream(cfg.seed, STREAM_FACTOR);
    let normal_u = Normal::new(0.0f64, cfg.sigma_u.to_f64().unwrap()).unwrap();
    let u = Matrix::from_col_major(
        n,
        r,
        (0..n * r).map(|_| T::from_f64_c(normal_u.sample(&mut rng))).collect(),
    );

    // Sinusoidal rows: row r evaluated on the grid t = 0.1, 0.2, ...
    let quarter_pi = T::from_f64_c(std::f64::consts::FRAC_PI_4);
    let ten = T::from_f64_c(10.0);
    let v = Matrix::from_fn(r, t, |ri, tj| {
        let row = T::from_usize(ri + 1).unwrap();
        let time = T::from_usize(tj + 1).unwrap() / ten;
        (quarter_pi * row * time + quarter_pi * row).sin()
    });

    let mut low_rank = Matrix::zeros(n, t);
    linalg::gemm_into(
        faer::MatMut::from_column_major_slice_mut(low_rank.as_mut_slice(), n, t),
        MatRef::from_column_major_slice(u.as_slice(), n, r),
        MatRef::from_column_major_slice(v.as_slice(), r, t),
    );

    // Anomaly support, uniform without replacement, sorted by linear index.
    let ratio = cfg.anomaly_ratio.to_f64().unwrap();
    let count = (ratio * (n * t) as f64).round() as usize;
    let mut rng = stream(cfg.seed, STREAM_ANOMALY_POSITIONS);
    let mut cells: Vec<usize> = rand::seq::index::sample(&mut rng, n * t, count).into_vec();
    cells.sort_unstable();

    // Anomaly magnitudes ~ N(0, sigma_s^2), drawn in index order.
    let mut rng = stream(cfg.seed, STREAM_ANOMALY_VALUES);
    let normal_s = Normal::new(0.0f64, cfg.sigma_s.to_f64().unwrap()).unwrap();
    let mut sparse = Matrix::zeros(n, t);
    let mut anomaly_index = Vec::with_capacity(count);
    for &c in &cells {
        sparse.as_mut_slice()[c] = T::from_f64_c(normal_s.sample(&mut rng));
        anomaly_index.push((c % n, c / n));
    }

    // Dense noise ~ N(0, sigma_noise^2).
    let mut noise = Matrix::zeros(n, t);
    if cfg.sigma_noise > T::zero() {
        let mut rng = stream(cfg.seed, STREAM_NOISE);
        let normal_e = Normal::new(0.0f64, cfg.sigma_noise.to_f64().unwrap()).unwrap();
        for v in noise.as_mut_slice() {
            *v = T::from_f64_c(normal_e.sample(&mut rng));
        }
    }

    let corrupted = low_rank.add(&sparse).add(&noise);
    Ok(SynthDataset { corrupted, low_rank, sparse, anomaly_index, noise })
}

/// Random observation mask with exactly `round(missing_ratio * n * t)`
/// unobserved entries, uniform without replacement.
pub fn gen_mask(n: usize, t: usize, missing_ratio: f64, seed: u64) -> Result<ObservationMask> {
    if !(0.0..1.0).contains(&missing_ratio) {
        return Err(Error::InvalidParameter(format!(
            "missing_ratio = {missing_ratio} must be in [0, 1)"
        )));
    }
    let count = (missing_ratio * (n * t) as f64).round() as usize;
    let mut rng = stream(seed, 0);
    let missing = rand::seq::index::sample(&mut rng, n * t, count);
    let mut mask = BoolMatrix::filled(n, t, true);
    for c in missing {
        mask.set(c % n, c / n, false);
    }
    ObservationMask::new(mask)
}
