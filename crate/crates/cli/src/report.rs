//! JSON run report.

use serde::Serialize;

/// Flat summary of one solver run; field order is the serialized key order.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub solver: String,
    pub tau: usize,
    pub gamma: f64,
    pub rho0: f64,
    pub beta: f64,
    pub rho_max: f64,
    pub tol: f64,
    pub max_iter: usize,
    pub iterations: usize,
    pub converged: bool,
    pub final_residual: f64,
    /// Tensor nuclear norm of the recovered low-rank component's Hankel
    /// embedding (plain nuclear norm for the matrix solver).
    pub tnn_final: f64,
    /// Fraction of sparse-component entries with magnitude above 1e-12.
    pub sparse_nonzero_ratio: f64,
    pub wall_time_ms: u64,
    pub residual_history: Vec<f64>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }
}
