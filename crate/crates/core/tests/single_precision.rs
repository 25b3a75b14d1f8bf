//! The whole stack is generic over the scalar; exercise the f32
//! instantiation end to end with precision-appropriate tolerances.

use hankel_rpca::hankel::{dehankelize, hankelize};
use hankel_rpca::solvers::{ht_rpca, SolverConfig};
use hankel_rpca::tensor::{t_product, t_svt, tnn, Tensor3};
use hankel_rpca::Matrix;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn tensor_algebra_in_f32() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let a = Tensor3::<f32>::from_fn(3, 4, 5, |_, _, _| rng.random::<f32>() - 0.5);
    let id = Tensor3::<f32>::identity(4, 5);
    let p = t_product(&a, &id).unwrap();
    let err = a.sub(&p).fro_norm();
    assert!(err < 1e-5 * (1.0 + a.fro_norm()), "identity product error {err}");

    assert!(tnn(&a) > 0.0);
    let shrunk = t_svt(&a, 1e3).unwrap();
    assert!(shrunk.fro_norm() < 1e-4);
}

#[test]
fn hankel_roundtrip_in_f32() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let x = Matrix::<f32>::from_fn(4, 20, |_, _| rng.random::<f32>() - 0.5);
    let back = dehankelize(&hankelize(&x, 6).unwrap());
    assert_eq!(back, x, "averaging identical values is exact in f32 too");
}

#[test]
fn solver_runs_in_f32() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let m = Matrix::<f32>::from_fn(6, 40, |_, _| rng.random::<f32>() * 2.0 - 1.0);
    let mut cfg = SolverConfig::<f32>::new(5, 0.1);
    cfg.tol = 1e-4;
    let result = ht_rpca(&m, &cfg).unwrap();
    assert!(result.iterations >= 1);
    assert!(result.low_rank.is_finite() && result.sparse.is_finite());
}
