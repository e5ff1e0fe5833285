//! Seeded random rational data for the verifiers.

use num::traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::Matrix;
use crate::scalar::{q, Scalar};

pub type TrialRng = ChaCha8Rng;

pub const SEED_ENV: &str = "STABLEFORMS_SEED";

/// RNG seeded from `STABLEFORMS_SEED` when set, else from `default`.
pub fn rng_from_env(default: u64) -> TrialRng {
    let seed = std::env::var(SEED_ENV).ok().and_then(|s| s.trim().parse::<u64>().ok()).unwrap_or(default);
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rng(seed: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rational with numerator in `-bound..=bound` and denominator in `1..=3`.
pub fn rational<R: Rng>(rng: &mut R, bound: i64) -> Scalar {
    q(rng.gen_range(-bound..=bound), rng.gen_range(1..=3))
}

pub fn vector<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<Scalar> {
    (0..n).map(|_| rational(rng, bound)).collect()
}

pub fn matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> Matrix<Scalar> {
    Matrix::from_fn(rows, cols, |_, _| rational(rng, bound))
}

/// Random invertible rational matrix.
pub fn invertible<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Matrix<Scalar> {
    loop {
        let m = matrix(rng, n, n, bound);
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Random rational skew-symmetric matrix.
pub fn skew<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Matrix<Scalar> {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let x = rational(rng, bound);
            m[(j, i)] = -x.clone();
            m[(i, j)] = x;
        }
    }
    m
}

/// Random rational rotation via the Cayley transform `(I − A)(I + A)⁻¹`.
pub fn rotation<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Matrix<Scalar> {
    let a = skew(rng, n, bound);
    let id = Matrix::identity(n);
    let inv = id.add(&a).inverse().expect("I + A is invertible for skew A");
    id.sub(&a).mul(&inv)
}
