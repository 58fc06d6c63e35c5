//! Seeded random models for property checks: Haar-like unitaries, Gaussian
//! Hermitian matrices, and random piecewise schedules.

use std::sync::Arc;

use num_complex::Complex64 as C64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matrix::SquareComplexMatrix;
use crate::schedule::{HamiltonianSchedule, Segment};
use crate::state::StateVector;

/// Deterministic generator for a given seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard normal via Box-Muller.
fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

fn gaussian_complex(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(gaussian(rng), gaussian(rng))
}

/// Gaussian Hermitian matrix `(A + A^dag)/2` scaled by `scale`.
pub fn random_hermitian(dim: usize, scale: f64, rng: &mut ChaCha8Rng) -> SquareComplexMatrix {
    let a = SquareComplexMatrix::from_fn(dim, |_, _| gaussian_complex(rng));
    a.add(&a.adjoint()).unwrap().scale_re(0.5 * scale)
}

/// Haar-like random unitary: modified Gram-Schmidt applied to the columns
/// of a complex Gaussian matrix.
pub fn random_unitary(dim: usize, rng: &mut ChaCha8Rng) -> SquareComplexMatrix {
    let a = SquareComplexMatrix::from_fn(dim, |_, _| gaussian_complex(rng));
    let mut q = SquareComplexMatrix::zeros(dim);
    for col in 0..dim {
        let mut v: Vec<C64> = (0..dim).map(|row| a[(row, col)]).collect();
        for prev in 0..col {
            let proj: C64 = (0..dim).map(|row| q[(row, prev)].conj() * v[row]).sum();
            for row in 0..dim {
                let correction = proj * q[(row, prev)];
                v[row] -= correction;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for row in 0..dim {
            q[(row, col)] = v[row] / norm;
        }
    }
    q
}

/// Random unit state vector.
pub fn random_state(dim: usize, rng: &mut ChaCha8Rng) -> StateVector {
    StateVector::new((0..dim).map(|_| gaussian_complex(rng)).collect())
        .expect("gaussian vector is nonzero with probability one")
}

/// Random schedule: one to three segments, each either constant or a
/// smoothly oscillating sampled generator.
pub fn random_schedule(dim: usize, rng: &mut ChaCha8Rng) -> HamiltonianSchedule {
    let n_segments = rng.random_range(1..=3usize);
    let segments = (0..n_segments)
        .map(|_| {
            let duration = rng.random_range(0.3..1.0);
            if rng.random::<bool>() {
                Segment::Constant {
                    matrix: random_hermitian(dim, 1.0, rng),
                    duration,
                }
            } else {
                let h0 = random_hermitian(dim, 1.0, rng);
                let h1 = random_hermitian(dim, 0.5, rng);
                let omega = rng.random_range(0.5..4.0);
                let offset = rng.random_range(0.0..std::f64::consts::TAU);
                Segment::Sampled {
                    generator: Arc::new(move |t: f64| {
                        h0.add(&h1.scale_re((omega * t + offset).cos())).unwrap()
                    }),
                    duration,
                    sample_count: rng.random_range(24..=48usize),
                }
            }
        })
        .collect();
    HamiltonianSchedule::new(segments).expect("random segments are valid by construction")
}
