//! Normalized complex state vectors.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::matrix::SquareComplexMatrix;

/// A unit-norm complex vector.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<C64>,
}

impl StateVector {
    /// Normalize `amplitudes` to unit Euclidean norm.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidSpec("state dimension must be >= 1".into()));
        }
        let norm = norm_of(&amplitudes);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroState);
        }
        let amplitudes = amplitudes.into_iter().map(|a| a / norm).collect();
        Ok(Self { amplitudes })
    }

    /// Wrap amplitudes that are already unit norm (e.g. the output of a
    /// unitary applied to a state). Panics in debug builds if the norm has
    /// drifted past 1e-9.
    pub fn from_normalized(amplitudes: Vec<C64>) -> Self {
        debug_assert!(
            (norm_of(&amplitudes) - 1.0).abs() <= 1e-9,
            "from_normalized given a state with norm drift > 1e-9"
        );
        Self { amplitudes }
    }

    /// Basis vector `|k>` in a `dim`-dimensional space.
    pub fn basis_state(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index out of range");
        let mut amplitudes = vec![C64::new(0.0, 0.0); dim];
        amplitudes[k] = C64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        norm_of(&self.amplitudes)
    }

    /// Inner product `<self|other>` (conjugate-linear in `self`).
    pub fn inner(&self, other: &Self) -> C64 {
        assert_eq!(self.dim(), other.dim(), "inner product on mismatched dims");
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `matrix * self` as a new state (no renormalization).
    pub fn apply(&self, matrix: &SquareComplexMatrix) -> Result<Self> {
        Ok(Self {
            amplitudes: matrix.mul_vec(&self.amplitudes)?,
        })
    }

    /// Multiply by a global phase factor of unit modulus.
    pub fn phased(&self, phase: C64) -> Self {
        Self {
            amplitudes: self.amplitudes.iter().map(|a| a * phase).collect(),
        }
    }

    /// Euclidean distance to another vector of the same dimension.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "distance on mismatched dims");
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Expectation value `<self| M |self>` (real part; the caller is
    /// responsible for `M` being Hermitian).
    pub fn expectation(&self, matrix: &SquareComplexMatrix) -> Result<f64> {
        let mv = matrix.mul_vec(&self.amplitudes)?;
        let val: C64 = self
            .amplitudes
            .iter()
            .zip(&mv)
            .map(|(a, b)| a.conj() * b)
            .sum();
        Ok(val.re)
    }
}

fn norm_of(amplitudes: &[C64]) -> f64 {
    amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}
