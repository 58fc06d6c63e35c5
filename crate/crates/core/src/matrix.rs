//! Dense square complex matrices in row-major layout.
//!
//! Everything in this crate lives at desk scale (dimensions of a few to a few
//! dozen), so the representation is a plain `Vec<Complex64>` and the
//! operations are straightforward triple loops. Values are immutable after
//! construction in all public pipelines and safe to share across threads.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Absolute floor used when scaling Hermiticity/unitarity tolerances.
fn scale_of(max_abs: f64) -> f64 {
    max_abs.max(1.0)
}

/// A dense `dim x dim` complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareComplexMatrix {
    dim: usize,
    entries: Vec<C64>,
}

impl SquareComplexMatrix {
    /// Build from row-major entries. `entries.len()` must equal `dim * dim`.
    pub fn new(dim: usize, entries: Vec<C64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidSpec("matrix dimension must be >= 1".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimMismatch {
                context: "matrix construction",
                left: dim * dim,
                right: entries.len(),
            });
        }
        Ok(Self { dim, entries })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    /// Pauli x on a 2-dimensional space.
    pub fn pauli_x() -> Self {
        Self::new(
            2,
            vec![
                C64::new(0.0, 0.0),
                C64::new(1.0, 0.0),
                C64::new(1.0, 0.0),
                C64::new(0.0, 0.0),
            ],
        )
        .unwrap()
    }

    /// Pauli y on a 2-dimensional space.
    pub fn pauli_y() -> Self {
        Self::new(
            2,
            vec![
                C64::new(0.0, 0.0),
                C64::new(0.0, -1.0),
                C64::new(0.0, 1.0),
                C64::new(0.0, 0.0),
            ],
        )
        .unwrap()
    }

    /// Pauli z on a 2-dimensional space.
    pub fn pauli_z() -> Self {
        Self::new(
            2,
            vec![
                C64::new(1.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(-1.0, 0.0),
            ],
        )
        .unwrap()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(C64::new(factor, 0.0))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other, "matrix addition")?;
        Ok(Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other, "matrix subtraction")?;
        Ok(Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other, "matrix multiplication")?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.dim {
            return Err(Error::DimMismatch {
                context: "matrix-vector product",
                left: self.dim,
                right: v.len(),
            });
        }
        let n = self.dim;
        let mut out = vec![C64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..n {
                acc += self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest modulus of `H[i][j] - conj(H[j][i])`.
    pub fn hermitian_asymmetry(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Reject matrices whose asymmetry exceeds `tol` scaled by the entry size.
    pub fn check_hermitian(&self, tol: f64) -> Result<()> {
        let asym = self.hermitian_asymmetry();
        let tolerance = tol * scale_of(self.max_abs());
        if asym > tolerance {
            return Err(Error::NotHermitian {
                max_asymmetry: asym,
                tolerance,
            });
        }
        Ok(())
    }

    /// Largest entry modulus of `U^dag U - I`.
    pub fn unitarity_deviation(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..n {
                    acc += self[(k, i)].conj() * self[(k, j)];
                }
                if i == j {
                    acc -= C64::new(1.0, 0.0);
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }

    pub fn check_unitary(&self, tol: f64) -> Result<()> {
        let dev = self.unitarity_deviation();
        if dev > tol {
            return Err(Error::NotUnitary {
                max_deviation: dev,
                tolerance: tol,
            });
        }
        Ok(())
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff on mismatched dims");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Column `j` as a plain vector.
    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    fn check_same_dim(&self, other: &Self, context: &'static str) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch {
                context,
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for SquareComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for SquareComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.entries[i * self.dim + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_unitary_and_hermitian() {
        let id = SquareComplexMatrix::identity(4);
        assert!(id.unitarity_deviation() < 1e-15);
        assert!(id.hermitian_asymmetry() < 1e-15);
    }

    #[test]
    fn pauli_algebra() {
        let x = SquareComplexMatrix::pauli_x();
        let y = SquareComplexMatrix::pauli_y();
        let z = SquareComplexMatrix::pauli_z();
        // xy = iz
        let xy = x.mul(&y).unwrap();
        let iz = z.scale(C64::new(0.0, 1.0));
        assert!(xy.max_abs_diff(&iz) < 1e-15);
        for p in [&x, &y, &z] {
            assert!(p.hermitian_asymmetry() < 1e-15);
            assert!(p.unitarity_deviation() < 1e-15);
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(SquareComplexMatrix::new(2, vec![C64::new(1.0, 0.0); 3]).is_err());
        assert!(SquareComplexMatrix::new(0, vec![]).is_err());
    }

    #[test]
    fn non_hermitian_is_named_in_error() {
        let mut m = SquareComplexMatrix::zeros(2);
        m[(0, 1)] = C64::new(1.0, 0.0);
        let err = m.check_hermitian(1e-12).unwrap_err();
        match err {
            Error::NotHermitian { max_asymmetry, .. } => {
                assert!((max_asymmetry - 1.0).abs() < 1e-15)
            }
            other => panic!("unexpected error {other:?}"),
        }
    }
}
