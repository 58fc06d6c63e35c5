//! The two-stage qubit schedule (z precession, then x drive) and plain
//! rotation gates.

use std::f64::consts::PI;

use crate::eig::evolve_exp;
use crate::error::{Error, Result};
use crate::matrix::SquareComplexMatrix;
use crate::schedule::{HamiltonianSchedule, Segment};

/// Parameters of the two-stage schedule: `w sigma_z` on `(0, delta)` then
/// `omega sigma_x` until the accumulated x angle reaches `theta0`.
#[derive(Clone, Copy, Debug)]
pub struct QubitScheduleSpec {
    /// z-stage rate.
    pub z_rate: f64,
    /// z-stage duration delta.
    pub z_duration: f64,
    /// x-stage rate omega.
    pub x_rate: f64,
    /// Target x rotation angle theta0 in (0, 2 pi).
    pub target_angle: f64,
}

impl QubitScheduleSpec {
    pub fn new(z_rate: f64, z_duration: f64, x_rate: f64, target_angle: f64) -> Result<Self> {
        if z_duration <= 0.0 || !z_duration.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "z-stage duration must be positive, got {z_duration}"
            )));
        }
        if x_rate <= 0.0 || !x_rate.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "x-stage rate must be positive, got {x_rate}"
            )));
        }
        if !(target_angle > 0.0 && target_angle < 2.0 * PI) {
            return Err(Error::InvalidSpec(format!(
                "target angle must lie in (0, 2 pi), got {target_angle}"
            )));
        }
        if !z_rate.is_finite() {
            return Err(Error::InvalidSpec("z-stage rate must be finite".into()));
        }
        Ok(Self {
            z_rate,
            z_duration,
            x_rate,
            target_angle,
        })
    }

    /// Product of z rate and duration; the phase that parameterizes the
    /// dressed eigenvalues.
    pub fn z_angle(&self) -> f64 {
        self.z_rate * self.z_duration
    }

    /// Total schedule duration `delta + theta0 / omega`.
    pub fn total_duration(&self) -> f64 {
        self.z_duration + self.target_angle / self.x_rate
    }
}

/// Two constant segments: `(w sigma_z, delta)` then
/// `(omega sigma_x, theta0 / omega)`.
pub fn build_qubit_schedule(spec: &QubitScheduleSpec) -> Result<HamiltonianSchedule> {
    HamiltonianSchedule::new(vec![
        Segment::Constant {
            matrix: SquareComplexMatrix::pauli_z().scale_re(spec.z_rate),
            duration: spec.z_duration,
        },
        Segment::Constant {
            matrix: SquareComplexMatrix::pauli_x().scale_re(spec.x_rate),
            duration: spec.target_angle / spec.x_rate,
        },
    ])
}

/// Rotation axis for `build_rotation_gate`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// `exp(-i theta0 sigma_axis)`.
pub fn build_rotation_gate(theta0: f64, axis: Axis) -> SquareComplexMatrix {
    let pauli = match axis {
        Axis::X => SquareComplexMatrix::pauli_x(),
        Axis::Y => SquareComplexMatrix::pauli_y(),
        Axis::Z => SquareComplexMatrix::pauli_z(),
    };
    evolve_exp(&pauli, theta0).expect("pauli matrices are exactly Hermitian")
}
