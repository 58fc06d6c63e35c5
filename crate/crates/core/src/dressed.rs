//! The dressed-operator machinery: `W(tau) = G^dag U(tau)`, its eigensystem,
//! and the gate-conjugated Hamiltonian `G^dag H(t) G`.
//!
//! Any eigenvector of `W(tau)` is an initial state from which the bare
//! evolution realizes the gate `G` up to the eigenphase: `U(tau) psi =
//! e^{i phi} G psi`. That identity is exact, and it is what makes the
//! eigenphases physically meaningful.

use std::sync::Arc;

use crate::eig::{unitary_eig, UNITARY_TOL};
use crate::error::{Error, Result};
use crate::matrix::SquareComplexMatrix;
use crate::schedule::{HamiltonianSchedule, Segment};
use crate::state::StateVector;

/// Eigensystem of the dressed operator, together with the operators that
/// produced it.
#[derive(Clone, Debug)]
pub struct DressedDecomposition {
    pub gate: SquareComplexMatrix,
    pub propagator: SquareComplexMatrix,
    pub dressed_operator: SquareComplexMatrix,
    /// Principal-value eigenphases in `(-pi, pi]`, ascending.
    pub eigenphases: Vec<f64>,
    /// Orthonormal dressed initial states, matching `eigenphases`.
    pub dressed_states: Vec<StateVector>,
}

impl DressedDecomposition {
    /// Largest gate-realization residual
    /// `max_k ||U psi_k - e^{i phi_k} G psi_k||_2`.
    pub fn gate_realization_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        for (phase, state) in self.eigenphases.iter().zip(&self.dressed_states) {
            let lhs = self.propagator.mul_vec(state.amplitudes()).unwrap();
            let g_psi = self.gate.mul_vec(state.amplitudes()).unwrap();
            let factor = num_complex::Complex64::from_polar(1.0, *phase);
            let res: f64 = lhs
                .iter()
                .zip(&g_psi)
                .map(|(a, b)| (a - b * factor).norm_sqr())
                .sum::<f64>()
                .sqrt();
            worst = worst.max(res);
        }
        worst
    }

    /// Largest eigen-residual `max_k ||W psi_k - e^{i phi_k} psi_k||_2`.
    pub fn eigen_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        for (phase, state) in self.eigenphases.iter().zip(&self.dressed_states) {
            let wv = self.dressed_operator.mul_vec(state.amplitudes()).unwrap();
            let factor = num_complex::Complex64::from_polar(1.0, *phase);
            let res: f64 = wv
                .iter()
                .zip(state.amplitudes())
                .map(|(a, b)| (a - b * factor).norm_sqr())
                .sum::<f64>()
                .sqrt();
            worst = worst.max(res);
        }
        worst
    }
}

/// `W = G^dag U`. Both inputs must be unitary within `1e-9`.
pub fn dressed_operator(
    gate: &SquareComplexMatrix,
    propagator: &SquareComplexMatrix,
) -> Result<SquareComplexMatrix> {
    if gate.dim() != propagator.dim() {
        return Err(Error::DimMismatch {
            context: "dressed operator",
            left: gate.dim(),
            right: propagator.dim(),
        });
    }
    gate.check_unitary(UNITARY_TOL)?;
    propagator.check_unitary(UNITARY_TOL)?;
    gate.adjoint().mul(propagator)
}

/// The gate-conjugated Hamiltonian `G^dag H G`.
pub fn dressed_hamiltonian(
    gate: &SquareComplexMatrix,
    hamiltonian: &SquareComplexMatrix,
) -> Result<SquareComplexMatrix> {
    if gate.dim() != hamiltonian.dim() {
        return Err(Error::DimMismatch {
            context: "dressed Hamiltonian",
            left: gate.dim(),
            right: hamiltonian.dim(),
        });
    }
    gate.adjoint().mul(hamiltonian)?.mul(gate)
}

/// Diagonalize `W = G^dag U` and package the dressed states.
pub fn dressed_eigensystem(
    gate: &SquareComplexMatrix,
    propagator: &SquareComplexMatrix,
) -> Result<DressedDecomposition> {
    let w = dressed_operator(gate, propagator)?;
    let eig = unitary_eig(&w)?;
    let dressed_states = (0..w.dim())
        .map(|k| StateVector::from_normalized(eig.vectors.column(k)))
        .collect();
    Ok(DressedDecomposition {
        gate: gate.clone(),
        propagator: propagator.clone(),
        dressed_operator: w,
        eigenphases: eig.phases,
        dressed_states,
    })
}

/// Conjugate every segment of a schedule by the gate, producing the schedule
/// of the dressed Hamiltonian `G^dag H(t) G`.
pub fn dressed_schedule(
    gate: &SquareComplexMatrix,
    schedule: &HamiltonianSchedule,
) -> Result<HamiltonianSchedule> {
    if gate.dim() != schedule.dim() {
        return Err(Error::DimMismatch {
            context: "dressed schedule",
            left: gate.dim(),
            right: schedule.dim(),
        });
    }
    let segments = schedule
        .segments()
        .iter()
        .map(|seg| match seg {
            Segment::Constant { matrix, duration } => Ok(Segment::Constant {
                matrix: dressed_hamiltonian(gate, matrix)?,
                duration: *duration,
            }),
            Segment::Sampled {
                generator,
                duration,
                sample_count,
            } => {
                let gate = gate.clone();
                let inner = generator.clone();
                Ok(Segment::Sampled {
                    generator: Arc::new(move |t| {
                        dressed_hamiltonian(&gate, &inner(t))
                            .expect("dimensions validated at construction")
                    }),
                    duration: *duration,
                    sample_count: *sample_count,
                })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    HamiltonianSchedule::new(segments)
}
