//! Time-dependent Hamiltonians as ordered segment lists, and the piecewise
//! propagator built from them.
//!
//! Constant segments are integrated with a single exact exponential per step
//! (all steps share one eigendecomposition). Sampled segments use the
//! midpoint exponential `exp(-i H(t_mid) dt)`, which is exactly unitary at
//! every step and second-order accurate in the step size.

use std::fmt;
use std::sync::Arc;

use crate::eig::{evolve_exp, exp_from_eig, hermitian_eig, HERMITIAN_TOL};
use crate::error::{Error, Result};
use crate::matrix::SquareComplexMatrix;
use crate::state::StateVector;

/// Generator closure for a sampled segment: local time -> Hermitian matrix.
pub type Generator = Arc<dyn Fn(f64) -> SquareComplexMatrix + Send + Sync>;

/// One piece of a `HamiltonianSchedule`.
#[derive(Clone)]
pub enum Segment {
    /// A constant Hamiltonian held for `duration`.
    Constant {
        matrix: SquareComplexMatrix,
        duration: f64,
    },
    /// A smoothly sampled Hamiltonian; `sample_count` midpoint steps span
    /// `duration`.
    Sampled {
        generator: Generator,
        duration: f64,
        sample_count: usize,
    },
}

impl Segment {
    pub fn duration(&self) -> f64 {
        match self {
            Segment::Constant { duration, .. } => *duration,
            Segment::Sampled { duration, .. } => *duration,
        }
    }

    /// Number of steps this segment contributes given the caller's
    /// per-segment sampling for constant segments. Sampled segments always
    /// use their own `sample_count`.
    pub fn step_count(&self, samples_per_segment: usize) -> usize {
        match self {
            Segment::Constant { .. } => samples_per_segment,
            Segment::Sampled { sample_count, .. } => *sample_count,
        }
    }

    /// Hamiltonian at a segment-local time.
    pub fn hamiltonian_at(&self, local_t: f64) -> SquareComplexMatrix {
        match self {
            Segment::Constant { matrix, .. } => matrix.clone(),
            Segment::Sampled { generator, .. } => generator(local_t),
        }
    }

    fn dim(&self, probe_at: f64) -> usize {
        match self {
            Segment::Constant { matrix, .. } => matrix.dim(),
            Segment::Sampled { generator, .. } => generator(probe_at).dim(),
        }
    }
}

impl fmt::Debug for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Segment::Constant { matrix, duration } => f
                .debug_struct("Constant")
                .field("dim", &matrix.dim())
                .field("duration", duration)
                .finish(),
            Segment::Sampled {
                duration,
                sample_count,
                ..
            } => f
                .debug_struct("Sampled")
                .field("duration", duration)
                .field("sample_count", sample_count)
                .finish(),
        }
    }
}

/// An ordered list of Hamiltonian segments with positive total duration.
#[derive(Clone, Debug)]
pub struct HamiltonianSchedule {
    segments: Vec<Segment>,
    dim: usize,
}

impl HamiltonianSchedule {
    /// Validate segment durations, dimensions, and (for constant segments)
    /// Hermiticity, then assemble the schedule.
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidSpec(
                "schedule must contain at least one segment".into(),
            ));
        }
        let dim = segments[0].dim(0.0);
        for seg in &segments {
            if seg.duration() <= 0.0 || !seg.duration().is_finite() {
                return Err(Error::InvalidSpec(format!(
                    "segment duration must be positive and finite, got {}",
                    seg.duration()
                )));
            }
            if let Segment::Sampled { sample_count, .. } = seg {
                if *sample_count == 0 {
                    return Err(Error::InvalidSpec(
                        "sampled segment needs sample_count >= 1".into(),
                    ));
                }
            }
            if seg.dim(0.0) != dim {
                return Err(Error::DimMismatch {
                    context: "schedule segments",
                    left: dim,
                    right: seg.dim(0.0),
                });
            }
            if let Segment::Constant { matrix, .. } = seg {
                matrix.check_hermitian(HERMITIAN_TOL)?;
            }
        }
        Ok(Self { segments, dim })
    }

    /// Single constant segment.
    pub fn constant(matrix: SquareComplexMatrix, duration: f64) -> Result<Self> {
        Self::new(vec![Segment::Constant { matrix, duration }])
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn total_duration(&self) -> f64 {
        self.segments.iter().map(|s| s.duration()).sum()
    }
}

/// Sampled path of a propagated state: times from 0 to the schedule
/// duration, the state at each time, and the per-step unitaries.
#[derive(Clone, Debug)]
pub struct Trajectory {
    times: Vec<f64>,
    states: Vec<StateVector>,
    step_propagators: Vec<SquareComplexMatrix>,
}

impl Trajectory {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[StateVector] {
        &self.states
    }

    pub fn step_propagators(&self) -> &[SquareComplexMatrix] {
        &self.step_propagators
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Largest deviation of any stored state norm from 1.
    pub fn max_norm_drift(&self) -> f64 {
        self.states
            .iter()
            .map(|s| (s.norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Check the structural invariants: strictly increasing times starting
    /// at 0, and norm drift below `1e-9`.
    pub fn validate(&self, expected_duration: f64) -> Result<()> {
        if self.times.len() < 2 {
            return Err(Error::InvalidSpec("trajectory needs >= 2 samples".into()));
        }
        if self.times[0] != 0.0 {
            return Err(Error::InvalidSpec("trajectory must start at t = 0".into()));
        }
        for pair in self.times.windows(2) {
            let increasing = matches!(
                pair[1].partial_cmp(&pair[0]),
                Some(std::cmp::Ordering::Greater)
            );
            if !increasing {
                return Err(Error::InvalidSpec(
                    "trajectory times must be strictly increasing".into(),
                ));
            }
        }
        let last = *self.times.last().unwrap();
        if (last - expected_duration).abs() > 1e-9 * expected_duration.max(1.0) {
            return Err(Error::InvalidSpec(format!(
                "trajectory ends at {last}, expected {expected_duration}"
            )));
        }
        if self.max_norm_drift() > 1e-9 {
            return Err(Error::InvalidSpec(format!(
                "trajectory norm drift {} exceeds 1e-9",
                self.max_norm_drift()
            )));
        }
        Ok(())
    }
}

/// Propagate `psi0` through the schedule.
///
/// Returns the total propagator (ordered product of step unitaries, later
/// steps on the left) and the sampled trajectory. `samples_per_segment`
/// controls the step resolution of constant segments; sampled segments carry
/// their own counts.
pub fn propagate(
    schedule: &HamiltonianSchedule,
    psi0: &StateVector,
    samples_per_segment: usize,
) -> Result<(SquareComplexMatrix, Trajectory)> {
    if samples_per_segment == 0 {
        return Err(Error::InvalidSpec(
            "samples_per_segment must be >= 1".into(),
        ));
    }
    if psi0.dim() != schedule.dim() {
        return Err(Error::DimMismatch {
            context: "propagate initial state",
            left: schedule.dim(),
            right: psi0.dim(),
        });
    }

    let mut u_total = SquareComplexMatrix::identity(schedule.dim());
    let mut times = vec![0.0_f64];
    let mut states = vec![psi0.clone()];
    let mut steps: Vec<SquareComplexMatrix> = Vec::new();
    let mut psi = psi0.clone();
    let mut segment_start = 0.0_f64;

    for seg in schedule.segments() {
        let m = seg.step_count(samples_per_segment);
        let dt = seg.duration() / m as f64;
        match seg {
            Segment::Constant { matrix, .. } => {
                let eig = hermitian_eig(matrix)?;
                let u_step = exp_from_eig(&eig, dt);
                for j in 0..m {
                    psi = psi.apply(&u_step)?;
                    u_total = u_step.mul(&u_total)?;
                    push_sample(
                        &mut times,
                        &mut states,
                        segment_start,
                        seg.duration(),
                        dt,
                        j,
                        m,
                        &psi,
                    );
                    steps.push(u_step.clone());
                }
            }
            Segment::Sampled { generator, .. } => {
                for j in 0..m {
                    let t_mid = (j as f64 + 0.5) * dt;
                    let h = generator(t_mid);
                    let u_step = evolve_exp(&h, dt)?;
                    psi = psi.apply(&u_step)?;
                    u_total = u_step.mul(&u_total)?;
                    push_sample(
                        &mut times,
                        &mut states,
                        segment_start,
                        seg.duration(),
                        dt,
                        j,
                        m,
                        &psi,
                    );
                    steps.push(u_step);
                }
            }
        }
        segment_start += seg.duration();
    }

    Ok((
        u_total,
        Trajectory {
            times,
            states,
            step_propagators: steps,
        },
    ))
}

#[allow(clippy::too_many_arguments)]
fn push_sample(
    times: &mut Vec<f64>,
    states: &mut Vec<StateVector>,
    segment_start: f64,
    segment_duration: f64,
    dt: f64,
    j: usize,
    m: usize,
    psi: &StateVector,
) {
    // Pin the final node of each segment to the exact cumulative duration so
    // rounding in repeated `dt` additions cannot drift the endpoint.
    let t = if j + 1 == m {
        segment_start + segment_duration
    } else {
        segment_start + (j as f64 + 1.0) * dt
    };
    times.push(t);
    states.push(StateVector::from_normalized(psi.amplitudes().to_vec()));
}
