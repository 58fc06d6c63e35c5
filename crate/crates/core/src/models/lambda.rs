//! Three-level system with two ground states coupled to one excited state,
//! driven around a closed parameter loop.
//!
//! Basis order is `|0>, |1>, |e>`. The couplings are parameterized on the
//! `(theta, phi)` sphere as `Omega_0 = cos(theta/2)`,
//! `Omega_1 = -sin(theta/2) e^{i phi}`, so the instantaneous spectrum is
//! `{0, +-1}` everywhere on the path. The zero mode of the gate-conjugated
//! Hamiltonian `G^dag H G` (gate = ground-state swap) is
//! `|D> = cos(theta/2)|0> + sin(theta/2) e^{i phi}|1>`, which starts and ends
//! at `|0>` for loops closed at `theta = 0`; its loop connection integral is
//! `-closed_int sin^2(theta/2) d phi`.

use std::sync::Arc;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::matrix::SquareComplexMatrix;
use crate::schedule::{HamiltonianSchedule, Segment};
use crate::state::StateVector;

/// A straight leg in `(theta, phi)` parameter space with a share of the
/// loop duration.
#[derive(Clone, Copy, Debug)]
pub struct LoopLeg {
    pub theta_from: f64,
    pub phi_from: f64,
    pub theta_to: f64,
    pub phi_to: f64,
    /// Fraction of the loop duration spent on this leg.
    pub weight: f64,
}

impl LoopLeg {
    fn at(&self, s: f64) -> (f64, f64) {
        let s = s.clamp(0.0, 1.0);
        (
            self.theta_from + (self.theta_to - self.theta_from) * s,
            self.phi_from + (self.phi_to - self.phi_from) * s,
        )
    }
}

/// A closed parameter loop starting and ending at `theta = 0`.
#[derive(Clone, Debug)]
pub struct LambdaLoopSpec {
    pub legs: Vec<LoopLeg>,
    pub loop_duration: f64,
}

impl LambdaLoopSpec {
    pub fn new(legs: Vec<LoopLeg>, loop_duration: f64) -> Result<Self> {
        if legs.is_empty() {
            return Err(Error::InvalidSpec("loop needs at least one leg".into()));
        }
        if loop_duration <= 0.0 || !loop_duration.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "loop duration must be positive, got {loop_duration}"
            )));
        }
        if legs[0].theta_from.abs() > 1e-12 || legs.last().unwrap().theta_to.abs() > 1e-12 {
            return Err(Error::InvalidSpec(
                "loop must start and end at theta = 0".into(),
            ));
        }
        for pair in legs.windows(2) {
            if (pair[0].theta_to - pair[1].theta_from).abs() > 1e-12
                || (pair[0].phi_to - pair[1].phi_from).abs() > 1e-12
            {
                return Err(Error::InvalidSpec(
                    "loop legs must be continuous in (theta, phi)".into(),
                ));
            }
        }
        let total: f64 = legs.iter().map(|l| l.weight).sum();
        if !total.is_finite() || total <= 0.0 {
            return Err(Error::InvalidSpec(
                "loop leg weights must be positive".into(),
            ));
        }
        for leg in &legs {
            if !leg.weight.is_finite() || leg.weight <= 0.0 {
                return Err(Error::InvalidSpec(
                    "loop leg weights must be positive".into(),
                ));
            }
        }
        // Normalize weights so they always sum to 1.
        let legs = legs
            .into_iter()
            .map(|mut l| {
                l.weight /= total;
                l
            })
            .collect();
        Ok(Self {
            legs,
            loop_duration,
        })
    }

    /// The cap loop: ramp `theta` up to `theta_c`, sweep `phi` through a
    /// full turn at fixed `theta_c`, ramp back down. Quarter of the duration
    /// on each ramp, half on the sweep.
    pub fn cap_loop(theta_c: f64, loop_duration: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::PI).contains(&theta_c) {
            return Err(Error::InvalidSpec(format!(
                "cap polar angle must lie in [0, pi], got {theta_c}"
            )));
        }
        Self::new(
            vec![
                LoopLeg {
                    theta_from: 0.0,
                    phi_from: 0.0,
                    theta_to: theta_c,
                    phi_to: 0.0,
                    weight: 0.25,
                },
                LoopLeg {
                    theta_from: theta_c,
                    phi_from: 0.0,
                    theta_to: theta_c,
                    phi_to: 2.0 * std::f64::consts::PI,
                    weight: 0.5,
                },
                LoopLeg {
                    theta_from: theta_c,
                    phi_from: 2.0 * std::f64::consts::PI,
                    theta_to: 0.0,
                    phi_to: 2.0 * std::f64::consts::PI,
                    weight: 0.25,
                },
            ],
            loop_duration,
        )
    }

    /// Parameter point at global loop time `t`.
    pub fn point_at(&self, t: f64) -> (f64, f64) {
        let mut remaining = t.clamp(0.0, self.loop_duration);
        for leg in &self.legs {
            let leg_duration = leg.weight * self.loop_duration;
            if remaining <= leg_duration {
                return leg.at(remaining / leg_duration);
            }
            remaining -= leg_duration;
        }
        let last = self.legs.last().unwrap();
        last.at(1.0)
    }
}

/// Couplings at a parameter point: `(Omega_0, Omega_1)`.
pub fn rabi_couplings(theta: f64, phi: f64) -> (C64, C64) {
    (
        C64::new((theta / 2.0).cos(), 0.0),
        -C64::from_polar((theta / 2.0).sin(), phi),
    )
}

/// `H = |e>(Omega_0 <0| + Omega_1 <1|) + h.c.` at a parameter point.
pub fn lambda_hamiltonian(theta: f64, phi: f64) -> SquareComplexMatrix {
    let (omega0, omega1) = rabi_couplings(theta, phi);
    let mut h = SquareComplexMatrix::zeros(3);
    h[(2, 0)] = omega0;
    h[(0, 2)] = omega0.conj();
    h[(2, 1)] = omega1;
    h[(1, 2)] = omega1.conj();
    h
}

/// The ground-state swap gate `|1><0| + |0><1| + |e><e|`.
pub fn lambda_gate() -> SquareComplexMatrix {
    let mut g = SquareComplexMatrix::zeros(3);
    g[(0, 1)] = C64::new(1.0, 0.0);
    g[(1, 0)] = C64::new(1.0, 0.0);
    g[(2, 2)] = C64::new(1.0, 0.0);
    g
}

/// Zero mode of the gate-conjugated Hamiltonian at a parameter point:
/// `cos(theta/2)|0> + sin(theta/2) e^{i phi}|1>`.
pub fn dark_state(theta: f64, phi: f64) -> StateVector {
    StateVector::from_normalized(vec![
        C64::new((theta / 2.0).cos(), 0.0),
        C64::from_polar((theta / 2.0).sin(), phi),
        C64::new(0.0, 0.0),
    ])
}

/// One sampled segment per loop leg, each resolved with `sample_count`
/// midpoint steps.
pub fn build_lambda_schedule(
    spec: &LambdaLoopSpec,
    sample_count: usize,
) -> Result<HamiltonianSchedule> {
    if sample_count == 0 {
        return Err(Error::InvalidSpec("sample_count must be >= 1".into()));
    }
    let segments = spec
        .legs
        .iter()
        .map(|leg| {
            let leg = *leg;
            let duration = leg.weight * spec.loop_duration;
            Segment::Sampled {
                generator: Arc::new(move |t| {
                    let (theta, phi) = leg.at(t / duration);
                    lambda_hamiltonian(theta, phi)
                }),
                duration,
                sample_count,
            }
        })
        .collect();
    HamiltonianSchedule::new(segments)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dressed::dressed_hamiltonian;
    use crate::eig::hermitian_eig;
    use std::f64::consts::PI;

    #[test]
    fn degenerate_loop_hamiltonian_couples_zero_to_excited() {
        // theta = 0 everywhere: H = |e><0| + |0><e|.
        let h = lambda_hamiltonian(0.0, 0.3);
        assert!((h[(2, 0)] - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((h[(0, 2)] - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(h[(2, 1)].norm() < 1e-15);
    }

    #[test]
    fn spectrum_is_zero_and_unit_gap_everywhere() {
        for &(theta, phi) in &[(0.0, 0.0), (0.7, 1.1), (PI / 2.0, 4.0), (2.4, 5.9)] {
            let eig = hermitian_eig(&lambda_hamiltonian(theta, phi)).unwrap();
            assert!((eig.values[0] + 1.0).abs() < 1e-12);
            assert!(eig.values[1].abs() < 1e-12);
            assert!((eig.values[2] - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn dark_state_annihilated_by_dressed_hamiltonian() {
        let g = lambda_gate();
        for &(theta, phi) in &[(0.0, 0.0), (0.4, 0.9), (PI / 2.0, 2.2), (2.8, 5.0)] {
            let dressed = dressed_hamiltonian(&g, &lambda_hamiltonian(theta, phi)).unwrap();
            let d = dark_state(theta, phi);
            let residual: f64 = dressed
                .mul_vec(d.amplitudes())
                .unwrap()
                .iter()
                .map(|z| z.norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(residual < 1e-12, "theta={theta}, phi={phi}: {residual}");
        }
    }

    #[test]
    fn cap_loop_closes_and_interpolates() {
        let spec = LambdaLoopSpec::cap_loop(PI / 2.0, 100.0).unwrap();
        let (theta, phi) = spec.point_at(0.0);
        assert!(theta.abs() < 1e-15 && phi.abs() < 1e-15);
        let (theta, _) = spec.point_at(100.0);
        assert!(theta.abs() < 1e-12);
        let (theta, phi) = spec.point_at(50.0);
        assert!((theta - PI / 2.0).abs() < 1e-12);
        assert!((phi - PI).abs() < 1e-9);
    }

    #[test]
    fn open_loop_rejected() {
        let legs = vec![LoopLeg {
            theta_from: 0.0,
            phi_from: 0.0,
            theta_to: 0.5,
            phi_to: 0.0,
            weight: 1.0,
        }];
        assert!(LambdaLoopSpec::new(legs, 10.0).is_err());
    }

    #[test]
    fn schedule_samples_are_hermitian_with_unit_gap() {
        let spec = LambdaLoopSpec::cap_loop(1.0, 30.0).unwrap();
        let schedule = build_lambda_schedule(&spec, 5).unwrap();
        for seg in schedule.segments() {
            let h = seg.hamiltonian_at(0.5 * seg.duration());
            assert!(h.hermitian_asymmetry() < 1e-15);
        }
    }

    #[test]
    fn dark_residual_stays_below_1e12_at_every_schedule_sample() {
        let spec = LambdaLoopSpec::cap_loop(2.1, 60.0).unwrap();
        let samples = 64usize;
        let schedule = build_lambda_schedule(&spec, samples).unwrap();
        let g = lambda_gate();
        let mut global_t = 0.0;
        for seg in schedule.segments() {
            let dt = seg.duration() / samples as f64;
            for j in 0..=samples {
                let local_t = (j as f64 * dt).min(seg.duration());
                let h = seg.hamiltonian_at(local_t);
                let dressed = dressed_hamiltonian(&g, &h).unwrap();
                let (theta, phi) = spec.point_at(global_t + local_t);
                let d = dark_state(theta, phi);
                let residual: f64 = dressed
                    .mul_vec(d.amplitudes())
                    .unwrap()
                    .iter()
                    .map(|z| z.norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                assert!(residual < 1e-12, "t = {}: {residual}", global_t + local_t);
            }
            global_t += seg.duration();
        }
    }
}
