//! The two-stage qubit gate scenario: dressed phases of the z basis states
//! against their closed forms.

use num_complex::Complex64 as C64;

use crate::dressed::dressed_operator;
use crate::error::{Error, Result};
use crate::models::qubit::{build_qubit_schedule, build_rotation_gate, Axis, QubitScheduleSpec};
use crate::phase::{aa_phase, phase_distance, wrap_phase, DynamicalPhaseEvaluator};
use crate::report::{Check, ScenarioReport};
use crate::state::StateVector;

use super::DEFAULT_SAMPLES;

/// Run the two-stage schedule with `z_rate * z_duration = wd` and gate
/// `exp(-i theta0 sigma_x)`, reporting total/dynamical/geometric phases for
/// both z basis states.
pub fn scenario_qubit_gate(wd: f64, theta0: f64) -> Result<ScenarioReport> {
    if wd == 0.0 || !wd.is_finite() {
        return Err(Error::InvalidSpec(format!(
            "z-stage angle product must be nonzero and finite, got {wd}"
        )));
    }
    let spec = QubitScheduleSpec::new(wd.signum(), wd.abs(), 1.0, theta0)?;
    let schedule = build_qubit_schedule(&spec)?;
    let gate = build_rotation_gate(theta0, Axis::X);
    let evaluator = DynamicalPhaseEvaluator::new(&gate, &schedule, DEFAULT_SAMPLES)?;
    let u = evaluator.u_total().clone();
    let w = dressed_operator(&gate, &u)?;

    let cos2t = (2.0 * theta0).cos();
    let mut report = ScenarioReport::new("qubit-gate");
    report
        .input("wdelta", wd)
        .input("theta0", theta0)
        .input("samples_per_segment", DEFAULT_SAMPLES);
    report.output("tau", spec.total_duration());

    for (label, index, sign) in [("up", 0usize, 1.0_f64), ("down", 1usize, -1.0_f64)] {
        let basis = StateVector::basis_state(2, index);
        let w_psi = basis.apply(&w)?;
        let total_phase = wrap_phase(basis.inner(&w_psi).arg());
        let eigen_residual = w_psi
            .amplitudes()
            .iter()
            .zip(basis.amplitudes())
            .map(|(a, b)| (a - b * C64::from_polar(1.0, total_phase)).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let dyn_phase = evaluator.eval(&basis)?;
        let beta = aa_phase(total_phase, dyn_phase);

        // |psi(tau)> = e^{i phi} G |psi(0)> for a dressed eigenvector.
        let lhs = basis.apply(&u)?;
        let rhs = basis
            .apply(&gate)?
            .phased(C64::from_polar(1.0, total_phase));
        let gate_residual = lhs.distance(&rhs);

        report
            .output(&format!("phi_{label}"), total_phase)
            .output(&format!("dynamical_{label}"), dyn_phase)
            .output(&format!("beta_{label}"), beta);
        report
            .check(Check::within(
                format!("dynamical_{label}_matches_closed_form"),
                sign * wd * cos2t,
                dyn_phase,
                1e-8,
            ))
            .check(Check::upper_bound(
                format!("beta_{label}_matches_closed_form"),
                phase_distance(beta, wrap_phase(-sign * wd * (1.0 - cos2t))),
                1e-8,
            ))
            .check(Check::upper_bound(
                format!("phi_{label}_matches_closed_form"),
                phase_distance(total_phase, wrap_phase(-sign * wd)),
                1e-9,
            ))
            .check(Check::upper_bound(
                format!("{label}_is_dressed_eigenvector"),
                eigen_residual,
                1e-9,
            ))
            .check(Check::upper_bound(
                format!("final_state_identity_{label}"),
                gate_residual,
                1e-9,
            ));
    }
    report.check(Check::upper_bound(
        "propagator_unitarity",
        u.unitarity_deviation(),
        1e-10,
    ));
    Ok(report)
}
