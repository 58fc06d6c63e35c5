//! The acceptance matrix: every exit criterion as an executable check, with
//! pinned tolerances. Used by the `acceptance` integration test target and
//! by the CLI `selftest` subcommand.

use std::f64::consts::PI;
use std::path::Path;

use num_complex::Complex64 as C64;
use rand::Rng;

use crate::dressed::{dressed_eigensystem, dressed_operator};
use crate::eig::{hermitian_eig, hermitian_eig_residual, unitary_eig, unitary_eig_residual};
use crate::error::Result;
use crate::models::chain::{build_xy_chain, measure_transfer_signature, ChainSpec};
use crate::models::lambda::{build_lambda_schedule, LambdaLoopSpec};
use crate::models::qubit::{build_qubit_schedule, build_rotation_gate, Axis, QubitScheduleSpec};
use crate::par::{map_items, ExecMode};
use crate::phase::{
    aa_phase, open_path_geometric_phase, phase_distance, wrap_phase, DynamicalPhaseEvaluator,
};
use crate::random::{random_schedule, random_unitary, seeded_rng};
use crate::report::{Check, ScenarioReport, Value};
use crate::scenarios::{
    scenario_boson_ring, scenario_dark_state_loop, scenario_pst_cycle, scenario_pst_transfer,
    scenario_qubit_gate, scenario_superposition_surface, surface_csv, DEFAULT_SAMPLES,
};
use crate::schedule::{propagate, HamiltonianSchedule, Segment};
use crate::state::StateVector;

/// Every tolerance the acceptance matrix pins, in one place.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    pub cycle_phase: f64,
    pub cycle_dynamical: f64,
    pub transfer_phase: f64,
    pub qubit_closed_form: f64,
    pub gate_realization: f64,
    pub u_vs_gate: f64,
    pub surface_line: f64,
    pub dark_dynamical: f64,
    pub dark_adiabatic: f64,
    pub intensity: f64,
    pub unitarity: f64,
    pub eigen_residual: f64,
    pub reparameterization: f64,
    pub estimator: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            cycle_phase: 1e-8,
            cycle_dynamical: 1e-9,
            transfer_phase: 1e-8,
            qubit_closed_form: 1e-8,
            gate_realization: 1e-9,
            u_vs_gate: 1e-9,
            surface_line: 1e-6,
            dark_dynamical: 1e-9,
            dark_adiabatic: 5e-2,
            intensity: 1e-9,
            unitarity: 1e-10,
            eigen_residual: 1e-9,
            reparameterization: 1e-8,
            estimator: 5e-3,
        }
    }
}

/// Outcome of one acceptance criterion.
#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub index: usize,
    pub name: &'static str,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl CriterionResult {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// One human-readable pass/fail line.
    pub fn line(&self) -> String {
        format!(
            "criterion {} ({}): {}",
            self.index,
            self.name,
            if self.pass() { "PASS" } else { "FAIL" }
        )
    }

    fn from_result(
        index: usize,
        name: &'static str,
        body: Result<(Vec<Check>, Vec<String>)>,
    ) -> Self {
        match body {
            Ok((checks, notes)) => Self {
                index,
                name,
                checks,
                notes,
            },
            Err(err) => Self {
                index,
                name,
                checks: vec![Check {
                    name: format!("execution_error: {err}"),
                    expected: 0.0,
                    observed: 1.0,
                    tolerance: 0.0,
                    pass: false,
                }],
                notes: Vec::new(),
            },
        }
    }
}

fn out_f64(report: &ScenarioReport, key: &str) -> f64 {
    match report.outputs.get(key) {
        Some(Value::F64(x)) => *x,
        other => panic!("scenario output {key} missing or not a float: {other:?}"),
    }
}

/// Criterion 1: cyclic transfer phase parity, even chains -> -1, odd -> +1,
/// with vanishing dynamical part.
pub fn criterion_1(tol: &Tolerances) -> CriterionResult {
    let body = (|| {
        let mut checks = Vec::new();
        for (n, target) in [
            (4usize, C64::new(-1.0, 0.0)),
            (6, C64::new(-1.0, 0.0)),
            (8, C64::new(-1.0, 0.0)),
            (3, C64::new(1.0, 0.0)),
            (5, C64::new(1.0, 0.0)),
            (7, C64::new(1.0, 0.0)),
        ] {
            let report = scenario_pst_cycle(n)?;
            let e_beta = C64::new(
                out_f64(&report, "e_i_beta_re"),
                out_f64(&report, "e_i_beta_im"),
            );
            checks.push(Check::upper_bound(
                format!("pst_cycle_n{n}_e_i_beta_parity"),
                (e_beta - target).norm(),
                tol.cycle_phase,
            ));
            checks.push(Check::upper_bound(
                format!("pst_cycle_n{n}_dynamical_zero"),
                out_f64(&report, "dynamical_phase").abs(),
                tol.cycle_dynamical,
            ));
        }
        Ok((checks, Vec::new()))
    })();
    CriterionResult::from_result(1, "cyclic PST phase", body)
}

/// Criterion 2: transfer-gate phase equals the measured signature, and its
/// square is convention-free.
pub fn criterion_2(tol: &Tolerances) -> CriterionResult {
    let body = (|| {
        let mut checks = Vec::new();
        for n in 2..=8usize {
            let report = scenario_pst_transfer(n)?;
            let e_beta = C64::new(
                out_f64(&report, "e_i_beta_re"),
                out_f64(&report, "e_i_beta_im"),
            );
            let r = C64::new(out_f64(&report, "r_re"), out_f64(&report, "r_im"));
            let parity = C64::new(if n % 2 == 0 { -1.0 } else { 1.0 }, 0.0);
            checks.push(Check::upper_bound(
                format!("pst_transfer_n{n}_e_i_beta_equals_r"),
                (e_beta - r).norm(),
                tol.transfer_phase,
            ));
            checks.push(Check::upper_bound(
                format!("pst_transfer_n{n}_squared_parity"),
                (e_beta * e_beta - parity).norm(),
                tol.transfer_phase,
            ));
        }
        Ok((checks, Vec::new()))
    })();
    CriterionResult::from_result(2, "transfer-gate phase", body)
}

/// Criterion 3: qubit-gate dynamical and geometric phases over the
/// parameter grid, both spin labels.
pub fn criterion_3(tol: &Tolerances) -> CriterionResult {
    let body = (|| {
        let mut checks = Vec::new();
        let wds = [PI / 6.0, PI / 3.0, 1.0, 2.0];
        let thetas = [PI / 8.0, PI / 4.0, 1.0];
        for (i, &wd) in wds.iter().enumerate() {
            for (j, &theta0) in thetas.iter().enumerate() {
                let report = scenario_qubit_gate(wd, theta0)?;
                let cos2t = (2.0 * theta0).cos();
                for (label, sign) in [("up", 1.0_f64), ("down", -1.0_f64)] {
                    let d = out_f64(&report, &format!("dynamical_{label}"));
                    let beta = out_f64(&report, &format!("beta_{label}"));
                    checks.push(Check::within(
                        format!("qubit_wd{i}_theta{j}_dynamical_{label}"),
                        sign * wd * cos2t,
                        d,
                        tol.qubit_closed_form,
                    ));
                    checks.push(Check::upper_bound(
                        format!("qubit_wd{i}_theta{j}_beta_{label}"),
                        phase_distance(beta, wrap_phase(-sign * wd * (1.0 - cos2t))),
                        tol.qubit_closed_form,
                    ));
                }
            }
        }
        Ok((checks, Vec::new()))
    })();
    CriterionResult::from_result(3, "qubit-gate phases", body)
}

/// Criterion 4: gate-realization theorem on 200 seeded random
/// (gate, schedule) pairs in dimensions 2 through 8.
pub fn criterion_4(tol: &Tolerances, seed: u64) -> CriterionResult {
    let body = (|| {
        let mut rng = seeded_rng(seed);
        let pairs: Vec<(crate::matrix::SquareComplexMatrix, HamiltonianSchedule)> = (0..200)
            .map(|i| {
                let dim = 2 + (i % 7);
                let gate = random_unitary(dim, &mut rng);
                let schedule = random_schedule(dim, &mut rng);
                (gate, schedule)
            })
            .collect();
        let residuals = map_items(ExecMode::Auto, &pairs, |(gate, schedule)| {
            let psi0 = StateVector::basis_state(schedule.dim(), 0);
            let (u, _) = propagate(schedule, &psi0, 16)?;
            let decomp = dressed_eigensystem(gate, &u)?;
            Ok::<f64, crate::error::Error>(decomp.gate_realization_residual())
        });
        let mut worst = 0.0_f64;
        for r in residuals {
            worst = worst.max(r?);
        }
        let checks = vec![Check::upper_bound(
            "gate_realization_max_residual_200_pairs",
            worst,
            tol.gate_realization,
        )];
        Ok((
            checks,
            vec![format!("worst residual over 200 pairs: {worst:.3e}")],
        ))
    })();
    CriterionResult::from_result(4, "gate-realization theorem", body)
}

/// Criterion 5: superposition condition at `wd = pi n`; the propagator
/// collapses onto the signed gate, the closed form matches on the
/// `sin(gamma) = 0` lines, and the full surface is exported with the
/// off-line discrepancy reported as a finding.
pub fn criterion_5(tol: &Tolerances, csv_dir: Option<&Path>) -> CriterionResult {
    let body = (|| {
        let mut checks = Vec::new();
        let mut notes = Vec::new();
        for n in [1i64, 2] {
            let surf = scenario_superposition_surface(81, 81, 1.0, n)?;
            checks.push(Check::upper_bound(
                format!("surface_n{n}_u_equals_signed_gate"),
                out_f64(&surf.report, "u_vs_signed_gate"),
                tol.u_vs_gate,
            ));
            checks.push(Check::upper_bound(
                format!("surface_n{n}_gamma_line_agreement"),
                out_f64(&surf.report, "max_gamma_line_discrepancy"),
                tol.surface_line,
            ));
            let off = out_f64(&surf.report, "max_off_line_discrepancy");
            notes.push(format!(
                "surface n={n}: max off-line |beta_numeric - beta_paper| = {off:.6e} rad \
                 (documented convention conflict; reported, not asserted)"
            ));
            if let Some(dir) = csv_dir {
                let path = dir.join(format!("surface_n{n}.csv"));
                match std::fs::write(&path, surface_csv(&surf.rows)) {
                    Ok(()) => {
                        notes.push(format!("surface n={n}: CSV written to {}", path.display()))
                    }
                    Err(err) => checks.push(Check {
                        name: format!("surface_n{n}_csv_emitted: {err}"),
                        expected: 0.0,
                        observed: 1.0,
                        tolerance: 0.0,
                        pass: false,
                    }),
                }
            }
        }
        Ok((checks, notes))
    })();
    CriterionResult::from_result(5, "superposition condition", body)
}

/// Criterion 6: dark-state loop. Followed-branch energy integral vanishes,
/// the adiabatic phase matches the connection oracle at duration 2000 and
/// improves monotonically under duration doubling; the cap solid angle is
/// recorded without an equality assertion.
pub fn criterion_6(tol: &Tolerances) -> CriterionResult {
    let body = (|| {
        let mut checks = Vec::new();
        let mut notes = Vec::new();
        for theta_c in [PI / 4.0, PI / 2.0] {
            let mut errors = Vec::new();
            for (duration, samples) in [(2000.0, 2000usize), (4000.0, 4000), (8000.0, 8000)] {
                let dark = scenario_dark_state_loop(theta_c, duration, samples)?;
                let err = phase_distance(dark.adiabatic_phase, wrap_phase(dark.connection_phase));
                if duration == 2000.0 {
                    checks.push(Check::upper_bound(
                        format!("dark_tc{theta_c:.3}_dynamical_residual"),
                        dark.dynamical_residual,
                        tol.dark_dynamical,
                    ));
                    checks.push(Check::upper_bound(
                        format!("dark_tc{theta_c:.3}_adiabatic_vs_connection"),
                        err,
                        tol.dark_adiabatic,
                    ));
                    checks.push(Check::upper_bound(
                        format!("dark_tc{theta_c:.3}_branch_overlap"),
                        1.0 - dark.adiabatic_overlap,
                        1e-3,
                    ));
                    notes.push(format!(
                        "theta_c={theta_c:.3}: connection integral {:.6}, solid angle {:.6} \
                         recorded alongside (no equality asserted)",
                        dark.connection_phase, dark.solid_angle
                    ));
                }
                errors.push(err);
            }
            checks.push(Check::upper_bound(
                format!("dark_tc{theta_c:.3}_improves_2000_to_4000"),
                errors[1] - errors[0],
                0.0,
            ));
            checks.push(Check::upper_bound(
                format!("dark_tc{theta_c:.3}_improves_4000_to_8000"),
                errors[2] - errors[1],
                0.0,
            ));
            notes.push(format!(
                "theta_c={theta_c:.3}: adiabatic-vs-connection error {:.3e} -> {:.3e} -> {:.3e}",
                errors[0], errors[1], errors[2]
            ));
        }
        Ok((checks, notes))
    })();
    CriterionResult::from_result(6, "dark state", body)
}

/// Criterion 7: ring intensity factors 0, 4, and 2 for the three pinned
/// geometries.
pub fn criterion_7(tol: &Tolerances) -> CriterionResult {
    let body = (|| {
        let mut checks = Vec::new();
        for (nu, nl, expected) in [(7usize, 5usize, 0.0_f64), (5, 5, 4.0), (6, 5, 2.0)] {
            let report = scenario_boson_ring(nu, nl)?;
            checks.push(Check::within(
                format!("ring_{nu}_{nl}_intensity_factor"),
                expected,
                report.intensity_factor,
                tol.intensity,
            ));
        }
        Ok((checks, Vec::new()))
    })();
    CriterionResult::from_result(7, "boson ring", body)
}

/// Criterion 8: numerical hygiene. Unitarity of every propagator class,
/// eigen-residuals, reparameterization invariance of the phase triple, and
/// the discrete estimator against the formula on the cyclic chain.
pub fn criterion_8(tol: &Tolerances, seed: u64) -> CriterionResult {
    let body = (|| {
        let mut checks = Vec::new();
        let mut notes = Vec::new();
        let mut rng = seeded_rng(seed ^ 0xACCE55);

        // (a) propagator unitarity across the model zoo.
        let mut worst_unitarity = 0.0_f64;
        let qubit_spec = QubitScheduleSpec::new(1.0, 1.3, 1.0, 0.9)?;
        let schedules = {
            let mut v: Vec<HamiltonianSchedule> = vec![build_qubit_schedule(&qubit_spec)?];
            let chain_spec = ChainSpec::new(6, 1.0)?;
            let sig = measure_transfer_signature(&chain_spec)?;
            v.push(HamiltonianSchedule::constant(
                build_xy_chain(&chain_spec)?,
                2.0 * sig.transfer_time,
            )?);
            let loop_spec = LambdaLoopSpec::cap_loop(1.1, 50.0)?;
            v.push(build_lambda_schedule(&loop_spec, 128)?);
            for _ in 0..5 {
                let dim = 3 + (rng.random_range(0..5usize));
                v.push(random_schedule(dim, &mut rng));
            }
            v
        };
        for schedule in &schedules {
            let psi0 = StateVector::basis_state(schedule.dim(), 0);
            let (u, traj) = propagate(schedule, &psi0, 64)?;
            worst_unitarity = worst_unitarity.max(u.unitarity_deviation());
            worst_unitarity = worst_unitarity.max(
                traj.step_propagators()
                    .iter()
                    .map(|s| s.unitarity_deviation())
                    .fold(0.0, f64::max),
            );
        }
        checks.push(Check::upper_bound(
            "propagator_unitarity_worst",
            worst_unitarity,
            tol.unitarity,
        ));

        // (b) eigen-residuals for both decompositions on random inputs.
        let mut worst_herm = 0.0_f64;
        let mut worst_unit = 0.0_f64;
        for i in 0..10 {
            let dim = 2 + (i % 7);
            let h = crate::random::random_hermitian(dim, 1.0, &mut rng);
            let eig = hermitian_eig(&h)?;
            worst_herm = worst_herm.max(hermitian_eig_residual(&h, &eig));
            let u = random_unitary(dim, &mut rng);
            let ueig = unitary_eig(&u)?;
            worst_unit = worst_unit.max(unitary_eig_residual(&u, &ueig));
        }
        checks.push(Check::upper_bound(
            "hermitian_eigenresidual_worst",
            worst_herm,
            tol.eigen_residual,
        ));
        checks.push(Check::upper_bound(
            "unitary_eigenresidual_worst",
            worst_unit,
            tol.eigen_residual,
        ));

        // (c) reparameterization invariance of (phi, D, beta): constant
        // two-stage case and a sampled-generator case.
        let wd = 1.1;
        let theta0 = 0.8;
        let base = qubit_phase_triple(1.0, wd, theta0)?;
        for c in [2.0, 10.0] {
            let scaled = qubit_phase_triple(c, wd, theta0)?;
            checks.push(Check::upper_bound(
                format!("reparameterization_qubit_c{c}_phi"),
                phase_distance(base.0, scaled.0),
                tol.reparameterization,
            ));
            checks.push(Check::upper_bound(
                format!("reparameterization_qubit_c{c}_dynamical"),
                (base.1 - scaled.1).abs(),
                tol.reparameterization,
            ));
            checks.push(Check::upper_bound(
                format!("reparameterization_qubit_c{c}_beta"),
                phase_distance(base.2, scaled.2),
                tol.reparameterization,
            ));
        }
        let gate = random_unitary(3, &mut rng);
        let h0 = crate::random::random_hermitian(3, 1.0, &mut rng);
        let h1 = crate::random::random_hermitian(3, 0.4, &mut rng);
        let sampled_base = sampled_phase_triple(&gate, &h0, &h1, 1.0)?;
        for c in [2.0, 10.0] {
            let scaled = sampled_phase_triple(&gate, &h0, &h1, c)?;
            checks.push(Check::upper_bound(
                format!("reparameterization_sampled_c{c}_u_total"),
                sampled_base.3.max_abs_diff(&scaled.3),
                1e-10,
            ));
            checks.push(Check::upper_bound(
                format!("reparameterization_sampled_c{c}_phase_triple"),
                phase_distance(sampled_base.0, scaled.0)
                    .max((sampled_base.1 - scaled.1).abs())
                    .max(phase_distance(sampled_base.2, scaled.2)),
                tol.reparameterization,
            ));
        }

        // (d) pairwise-overlap estimator vs the formula on the cyclic chain.
        let chain_spec = ChainSpec::new(4, 1.0)?;
        let sig = measure_transfer_signature(&chain_spec)?;
        let schedule =
            HamiltonianSchedule::constant(build_xy_chain(&chain_spec)?, 2.0 * sig.transfer_time)?;
        let psi0 = StateVector::basis_state(4, 0);
        let (_, traj) = propagate(&schedule, &psi0, DEFAULT_SAMPLES)?;
        let total = wrap_phase(psi0.inner(traj.states().last().unwrap()).arg());
        let dyn_phase = crate::phase::dynamical_phase(
            &crate::matrix::SquareComplexMatrix::identity(4),
            &schedule,
            &psi0,
            DEFAULT_SAMPLES,
        )?;
        let beta_formula = aa_phase(total, dyn_phase);
        let beta_estimator = open_path_geometric_phase(&traj)?;
        let estimator_gap = phase_distance(beta_formula, beta_estimator);
        checks.push(Check::upper_bound(
            "estimator_vs_formula_cyclic_chain",
            estimator_gap,
            tol.estimator,
        ));
        notes.push(format!(
            "estimator vs formula on cyclic N=4 chain at {DEFAULT_SAMPLES} steps: {estimator_gap:.3e} rad"
        ));

        Ok((checks, notes))
    })();
    CriterionResult::from_result(8, "numerical hygiene", body)
}

/// `(phi, D, beta)` of the spin-up state for the two-stage schedule with all
/// rates scaled by `c` and durations by `1/c`.
fn qubit_phase_triple(c: f64, wd: f64, theta0: f64) -> Result<(f64, f64, f64)> {
    let spec = QubitScheduleSpec::new(c, wd / c, c, theta0)?;
    let schedule = build_qubit_schedule(&spec)?;
    let gate = build_rotation_gate(theta0, Axis::X);
    let evaluator = DynamicalPhaseEvaluator::new(&gate, &schedule, DEFAULT_SAMPLES)?;
    let w = dressed_operator(&gate, evaluator.u_total())?;
    let up = StateVector::basis_state(2, 0);
    let phi = wrap_phase(up.inner(&up.apply(&w)?).arg());
    let d = evaluator.eval(&up)?;
    Ok((phi, d, aa_phase(phi, d)))
}

/// Phase triple plus total propagator for a smooth sampled schedule under
/// the scaling `H(t) -> c H(c t)`, `duration -> duration / c`.
fn sampled_phase_triple(
    gate: &crate::matrix::SquareComplexMatrix,
    h0: &crate::matrix::SquareComplexMatrix,
    h1: &crate::matrix::SquareComplexMatrix,
    c: f64,
) -> Result<(f64, f64, f64, crate::matrix::SquareComplexMatrix)> {
    let duration = 1.7 / c;
    let h0 = h0.clone();
    let h1 = h1.clone();
    let generator = std::sync::Arc::new(move |t: f64| {
        h0.add(&h1.scale_re((3.0 * (c * t) + 0.4).cos()))
            .unwrap()
            .scale_re(c)
    });
    let schedule = HamiltonianSchedule::new(vec![Segment::Sampled {
        generator,
        duration,
        sample_count: 512,
    }])?;
    let evaluator = DynamicalPhaseEvaluator::new(gate, &schedule, 1)?;
    let w = dressed_operator(gate, evaluator.u_total())?;
    let psi0 = StateVector::basis_state(3, 0);
    let phi = wrap_phase(psi0.inner(&psi0.apply(&w)?).arg());
    let d = evaluator.eval(&psi0)?;
    Ok((phi, d, aa_phase(phi, d), evaluator.u_total().clone()))
}

/// Run the whole matrix.
pub fn run_all(seed: u64, tol: &Tolerances, csv_dir: Option<&Path>) -> Vec<CriterionResult> {
    vec![
        criterion_1(tol),
        criterion_2(tol),
        criterion_3(tol),
        criterion_4(tol, seed),
        criterion_5(tol, csv_dir),
        criterion_6(tol),
        criterion_7(tol),
        criterion_8(tol, seed),
    ]
}

/// Fold criterion results into the selftest report shape.
pub fn summary_report(seed: u64, results: &[CriterionResult]) -> ScenarioReport {
    let mut report = ScenarioReport::new("selftest");
    report.input("seed", seed as i64);
    let mut passed = 0usize;
    let mut failed = 0usize;
    let mut first_failure = String::new();
    for result in results {
        for check in &result.checks {
            let mut named = check.clone();
            named.name = format!("c{}_{}", result.index, named.name);
            if !named.pass {
                failed += 1;
                if first_failure.is_empty() {
                    first_failure = named.name.clone();
                }
            } else {
                passed += 1;
            }
            report.check(named);
        }
    }
    report
        .output("passed", passed)
        .output("failed", failed)
        .output("first_failure", first_failure.as_str())
        .output("all_criteria_pass", results.iter().all(|r| r.pass()));
    report
}
