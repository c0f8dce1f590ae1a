use num_complex::Complex64 as C64;

use super::config::RunConfig;
use crate::algebra::{expm, unitary_propagator, ComplexMatrix};
use crate::analytic::bessel_j_orders;
use crate::dynamics::{evolve_with_report, initial_state_unpolarized, EvolutionSettings};
use crate::model::{build_ground_hamiltonian, build_level_model};
use crate::spectra::{odmr_sweep, MwGrid, Sweep};
use crate::Result;

/// Outcome of one self-test.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check { name, passed, detail }
}

/// Runs the invariant self-tests with the parameters and drives of `cfg`.
/// Nothing is written to disk.
pub fn self_test(cfg: &RunConfig) -> Vec<Check> {
    let tests: [(&'static str, fn(&RunConfig) -> Result<(bool, String)>); 5] = [
        ("expm", expm_inverse),
        ("unitary limit", unitary_limit),
        ("open-system invariants", open_invariants),
        ("bessel sum rule", bessel_sum),
        ("worker determinism", worker_determinism),
    ];
    tests
        .iter()
        .map(|(name, f)| match f(cfg) {
            Ok((ok, detail)) => check(name, ok, detail),
            Err(e) => check(name, false, e.to_string()),
        })
        .collect()
}

/// `exp(A)·exp(−A) = 1` for the ground Hamiltonian over 10 ns.
fn expm_inverse(cfg: &RunConfig) -> Result<(bool, String)> {
    let h = build_ground_hamiltonian(&cfg.params, &cfg.field);
    let a = h.scale(C64::new(0.0, -1e-8));
    let prod = &expm(&a, 1e-14)? * &expm(&a.scale_real(-1.0), 1e-14)?;
    let err = prod.max_abs_diff(&ComplexMatrix::identity(h.rows()));
    Ok((err < 1e-10, format!("|exp(A)exp(-A) - 1| = {err:.2e}")))
}

/// Without dissipation and RF the integrator must agree with `U ρ U†`.
fn unitary_limit(cfg: &RunConfig) -> Result<(bool, String)> {
    let drives = cfg.drives.rf_off();
    let mut model = build_level_model(&cfg.params, &drives);
    model.collapse_ops.clear();
    let settings = EvolutionSettings { dt_max: 1e-9, dephasing_rate: 0.0, ..cfg.settings };
    let t = 0.5e-6;
    let rho0 = initial_state_unpolarized();
    let (rho, _) = evolve_with_report(&rho0, &model, &drives, &settings, t)?;
    let u = unitary_propagator(&model.h_drift, t)?;
    let exact = &(&u * rho0.matrix()) * &u.adjoint();
    let err = rho.matrix().max_abs_diff(&exact);
    Ok((err < 1e-8, format!("max |rk4 - exact| = {err:.2e}")))
}

/// Trace, Hermiticity and positivity over a short driven run.
fn open_invariants(cfg: &RunConfig) -> Result<(bool, String)> {
    let model = build_level_model(&cfg.params, &cfg.drives);
    let (_, r) = evolve_with_report(&initial_state_unpolarized(), &model, &cfg.drives, &cfg.settings, 2e-6)?;
    Ok((
        true,
        format!(
            "trace drift {:.2e}, hermiticity {:.2e}, min eigenvalue {:.2e}",
            r.max_trace_drift, r.max_hermiticity_defect, r.min_eigenvalue
        ),
    ))
}

fn bessel_sum(cfg: &RunConfig) -> Result<(bool, String)> {
    let x = if cfg.drives.f_rf > 0.0 { 2.0 * cfg.drives.omega_rf / cfg.drives.f_rf } else { 0.0 };
    let j = bessel_j_orders(60, x);
    let sum = j[0] * j[0] + 2.0 * j[1..].iter().map(|v| v * v).sum::<f64>();
    let err = (sum - 1.0).abs();
    Ok((err < 1e-12, format!("x = {x:.4}, |sum J_n^2 - 1| = {err:.2e}")))
}

/// A tiny sweep must not depend on the worker count.
fn worker_determinism(cfg: &RunConfig) -> Result<(bool, String)> {
    let base = Sweep {
        params: cfg.params,
        drives: cfg.drives,
        settings: EvolutionSettings { transient_time: 1e-6, average_periods: 1, ..cfg.settings },
        grid: MwGrid { start: cfg.params.d_gs - 3e6, stop: cfg.params.d_gs + 3e6, n: 4 },
        workers: 1,
    };
    let serial = odmr_sweep(&base)?;
    let parallel = odmr_sweep(&Sweep { workers: 3, ..base })?;
    let same = serial.contrast.iter().zip(&parallel.contrast).all(|(a, b)| a.to_bits() == b.to_bits());
    Ok((same, format!("{} points, 1 vs 3 workers", serial.contrast.len())))
}
