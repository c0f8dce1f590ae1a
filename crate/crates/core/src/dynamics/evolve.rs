use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::lindblad::Generator;
use super::state::{initial_state_unpolarized, DensityMatrix, HERMITICITY_TOL, MIN_EIGENVALUE_TOL};
use crate::algebra::ComplexMatrix;
use crate::error::invalid;
use crate::model::{dephasing_operator, DriveConfig, LevelModel, EXCITED};
use crate::{Error, Result, TWO_PI};

/// Averaging window used when the RF drive is off.
pub const RF_OFF_WINDOW: f64 = 10e-6;

/// Minimum-eigenvalue checks per run (besides the final state).
const EIGEN_SAMPLES: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvolutionSettings {
    /// Upper bound on the integration step, s.
    pub dt_max: f64,
    /// Allowed drift of the trace over a run; exceeding it aborts.
    pub rel_tol: f64,
    /// Evolution time before fluorescence averaging starts, s.
    pub transient_time: f64,
    /// Number of RF periods averaged over.
    pub average_periods: u32,
    /// Ground-state pure-dephasing rate γ in 1/s, applied as `√(2γ)·Sz`.
    pub dephasing_rate: f64,
}

impl Default for EvolutionSettings {
    fn default() -> Self {
        Self {
            dt_max: 4e-9,
            rel_tol: 1e-8,
            transient_time: 20e-6,
            average_periods: 10,
            dephasing_rate: TWO_PI * 0.3e6,
        }
    }
}

impl EvolutionSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt_max > 0.0 && self.dt_max.is_finite()) {
            return Err(invalid("dt_max", "must be > 0"));
        }
        if !(self.rel_tol > 0.0) {
            return Err(invalid("rel_tol", "must be > 0"));
        }
        if !(self.transient_time >= 0.0 && self.transient_time.is_finite()) {
            return Err(invalid("transient_time", "must be >= 0"));
        }
        if self.average_periods < 1 {
            return Err(invalid("average_periods", "must be >= 1"));
        }
        if !(self.dephasing_rate >= 0.0 && self.dephasing_rate.is_finite()) {
            return Err(invalid("dephasing_rate", "must be >= 0"));
        }
        Ok(())
    }

    /// Step bound `min(dt_max, 1/(50 f_rf), 1/(50 max Rabi))`.
    pub fn step_bound(&self, drives: &DriveConfig) -> f64 {
        let mut dt = self.dt_max;
        if drives.rf_active() {
            dt = dt.min(1.0 / (50.0 * drives.f_rf));
        }
        let rabi = drives.max_rabi();
        if rabi > 0.0 {
            dt = dt.min(1.0 / (50.0 * rabi));
        }
        dt
    }
}

/// Worst invariant values seen during a run.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EvolutionReport {
    pub steps: u64,
    pub dt: f64,
    pub max_trace_drift: f64,
    pub max_hermiticity_defect: f64,
    pub min_eigenvalue: f64,
}

impl EvolutionReport {
    fn new(dt: f64) -> Self {
        Self { steps: 0, dt, max_trace_drift: 0.0, max_hermiticity_defect: 0.0, min_eigenvalue: f64::INFINITY }
    }

    /// Report of no run at all; neutral element of [`merge`](Self::merge).
    pub fn empty() -> Self {
        Self::new(0.0)
    }

    pub fn merge(&mut self, other: &EvolutionReport) {
        self.steps += other.steps;
        self.dt = self.dt.max(other.dt);
        self.max_trace_drift = self.max_trace_drift.max(other.max_trace_drift);
        self.max_hermiticity_defect = self.max_hermiticity_defect.max(other.max_hermiticity_defect);
        self.min_eigenvalue = self.min_eigenvalue.min(other.min_eigenvalue);
    }

    /// Combined report of many runs.
    pub fn combine<'a>(reports: impl IntoIterator<Item = &'a EvolutionReport>) -> EvolutionReport {
        let mut acc = EvolutionReport::empty();
        for r in reports {
            acc.merge(r);
        }
        acc
    }
}

/// Fixed-step fourth-order Runge–Kutta integrator of the master equation.
pub(crate) struct Integrator {
    gen: Generator,
    f_rf: f64,
    rf_on: bool,
    rho: Vec<C64>,
    k: [Vec<C64>; 4],
    tmp: Vec<C64>,
    t: f64,
    trace0: f64,
    tol: f64,
    report: EvolutionReport,
}

impl Integrator {
    pub fn new(
        rho0: &DensityMatrix,
        model: &LevelModel,
        drives: &DriveConfig,
        settings: &EvolutionSettings,
        dt: f64,
    ) -> Result<Self> {
        let mut ops = model.collapse_ops.clone();
        if settings.dephasing_rate > 0.0 {
            ops.push(dephasing_operator(settings.dephasing_rate));
        }
        if rho0.dim() != model.dim() {
            return Err(Error::DimensionMismatch(format!("state {} vs model {}", rho0.dim(), model.dim())));
        }
        let gen = Generator::new(&model.h_drift, &model.h_rf_coupling, &ops)?;
        let n2 = model.dim() * model.dim();
        Ok(Self {
            gen,
            f_rf: drives.f_rf,
            rf_on: drives.rf_active(),
            rho: rho0.matrix().as_slice().to_vec(),
            k: std::array::from_fn(|_| vec![C64::new(0.0, 0.0); n2]),
            tmp: vec![C64::new(0.0, 0.0); n2],
            t: 0.0,
            trace0: rho0.trace(),
            tol: settings.rel_tol,
            report: EvolutionReport::new(dt),
        })
    }

    fn drive(&self, t: f64) -> f64 {
        if self.rf_on {
            (TWO_PI * self.f_rf * t).cos()
        } else {
            0.0
        }
    }

    pub fn step(&mut self, dt: f64) -> Result<()> {
        let t = self.t;
        let (c0, ch, c1) = (self.drive(t), self.drive(t + 0.5 * dt), self.drive(t + dt));
        let [k1, k2, k3, k4] = &mut self.k;

        self.gen.apply(&self.rho, c0, k1);
        for ((d, &r), &k) in self.tmp.iter_mut().zip(&self.rho).zip(k1.iter()) {
            *d = r + k * (0.5 * dt);
        }
        self.gen.apply(&self.tmp, ch, k2);
        for ((d, &r), &k) in self.tmp.iter_mut().zip(&self.rho).zip(k2.iter()) {
            *d = r + k * (0.5 * dt);
        }
        self.gen.apply(&self.tmp, ch, k3);
        for ((d, &r), &k) in self.tmp.iter_mut().zip(&self.rho).zip(k3.iter()) {
            *d = r + k * dt;
        }
        self.gen.apply(&self.tmp, c1, k4);
        let w = dt / 6.0;
        for (idx, r) in self.rho.iter_mut().enumerate() {
            *r += (k1[idx] + (k2[idx] + k3[idx]) * 2.0 + k4[idx]) * w;
        }
        self.t += dt;
        self.report.steps += 1;

        let n = self.gen.dim();
        let tr: f64 = (0..n).map(|i| self.rho[i * n + i].re).sum();
        let drift = (tr - self.trace0).abs();
        self.report.max_trace_drift = self.report.max_trace_drift.max(drift);
        if !(drift <= self.tol) {
            return Err(Error::InvariantViolation {
                time: self.t,
                detail: format!("trace drift {drift:.3e} exceeds {:.1e}; step {dt:.3e} s too large?", self.tol),
            });
        }
        Ok(())
    }

    /// Hermiticity and positivity check of the current state.
    pub fn audit(&mut self) -> Result<()> {
        let state = self.state();
        let herm = state.hermiticity_defect();
        self.report.max_hermiticity_defect = self.report.max_hermiticity_defect.max(herm);
        if !(herm <= HERMITICITY_TOL) {
            return Err(Error::InvariantViolation { time: self.t, detail: format!("hermiticity defect {herm:.3e}") });
        }
        let min = state.min_eigenvalue()?;
        self.report.min_eigenvalue = self.report.min_eigenvalue.min(min);
        if !(min >= MIN_EIGENVALUE_TOL) {
            return Err(Error::InvariantViolation { time: self.t, detail: format!("minimum eigenvalue {min:.3e}") });
        }
        Ok(())
    }

    /// Runs `steps` steps, auditing the state at evenly spaced points.
    pub fn run(&mut self, steps: u64, dt: f64) -> Result<()> {
        let stride = (steps / EIGEN_SAMPLES as u64).max(1);
        for s in 1..=steps {
            self.step(dt)?;
            if s % stride == 0 && s != steps {
                self.audit()?;
            }
        }
        self.audit()
    }

    pub fn excited_population(&self) -> f64 {
        let n = self.gen.dim();
        EXCITED.map(|k| self.rho[k * n + k].re).sum()
    }

    pub fn state(&self) -> DensityMatrix {
        let n = self.gen.dim();
        DensityMatrix::new_unchecked(ComplexMatrix::from_row_major(n, n, self.rho.clone()).expect("square"))
    }

    pub fn report(&self) -> EvolutionReport {
        self.report
    }
}

/// Integrates `dρ/dt` with `H(t) = h_drift + h_rf_coupling·cos(2π f_rf t)`
/// from `t = 0` to `t_final` using fixed-step RK4.
pub fn evolve(
    rho0: &DensityMatrix,
    model: &LevelModel,
    drives: &DriveConfig,
    settings: &EvolutionSettings,
    t_final: f64,
) -> Result<DensityMatrix> {
    evolve_with_report(rho0, model, drives, settings, t_final).map(|(rho, _)| rho)
}

pub fn evolve_with_report(
    rho0: &DensityMatrix,
    model: &LevelModel,
    drives: &DriveConfig,
    settings: &EvolutionSettings,
    t_final: f64,
) -> Result<(DensityMatrix, EvolutionReport)> {
    settings.validate()?;
    drives.validate()?;
    if !(t_final >= 0.0 && t_final.is_finite()) {
        return Err(invalid("t_final", "must be finite and >= 0"));
    }
    let bound = settings.step_bound(drives);
    if t_final == 0.0 {
        return Ok((rho0.clone(), EvolutionReport::new(bound)));
    }
    let steps = (t_final / bound).ceil() as u64;
    let dt = t_final / steps as f64;
    let mut integ = Integrator::new(rho0, model, drives, settings, dt)?;
    integ.run(steps, dt)?;
    Ok((integ.state(), integ.report()))
}

/// One spectrum point: fluorescence averaged over the steady-state drive
/// cycle, with the invariants observed during the run.
#[derive(Debug, Clone, Copy)]
pub struct FluorescenceRun {
    pub value: f64,
    pub report: EvolutionReport,
}

/// Evolves the unpolarized ground state for `transient_time`, then averages
/// the excited-state population over `average_periods` RF periods (or over
/// [`RF_OFF_WINDOW`] when the RF drive is off).
///
/// The step is the largest value below [`EvolutionSettings::step_bound`] that
/// fits an integer number of times into one RF period.
pub fn time_averaged_fluorescence(model: &LevelModel, drives: &DriveConfig, settings: &EvolutionSettings) -> Result<f64> {
    fluorescence_run(model, drives, settings).map(|r| r.value)
}

pub fn fluorescence_run(model: &LevelModel, drives: &DriveConfig, settings: &EvolutionSettings) -> Result<FluorescenceRun> {
    settings.validate()?;
    drives.validate()?;
    let bound = settings.step_bound(drives);
    let (dt, window_steps) = if drives.rf_active() {
        let period = 1.0 / drives.f_rf;
        let per_period = (period / bound).ceil() as u64;
        (period / per_period as f64, per_period * settings.average_periods as u64)
    } else {
        let n = (RF_OFF_WINDOW / bound).ceil() as u64;
        (RF_OFF_WINDOW / n as f64, n)
    };
    let transient_steps = (settings.transient_time / dt).ceil() as u64;

    let rho0 = initial_state_unpolarized();
    let mut integ = Integrator::new(&rho0, model, drives, settings, dt)?;
    integ.run(transient_steps, dt)?;

    // Rectangle rule on a periodic integrand over whole periods.
    let mut acc = 0.0;
    for _ in 0..window_steps {
        acc += integ.excited_population();
        integ.step(dt)?;
    }
    integ.audit()?;
    let value = acc / window_steps as f64;
    Ok(FluorescenceRun { value, report: integ.report() })
}
