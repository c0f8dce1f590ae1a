//! Lindblad time evolution of the 19-level density matrix and the
//! fluorescence observable.

mod evolve;
mod lindblad;
mod state;

pub use evolve::{
    evolve, evolve_with_report, fluorescence_run, time_averaged_fluorescence, EvolutionReport, EvolutionSettings,
    FluorescenceRun, RF_OFF_WINDOW,
};
pub use lindblad::{lindblad_rhs, Generator};
pub use state::{fluorescence, initial_state_unpolarized, DensityMatrix, HERMITICITY_TOL, MIN_EIGENVALUE_TOL, TRACE_TOL};
