//! Simulation of dual-frequency (microwave + radio-frequency) optically
//! detected magnetic resonance of NV centers in diamond at zero and weak
//! magnetic field.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`] dense complex matrices, the matrix exponential and spin-1
//!   operators,
//! * [`model`] the ground-state spin Hamiltonian and the 19-level optical
//!   cycle (9 ground + 9 excited hyperfine levels + a metastable singlet),
//! * [`dynamics`] Lindblad evolution and the fluorescence observable,
//! * [`spectra`] ODMR sweeps, strain-ensemble averaging, RF frequency /
//!   amplitude / Zeeman maps and splitting extraction,
//! * [`analytic`] reduced two-level models (Landau-Zener, dressed coupling,
//!   Bessel sidebands, Floquet quasi-energies) and eigenlevel curves,
//! * [`cli`] config-file driven runs that write CSV plus a metadata sidecar.
//!
//! Frequencies are stored in Hz everywhere. The factor 2π is applied once,
//! when Hamiltonians are assembled; every Hamiltonian matrix is in rad/s.

pub mod algebra;
pub mod analytic;
pub mod cli;
pub mod dynamics;
mod error;
pub mod model;
mod record;
pub mod spectra;

pub use error::{Error, Result};

pub use algebra::{expm, kron, spin1_operators, ComplexMatrix, SpinOperators};
pub use dynamics::{
    evolve, fluorescence, initial_state_unpolarized, lindblad_rhs, time_averaged_fluorescence, DensityMatrix,
    EvolutionReport, EvolutionSettings,
};
pub use model::{
    build_ground_hamiltonian, build_level_model, build_level_model_in_field, orientation_projections, DriveConfig,
    FieldVector, LevelModel, NvParameters,
};
pub use record::Record;
pub use spectra::{
    difference_spectrum, extract_splitting, odmr_sweep, rf_amplitude_map, rf_frequency_map, strain_average,
    zeeman_map, Spectrum, SpectrumMap, Splitting, StrainDistribution,
};

/// Crate version, recorded in spectrum metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub(crate) const TWO_PI: f64 = 2.0 * std::f64::consts::PI;
