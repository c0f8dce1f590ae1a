//! Sweeps and spectrum post-processing.

mod grid;
mod spectrum;
mod splitting;
mod sweep;

pub use grid::{MwGrid, StrainDistribution, StrainModel};
pub use spectrum::{difference_spectrum, strain_average, MapAxis, Spectrum, SpectrumMap};
pub use splitting::{extract_splitting, Splitting};
pub use sweep::{
    odmr_sweep, rf_amplitude_map, rf_frequency_map, strain_spectrum, volts_to_rabi, zeeman_map, Orientations, Sweep,
    RF_RABI_PER_VOLT,
};
pub(crate) use sweep::parallel_map;
