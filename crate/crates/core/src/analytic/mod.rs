//! Closed-form reduced models and eigenlevel curves.

mod bessel;
mod floquet;
mod levels;
mod two_level;

pub use bessel::{bessel_j, bessel_j_orders, bessel_j_series};
pub use floquet::{one_period_propagator, quasi_energies, quasi_energy_gap, FLOQUET_SEGMENTS};
pub use levels::{anticrossing, eigenlevels_vs_field, pair_gap, LevelCurves, TRANSITION_LABELS};
pub use two_level::{
    dressed_model, lzt_resonance, predicted_splitting, predicted_splitting_harmonic, sideband_model,
    two_level_hamiltonian, DressedModel, TwoLevelParams,
};
