//! Physical model: spin Hamiltonians, drives, dissipation and crystal
//! geometry.

mod hamiltonian;
mod levels;
mod orientation;
mod params;

pub use hamiltonian::build_ground_hamiltonian;
pub use levels::{
    build_level_model, build_level_model_in_field, dephasing_operator, Channel, LevelModel, DIM, EXCITED,
    GROUND, SINGLET,
};
pub use orientation::{field_along_111, orientation_projections, NV_AXES};
pub use params::{DriveConfig, FieldVector, NvParameters};
