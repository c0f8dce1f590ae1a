//! Dense complex linear algebra and spin-1 operators.
//!
//! Basis ordering is electron ⊗ nuclear, each ordered `|+1⟩, |0⟩, |−1⟩`.

mod expm;
mod matrix;
mod spin;

pub use expm::{expm, unitary_propagator};
pub use matrix::{kron, ComplexMatrix};
pub use spin::{hyperfine_index, hyperfine_labels, spin1_operators, HyperfineOperators, SpinOperators};
