//! Exact constructions of mutually unbiased bases from su(2) phase
//! operators, quantum Fourier matrices, quadratic Gauss sums, generalized
//! Pauli (Weyl) operators and the Pauli group.

pub mod checks;
pub mod error;
pub mod gauss;
pub mod matrix;
pub mod mub;
pub mod pauli_group;
pub mod phase;
pub mod qfourier;
pub mod su2;
pub mod weyl;

pub use error::{Error, Result};
pub use matrix::{CMatrix, Matrix, PhaseMatrix};
pub use mub::{Basis, BasisLabel};
pub use phase::{root_of_unity, Phase};
