//! Spectral analysis of quantum adiabatic evolution for Hamming-symmetric
//! cost functions in the permutation-symmetric (total spin `n/2`) sector.
//!
//! The interpolating Hamiltonian `H(tau) = (1 - tau) D + tau P` couples a
//! driver `D` (the extended `n S_x^2` or the localized `C(n-1,2)(n/2 - S_x)`)
//! to the problem diagonal `P = f(n/2 - S_z)`. Everything lives in the
//! `(n + 1)`-dimensional z-basis and is solved with a dense real-symmetric
//! eigensolver.

pub mod analysis;
pub mod banded;
pub mod cli;
pub mod cost;
pub mod eigen;
pub mod error;
pub mod exec;
pub mod format;
pub mod hamiltonian;
pub mod spin;

pub use banded::{BandedHermitian, Flavor};
pub use cost::{bruteforce_cost, canonical_cost, cost_from_table, h_cubic_in_s, scaled_cost_h, ScaledCost, SymmetricCost};
pub use eigen::{eigen_full, eigen_lowest, Spectrum};
pub use error::{Error, Result};
pub use exec::Execution;
pub use hamiltonian::{
    build_driver, build_problem_matrix, build_xbasis_matrix, hamiltonian_at, realify_gauge, rescaled_matrix,
    DriverKind, DriverSpec, InterpolatingHamiltonian, Kinetic, ProblemTerm,
};
pub use spin::{make_spin_system, sx_matrix, sx_squared_matrix, Parity, SpinSystem, WavefunctionProfile};
