//! Independent numerical diagonalization of each spin sector.
//!
//! Each sector Hamiltonian is discretized with the 3-point Laplacian between
//! hard walls, its lowest eigenvalues found by Sturm bisection and its
//! eigenvectors by inverse iteration. Grid halving plus Richardson
//! extrapolation drives the eigenvalues to near machine precision, which is
//! what the closed forms in [`crate::spectrum`] are checked against.

mod sector;
pub mod tridiagonal;
mod validation;

pub use sector::{
    build_sector_hamiltonian, converged_spectrum, expectation_position, lowest_eigenpairs,
    solve_sector, Grid, Refinement, SectorMatrix, SectorReport, SectorSolution, MAX_GRID_POINTS,
    MIN_GRID_POINTS,
};
pub use tridiagonal::{Eigenpair, SymTridiagonal};
pub use validation::{
    validate, validate_sector, CenterComparison, LevelComparison, SectorValidation,
    ValidationReport,
};
