//! Spectral computations for the one-dimensional Schroedinger operator
//! `-y'' + q(x) y` with a 1-periodic, mean-zero step potential.
//!
//! The crate computes periodic and antiperiodic Bloch eigenvalues (band
//! edges), spectral gaps, and their large-index asymptotics by two
//! independent routes:
//!
//! * a truncated-series fixed-point solver with a posteriori error
//!   bounds ([`solver`], built on [`series`]), and
//! * a transfer-matrix discriminant oracle ([`oracle`]) used for
//!   cross-validation.
//!
//! [`potential`] supplies the closed-form Fourier data of the step
//! potential and [`asymptotics`] the gap and band-edge prediction
//! formulas.

pub mod asymptotics;
pub mod oracle;
pub mod potential;
pub mod series;
pub mod solver;

pub use potential::KroneckerPotential;
pub use series::{SectorIndex, SectorKind, TruncationParams};
pub use solver::{Condition, EigenSolution, LocalizationInterval};
