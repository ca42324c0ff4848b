//! Process-level failure classification and exit codes.

use std::fmt;

use blochband::solver::SolverError;

/// A failed run, carrying the exit code contract: 1 for configuration
/// errors, 2 for violated or degenerate numerical conditions, 3 for
/// non-convergence.
#[derive(Debug)]
pub enum Failure {
    /// Invalid or missing configuration; the message names the field.
    Config(String),
    /// Applicability or degeneracy condition violated at run time.
    Condition(String),
    /// The fixed-point iteration exhausted its budget.
    Convergence(String),
}

impl Failure {
    /// Exit code for this failure class.
    pub fn code(&self) -> u8 {
        match self {
            Failure::Config(_) => 1,
            Failure::Condition(_) => 2,
            Failure::Convergence(_) => 3,
        }
    }

    /// Classify a solver error into the exit-code contract.
    pub fn from_solver(err: SolverError) -> Self {
        match err {
            SolverError::NonConvergence { .. } => Failure::Convergence(err.to_string()),
            _ => Failure::Condition(err.to_string()),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Config(msg) | Failure::Condition(msg) | Failure::Convergence(msg) => {
                f.write_str(msg)
            }
        }
    }
}

impl std::error::Error for Failure {}
