//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The two Schubert conditions cannot be satisfied simultaneously by any
    /// k-plane, even for generic flags.
    #[error("empty intersection: {0}")]
    EmptyIntersection(String),

    /// A checker move produced a board violating the board invariants. This
    /// signals a bug in the reconstructed move table, not bad input.
    #[error("checkerboard invariant violation: {0}")]
    InvariantViolation(String),

    /// `link_stages` was called on boards that are not adjacent in the
    /// specialization schedule.
    #[error("boards are not schedule-adjacent")]
    UnlinkedStages,

    /// A numeric matrix could not be column-reduced onto a localization
    /// pattern within tolerance.
    #[error("pattern mismatch: {0}")]
    PatternMismatch(String),

    /// Randomization to a square system needs at least as many equations as
    /// unknowns.
    #[error("underdetermined system: {p} equations for {q} unknowns")]
    UnderdeterminedSystem { p: usize, q: usize },

    /// Newton's method failed to converge (residual grew twice in a row).
    #[error("Newton correction diverged")]
    NewtonDiverged,

    /// The adaptive step size hit its lower bound before reaching t = 1.
    #[error("minimum step size reached at t = {t}")]
    MinStepReached { t: f64 },

    /// A flag intersection that should be one-dimensional was not, within
    /// tolerance; the input flags are insufficiently generic.
    #[error("numerical degeneracy: {0}")]
    NumericalDegeneracy(String),

    /// The resolution poset has no path from the root to the bottom bracket;
    /// the problem has no solutions.
    #[error("infeasible problem: {0}")]
    InfeasibleProblem(String),

    /// The combinatorial count oracle was asked for an ambient size beyond
    /// its bound.
    #[error("oracle too large: {0}")]
    OracleTooLarge(String),

    /// Malformed user input (bracket syntax, dimension mismatch, parse
    /// failures).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
