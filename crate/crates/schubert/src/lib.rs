//! Numerical Schubert calculus on Grassmannians via Littlewood-Richardson
//! homotopies.
//!
//! A Schubert problem asks for the k-planes in C^n meeting a list of fixed
//! linear subspaces in prescribed dimensions. This crate solves such problems
//! numerically: it runs the geometric Littlewood-Richardson rule as a checker
//! game to build a resolution poset, constructs start solutions by linear
//! algebra from two-bracket problems, and tracks solution paths through a
//! sequence of flag-degeneration homotopies back to the original problem.
//! Solutions are certified a posteriori by singular-value rank tests and an
//! independent Littlewood-Richardson coefficient oracle.
//!
//! The main entry points are [`solver::solve`] for the full pipeline,
//! [`checkers::game_tree`] for the checker game itself, and
//! [`verify::count_check`] for purely combinatorial counts. The `schubert`
//! binary wraps these behind a CLI.
//!
//! ```
//! use schubert::combinatorics::SchubertProblem;
//! use schubert::{solver, tracking::TrackerSettings};
//!
//! let problem = SchubertProblem::parse(4, 2, "[2 4]^4").unwrap();
//! let sols = solver::solve(&problem, 7, &TrackerSettings::default()).unwrap();
//! assert_eq!(sols.solutions.len(), 2);
//! ```

pub mod checkers;
pub mod cli;
pub mod combinatorics;
pub mod equations;
pub mod error;
pub mod flags;
pub mod patterns;
pub mod solver;
pub mod tracking;
pub mod verify;

/// Real scalar used throughout the numeric half of the crate.
pub type Real = f64;
/// Complex scalar; all flags, patterns and solutions live over this.
pub type C64 = num_complex::Complex<Real>;
/// Dense complex matrix.
pub type CMat = nalgebra::DMatrix<C64>;
/// Dense complex column vector.
pub type CVec = nalgebra::DVector<C64>;

pub use error::{Error, Result};

pub(crate) fn cone() -> C64 {
    C64::new(1.0, 0.0)
}

pub(crate) fn czero() -> C64 {
    C64::new(0.0, 0.0)
}

/// Deterministic sub-seed derivation so that parallel work items draw
/// independent, reproducible random streams.
pub(crate) fn derive_seed(master: u64, salt: &str, idx: u64) -> u64 {
    // FNV-1a over the salt, then a splitmix64 round.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in salt.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100_0000_01b3);
    }
    let mut z = master ^ h.wrapping_add(idx.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
