//! Flags and the gamma-decorated generalization sequence of the moving flag.
//!
//! A flag is an ordered basis of C^n; column i together with its predecessors
//! spans the i-dimensional subspace. The fixed flag is always the identity;
//! the moving flag starts coincident with it and generalizes over C(n,2)
//! moves to a full antitriangular matrix with random gamma constants below
//! the antidiagonal. Each generalizing move reverses one step of the checker
//! bubble sort: with critical row r,
//!
//!   new col r   = old col (r+1) + gamma * old col r,
//!   new col r+1 = old col r,
//!
//! with a fresh unit-circle gamma per move. The gradual introduction of the
//! gammas is the gamma trick ensuring the solution paths of the homotopies
//! contain only regular points for all but finitely many choices.

use crate::checkers::sort_schedule;
use crate::error::{Error, Result};
use crate::{CMat, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Random point on the complex unit circle.
pub fn unit_circle(rng: &mut impl Rng) -> C64 {
    let theta = rng.gen::<f64>() * std::f64::consts::TAU;
    C64::new(theta.cos(), theta.sin())
}

/// Standard complex Gaussian.
pub fn complex_gaussian(rng: &mut impl Rng) -> C64 {
    // Box-Muller.
    let u1: f64 = rng.gen::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    C64::new(r * (std::f64::consts::TAU * u2).cos(), r * (std::f64::consts::TAU * u2).sin())
}

const CONDITION_FLOOR: f64 = 1e-10;

/// An ordered basis of C^n representing a full flag.
#[derive(Clone, Debug, PartialEq)]
pub struct Flag(CMat);

impl Flag {
    pub fn new(m: CMat) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::InvalidInput("flag matrix must be square".into()));
        }
        let sv = m.clone().singular_values();
        let smax = sv.iter().fold(0.0f64, |a, &b| a.max(b));
        let smin = sv.iter().fold(f64::INFINITY, |a, &b| a.min(b));
        if smax == 0.0 || smin / smax <= CONDITION_FLOOR {
            return Err(Error::NumericalDegeneracy(format!(
                "flag matrix is numerically singular (ratio {:.3e})",
                smin / smax.max(f64::MIN_POSITIVE)
            )));
        }
        Ok(Flag(m))
    }

    pub fn identity(n: usize) -> Self {
        Flag(CMat::identity(n, n))
    }

    pub fn matrix(&self) -> &CMat {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    /// Row-major nested arrays of [re, im] pairs, the JSON wire format.
    pub fn to_rows(&self) -> Vec<Vec<C64>> {
        (0..self.n())
            .map(|i| (0..self.n()).map(|j| self.0[(i, j)]).collect())
            .collect()
    }

    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("flag rows must be square".into()));
        }
        Flag::new(CMat::from_fn(n, n, |i, j| rows[i][j]))
    }
}

impl Serialize for Flag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Flag {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<C64>>::deserialize(d)?;
        Flag::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// Entries i.i.d. complex Gaussian, resampled until comfortably nonsingular.
pub fn random_flag(n: usize, seed: u64) -> Flag {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let m = CMat::from_fn(n, n, |_, _| complex_gaussian(&mut rng));
        if let Ok(flag) = Flag::new(m) {
            return flag;
        }
    }
}

/// The sequence of moving-flag matrices across all C(n,2) generalizing moves,
/// with the gamma constants and per-move critical rows.
#[derive(Clone, Debug)]
pub struct MovingFlagSchedule {
    n: usize,
    /// stages[j] is the flag after j generalizing moves; stages[0] = I.
    stages: Vec<CMat>,
    gammas: Vec<C64>,
    /// Critical row of generalizing move j (reversing the corresponding
    /// specialization step).
    critical_rows: Vec<usize>,
}

/// Build the generalization sequence for C^n: identity to the antitriangular
/// matrix with gammas below the antidiagonal, one unit-circle gamma per move.
pub fn build_schedule(n: usize, seed: u64) -> MovingFlagSchedule {
    assert!(n >= 2, "schedules need n >= 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let game_schedule = sort_schedule(n);
    let moves = game_schedule.len();
    // Generalizing move j reverses specialization step moves-1-j.
    let critical_rows: Vec<usize> = (0..moves).map(|j| game_schedule[moves - 1 - j]).collect();
    let mut stages = Vec::with_capacity(moves + 1);
    stages.push(CMat::identity(n, n));
    let mut gammas = Vec::with_capacity(moves);
    for &r in &critical_rows {
        let gamma = unit_circle(&mut rng);
        let prev = stages.last().unwrap();
        let mut next = prev.clone();
        let col_r = prev.column(r - 1).clone_owned();
        let col_r1 = prev.column(r).clone_owned();
        next.set_column(r - 1, &(&col_r1 + &col_r * gamma));
        next.set_column(r, &col_r);
        stages.push(next);
        gammas.push(gamma);
    }
    MovingFlagSchedule {
        n,
        stages,
        gammas,
        critical_rows,
    }
}

impl MovingFlagSchedule {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of generalizing moves, C(n,2).
    pub fn num_moves(&self) -> usize {
        self.gammas.len()
    }

    pub fn stage_matrix(&self, j: usize) -> &CMat {
        &self.stages[j]
    }

    /// The fully general end of the sequence; it serves as the flag imposed
    /// by the condition this schedule consumes.
    pub fn final_matrix(&self) -> &CMat {
        self.stages.last().unwrap()
    }

    pub fn gamma(&self, j: usize) -> C64 {
        self.gammas[j]
    }

    pub fn critical_row(&self, j: usize) -> usize {
        self.critical_rows[j]
    }

    /// M(t) across generalizing move j, in the elementary-product form: only
    /// column r carries t, as stage_j * E(t) with the 2x2 block
    /// [[gamma t, 1], [1, 0]] at columns (r, r+1). At t = 1 this is exactly
    /// stage j+1; at t = 0 it is stage j with columns r, r+1 transposed, a
    /// column relabeling of the same flag data. The determinant has constant
    /// modulus in t.
    pub fn moving_flag_at(&self, j: usize, t: f64) -> CMat {
        let r = self.critical_rows[j];
        let gamma = self.gammas[j];
        let prev = &self.stages[j];
        let mut m = prev.clone();
        let col_r = prev.column(r - 1).clone_owned();
        let col_r1 = prev.column(r).clone_owned();
        m.set_column(r - 1, &(&col_r1 + &col_r * (gamma * C64::new(t, 0.0))));
        m.set_column(r, &col_r);
        m
    }

    /// Frame used for path tracking across move j: both endpoint matrices are
    /// hit exactly (columns r and r+1 interpolate linearly between the stage
    /// matrices, all others are shared by both stages).
    pub fn edge_frame_at(&self, j: usize, t: f64) -> CMat {
        let r = self.critical_rows[j];
        let s = &self.stages[j];
        let g = &self.stages[j + 1];
        let tc = C64::new(t, 0.0);
        let uc = C64::new(1.0 - t, 0.0);
        let mut m = s.clone();
        for col in [r - 1, r] {
            let mixed = g.column(col) * tc + s.column(col) * uc;
            m.set_column(col, &mixed);
        }
        m
    }
}
