//! Localization patterns: symbolic n x k coordinates for checkerboard
//! components, and the coordinate links between adjacent stages.
//!
//! A pattern column j corresponds to the j-th red checker (sorted by row).
//! It has a One at the red checker's row, a free variable at every row above
//! it whose black checker sits weakly west of the red checker, and is
//! echelon-reduced to Zero at rows carrying the One of a red checker strictly
//! northwest. Rows are expressed in the moving-flag basis, so the k-plane a
//! pattern instantiation represents is M * X for the stage's flag matrix M.
//!
//! Links between stages come in four kinds. When the component's geometry is
//! constant across a move, the link is a pure change of coordinates (Trivial
//! or Rename). When the red checkers swap rows, the component breaks off
//! along an explicit one-parameter family generalizing the classical
//! four-lines swap. In the remaining moves the component itself deforms with
//! the moving flag and the link is a homotopy with no closed-form value map.

use crate::checkers::{Checkerboard, DiagCase, MoveLabel, RowCase};
use crate::error::{Error, Result};
use crate::{CMat, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternEntry {
    Zero,
    One,
    /// Free variable, numbered column-major over the whole pattern.
    Var(usize),
}

impl PatternEntry {
    pub fn var_index(&self) -> Option<usize> {
        match self {
            PatternEntry::Var(v) => Some(*v),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalizationPattern {
    n: usize,
    k: usize,
    /// entries[row-1][col-1]
    entries: Vec<Vec<PatternEntry>>,
    /// var index -> (row, col), 1-based
    vars: Vec<(usize, usize)>,
    /// One row per column
    ones: Vec<usize>,
    board: Option<Checkerboard>,
}

impl LocalizationPattern {
    /// Build a pattern from an explicit entry grid (entries[row][col],
    /// 0-based); variables are renumbered column-major. Used for ad-hoc
    /// coordinate charts that do not come from a checkerboard.
    pub fn from_grid(grid: Vec<Vec<PatternEntry>>) -> Result<Self> {
        let n = grid.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty pattern".into()));
        }
        let k = grid[0].len();
        let mut entries = vec![vec![PatternEntry::Zero; k]; n];
        let mut vars = Vec::new();
        let mut ones = Vec::new();
        for j in 0..k {
            let mut one_row = None;
            for (i, row) in grid.iter().enumerate() {
                match row[j] {
                    PatternEntry::Zero => {}
                    PatternEntry::One => {
                        if one_row.replace(i + 1).is_some() {
                            return Err(Error::InvalidInput(format!(
                                "column {} has more than one One",
                                j + 1
                            )));
                        }
                        entries[i][j] = PatternEntry::One;
                    }
                    PatternEntry::Var(_) => {
                        entries[i][j] = PatternEntry::Var(vars.len());
                        vars.push((i + 1, j + 1));
                    }
                }
            }
            ones.push(
                one_row
                    .ok_or_else(|| Error::InvalidInput(format!("column {} has no One", j + 1)))?,
            );
        }
        Ok(LocalizationPattern {
            n,
            k,
            entries,
            vars,
            ones,
            board: None,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn var_count(&self) -> usize {
        self.vars.len()
    }

    /// (row, col) of each variable, 1-based, in variable order.
    pub fn var_positions(&self) -> &[(usize, usize)] {
        &self.vars
    }

    pub fn entry(&self, row: usize, col: usize) -> PatternEntry {
        self.entries[row - 1][col - 1]
    }

    pub fn one_row(&self, col: usize) -> usize {
        self.ones[col - 1]
    }

    pub fn board(&self) -> Option<&Checkerboard> {
        self.board.as_ref()
    }

    /// Column (1-based) whose One sits in the given row, if any.
    pub fn column_of_row(&self, row: usize) -> Option<usize> {
        self.ones.iter().position(|&a| a == row).map(|j| j + 1)
    }

    /// True if any One or Var sits in the given row.
    pub fn row_occupied(&self, row: usize) -> bool {
        self.entries[row - 1]
            .iter()
            .any(|e| !matches!(e, PatternEntry::Zero))
    }

    pub fn instantiate(&self, vals: &[C64]) -> CMat {
        assert_eq!(vals.len(), self.vars.len(), "wrong number of values");
        let mut m = CMat::zeros(self.n, self.k);
        for i in 0..self.n {
            for j in 0..self.k {
                m[(i, j)] = match self.entries[i][j] {
                    PatternEntry::Zero => C64::new(0.0, 0.0),
                    PatternEntry::One => C64::new(1.0, 0.0),
                    PatternEntry::Var(v) => vals[v],
                };
            }
        }
        m
    }

    /// Pretty printer mirroring the published pattern figures.
    pub fn render(&self) -> String {
        let mut cells = vec![vec![String::new(); self.k]; self.n];
        let mut width = 1;
        for i in 0..self.n {
            for j in 0..self.k {
                let s = match self.entries[i][j] {
                    PatternEntry::Zero => "·".to_string(),
                    PatternEntry::One => "1".to_string(),
                    PatternEntry::Var(_) => format!("x_{{{},{}}}", i + 1, j + 1),
                };
                width = width.max(s.chars().count());
                cells[i][j] = s;
            }
        }
        let mut out = String::new();
        for row in cells {
            for (j, cell) in row.iter().enumerate() {
                if j > 0 {
                    out.push(' ');
                }
                for _ in 0..width - cell.chars().count() {
                    out.push(' ');
                }
                out.push_str(cell);
            }
            out.push('\n');
        }
        out
    }
}

/// Localization pattern of a checkerboard.
pub fn pattern_from_board(board: &Checkerboard) -> LocalizationPattern {
    let n = board.n();
    let k = board.k();
    let mut entries = vec![vec![PatternEntry::Zero; k]; n];
    let mut vars = Vec::new();
    let mut ones = Vec::with_capacity(k);
    for (j, &(a, b)) in board.reds().iter().enumerate() {
        entries[a - 1][j] = PatternEntry::One;
        ones.push(a);
        for i in 1..a {
            let west = board.black().col_of_row(i) <= b;
            let reduced = board.reds().iter().any(|&(a2, b2)| a2 == i && b2 < b);
            if west && !reduced {
                entries[i - 1][j] = PatternEntry::Var(vars.len());
                vars.push((i, j + 1));
            }
        }
    }
    LocalizationPattern {
        n,
        k,
        entries,
        vars,
        ones,
        board: Some(board.clone()),
    }
}

/// Column-reduce `numeric` (invertible column operations only, so the spanned
/// k-plane is unchanged) onto the target pattern and return the variable
/// values. Pivots are chosen by partial pivoting; a required pivot smaller
/// than tol times the matrix scale, or a structural zero larger than it, is a
/// PatternMismatch.
pub fn fit_pattern(numeric: &CMat, target: &LocalizationPattern, tol: f64) -> Result<Vec<C64>> {
    let (n, k) = (target.n, target.k);
    if numeric.nrows() != n || numeric.ncols() != k {
        return Err(Error::InvalidInput(format!(
            "matrix is {}x{}, pattern is {}x{}",
            numeric.nrows(),
            numeric.ncols(),
            n,
            k
        )));
    }
    let scale = numeric.iter().map(|c| c.norm()).fold(0.0, f64::max).max(1.0);
    let mut a = numeric.clone();

    // Pivot at the One rows from the bottom column up; board patterns have
    // strictly increasing One rows and all free entries above them, so
    // columns already processed are never disturbed at their pivot rows.
    for idx in (0..k).rev() {
        let p = target.ones[idx] - 1;
        let (best, best_abs) = (0..=idx)
            .map(|c| (c, a[(p, c)].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if best_abs < tol * scale {
            return Err(Error::PatternMismatch(format!(
                "pivot for column {} at row {} has magnitude {best_abs:.3e}",
                idx + 1,
                p + 1
            )));
        }
        a.swap_columns(best, idx);
        let inv = C64::new(1.0, 0.0) / a[(p, idx)];
        for i in 0..n {
            a[(i, idx)] *= inv;
        }
        for c in 0..k {
            if c == idx {
                continue;
            }
            if matches!(target.entries[p][c], PatternEntry::Zero) {
                let f = a[(p, c)];
                if f.norm() > 0.0 {
                    for i in 0..n {
                        let t = a[(i, idx)];
                        a[(i, c)] -= f * t;
                    }
                }
            }
        }
    }

    // Structural zeros must actually vanish, within tolerance.
    let reduced_scale = a.iter().map(|c| c.norm()).fold(0.0, f64::max).max(1.0);
    let mut vals = vec![C64::new(0.0, 0.0); target.vars.len()];
    for i in 0..n {
        for j in 0..k {
            match target.entries[i][j] {
                PatternEntry::Zero => {
                    if a[(i, j)].norm() > tol * reduced_scale {
                        return Err(Error::PatternMismatch(format!(
                            "entry ({}, {}) should vanish but is {:.3e}",
                            i + 1,
                            j + 1,
                            a[(i, j)].norm()
                        )));
                    }
                }
                PatternEntry::One => {}
                PatternEntry::Var(v) => vals[v] = a[(i, j)],
            }
        }
    }
    Ok(vals)
}

/// Re-express coordinates written against the specialized basis of a move in
/// the generalized basis. The bases agree away from rows r, r+1 and are
/// related by g_r = s_{r+1} + gamma * s_r, g_{r+1} = s_r.
pub fn special_to_general(m: &CMat, r: usize, gamma: C64) -> CMat {
    let mut out = m.clone();
    for j in 0..m.ncols() {
        let cr = m[(r - 1, j)];
        let cr1 = m[(r, j)];
        out[(r - 1, j)] = cr1;
        out[(r, j)] = cr - gamma * cr1;
    }
    out
}

/// Inverse of [`special_to_general`].
pub fn general_to_special(m: &CMat, r: usize, gamma: C64) -> CMat {
    let mut out = m.clone();
    for j in 0..m.ncols() {
        let cr = m[(r - 1, j)];
        let cr1 = m[(r, j)];
        out[(r - 1, j)] = gamma * cr + cr1;
        out[(r, j)] = cr;
    }
    out
}

/// Invertible rational change of coordinates between adjacent patterns,
/// evaluated numerically; only evaluation and inversion at points are ever
/// needed.
#[derive(Clone, Debug)]
pub struct CoordChange {
    pub critical_row: usize,
    pub gamma: C64,
    pub prev: LocalizationPattern,
    pub next: LocalizationPattern,
    pub tol: f64,
}

impl CoordChange {
    /// Specialization direction: values on the earlier (more general) stage
    /// to values on the later one.
    pub fn forward(&self, prev_vals: &[C64]) -> Result<Vec<C64>> {
        let m = self.prev.instantiate(prev_vals);
        let m = general_to_special(&m, self.critical_row, self.gamma);
        fit_pattern(&m, &self.next, self.tol)
    }

    /// Generalization (tracking) direction.
    pub fn inverse(&self, next_vals: &[C64]) -> Result<Vec<C64>> {
        let m = self.next.instantiate(next_vals);
        let m = special_to_general(&m, self.critical_row, self.gamma);
        fit_pattern(&m, &self.prev, self.tol)
    }
}

/// The explicit one-parameter family along which a swap move is tracked.
///
/// In the coordinates of the later (specialized) stage the family keeps every
/// pattern column except the one of the red checker on the risen square,
/// which becomes
///
///   p(t) = (1 + (gamma - 1) t) * w_{r+1} * U + t * (W - e_{r_d}),
///
/// where U and W are the instantiated columns of the two swapped red checkers
/// and w_{r+1} is W's variable at row r+1. At t = 0 this spans the swap
/// component exactly; at t = 1 a change of coordinates lands it on the
/// earlier pattern. With gamma = 1 it reduces to the classical four-lines
/// swap family.
#[derive(Clone, Debug)]
pub struct SwapFamily {
    pub critical_row: usize,
    /// Row of the dropped red checker, r_d.
    pub diag_row: usize,
    pub gamma: C64,
    /// 0-based column (in `next`) of the red on the risen square (r, c_r).
    pub u_col: usize,
    /// 0-based column (in `next`) of the dropped red (r_d, b_row).
    pub w_col: usize,
    /// Variable index (in `next`) of the W column's entry at row r+1.
    pub w_r1_var: usize,
    pub prev: LocalizationPattern,
    pub next: LocalizationPattern,
}

impl SwapFamily {
    pub fn lambda(&self, t: f64) -> C64 {
        C64::new(1.0, 0.0) + (self.gamma - C64::new(1.0, 0.0)) * C64::new(t, 0.0)
    }

    /// The n x k family matrix at (vals, t), in the coordinates of the later
    /// stage.
    pub fn eval(&self, vals: &[C64], t: f64) -> CMat {
        let mut m = self.next.instantiate(vals);
        let beta = vals[self.w_r1_var];
        let lam = self.lambda(t);
        let tc = C64::new(t, 0.0);
        let u = m.column(self.u_col).clone_owned();
        let w = m.column(self.w_col).clone_owned();
        for i in 0..m.nrows() {
            let w_varpart = if i + 1 == self.diag_row {
                C64::new(0.0, 0.0)
            } else {
                w[i]
            };
            m[(i, self.u_col)] = lam * beta * u[i] + tc * w_varpart;
        }
        m
    }

    /// Map the tracked endpoint at t = 1 onto the earlier pattern.
    pub fn land(&self, vals: &[C64], tol: f64) -> Result<Vec<C64>> {
        let m = self.eval(vals, 1.0);
        let m = special_to_general(&m, self.critical_row, self.gamma);
        fit_pattern(&m, &self.prev, tol)
    }
}

/// Coordinate link between two schedule-adjacent boards.
#[derive(Clone, Debug)]
pub enum StageLink {
    /// Identical patterns, identity value map.
    Trivial,
    /// The component is constant across the move; the link is an invertible
    /// rational change of coordinates.
    Rename(CoordChange),
    /// Red checkers swap rows; tracked along the explicit family.
    SwapHomotopy(SwapFamily),
    /// The component deforms with the moving flag; there is no closed-form
    /// value map and the stage must be tracked along P(M(t)X) = 0.
    FrameHomotopy { critical_row: usize },
}

/// Build the link for the move prev -> next with the given move label and the
/// gamma constant of the corresponding generalization move.
pub fn link_stages(
    prev: &Checkerboard,
    next: &Checkerboard,
    label: &MoveLabel,
    gamma: C64,
    tol: f64,
) -> Result<StageLink> {
    let r = label.critical_row;
    if next.stage != prev.stage + 1 || *next.black() != prev.black().swap_rows(r) {
        return Err(Error::UnlinkedStages);
    }
    let prev_pat = pattern_from_board(prev);
    let next_pat = pattern_from_board(next);
    if prev_pat.var_count() != next_pat.var_count() {
        return Err(Error::InvariantViolation(format!(
            "variable count changed across a move: {} -> {}",
            prev_pat.var_count(),
            next_pat.var_count()
        )));
    }

    if label.swap {
        let u_col = next_pat.column_of_row(r).ok_or(Error::UnlinkedStages)? - 1;
        // The dropped red keeps its column; it is the next-board red below
        // the critical row that was not there before.
        let (w_row, _) = next
            .reds()
            .iter()
            .copied()
            .find(|&p| p.0 > r && !prev.reds().contains(&p))
            .ok_or(Error::UnlinkedStages)?;
        let w_col = next_pat.column_of_row(w_row).ok_or(Error::UnlinkedStages)? - 1;
        let w_r1_var = next_pat
            .entry(r + 1, w_col + 1)
            .var_index()
            .ok_or_else(|| {
                Error::InvariantViolation(
                    "swap family needs the dropped column's variable at row r+1".into(),
                )
            })?;
        return Ok(StageLink::SwapHomotopy(SwapFamily {
            critical_row: r,
            diag_row: w_row,
            gamma,
            u_col,
            w_col,
            w_r1_var,
            prev: prev_pat,
            next: next_pat,
        }));
    }

    // A red on the descending checker with nothing on the rising square makes
    // the component deform (the slide cases).
    if label.case.row == RowCase::OnDescending && label.case.diag != DiagCase::OnRising {
        return Ok(StageLink::FrameHomotopy { critical_row: r });
    }

    // The moving direction only enters through pattern entries in the
    // critical row; a red checker at row r+1 supplies the free basis
    // direction that absorbs it.
    let constant = !prev_pat.row_occupied(r) || prev.red_in_row(r + 1).is_some();
    if !constant {
        return Ok(StageLink::FrameHomotopy { critical_row: r });
    }

    let quiet = |p: &LocalizationPattern| !p.row_occupied(r) && !p.row_occupied(r + 1);
    if quiet(&prev_pat) && quiet(&next_pat) {
        return Ok(StageLink::Trivial);
    }
    Ok(StageLink::Rename(CoordChange {
        critical_row: r,
        gamma,
        prev: prev_pat,
        next: next_pat,
        tol,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checkers::{game_tree, initial_board, move_red, BlackConfig};
    use crate::combinatorics::{Ambient, Bracket};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn b(n: usize, k: usize, e: &[usize]) -> Bracket {
        Bracket::new(e.to_vec(), Ambient::new(n, k).unwrap()).unwrap()
    }

    fn rand_vals(rng: &mut ChaCha8Rng, q: usize) -> Vec<C64> {
        (0..q)
            .map(|_| C64::new(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0))
            .collect()
    }

    fn grid_of(p: &LocalizationPattern) -> Vec<String> {
        (1..=p.n())
            .map(|i| {
                (1..=p.k())
                    .map(|j| match p.entry(i, j) {
                        PatternEntry::Zero => '.',
                        PatternEntry::One => '1',
                        PatternEntry::Var(_) => 'x',
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn four_lines_stage0_pattern() {
        let w = b(4, 2, &[2, 4]);
        let board = initial_board(&w, &w).unwrap();
        let pat = pattern_from_board(&board);
        assert_eq!(grid_of(&pat), vec!["x.", "1.", ".x", ".1"]);
        assert_eq!(pat.var_count(), 2);
    }

    #[test]
    fn figure_four_pattern() {
        // The published n = 14, k = 7 mid-game example.
        let black =
            BlackConfig::new(vec![6, 7, 8, 9, 11, 12, 13, 14, 10, 5, 4, 3, 2, 1]).unwrap();
        let reds = vec![
            (3, 14),
            (7, 2),
            (8, 13),
            (10, 12),
            (12, 6),
            (13, 10),
            (14, 9),
        ];
        let board = Checkerboard::new(black, reds, 0).unwrap();
        let pat = pattern_from_board(&board);
        let expected = vec![
            "x......",
            "x.x....",
            "1.xx...",
            "..xx...",
            "..xx.x.",
            ".xxxxxx",
            ".1.....",
            "..1xxxx",
            "...xxxx",
            "...1.xx",
            "....xxx",
            "....1..",
            ".....1x",
            "......1",
        ];
        assert_eq!(grid_of(&pat), expected);
        // Column 2 has its One at row 7 and a single variable x_{6,2}.
        assert_eq!(pat.one_row(2), 7);
        assert!(matches!(pat.entry(6, 2), PatternEntry::Var(_)));
    }

    #[test]
    fn initial_var_count_formula() {
        // var count of the initial board is k(n-k) - |omega| - |tau|.
        for (n, k) in [(4, 2), (5, 2), (6, 3), (6, 2)] {
            let amb = Ambient::new(n, k).unwrap();
            for w in crate::combinatorics::all_brackets(amb) {
                for t in crate::combinatorics::all_brackets(amb) {
                    if w.codim() + t.codim() > amb.dim() {
                        continue;
                    }
                    if let Ok(board) = initial_board(&w, &t) {
                        let pat = pattern_from_board(&board);
                        assert_eq!(
                            pat.var_count(),
                            amb.dim() - w.codim() - t.codim(),
                            "({w}, {t})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn fit_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let w = b(6, 3, &[2, 4, 6]);
        let tree = game_tree(&w, &w).unwrap();
        for node in &tree.nodes {
            let pat = pattern_from_board(&node.board);
            let vals = rand_vals(&mut rng, pat.var_count());
            let m = pat.instantiate(&vals);
            let back = fit_pattern(&m, &pat, 1e-10).unwrap();
            for (x, y) in vals.iter().zip(&back) {
                assert!((x - y).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn fit_scrambled_basis() {
        // fit_pattern recovers the same values from an arbitrary basis of the
        // same plane.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let w = b(4, 2, &[2, 4]);
        let board = initial_board(&w, &w).unwrap();
        let pat = pattern_from_board(&board);
        let vals = rand_vals(&mut rng, 2);
        let m = pat.instantiate(&vals);
        let g = CMat::from_fn(2, 2, |_, _| C64::new(rng.gen::<f64>() + 0.2, rng.gen::<f64>()));
        let mixed = &m * &g;
        let back = fit_pattern(&mixed, &pat, 1e-8).unwrap();
        for (x, y) in vals.iter().zip(&back) {
            assert!((x - y).norm() < 1e-8, "{x} vs {y}");
        }
    }

    #[test]
    fn fit_structural_zero_fails() {
        let w = b(4, 2, &[2, 4]);
        let board = initial_board(&w, &w).unwrap();
        let pat = pattern_from_board(&board);
        let mut m = CMat::zeros(4, 2);
        m[(0, 0)] = C64::new(1.0, 0.0);
        m[(3, 0)] = C64::new(1.0, 0.0);
        m[(2, 1)] = C64::new(1.0, 0.0);
        m[(3, 1)] = C64::new(1.0, 0.0);
        assert!(matches!(
            fit_pattern(&m, &pat, 1e-8),
            Err(Error::PatternMismatch(_))
        ));
    }

    #[test]
    fn swap_family_matches_published_form() {
        // With gamma = 1 the family is the published four-lines swap matrix
        // entrywise.
        let w = b(4, 2, &[2, 4]);
        let board0 = initial_board(&w, &w).unwrap();
        let (board1, _) = move_red(&board0, 3).unwrap().into_iter().next().unwrap();
        let succ = move_red(&board1, 2).unwrap();
        let (swap_board, swap_label) = succ[1].clone();
        assert!(swap_label.swap);
        let link =
            link_stages(&board1, &swap_board, &swap_label, C64::new(1.0, 0.0), 1e-10).unwrap();
        let fam = match link {
            StageLink::SwapHomotopy(f) => f,
            other => panic!("expected swap link, got {other:?}"),
        };
        let x12 = C64::new(0.3, -0.7);
        let x32 = C64::new(-1.1, 0.4);
        let mut vals = vec![C64::new(0.0, 0.0); 2];
        vals[fam.next.entry(1, fam.w_col + 1).var_index().unwrap()] = x12;
        vals[fam.w_r1_var] = x32;
        for t in [0.0, 0.37, 1.0] {
            let m = fam.eval(&vals, t);
            let tc = C64::new(t, 0.0);
            // Risen red's column: (x12 t, x32, x32 t, 0).
            assert!((m[(0, fam.u_col)] - x12 * tc).norm() < 1e-12);
            assert!((m[(1, fam.u_col)] - x32).norm() < 1e-12);
            assert!((m[(2, fam.u_col)] - x32 * tc).norm() < 1e-12);
            assert!(m[(3, fam.u_col)].norm() < 1e-12);
            // Dropped column is constant: (x12, 0, x32, 1).
            assert!((m[(0, fam.w_col)] - x12).norm() < 1e-12);
            assert!(m[(1, fam.w_col)].norm() < 1e-12);
            assert!((m[(2, fam.w_col)] - x32).norm() < 1e-12);
            assert!((m[(3, fam.w_col)] - C64::new(1.0, 0.0)).norm() < 1e-12);
        }
        // Landing at t = 1 reproduces the classical values x11 = x12/x32 and
        // x32' = -x32.
        let landed = fam.land(&vals, 1e-10).unwrap();
        let prev_val = |row: usize, col: usize| {
            fam.prev
                .entry(row, col)
                .var_index()
                .map(|v| landed[v])
                .unwrap()
        };
        assert!((prev_val(1, 1) - x12 / x32).norm() < 1e-10);
        assert!((prev_val(3, 2) + x32).norm() < 1e-10);
    }

    #[test]
    fn rename_eq14() {
        // The rename across the first four-lines move sends the critical-row
        // variable x to gamma + 1/x going forward, i.e. x' -> 1/(x' - gamma)
        // coming back; with gamma = 1 that is the published 1/(x - 1).
        let w = b(4, 2, &[2, 4]);
        let board0 = initial_board(&w, &w).unwrap();
        let (board1, label) = move_red(&board0, 3).unwrap().into_iter().next().unwrap();
        for gamma in [C64::new(1.0, 0.0), C64::new(0.3, 0.8)] {
            let link = link_stages(&board0, &board1, &label, gamma, 1e-12).unwrap();
            let cc = match link {
                StageLink::Rename(cc) => cc,
                other => panic!("expected rename, got {other:?}"),
            };
            let x11 = C64::new(0.25, -0.5);
            let x32 = C64::new(1.75, 0.6);
            let next_vals = cc.forward(&[x11, x32]).unwrap();
            let expect = gamma + C64::new(1.0, 0.0) / x32;
            assert!((next_vals[0] - x11).norm() < 1e-10);
            assert!((next_vals[1] - expect).norm() < 1e-10);
            let back = cc.inverse(&next_vals).unwrap();
            assert!((back[0] - x11).norm() < 1e-10);
            assert!((back[1] - x32).norm() < 1e-10);
        }
    }

    #[test]
    fn rename_round_trip() {
        // forward-then-inverse of every Rename link in two reference games is
        // the identity on variable assignments.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for w in [b(4, 2, &[2, 4]), b(6, 3, &[2, 4, 6])] {
            let tree = game_tree(&w, &w).unwrap();
            for (idx, node) in tree.nodes.iter().enumerate() {
                for &(child, label) in &node.children {
                    let gamma = C64::new(rng.gen::<f64>() + 0.1, rng.gen::<f64>());
                    let link =
                        link_stages(&node.board, &tree.nodes[child].board, &label, gamma, 1e-10)
                            .unwrap();
                    if let StageLink::Rename(cc) = link {
                        let vals = rand_vals(&mut rng, cc.prev.var_count());
                        let fwd = match cc.forward(&vals) {
                            Ok(f) => f,
                            // Rational maps have poles; skip unlucky draws.
                            Err(Error::PatternMismatch(_)) => continue,
                            Err(e) => panic!("node {idx}: {e}"),
                        };
                        let back = cc.inverse(&fwd).unwrap();
                        for (x, y) in vals.iter().zip(&back) {
                            assert!((x - y).norm() < 1e-8);
                        }
                    }
                }
            }
        }
    }
}
