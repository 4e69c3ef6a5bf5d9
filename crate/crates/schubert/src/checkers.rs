//! The geometric Littlewood-Richardson rule as a checker-game state machine.
//!
//! Boards are n x n grids. Rows are indexed 1..n top to bottom and correspond
//! to the moving flag (row a is M_a); columns are indexed 1..n left to right
//! and correspond to the fixed flag (column b is F_b). The n black checkers
//! encode the relative position of the two flags: dim(M_a ∩ F_b) is the
//! number of black checkers weakly northwest of the cell (a, b). The k red
//! checkers encode a component of the degenerating intersection.
//!
//! The black checkers bubble-sort from the antidiagonal (transverse flags) to
//! the diagonal (coincident flags) over C(n,2) stages. At each stage the
//! checkers in rows (r, r+1) swap rows, where r is the critical row. The red
//! checkers respond according to a nine-case table determined by where the
//! top red checker sits in the critical diagonal and where the red checker
//! sits in the critical row; the table is published only as images and is
//! reconstructed here from the stated geometry, with the LR coefficient
//! oracle as the authoritative validation.

use crate::combinatorics::{Ambient, Bracket};
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// Positions of the n black checkers, no two in the same row or column.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlackConfig {
    row_of_col: Vec<usize>,
}

impl BlackConfig {
    pub fn new(row_of_col: Vec<usize>) -> Result<Self> {
        let n = row_of_col.len();
        let mut seen = vec![false; n + 1];
        for &r in &row_of_col {
            if r < 1 || r > n || seen[r] {
                return Err(Error::InvariantViolation(format!(
                    "black checkers must form a permutation: {row_of_col:?}"
                )));
            }
            seen[r] = true;
        }
        Ok(BlackConfig { row_of_col })
    }

    pub fn n(&self) -> usize {
        self.row_of_col.len()
    }

    /// Transverse flags: column c at row n+1-c.
    pub fn antidiagonal(n: usize) -> Self {
        BlackConfig {
            row_of_col: (1..=n).map(|c| n + 1 - c).collect(),
        }
    }

    /// Coincident flags: column c at row c.
    pub fn diagonal(n: usize) -> Self {
        BlackConfig {
            row_of_col: (1..=n).collect(),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.row_of_col.iter().enumerate().all(|(i, &r)| r == i + 1)
    }

    pub fn row_of_col(&self, c: usize) -> usize {
        self.row_of_col[c - 1]
    }

    pub fn col_of_row(&self, r: usize) -> usize {
        self.row_of_col.iter().position(|&x| x == r).unwrap() + 1
    }

    /// Swap the checkers in rows r and r+1 (each keeps its column).
    pub fn swap_rows(&self, r: usize) -> Self {
        let mut row_of_col = self.row_of_col.clone();
        for x in row_of_col.iter_mut() {
            if *x == r {
                *x = r + 1;
            } else if *x == r + 1 {
                *x = r;
            }
        }
        BlackConfig { row_of_col }
    }
}

/// Entry (a, b) is the number of black checkers weakly northwest of the cell,
/// i.e. dim(M_a ∩ F_b). Indexed [a-1][b-1].
pub fn dimension_array(black: &BlackConfig) -> Vec<Vec<usize>> {
    let n = black.n();
    let mut arr = vec![vec![0usize; n]; n];
    for c in 1..=n {
        let r = black.row_of_col(c);
        for a in r..=n {
            for b in c..=n {
                arr[a - 1][b - 1] += 1;
            }
        }
    }
    arr
}

/// The specialization order: critical rows for the C(n,2) bubble-sort steps
/// taking the antidiagonal to the diagonal.
pub fn sort_schedule(n: usize) -> Vec<usize> {
    let mut schedule = Vec::with_capacity(n * (n - 1) / 2);
    for i in (1..n).rev() {
        for j in i..n {
            schedule.push(j);
        }
    }
    schedule
}

/// Answer to "where is the top red checker in the critical diagonal?".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagCase {
    /// (a): in the rising checker's square (r+1, c_r).
    OnRising,
    /// (b): elsewhere in the critical diagonal.
    Elsewhere,
    /// (c): no red checker in the critical diagonal.
    Absent,
}

/// Answer to "where is the red checker in the critical row?".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowCase {
    /// (alpha): in the descending checker's square (r, c_d).
    OnDescending,
    /// (beta): elsewhere in the critical row.
    Elsewhere,
    /// (gamma): no red checker in the critical row.
    Absent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StageCase {
    pub diag: DiagCase,
    pub row: RowCase,
    /// True iff case (b, beta) and another red checker lies strictly inside
    /// the rectangle spanned by the critical-row red and the critical-diagonal
    /// red; blockers suppress the swap branch.
    pub blocker: bool,
}

/// How the red checkers responded at one move; enough data to rebuild the
/// coordinate link between the adjacent stages.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MoveLabel {
    pub critical_row: usize,
    pub case: StageCase,
    /// True for the second branch of (b, beta), where the two red checkers
    /// swap rows.
    pub swap: bool,
}

/// Black and red checkers at one stage of the game.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Checkerboard {
    black: BlackConfig,
    /// Red positions (row, col), sorted by row. No two share a row or column.
    red: Vec<(usize, usize)>,
    pub stage: usize,
}

impl Checkerboard {
    pub fn new(black: BlackConfig, mut red: Vec<(usize, usize)>, stage: usize) -> Result<Self> {
        red.sort_unstable();
        let board = Checkerboard { black, red, stage };
        board.validate()?;
        Ok(board)
    }

    fn validate(&self) -> Result<()> {
        let n = self.black.n();
        for w in self.red.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvariantViolation(format!(
                    "two red checkers in row {}",
                    w[0].0
                )));
            }
        }
        for (i, &(_, c)) in self.red.iter().enumerate() {
            for &(_, c2) in &self.red[i + 1..] {
                if c == c2 {
                    return Err(Error::InvariantViolation(format!(
                        "two red checkers in column {c}"
                    )));
                }
            }
        }
        for &(a, b) in &self.red {
            if a < 1 || a > n || b < 1 || b > n {
                return Err(Error::InvariantViolation(format!(
                    "red checker off the board: ({a}, {b})"
                )));
            }
            // Nonzero ambient space: the red checker's vector must be new at
            // both its M-level and its F-level, so its row needs a black
            // weakly west and its column a black weakly north.
            if self.black.col_of_row(a) > b {
                return Err(Error::InvariantViolation(format!(
                    "red checker ({a}, {b}) has no black checker weakly west in its row"
                )));
            }
            if self.black.row_of_col(b) > a {
                return Err(Error::InvariantViolation(format!(
                    "red checker ({a}, {b}) has no black checker weakly north in its column"
                )));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.black.n()
    }

    pub fn k(&self) -> usize {
        self.red.len()
    }

    pub fn black(&self) -> &BlackConfig {
        &self.black
    }

    /// Red checkers sorted by row; this is the column order of the
    /// localization pattern. For antichain configurations the spec's
    /// southwest-to-northeast listing is this list reversed.
    pub fn reds(&self) -> &[(usize, usize)] {
        &self.red
    }

    pub fn red_in_row(&self, row: usize) -> Option<(usize, usize)> {
        self.red.iter().copied().find(|&(a, _)| a == row)
    }

    /// Bracket read off a fully sorted (diagonal) board: the red columns.
    pub fn leaf_bracket(&self) -> Result<Bracket> {
        if !self.black.is_diagonal() {
            return Err(Error::InvariantViolation(
                "leaf bracket requested on an unsorted board".into(),
            ));
        }
        let mut cols: Vec<usize> = self.red.iter().map(|&(_, b)| b).collect();
        cols.sort_unstable();
        Bracket::new(cols, Ambient::new(self.n(), self.k())?)
    }

    /// ASCII rendering with B for black, r for red, * for both.
    pub fn render(&self) -> String {
        let n = self.n();
        let mut out = String::new();
        for a in 1..=n {
            for b in 1..=n {
                let black = self.black.row_of_col(b) == a;
                let red = self.red.contains(&(a, b));
                out.push(match (black, red) {
                    (true, true) => '*',
                    (true, false) => 'B',
                    (false, true) => 'r',
                    (false, false) => '.',
                });
                if b < n {
                    out.push(' ');
                }
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Checkerboard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Initial board for resolving the intersection of conditions omega (fixed
/// flag, columns) and tau (moving flag, rows): black checkers on the
/// antidiagonal, red checker j at (tau_{k+1-j}, omega_j).
pub fn initial_board(omega: &Bracket, tau: &Bracket) -> Result<Checkerboard> {
    if omega.ambient() != tau.ambient() {
        return Err(Error::InvalidInput("mismatched ambients".into()));
    }
    let Ambient { n, k } = omega.ambient();
    let mut red = Vec::with_capacity(k);
    for j in 1..=k {
        let col = omega.entries()[j - 1];
        let row = tau.entries()[k - j];
        if col + row < n + 1 {
            return Err(Error::EmptyIntersection(format!(
                "{omega} and {tau} cannot both hold: entry {j} gives {col} + {row} < {}",
                n + 1
            )));
        }
        red.push((row, col));
    }
    Checkerboard::new(BlackConfig::antidiagonal(n), red, 0)
}

/// Classify the board at critical row r: the two questions of the rule plus
/// the blocker flag.
pub fn classify_stage(board: &Checkerboard, r: usize) -> StageCase {
    let c_d = board.black.col_of_row(r);
    let c_r = board.black.col_of_row(r + 1);
    debug_assert!(c_r < c_d, "descending checker must be east of rising");

    let row = match board.red_in_row(r) {
        Some((_, b)) if b == c_d => RowCase::OnDescending,
        Some(_) => RowCase::Elsewhere,
        None => RowCase::Absent,
    };

    // Critical diagonal: cells (r+1+i, c_r+i) heading at the rising square.
    let n = board.n();
    let mut diag = DiagCase::Absent;
    let mut i = 0;
    while r + 1 + i <= n && c_r + i <= n {
        let cell = (r + 1 + i, c_r + i);
        if board.red.contains(&cell) {
            diag = if i == 0 {
                DiagCase::OnRising
            } else {
                DiagCase::Elsewhere
            };
            break;
        }
        i += 1;
    }

    let blocker = if diag == DiagCase::Elsewhere && row == RowCase::Elsewhere {
        let (_, b_row) = board.red_in_row(r).unwrap();
        let (r_d, c_diag) = top_diag_red(board, r).unwrap();
        let (lo_c, hi_c) = (c_diag.min(b_row), c_diag.max(b_row));
        board.red.iter().any(|&(a, b)| {
            (a, b) != (r, b_row) && (a, b) != (r_d, c_diag) && a > r && a < r_d && b > lo_c && b < hi_c
        })
    } else {
        false
    };

    StageCase { diag, row, blocker }
}

fn top_diag_red(board: &Checkerboard, r: usize) -> Option<(usize, usize)> {
    let c_r = board.black.col_of_row(r + 1);
    let n = board.n();
    let mut i = 0;
    while r + 1 + i <= n && c_r + i <= n {
        let cell = (r + 1 + i, c_r + i);
        if board.red.contains(&cell) {
            return Some(cell);
        }
        i += 1;
    }
    None
}

/// Rows of the free entries of the critical-row red checker's pattern column:
/// rows i < r whose black checker is weakly west of (r, c), skipping rows
/// echelon-reduced by a red checker strictly northwest.
fn var_rows_for(board: &Checkerboard, r: usize, c: usize) -> Vec<usize> {
    (1..r)
        .filter(|&i| {
            board.black.col_of_row(i) <= c
                && !board.red.iter().any(|&(a, b)| a == i && b < c)
        })
        .collect()
}

/// Apply one move of the rule: black checkers in rows (r, r+1) swap and the
/// red checkers respond. Exactly two successors in case (b, beta) without a
/// blocker, otherwise one.
pub fn move_red(board: &Checkerboard, r: usize) -> Result<Vec<(Checkerboard, MoveLabel)>> {
    let case = classify_stage(board, r);
    let c_d = board.black.col_of_row(r);
    let c_r = board.black.col_of_row(r + 1);
    let black = board.black.swap_rows(r);
    let stage = board.stage + 1;

    let reds_with = |moves: &[((usize, usize), (usize, usize))]| -> Vec<(usize, usize)> {
        board
            .red
            .iter()
            .map(|&p| {
                moves
                    .iter()
                    .find(|&&(from, _)| from == p)
                    .map(|&(_, to)| to)
                    .unwrap_or(p)
            })
            .collect()
    };

    let mk = |moves: &[((usize, usize), (usize, usize))], swap: bool| -> Result<(Checkerboard, MoveLabel)> {
        let board = Checkerboard::new(black.clone(), reds_with(moves), stage).map_err(|e| {
            Error::InvariantViolation(format!(
                "move at r = {r} (case {:?}/{:?}, swap = {swap}) produced an invalid board: {e}",
                case.diag, case.row
            ))
        })?;
        Ok((
            board,
            MoveLabel {
                critical_row: r,
                case,
                swap,
            },
        ))
    };

    let mut out = Vec::new();
    match (case.diag, case.row) {
        (DiagCase::OnRising, RowCase::OnDescending) => {
            // Both reds ride their black checkers.
            out.push(mk(
                &[((r + 1, c_r), (r, c_r)), ((r, c_d), (r + 1, c_d))],
                false,
            )?);
        }
        (DiagCase::OnRising, RowCase::Elsewhere) => {
            let (_, b_row) = board.red_in_row(r).unwrap();
            out.push(mk(
                &[((r + 1, c_r), (r, c_r)), ((r, b_row), (r + 1, b_row))],
                false,
            )?);
        }
        (DiagCase::OnRising, RowCase::Absent) => {
            out.push(mk(&[((r + 1, c_r), (r, c_r))], false)?);
        }
        (DiagCase::Elsewhere, RowCase::OnDescending)
        | (DiagCase::Absent, RowCase::OnDescending) => {
            // The red on the descending checker stays in the critical row but
            // its column drops to the most generic position still available:
            // the widest of its free rows' black columns, or the rising
            // checker's column.
            let c_star = var_rows_for(board, r, c_d)
                .into_iter()
                .map(|i| board.black.col_of_row(i))
                .chain(std::iter::once(c_r))
                .max()
                .unwrap();
            let mut moves = vec![((r, c_d), (r, c_star))];
            if case.diag == DiagCase::Elsewhere {
                // The top red in the critical diagonal inherits the
                // descending checker's column; dropping the critical-row red
                // to a smaller fixed-flag level frees one dimension there and
                // the diagonal red's coefficient along the risen direction
                // degenerates to absorb it.
                let (r_d, c_diag) = top_diag_red(board, r).unwrap();
                moves.push(((r_d, c_diag), (r_d, c_d)));
            }
            out.push(mk(&moves, false)?);
        }
        (DiagCase::Elsewhere, RowCase::Elsewhere) => {
            // Stay branch always exists.
            out.push(mk(&[], false)?);
            if !case.blocker {
                // Swap branch: the critical-row red drops to the diagonal
                // red's row keeping its column; the diagonal red lands on the
                // risen checker.
                let (_, b_row) = board.red_in_row(r).unwrap();
                let (r_d, c_diag) = top_diag_red(board, r).unwrap();
                out.push(mk(
                    &[((r, b_row), (r_d, b_row)), ((r_d, c_diag), (r, c_r))],
                    true,
                )?);
            }
        }
        _ => {
            // (b, gamma), (c, beta), (c, gamma): nothing moves.
            out.push(mk(&[], false)?);
        }
    }
    Ok(out)
}

/// One node of a materialized game tree.
#[derive(Clone, Debug)]
pub struct GameNode {
    pub board: Checkerboard,
    /// Children as (node index, move label); empty at the final stage.
    pub children: Vec<(usize, MoveLabel)>,
}

/// The full game tree for one pair of brackets, stages 0..C(n,2).
#[derive(Clone, Debug)]
pub struct GameTree {
    pub nodes: Vec<GameNode>,
    pub schedule: Vec<usize>,
}

impl GameTree {
    pub fn root(&self) -> &GameNode {
        &self.nodes[0]
    }

    pub fn leaves(&self) -> Vec<usize> {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.children.is_empty())
            .map(|(i, _)| i)
            .collect()
    }

    /// Leaf brackets with multiplicities (number of root-to-leaf paths).
    pub fn leaf_multiset(&self) -> Result<BTreeMap<Bracket, usize>> {
        let mut out = BTreeMap::new();
        for leaf in self.leaves() {
            let sigma = self.nodes[leaf].board.leaf_bracket()?;
            *out.entry(sigma).or_insert(0) += 1;
        }
        Ok(out)
    }

    /// All root-to-leaf node index paths ending at a leaf with the given
    /// bracket.
    pub fn paths_to(&self, sigma: &Bracket) -> Result<Vec<Vec<usize>>> {
        let mut paths = Vec::new();
        let mut stack = vec![(0usize, vec![0usize])];
        while let Some((idx, path)) = stack.pop() {
            let node = &self.nodes[idx];
            if node.children.is_empty() {
                if &node.board.leaf_bracket()? == sigma {
                    paths.push(path);
                }
                continue;
            }
            for &(child, _) in &node.children {
                let mut p = path.clone();
                p.push(child);
                stack.push((child, p));
            }
        }
        // Deterministic order regardless of stack traversal.
        paths.sort();
        Ok(paths)
    }

    /// Move label on the edge parent -> child.
    pub fn label(&self, parent: usize, child: usize) -> Option<MoveLabel> {
        self.nodes[parent]
            .children
            .iter()
            .find(|&&(c, _)| c == child)
            .map(|&(_, l)| l)
    }
}

/// Run the full game for the intersection of omega (columns / fixed flag) and
/// tau (rows / moving flag).
pub fn game_tree(omega: &Bracket, tau: &Bracket) -> Result<GameTree> {
    let root = initial_board(omega, tau)?;
    let n = root.n();
    let schedule = sort_schedule(n);
    let mut nodes = vec![GameNode {
        board: root,
        children: Vec::new(),
    }];
    let mut frontier = vec![0usize];
    for &r in &schedule {
        let mut next_frontier = Vec::new();
        for idx in frontier {
            let successors = move_red(&nodes[idx].board, r)?;
            for (board, label) in successors {
                let child_idx = nodes.len();
                nodes.push(GameNode {
                    board,
                    children: Vec::new(),
                });
                nodes[idx].children.push((child_idx, label));
                next_frontier.push(child_idx);
            }
        }
        frontier = next_frontier;
    }
    Ok(GameTree { nodes, schedule })
}
