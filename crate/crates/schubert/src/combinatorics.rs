//! Brackets, Schubert problems, and an independent Littlewood-Richardson
//! coefficient oracle.
//!
//! A bracket is a strictly increasing k-tuple in [1, n] encoding the Schubert
//! condition dim(X ∩ F_{w_i}) ≥ i. The oracle counts Littlewood-Richardson
//! skew tableaux directly and deliberately knows nothing about checker games;
//! the checkers module is validated against it.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Ambient Grassmannian: k-planes in C^n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ambient {
    pub n: usize,
    pub k: usize,
}

impl Ambient {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidInput(format!(
                "need 1 <= k <= n, got k = {k}, n = {n}"
            )));
        }
        Ok(Ambient { n, k })
    }

    /// Dimension of the Grassmannian, k(n-k).
    pub fn dim(&self) -> usize {
        self.k * (self.n - self.k)
    }
}

/// A strictly increasing k-tuple in [1, n]; one Schubert condition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bracket {
    entries: Vec<usize>,
    ambient: Ambient,
}

impl Bracket {
    pub fn new(entries: Vec<usize>, ambient: Ambient) -> Result<Self> {
        if entries.len() != ambient.k {
            return Err(Error::InvalidInput(format!(
                "bracket {:?} has {} entries, ambient k = {}",
                entries,
                entries.len(),
                ambient.k
            )));
        }
        for w in entries.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidInput(format!(
                    "bracket entries must strictly increase: {entries:?}"
                )));
            }
        }
        if entries[0] < 1 || entries[ambient.k - 1] > ambient.n {
            return Err(Error::InvalidInput(format!(
                "bracket entries must lie in [1, {}]: {entries:?}",
                ambient.n
            )));
        }
        Ok(Bracket { entries, ambient })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn k(&self) -> usize {
        self.ambient.k
    }

    pub fn n(&self) -> usize {
        self.ambient.n
    }

    /// Codimension of the Schubert variety: sum of n-k+i-w_i.
    pub fn codim(&self) -> usize {
        let Ambient { n, k } = self.ambient;
        self.entries
            .iter()
            .enumerate()
            .map(|(i0, &w)| n - k + (i0 + 1) - w)
            .sum()
    }

    /// Dual bracket [n+1-w_k, ..., n+1-w_1]; codim(b) + codim(dual(b)) = k(n-k).
    pub fn dual(&self) -> Bracket {
        let n = self.ambient.n;
        let entries = self.entries.iter().rev().map(|&w| n + 1 - w).collect();
        Bracket {
            entries,
            ambient: self.ambient,
        }
    }

    /// The identity condition [n-k+1, ..., n] imposes nothing.
    pub fn is_identity(&self) -> bool {
        self.codim() == 0
    }

    /// The full-flag bracket [1, 2, ..., k] cutting out a single point.
    pub fn bottom(ambient: Ambient) -> Bracket {
        Bracket {
            entries: (1..=ambient.k).collect(),
            ambient,
        }
    }

    /// Condition i (1-based) is trivial iff w_i = n-k+i.
    pub fn is_trivial_condition(&self, i: usize) -> bool {
        self.entries[i - 1] == self.ambient.n - self.ambient.k + i
    }

    /// Partition conversion: part i is n-k+i-w_i, already nonincreasing,
    /// so codim equals the partition weight.
    pub fn partition(&self) -> Vec<usize> {
        let Ambient { n, k } = self.ambient;
        self.entries
            .iter()
            .enumerate()
            .map(|(i0, &w)| n - k + (i0 + 1) - w)
            .collect()
    }

    pub fn parse(text: &str, ambient: Ambient) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::InvalidInput(format!("expected [..] bracket, got {text:?}")))?;
        let entries = inner
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::InvalidInput(format!("bad bracket entry {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Bracket::new(entries, ambient)
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, w) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "]")
    }
}

/// All brackets for the ambient Grassmannian, in lexicographic order.
pub fn all_brackets(ambient: Ambient) -> Vec<Bracket> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(ambient.k);
    fn rec(ambient: Ambient, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Bracket>) {
        if cur.len() == ambient.k {
            out.push(Bracket {
                entries: cur.clone(),
                ambient,
            });
            return;
        }
        let remaining = ambient.k - cur.len();
        for w in start..=(ambient.n + 1 - remaining) {
            cur.push(w);
            rec(ambient, w + 1, cur, out);
            cur.pop();
        }
    }
    rec(ambient, 1, &mut cur, &mut out);
    out
}

/// Brackets of a fixed codimension.
pub fn brackets_of_codim(ambient: Ambient, codim: usize) -> Vec<Bracket> {
    all_brackets(ambient)
        .into_iter()
        .filter(|b| b.codim() == codim)
        .collect()
}

/// An ordered list of Schubert conditions with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchubertProblem {
    pub ambient: Ambient,
    pub conditions: Vec<(Bracket, usize)>,
}

impl SchubertProblem {
    pub fn new(ambient: Ambient, conditions: Vec<(Bracket, usize)>) -> Result<Self> {
        if conditions.is_empty() {
            return Err(Error::InvalidInput("empty condition list".into()));
        }
        for (b, m) in &conditions {
            if b.ambient() != ambient {
                return Err(Error::InvalidInput(format!(
                    "bracket {b} does not live in ({}, {})",
                    ambient.n, ambient.k
                )));
            }
            if *m == 0 {
                return Err(Error::InvalidInput(format!("multiplicity 0 on {b}")));
            }
        }
        Ok(SchubertProblem {
            ambient,
            conditions,
        })
    }

    /// Parse problem text like `[2 4 6]^3 [1 3 5]`.
    pub fn parse(n: usize, k: usize, text: &str) -> Result<Self> {
        let ambient = Ambient::new(n, k)?;
        let mut conditions = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest
                .find('[')
                .ok_or_else(|| Error::InvalidInput(format!("expected '[' in {rest:?}")))?;
            if !rest[..open].trim().is_empty() {
                return Err(Error::InvalidInput(format!(
                    "unexpected text before bracket: {:?}",
                    &rest[..open]
                )));
            }
            let close = rest
                .find(']')
                .ok_or_else(|| Error::InvalidInput(format!("unterminated bracket in {rest:?}")))?;
            let bracket = Bracket::parse(&rest[open..=close], ambient)?;
            rest = &rest[close + 1..];
            let mut mult = 1usize;
            if let Some(stripped) = rest.strip_prefix('^') {
                let end = stripped
                    .find(|c: char| !c.is_ascii_digit())
                    .unwrap_or(stripped.len());
                if end == 0 {
                    return Err(Error::InvalidInput("'^' must be followed by digits".into()));
                }
                mult = stripped[..end]
                    .parse()
                    .map_err(|_| Error::InvalidInput("bad multiplicity".into()))?;
                rest = &stripped[end..];
            }
            conditions.push((bracket, mult));
            rest = rest.trim_start();
        }
        SchubertProblem::new(ambient, conditions)
    }

    pub fn total_codim(&self) -> usize {
        self.conditions.iter().map(|(b, m)| b.codim() * m).sum()
    }

    /// Complete problems have total codimension k(n-k) and hence finitely
    /// many solutions for generic flags.
    pub fn is_complete(&self) -> bool {
        self.total_codim() == self.ambient.dim()
    }

    /// Multiplicities expanded to repeated conditions, identity conditions
    /// dropped (they impose nothing).
    pub fn expanded(&self) -> Vec<Bracket> {
        let mut out = Vec::new();
        for (b, m) in &self.conditions {
            if b.is_identity() {
                continue;
            }
            for _ in 0..*m {
                out.push(b.clone());
            }
        }
        out
    }
}

impl fmt::Display for SchubertProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (b, m)) in self.conditions.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if *m == 1 {
                write!(f, "{b}")?;
            } else {
                write!(f, "{b}^{m}")?;
            }
        }
        Ok(())
    }
}

/// Littlewood-Richardson coefficient c^sigma_{omega,tau} by brute-force
/// enumeration of LR skew tableaux of shape lambda(sigma)/lambda(omega) with
/// content lambda(tau).
///
/// This is the independent oracle used to cross-check the checker engine.
pub fn lr_coefficient_oracle(omega: &Bracket, tau: &Bracket, sigma: &Bracket) -> Result<u64> {
    if omega.ambient() != tau.ambient() || omega.ambient() != sigma.ambient() {
        return Err(Error::InvalidInput("mismatched ambients".into()));
    }
    if sigma.codim() != omega.codim() + tau.codim() {
        return Err(Error::InvalidInput(format!(
            "codim mismatch: |{sigma}| != |{omega}| + |{tau}|"
        )));
    }
    let inner = omega.partition();
    let content = tau.partition();
    let outer = sigma.partition();
    Ok(lr_skew_tableaux(&outer, &inner, &content))
}

/// Number of semistandard skew tableaux of shape outer/inner with the given
/// content whose reverse reading word is a lattice word.
fn lr_skew_tableaux(outer: &[usize], inner: &[usize], content: &[usize]) -> u64 {
    let rows = outer.len();
    // Containment: inner must fit inside outer.
    for i in 0..rows {
        let inn = inner.get(i).copied().unwrap_or(0);
        if inn > outer[i] {
            return 0;
        }
    }
    let weight: usize = content.iter().sum();
    let cells: usize = (0..rows)
        .map(|i| outer[i] - inner.get(i).copied().unwrap_or(0))
        .sum();
    if cells != weight {
        return 0;
    }
    if cells == 0 {
        return 1;
    }

    // Cells in reading order: top-to-bottom, right-to-left within a row, so
    // every prefix of the filling is a prefix of the reading word.
    let mut order = Vec::with_capacity(cells);
    for (i, &len) in outer.iter().enumerate() {
        let inn = inner.get(i).copied().unwrap_or(0);
        for j in (inn..len).rev() {
            order.push((i, j));
        }
    }

    let mut grid = vec![vec![0usize; outer[0].max(1)]; rows];
    let mut used = vec![0usize; content.len()];
    let mut count = 0u64;
    fill(
        &mut grid, &mut used, &order, 0, inner, content, &mut count,
    );
    count
}

fn fill(
    grid: &mut Vec<Vec<usize>>,
    used: &mut Vec<usize>,
    order: &[(usize, usize)],
    pos: usize,
    inner: &[usize],
    content: &[usize],
    count: &mut u64,
) {
    if pos == order.len() {
        *count += 1;
        return;
    }
    let (i, j) = order[pos];
    let inn_i = inner.get(i).copied().unwrap_or(0);
    for v in 1..=content.len() {
        if used[v - 1] >= content[v - 1] {
            continue;
        }
        // Lattice word: after placing v, #v used must not exceed #(v-1).
        if v > 1 && used[v - 1] + 1 > used[v - 2] {
            continue;
        }
        // Row weakly increasing left to right; cell to the right is filled
        // earlier in reading order.
        if j + 1 < grid[i].len() && grid[i][j + 1] != 0 && v > grid[i][j + 1] {
            continue;
        }
        // Column strictly increasing top to bottom.
        if i > 0 && j >= inner.get(i - 1).copied().unwrap_or(0) {
            let above = grid[i - 1][j];
            if above != 0 && v <= above {
                continue;
            }
            if above == 0 {
                // The cell above exists in the skew shape only if it is
                // outside the inner shape; grid 0 there means "not part of
                // the shape", which happens iff j < inner[i-1], already
                // excluded. Otherwise it would have been filled first.
                continue;
            }
        }
        grid[i][j] = v;
        used[v - 1] += 1;
        fill(grid, used, order, pos + 1, inner, content, count);
        used[v - 1] -= 1;
        grid[i][j] = 0;
    }
}

/// Expansion of the intersection of two Schubert classes: all (sigma, c) with
/// c = c^sigma_{omega,tau} > 0. Purely combinatorial.
pub fn lr_expand_oracle(omega: &Bracket, tau: &Bracket) -> Result<Vec<(Bracket, u64)>> {
    let target = omega.codim() + tau.codim();
    if target > omega.ambient().dim() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for sigma in brackets_of_codim(omega.ambient(), target) {
        let c = lr_coefficient_oracle(omega, tau, &sigma)?;
        if c > 0 {
            out.push((sigma, c));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: usize, k: usize, e: &[usize]) -> Bracket {
        Bracket::new(e.to_vec(), Ambient::new(n, k).unwrap()).unwrap()
    }

    #[test]
    fn codim_examples() {
        assert_eq!(b(7, 3, &[4, 6, 7]).codim(), 1);
        assert_eq!(b(6, 3, &[2, 4, 6]).codim(), 3);
        // identity condition in a few ambients
        assert_eq!(b(6, 3, &[4, 5, 6]).codim(), 0);
        assert_eq!(b(5, 2, &[4, 5]).codim(), 0);
    }

    #[test]
    fn dual_examples() {
        assert_eq!(b(6, 3, &[2, 4, 6]).dual(), b(6, 3, &[1, 3, 5]));
        assert_eq!(b(6, 3, &[1, 2, 3]).dual(), b(6, 3, &[4, 5, 6]));
        for br in all_brackets(Ambient::new(6, 3).unwrap()) {
            assert_eq!(br.dual().dual(), br);
            assert_eq!(br.codim() + br.dual().codim(), br.ambient().dim());
        }
    }

    #[test]
    fn lr_oracle_paper_values() {
        // Eq. 8: [2 4 6]^2 contains [1 3 5] with multiplicity 2.
        let w = b(6, 3, &[2, 4, 6]);
        assert_eq!(lr_coefficient_oracle(&w, &w, &b(6, 3, &[1, 3, 5])).unwrap(), 2);
        assert_eq!(lr_coefficient_oracle(&w, &w, &b(6, 3, &[2, 3, 4])).unwrap(), 1);
        assert_eq!(lr_coefficient_oracle(&w, &w, &b(6, 3, &[1, 2, 6])).unwrap(), 1);
        // Four lines: two two-dimensional families.
        let l = b(4, 2, &[2, 4]);
        assert_eq!(lr_coefficient_oracle(&l, &l, &b(4, 2, &[1, 4])).unwrap(), 1);
        assert_eq!(lr_coefficient_oracle(&l, &l, &b(4, 2, &[2, 3])).unwrap(), 1);
    }

    #[test]
    fn lr_oracle_identity_condition() {
        let w = b(6, 3, &[2, 4, 6]);
        let id = b(6, 3, &[4, 5, 6]);
        for sigma in brackets_of_codim(w.ambient(), w.codim()) {
            let c = lr_coefficient_oracle(&w, &id, &sigma).unwrap();
            assert_eq!(c, u64::from(sigma == w));
        }
    }

    #[test]
    fn lr_oracle_symmetry() {
        let amb = Ambient::new(6, 3).unwrap();
        let all = all_brackets(amb);
        for w in &all {
            for t in &all {
                if w.codim() + t.codim() > amb.dim() {
                    continue;
                }
                for sigma in brackets_of_codim(amb, w.codim() + t.codim()) {
                    assert_eq!(
                        lr_coefficient_oracle(w, t, &sigma).unwrap(),
                        lr_coefficient_oracle(t, w, &sigma).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn problem_parsing() {
        let p = SchubertProblem::parse(6, 3, "[2 4 6]^3").unwrap();
        assert!(p.is_complete());
        assert_eq!(p.expanded().len(), 3);
        let p = SchubertProblem::parse(6, 3, "[2 4 6] [2 5 6]^3").unwrap();
        assert!(p.is_complete());
        assert_eq!(p.to_string(), "[2 4 6] [2 5 6]^3");
        // incomplete problems are representable
        let p = SchubertProblem::parse(4, 2, "[2 4]^3").unwrap();
        assert!(!p.is_complete());
        assert!(SchubertProblem::parse(4, 2, "[4 2]").is_err());
        assert!(SchubertProblem::parse(4, 2, "[2 5]").is_err());
        assert!(SchubertProblem::parse(4, 2, "junk").is_err());
    }
}
