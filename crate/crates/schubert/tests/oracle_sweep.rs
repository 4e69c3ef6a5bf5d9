//! Exhaustive cross-check of the checker engine against the tableau oracle:
//! for every ambient (n, k) with n <= 6 and every bracket pair, the game-tree
//! leaf multiplicities must equal the Littlewood-Richardson coefficients.

use schubert::checkers::game_tree;
use schubert::combinatorics::{all_brackets, brackets_of_codim, lr_coefficient_oracle, Ambient};
use schubert::Error;
use std::collections::BTreeMap;

#[test]
fn game_counts_match_oracle_up_to_n6() {
    let mut cases = 0u64;
    for n in 2..=6 {
        for k in 1..n {
            let amb = Ambient::new(n, k).unwrap();
            let all = all_brackets(amb);
            for w in &all {
                for t in &all {
                    if w.codim() + t.codim() > amb.dim() {
                        continue;
                    }
                    let counts = match game_tree(w, t) {
                        Ok(tree) => tree.leaf_multiset().unwrap(),
                        Err(Error::EmptyIntersection(_)) => BTreeMap::new(),
                        Err(e) => panic!("game ({w}, {t}) in ({n},{k}) failed: {e}"),
                    };
                    for sigma in brackets_of_codim(amb, w.codim() + t.codim()) {
                        let got = counts.get(&sigma).copied().unwrap_or(0) as u64;
                        let want = lr_coefficient_oracle(w, t, &sigma).unwrap();
                        assert_eq!(got, want, "({w}, {t}) -> {sigma} in ({n},{k})");
                        cases += 1;
                    }
                }
            }
        }
    }
    println!("checked {cases} coefficients");
    assert!(cases > 1000);
}
