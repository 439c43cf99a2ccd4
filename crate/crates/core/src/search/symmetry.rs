//! Lex-leader pruning under transpositions of twin vertices.

use super::state::SearchState;
use crate::graph::LabeledGraph;

/// Pairs of vertices with `N(x) \ {y} = N(y) \ {x}`, as element indices.
///
/// Swapping such a pair is a graph automorphism, so it maps realizations
/// to realizations.
pub fn twin_pairs(g: &LabeledGraph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for x in 0..g.len() {
        for y in x + 1..g.len() {
            if g.neighbors(x).without(y) == g.neighbors(y).without(x) {
                out.push((x + 1, y + 1));
            }
        }
    }
    out
}

#[inline]
fn swap(v: usize, (x, y): (usize, usize)) -> usize {
    if v == x {
        y
    } else if v == y {
        x
    } else {
        v
    }
}

/// False when some twin swap provably yields a lexicographically smaller
/// table than every completion of the current state.
///
/// Cells are compared in row-major order over `i <= j`; the comparison
/// stops at the first cell where either side is still undetermined.
pub fn lex_leader_ok(st: &SearchState, twins: &[(usize, usize)]) -> bool {
    let n = st.order();
    'gen: for &t in twins {
        for i in 1..n {
            for j in i..n {
                let Some(a) = st.value(i, j) else { continue 'gen };
                let Some(b) = st.value(swap(i, t), swap(j, t)) else { continue 'gen };
                let b = swap(b, t);
                if a < b {
                    continue 'gen;
                }
                if a > b {
                    return false;
                }
            }
        }
    }
    true
}

/// Rows of `t` relabeled by the twin swap `tw`.
#[cfg(test)]
pub(crate) fn swapped(t: &crate::algebra::CayleyTable, tw: (usize, usize)) -> Vec<Vec<usize>> {
    let n = t.order();
    (0..n).map(|i| (0..n).map(|j| swap(t.mul(swap(i, tw), swap(j, tw)), tw)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::g;

    #[test]
    fn twins_of_k4_plus_2() {
        let gr = g(
            &["a", "b", "x1", "x2", "y1", "y2"],
            &[("a", "b"), ("a", "x1"), ("a", "x2"), ("b", "x1"), ("b", "x2"), ("x1", "x2"), ("x1", "y1"), ("x2", "y2")],
        );
        assert_eq!(twin_pairs(&gr), vec![(1, 2)]);
    }

    #[test]
    fn star_leaves_are_twins() {
        let gr = g(&["c", "p", "q"], &[("c", "p"), ("c", "q")]);
        assert_eq!(twin_pairs(&gr), vec![(2, 3)]);
    }
}
