//! Reference answers for tiny graphs by exhaustive filling, sharing no code
//! with the search engine.

use crate::error::{Error, Result};
use crate::graph::{is_connected, is_isomorphic, LabeledGraph};

/// Largest graph the exhaustive filler accepts.
pub const ORACLE_VERTEX_LIMIT: usize = 5;

/// Every commutative semigroup on `V(G) ∪ {0}` (element `i+1` is vertex `i`)
/// whose zero-divisor graph is `g`, as multiplication rows, sorted.
///
/// Adjacent pairs and the zero row are fixed to 0; every other cell ranges
/// over all elements.
pub fn brute_force_realizations(g: &LabeledGraph) -> Result<Vec<Vec<Vec<usize>>>> {
    let nv = g.len();
    if nv > ORACLE_VERTEX_LIMIT {
        return Err(Error::SizeLimit(format!("oracle handles at most {ORACLE_VERTEX_LIMIT} vertices, got {nv}")));
    }
    let n = nv + 1;
    let mut free = Vec::new();
    for i in 1..n {
        for j in i..n {
            if i == j || !g.has_edge(i - 1, j - 1) {
                free.push((i, j));
            }
        }
    }
    let mut m = vec![vec![0usize; n]; n];
    let mut digits = vec![0usize; free.len()];
    let mut out = Vec::new();
    loop {
        for (&(i, j), &v) in free.iter().zip(&digits) {
            m[i][j] = v;
            m[j][i] = v;
        }
        if graph_exact(&m, g) && associative(&m) {
            out.push(m.clone());
        }
        let mut k = 0;
        loop {
            if k == digits.len() {
                out.sort();
                return Ok(out);
            }
            digits[k] += 1;
            if digits[k] < n {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

fn graph_exact(m: &[Vec<usize>], g: &LabeledGraph) -> bool {
    let n = m.len();
    for x in 1..n {
        if !(1..n).any(|y| m[x][y] == 0) {
            return false;
        }
        for y in x + 1..n {
            if (m[x][y] == 0) != g.has_edge(x - 1, y - 1) {
                return false;
            }
        }
    }
    true
}

fn associative(m: &[Vec<usize>]) -> bool {
    let n = m.len();
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| m[m[x][y]][z] == m[x][m[y][z]])))
}

/// One labeled representative per isomorphism class of connected graphs on
/// `n` vertices named `v1..vn`.
pub fn connected_graphs(n: usize) -> Result<Vec<LabeledGraph>> {
    if n > 6 {
        return Err(Error::SizeLimit(format!("graph listing handles at most 6 vertices, got {n}")));
    }
    let names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut reps: Vec<LabeledGraph> = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<(&str, &str)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, &(i, j))| (names[i].as_str(), names[j].as_str()))
            .collect();
        let g = LabeledGraph::from_edges(&names.iter().map(String::as_str).collect::<Vec<_>>(), &edges)?;
        if !is_connected(&g) {
            continue;
        }
        let mut seen = false;
        for r in &reps {
            if is_isomorphic(r, &g)? {
                seen = true;
                break;
            }
        }
        if !seen {
            reps.push(g);
        }
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_graph_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| connected_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21]);
    }

    #[test]
    fn single_edge() {
        let k2 = LabeledGraph::from_edges(&["a", "b"], &[("a", "b")]).unwrap();
        let sols = brute_force_realizations(&k2).unwrap();
        // (a*a, b*b); a nilpotent square may be the other vertex.
        let expected: Vec<(usize, usize)> = vec![(0, 0), (0, 1), (0, 2), (1, 0), (1, 2), (2, 0)];
        let got: Vec<(usize, usize)> = sols.iter().map(|m| (m[1][1], m[2][2])).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn path_with_three_edges() {
        let p = LabeledGraph::from_edges(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
        let sols = brute_force_realizations(&p).unwrap();
        assert!(!sols.is_empty());
        for m in &sols {
            // Ends at distance 3 never square to zero.
            assert_ne!(m[1][1], 0);
            assert_ne!(m[4][4], 0);
        }
    }
}
