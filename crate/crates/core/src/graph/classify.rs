//! Recognizers for the small named graph families that are known to be
//! semigroup graphs (acyclic, bipartite and rectangle-free cases).

use std::fmt;

use super::{core_unchecked, is_connected, LabeledGraph};
use crate::bits::BitSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialFamily {
    Star,
    TwoStar,
    CompleteBipartite,
    CompleteBipartiteWithThorn,
    /// A triangle with end vertices hanging off `n` of its corners.
    TriangleWithThorns(usize),
    Fan,
    FanWithThorn,
    None,
}

impl fmt::Display for SpecialFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecialFamily::Star => write!(f, "star"),
            SpecialFamily::TwoStar => write!(f, "two-star"),
            SpecialFamily::CompleteBipartite => write!(f, "complete-bipartite"),
            SpecialFamily::CompleteBipartiteWithThorn => write!(f, "complete-bipartite-with-thorn"),
            SpecialFamily::TriangleWithThorns(n) => write!(f, "triangle-with-{n}-thorns"),
            SpecialFamily::Fan => write!(f, "fan"),
            SpecialFamily::FanWithThorn => write!(f, "fan-with-thorn"),
            SpecialFamily::None => write!(f, "none"),
        }
    }
}

fn is_star(g: &LabeledGraph) -> bool {
    let n = g.len();
    n >= 2 && (0..n).any(|c| g.degree(c) == n - 1 && (0..n).all(|v| v == c || g.degree(v) == 1))
}

fn is_two_star(g: &LabeledGraph) -> bool {
    let n = g.len();
    if n < 4 || g.edge_count() != n - 1 {
        return false;
    }
    let centers: Vec<usize> = (0..n).filter(|&v| g.degree(v) >= 2).collect();
    centers.len() == 2 && g.has_edge(centers[0], centers[1])
}

/// Sides of a complete bipartite graph on `vs`, both of size at least 2.
fn complete_bipartite_sides(g: &LabeledGraph, vs: BitSet) -> Option<(BitSet, BitSet)> {
    let x0 = vs.first()?;
    let y = g.neighbors(x0).intersection(vs);
    let x = vs.difference(y);
    if x.len() < 2 || y.len() < 2 {
        return None;
    }
    let ok = x.iter().all(|v| g.neighbors(v).intersection(vs) == y)
        && y.iter().all(|v| g.neighbors(v).intersection(vs) == x);
    ok.then_some((x, y))
}

fn is_complete_bipartite_with_thorn(g: &LabeledGraph) -> bool {
    let ends: Vec<usize> = (0..g.len()).filter(|&v| g.degree(v) == 1).collect();
    if ends.len() != 1 {
        return false;
    }
    complete_bipartite_sides(g, g.vertices().without(ends[0])).is_some()
}

fn triangle_thorns(g: &LabeledGraph) -> Option<usize> {
    let k = core_unchecked(g);
    if k.core_edges.len() != 3 || k.core_vertices.len() != 3 || !k.pendants_ok() {
        return None;
    }
    Some(k.core_vertices.iter().filter(|&c| !g.neighbors(c).is_disjoint(k.pendant_vertices)).count())
}

/// `(matching edges, isolated)` for `g - c` when `c` dominates and the rest
/// has maximum degree 1.
fn fan_shape(g: &LabeledGraph) -> Option<(usize, usize)> {
    let n = g.len();
    for c in (0..n).filter(|&c| g.degree(c) == n - 1) {
        let rest = g.vertices().without(c);
        let degs: Vec<usize> = rest.iter().map(|v| g.neighbors(v).intersection(rest).len()).collect();
        if degs.iter().all(|&d| d <= 1) {
            let matched = degs.iter().filter(|&&d| d == 1).count();
            return Some((matched / 2, degs.len() - matched));
        }
    }
    None
}

/// First matching family, in the order the variants are declared.
pub fn classify_special(g: &LabeledGraph) -> SpecialFamily {
    if !is_connected(g) {
        return SpecialFamily::None;
    }
    if is_star(g) {
        return SpecialFamily::Star;
    }
    if is_two_star(g) {
        return SpecialFamily::TwoStar;
    }
    if complete_bipartite_sides(g, g.vertices()).is_some() {
        return SpecialFamily::CompleteBipartite;
    }
    if is_complete_bipartite_with_thorn(g) {
        return SpecialFamily::CompleteBipartiteWithThorn;
    }
    if let Some(n) = triangle_thorns(g) {
        return SpecialFamily::TriangleWithThorns(n);
    }
    match fan_shape(g) {
        Some((m, 0)) if m >= 2 => SpecialFamily::Fan,
        Some((m, _)) if m >= 2 => SpecialFamily::FanWithThorn,
        _ => SpecialFamily::None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::g;

    #[test]
    fn stars() {
        let s = g(&["c", "p", "q", "r"], &[("c", "p"), ("c", "q"), ("c", "r")]);
        assert_eq!(classify_special(&s), SpecialFamily::Star);
        let ts = g(&["c", "d", "p", "q", "r"], &[("c", "d"), ("c", "p"), ("d", "q"), ("d", "r")]);
        assert_eq!(classify_special(&ts), SpecialFamily::TwoStar);
    }

    #[test]
    fn bipartite() {
        let k23 = g(
            &["x1", "x2", "y1", "y2", "y3"],
            &[("x1", "y1"), ("x1", "y2"), ("x1", "y3"), ("x2", "y1"), ("x2", "y2"), ("x2", "y3")],
        );
        assert_eq!(classify_special(&k23), SpecialFamily::CompleteBipartite);
        let thorn =
            g(&["x1", "x2", "y1", "y2", "t"], &[("x1", "y1"), ("x1", "y2"), ("x2", "y1"), ("x2", "y2"), ("t", "x1")]);
        assert_eq!(classify_special(&thorn), SpecialFamily::CompleteBipartiteWithThorn);
    }

    #[test]
    fn triangles_and_fans() {
        let tri = g(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]);
        assert_eq!(classify_special(&tri), SpecialFamily::TriangleWithThorns(0));
        let tri2 = g(
            &["a", "b", "c", "p", "q", "r"],
            &[("a", "b"), ("b", "c"), ("a", "c"), ("a", "p"), ("a", "q"), ("b", "r")],
        );
        assert_eq!(classify_special(&tri2), SpecialFamily::TriangleWithThorns(2));
        let fan =
            g(&["c", "p", "q", "r", "s"], &[("c", "p"), ("c", "q"), ("c", "r"), ("c", "s"), ("p", "q"), ("r", "s")]);
        assert_eq!(classify_special(&fan), SpecialFamily::Fan);
        let fan_t = g(
            &["c", "p", "q", "r", "s", "t"],
            &[("c", "p"), ("c", "q"), ("c", "r"), ("c", "s"), ("p", "q"), ("r", "s"), ("c", "t")],
        );
        assert_eq!(classify_special(&fan_t), SpecialFamily::FanWithThorn);
        let k4 = g(&["a", "b", "c", "d"], &[("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")]);
        assert_eq!(classify_special(&k4), SpecialFamily::None);
    }
}
