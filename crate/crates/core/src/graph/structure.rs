//! Caps `C(a,b)`, end-vertex sets, the (△) witness and the induced
//! vertex partition around a cap vertex.

use super::{distance_matrix, is_connected, Distances, LabeledGraph};
use crate::bits::BitSet;
use crate::error::{Error, Result};

/// `C(a,b)`: vertices whose neighborhood is exactly `{a, b}`.
pub fn c_set(g: &LabeledGraph, a: usize, b: usize) -> Result<BitSet> {
    if !g.has_edge(a, b) {
        return Err(Error::NotAdjacent(g.name(a).into(), g.name(b).into()));
    }
    Ok(c_set_unchecked(g, a, b))
}

fn c_set_unchecked(g: &LabeledGraph, a: usize, b: usize) -> BitSet {
    let ab = BitSet::singleton(a).with(b);
    (0..g.len()).filter(|&v| g.neighbors(v) == ab).collect()
}

pub fn is_end_vertex(g: &LabeledGraph, v: usize) -> bool {
    g.degree(v) == 1
}

pub fn end_vertices(g: &LabeledGraph) -> BitSet {
    (0..g.len()).filter(|&v| is_end_vertex(g, v)).collect()
}

/// `T_a`: end vertices adjacent to `a`.
pub fn t_set(g: &LabeledGraph, a: usize) -> BitSet {
    g.neighbors(a).intersection(end_vertices(g))
}

/// Neither an end vertex nor adjacent to one.
pub fn is_internal(g: &LabeledGraph, v: usize) -> bool {
    !is_end_vertex(g, v) && t_set(g, v).is_empty()
}

/// Adjacent `a, b`, a cap vertex `s` over them and `z` with `d(s,z) = 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DeltaWitness {
    pub a: usize,
    pub b: usize,
    pub s: usize,
    pub z: usize,
}

impl DeltaWitness {
    pub fn check(&self, g: &LabeledGraph) -> Result<()> {
        let n = g.len();
        if [self.a, self.b, self.s, self.z].iter().any(|&v| v >= n) {
            return Err(Error::InvalidWitness("vertex index out of range".into()));
        }
        if !g.has_edge(self.a, self.b) {
            return Err(Error::InvalidWitness(format!("{}--{} is not an edge", g.name(self.a), g.name(self.b))));
        }
        if g.neighbors(self.s) != BitSet::singleton(self.a).with(self.b) {
            return Err(Error::InvalidWitness(format!(
                "N({}) is not {{{}, {}}}",
                g.name(self.s),
                g.name(self.a),
                g.name(self.b)
            )));
        }
        if distance_matrix(g).get(self.s, self.z) != Some(3) {
            return Err(Error::InvalidWitness(format!("d({}, {}) is not 3", g.name(self.s), g.name(self.z))));
        }
        Ok(())
    }

    pub fn display(&self, g: &LabeledGraph) -> String {
        format!("({}, {}, {}, {})", g.name(self.a), g.name(self.b), g.name(self.s), g.name(self.z))
    }
}

fn witnesses(g: &LabeledGraph, d: &Distances, first_only: bool) -> Vec<DeltaWitness> {
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        for (a, b) in [(u, v), (v, u)] {
            for s in c_set_unchecked(g, a, b) {
                for z in d.sphere(s, 3) {
                    out.push(DeltaWitness { a, b, s, z });
                    if first_only {
                        return out;
                    }
                }
            }
        }
    }
    out
}

/// First witness: edges in index order, each in both orientations, then
/// `s`, then `z`.
pub fn find_delta_witness(g: &LabeledGraph) -> Option<DeltaWitness> {
    witnesses(g, &distance_matrix(g), true).pop()
}

/// Every witness, in the same order as [`find_delta_witness`] visits them.
pub fn all_delta_witnesses(g: &LabeledGraph) -> Vec<DeltaWitness> {
    witnesses(g, &distance_matrix(g), false)
}

/// The split `V = {a,b} ∪ C(a,b) ∪ B ∪ L` around the cap vertex `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructurePartition {
    pub ab: BitSet,
    pub c_ab: BitSet,
    /// Vertices at distance 2 from `s` outside `C(a,b)`.
    pub b: BitSet,
    /// Vertices at distance 3 from `s`.
    pub l: BitSet,
    pub ta: BitSet,
    pub tb: BitSet,
    /// Non-end vertices of `B` adjacent to exactly one of `a, b`.
    pub b1: BitSet,
    /// Non-end vertices of `B` adjacent to both `a` and `b`.
    pub b2: BitSet,
    /// `B2` vertices also adjacent to another vertex of `B`.
    pub b2_overlaps: BitSet,
    /// Structural facts of semigroup graphs that fail here.
    pub violations: Vec<String>,
}

impl StructurePartition {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Partition induced by a valid witness; violations mean `g` is not a
/// semigroup graph.
pub fn partition(g: &LabeledGraph, w: &DeltaWitness) -> Result<StructurePartition> {
    w.check(g)?;
    let d = distance_matrix(g);
    let (a, b, s) = (w.a, w.b, w.s);
    let ab = BitSet::singleton(a).with(b);
    let c_ab = c_set_unchecked(g, a, b);
    let bset = d.sphere(s, 2).difference(c_ab);
    let l = d.sphere(s, 3);
    let ta = t_set(g, a);
    let tb = t_set(g, b);
    let rest = bset.difference(ta.union(tb));
    let b2: BitSet = rest.iter().filter(|&x| ab.is_subset(g.neighbors(x))).collect();
    let b1 = rest.difference(b2);
    let b2_overlaps = b2.iter().filter(|&x| !g.neighbors(x).is_disjoint(bset)).collect();

    let mut violations = Vec::new();
    let covered = ab.union(c_ab).union(bset).union(l);
    if covered != g.vertices() || !is_connected(g) {
        let missing = g.vertices().difference(covered);
        violations.push(format!("vertices outside {{a,b}} ∪ C(a,b) ∪ B ∪ L: {:?}", g.names_of(missing)));
    }
    if bset.is_empty() {
        violations.push("B is empty".into());
    }
    if !ta.union(tb).is_subset(bset) {
        violations.push("T_a ∪ T_b is not contained in B".into());
    }
    for x in l {
        for y in g.neighbors(x).intersection(l) {
            if x < y {
                violations.push(format!("L vertices {} and {} are adjacent", g.name(x), g.name(y)));
            }
        }
    }
    for k in bset {
        if !g.neighbors(k).is_disjoint(l) && !ab.is_subset(g.neighbors(k)) {
            violations.push(format!(
                "B vertex {} touches L but is not adjacent to both {} and {}",
                g.name(k),
                g.name(a),
                g.name(b)
            ));
        }
    }
    for x in b1 {
        if g.neighbors(x).is_disjoint(bset) {
            violations.push(format!("B1 vertex {} has no neighbor in B", g.name(x)));
        }
    }
    Ok(StructurePartition { ab, c_ab, b: bset, l, ta, tb, b1, b2, b2_overlaps, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::g;

    /// K4 on a, b, x1, x2 plus y1--x1, y2--x2.
    fn k4_plus_2() -> LabeledGraph {
        g(
            &["a", "b", "x1", "x2", "y1", "y2"],
            &[("a", "b"), ("a", "x1"), ("a", "x2"), ("b", "x1"), ("b", "x2"), ("x1", "x2"), ("x1", "y1"), ("x2", "y2")],
        )
    }

    #[test]
    fn k4_plus_2_has_no_caps_or_witness() {
        let gr = k4_plus_2();
        for (u, v) in gr.edges() {
            assert!(c_set(&gr, u, v).unwrap().is_empty());
        }
        assert!(find_delta_witness(&gr).is_none());
        assert!(all_delta_witnesses(&gr).is_empty());
    }

    #[test]
    fn c_set_requires_edge() {
        let gr = k4_plus_2();
        let (y1, y2) = (gr.vertex("y1").unwrap(), gr.vertex("y2").unwrap());
        assert!(matches!(c_set(&gr, y1, y2), Err(Error::NotAdjacent(..))));
    }

    #[test]
    fn internal_vertices() {
        let gr = k4_plus_2();
        let v = |n| gr.vertex(n).unwrap();
        assert!(is_internal(&gr, v("a")));
        assert!(!is_internal(&gr, v("x1")));
        assert!(!is_internal(&gr, v("y1")));
        assert_eq!(t_set(&gr, v("x1")), BitSet::singleton(v("y1")));
    }

    #[test]
    fn invalid_witness_rejected() {
        let gr = k4_plus_2();
        let w = DeltaWitness { a: 0, b: 1, s: 4, z: 5 };
        assert!(matches!(partition(&gr, &w), Err(Error::InvalidWitness(_))));
    }
}
