//! Exact isomorphism for small graphs by backtracking with degree and
//! neighbor-degree pruning.

use super::LabeledGraph;
use crate::bits::BitSet;
use crate::error::{Error, Result};

/// Largest vertex count accepted by the isomorphism routines.
pub const ISO_VERTEX_LIMIT: usize = 16;

fn invariant(g: &LabeledGraph, v: usize) -> (usize, Vec<usize>) {
    let mut nd: Vec<usize> = g.neighbors(v).iter().map(|u| g.degree(u)).collect();
    nd.sort_unstable();
    (g.degree(v), nd)
}

struct Matcher<'a> {
    g1: &'a LabeledGraph,
    g2: &'a LabeledGraph,
    order: Vec<usize>,
    candidates: Vec<BitSet>,
    map: Vec<usize>,
    used: BitSet,
}

impl Matcher<'_> {
    fn new<'a>(g1: &'a LabeledGraph, g2: &'a LabeledGraph) -> Option<Matcher<'a>> {
        if g1.len() != g2.len() || g1.edge_count() != g2.edge_count() {
            return None;
        }
        if g1.degree_sequence() != g2.degree_sequence() {
            return None;
        }
        let inv2: Vec<_> = (0..g2.len()).map(|v| invariant(g2, v)).collect();
        let candidates: Vec<BitSet> = (0..g1.len())
            .map(|v| {
                let i = invariant(g1, v);
                (0..g2.len()).filter(|&u| inv2[u] == i).collect()
            })
            .collect();
        if candidates.iter().any(|c| c.is_empty()) {
            return None;
        }
        // Fewest candidates first, then grow along edges so adjacency
        // checks prune early.
        let mut order = Vec::with_capacity(g1.len());
        let mut placed = BitSet::EMPTY;
        while order.len() < g1.len() {
            let frontier: BitSet =
                placed.iter().fold(BitSet::EMPTY, |acc, v| acc.union(g1.neighbors(v))).difference(placed);
            let pool = if frontier.is_empty() { g1.vertices().difference(placed) } else { frontier };
            let next = pool
                .iter()
                .min_by_key(|&v| (candidates[v].len(), std::cmp::Reverse(g1.degree(v))))
                .expect("pool is nonempty");
            order.push(next);
            placed.insert(next);
        }
        Some(Matcher { g1, g2, order, candidates, map: vec![usize::MAX; g1.len()], used: BitSet::EMPTY })
    }

    fn search(&mut self, k: usize, sink: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if k == self.order.len() {
            return sink(&self.map);
        }
        let v = self.order[k];
        for u in self.candidates[v].difference(self.used) {
            let consistent =
                self.order[..k].iter().all(|&w| self.g1.has_edge(v, w) == self.g2.has_edge(u, self.map[w]));
            if !consistent {
                continue;
            }
            self.map[v] = u;
            self.used.insert(u);
            let stop = self.search(k + 1, sink);
            self.used.remove(u);
            self.map[v] = usize::MAX;
            if stop {
                return true;
            }
        }
        false
    }
}

fn check_size(g: &LabeledGraph) -> Result<()> {
    if g.len() > ISO_VERTEX_LIMIT {
        return Err(Error::SizeLimit(format!(
            "isomorphism supports at most {ISO_VERTEX_LIMIT} vertices, got {}",
            g.len()
        )));
    }
    Ok(())
}

/// A vertex map `g1 -> g2` preserving adjacency, if one exists.
pub fn find_isomorphism(g1: &LabeledGraph, g2: &LabeledGraph) -> Result<Option<Vec<usize>>> {
    check_size(g1)?;
    check_size(g2)?;
    let Some(mut m) = Matcher::new(g1, g2) else {
        return Ok(None);
    };
    let mut found = None;
    m.search(0, &mut |map| {
        found = Some(map.to_vec());
        true
    });
    Ok(found)
}

pub fn is_isomorphic(g1: &LabeledGraph, g2: &LabeledGraph) -> Result<bool> {
    Ok(find_isomorphism(g1, g2)?.is_some())
}

/// Every automorphism of `g` as a vertex permutation.
pub fn automorphisms(g: &LabeledGraph) -> Result<Vec<Vec<usize>>> {
    check_size(g)?;
    let mut out = Vec::new();
    if let Some(mut m) = Matcher::new(g, g) {
        m.search(0, &mut |map| {
            out.push(map.to_vec());
            false
        });
    }
    Ok(out)
}
