//! Simple labeled graphs and zero-divisor graphs of tables.

mod classify;
mod iso;
mod metrics;
mod structure;

pub use classify::{classify_special, SpecialFamily};
pub use iso::{automorphisms, find_isomorphism, is_isomorphic, ISO_VERTEX_LIMIT};
pub use metrics::{
    core, core_unchecked, diameter, distance, distance_matrix, is_connected, necessary_conditions, CoreDecomposition,
    Distances, NecessaryReport,
};
pub use structure::{
    all_delta_witnesses, c_set, end_vertices, find_delta_witness, is_end_vertex, is_internal, partition, t_set,
    DeltaWitness, StructurePartition,
};

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::algebra::{self, CayleyTable};
use crate::bits::{BitSet, MAX_BITS};
use crate::error::{parse_err, Error, Result};

/// An undirected simple graph with uniquely named vertices.
///
/// Vertices are indexed `0..len()` in insertion order; every derived
/// structure reports sets as [`BitSet`]s over those indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LabeledGraph {
    names: Vec<String>,
    adj: Vec<BitSet>,
}

fn check_vertex_name(name: &str) -> std::result::Result<(), String> {
    if name.is_empty() {
        return Err("empty vertex name".into());
    }
    if name == "0" {
        return Err("`0` is reserved for the zero element".into());
    }
    if name.chars().any(|c| c.is_whitespace() || c == ',' || c == '#') {
        return Err(format!("vertex name `{name}` contains whitespace, `,` or `#`"));
    }
    Ok(())
}

impl LabeledGraph {
    /// An edgeless graph on the given vertices.
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_BITS - 1 {
            return Err(Error::SizeLimit(format!("{} vertices, at most {} supported", names.len(), MAX_BITS - 1)));
        }
        let mut seen = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            check_vertex_name(n).map_err(Error::MalformedGraph)?;
            if seen.insert(n.clone(), i).is_some() {
                return Err(Error::MalformedGraph(format!("duplicate vertex `{n}`")));
            }
        }
        let adj = vec![BitSet::EMPTY; names.len()];
        Ok(LabeledGraph { names, adj })
    }

    /// Builds a graph from vertex names and named edges.
    pub fn from_edges<S: AsRef<str>>(names: &[S], edges: &[(S, S)]) -> Result<Self> {
        let mut g = Self::new(names.iter().map(|s| s.as_ref().to_string()))?;
        for (p, q) in edges {
            let (i, j) = (g.vertex(p.as_ref())?, g.vertex(q.as_ref())?);
            g.insert_edge(i, j)?;
        }
        Ok(g)
    }

    pub(crate) fn insert_edge(&mut self, i: usize, j: usize) -> Result<()> {
        if i == j {
            return Err(Error::MalformedGraph(format!("loop at `{}`", self.names[i])));
        }
        if self.adj[i].contains(j) {
            return Err(Error::DuplicateEdge(self.names[i].clone(), self.names[j].clone()));
        }
        self.adj[i].insert(j);
        self.adj[j].insert(i);
        Ok(())
    }

    pub(crate) fn push_vertex(&mut self, name: String) -> Result<usize> {
        check_vertex_name(&name).map_err(Error::MalformedGraph)?;
        if self.names.contains(&name) {
            return Err(Error::MalformedGraph(format!("duplicate vertex `{name}`")));
        }
        if self.names.len() >= MAX_BITS - 1 {
            return Err(Error::SizeLimit("too many vertices".into()));
        }
        self.names.push(name);
        self.adj.push(BitSet::EMPTY);
        Ok(self.names.len() - 1)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.names.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn vertices(&self) -> BitSet {
        BitSet::full(self.len())
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> BitSet {
        self.adj[v]
    }

    /// `N(v) ∪ {v}`.
    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> BitSet {
        self.adj[v].with(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic index order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.len() {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn names_of(&self, set: BitSet) -> Vec<&str> {
        set.iter().map(|v| self.name(v)).collect()
    }

    /// Sorted degree sequence.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.len()).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    /// Equality of vertex names and named edges, ignoring vertex order.
    pub fn labeled_eq(&self, other: &LabeledGraph) -> bool {
        if self.len() != other.len() || self.edge_count() != other.edge_count() {
            return false;
        }
        let map: Option<Vec<usize>> = self.names.iter().map(|n| other.vertex(n).ok()).collect();
        let Some(map) = map else { return false };
        self.edges().into_iter().all(|(u, v)| other.has_edge(map[u], map[v]))
    }

    /// Human-readable difference to `other`, if any.
    pub fn difference(&self, other: &LabeledGraph) -> Option<String> {
        let mine: std::collections::BTreeSet<&String> = self.names.iter().collect();
        let theirs: std::collections::BTreeSet<&String> = other.names.iter().collect();
        if mine != theirs {
            return Some(format!("vertex sets differ: {mine:?} vs {theirs:?}"));
        }
        for (u, v) in self.edges() {
            let (a, b) = (self.name(u), self.name(v));
            if !other.has_edge(other.vertex(a).ok()?, other.vertex(b).ok()?) {
                return Some(format!("edge {a}--{b} missing on the right"));
            }
        }
        for (u, v) in other.edges() {
            let (a, b) = (other.name(u), other.name(v));
            if !self.has_edge(self.vertex(a).ok()?, self.vertex(b).ok()?) {
                return Some(format!("edge {a}--{b} missing on the left"));
            }
        }
        None
    }

    /// The same graph with vertices listed in `order` (a permutation of names).
    pub fn reordered<S: AsRef<str>>(&self, order: &[S]) -> Result<Self> {
        if order.len() != self.len() {
            return Err(Error::MalformedGraph("reorder must list every vertex".into()));
        }
        let idx = order.iter().map(|n| self.vertex(n.as_ref())).collect::<Result<Vec<_>>>()?;
        let mut g = LabeledGraph::new(idx.iter().map(|&i| self.names[i].clone()))?;
        let mut pos = vec![0; self.len()];
        for (k, &i) in idx.iter().enumerate() {
            pos[i] = k;
        }
        for (u, v) in self.edges() {
            g.insert_edge(pos[u], pos[v])?;
        }
        Ok(g)
    }

    /// Parses the plain-text graph format.
    ///
    /// `#` lines are comments; the first significant line lists vertex
    /// names, every later line holds exactly two names forming an edge.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines =
            text.lines().enumerate().map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l))).filter(|(_, l)| {
                let t = l.trim();
                !t.is_empty() && !t.starts_with('#')
            });
        let (vline, vertices) = lines.next().ok_or_else(|| parse_err(1, 1, "no vertex line found"))?;
        let names: Vec<&str> = vertices.split_whitespace().collect();
        let mut g = LabeledGraph::default();
        for (k, n) in names.iter().enumerate() {
            g.push_vertex(n.to_string()).map_err(|e| parse_err(vline, k + 1, e.to_string()))?;
        }
        for (line, l) in lines {
            let f: Vec<&str> = l.split_whitespace().collect();
            if f.len() != 2 {
                return Err(parse_err(line, 1, format!("expected two vertex names, found {}", f.len())));
            }
            let u = g.vertex(f[0]).map_err(|e| parse_err(line, 1, e.to_string()))?;
            let v = g.vertex(f[1]).map_err(|e| parse_err(line, 2, e.to_string()))?;
            g.insert_edge(u, v).map_err(|e| parse_err(line, 1, e.to_string()))?;
        }
        Ok(g)
    }

    /// Canonical text form: vertex line, then edges in index order.
    pub fn to_text(&self) -> String {
        let mut out = self.names.join(" ");
        out.push('\n');
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{} {}", self.names[u], self.names[v]);
        }
        out
    }

    /// DOT rendering for visualization.
    pub fn to_dot(&self) -> String {
        fn id(s: &str) -> String {
            if s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') && !s.starts_with(|c: char| c.is_ascii_digit())
            {
                s.to_string()
            } else {
                format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
            }
        }
        let mut out = String::from("graph G {\n");
        for n in &self.names {
            let _ = writeln!(out, "  {};", id(n));
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {} -- {};", id(&self.names[u]), id(&self.names[v]));
        }
        out.push_str("}\n");
        out
    }
}

/// `Γ(table)`: vertices are the nonzero zero-divisors (in table order),
/// distinct `x, y` adjacent iff `x*y = 0`.
///
/// An element whose only annihilating partner is itself becomes an
/// isolated vertex; see [`isolated_vertices`].
pub fn zero_divisor_graph(table: &CayleyTable) -> Result<LabeledGraph> {
    let report = algebra::validate(table);
    if !report.is_valid() {
        return Err(Error::MalformedTable(format!(
            "not a commutative semigroup with zero (commutative={}, zero={}, associative={})",
            report.commutative, report.zero_ok, report.associative
        )));
    }
    Ok(zero_divisor_graph_unchecked(table))
}

/// [`zero_divisor_graph`] without validating the table first.
pub fn zero_divisor_graph_unchecked(table: &CayleyTable) -> LabeledGraph {
    let n = table.order();
    let zd: Vec<usize> = (1..n).filter(|&x| (1..n).any(|y| table.mul(x, y) == 0)).collect();
    let mut g = LabeledGraph {
        names: zd.iter().map(|&x| table.name(x).to_string()).collect(),
        adj: vec![BitSet::EMPTY; zd.len()],
    };
    for (i, &x) in zd.iter().enumerate() {
        for (j, &y) in zd.iter().enumerate().skip(i + 1) {
            if table.mul(x, y) == 0 {
                g.adj[i].insert(j);
                g.adj[j].insert(i);
            }
        }
    }
    g
}

/// Degree-0 vertices; a zero-divisor graph with any is outside the
/// connected regime the rest of the crate targets.
pub fn isolated_vertices(g: &LabeledGraph) -> BitSet {
    (0..g.len()).filter(|&v| g.degree(v) == 0).collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn g(names: &[&str], edges: &[(&str, &str)]) -> LabeledGraph {
        LabeledGraph::from_edges(names, edges).unwrap()
    }

    #[test]
    fn text_round_trip() {
        let text = "# a path\na b c\na b\nb c\n";
        let gr = LabeledGraph::parse(text).unwrap();
        assert_eq!(gr.len(), 3);
        assert_eq!(gr.edge_count(), 2);
        assert_eq!(gr.to_text(), "a b c\na b\nb c\n");
        assert_eq!(LabeledGraph::parse(&gr.to_text()).unwrap(), gr);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(LabeledGraph::parse(""), Err(Error::Parse { .. })));
        assert!(matches!(LabeledGraph::parse("# only\n"), Err(Error::Parse { .. })));
        assert!(matches!(LabeledGraph::parse("a b\na c\n"), Err(Error::Parse { line: 2, column: 2, .. })));
        assert!(matches!(LabeledGraph::parse("a b\na a\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(LabeledGraph::parse("a b\na b\nb a\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(LabeledGraph::parse("a 0\n"), Err(Error::Parse { line: 1, column: 2, .. })));
        assert!(matches!(LabeledGraph::parse("a b c\na b c\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn dot_output() {
        let gr = g(&["a", "b"], &[("a", "b")]);
        assert_eq!(gr.to_dot(), "graph G {\n  a;\n  b;\n  a -- b;\n}\n");
    }

    #[test]
    fn zero_divisor_graph_of_trivial_is_empty() {
        let gr = zero_divisor_graph(&CayleyTable::trivial()).unwrap();
        assert!(gr.is_empty());
    }

    #[test]
    fn labeled_equality() {
        let a = g(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let b = g(&["c", "b", "a"], &[("c", "b"), ("a", "b")]);
        assert!(a.labeled_eq(&b));
        assert!(a.difference(&b).is_none());
        let c = g(&["a", "b", "c"], &[("a", "b"), ("a", "c")]);
        assert!(!a.labeled_eq(&c));
        assert!(a.difference(&c).is_some());
    }
}
