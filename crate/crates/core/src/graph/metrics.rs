use super::LabeledGraph;
use crate::bits::BitSet;
use crate::error::{Error, Result};

const UNREACHABLE: u8 = u8::MAX;

/// All-pairs shortest-path lengths by breadth-first search.
#[derive(Clone, Debug)]
pub struct Distances {
    n: usize,
    d: Vec<u8>,
}

impl Distances {
    /// `None` when unreachable.
    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        match self.d[u * self.n + v] {
            UNREACHABLE => None,
            x => Some(x as usize),
        }
    }

    /// Vertices at exactly distance `k` from `u`.
    pub fn sphere(&self, u: usize, k: usize) -> BitSet {
        (0..self.n).filter(|&v| self.get(u, v) == Some(k)).collect()
    }

    pub fn eccentricity(&self, u: usize) -> Option<usize> {
        (0..self.n).try_fold(0, |m, v| self.get(u, v).map(|d| m.max(d)))
    }
}

fn bfs(g: &LabeledGraph, s: usize, out: &mut [u8]) {
    out.fill(UNREACHABLE);
    out[s] = 0;
    let mut frontier = BitSet::singleton(s);
    let mut seen = frontier;
    let mut k = 0u8;
    while !frontier.is_empty() {
        k += 1;
        let mut next = BitSet::EMPTY;
        for v in frontier {
            next = next.union(g.neighbors(v));
        }
        next = next.difference(seen);
        for v in next {
            out[v] = k;
        }
        seen = seen.union(next);
        frontier = next;
    }
}

pub fn distance_matrix(g: &LabeledGraph) -> Distances {
    let n = g.len();
    let mut d = vec![UNREACHABLE; n * n];
    for s in 0..n {
        bfs(g, s, &mut d[s * n..(s + 1) * n]);
    }
    Distances { n, d }
}

/// Shortest-path length between named vertices; `None` means infinite.
pub fn distance(g: &LabeledGraph, x: &str, y: &str) -> Result<Option<usize>> {
    let (u, v) = (g.vertex(x)?, g.vertex(y)?);
    let mut d = vec![UNREACHABLE; g.len()];
    bfs(g, u, &mut d);
    Ok(match d[v] {
        UNREACHABLE => None,
        x => Some(x as usize),
    })
}

/// Largest distance; `None` for a disconnected graph, `Some(0)` when empty.
pub fn diameter(g: &LabeledGraph) -> Option<usize> {
    let d = distance_matrix(g);
    (0..g.len()).try_fold(0, |m, u| d.eccentricity(u).map(|e| m.max(e)))
}

pub fn is_connected(g: &LabeledGraph) -> bool {
    if g.is_empty() {
        return true;
    }
    let mut seen = BitSet::singleton(0);
    let mut frontier = seen;
    while !frontier.is_empty() {
        let mut next = BitSet::EMPTY;
        for v in frontier {
            next = next.union(g.neighbors(v));
        }
        frontier = next.difference(seen);
        seen = seen.union(next);
    }
    seen == g.vertices()
}

/// The union of all cycles, taken as the non-bridge edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreDecomposition {
    pub core_edges: Vec<(usize, usize)>,
    pub core_vertices: BitSet,
    pub pendant_vertices: BitSet,
    /// Core edges lying on no triangle and no square.
    pub edges_off_short_cycles: Vec<(usize, usize)>,
    /// Pendant vertices that are not end vertices hanging off the core
    /// (only checked when the core is nonempty).
    pub bad_pendants: BitSet,
}

impl CoreDecomposition {
    pub fn has_cycle(&self) -> bool {
        !self.core_edges.is_empty()
    }

    pub fn core_is_triangles_and_squares(&self) -> bool {
        self.edges_off_short_cycles.is_empty()
    }

    pub fn pendants_ok(&self) -> bool {
        self.bad_pendants.is_empty()
    }
}

fn bridges(g: &LabeledGraph) -> Vec<(usize, usize)> {
    fn dfs(
        g: &LabeledGraph,
        u: usize,
        parent: Option<usize>,
        timer: &mut usize,
        tin: &mut [usize],
        low: &mut [usize],
        out: &mut Vec<(usize, usize)>,
    ) {
        *timer += 1;
        tin[u] = *timer;
        low[u] = *timer;
        for v in g.neighbors(u) {
            if Some(v) == parent {
                continue;
            }
            if tin[v] != 0 {
                low[u] = low[u].min(tin[v]);
            } else {
                dfs(g, v, Some(u), timer, tin, low, out);
                low[u] = low[u].min(low[v]);
                if low[v] > tin[u] {
                    out.push((u.min(v), u.max(v)));
                }
            }
        }
    }
    let n = g.len();
    let (mut tin, mut low) = (vec![0; n], vec![0; n]);
    let mut timer = 0;
    let mut out = Vec::new();
    for s in 0..n {
        if tin[s] == 0 {
            dfs(g, s, None, &mut timer, &mut tin, &mut low, &mut out);
        }
    }
    out.sort_unstable();
    out
}

fn on_triangle(g: &LabeledGraph, u: usize, v: usize) -> bool {
    !g.neighbors(u).is_disjoint(g.neighbors(v))
}

fn on_square(g: &LabeledGraph, u: usize, v: usize) -> bool {
    let pu = g.neighbors(u).without(v);
    let pv = g.neighbors(v).without(u);
    pu.iter().any(|p| !g.neighbors(p).intersection(pv).without(p).is_empty())
}

/// Core decomposition of a connected graph.
pub fn core(g: &LabeledGraph) -> Result<CoreDecomposition> {
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    Ok(core_unchecked(g))
}

/// Core decomposition computed per component, without the connectivity check.
pub fn core_unchecked(g: &LabeledGraph) -> CoreDecomposition {
    let br = bridges(g);
    let core_edges: Vec<(usize, usize)> = g.edges().into_iter().filter(|e| br.binary_search(e).is_err()).collect();
    let core_vertices: BitSet = core_edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    let pendant_vertices = g.vertices().difference(core_vertices);
    let edges_off_short_cycles =
        core_edges.iter().copied().filter(|&(u, v)| !on_triangle(g, u, v) && !on_square(g, u, v)).collect();
    let bad_pendants = if core_edges.is_empty() {
        BitSet::EMPTY
    } else {
        pendant_vertices.iter().filter(|&p| g.degree(p) != 1 || g.neighbors(p).is_disjoint(core_vertices)).collect()
    };
    CoreDecomposition { core_edges, core_vertices, pendant_vertices, edges_off_short_cycles, bad_pendants }
}

/// The four necessary conditions every semigroup graph satisfies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NecessaryReport {
    pub connected: bool,
    pub diameter_at_most_3: bool,
    pub core_ok: bool,
    pub neighborhood_ok: bool,
    /// Human-readable reason for each failed check.
    pub failures: Vec<String>,
}

impl NecessaryReport {
    pub fn all_pass(&self) -> bool {
        self.connected && self.diameter_at_most_3 && self.core_ok && self.neighborhood_ok
    }

    /// Name of the first failing condition.
    pub fn first_failed(&self) -> Option<&'static str> {
        if !self.connected {
            Some("connected")
        } else if !self.diameter_at_most_3 {
            Some("diameter<=3")
        } else if !self.core_ok {
            Some("core")
        } else if !self.neighborhood_ok {
            Some("neighborhood")
        } else {
            None
        }
    }
}

/// Checks (i) connectivity, (ii) diameter at most 3, (iii) the core is a
/// union of triangles and squares with end vertices hanging off it, and
/// (iv) every nonadjacent pair `x, y` has a `z` with
/// `N(x) ∪ N(y) ⊆ N(z) ∪ {z}`.
pub fn necessary_conditions(g: &LabeledGraph) -> NecessaryReport {
    let mut failures = Vec::new();
    let connected = is_connected(g);
    if !connected {
        failures.push("graph is disconnected".to_string());
    }
    let diameter_at_most_3 = match diameter(g) {
        Some(d) if d <= 3 => true,
        Some(d) => {
            failures.push(format!("diameter {d} exceeds 3"));
            false
        }
        None => {
            failures.push("diameter is infinite".to_string());
            false
        }
    };
    let c = core_unchecked(g);
    for &(u, v) in &c.edges_off_short_cycles {
        failures.push(format!("core edge {}--{} lies on no triangle or square", g.name(u), g.name(v)));
    }
    for p in c.bad_pendants {
        failures.push(format!("vertex {} is off the core but not an end vertex on it", g.name(p)));
    }
    let core_ok = c.core_is_triangles_and_squares() && c.pendants_ok();
    let mut neighborhood_ok = true;
    for x in 0..g.len() {
        for y in x + 1..g.len() {
            if g.has_edge(x, y) {
                continue;
            }
            let need = g.neighbors(x).union(g.neighbors(y));
            if !(0..g.len()).any(|z| need.is_subset(g.closed_neighbors(z))) {
                neighborhood_ok = false;
                failures.push(format!(
                    "no vertex z with N({0}) ∪ N({1}) inside the closed neighborhood of z",
                    g.name(x),
                    g.name(y)
                ));
            }
        }
    }
    NecessaryReport { connected, diameter_at_most_3, core_ok, neighborhood_ok, failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::g;

    fn cycle(n: usize) -> LabeledGraph {
        let names: Vec<String> = (1..=n).map(|i| format!("p{i}")).collect();
        let edges: Vec<(String, String)> = (0..n).map(|i| (names[i].clone(), names[(i + 1) % n].clone())).collect();
        LabeledGraph::from_edges(&names, &edges).unwrap()
    }

    #[test]
    fn distances_on_path() {
        let p = g(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]);
        assert_eq!(distance(&p, "a", "d").unwrap(), Some(3));
        assert_eq!(distance(&p, "b", "b").unwrap(), Some(0));
        assert_eq!(diameter(&p), Some(3));
        assert!(matches!(distance(&p, "a", "q"), Err(Error::UnknownVertex(_))));
        let two = g(&["a", "b", "c", "d"], &[("a", "b"), ("c", "d")]);
        assert_eq!(distance(&two, "a", "c").unwrap(), None);
        assert_eq!(diameter(&two), None);
        assert!(!is_connected(&two));
        assert!(matches!(core(&two), Err(Error::Disconnected)));
    }

    #[test]
    fn star_has_empty_core() {
        let s = g(&["c", "l1", "l2", "l3", "l4"], &[("c", "l1"), ("c", "l2"), ("c", "l3"), ("c", "l4")]);
        let k = core(&s).unwrap();
        assert!(k.core_edges.is_empty());
        assert_eq!(k.pendant_vertices, s.vertices());
        assert!(k.pendants_ok());
    }

    #[test]
    fn c5_fails_core_condition() {
        let r = necessary_conditions(&cycle(5));
        assert!(r.connected && r.diameter_at_most_3);
        assert!(!r.core_ok);
        assert_eq!(r.first_failed(), Some("core"));
    }

    #[test]
    fn two_edges_fail_connectivity() {
        let two = g(&["a", "b", "c", "d"], &[("a", "b"), ("c", "d")]);
        let r = necessary_conditions(&two);
        assert!(!r.connected);
        assert_eq!(r.first_failed(), Some("connected"));
    }

    #[test]
    fn square_is_on_square() {
        let c4 = cycle(4);
        let k = core(&c4).unwrap();
        assert_eq!(k.core_edges.len(), 4);
        assert!(k.core_is_triangles_and_squares());
        assert!(necessary_conditions(&c4).all_pass());
    }
}
