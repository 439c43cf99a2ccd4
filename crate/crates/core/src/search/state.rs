//! Partial Cayley tables with per-cell domains and trail-based undo.
//!
//! Cells are unordered pairs of elements. Cells known to be equal are
//! merged in a union-find structure whose classes carry one domain and at
//! most one value. Associativity is enforced triple by triple: for
//! `A = p*q`, `C = q*r`, `B = A*r`, `D = p*C`, once `A` and `C` are known
//! the cells `B` and `D` are merged, and once `A` and `B` (or `C` and `D`)
//! are known the remaining inner cell is restricted to values compatible
//! with the known outer value.

use std::fmt;

use crate::algebra::CayleyTable;
use crate::bits::BitSet;
use crate::graph::{distance_matrix, LabeledGraph};

pub(crate) const UNSET: u8 = u8::MAX;

#[derive(Clone, Copy, Debug)]
enum Undo {
    Dom(u16, u64),
    Val(u16),
    Union { child: u16, root: u16, old_dom: u64, old_len: u32 },
}

#[derive(Clone, Copy, Debug)]
enum Why {
    Decision,
    Triple(u8, u8, u8),
}

/// Counters kept while propagating and searching.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counters {
    /// Cell-value events processed.
    pub propagations: u64,
}

/// The propagation reached an inconsistency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contradiction {
    /// Deductions leading to the conflict, last line being the conflict
    /// itself. Only filled when explanations are enabled.
    pub chain: Vec<String>,
}

impl fmt::Display for Contradiction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.chain.is_empty() {
            return write!(f, "contradiction");
        }
        for (i, l) in self.chain.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Options for building the initial domains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DomainOptions {
    /// Forbid `x*x = 0` when some vertex lies at distance 3 from `x`.
    pub distance3_squares: bool,
    /// Record deductions from the start, including the initial propagation.
    pub explain: bool,
}

impl Default for DomainOptions {
    fn default() -> Self {
        DomainOptions { distance3_squares: true, explain: false }
    }
}

/// A partial commutative table on `V(G) ∪ {0}` (vertex `i` is element `i+1`).
#[derive(Clone)]
pub struct SearchState {
    n: usize,
    names: Vec<String>,
    parent: Vec<u16>,
    dom: Vec<u64>,
    val: Vec<u8>,
    members: Vec<Vec<u16>>,
    trail: Vec<Undo>,
    queue: Vec<u16>,
    /// Cells not fixed by the graph: squares and nonadjacent pairs.
    free: Vec<u16>,
    explain: Option<Vec<String>>,
    pub counters: Counters,
}

impl fmt::Debug for SearchState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SearchState")
            .field("order", &self.n)
            .field("unassigned", &self.unassigned_count())
            .field("trail", &self.trail.len())
            .finish()
    }
}

impl SearchState {
    /// Initial domains for realizing `g` on `V(G) ∪ {0}`.
    ///
    /// Adjacent pairs are fixed to 0. A nonadjacent pair `x, y` may take a
    /// vertex `v` only if `N(x) ∪ N(y) ⊆ N(v) ∪ {v}`; a square `x*x` may take
    /// `v` only if `N(x) ⊆ N(v) ∪ {v}`, and 0 unless forbidden by the
    /// distance-3 rule. The consequences of the fixed zeros are propagated
    /// before returning; a contradiction there means no realization exists.
    pub fn init(g: &LabeledGraph, opts: DomainOptions) -> Result<SearchState, (SearchState, Contradiction)> {
        let nv = g.len();
        let n = nv + 1;
        assert!(n <= 64, "at most 63 vertices");
        let mut names = vec!["0".to_string()];
        names.extend(g.names().iter().cloned());
        let cells = n * n;
        let mut st = SearchState {
            n,
            names,
            parent: (0..cells as u16).collect(),
            dom: vec![0; cells],
            val: vec![UNSET; cells],
            members: (0..cells as u16).map(|c| vec![c]).collect(),
            trail: Vec::new(),
            queue: Vec::new(),
            free: Vec::new(),
            explain: opts.explain.then(Vec::new),
            counters: Counters::default(),
        };
        let dist = distance_matrix(g);
        let closed: Vec<BitSet> = (0..nv).map(|v| g.closed_neighbors(v)).collect();
        let elem = |vs: BitSet| -> u64 { vs.bits() << 1 };
        for i in 0..n {
            for j in i..n {
                let c = i * n + j;
                if i == 0 || (i != j && g.has_edge(i - 1, j - 1)) {
                    st.val[c] = 0;
                    st.dom[c] = 1;
                    continue;
                }
                let (x, y) = (i - 1, j - 1);
                let need = g.neighbors(x).union(g.neighbors(y));
                let ok: BitSet = (0..nv).filter(|&v| need.is_subset(closed[v])).collect();
                let mut d = elem(ok);
                if i == j {
                    let far = opts.distance3_squares && (0..nv).any(|z| dist.get(x, z) == Some(3));
                    if !far {
                        d |= 1;
                    }
                }
                st.dom[c] = d;
                st.free.push(c as u16);
            }
        }
        for &c in &st.free.clone() {
            if st.dom[c as usize] == 0 {
                let (i, j) = (c as usize / n, c as usize % n);
                let msg = format!("no admissible value for {}*{}", st.names[i], st.names[j]);
                return Err((st, Contradiction { chain: vec![msg] }));
            }
        }
        for &c in &st.free.clone() {
            if let Some(v) = BitSet::from_bits(st.dom[c as usize]).single() {
                st.set_value(c, v as u8);
            }
        }
        for i in 1..n {
            for j in i + 1..n {
                if g.has_edge(i - 1, j - 1) {
                    st.queue.push((i * n + j) as u16);
                }
            }
        }
        match st.run_queue() {
            Ok(()) => {
                st.trail.clear();
                Ok(st)
            }
            Err(c) => Err((st, c)),
        }
    }

    /// Number of elements, zero included.
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn element_names(&self) -> &[String] {
        &self.names
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Records human-readable deductions from now on.
    pub fn set_explain(&mut self, on: bool) {
        self.explain = on.then(Vec::new);
    }

    #[inline]
    pub(crate) fn cell(&self, i: usize, j: usize) -> u16 {
        if i <= j {
            (i * self.n + j) as u16
        } else {
            (j * self.n + i) as u16
        }
    }

    #[inline]
    fn find(&self, mut c: u16) -> u16 {
        while self.parent[c as usize] != c {
            c = self.parent[c as usize];
        }
        c
    }

    #[inline]
    fn value_of(&self, c: u16) -> Option<usize> {
        match self.val[self.find(c) as usize] {
            UNSET => None,
            v => Some(v as usize),
        }
    }

    /// The value of `i*j`, if determined.
    #[inline]
    pub fn value(&self, i: usize, j: usize) -> Option<usize> {
        self.value_of(self.cell(i, j))
    }

    /// Candidate values of `i*j` (a singleton once determined).
    #[inline]
    pub fn domain(&self, i: usize, j: usize) -> BitSet {
        let r = self.find(self.cell(i, j)) as usize;
        match self.val[r] {
            UNSET => BitSet::from_bits(self.dom[r]),
            v => BitSet::singleton(v as usize),
        }
    }

    #[inline]
    fn dom_bits(&self, c: u16) -> u64 {
        let r = self.find(c) as usize;
        match self.val[r] {
            UNSET => self.dom[r],
            v => 1u64 << v,
        }
    }

    pub fn unassigned_count(&self) -> usize {
        self.free.iter().filter(|&&c| self.val[self.find(c) as usize] == UNSET).count()
    }

    pub fn is_complete(&self) -> bool {
        self.unassigned_count() == 0
    }

    pub(crate) fn trail_len(&self) -> usize {
        self.trail.len()
    }

    fn cell_name(&self, c: u16) -> String {
        let (i, j) = (c as usize / self.n, c as usize % self.n);
        format!("{}*{}", self.names[i], self.names[j])
    }

    fn dom_names(&self, d: u64) -> String {
        let v: Vec<&str> = BitSet::from_bits(d).iter().map(|i| self.names[i].as_str()).collect();
        format!("{{{}}}", v.join(", "))
    }

    fn why_text(&self, why: Why) -> String {
        match why {
            Why::Decision => "decision".to_string(),
            Why::Triple(p, q, r) => {
                let (p, q, r) = (&self.names[p as usize], &self.names[q as usize], &self.names[r as usize]);
                format!("({p}*{q})*{r} = {p}*({q}*{r})")
            }
        }
    }

    fn note(&mut self, msg: impl FnOnce(&Self) -> String) {
        if self.explain.is_some() {
            let m = msg(self);
            if let Some(log) = self.explain.as_mut() {
                log.push(m);
            }
        }
    }

    fn conflict(&mut self, msg: impl FnOnce(&Self) -> String) -> Contradiction {
        self.queue.clear();
        match self.explain.as_mut() {
            Some(log) => {
                let mut chain = std::mem::take(log);
                let last = {
                    let s: &Self = self;
                    msg(s)
                };
                chain.push(format!("contradiction: {last}"));
                Contradiction { chain }
            }
            None => Contradiction { chain: Vec::new() },
        }
    }

    fn set_value(&mut self, root: u16, v: u8) {
        self.trail.push(Undo::Val(root));
        self.val[root as usize] = v;
        let members = std::mem::take(&mut self.members[root as usize]);
        self.queue.extend_from_slice(&members);
        self.members[root as usize] = members;
    }

    fn assign_root(&mut self, root: u16, v: usize, why: Why) -> Result<(), Contradiction> {
        let d = self.dom[root as usize];
        if d & (1u64 << v) == 0 {
            return Err(self.conflict(|s| {
                format!(
                    "{} cannot be {} (domain {}) [{}]",
                    s.cell_name(root),
                    s.names[v],
                    s.dom_names(d),
                    s.why_text(why)
                )
            }));
        }
        self.note(|s| format!("{} = {}  [{}]", s.cell_name(root), s.names[v], s.why_text(why)));
        self.set_value(root, v as u8);
        Ok(())
    }

    fn equate(&mut self, x: u16, y: u16, why: Why) -> Result<(), Contradiction> {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return Ok(());
        }
        let (vx, vy) = (self.val[rx as usize], self.val[ry as usize]);
        match (vx, vy) {
            (UNSET, UNSET) => {
                let nd = self.dom[rx as usize] & self.dom[ry as usize];
                if nd == 0 {
                    return Err(self.conflict(|s| {
                        format!(
                            "{} and {} must be equal but share no value [{}]",
                            s.cell_name(x),
                            s.cell_name(y),
                            s.why_text(why)
                        )
                    }));
                }
                let (root, child) = if self.members[rx as usize].len() >= self.members[ry as usize].len() {
                    (rx, ry)
                } else {
                    (ry, rx)
                };
                let old_dom = self.dom[root as usize];
                let old_len = self.members[root as usize].len() as u32;
                self.trail.push(Undo::Union { child, root, old_dom, old_len });
                self.parent[child as usize] = root;
                self.dom[root as usize] = nd;
                let moved = std::mem::take(&mut self.members[child as usize]);
                self.members[root as usize].extend_from_slice(&moved);
                self.members[child as usize] = moved;
                if let Some(v) = BitSet::from_bits(nd).single() {
                    self.note(|s| {
                        format!("{} = {} = {}  [{}]", s.cell_name(x), s.cell_name(y), s.names[v], s.why_text(why))
                    });
                    self.set_value(root, v as u8);
                }
                Ok(())
            }
            (v, UNSET) => {
                self.note(|s| format!("{} = {}  [{}]", s.cell_name(y), s.cell_name(x), s.why_text(why)));
                self.assign_root(ry, v as usize, why)
            }
            (UNSET, v) => {
                self.note(|s| format!("{} = {}  [{}]", s.cell_name(x), s.cell_name(y), s.why_text(why)));
                self.assign_root(rx, v as usize, why)
            }
            (a, b) if a == b => Ok(()),
            (a, b) => Err(self.conflict(|s| {
                format!(
                    "{} = {} but {} = {} [{}]",
                    s.cell_name(x),
                    s.names[a as usize],
                    s.cell_name(y),
                    s.names[b as usize],
                    s.why_text(why)
                )
            })),
        }
    }

    fn restrict(&mut self, c: u16, allowed: u64, why: Why) -> Result<(), Contradiction> {
        let r = self.find(c);
        let v = self.val[r as usize];
        if v != UNSET {
            if allowed & (1u64 << v) == 0 {
                return Err(self.conflict(|s| {
                    format!(
                        "{} = {} but only {} fits [{}]",
                        s.cell_name(c),
                        s.names[v as usize],
                        s.dom_names(allowed),
                        s.why_text(why)
                    )
                }));
            }
            return Ok(());
        }
        let d = self.dom[r as usize];
        let nd = d & allowed;
        if nd == d {
            return Ok(());
        }
        if nd == 0 {
            return Err(self.conflict(|s| {
                format!(
                    "{} has no value left: domain {} but only {} fits [{}]",
                    s.cell_name(c),
                    s.dom_names(d),
                    s.dom_names(allowed),
                    s.why_text(why)
                )
            }));
        }
        self.trail.push(Undo::Dom(r, d));
        self.dom[r as usize] = nd;
        if let Some(v) = BitSet::from_bits(nd).single() {
            self.note(|s| format!("{} = {}  [{}]", s.cell_name(c), s.names[v], s.why_text(why)));
            self.set_value(r, v as u8);
        } else {
            self.note(|s| format!("{} in {}  [{}]", s.cell_name(c), s.dom_names(nd), s.why_text(why)));
        }
        Ok(())
    }

    /// Values `v` for which `p*v` may still equal `k`.
    #[inline]
    fn compatible(&self, p: usize, k: usize) -> u64 {
        let mut out = 0u64;
        for v in 0..self.n {
            if self.dom_bits(self.cell(p, v)) & (1u64 << k) != 0 {
                out |= 1u64 << v;
            }
        }
        out
    }

    fn process(&mut self, c: u16) -> Result<(), Contradiction> {
        self.counters.propagations += 1;
        let n = self.n;
        let (x, y) = (c as usize / n, c as usize % n);
        let u = match self.value_of(c) {
            Some(u) => u,
            None => return Ok(()),
        };
        let orients: &[(usize, usize)] = if x == y { &[(x, y)][..] } else { &[(x, y), (y, x)][..] };
        let orients = orients.to_vec();
        for &(p, q) in &orients {
            // This cell as A = p*q.
            for r in 1..n {
                let cc = self.cell(q, r);
                let why = Why::Triple(p as u8, q as u8, r as u8);
                if let Some(t) = self.value_of(cc) {
                    self.equate(self.cell(u, r), self.cell(p, t), why)?;
                } else if let Some(k) = self.value_of(self.cell(u, r)) {
                    let allowed = self.compatible(p, k);
                    self.restrict(cc, allowed, why)?;
                }
            }
            // This cell as C = q'*r' with q' = p, r' = q.
            for p2 in 1..n {
                let a = self.cell(p2, p);
                let why = Why::Triple(p2 as u8, p as u8, q as u8);
                if let Some(s) = self.value_of(a) {
                    self.equate(self.cell(s, q), self.cell(p2, u), why)?;
                } else if let Some(k) = self.value_of(self.cell(p2, u)) {
                    let allowed = self.compatible(q, k);
                    self.restrict(a, allowed, why)?;
                }
            }
        }
        // This cell as an outer product B = (p*q)*r or D = p*(q*r).
        for &(s, r) in &orients {
            for i in 1..n {
                for j in i..n {
                    if self.value(i, j) != Some(s) {
                        continue;
                    }
                    let ij: &[(usize, usize)] = if i == j { &[(i, j)][..] } else { &[(i, j), (j, i)][..] };
                    for &(p, q) in ij {
                        let cc = self.cell(q, r);
                        if self.value_of(cc).is_none() {
                            let allowed = self.compatible(p, u);
                            self.restrict(cc, allowed, Why::Triple(p as u8, q as u8, r as u8))?;
                        }
                        let a = self.cell(r, p);
                        if self.value_of(a).is_none() {
                            // Symmetric reading: D = r*(p*q) with the
                            // inner cell r*p unknown.
                            let allowed = self.compatible(q, u);
                            self.restrict(a, allowed, Why::Triple(r as u8, p as u8, q as u8))?;
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn run_queue(&mut self) -> Result<(), Contradiction> {
        while let Some(c) = self.queue.pop() {
            self.process(c)?;
        }
        Ok(())
    }

    /// Rolls back to an earlier trail length.
    pub(crate) fn undo_to(&mut self, mark: usize) {
        self.queue.clear();
        while self.trail.len() > mark {
            match self.trail.pop().expect("trail entry") {
                Undo::Dom(r, d) => self.dom[r as usize] = d,
                Undo::Val(r) => self.val[r as usize] = UNSET,
                Undo::Union { child, root, old_dom, old_len } => {
                    self.members[root as usize].truncate(old_len as usize);
                    self.dom[root as usize] = old_dom;
                    self.parent[child as usize] = child;
                }
            }
        }
    }

    /// Decides the class of a cell and propagates; the caller undoes.
    pub(crate) fn decide(&mut self, c: u16, v: usize) -> Result<(), Contradiction> {
        let r = self.find(c);
        if self.val[r as usize] != UNSET {
            return if self.val[r as usize] as usize == v {
                Ok(())
            } else {
                Err(self.conflict(|s| format!("{} already {}", s.cell_name(c), s.names[v])))
            };
        }
        self.assign_root(r, v, Why::Decision)?;
        self.run_queue()
    }

    /// Sets `i*j = v` and propagates to a fixpoint.
    ///
    /// On contradiction the state is restored to what it was before the
    /// call. Setting an already determined cell to its value is a no-op.
    pub fn propagate(&mut self, i: usize, j: usize, v: usize) -> Result<(), Contradiction> {
        let mark = self.trail.len();
        if let Some(log) = self.explain.as_mut() {
            log.clear();
        }
        let c = self.cell(i, j);
        let out = self.decide(c, v);
        if out.is_err() {
            self.undo_to(mark);
        }
        out
    }

    /// [`SearchState::propagate`] by element names.
    pub fn propagate_named(&mut self, x: &str, y: &str, v: &str) -> Result<(), Contradiction> {
        let idx = |n: &str| self.element(n).unwrap_or_else(|| panic!("unknown element `{n}`"));
        let (i, j, k) = (idx(x), idx(y), idx(v));
        self.propagate(i, j, k)
    }

    /// Deductions recorded since the last `propagate` call.
    pub fn explanation(&self) -> &[String] {
        self.explain.as_deref().unwrap_or(&[])
    }

    /// Unassigned class with fewest candidates, ties broken by the
    /// lexicographically first cell.
    pub(crate) fn choose(&self) -> Option<(u16, u64)> {
        let mut best: Option<(u16, u64, u32)> = None;
        for &c in &self.free {
            let r = self.find(c);
            if self.val[r as usize] != UNSET {
                continue;
            }
            let d = self.dom[r as usize];
            let k = d.count_ones();
            if best.map_or(true, |(_, _, bk)| k < bk) {
                best = Some((c, d, k));
                if k <= 2 {
                    break;
                }
            }
        }
        best.map(|(c, d, _)| (c, d))
    }

    /// The completed table, when every cell is determined.
    pub fn to_table(&self) -> Option<CayleyTable> {
        let n = self.n;
        let mut rows = vec![vec![0usize; n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.value(i, j)?;
            }
        }
        CayleyTable::new(self.names.clone(), rows).ok()
    }

    /// True when every cell's current domain admits the table's value.
    pub fn admits(&self, table: &CayleyTable) -> bool {
        (0..self.n).all(|i| (i..self.n).all(|j| self.domain(i, j).contains(table.mul(i, j))))
    }

    /// Free cells in lexicographic order, as element pairs.
    pub fn free_cells(&self) -> Vec<(usize, usize)> {
        self.free.iter().map(|&c| (c as usize / self.n, c as usize % self.n)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::LabeledGraph;

    fn k2() -> LabeledGraph {
        LabeledGraph::from_edges(&["a", "b"], &[("a", "b")]).unwrap()
    }

    #[test]
    fn k2_domains() {
        let st = SearchState::init(&k2(), DomainOptions::default()).unwrap();
        assert_eq!(st.free_cells(), vec![(1, 1), (2, 2)]);
        for c in [1, 2] {
            assert!(st.domain(c, c).is_subset(BitSet::full(3)));
        }
        assert_eq!(st.value(1, 2), Some(0));
    }

    #[test]
    fn propagate_same_value_twice_is_noop() {
        let mut st = SearchState::init(&k2(), DomainOptions::default()).unwrap();
        st.propagate(1, 1, 1).unwrap();
        let len = st.trail_len();
        st.propagate(1, 1, 1).unwrap();
        assert_eq!(st.trail_len(), len);
        assert!(st.propagate(1, 1, 0).is_err());
        assert_eq!(st.value(1, 1), Some(1), "failed propagate leaves state intact");
    }
}
