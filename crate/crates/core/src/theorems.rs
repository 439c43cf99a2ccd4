//! Executable checks of the structural claims about a commutative
//! semigroup `S` whose zero-divisor graph has a cap vertex `s` over an edge
//! `a-b` and a vertex `z` at distance 3 from `s`.
//!
//! Every check derives its own preconditions from the table. A claim whose
//! preconditions fail is reported as vacuous rather than as holding.
//!
//! | id | statement |
//! |----|-----------|
//! | `square-nonzero` | `d(x,y) = 3` for some `y` implies `x*x != 0` |
//! | `end-set-closed` | `b*b != 0` implies `T_b ∪ {0}` is closed |
//! | `end-ideal` | `b` not an end vertex and `T_b` nonempty implies `{0,b}` is an ideal |
//! | `ab-ideal` | `{0,a,b}` is an ideal |
//! | `outside-caps-ends-ideal` | `S \ (C(a,b) ∪ T_a ∪ T_b)` is an ideal |
//! | `far-set-closed` | `L` is closed and `0 ∉ L*L` |
//! | `outside-caps-ideal` | `a, b` internal implies `S \ C(a,b)` is an ideal |
//! | `outside-caps-closed` | `a` internal, `b` not, `b*b != 0` implies `S \ C(a,b)` is closed |
//! | `single-ideals` | same hypotheses imply `{0,a}` and `{0,b}` are ideals |
//! | `cap-extension` | `a, b` internal, or `a` internal, `b*b != 0` and `|T_b| = 1`, implies `(S \ C(a,b)) ∪ {c}` is closed for some cap `c` |

use std::fmt;

use crate::algebra::{closure_witness, ideal_witness, CayleyTable};
use crate::bits::BitSet;
use crate::graph::{
    all_delta_witnesses, c_set, distance_matrix, is_end_vertex, is_internal, t_set, zero_divisor_graph, DeltaWitness,
    Distances, LabeledGraph,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimEntry {
    pub id: String,
    pub applicable: bool,
    /// Meaningful only when applicable.
    pub holds: bool,
    /// Witness, counterexample, or why the claim is vacuous.
    pub detail: String,
}

impl fmt::Display for ClaimEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CLAIM {} {} {}",
            self.id,
            if self.applicable { "applicable" } else { "vacuous" },
            if !self.applicable || self.holds { "holds" } else { "fails" }
        )?;
        if !self.detail.is_empty() {
            write!(f, " {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TheoremReport {
    pub entries: Vec<ClaimEntry>,
}

impl TheoremReport {
    /// Applicable claims that fail.
    pub fn failures(&self) -> Vec<&ClaimEntry> {
        self.entries.iter().filter(|e| e.applicable && !e.holds).collect()
    }

    pub fn applicable_count(&self) -> usize {
        self.entries.iter().filter(|e| e.applicable).count()
    }

    pub fn is_ok(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn extend(&mut self, other: TheoremReport) {
        self.entries.extend(other.entries);
    }

    pub fn to_text(&self) -> String {
        self.entries.iter().map(|e| format!("{e}\n")).collect()
    }
}

/// The table together with its graph and the vertex-to-element map.
struct Ctx<'a> {
    t: &'a CayleyTable,
    g: LabeledGraph,
    elem: Vec<usize>,
    dist: Distances,
}

impl<'a> Ctx<'a> {
    fn new(t: &'a CayleyTable) -> Option<Ctx<'a>> {
        let g = zero_divisor_graph(t).ok()?;
        let elem = g.names().iter().map(|n| t.index_of(n).expect("graph names come from the table")).collect();
        let dist = distance_matrix(&g);
        Some(Ctx { t, g, elem, dist })
    }

    fn el(&self, vs: BitSet) -> BitSet {
        vs.iter().map(|v| self.elem[v]).collect()
    }

    fn vname(&self, v: usize) -> &str {
        self.g.name(v)
    }

    fn square(&self, v: usize) -> usize {
        let e = self.elem[v];
        self.t.mul(e, e)
    }

    fn set_text(&self, s: BitSet) -> String {
        format!("{{{}}}", self.t.names_of(s).join(","))
    }

    fn ideal(&self, id: String, set: BitSet) -> ClaimEntry {
        match ideal_witness(self.t, set) {
            None => holds(id, format!("{} is an ideal", self.set_text(set))),
            Some((x, y, p)) => fails(id, self.product_text(x, y, p)),
        }
    }

    fn closed(&self, id: String, set: BitSet) -> ClaimEntry {
        match closure_witness(self.t, set) {
            None => holds(id, format!("{} is closed", self.set_text(set))),
            Some((x, y, p)) => fails(id, self.product_text(x, y, p)),
        }
    }

    fn product_text(&self, x: usize, y: usize, p: usize) -> String {
        format!("{}*{}={}", self.t.name(x), self.t.name(y), self.t.name(p))
    }

    fn witness_tag(&self, w: &DeltaWitness) -> String {
        format!("[a={},b={},s={},z={}]", self.vname(w.a), self.vname(w.b), self.vname(w.s), self.vname(w.z))
    }

    /// Every nonzero element is a vertex of the graph.
    fn all_zero_divisors(&self) -> bool {
        self.elem.len() + 1 == self.t.order()
    }
}

fn holds(id: String, detail: String) -> ClaimEntry {
    ClaimEntry { id, applicable: true, holds: true, detail }
}

fn fails(id: String, detail: String) -> ClaimEntry {
    ClaimEntry { id, applicable: true, holds: false, detail }
}

fn vacuous(id: String, detail: impl Into<String>) -> ClaimEntry {
    ClaimEntry { id, applicable: false, holds: true, detail: detail.into() }
}

fn invalid(id: &str) -> TheoremReport {
    TheoremReport { entries: vec![vacuous(id.to_string(), "table is not a commutative semigroup with zero")] }
}

fn squares(c: &Ctx) -> TheoremReport {
    let mut r = TheoremReport::default();
    for x in 0..c.g.len() {
        let id = format!("square-nonzero[{}]", c.vname(x));
        let far = c.dist.sphere(x, 3);
        let Some(y) = far.first() else {
            continue;
        };
        let sq = c.square(x);
        let detail = format!("d({},{})=3, {}^2={}", c.vname(x), c.vname(y), c.vname(x), c.t.name(sq));
        r.entries.push(if sq != 0 { holds(id, detail) } else { fails(id, detail) });
    }
    if r.entries.is_empty() {
        r.entries.push(vacuous("square-nonzero".into(), "no pair at distance 3"));
    }
    r
}

/// For each vertex `x` with a vertex at distance 3, `x*x != 0`.
pub fn check_distance3_squares(table: &CayleyTable) -> TheoremReport {
    match Ctx::new(table) {
        Some(c) => squares(&c),
        None => invalid("square-nonzero"),
    }
}

fn end_sets(c: &Ctx, b: usize) -> TheoremReport {
    let name = c.vname(b);
    let tb = t_set(&c.g, b);
    let tb_el = c.el(tb).with(0);
    let sq = c.square(b);
    let first = format!("end-set-closed[{name}]");
    let second = format!("end-ideal[{name}]");
    let mut r = TheoremReport::default();
    r.entries.push(if sq == 0 { vacuous(first, format!("{name}^2=0")) } else { c.closed(first, tb_el) });
    r.entries.push(if is_end_vertex(&c.g, b) {
        vacuous(second, format!("{name} is an end vertex"))
    } else if tb.is_empty() {
        vacuous(second, format!("no end vertex on {name}"))
    } else {
        c.ideal(second, BitSet::singleton(0).with(c.elem[b]))
    });
    r
}

/// For the vertex named `b`: `T_b ∪ {0}` closed when `b*b != 0`, and
/// `{0,b}` an ideal when `b` has an end vertex but is not one.
pub fn check_end_vertex_sets(table: &CayleyTable, b: &str) -> TheoremReport {
    let Some(c) = Ctx::new(table) else {
        return invalid("end-set-closed");
    };
    match c.g.vertex(b) {
        Ok(v) => end_sets(&c, v),
        Err(_) => {
            TheoremReport { entries: vec![vacuous(format!("end-set-closed[{b}]"), format!("{b} is not a vertex"))] }
        }
    }
}

fn no_witness(c: &Ctx, w: &DeltaWitness, id: &str) -> Option<TheoremReport> {
    if !c.all_zero_divisors() {
        return Some(TheoremReport { entries: vec![vacuous(id.into(), "some nonzero element is not a zero-divisor")] });
    }
    match w.check(&c.g) {
        Ok(()) => None,
        Err(e) => Some(TheoremReport { entries: vec![vacuous(id.into(), e.to_string())] }),
    }
}

struct Around {
    caps: BitSet,
    ta: BitSet,
    tb: BitSet,
    l: BitSet,
    a_internal: bool,
    b_internal: bool,
    b_square: usize,
}

fn around(c: &Ctx, w: &DeltaWitness) -> Around {
    Around {
        caps: c_set(&c.g, w.a, w.b).expect("witness edge"),
        ta: t_set(&c.g, w.a),
        tb: t_set(&c.g, w.b),
        l: c.dist.sphere(w.s, 3),
        a_internal: is_internal(&c.g, w.a),
        b_internal: is_internal(&c.g, w.b),
        b_square: c.square(w.b),
    }
}

fn cap_structure(c: &Ctx, w: &DeltaWitness) -> TheoremReport {
    let tag = c.witness_tag(w);
    if let Some(r) = no_witness(c, w, &format!("ab-ideal{tag}")) {
        return r;
    }
    let x = around(c, w);
    let all = c.t.all();
    let mut r = TheoremReport::default();
    let ab = BitSet::singleton(0).with(c.elem[w.a]).with(c.elem[w.b]);
    r.entries.push(c.ideal(format!("ab-ideal{tag}"), ab));
    let outside = all.difference(c.el(x.caps.union(x.ta).union(x.tb)));
    r.entries.push(c.ideal(format!("outside-caps-ends-ideal{tag}"), outside));
    r.entries.push(c.closed(format!("far-set-closed{tag}"), c.el(x.l)));
    let no_caps = all.difference(c.el(x.caps));
    let id1 = format!("outside-caps-ideal{tag}");
    r.entries.push(if x.a_internal && x.b_internal {
        c.ideal(id1, no_caps)
    } else {
        vacuous(id1, "a or b is not internal")
    });
    let id2 = format!("outside-caps-closed{tag}");
    r.entries.push(if x.a_internal && !x.b_internal && x.b_square != 0 {
        c.closed(id2, no_caps)
    } else {
        vacuous(id2, "needs a internal, b not internal, b^2 != 0")
    });
    r
}

/// Ideal and closure claims around the witness `w` (vertex indices of the
/// table's zero-divisor graph).
pub fn check_cap_structure(table: &CayleyTable, w: &DeltaWitness) -> TheoremReport {
    match Ctx::new(table) {
        Some(c) => cap_structure(&c, w),
        None => invalid("ab-ideal"),
    }
}

fn single_ideals(c: &Ctx, w: &DeltaWitness) -> TheoremReport {
    let tag = c.witness_tag(w);
    let id = format!("single-ideals{tag}");
    if let Some(r) = no_witness(c, w, &id) {
        return r;
    }
    let x = around(c, w);
    if !(x.a_internal && !x.b_internal && x.b_square != 0) {
        return TheoremReport { entries: vec![vacuous(id, "needs a internal, b not internal, b^2 != 0")] };
    }
    let za = BitSet::singleton(0).with(c.elem[w.a]);
    let zb = BitSet::singleton(0).with(c.elem[w.b]);
    let ea = c.ideal(id.clone(), za);
    let eb = c.ideal(id.clone(), zb);
    let entry = match (ea.holds, eb.holds) {
        (true, true) => holds(id, format!("{} and {} are ideals", c.set_text(za), c.set_text(zb))),
        (false, _) => ea,
        (_, false) => eb,
    };
    TheoremReport { entries: vec![entry] }
}

/// `{0,a}` and `{0,b}` are ideals when `a` is internal, `b` is not and
/// `b*b != 0`.
pub fn check_single_ideals(table: &CayleyTable, w: &DeltaWitness) -> TheoremReport {
    match Ctx::new(table) {
        Some(c) => single_ideals(&c, w),
        None => invalid("single-ideals"),
    }
}

fn cap_extension(c: &Ctx, w: &DeltaWitness) -> TheoremReport {
    let tag = c.witness_tag(w);
    let id = format!("cap-extension{tag}");
    if let Some(r) = no_witness(c, w, &id) {
        return r;
    }
    let x = around(c, w);
    let both = x.a_internal && x.b_internal;
    let one_end = x.a_internal && x.b_square != 0 && x.tb.len() == 1;
    if !(both || one_end) {
        return TheoremReport {
            entries: vec![vacuous(id, "needs a, b internal, or a internal, b^2 != 0 and one end vertex on b")],
        };
    }
    let base = c.t.all().difference(c.el(x.caps));
    let found = x.caps.iter().find(|&cap| closure_witness(c.t, base.with(c.elem[cap])).is_none());
    let entry = match found {
        Some(cap) => holds(id, format!("c={}", c.vname(cap))),
        None => fails(id, format!("no cap c in {} keeps the complement closed", c.set_text(c.el(x.caps)))),
    };
    TheoremReport { entries: vec![entry] }
}

/// Some cap `c` with `(S \ C(a,b)) ∪ {c}` closed, under either hypothesis.
pub fn check_cap_extension(table: &CayleyTable, w: &DeltaWitness) -> TheoremReport {
    match Ctx::new(table) {
        Some(c) => cap_extension(&c, w),
        None => invalid("cap-extension"),
    }
}

/// Every check on every vertex and every witness, in a stable order.
pub fn run_all(table: &CayleyTable) -> TheoremReport {
    let Some(c) = Ctx::new(table) else {
        return invalid("all");
    };
    let mut r = squares(&c);
    for b in 0..c.g.len() {
        r.extend(end_sets(&c, b));
    }
    let ws = all_delta_witnesses(&c.g);
    if ws.is_empty() {
        for id in ["ab-ideal", "single-ideals", "cap-extension"] {
            r.entries.push(vacuous(id.into(), "graph has no cap witness"));
        }
    }
    for w in &ws {
        r.extend(cap_structure(&c, w));
        r.extend(single_ideals(&c, w));
        r.extend(cap_extension(&c, w));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::is_subsemigroup;
    use crate::families::{generate_table, FamilySpec, FIG3_TABLE_CSV, FIG5_TABLE_CSV, KN2_TABLE_CSV};
    use crate::graph::find_delta_witness;

    fn table(csv: &str) -> CayleyTable {
        CayleyTable::parse_csv(csv).unwrap()
    }

    fn entry<'a>(r: &'a TheoremReport, id: &str) -> &'a ClaimEntry {
        r.entries.iter().find(|e| e.id == id).unwrap_or_else(|| panic!("no claim {id}"))
    }

    #[test]
    fn distance3_square_in_cap_table() {
        let t = table(FIG3_TABLE_CSV);
        let r = check_distance3_squares(&t);
        let e = entry(&r, "square-nonzero[y1]");
        assert!(e.applicable && e.holds);
        assert!(e.detail.contains("y1^2=d"), "{}", e.detail);
    }

    #[test]
    fn distance3_square_in_bipartite_table() {
        let r = check_distance3_squares(&table(FIG5_TABLE_CSV));
        let e = entry(&r, "square-nonzero[c1]");
        assert!(e.holds && e.detail.contains("c1^2=x1"), "{}", e.detail);
    }

    #[test]
    fn small_diameter_is_vacuous() {
        let t = table("*,0,a,b\n0,0,0,0\na,0,a,0\nb,0,0,b\n");
        let r = check_distance3_squares(&t);
        assert_eq!(r.entries.len(), 1);
        assert!(!r.entries[0].applicable);
        assert_eq!(r.applicable_count(), 0);
    }

    #[test]
    fn end_sets_on_reference_tables() {
        let t3 = table(FIG3_TABLE_CSV);
        let r = check_end_vertex_sets(&t3, "a");
        let e = entry(&r, "end-set-closed[a]");
        assert!(e.applicable && e.holds);
        let t6 = table(KN2_TABLE_CSV);
        let r = check_end_vertex_sets(&t6, "x1");
        assert!(!entry(&r, "end-set-closed[x1]").applicable);
        let e = entry(&r, "end-ideal[x1]");
        assert!(e.applicable && e.holds);
        let r = check_end_vertex_sets(&t6, "y1");
        assert!(!entry(&r, "end-ideal[y1]").applicable);
    }

    #[test]
    fn cap_structure_on_reference_tables() {
        let t3 = table(FIG3_TABLE_CSV);
        let g = zero_divisor_graph(&t3).unwrap();
        let w = find_delta_witness(&g).unwrap();
        let r = check_cap_structure(&t3, &w);
        assert!(r.is_ok(), "{}", r.to_text());
        assert!(r.applicable_count() >= 3);

        let t5 = table(FIG5_TABLE_CSV);
        let g = zero_divisor_graph(&t5).unwrap();
        let v = |n| g.vertex(n).unwrap();
        let w = DeltaWitness { a: v("a"), b: v("b"), s: v("c1"), z: v("y1") };
        let r = check_cap_structure(&t5, &w);
        let e = entry(&r, "far-set-closed[a=a,b=b,s=c1,z=y1]");
        assert!(e.applicable && e.holds && e.detail.contains("{y1,y2}"), "{}", e.detail);
    }

    #[test]
    fn no_witness_is_vacuous() {
        let t6 = table(KN2_TABLE_CSV);
        let r = run_all(&t6);
        assert!(r.is_ok());
        for id in ["ab-ideal", "single-ideals", "cap-extension"] {
            assert!(!entry(&r, id).applicable);
        }
    }

    #[test]
    fn single_ideals_preconditions() {
        // b has end vertices and b^2 = 0 in the bipartite table.
        let t = generate_table(&FamilySpec::Fig5 { m: 2, n: 2, v: 2 }).unwrap();
        let g = zero_divisor_graph(&t).unwrap();
        let v = |n| g.vertex(n).unwrap();
        let w = DeltaWitness { a: v("a"), b: v("b"), s: v("c1"), z: v("y1") };
        let r = check_single_ideals(&t, &w);
        assert!(!r.entries[0].applicable);
    }

    #[test]
    fn cap_extension_finds_a_cap() {
        let t5 = generate_table(&FamilySpec::Fig5 { m: 2, n: 2, v: 0 }).unwrap();
        let g = zero_divisor_graph(&t5).unwrap();
        let v = |n| g.vertex(n).unwrap();
        let w = DeltaWitness { a: v("a"), b: v("b"), s: v("c1"), z: v("y1") };
        let r = check_cap_extension(&t5, &w);
        assert!(r.entries[0].applicable && r.entries[0].holds);

        let t3 = table(FIG3_TABLE_CSV);
        let g = zero_divisor_graph(&t3).unwrap();
        let v = |n| g.vertex(n).unwrap();
        let w = DeltaWitness { a: v("b"), b: v("a"), s: v("y1"), z: v("v1") };
        let r = check_cap_extension(&t3, &w);
        assert!(r.entries[0].applicable, "{}", r.to_text());
        assert!(r.entries[0].holds);
    }

    #[test]
    fn trivial_table_is_all_vacuous() {
        let r = run_all(&CayleyTable::trivial());
        assert_eq!(r.applicable_count(), 0);
        assert!(r.is_ok());
    }

    #[test]
    fn ideal_claims_imply_closure() {
        for csv in [FIG3_TABLE_CSV, FIG5_TABLE_CSV] {
            let t = table(csv);
            let c = Ctx::new(&t).unwrap();
            for w in all_delta_witnesses(&c.g) {
                let x = around(&c, &w);
                let outside = t.all().difference(c.el(x.caps.union(x.ta).union(x.tb)));
                assert!(is_subsemigroup(&t, outside));
            }
        }
    }

    #[test]
    fn serialization_format() {
        let e = vacuous("x".into(), "why");
        assert_eq!(e.to_string(), "CLAIM x vacuous holds why");
        let e = fails("y".into(), "a*b=c".into());
        assert_eq!(e.to_string(), "CLAIM y applicable fails a*b=c");
    }

    #[test]
    fn reference_tables_pass() {
        use crate::families::{FIG4_TABLE_CSV, KN2_CAPS_TABLE_CSV};
        for csv in [FIG3_TABLE_CSV, FIG4_TABLE_CSV, FIG5_TABLE_CSV, KN2_TABLE_CSV, KN2_CAPS_TABLE_CSV] {
            let r = run_all(&table(csv));
            assert!(r.is_ok(), "{}", r.to_text());
        }
    }
}
