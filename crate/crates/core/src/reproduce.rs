//! The acceptance suite: golden tables, family sweeps, the realizability
//! verdicts, uniqueness, oracle equivalence and corpus-wide claim checks.
//!
//! Every run returns one [`CriterionOutcome`] per criterion, in order. Time
//! limits are part of each verdict.

use std::fmt;
use std::time::{Duration, Instant};

use crate::algebra::{validate, CayleyTable};
use crate::error::Error;
use crate::families::{
    add_cap, add_edge, add_end, generate_graph, generate_table, sweep_specs, FamilySpec, FIG3_TABLE_CSV,
    FIG4_TABLE_CSV, FIG5_TABLE_CSV, KN2_CAPS_TABLE_CSV, KN2_TABLE_CSV,
};
use crate::graph::{automorphisms, is_isomorphic, necessary_conditions, zero_divisor_graph, LabeledGraph};
use crate::oracle::{brute_force_realizations, connected_graphs};
use crate::search::{enumerate, realize, SearchConfig, Tag};
use crate::theorems::run_all;

pub const GOLDEN_LIMIT: Duration = Duration::from_secs(1);
pub const SWEEP_LIMIT: Duration = Duration::from_secs(10);
pub const SWEEP_MAX: usize = 3;
pub const END_AND_CAP_LIMIT: Duration = Duration::from_secs(5 * 60);
pub const END_CAP_FAMILY_LIMIT: Duration = Duration::from_secs(30 * 60);
pub const END_CAP_FAMILY_MAX: usize = 2;
pub const BIPARTITE_REMARK_LIMIT: Duration = Duration::from_secs(10 * 60);
pub const COMPLETE_CAPS_LIMIT: Duration = Duration::from_secs(10 * 60);
pub const ORACLE_LIMIT: Duration = Duration::from_secs(2 * 60);
pub const ORACLE_MAX_VERTICES: usize = 4;

#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub number: usize,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {}: {} [{:.3}s] {}",
            self.number,
            if self.pass { "PASS" } else { "FAIL" },
            self.title,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

/// Tables collected along the way for the corpus-wide checks.
#[derive(Default)]
pub struct Corpus {
    pub tables: Vec<(String, CayleyTable)>,
}

impl Corpus {
    fn add(&mut self, name: impl Into<String>, t: CayleyTable) {
        self.tables.push((name.into(), t));
    }
}

fn outcome(
    number: usize,
    title: &'static str,
    start: Instant,
    limit: Option<Duration>,
    ok: bool,
    mut detail: String,
) -> CriterionOutcome {
    let elapsed = start.elapsed();
    let in_time = limit.map_or(true, |l| elapsed <= l);
    if !in_time {
        detail += &format!("; exceeded time limit {:?}", limit.unwrap_or_default());
    }
    CriterionOutcome { number, title, pass: ok && in_time, detail, elapsed }
}

/// Reference tables with the parameters that generate their graphs.
pub fn golden_cases() -> Vec<(&'static str, FamilySpec, &'static str)> {
    vec![
        ("fig3(2,2,1,2)", FamilySpec::Fig3 { m: 2, n: 2, u: 1, v: 2 }, FIG3_TABLE_CSV),
        ("fig4(2,2,0,2)", FamilySpec::Fig4 { caps: 2, u: 2, v: 0, w: 2 }, FIG4_TABLE_CSV),
        ("fig5(2,2,2)", FamilySpec::Fig5 { m: 2, n: 2, v: 2 }, FIG5_TABLE_CSV),
        ("kn2(4)", FamilySpec::kn2(4), KN2_TABLE_CSV),
        ("kn2(4)+2 caps", FamilySpec::kn2_caps(4, 2, "x1", "x2"), KN2_CAPS_TABLE_CSV),
    ]
}

pub fn golden_tables(corpus: &mut Corpus) -> CriterionOutcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for (name, spec, csv) in golden_cases() {
        let check = || -> Result<CayleyTable, String> {
            let t = CayleyTable::parse_csv(csv).map_err(|e| e.to_string())?;
            let report = validate(&t);
            if !report.is_valid() {
                return Err(format!("invalid table: {:?}", report.first_failure));
            }
            let h = zero_divisor_graph(&t).map_err(|e| e.to_string())?;
            let g = generate_graph(&spec).map_err(|e| e.to_string())?;
            match h.difference(&g) {
                None if h.labeled_eq(&g) => Ok(t),
                d => Err(format!("graph differs from {spec}: {d:?}")),
            }
        };
        match check() {
            Ok(t) => corpus.add(name, t),
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    let detail = if bad.is_empty() {
        "5 reference tables valid, graphs equal to their families".to_string()
    } else {
        bad.join("; ")
    };
    outcome(1, "reference tables", start, Some(GOLDEN_LIMIT), bad.is_empty(), detail)
}

pub fn extension_sweep(corpus: &mut Corpus) -> CriterionOutcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let (mut checked, mut unsupported) = (0, 0);
    for spec in sweep_specs(SWEEP_MAX) {
        let g = match generate_graph(&spec) {
            Ok(g) => g,
            Err(e) => {
                bad.push(format!("{spec}: {e}"));
                continue;
            }
        };
        match generate_table(&spec) {
            Ok(t) => {
                checked += 1;
                let ok = validate(&t).is_valid() && zero_divisor_graph(&t).map(|h| h.labeled_eq(&g)).unwrap_or(false);
                if ok {
                    corpus.add(spec.to_string(), t);
                } else {
                    bad.push(format!("{spec}: table invalid or graph mismatch"));
                }
            }
            Err(Error::NotRealizable(_)) if matches!(spec, FamilySpec::Fig4 { u, v, .. } if u > 0 && v > 0) => {
                unsupported += 1;
            }
            Err(e) => bad.push(format!("{spec}: {e}")),
        }
    }
    let detail = format!(
        "{checked} tables checked, {unsupported} end-vertex specs without a table skipped{}",
        if bad.is_empty() { String::new() } else { format!("; failures: {}", bad.join("; ")) }
    );
    outcome(2, "parametric extension sweep", start, Some(SWEEP_LIMIT), bad.is_empty(), detail)
}

fn fig3_base() -> LabeledGraph {
    generate_graph(&FamilySpec::Fig3 { m: 1, n: 1, u: 0, v: 1 }).expect("fig3 parameters in range")
}

/// The triangle-with-caps graph plus an end vertex on `b`.
pub fn end_on_cap_side_graph() -> LabeledGraph {
    add_end(&fig3_base(), "b").expect("b is a vertex")
}

struct Verdict {
    label: String,
    tag: Result<Tag, String>,
    expected: Tag,
    elapsed: Duration,
    limit: Duration,
}

impl Verdict {
    fn ok(&self) -> bool {
        self.tag.as_ref() == Ok(&self.expected) && self.elapsed <= self.limit
    }

    fn text(&self) -> String {
        match &self.tag {
            Ok(t) => format!("{}: {t} ({:.3}s)", self.label, self.elapsed.as_secs_f64()),
            Err(e) => format!("{}: error {e}", self.label),
        }
    }
}

fn verdict(
    corpus: &mut Corpus,
    label: &str,
    g: &LabeledGraph,
    cfg: &SearchConfig,
    expected: Tag,
    limit: Duration,
) -> Verdict {
    let start = Instant::now();
    let tag = realize(g, cfg).map_err(|e| e.to_string()).map(|o| {
        if let Some(w) = o.witness {
            corpus.add(format!("witness {label}"), w);
        }
        o.tag
    });
    Verdict { label: label.to_string(), tag, expected, elapsed: start.elapsed(), limit }
}

fn verdicts_outcome(
    number: usize,
    title: &'static str,
    start: Instant,
    limit: Option<Duration>,
    vs: &[Verdict],
) -> CriterionOutcome {
    let ok = vs.iter().all(Verdict::ok);
    let detail = vs.iter().map(Verdict::text).collect::<Vec<_>>().join(", ");
    outcome(number, title, start, limit, ok, detail)
}

pub fn end_and_cap_obstructions(corpus: &mut Corpus) -> CriterionOutcome {
    let start = Instant::now();
    let cfg = SearchConfig::default();
    let base = fig3_base();
    let cap = add_cap(&base, "b", "d").expect("b d adjacent");
    let vs = [
        verdict(corpus, "fig3(1,1,0,1)+end@b", &end_on_cap_side_graph(), &cfg, Tag::Unrealizable, END_AND_CAP_LIMIT),
        verdict(corpus, "fig3(1,1,0,1)+cap@b,d", &cap, &cfg, Tag::Unrealizable, END_AND_CAP_LIMIT),
    ];
    verdicts_outcome(3, "end vertex and cap obstructions", start, None, &vs)
}

pub fn end_cap_family(corpus: &mut Corpus) -> CriterionOutcome {
    let start = Instant::now();
    let cfg = SearchConfig { symmetry: Some(true), distance3_pruning: true, ..SearchConfig::default() };
    let mut bad = Vec::new();
    let (mut realized, mut refused) = (0, 0);
    for caps in 1..=END_CAP_FAMILY_MAX {
        for u in 0..=END_CAP_FAMILY_MAX {
            for v in 0..=END_CAP_FAMILY_MAX {
                for w in 1..=END_CAP_FAMILY_MAX {
                    let spec = FamilySpec::Fig4 { caps, u, v, w };
                    let g = generate_graph(&spec).expect("fig4 parameters in range");
                    let expected = if u == 0 || v == 0 { Tag::Realized } else { Tag::Unrealizable };
                    let vd = verdict(corpus, &spec.to_string(), &g, &cfg, expected, END_CAP_FAMILY_LIMIT);
                    if vd.ok() {
                        if expected == Tag::Realized {
                            realized += 1;
                        } else {
                            refused += 1;
                        }
                    } else {
                        bad.push(vd.text());
                    }
                }
            }
        }
    }
    let detail = format!(
        "{realized} Realized with u=0 or v=0, {refused} Unrealizable with u,v>0{}",
        if bad.is_empty() { String::new() } else { format!("; wrong: {}", bad.join(", ")) }
    );
    outcome(4, "end vertices on a triangle with caps", start, Some(END_CAP_FAMILY_LIMIT), bad.is_empty(), detail)
}

pub fn bipartite_remarks(corpus: &mut Corpus) -> CriterionOutcome {
    let start = Instant::now();
    let cfg = SearchConfig::default();
    let l = BIPARTITE_REMARK_LIMIT;
    let f5 = generate_graph(&FamilySpec::Fig5 { m: 1, n: 1, v: 0 }).expect("fig5 parameters in range");
    let vs = [
        verdict(corpus, "fig5(1,1,0)", &f5, &cfg, Tag::Realized, l),
        verdict(corpus, "fig5(1,1,0)+end@a", &add_end(&f5, "a").expect("vertex"), &cfg, Tag::Unrealizable, l),
        verdict(corpus, "fig5(1,1,0)+end@x1", &add_end(&f5, "x1").expect("vertex"), &cfg, Tag::Unrealizable, l),
        verdict(
            corpus,
            "fig5(1,1,0)+edge x1-x2",
            &add_edge(&f5, "x1", "x2").expect("vertices"),
            &cfg,
            Tag::Unrealizable,
            l,
        ),
    ];
    let mut out = verdicts_outcome(5, "remarks on the bipartite cap family", start, None, &vs);
    if !vs[1].ok() {
        let f51 = generate_graph(&FamilySpec::Fig5 { m: 1, n: 1, v: 1 }).expect("fig5 parameters in range");
        let iso = is_isomorphic(&add_end(&f5, "a").expect("vertex"), &f51).unwrap_or(false);
        let with_v =
            verdict(corpus, "fig5(1,1,1)+end@a", &add_end(&f51, "a").expect("vertex"), &cfg, Tag::Unrealizable, l);
        out.detail +=
            &format!("; end@a with no end vertices on b is isomorphic to fig5(1,1,1): {iso}; {}", with_v.text());
    }
    out
}

pub fn complete_graph_caps(corpus: &mut Corpus) -> CriterionOutcome {
    let start = Instant::now();
    let cfg = SearchConfig::default();
    let l = COMPLETE_CAPS_LIMIT;
    let k = generate_graph(&FamilySpec::kn2(4)).expect("kn2 parameters in range");
    let two = generate_graph(&FamilySpec::kn2_caps(4, 2, "x1", "x2")).expect("kn2 parameters in range");
    let vs = [
        verdict(corpus, "kn2(4)+cap@a,b", &add_cap(&k, "a", "b").expect("edge"), &cfg, Tag::Unrealizable, l),
        verdict(corpus, "kn2(4)+cap@a,x1", &add_cap(&k, "a", "x1").expect("edge"), &cfg, Tag::Unrealizable, l),
        verdict(corpus, "kn2(4)+cap@x1,x2", &add_cap(&k, "x1", "x2").expect("edge"), &cfg, Tag::Realized, l),
        verdict(corpus, "kn2(4)+2 caps@x1,x2", &two, &cfg, Tag::Realized, l),
    ];
    verdicts_outcome(6, "caps on the complete graph with two pendants", start, Some(l), &vs)
}

/// Relabels a table by a permutation of the graph's vertices
/// (element `i+1` is vertex `i`).
fn permuted_rows(t: &CayleyTable, perm: &[usize]) -> Vec<Vec<usize>> {
    let n = t.order();
    let p = |e: usize| if e == 0 { 0 } else { perm[e - 1] + 1 };
    let mut inv = vec![0; n];
    for e in 0..n {
        inv[p(e)] = e;
    }
    (0..n).map(|i| (0..n).map(|j| p(t.mul(inv[i], inv[j]))).collect()).collect()
}

pub fn uniqueness(corpus: &mut Corpus) -> CriterionOutcome {
    let start = Instant::now();
    let g = generate_graph(&FamilySpec::kn2(4)).expect("kn2 parameters in range");
    let reference = CayleyTable::parse_csv(KN2_TABLE_CSV).expect("fixture parses");
    let cfg = SearchConfig { symmetry: Some(false), ..SearchConfig::default() };
    let e = match enumerate(&g, &cfg, None) {
        Ok(e) => e,
        Err(err) => {
            return outcome(
                7,
                "uniqueness on the complete graph with two pendants",
                start,
                None,
                false,
                err.to_string(),
            )
        }
    };
    for (i, t) in e.tables.iter().enumerate() {
        corpus.add(format!("kn2(4) realization {}", i + 1), t.clone());
    }
    let has_reference = e.tables.iter().any(|t| t.labeled_eq(&reference));
    let ok = e.exhaustive && e.tables.len() == 1 && has_reference;
    let mut detail = format!(
        "{} labeled table(s), exhaustive {}, reference table among them {}",
        e.tables.len(),
        e.exhaustive,
        has_reference
    );
    if e.tables.len() > 1 {
        let auts = automorphisms(&g).unwrap_or_default();
        let base = e.tables[0].rows();
        let one_orbit = e.tables.iter().all(|t| auts.iter().any(|p| permuted_rows(t, p) == base));
        detail += &format!(
            "; all related by graph automorphisms ({} automorphisms): {one_orbit}; unique only up to relabeling",
            auts.len()
        );
    }
    outcome(7, "uniqueness on the complete graph with two pendants", start, None, ok, detail)
}

pub fn oracle_equivalence(corpus: &mut Corpus) -> CriterionOutcome {
    let start = Instant::now();
    let cfg = SearchConfig { symmetry: Some(false), ..SearchConfig::default() };
    let mut bad = Vec::new();
    let (mut graphs, mut tables) = (0, 0);
    for n in 2..=ORACLE_MAX_VERTICES {
        for g in connected_graphs(n).expect("small n") {
            graphs += 1;
            let expected = brute_force_realizations(&g).expect("small graph");
            match enumerate(&g, &cfg, None) {
                Ok(e) => {
                    let mut got: Vec<_> = e.tables.iter().map(CayleyTable::rows).collect();
                    got.sort();
                    if !e.exhaustive || got != expected {
                        bad.push(format!("{:?}: search {} vs oracle {}", g.edges(), got.len(), expected.len()));
                    }
                    tables += got.len();
                    for (i, t) in e.tables.into_iter().enumerate() {
                        corpus.add(format!("oracle graph {graphs} realization {}", i + 1), t);
                    }
                }
                Err(err) => bad.push(err.to_string()),
            }
        }
    }
    let detail = format!(
        "{graphs} connected graphs on 2..={ORACLE_MAX_VERTICES} vertices, {tables} realizations{}",
        if bad.is_empty() { String::new() } else { format!("; mismatches: {}", bad.join("; ")) }
    );
    outcome(8, "oracle equivalence", start, Some(ORACLE_LIMIT), bad.is_empty(), detail)
}

pub fn claim_checks(corpus: &Corpus) -> CriterionOutcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut applicable = 0;
    for (name, t) in &corpus.tables {
        let r = run_all(t);
        applicable += r.applicable_count();
        for f in r.failures() {
            bad.push(format!("{name}: {f}"));
        }
    }
    let detail = format!(
        "{} tables, {applicable} applicable claims{}",
        corpus.tables.len(),
        if bad.is_empty() { String::new() } else { format!("; failures: {}", bad.join("; ")) }
    );
    outcome(9, "structural claims over the corpus", start, None, bad.is_empty(), detail)
}

pub fn prescreen(corpus: &Corpus) -> CriterionOutcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for (name, t) in &corpus.tables {
        match zero_divisor_graph(t) {
            Ok(g) if g.len() >= 2 => {
                if let Some(f) = necessary_conditions(&g).first_failed() {
                    bad.push(format!("{name}: {f}"));
                }
            }
            Ok(_) => {}
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    let remark = end_on_cap_side_graph();
    let remark_pass = necessary_conditions(&remark).all_pass();
    let unrealizable = matches!(realize(&remark, &SearchConfig::default()), Ok(o) if o.tag == Tag::Unrealizable);
    let ok = bad.is_empty() && remark_pass && unrealizable;
    let detail = format!(
        "{} corpus graphs pass; fig3(1,1,0,1)+end@b passes {remark_pass} yet is Unrealizable {unrealizable}{}",
        corpus.tables.len(),
        if bad.is_empty() { String::new() } else { format!("; failures: {}", bad.join("; ")) }
    );
    outcome(10, "necessary conditions are not sufficient", start, None, ok, detail)
}

/// Runs all criteria in order.
pub fn run_criteria() -> Vec<CriterionOutcome> {
    let mut corpus = Corpus::default();
    let mut out = vec![
        golden_tables(&mut corpus),
        extension_sweep(&mut corpus),
        end_and_cap_obstructions(&mut corpus),
        end_cap_family(&mut corpus),
        bipartite_remarks(&mut corpus),
        complete_graph_caps(&mut corpus),
        uniqueness(&mut corpus),
        oracle_equivalence(&mut corpus),
    ];
    out.push(claim_checks(&corpus));
    out.push(prescreen(&corpus));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permuting_by_identity_keeps_rows() {
        let t = CayleyTable::parse_csv(KN2_TABLE_CSV).unwrap();
        let id: Vec<usize> = (0..t.order() - 1).collect();
        assert_eq!(permuted_rows(&t, &id), t.rows());
    }

    #[test]
    fn golden_cases_cover_all_fixtures() {
        let mut c = Corpus::default();
        let o = golden_tables(&mut c);
        assert!(o.pass, "{o}");
        assert_eq!(c.tables.len(), 5);
    }
}
