//! Deciding whether a graph is the zero-divisor graph of a commutative
//! semigroup on exactly its vertices plus zero.
//!
//! The engine fills the unknown cells of a commutative table on
//! `V(G) ∪ {0}` by depth-first search with propagation (see
//! [`SearchState`]). Only semigroups whose nonzero zero-divisors are all of
//! `S \ {0}` are considered; realizations inside larger semigroups are out of
//! scope.

mod state;
mod symmetry;

use std::fmt;
use std::path::Path;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

pub use state::{Contradiction, Counters, DomainOptions, SearchState};
pub use symmetry::{lex_leader_ok, twin_pairs};

use crate::algebra::{validate, CayleyTable};
use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::graph::{necessary_conditions, zero_divisor_graph_unchecked, LabeledGraph};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Search settings. `symmetry = None` means on for `realize` and off for
/// `enumerate`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of decision nodes.
    pub budget: u64,
    pub symmetry: Option<bool>,
    /// Worker threads; 1 is sequential.
    pub parallel: usize,
    pub max_solutions: Option<usize>,
    /// Forbid `x*x = 0` when a vertex lies at distance 3 from `x`.
    pub distance3_pruning: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: DEFAULT_BUDGET,
            symmetry: None,
            parallel: 1,
            max_solutions: None,
            distance3_pruning: true,
        }
    }
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v {
        "on" | "true" | "yes" | "1" => Ok(true),
        "off" | "false" | "no" | "0" => Ok(false),
        _ => Err(Error::Config(format!("{key}: expected on/off, got `{v}`"))),
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::Config(format!("{key}: expected a non-negative integer, got `{v}`")))
}

impl SearchConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match key.trim() {
            "budget" => self.budget = parse_num("budget", v)?,
            "symmetry" => self.symmetry = Some(parse_bool("symmetry", v)?),
            "parallel" => self.parallel = parse_num("parallel", v)?,
            "max_solutions" => self.max_solutions = Some(parse_num("max_solutions", v)?),
            "distance3_pruning" => self.distance3_pruning = parse_bool("distance3_pruning", v)?,
            other => return Err(Error::Config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    /// Reads `key=value` lines over the defaults; `#` starts a comment.
    pub fn parse(text: &str) -> Result<SearchConfig> {
        let mut cfg = SearchConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) =
                line.split_once('=').ok_or_else(|| Error::Config(format!("line {}: expected key=value", i + 1)))?;
            cfg.set(k, v).map_err(|e| match e {
                Error::Config(m) => Error::Config(format!("line {}: {m}", i + 1)),
                other => other,
            })?;
        }
        cfg.check()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<SearchConfig> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        SearchConfig::parse(&text)
    }

    pub fn check(&self) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::Config("budget must be positive".into()));
        }
        if self.parallel == 0 {
            return Err(Error::Config("parallel must be at least 1".into()));
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("budget={}\n", self.budget);
        if let Some(on) = self.symmetry {
            s += &format!("symmetry={}\n", if on { "on" } else { "off" });
        }
        s += &format!("parallel={}\n", self.parallel);
        if let Some(m) = self.max_solutions {
            s += &format!("max_solutions={m}\n");
        }
        s += &format!("distance3_pruning={}\n", if self.distance3_pruning { "on" } else { "off" });
        s
    }

    fn domain_options(&self) -> DomainOptions {
        DomainOptions { distance3_squares: self.distance3_pruning, explain: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tag {
    Realized,
    Unrealizable,
    BudgetExceeded,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::Realized => "Realized",
            Tag::Unrealizable => "Unrealizable",
            Tag::BudgetExceeded => "BudgetExceeded",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub propagations: u64,
    pub max_depth: usize,
    pub elapsed: Duration,
}

impl fmt::Display for SearchStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "nodes={} propagations={} max_depth={} time={:.3}s",
            self.nodes,
            self.propagations,
            self.max_depth,
            self.elapsed.as_secs_f64()
        )
    }
}

/// A decision on the accepting path: `x*y = v` as element indices.
pub type Decision = (usize, usize, usize);

#[derive(Clone, Debug)]
pub struct RealizationOutcome {
    pub tag: Tag,
    pub witness: Option<CayleyTable>,
    /// Decisions leading to the witness.
    pub path: Vec<Decision>,
    /// Why the search stopped before branching, when it did.
    pub reason: Option<String>,
    pub stats: SearchStats,
    pub config: SearchConfig,
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub tables: Vec<CayleyTable>,
    /// The whole search tree was explored.
    pub exhaustive: bool,
    pub budget_exceeded: bool,
    pub reason: Option<String>,
    pub stats: SearchStats,
}

/// Initial search state for `g` with the default domain options.
pub fn init_domains(g: &LabeledGraph) -> std::result::Result<SearchState, Contradiction> {
    SearchState::init(g, DomainOptions::default()).map_err(|(_, c)| c)
}

struct Shared<'a> {
    graph: &'a LabeledGraph,
    budget: u64,
    nodes: &'a AtomicU64,
    stop: &'a AtomicBool,
    twins: &'a [(usize, usize)],
}

struct Walker<'a> {
    sh: &'a Shared<'a>,
    st: SearchState,
    /// Stop after this many solutions; `stop_all` also halts other workers.
    cap: usize,
    stop_all: bool,
    found: Vec<(CayleyTable, Vec<Decision>)>,
    path: Vec<Decision>,
    max_depth: usize,
    tripped: bool,
    broken: Option<String>,
}

impl<'a> Walker<'a> {
    fn new(sh: &'a Shared<'a>, st: SearchState, cap: usize, stop_all: bool) -> Self {
        Walker {
            sh,
            st,
            cap,
            stop_all,
            found: Vec::new(),
            path: Vec::new(),
            max_depth: 0,
            tripped: false,
            broken: None,
        }
    }

    fn accept(&mut self) -> bool {
        let t = self.st.to_table().expect("complete state gives a table");
        let report = validate(&t);
        let ok = report.is_valid() && zero_divisor_graph_unchecked(&t).labeled_eq(self.sh.graph);
        if !ok {
            self.broken =
                Some(format!("search produced a table that is not a realization (valid: {})", report.is_valid()));
            self.sh.stop.store(true, Ordering::Relaxed);
            return true;
        }
        self.found.push((t, self.path.clone()));
        if self.found.len() >= self.cap {
            if self.stop_all {
                self.sh.stop.store(true, Ordering::Relaxed);
            }
            return true;
        }
        false
    }

    /// Returns true when the search must stop.
    fn dfs(&mut self, depth: usize) -> bool {
        self.max_depth = self.max_depth.max(depth);
        if !self.sh.twins.is_empty() && !lex_leader_ok(&self.st, self.sh.twins) {
            return false;
        }
        let Some((c, d)) = self.st.choose() else {
            return self.accept();
        };
        let n = self.st.order();
        let (i, j) = (c as usize / n, c as usize % n);
        for v in BitSet::from_bits(d) {
            if self.sh.stop.load(Ordering::Relaxed) {
                return true;
            }
            if self.sh.nodes.fetch_add(1, Ordering::Relaxed) >= self.sh.budget {
                self.tripped = true;
                self.sh.stop.store(true, Ordering::Relaxed);
                return true;
            }
            let mark = self.st.trail_len();
            self.path.push((i, j, v));
            let stop = self.st.decide(c, v).is_ok() && self.dfs(depth + 1);
            self.st.undo_to(mark);
            self.path.pop();
            if stop {
                return true;
            }
        }
        false
    }
}

struct RunResult {
    found: Vec<(CayleyTable, Vec<Decision>)>,
    complete: bool,
    tripped: bool,
    broken: Option<String>,
    reason: Option<String>,
    stats: SearchStats,
}

fn prepare(g: &LabeledGraph, cfg: &SearchConfig) -> Result<std::result::Result<SearchState, String>> {
    cfg.check()?;
    if g.len() < 2 {
        return Err(Error::MalformedGraph("realization needs at least 2 vertices".into()));
    }
    if g.len() > 63 {
        return Err(Error::SizeLimit(format!("search supports at most 63 vertices, got {}", g.len())));
    }
    let report = necessary_conditions(g);
    if let Some(failed) = report.first_failed() {
        return Ok(Err(format!("necessary condition fails: {failed}")));
    }
    Ok(match SearchState::init(g, cfg.domain_options()) {
        Ok(st) => Ok(st),
        Err((_, c)) => Err(format!("initial propagation: {c}")),
    })
}

fn run(g: &LabeledGraph, cfg: &SearchConfig, symmetry: bool, cap: usize, stop_all: bool) -> Result<RunResult> {
    let start = Instant::now();
    let root = match prepare(g, cfg)? {
        Ok(st) => st,
        Err(reason) => {
            return Ok(RunResult {
                found: Vec::new(),
                complete: true,
                tripped: false,
                broken: None,
                reason: Some(reason),
                stats: SearchStats { elapsed: start.elapsed(), ..SearchStats::default() },
            })
        }
    };
    let twins = if symmetry { twin_pairs(g) } else { Vec::new() };
    let nodes = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let sh = Shared { graph: g, budget: cfg.budget, nodes: &nodes, stop: &stop, twins: &twins };
    let base_props = root.counters.propagations;
    let mut out = if cfg.parallel <= 1 {
        let mut w = Walker::new(&sh, root, cap, stop_all);
        let stopped = w.dfs(0);
        RunResult {
            complete: !stopped,
            tripped: w.tripped,
            broken: w.broken,
            reason: None,
            stats: SearchStats {
                propagations: w.st.counters.propagations,
                max_depth: w.max_depth,
                ..SearchStats::default()
            },
            found: w.found,
        }
    } else {
        run_parallel(&sh, root, cfg.parallel, cap, stop_all)
    };
    out.stats.propagations = out.stats.propagations.max(base_props);
    out.stats.nodes = nodes.load(Ordering::Relaxed).min(cfg.budget);
    out.stats.elapsed = start.elapsed();
    Ok(out)
}

struct Subtree {
    found: Vec<(CayleyTable, Vec<Decision>)>,
    complete: bool,
    tripped: bool,
    broken: Option<String>,
    propagations: u64,
    max_depth: usize,
}

fn run_parallel(sh: &Shared<'_>, root: SearchState, workers: usize, cap: usize, stop_all: bool) -> RunResult {
    let base_props = root.counters.propagations;
    if !sh.twins.is_empty() && !lex_leader_ok(&root, sh.twins) {
        return RunResult {
            found: Vec::new(),
            complete: true,
            tripped: false,
            broken: None,
            reason: None,
            stats: SearchStats::default(),
        };
    }
    let Some((c, d)) = root.choose() else {
        let mut w = Walker::new(sh, root, cap, stop_all);
        let stopped = w.dfs(0);
        return RunResult {
            complete: !stopped,
            tripped: w.tripped,
            broken: w.broken,
            reason: None,
            stats: SearchStats::default(),
            found: w.found,
        };
    };
    let n = root.order();
    let (i, j) = (c as usize / n, c as usize % n);
    let values: Vec<usize> = BitSet::from_bits(d).iter().collect();
    let slots: Vec<Mutex<Option<Subtree>>> = values.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..workers.min(values.len()) {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= values.len() {
                    break;
                }
                let v = values[k];
                let mut sub = Subtree {
                    found: Vec::new(),
                    complete: false,
                    tripped: false,
                    broken: None,
                    propagations: 0,
                    max_depth: 1,
                };
                if !sh.stop.load(Ordering::Relaxed) {
                    if sh.nodes.fetch_add(1, Ordering::Relaxed) >= sh.budget {
                        sh.stop.store(true, Ordering::Relaxed);
                        sub.tripped = true;
                    } else {
                        let mut st = root.clone();
                        st.counters = Counters::default();
                        if st.decide(c, v).is_ok() {
                            let mut w = Walker::new(sh, st, cap, stop_all);
                            w.path.push((i, j, v));
                            let stopped = w.dfs(1);
                            sub.complete = !stopped;
                            sub.tripped = w.tripped;
                            sub.broken = w.broken;
                            sub.max_depth = w.max_depth;
                            sub.propagations = w.st.counters.propagations;
                            sub.found = w.found;
                        } else {
                            sub.complete = true;
                        }
                    }
                }
                *slots[k].lock().expect("slot lock") = Some(sub);
            });
        }
    });
    let mut out = RunResult {
        found: Vec::new(),
        complete: true,
        tripped: false,
        broken: None,
        reason: None,
        stats: SearchStats { propagations: base_props, ..SearchStats::default() },
    };
    for slot in slots {
        let Some(sub) = slot.into_inner().expect("slot lock") else {
            out.complete = false;
            continue;
        };
        out.complete &= sub.complete;
        out.tripped |= sub.tripped;
        if out.broken.is_none() {
            out.broken = sub.broken;
        }
        out.stats.propagations += sub.propagations;
        out.stats.max_depth = out.stats.max_depth.max(sub.max_depth);
        out.found.extend(sub.found);
    }
    if out.found.len() >= cap {
        out.found.truncate(cap);
        out.complete = false;
    }
    out
}

/// Searches for one semigroup on `V(G) ∪ {0}` whose zero-divisor graph is
/// `g` with its labels.
pub fn realize(g: &LabeledGraph, cfg: &SearchConfig) -> Result<RealizationOutcome> {
    let symmetry = cfg.symmetry.unwrap_or(true);
    let mut r = run(g, cfg, symmetry, 1, true)?;
    if let Some(msg) = r.broken {
        return Err(Error::Invariant(msg));
    }
    let (tag, witness, path) = match r.found.drain(..).next() {
        Some((t, p)) => (Tag::Realized, Some(t), p),
        None if r.tripped || !r.complete => (Tag::BudgetExceeded, None, Vec::new()),
        None => (Tag::Unrealizable, None, Vec::new()),
    };
    Ok(RealizationOutcome { tag, witness, path, reason: r.reason, stats: r.stats, config: cfg.clone() })
}

/// Every realization of `g` with fixed labels, up to `limit` (or the
/// configured `max_solutions`), in search order.
pub fn enumerate(g: &LabeledGraph, cfg: &SearchConfig, limit: Option<usize>) -> Result<Enumeration> {
    let symmetry = cfg.symmetry.unwrap_or(false);
    let limit = limit.or(cfg.max_solutions);
    let cap = limit.map_or(usize::MAX, |l| l.saturating_add(1));
    let mut r = run(g, cfg, symmetry, cap, false)?;
    if let Some(msg) = r.broken {
        return Err(Error::Invariant(msg));
    }
    let mut exhaustive = r.complete && !r.tripped;
    if let Some(l) = limit {
        if r.found.len() > l {
            r.found.truncate(l);
            exhaustive = false;
        }
    }
    Ok(Enumeration {
        tables: r.found.into_iter().map(|(t, _)| t).collect(),
        exhaustive,
        budget_exceeded: r.tripped,
        reason: r.reason,
        stats: r.stats,
    })
}

/// Re-runs the initial propagation with explanations enabled.
pub fn explain_initial(g: &LabeledGraph, cfg: &SearchConfig) -> Option<Contradiction> {
    let opts = DomainOptions { explain: true, ..cfg.domain_options() };
    SearchState::init(g, opts).err().map(|(_, c)| c)
}
