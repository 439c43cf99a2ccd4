//! `zdg`: command-line front end for zero-divisor graph analysis and
//! semigroup realization search.
//!
//! Exit codes: 0 success or Realized, 1 Unrealizable or a negative verdict,
//! 2 budget exceeded, 3 input error, 4 internal invariant violation.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use zdgraph::algebra::validate;
use zdgraph::families::{add_end, generate_graph, generate_table, FamilySpec};
use zdgraph::graph::{
    all_delta_witnesses, classify_special, core_unchecked, diameter, end_vertices, is_connected, necessary_conditions,
    partition, zero_divisor_graph,
};
use zdgraph::reproduce::run_criteria;
use zdgraph::search::{enumerate, realize, SearchConfig, Tag};
use zdgraph::theorems::run_all;
use zdgraph::{BitSet, CayleyTable, Error, LabeledGraph};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_INVARIANT: u8 = 4;

#[derive(Parser)]
#[command(name = "zdg", version, about = "Zero-divisor graphs of finite commutative semigroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print metrics, core, cap witnesses, partition and necessary conditions.
    Analyze { graph: PathBuf },
    /// Search for a semigroup whose zero-divisor graph is the given graph.
    Realize {
        graph: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        /// Write the witness table here instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// List every realizing table on the graph's own labels.
    Enumerate {
        graph: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Validate a table and optionally compare its graph to a graph file.
    Verify {
        table: PathBuf,
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Print the zero-divisor graph of a table.
    GraphOf {
        table: PathBuf,
        /// Also write a DOT rendering here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Generate a family graph, and optionally its table.
    Gen {
        #[command(subcommand)]
        family: Family,
        /// Also produce the family's table.
        #[arg(long, global = true)]
        with_table: bool,
        /// Write the table here instead of after the graph on stdout.
        #[arg(long, global = true)]
        table_out: Option<PathBuf>,
        /// Write the graph here instead of stdout.
        #[arg(long, short, global = true)]
        output: Option<PathBuf>,
    },
    /// Check the ideal and sub-semigroup claims on a table.
    Theorems { table: PathBuf },
    /// Run the full acceptance suite.
    Reproduce,
}

#[derive(Subcommand)]
enum Family {
    Fig3 {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        v: usize,
    },
    Fig4 {
        #[arg(long)]
        caps: usize,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        v: usize,
        #[arg(long)]
        w: usize,
    },
    Fig5 {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        v: usize,
    },
    Kn2 {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        caps: usize,
        /// Cap attachment pair `p,q`.
        #[arg(long, default_value = "x1,x2", value_parser = parse_pair)]
        at: (String, String),
        /// Hang one extra end vertex on this vertex.
        #[arg(long)]
        end: Option<String>,
    },
}

fn parse_pair(s: &str) -> Result<(String, String), String> {
    match s.split_once(',') {
        Some((p, q)) if !p.is_empty() && !q.is_empty() && !q.contains(',') => Ok((p.into(), q.into())),
        _ => Err(format!("expected `p,q`, got `{s}`")),
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OnOff {
    On,
    Off,
}

#[derive(Args)]
struct SearchArgs {
    /// key=value configuration file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Maximum number of search nodes.
    #[arg(long)]
    budget: Option<u64>,
    /// Twin-swap symmetry breaking; on for realize, off for enumerate by default.
    #[arg(long, value_enum)]
    symmetry: Option<OnOff>,
    /// Worker threads.
    #[arg(long)]
    parallel: Option<usize>,
    /// Stop enumerating after this many tables.
    #[arg(long)]
    max_solutions: Option<usize>,
    /// Forbid zero squares for vertices with a vertex at distance 3.
    #[arg(long, value_enum)]
    distance3_pruning: Option<OnOff>,
}

impl SearchArgs {
    fn config(&self) -> zdgraph::Result<SearchConfig> {
        let mut cfg = match &self.config {
            Some(p) => SearchConfig::from_file(p)?,
            None => SearchConfig::default(),
        };
        if let Some(b) = self.budget {
            cfg.budget = b;
        }
        if let Some(s) = self.symmetry {
            cfg.symmetry = Some(matches!(s, OnOff::On));
        }
        if let Some(p) = self.parallel {
            cfg.parallel = p;
        }
        if let Some(m) = self.max_solutions {
            cfg.max_solutions = Some(m);
        }
        if let Some(l) = self.distance3_pruning {
            cfg.distance3_pruning = matches!(l, OnOff::On);
        }
        cfg.check()?;
        Ok(cfg)
    }
}

enum Failure {
    Input(String),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(m) => Failure::Invariant(m),
            e => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<LabeledGraph, Failure> {
    LabeledGraph::parse(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_table(path: &Path) -> Result<CayleyTable, Failure> {
    CayleyTable::parse_csv(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn set(g: &LabeledGraph, s: BitSet) -> String {
    let mut names = g.names_of(s);
    names.sort_unstable();
    format!("{{{}}}", names.join(", "))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn analyze(path: &Path) -> Outcome {
    let g = load_graph(path)?;
    println!("vertices: {}", g.len());
    println!("edges: {}", g.edge_count());
    println!("connected: {}", yes(is_connected(&g)));
    match diameter(&g) {
        Some(d) => println!("diameter: {d}"),
        None => println!("diameter: infinite"),
    }
    let c = core_unchecked(&g);
    let mut core_edges: Vec<String> = c
        .core_edges
        .iter()
        .map(|&(u, v)| {
            let (p, q) = (g.name(u), g.name(v));
            if p <= q {
                format!("{p}-{q}")
            } else {
                format!("{q}-{p}")
            }
        })
        .collect();
    core_edges.sort();
    println!("core vertices: {}", set(&g, c.core_vertices));
    println!("core edges: {{{}}}", core_edges.join(", "));
    println!("core is triangles and squares: {}", yes(c.core_is_triangles_and_squares()));
    println!("pendant vertices: {}", set(&g, c.pendant_vertices));
    println!("end vertices: {}", set(&g, end_vertices(&g)));
    let ws = all_delta_witnesses(&g);
    println!("cap witnesses (a, b, s, z): {}", ws.len());
    for w in &ws {
        println!("  {}", w.display(&g));
    }
    if let Some(w) = ws.first() {
        let p = partition(&g, w)?;
        println!("partition around {}:", w.display(&g));
        println!("  ab: {}", set(&g, p.ab));
        println!("  C(a,b): {}", set(&g, p.c_ab));
        println!("  B: {}", set(&g, p.b));
        println!("  L: {}", set(&g, p.l));
        println!("  T_a: {}", set(&g, p.ta));
        println!("  T_b: {}", set(&g, p.tb));
        println!("  B1: {}", set(&g, p.b1));
        println!("  B2: {}", set(&g, p.b2));
        println!("  B2 overlaps: {}", set(&g, p.b2_overlaps));
        for v in &p.violations {
            println!("  violation: {v}");
        }
    }
    let r = necessary_conditions(&g);
    println!("necessary conditions: {}", if r.all_pass() { "pass" } else { "fail" });
    println!("  connected: {}", yes(r.connected));
    println!("  diameter at most 3: {}", yes(r.diameter_at_most_3));
    println!("  core: {}", yes(r.core_ok));
    println!("  neighborhoods: {}", yes(r.neighborhood_ok));
    for f in &r.failures {
        println!("  failure: {f}");
    }
    println!("special family: {}", classify_special(&g));
    Ok(EXIT_OK)
}

fn tag_code(tag: Tag) -> u8 {
    match tag {
        Tag::Realized => EXIT_OK,
        Tag::Unrealizable => EXIT_NEGATIVE,
        Tag::BudgetExceeded => EXIT_BUDGET,
    }
}

fn realize_cmd(path: &Path, search: &SearchArgs, output: Option<&Path>) -> Outcome {
    let g = load_graph(path)?;
    let cfg = search.config()?;
    let o = realize(&g, &cfg)?;
    println!("{}", o.tag);
    if let Some(r) = &o.reason {
        println!("reason: {r}");
    }
    eprintln!("{}", o.stats);
    if let Some(w) = &o.witness {
        match output {
            Some(p) => write(p, &w.to_csv())?,
            None => print!("{}", w.to_csv()),
        }
    }
    Ok(tag_code(o.tag))
}

fn enumerate_cmd(path: &Path, search: &SearchArgs) -> Outcome {
    let g = load_graph(path)?;
    let cfg = search.config()?;
    let e = enumerate(&g, &cfg, cfg.max_solutions)?;
    println!("solutions: {}", e.tables.len());
    println!("exhaustive: {}", yes(e.exhaustive));
    if let Some(r) = &e.reason {
        println!("reason: {r}");
    }
    eprintln!("{}", e.stats);
    for t in &e.tables {
        println!();
        print!("{}", t.to_csv());
    }
    Ok(if e.budget_exceeded {
        EXIT_BUDGET
    } else if e.tables.is_empty() {
        EXIT_NEGATIVE
    } else {
        EXIT_OK
    })
}

fn verify(table: &Path, graph: Option<&Path>) -> Outcome {
    let t = load_table(table)?;
    let r = validate(&t);
    println!("commutative: {}", yes(r.commutative));
    println!("zero: {}", yes(r.zero_ok));
    println!("associative: {}", yes(r.associative));
    if let Some(f) = r.first_failure {
        println!(
            "first failure: ({}*{})*{} = {} but {}*({}*{}) = {}",
            t.name(f.i),
            t.name(f.j),
            t.name(f.k),
            t.name(f.left),
            t.name(f.i),
            t.name(f.j),
            t.name(f.k),
            t.name(f.right)
        );
    }
    let mut ok = r.is_valid();
    if let Some(gp) = graph {
        let g = load_graph(gp)?;
        if r.is_valid() {
            let h = zero_divisor_graph(&t)?;
            let same = h.labeled_eq(&g);
            println!("graph matches: {}", yes(same));
            if let Some(d) = h.difference(&g) {
                println!("difference: {d}");
            }
            ok &= same;
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
}

fn graph_of(table: &Path, dot: Option<&Path>) -> Outcome {
    let t = load_table(table)?;
    let g = zero_divisor_graph(&t)?;
    print!("{}", g.to_text());
    if let Some(p) = dot {
        write(p, &g.to_dot())?;
    }
    Ok(EXIT_OK)
}

fn family_spec(f: &Family) -> (FamilySpec, Option<&str>) {
    match f {
        &Family::Fig3 { m, n, u, v } => (FamilySpec::Fig3 { m, n, u, v }, None),
        &Family::Fig4 { caps, u, v, w } => (FamilySpec::Fig4 { caps, u, v, w }, None),
        &Family::Fig5 { m, n, v } => (FamilySpec::Fig5 { m, n, v }, None),
        Family::Kn2 { n, caps, at, end } => (FamilySpec::kn2_caps(*n, *caps, &at.0, &at.1), end.as_deref()),
    }
}

fn gen(family: &Family, with_table: bool, table_out: Option<&Path>, output: Option<&Path>) -> Outcome {
    let (spec, end) = family_spec(family);
    let mut g = generate_graph(&spec)?;
    if let Some(p) = end {
        g = add_end(&g, p)?;
    }
    let table = if with_table || table_out.is_some() {
        if end.is_some() {
            return Err(Failure::Input("no table construction for graphs with an extra end vertex".into()));
        }
        Some(generate_table(&spec)?)
    } else {
        None
    };
    match output {
        Some(p) => write(p, &g.to_text())?,
        None => print!("{}", g.to_text()),
    }
    if let Some(t) = table {
        match table_out {
            Some(p) => write(p, &t.to_csv())?,
            None => {
                println!();
                print!("{}", t.to_csv());
            }
        }
    }
    Ok(EXIT_OK)
}

fn theorems(path: &Path) -> Outcome {
    let t = load_table(path)?;
    if !validate(&t).is_valid() {
        return Err(Failure::Input(format!("{}: not a commutative semigroup with zero", path.display())));
    }
    let r = run_all(&t);
    print!("{}", r.to_text());
    println!("applicable: {}, failures: {}", r.applicable_count(), r.failures().len());
    Ok(if r.is_ok() { EXIT_OK } else { EXIT_INVARIANT })
}

fn reproduce() -> Outcome {
    let all = run_criteria();
    for o in &all {
        println!("{o}");
    }
    let failed = all.iter().filter(|o| !o.pass).count();
    println!("{} of {} criteria pass", all.len() - failed, all.len());
    Ok(if failed == 0 { EXIT_OK } else { EXIT_INVARIANT })
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Analyze { graph } => analyze(graph),
        Command::Realize { graph, search, output } => realize_cmd(graph, search, output.as_deref()),
        Command::Enumerate { graph, search } => enumerate_cmd(graph, search),
        Command::Verify { table, graph } => verify(table, graph.as_deref()),
        Command::GraphOf { table, dot } => graph_of(table, dot.as_deref()),
        Command::Gen { family, with_table, table_out, output } => {
            gen(family, *with_table, table_out.as_deref(), output.as_deref())
        }
        Command::Theorems { table } => theorems(table),
        Command::Reproduce => reproduce(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_OK });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Invariant(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(EXIT_INVARIANT)
        }
    }
}
