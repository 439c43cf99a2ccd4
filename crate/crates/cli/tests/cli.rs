use std::fs;
use std::process::{Command, Output};

use tempfile::TempDir;
use zdgraph::families::{generate_graph, sweep_specs, FamilySpec, FIG3_TABLE_CSV, KN2_TABLE_CSV};
use zdgraph::CayleyTable;

fn zdg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zdg")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn spec_args(spec: &FamilySpec) -> Vec<String> {
    let s = |k: &str, v: usize| [format!("--{k}"), v.to_string()];
    match spec {
        FamilySpec::Fig3 { m, n, u, v } => {
            [vec!["fig3".into()], s("m", *m).into(), s("n", *n).into(), s("u", *u).into(), s("v", *v).into()].concat()
        }
        FamilySpec::Fig4 { caps, u, v, w } => {
            [vec!["fig4".into()], s("caps", *caps).into(), s("u", *u).into(), s("v", *v).into(), s("w", *w).into()]
                .concat()
        }
        FamilySpec::Fig5 { m, n, v } => {
            [vec!["fig5".into()], s("m", *m).into(), s("n", *n).into(), s("v", *v).into()].concat()
        }
        FamilySpec::Kn2 { n, caps, at } => [
            vec!["kn2".into()],
            s("n", *n).into(),
            s("caps", *caps).into(),
            vec!["--at".into(), format!("{},{}", at.0, at.1)],
        ]
        .concat(),
    }
}

#[test]
fn generated_table_verifies_and_equals_reference_table() {
    let dir = TempDir::new().unwrap();
    let (g, t) = (path(&dir, "g.txt"), path(&dir, "t.csv"));
    let o = zdg(&[
        "gen",
        "fig3",
        "--m",
        "2",
        "--n",
        "2",
        "--u",
        "1",
        "--v",
        "2",
        "--with-table",
        "--table-out",
        &t,
        "-o",
        &g,
    ]);
    assert_eq!(code(&o), 0);
    let o = zdg(&["verify", &t, "--graph", &g]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("graph matches: yes"));
    let made = CayleyTable::parse_csv(&fs::read_to_string(&t).unwrap()).unwrap();
    assert!(made.labeled_eq(&CayleyTable::parse_csv(FIG3_TABLE_CSV).unwrap()));
}

#[test]
fn end_vertex_on_cap_side_is_unrealizable() {
    let dir = TempDir::new().unwrap();
    let g = path(&dir, "g.txt");
    let base = generate_graph(&FamilySpec::Fig3 { m: 1, n: 1, u: 0, v: 1 }).unwrap();
    let with_end = zdgraph::families::add_end(&base, "b").unwrap();
    fs::write(&g, with_end.to_text()).unwrap();
    let o = zdg(&["realize", &g]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("Unrealizable\n"));
}

#[test]
fn realized_witness_written_to_file_verifies() {
    let dir = TempDir::new().unwrap();
    let (g, t) = (path(&dir, "g.txt"), path(&dir, "t.csv"));
    assert_eq!(code(&zdg(&["gen", "fig5", "--m", "1", "--n", "1", "--v", "0", "-o", &g])), 0);
    let o = zdg(&["realize", &g, "--output", &t, "--symmetry", "off", "--parallel", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "Realized\n");
    assert_eq!(code(&zdg(&["verify", &t, "--graph", &g])), 0);
}

#[test]
fn budget_exhaustion_exits_two() {
    let dir = TempDir::new().unwrap();
    let g = path(&dir, "g.txt");
    assert_eq!(code(&zdg(&["gen", "kn2", "--n", "5", "-o", &g])), 0);
    let o = zdg(&["enumerate", &g, "--budget", "2"]);
    assert_eq!(code(&o), 2, "{}", stdout(&o));
    let o = zdg(&["realize", &g, "--budget", "1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn config_file_is_read_and_flags_override_it() {
    let dir = TempDir::new().unwrap();
    let (g, c) = (path(&dir, "g.txt"), path(&dir, "search.cfg"));
    assert_eq!(code(&zdg(&["gen", "kn2", "--n", "4", "-o", &g])), 0);
    fs::write(&c, "# search settings\nbudget=1\nsymmetry=off\n").unwrap();
    assert_eq!(code(&zdg(&["enumerate", &g, "--config", &c])), 2);
    let o = zdg(&["enumerate", &g, "--config", &c, "--budget", "100000"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("solutions: 2\nexhaustive: yes\n"));
    fs::write(&c, "budget=lots\n").unwrap();
    assert_eq!(code(&zdg(&["enumerate", &g, "--config", &c])), 3);
}

#[test]
fn enumerate_respects_max_solutions() {
    let dir = TempDir::new().unwrap();
    let g = path(&dir, "g.txt");
    assert_eq!(code(&zdg(&["gen", "kn2", "--n", "4", "-o", &g])), 0);
    let o = zdg(&["enumerate", &g, "--symmetry", "off", "--max-solutions", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("solutions: 1\nexhaustive: no\n"));
}

#[test]
fn input_errors_exit_three() {
    let dir = TempDir::new().unwrap();
    let empty = path(&dir, "empty.txt");
    fs::write(&empty, "").unwrap();
    assert_eq!(code(&zdg(&["analyze", &empty])), 3);
    assert_eq!(code(&zdg(&["analyze", &path(&dir, "missing.txt")])), 3);
    assert_eq!(code(&zdg(&["realize", &empty, "--frobnicate"])), 3);
    assert_eq!(code(&zdg(&["frobnicate"])), 3);
    assert_eq!(code(&zdg(&[])), 3);
    assert_eq!(code(&zdg(&["gen", "fig4", "--caps", "1", "--u", "1", "--v", "1", "--w", "1", "--with-table"])), 3);
    assert_eq!(code(&zdg(&["gen", "kn2", "--n", "4", "--at", "x1"])), 3);
    assert_eq!(code(&zdg(&["gen", "fig3", "--m", "0", "--n", "1", "--u", "0", "--v", "0"])), 3);
    let bad = path(&dir, "bad.csv");
    fs::write(&bad, "*,0,a\n0,0,0\na,0,b\n").unwrap();
    assert_eq!(code(&zdg(&["verify", &bad])), 3);
    assert_eq!(code(&zdg(&["realize", &empty, "--parallel", "0"])), 3);
}

#[test]
fn non_associative_table_fails_verification() {
    let dir = TempDir::new().unwrap();
    let t = path(&dir, "t.csv");
    let table = CayleyTable::parse_csv(KN2_TABLE_CSV).unwrap();
    let (y1, b) = (table.index_of("y1").unwrap(), table.index_of("b").unwrap());
    let broken = table.with_product(y1, y1, b).unwrap();
    fs::write(&t, broken.to_csv()).unwrap();
    let o = zdg(&["verify", &t]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("associative: no"));
    assert!(stdout(&o).contains("first failure: "));
    assert_eq!(code(&zdg(&["theorems", &t])), 3);
}

#[test]
fn graph_of_generated_table_reproduces_generated_graph() {
    let dir = TempDir::new().unwrap();
    let t = path(&dir, "t.csv");
    let dot = path(&dir, "g.dot");
    let mut checked = 0;
    for spec in sweep_specs(2) {
        let args = spec_args(&spec);
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let plain = zdg(&[&["gen"], &args[..]].concat());
        assert_eq!(code(&plain), 0, "{spec}");
        let with = zdg(&[&["gen"], &args[..], &["--with-table", "--table-out", &t]].concat());
        if code(&with) == 3 {
            continue;
        }
        assert_eq!(stdout(&with), stdout(&plain), "{spec}");
        let of = zdg(&["graph-of", &t, "--dot", &dot]);
        assert_eq!(code(&of), 0, "{spec}");
        assert_eq!(stdout(&of), stdout(&plain), "{spec}");
        assert!(fs::read_to_string(&dot).unwrap().starts_with("graph G {"));
        checked += 1;
    }
    assert!(checked > 50, "{checked}");
}

#[test]
fn analyze_reports_in_sorted_order() {
    let dir = TempDir::new().unwrap();
    let g = path(&dir, "g.txt");
    fs::write(&g, "z m a\nz m\nm a\n").unwrap();
    let o = zdg(&["analyze", &g]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("end vertices: {a, z}\n"), "{out}");
    assert!(out.contains("diameter: 2\n"));
    assert!(out.contains("special family: star\n"), "{out}");
    assert_eq!(out, stdout(&zdg(&["analyze", &g])));
}

#[test]
fn theorems_on_reference_table_hold() {
    let dir = TempDir::new().unwrap();
    let t = path(&dir, "t.csv");
    fs::write(&t, FIG3_TABLE_CSV).unwrap();
    let o = zdg(&["theorems", &t]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().all(|l| !l.contains(" fails")));
    assert!(stdout(&o).contains("failures: 0"));
}

#[test]
fn canonical_files_round_trip() {
    let dir = TempDir::new().unwrap();
    let t = path(&dir, "t.csv");
    fs::write(&t, KN2_TABLE_CSV).unwrap();
    let g = path(&dir, "g.txt");
    let o = zdg(&["graph-of", &t]);
    fs::write(&g, stdout(&o)).unwrap();
    let o2 = zdg(&["realize", &g, "--symmetry", "off"]);
    assert_eq!(code(&o2), 0);
    let parsed = zdgraph::LabeledGraph::parse(&stdout(&o)).unwrap();
    assert_eq!(parsed.to_text(), stdout(&o));
}
