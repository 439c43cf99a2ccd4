//! Runs criteria 1 to 10 and prints one verdict line per criterion.
//!
//! Two criteria are known to fail as stated. Their verdicts are asserted to
//! be FAIL and the measured facts behind them are pinned below.

use zdgraph::families::{add_end, generate_graph, FamilySpec, KN2_TABLE_CSV};
use zdgraph::graph::is_isomorphic;
use zdgraph::reproduce::{run_criteria, CriterionOutcome};
use zdgraph::search::{enumerate, realize, SearchConfig, Tag};
use zdgraph::CayleyTable;

const KNOWN_FAILURES: [usize; 2] = [5, 7];

fn find(all: &[CriterionOutcome], n: usize) -> &CriterionOutcome {
    all.iter().find(|o| o.number == n).expect("criterion present")
}

#[test]
fn acceptance_criteria() {
    let all = run_criteria();
    for o in &all {
        println!("{o}");
    }
    assert_eq!(all.iter().map(|o| o.number).collect::<Vec<_>>(), (1..=10).collect::<Vec<_>>());
    for o in &all {
        if KNOWN_FAILURES.contains(&o.number) {
            assert!(!o.pass, "criterion {} now passes; revisit the pinned finding: {o}", o.number);
        } else {
            assert!(o.pass, "{o}");
        }
    }

    let c5 = find(&all, 5);
    assert!(c5.detail.contains("fig5(1,1,0): Realized"), "{c5}");
    assert!(c5.detail.contains("fig5(1,1,0)+end@a: Realized"), "{c5}");
    assert!(c5.detail.contains("fig5(1,1,0)+end@x1: Unrealizable"), "{c5}");
    assert!(c5.detail.contains("fig5(1,1,0)+edge x1-x2: Unrealizable"), "{c5}");
    assert!(c5.detail.contains("isomorphic to fig5(1,1,1): true"), "{c5}");
    assert!(c5.detail.contains("fig5(1,1,1)+end@a: Unrealizable"), "{c5}");

    let c7 = find(&all, 7);
    assert!(c7.detail.starts_with("2 labeled table(s), exhaustive true, reference table among them true"), "{c7}");
    assert!(c7.detail.contains("all related by graph automorphisms (4 automorphisms): true"), "{c7}");
}

#[test]
fn end_on_a_without_outer_ends_is_the_next_family_member() {
    let f5 = generate_graph(&FamilySpec::Fig5 { m: 1, n: 1, v: 0 }).unwrap();
    let f51 = generate_graph(&FamilySpec::Fig5 { m: 1, n: 1, v: 1 }).unwrap();
    let g = add_end(&f5, "a").unwrap();
    assert!(is_isomorphic(&g, &f51).unwrap());
    let o = realize(&g, &SearchConfig::default()).unwrap();
    assert_eq!(o.tag, Tag::Realized);
    assert_eq!(realize(&f51, &SearchConfig::default()).unwrap().tag, Tag::Realized);
}

#[test]
fn end_on_a_with_outer_ends_is_unrealizable() {
    for v in 1..=2 {
        let f = generate_graph(&FamilySpec::Fig5 { m: 1, n: 1, v }).unwrap();
        let o = realize(&add_end(&f, "a").unwrap(), &SearchConfig::default()).unwrap();
        assert_eq!(o.tag, Tag::Unrealizable, "v={v}");
    }
}

#[test]
fn complete_graph_with_two_pendants_has_two_labeled_tables() {
    let g = generate_graph(&FamilySpec::kn2(4)).unwrap();
    let cfg = SearchConfig { symmetry: Some(false), ..SearchConfig::default() };
    let e = enumerate(&g, &cfg, None).unwrap();
    assert!(e.exhaustive);
    assert_eq!(e.tables.len(), 2);
    let reference = CayleyTable::parse_csv(KN2_TABLE_CSV).unwrap();
    assert_eq!(e.tables.iter().filter(|t| t.labeled_eq(&reference)).count(), 1);

    let with_symmetry = enumerate(&g, &SearchConfig { symmetry: Some(true), ..cfg }, None).unwrap();
    assert!(with_symmetry.exhaustive);
    assert_eq!(with_symmetry.tables.len(), 1);
}
