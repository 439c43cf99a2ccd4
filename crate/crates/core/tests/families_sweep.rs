use zdgraph::algebra::validate;
use zdgraph::families::{generate_graph, generate_table, sweep_specs, FamilySpec};
use zdgraph::graph::zero_divisor_graph;
use zdgraph::{CayleyTable, Error};

#[test]
fn every_sweep_spec_yields_a_matching_table() {
    let mut failures = Vec::new();
    for spec in sweep_specs(3) {
        let g = generate_graph(&spec).unwrap();
        match generate_table(&spec) {
            Ok(t) => {
                assert!(validate(&t).is_valid(), "{spec}");
                let h = zero_divisor_graph(&t).unwrap();
                assert_eq!(h, g, "{spec}: graph order and labels must match");
            }
            Err(Error::NotRealizable(m)) if matches!(spec, FamilySpec::Fig4 { u, v, .. } if u > 0 && v > 0) => {
                let _ = m;
            }
            Err(e) => failures.push(format!("{spec}: {e}")),
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn reference_parameters_reproduce_reference_tables() {
    let cases = [
        (FamilySpec::Fig3 { m: 2, n: 2, u: 1, v: 2 }, zdgraph::families::FIG3_TABLE_CSV),
        (FamilySpec::Fig4 { caps: 2, u: 2, v: 0, w: 2 }, zdgraph::families::FIG4_TABLE_CSV),
        (FamilySpec::Fig5 { m: 2, n: 2, v: 2 }, zdgraph::families::FIG5_TABLE_CSV),
        (FamilySpec::kn2(4), zdgraph::families::KN2_TABLE_CSV),
        (FamilySpec::kn2_caps(4, 2, "x1", "x2"), zdgraph::families::KN2_CAPS_TABLE_CSV),
    ];
    for (spec, csv) in cases {
        let reference = CayleyTable::parse_csv(csv).unwrap();
        let t = generate_table(&spec).unwrap();
        assert!(t.labeled_eq(&reference), "{spec}: {:?}", t.first_difference(&reference));
    }
}
