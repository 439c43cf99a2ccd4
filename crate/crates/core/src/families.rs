//! Parametric graph families and multiplication tables realizing them.
//!
//! Tables for arbitrary parameters are grown from small reference templates
//! by grouping elements into classes; see [`generate_table`].

use std::fmt;

use crate::algebra::{self, CayleyTable};
use crate::error::{Error, Result};
use crate::graph::{self, LabeledGraph};

pub const FIG3_TABLE_CSV: &str = include_str!("../fixtures/fig3.csv");
pub const FIG4_TABLE_CSV: &str = include_str!("../fixtures/fig4.csv");
pub const FIG5_TABLE_CSV: &str = include_str!("../fixtures/fig5.csv");
pub const KN2_TABLE_CSV: &str = include_str!("../fixtures/kn2.csv");
pub const KN2_CAPS_TABLE_CSV: &str = include_str!("../fixtures/kn2_caps.csv");

/// A graph family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// Triangle `a b d`, caps `y1..ym` on `a b`, caps `x1..xn` on `a d`,
    /// end vertices `u*` on `a` and `v*` on `d`.
    Fig3 { m: usize, n: usize, u: usize, v: usize },
    /// Triangle `a b d`, caps `c1..` on `a b`, end vertices `u*` on `a`,
    /// `v*` on `b`, `w*` on `d`.
    Fig4 { caps: usize, u: usize, v: usize, w: usize },
    /// Edge `a b`, caps `c1..cm` on it, `x1 x2` adjacent to both `a` and `b`,
    /// `y1..yn` adjacent to exactly `x1 x2`, end vertices `v*` on `b`.
    Fig5 { m: usize, n: usize, v: usize },
    /// `K_n` on `a b x1 x2 p5..pn`, end vertices `y1 x1` and `y2 x2`, and
    /// `caps` vertices `c*` adjacent to exactly the two vertices in `at`.
    Kn2 { n: usize, caps: usize, at: (String, String) },
}

impl FamilySpec {
    pub fn kn2(n: usize) -> Self {
        FamilySpec::Kn2 { n, caps: 0, at: ("x1".into(), "x2".into()) }
    }

    pub fn kn2_caps(n: usize, caps: usize, p: &str, q: &str) -> Self {
        FamilySpec::Kn2 { n, caps, at: (p.into(), q.into()) }
    }

    /// Checks the per-family parameter bounds.
    pub fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::OutOfRange(m));
        match self {
            FamilySpec::Fig3 { m, n, .. } if *m < 1 || *n < 1 => {
                bad(format!("fig3 needs m >= 1 and n >= 1, got m={m} n={n}"))
            }
            FamilySpec::Fig4 { caps, w, .. } if *caps < 1 || *w < 1 => {
                bad(format!("fig4 needs caps >= 1 and w >= 1, got caps={caps} w={w}"))
            }
            FamilySpec::Fig5 { m, n, .. } if *m < 1 || *n < 1 => {
                bad(format!("fig5 needs m >= 1 and n >= 1, got m={m} n={n}"))
            }
            FamilySpec::Kn2 { n, .. } if *n < 4 => bad(format!("kn2 needs n >= 4, got {n}")),
            FamilySpec::Kn2 { n, caps, at } if *caps > 0 => {
                let core = kn_names(*n);
                for p in [&at.0, &at.1] {
                    if !core.contains(p) {
                        return bad(format!("cap attachment `{p}` is not a vertex of K_{n}"));
                    }
                }
                if at.0 == at.1 {
                    return bad("cap attachment points must differ".into());
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Fig3 { m, n, u, v } => write!(f, "fig3(m={m}, n={n}, u={u}, v={v})"),
            FamilySpec::Fig4 { caps, u, v, w } => write!(f, "fig4(caps={caps}, u={u}, v={v}, w={w})"),
            FamilySpec::Fig5 { m, n, v } => write!(f, "fig5(m={m}, n={n}, v={v})"),
            FamilySpec::Kn2 { n, caps: 0, .. } => write!(f, "kn2(n={n})"),
            FamilySpec::Kn2 { n, caps, at } => write!(f, "kn2(n={n}, caps={caps} at {},{})", at.0, at.1),
        }
    }
}

fn seq(prefix: &str, k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("{prefix}{i}")).collect()
}

fn kn_names(n: usize) -> Vec<String> {
    let mut v: Vec<String> = ["a", "b", "x1", "x2"].iter().map(|s| s.to_string()).collect();
    v.extend((5..=n).map(|i| format!("p{i}")));
    v
}

struct Builder {
    names: Vec<String>,
    edges: Vec<(String, String)>,
}

impl Builder {
    fn new() -> Self {
        Builder { names: Vec::new(), edges: Vec::new() }
    }
    fn vertices(&mut self, vs: impl IntoIterator<Item = String>) -> &mut Self {
        self.names.extend(vs);
        self
    }
    fn edge(&mut self, p: &str, q: &str) -> &mut Self {
        self.edges.push((p.to_string(), q.to_string()));
        self
    }
    fn attach(&mut self, vs: &[String], to: &[&str]) -> &mut Self {
        for v in vs {
            for t in to {
                self.edge(v, t);
            }
        }
        self
    }
    fn build(&self) -> Result<LabeledGraph> {
        LabeledGraph::from_edges(&self.names, &self.edges)
    }
}

fn s(x: &str) -> String {
    x.to_string()
}

/// The family graph with canonical labels.
pub fn generate_graph(spec: &FamilySpec) -> Result<LabeledGraph> {
    spec.check()?;
    let mut b = Builder::new();
    match spec {
        FamilySpec::Fig3 { m, n, u, v } => {
            let (ys, xs, us, vs) = (seq("y", *m), seq("x", *n), seq("u", *u), seq("v", *v));
            b.vertices([s("a"), s("b"), s("d")])
                .vertices(ys.clone())
                .vertices(xs.clone())
                .vertices(us.clone())
                .vertices(vs.clone())
                .edge("a", "b")
                .edge("a", "d")
                .edge("b", "d")
                .attach(&ys, &["a", "b"])
                .attach(&xs, &["a", "d"])
                .attach(&us, &["a"])
                .attach(&vs, &["d"]);
        }
        FamilySpec::Fig4 { caps, u, v, w } => {
            let (cs, us, vs, ws) = (seq("c", *caps), seq("u", *u), seq("v", *v), seq("w", *w));
            b.vertices([s("a"), s("b"), s("d")])
                .vertices(cs.clone())
                .vertices(us.clone())
                .vertices(vs.clone())
                .vertices(ws.clone())
                .edge("a", "b")
                .edge("a", "d")
                .edge("b", "d")
                .attach(&cs, &["a", "b"])
                .attach(&us, &["a"])
                .attach(&vs, &["b"])
                .attach(&ws, &["d"]);
        }
        FamilySpec::Fig5 { m, n, v } => {
            let (cs, ys, vs) = (seq("c", *m), seq("y", *n), seq("v", *v));
            b.vertices([s("a"), s("b")])
                .vertices(cs.clone())
                .vertices([s("x1"), s("x2")])
                .vertices(ys.clone())
                .vertices(vs.clone())
                .edge("a", "b")
                .attach(&cs, &["a", "b"])
                .attach(&[s("x1"), s("x2")], &["a", "b"])
                .attach(&ys, &["x1", "x2"])
                .attach(&vs, &["b"]);
        }
        FamilySpec::Kn2 { n, caps, at } => {
            let core = kn_names(*n);
            let cs = seq("c", *caps);
            b.vertices(core.clone()).vertices([s("y1"), s("y2")]).vertices(cs.clone());
            for (i, p) in core.iter().enumerate() {
                for q in &core[i + 1..] {
                    b.edge(p, q);
                }
            }
            b.edge("x1", "y1").edge("x2", "y2").attach(&cs, &[&at.0, &at.1]);
        }
    }
    b.build()
}

fn fresh_name(g: &LabeledGraph) -> String {
    (1..).map(|k| format!("w{k}")).find(|n| g.vertex(n).is_err()).expect("unbounded name supply")
}

/// Adds a fresh end vertex adjacent to `p`.
pub fn add_end(g: &LabeledGraph, p: &str) -> Result<LabeledGraph> {
    let pv = g.vertex(p)?;
    let mut h = g.clone();
    let w = h.push_vertex(fresh_name(g))?;
    h.insert_edge(w, pv)?;
    Ok(h)
}

/// Adds a fresh vertex adjacent to exactly `p` and `q`.
pub fn add_cap(g: &LabeledGraph, p: &str, q: &str) -> Result<LabeledGraph> {
    let (pv, qv) = (g.vertex(p)?, g.vertex(q)?);
    if pv == qv {
        return Err(Error::MalformedGraph("a cap needs two distinct vertices".into()));
    }
    let mut h = g.clone();
    let w = h.push_vertex(fresh_name(g))?;
    h.insert_edge(w, pv)?;
    h.insert_edge(w, qv)?;
    Ok(h)
}

/// Adds the edge `p q`.
pub fn add_edge(g: &LabeledGraph, p: &str, q: &str) -> Result<LabeledGraph> {
    let (pv, qv) = (g.vertex(p)?, g.vertex(q)?);
    let mut h = g.clone();
    h.insert_edge(pv, qv)?;
    Ok(h)
}

/// How target members of a class multiply among themselves.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Members follow their template representative.
    Collapse,
    /// Distinct members annihilate each other; each behaves like the
    /// representative otherwise.
    Orthogonal,
}

struct Class {
    /// Template elements of this class, in order.
    template: Vec<String>,
    /// Target element names.
    members: Vec<String>,
    mode: Mode,
}

impl Class {
    fn single(name: &str) -> Self {
        Class { template: vec![s(name)], members: vec![s(name)], mode: Mode::Collapse }
    }
    fn param(template: &[&str], prefix: &str, k: usize) -> Self {
        Class { template: template.iter().map(|t| s(t)).collect(), members: seq(prefix, k), mode: Mode::Collapse }
    }
    fn orthogonal(name: &str, extra: Vec<String>) -> Self {
        let mut members = vec![s(name)];
        members.extend(extra);
        Class { template: vec![s(name)], members, mode: Mode::Orthogonal }
    }
}

/// Grows a template table to the target class sizes.
///
/// Member `i` (1-based) of a class stands in for template member
/// `min(i, t)` where `t` is the template class size. A template product
/// `r` is mapped back as follows: if `r` is the stand-in of an operand of
/// the same class, the result is that operand (the larger index when both
/// qualify); otherwise it is the target member in `r`'s template position,
/// or the first member when the target class is smaller.
fn extend_template(template: &CayleyTable, classes: &[Class]) -> Result<CayleyTable> {
    struct Target {
        class: usize,
        rep: usize,
    }
    let mut names = vec![s("0")];
    let mut targets = vec![Target { class: usize::MAX, rep: 0 }];
    let mut class_of_template = vec![usize::MAX; template.order()];
    let mut pos_in_class = vec![0; template.order()];
    class_of_template[0] = usize::MAX;
    let mut first_member = Vec::with_capacity(classes.len());
    for (ci, c) in classes.iter().enumerate() {
        for (k, t) in c.template.iter().enumerate() {
            let ti = template.index_of(t)?;
            class_of_template[ti] = ci;
            pos_in_class[ti] = k;
        }
        first_member.push(names.len());
        for (i, m) in c.members.iter().enumerate() {
            let rep = template.index_of(&c.template[i.min(c.template.len() - 1)])?;
            names.push(m.clone());
            targets.push(Target { class: ci, rep });
        }
    }
    let n = names.len();
    let mut rows = vec![vec![0; n]; n];
    for e in 1..n {
        for f in 1..n {
            let (te, tf) = (&targets[e], &targets[f]);
            let r = template.mul(te.rep, tf.rep);
            let rc = class_of_template[r];
            let value = if r == 0 {
                0
            } else if te.class == tf.class && classes[te.class].mode == Mode::Orthogonal && e != f {
                0
            } else {
                let e_self = te.class == rc && te.rep == r;
                let f_self = tf.class == rc && tf.rep == r;
                match (e_self, f_self) {
                    (true, true) => e.max(f),
                    (true, false) => e,
                    (false, true) => f,
                    (false, false) => {
                        let size = classes[rc].members.len();
                        if size == 0 {
                            return Err(Error::NotRealizable(format!(
                                "product {}*{} falls in an empty class",
                                names[e], names[f]
                            )));
                        }
                        let k = pos_in_class[r];
                        first_member[rc] + if k < size { k } else { 0 }
                    }
                }
            };
            rows[e][f] = value;
        }
    }
    CayleyTable::new(names, rows)
}

fn template(csv: &str) -> CayleyTable {
    CayleyTable::parse_csv(csv).expect("bundled template table parses")
}

fn fig4_table(caps: usize, u: usize, w: usize) -> Result<CayleyTable> {
    if u == 0 {
        // Drop the `a b d`-side caps `x*` and the end vertex on `a` from
        // the fig3 template, then rename `y -> c`, `v -> w`.
        let t3 = template(FIG3_TABLE_CSV);
        let keep = t3.set_of(&["0", "a", "d", "b", "y1", "y2", "v1", "v2"])?;
        let small = t3.restrict(keep)?;
        let grown = extend_template(
            &small,
            &[
                Class::single("a"),
                Class::single("d"),
                Class::single("b"),
                Class::param(&["y1", "y2"], "c", caps),
                Class::param(&["v1", "v2"], "w", w),
            ],
        )?;
        Ok(grown)
    } else {
        extend_template(
            &template(FIG4_TABLE_CSV),
            &[
                Class::single("a"),
                Class::single("b"),
                Class::single("d"),
                Class::param(&["c1", "c2"], "c", caps),
                Class::param(&["u1", "u2"], "u", u),
                Class::param(&["w1", "w2"], "w", w),
            ],
        )
    }
}

/// A multiplication table whose zero-divisor graph is
/// [`generate_graph`]`(spec)`, with elements in the graph's vertex order.
///
/// Every table is validated before it is returned. Specs outside the
/// realizable range (fig4 with end vertices on both `a` and `b`, caps on
/// `K_n + 2` away from `x1 x2`) are refused.
pub fn generate_table(spec: &FamilySpec) -> Result<CayleyTable> {
    spec.check()?;
    let table = match spec {
        FamilySpec::Fig3 { m, n, u, v } => extend_template(
            &template(FIG3_TABLE_CSV),
            &[
                Class::single("a"),
                Class::single("d"),
                Class::single("b"),
                Class::param(&["x1", "x2"], "x", *n),
                Class::param(&["y1", "y2"], "y", *m),
                Class::param(&["u1"], "u", *u),
                Class::param(&["v1", "v2"], "v", *v),
            ],
        )?,
        FamilySpec::Fig4 { u, v, .. } if *u > 0 && *v > 0 => {
            return Err(Error::NotRealizable(format!("{spec}: end vertices on both a and b admit no semigroup")))
        }
        FamilySpec::Fig4 { caps, u, v: 0, w } => fig4_table(*caps, *u, *w)?,
        FamilySpec::Fig4 { caps, v, w, .. } => {
            // End vertices on b only: build the mirror image and swap a <-> b.
            fig4_table(*caps, *v, *w)?.renamed(|n| match n {
                "a" => s("b"),
                "b" => s("a"),
                other => match other.strip_prefix('u') {
                    Some(rest) => format!("v{rest}"),
                    None => other.to_string(),
                },
            })?
        }
        FamilySpec::Fig5 { m, n, v } => extend_template(
            &template(FIG5_TABLE_CSV),
            &[
                Class::single("a"),
                Class::single("b"),
                Class::param(&["c1", "c2"], "c", *m),
                Class::param(&["v1", "v2"], "v", *v),
                Class::single("x1"),
                Class::single("x2"),
                Class::param(&["y1", "y2"], "y", *n),
            ],
        )?,
        FamilySpec::Kn2 { n, caps: 0, .. } => extend_template(
            &template(KN2_TABLE_CSV),
            &[
                Class::single("a"),
                Class::orthogonal("b", kn_names(*n).split_off(4)),
                Class::single("x1"),
                Class::single("x2"),
                Class::single("y1"),
                Class::single("y2"),
            ],
        )?,
        FamilySpec::Kn2 { n, caps, at } => {
            let on_ends = (at.0 == "x1" && at.1 == "x2") || (at.0 == "x2" && at.1 == "x1");
            if !on_ends {
                return Err(Error::NotRealizable(format!(
                    "{spec}: caps must sit on the two vertices carrying end vertices"
                )));
            }
            extend_template(
                &template(KN2_CAPS_TABLE_CSV),
                &[
                    Class::orthogonal("a", kn_names(*n).split_off(4)),
                    Class::single("b"),
                    Class::single("x1"),
                    Class::single("x2"),
                    Class::single("y1"),
                    Class::single("y2"),
                    Class::param(&["c1", "c2"], "c", *caps),
                ],
            )?
        }
    };
    let g = generate_graph(spec)?;
    let mut order = vec![s("0")];
    order.extend(g.names().iter().cloned());
    let table = table.reordered(&order)?;
    let report = algebra::validate(&table);
    if !report.is_valid() {
        return Err(Error::NotRealizable(format!(
            "{spec}: extended table fails validation at {:?}",
            report.first_failure
        )));
    }
    let h = graph::zero_divisor_graph_unchecked(&table);
    if let Some(diff) = h.difference(&g) {
        return Err(Error::NotRealizable(format!("{spec}: extended table has the wrong graph: {diff}")));
    }
    Ok(table)
}

/// The in-range parameter grid with each parameter at most `max`.
pub fn sweep_specs(max: usize) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for m in 1..=max {
        for n in 1..=max {
            for u in 0..=max {
                for v in 0..=max {
                    out.push(FamilySpec::Fig3 { m, n, u, v });
                }
            }
        }
    }
    for caps in 1..=max {
        for u in 0..=max {
            for v in 0..=max {
                for w in 1..=max {
                    out.push(FamilySpec::Fig4 { caps, u, v, w });
                }
            }
        }
    }
    for m in 1..=max {
        for n in 1..=max {
            for v in 0..=max {
                out.push(FamilySpec::Fig5 { m, n, v });
            }
        }
    }
    for n in 4..=max.max(4) + 1 {
        for caps in 0..=max {
            out.push(FamilySpec::kn2_caps(n, caps, "x1", "x2"));
        }
    }
    out
}
