//! Finite commutative semigroups with zero, stored as full Cayley tables.
//!
//! Element index 0 is always the zero and is always named `0`.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::bits::{BitSet, MAX_BITS};
use crate::error::{parse_err, Error, Result};

/// Full multiplication table over elements `0..order`.
///
/// Construction checks shape, ranges and names. Commutativity, the zero
/// row and associativity are reported by [`validate`]; the CSV parser
/// additionally rejects non-symmetric tables and bad zero rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CayleyTable {
    names: Vec<String>,
    cells: Vec<usize>,
}

/// A failing associativity triple: `(i*j)*k = left` but `i*(j*k) = right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AssocFailure {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub left: usize,
    pub right: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub commutative: bool,
    pub zero_ok: bool,
    pub associative: bool,
    /// Lexicographically least failing triple.
    pub first_failure: Option<AssocFailure>,
    /// Every failing triple; filled only by [`validate_full`].
    pub failures: Vec<AssocFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.commutative && self.zero_ok && self.associative
    }
}

fn check_name(name: &str) -> std::result::Result<(), String> {
    if name.is_empty() {
        return Err("empty element name".into());
    }
    if name.chars().any(|c| c.is_whitespace() || c == ',') {
        return Err(format!("element name `{name}` contains whitespace or a comma"));
    }
    Ok(())
}

impl CayleyTable {
    /// Builds a table from names (zero first) and row-major products.
    pub fn new(names: Vec<String>, rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::MalformedTable("a table needs at least the zero".into()));
        }
        if n > MAX_BITS {
            return Err(Error::SizeLimit(format!("{n} elements, at most {MAX_BITS} supported")));
        }
        if names[0] != "0" {
            return Err(Error::MalformedTable(format!("element 0 must be named `0`, found `{}`", names[0])));
        }
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            check_name(name).map_err(Error::MalformedTable)?;
            if let Some(j) = seen.insert(name.as_str(), i) {
                return Err(Error::MalformedTable(format!("duplicate element name `{name}` at positions {j} and {i}")));
            }
        }
        if rows.len() != n {
            return Err(Error::MalformedTable(format!("{} rows for {n} elements", rows.len())));
        }
        let mut cells = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::MalformedTable(format!("product ({i},{j}) = {v} out of range")));
                }
            }
            cells.extend(row);
        }
        Ok(CayleyTable { names, cells })
    }

    /// Builds a table from a product function.
    pub fn from_fn(names: Vec<String>, mut f: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        let n = names.len();
        let rows = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        Self::new(names, rows)
    }

    /// The one-element semigroup `{0}`.
    pub fn trivial() -> Self {
        CayleyTable { names: vec!["0".into()], cells: vec![0] }
    }

    /// Number of elements, zero included.
    #[inline]
    pub fn order(&self) -> usize {
        self.names.len()
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.cells[i * self.names.len() + j]
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    /// Indices of the named elements.
    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> Result<BitSet> {
        names.iter().map(|n| self.index_of(n.as_ref())).collect()
    }

    pub fn all(&self) -> BitSet {
        BitSet::full(self.order())
    }

    pub fn names_of(&self, set: BitSet) -> Vec<&str> {
        set.iter().map(|i| self.name(i)).collect()
    }

    /// A copy with `i*j` and `j*i` set to `v`.
    pub fn with_product(&self, i: usize, j: usize, v: usize) -> Result<Self> {
        let n = self.order();
        if i >= n || j >= n || v >= n {
            return Err(Error::MalformedTable(format!("cell ({i},{j}) := {v} out of range")));
        }
        let mut t = self.clone();
        t.cells[i * n + j] = v;
        t.cells[j * n + i] = v;
        Ok(t)
    }

    /// The sub-table on `keep` (which must contain 0 and be closed).
    pub fn restrict(&self, keep: BitSet) -> Result<Self> {
        if !keep.contains(0) {
            return Err(Error::MalformedTable("restriction must keep the zero".into()));
        }
        if let Some((x, y, p)) = closure_witness(self, keep) {
            return Err(Error::MalformedTable(format!(
                "restriction not closed: {}*{} = {}",
                self.name(x),
                self.name(y),
                self.name(p)
            )));
        }
        let idx: Vec<usize> = keep.iter().collect();
        let mut pos = vec![usize::MAX; self.order()];
        for (k, &i) in idx.iter().enumerate() {
            pos[i] = k;
        }
        let names = idx.iter().map(|&i| self.names[i].clone()).collect();
        Self::from_fn(names, |a, b| pos[self.mul(idx[a], idx[b])])
    }

    /// Renames elements; `rename` must keep names unique and `0` fixed.
    pub fn renamed(&self, mut rename: impl FnMut(&str) -> String) -> Result<Self> {
        let names = self.names.iter().map(|n| rename(n)).collect();
        Self::new(names, self.rows())
    }

    /// Reorders elements to the given name order (a permutation of the names).
    pub fn reordered<S: AsRef<str>>(&self, order: &[S]) -> Result<Self> {
        if order.len() != self.order() {
            return Err(Error::MalformedTable("reorder must list every element".into()));
        }
        let idx = order.iter().map(|n| self.index_of(n.as_ref())).collect::<Result<Vec<_>>>()?;
        let mut pos = vec![usize::MAX; self.order()];
        for (k, &i) in idx.iter().enumerate() {
            pos[i] = k;
        }
        let names = idx.iter().map(|&i| self.names[i].clone()).collect();
        Self::from_fn(names, |a, b| pos[self.mul(idx[a], idx[b])])
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.order()).map(|r| r.to_vec()).collect()
    }

    /// Equality as name-level maps, ignoring element order.
    pub fn labeled_eq(&self, other: &CayleyTable) -> bool {
        if self.order() != other.order() {
            return false;
        }
        let map: Option<Vec<usize>> = self.names.iter().map(|n| other.index_of(n).ok()).collect();
        let Some(map) = map else { return false };
        (0..self.order()).all(|i| (0..self.order()).all(|j| map[self.mul(i, j)] == other.mul(map[i], map[j])))
    }

    /// First cell (in this table's order) where the two tables differ by name.
    pub fn first_difference(&self, other: &CayleyTable) -> Option<String> {
        for i in 0..self.order() {
            for j in 0..self.order() {
                let (a, b) = (self.name(i), self.name(j));
                let mine = self.name(self.mul(i, j));
                let theirs = match (other.index_of(a), other.index_of(b)) {
                    (Ok(x), Ok(y)) => other.name(other.mul(x, y)).to_string(),
                    _ => "<missing>".to_string(),
                };
                if mine != theirs {
                    return Some(format!("{a}*{b}: {mine} vs {theirs}"));
                }
            }
        }
        if self.order() != other.order() {
            return Some(format!("order {} vs {}", self.order(), other.order()));
        }
        None
    }

    /// Parses the comma-separated table format.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or_else(|| parse_err(1, 1, "empty table file"))?;
        let fields: Vec<&str> = header.split(',').collect();
        if fields[0] != "*" {
            return Err(parse_err(hline, 1, "header must start with `*`"));
        }
        let names: Vec<String> = fields[1..].iter().map(|s| s.to_string()).collect();
        if names.is_empty() {
            return Err(parse_err(hline, 2, "header lists no elements"));
        }
        if names[0] != "0" {
            return Err(parse_err(hline, 2, "first element must be `0`"));
        }
        if names.len() > MAX_BITS {
            return Err(Error::SizeLimit(format!("{} elements", names.len())));
        }
        let mut index = HashMap::new();
        for (k, name) in names.iter().enumerate() {
            check_name(name).map_err(|m| parse_err(hline, k + 2, m))?;
            if index.insert(name.as_str(), k).is_some() {
                return Err(parse_err(hline, k + 2, format!("duplicate element `{name}`")));
            }
        }
        let n = names.len();
        let mut rows: Vec<Option<(usize, Vec<usize>)>> = vec![None; n];
        for (line, l) in lines {
            let fields: Vec<&str> = l.split(',').collect();
            let Some(&row) = index.get(fields[0]) else {
                return Err(parse_err(line, 1, format!("unknown row element `{}`", fields[0])));
            };
            if rows[row].is_some() {
                return Err(parse_err(line, 1, format!("duplicate row for `{}`", fields[0])));
            }
            if fields.len() != n + 1 {
                return Err(parse_err(
                    line,
                    fields.len().min(n + 1) + 1,
                    format!("expected {} products, found {}", n, fields.len() - 1),
                ));
            }
            let mut vals = Vec::with_capacity(n);
            for (k, f) in fields[1..].iter().enumerate() {
                match index.get(f) {
                    Some(&v) => vals.push(v),
                    None => return Err(parse_err(line, k + 2, format!("product `{f}` is not an element"))),
                }
            }
            rows[row] = Some((line, vals));
        }
        let mut lines_of = vec![0; n];
        let mut full = Vec::with_capacity(n);
        for (k, r) in rows.into_iter().enumerate() {
            let (line, vals) = r.ok_or_else(|| parse_err(hline, k + 2, format!("missing row for `{}`", names[k])))?;
            lines_of[k] = line;
            full.push(vals);
        }
        for i in 0..n {
            for j in 0..n {
                if (i == 0 || j == 0) && full[i][j] != 0 {
                    return Err(parse_err(lines_of[i], j + 2, "zero row/column must be all `0`"));
                }
                if j < i && full[i][j] != full[j][i] {
                    return Err(parse_err(
                        lines_of[i],
                        j + 2,
                        format!(
                            "not symmetric: {}*{} = {} but {}*{} = {}",
                            names[i], names[j], names[full[i][j]], names[j], names[i], names[full[j][i]]
                        ),
                    ));
                }
            }
        }
        Self::new(names, full)
    }

    /// Emits the canonical comma-separated form (rows in header order).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("*");
        for n in &self.names {
            out.push(',');
            out.push_str(n);
        }
        out.push('\n');
        for i in 0..self.order() {
            out.push_str(&self.names[i]);
            for j in 0..self.order() {
                let _ = write!(out, ",{}", self.names[self.mul(i, j)]);
            }
            out.push('\n');
        }
        out
    }
}

fn scan(table: &CayleyTable, full: bool) -> ValidationReport {
    let n = table.order();
    let commutative = (0..n).all(|i| (0..i).all(|j| table.mul(i, j) == table.mul(j, i)));
    let zero_ok = (0..n).all(|i| table.mul(0, i) == 0 && table.mul(i, 0) == 0);
    let mut first_failure = None;
    let mut failures = Vec::new();
    'outer: for i in 0..n {
        for j in 0..n {
            let ij = table.mul(i, j);
            for k in 0..n {
                let left = table.mul(ij, k);
                let right = table.mul(i, table.mul(j, k));
                if left != right {
                    let f = AssocFailure { i, j, k, left, right };
                    first_failure.get_or_insert(f);
                    if !full {
                        break 'outer;
                    }
                    failures.push(f);
                }
            }
        }
    }
    ValidationReport { commutative, zero_ok, associative: first_failure.is_none(), first_failure, failures }
}

/// Checks commutativity, the zero row and all `n^3` associativity triples,
/// stopping at the first failure.
pub fn validate(table: &CayleyTable) -> ValidationReport {
    scan(table, false)
}

/// Like [`validate`] but collects every failing triple.
pub fn validate_full(table: &CayleyTable) -> ValidationReport {
    scan(table, true)
}

/// `{x : x*x = x}`.
pub fn idempotents(table: &CayleyTable) -> BitSet {
    (0..table.order()).filter(|&x| table.mul(x, x) == x).collect()
}

/// `x^k` for `k >= 1`.
pub fn power(table: &CayleyTable, x: usize, k: usize) -> usize {
    assert!(k >= 1, "powers start at 1");
    (1..k).fold(x, |acc, _| table.mul(acc, x))
}

/// An idempotent power of `x`, found the constructive way.
///
/// Takes the first repeat `x^m = x^n` (`m < n`, both minimal), sets
/// `r = n - m` and returns `x^(k*r)` for the least `k` with `k*r >= m`.
pub fn idempotent_power(table: &CayleyTable, x: usize) -> usize {
    let mut seen: Vec<usize> = Vec::new();
    let mut cur = x;
    let (m, n) = loop {
        if let Some(pos) = seen.iter().position(|&p| p == cur) {
            break (pos + 1, seen.len() + 1);
        }
        seen.push(cur);
        cur = table.mul(cur, x);
    };
    let r = n - m;
    let k = m.div_ceil(r);
    power(table, x, k * r)
}

/// `Ann(x) = {y : x*y = 0}`.
pub fn annihilator(table: &CayleyTable, x: usize) -> BitSet {
    (0..table.order()).filter(|&y| table.mul(x, y) == 0).collect()
}

/// Some `(x, y, x*y)` with `x, y` in `subset` and the product outside it.
pub fn closure_witness(table: &CayleyTable, subset: BitSet) -> Option<(usize, usize, usize)> {
    for x in subset {
        for y in subset {
            if y < x {
                continue;
            }
            let p = table.mul(x, y);
            if !subset.contains(p) {
                return Some((x, y, p));
            }
        }
    }
    None
}

/// Some `(s, t, s*t)` with `s` in `subset`, `t` anywhere, product outside.
pub fn ideal_witness(table: &CayleyTable, subset: BitSet) -> Option<(usize, usize, usize)> {
    for s in subset {
        for t in 0..table.order() {
            let p = table.mul(s, t);
            if !subset.contains(p) {
                return Some((s, t, p));
            }
        }
    }
    None
}

pub fn is_subsemigroup(table: &CayleyTable, subset: BitSet) -> bool {
    closure_witness(table, subset).is_none()
}

pub fn is_ideal(table: &CayleyTable, subset: BitSet) -> bool {
    ideal_witness(table, subset).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(ns: &[&str]) -> Vec<String> {
        ns.iter().map(|s| s.to_string()).collect()
    }

    /// `{0, e, n}` with `e` idempotent and `n*n = 0`.
    fn small() -> CayleyTable {
        let rows = vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 0]];
        CayleyTable::new(names(&["0", "e", "n"]), rows).unwrap()
    }

    #[test]
    fn trivial_table_is_valid() {
        let t = CayleyTable::trivial();
        let r = validate(&t);
        assert!(r.is_valid());
        assert_eq!(idempotents(&t).iter().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(
            CayleyTable::new(names(&["0", "a"]), vec![vec![0, 0], vec![0]]),
            Err(Error::MalformedTable(_))
        ));
        assert!(matches!(
            CayleyTable::new(names(&["0", "a"]), vec![vec![0, 0], vec![0, 2]]),
            Err(Error::MalformedTable(_))
        ));
        assert!(matches!(
            CayleyTable::new(names(&["z", "a"]), vec![vec![0, 0], vec![0, 1]]),
            Err(Error::MalformedTable(_))
        ));
        assert!(matches!(
            CayleyTable::new(names(&["0", "0"]), vec![vec![0, 0], vec![0, 1]]),
            Err(Error::MalformedTable(_))
        ));
    }

    #[test]
    fn detects_non_associative() {
        // 0, p, q with p*p = q, q*q = 0, p*q = p: (p*p)*q = 0 but p*(p*q) = q.
        let rows = vec![vec![0, 0, 0], vec![0, 2, 1], vec![0, 1, 0]];
        let t = CayleyTable::new(names(&["0", "p", "q"]), rows).unwrap();
        let r = validate(&t);
        assert!(r.commutative && r.zero_ok && !r.associative);
        let f = r.first_failure.unwrap();
        assert_eq!(t.mul(t.mul(f.i, f.j), f.k), f.left);
        assert_eq!(t.mul(f.i, t.mul(f.j, f.k)), f.right);
        let full = validate_full(&t);
        assert_eq!(full.failures[0], f);
        assert!(full.failures.len() >= 1);
    }

    #[test]
    fn idempotent_power_of_nilpotent_is_zero() {
        let t = small();
        assert_eq!(idempotent_power(&t, 2), 0);
        assert_eq!(idempotent_power(&t, 1), 1);
        assert_eq!(power(&t, 2, 3), 0);
    }

    #[test]
    fn idempotent_power_cyclic() {
        // 0 plus the cyclic semigroup x, x^2, x^3 = x (index 1, period 2).
        let rows = vec![vec![0, 0, 0], vec![0, 2, 1], vec![0, 1, 2]];
        let t = CayleyTable::new(names(&["0", "x", "x2"]), rows).unwrap();
        assert!(validate(&t).is_valid());
        // m = 1, n = 3, r = 2, k = 1: x^2.
        assert_eq!(idempotent_power(&t, 1), 2);
        assert_eq!(t.mul(2, 2), 2);
    }

    #[test]
    fn ideals_and_subsemigroups() {
        let t = small();
        assert!(is_ideal(&t, BitSet::singleton(0)));
        assert!(is_ideal(&t, [0, 2].into_iter().collect()));
        assert!(!is_ideal(&t, [0, 1].into_iter().collect()));
        assert!(is_subsemigroup(&t, [0, 1].into_iter().collect()));
        assert_eq!(annihilator(&t, 2).iter().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(annihilator(&t, 0), t.all());
    }

    #[test]
    fn csv_round_trip_and_errors() {
        let t = small();
        let text = t.to_csv();
        assert_eq!(text, "*,0,e,n\n0,0,0,0\ne,0,e,n\nn,0,n,0\n");
        let back = CayleyTable::parse_csv(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_csv(), text);

        let asym = "*,0,a,b\n0,0,0,0\na,0,a,b\nb,0,a,b\n";
        match CayleyTable::parse_csv(asym) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (4, 3)),
            other => panic!("expected parse error, got {other:?}"),
        }
        let badzero = "*,0,a\n0,0,a\na,a,a\n";
        assert!(matches!(CayleyTable::parse_csv(badzero), Err(Error::Parse { line: 2, column: 3, .. })));
        let unknown = "*,0,a\n0,0,0\na,0,q\n";
        assert!(matches!(CayleyTable::parse_csv(unknown), Err(Error::Parse { line: 3, column: 3, .. })));
        let missing = "*,0,a\n0,0,0\n";
        assert!(matches!(CayleyTable::parse_csv(missing), Err(Error::Parse { .. })));
        assert!(matches!(CayleyTable::parse_csv(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn labeled_equality_ignores_order() {
        let t = small();
        let r = t.reordered(&["0", "n", "e"]).unwrap();
        assert_ne!(r, t);
        assert!(r.labeled_eq(&t));
        assert!(r.first_difference(&t).is_none());
        let m = t.with_product(1, 1, 0).unwrap();
        assert!(!m.labeled_eq(&t));
    }
}
