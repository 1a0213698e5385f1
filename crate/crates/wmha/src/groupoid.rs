//! Finite groupoids: the combinatorial substrate for the function and
//! convolution algebra instances.
//!
//! A groupoid is stored as a finite set of arrow labels together with
//! source/target/inverse maps and a partial composition table. Units
//! are themselves arrows. Composition follows the "p after q"
//! convention: `p·q` is defined exactly when `s(p) = t(q)`.
//!
//! The module provides [`validate`] (axioms with witnesses), the
//! generator constructors ([`pair_groupoid`], [`one_object_group`],
//! [`group_bundle`], [`disjoint_union`], [`action_groupoid`]) and a
//! JSON file format that accepts either explicit tables or a
//! `{"generator": …}` description.

use std::collections::{BTreeMap, BTreeSet};

use serde::Deserialize;

/// A finite groupoid with string-labelled arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Groupoid {
    arrows: Vec<String>,
    units: BTreeSet<String>,
    source: BTreeMap<String, String>,
    target: BTreeMap<String, String>,
    inverse: BTreeMap<String, String>,
    compose: BTreeMap<(String, String), String>,
}

impl Groupoid {
    /// Builds from raw tables without validation; call [`validate`]
    /// before trusting the result.
    pub fn from_tables(
        arrows: Vec<String>,
        units: impl IntoIterator<Item = String>,
        source: BTreeMap<String, String>,
        target: BTreeMap<String, String>,
        inverse: BTreeMap<String, String>,
        compose: BTreeMap<(String, String), String>,
    ) -> Self {
        Groupoid {
            arrows,
            units: units.into_iter().collect(),
            source,
            target,
            inverse,
            compose,
        }
    }

    /// All arrow labels in construction order.
    pub fn arrows(&self) -> &[String] {
        &self.arrows
    }

    /// All unit labels in sorted order.
    pub fn units(&self) -> impl Iterator<Item = &String> {
        self.units.iter()
    }

    pub fn unit_count(&self) -> usize {
        self.units.len()
    }

    pub fn is_unit(&self, p: &str) -> bool {
        self.units.contains(p)
    }

    pub fn source(&self, p: &str) -> &str {
        &self.source[p]
    }

    pub fn target(&self, p: &str) -> &str {
        &self.target[p]
    }

    pub fn inverse(&self, p: &str) -> &str {
        &self.inverse[p]
    }

    /// `p·q` if `s(p) = t(q)`, else `None`.
    pub fn compose(&self, p: &str, q: &str) -> Option<&str> {
        self.compose.get(&(p.to_string(), q.to_string())).map(String::as_str)
    }
}

/// One violated groupoid axiom with the arrows witnessing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub witness: String,
}

/// Validation report: empty violation list means the tables define a
/// groupoid.
#[derive(Clone, Debug, Default)]
pub struct GroupoidReport {
    pub violations: Vec<Violation>,
}

impl GroupoidReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn fail(&mut self, axiom: &'static str, witness: String) {
        self.violations.push(Violation { axiom, witness });
    }
}

/// Checks every groupoid axiom on the raw tables and reports each
/// violation with a witness.
pub fn validate(g: &Groupoid) -> GroupoidReport {
    let mut report = GroupoidReport::default();

    let arrow_set: BTreeSet<&String> = g.arrows.iter().collect();
    if arrow_set.len() != g.arrows.len() {
        let mut seen = BTreeSet::new();
        for a in &g.arrows {
            if !seen.insert(a) {
                report.fail("distinct-ids", format!("duplicate arrow id {a}"));
            }
        }
    }
    for u in &g.units {
        if !arrow_set.contains(u) {
            report.fail("references", format!("unit {u} is not an arrow"));
        }
    }
    let check_map = |name: &'static str,
                     map: &BTreeMap<String, String>,
                     report: &mut GroupoidReport| {
        for a in &g.arrows {
            if !map.contains_key(a) {
                report
                    .violations
                    .push(Violation { axiom: "references", witness: format!("{name} undefined on {a}") });
            }
        }
        for (a, v) in map {
            if !arrow_set.contains(a) || !arrow_set.contains(v) {
                report
                    .violations
                    .push(Violation { axiom: "references", witness: format!("{name}({a}) = {v} dangles") });
            }
        }
    };
    check_map("source", &g.source, &mut report);
    check_map("target", &g.target, &mut report);
    check_map("inverse", &g.inverse, &mut report);
    for ((p, q), r) in &g.compose {
        if !arrow_set.contains(p) || !arrow_set.contains(q) || !arrow_set.contains(r) {
            report.violations.push(Violation {
                axiom: "references",
                witness: format!("compose({p},{q}) = {r} dangles"),
            });
        }
    }
    if !report.ok() {
        // Structural references are broken; the axiom checks below
        // would only produce noise (or panic on missing keys).
        return report;
    }
    for a in &g.arrows {
        let (s, t) = (g.source(a), g.target(a));
        if !g.units.contains(s) {
            report.fail("source-is-unit", format!("s({a}) = {s} is not a unit"));
        }
        if !g.units.contains(t) {
            report.fail("target-is-unit", format!("t({a}) = {t} is not a unit"));
        }
    }
    for u in &g.units {
        if g.source(u) != u || g.target(u) != u {
            report.fail("unit-self-maps", format!("s/t of unit {u} differ from {u}"));
        }
    }

    // Composability: defined exactly when s(p) = t(q).
    for p in &g.arrows {
        for q in &g.arrows {
            let defined = g.compose(p, q).is_some();
            let composable = g.source(p) == g.target(q);
            if defined != composable {
                report.fail("composability", format!("({p},{q})"));
            }
        }
    }
    if !report.ok() {
        return report;
    }

    for p in &g.arrows {
        if let Some(r) = g.compose(p, g.source(p)) {
            if r != p {
                report.fail("right-unit-law", format!("{p}·s({p}) = {r}"));
            }
        }
        if let Some(r) = g.compose(g.target(p), p) {
            if r != p {
                report.fail("left-unit-law", format!("t({p})·{p} = {r}"));
            }
        }
        let inv = g.inverse(p);
        if g.inverse(inv) != p {
            report.fail("inverse-involution", p.clone());
        }
        if g.source(inv) != g.target(p) || g.target(inv) != g.source(p) {
            report.fail("inverse-exchanges-ends", p.clone());
        }
        if g.compose(p, inv) != Some(g.target(p)) {
            report.fail("inverse-right", format!("{p}·{inv}"));
        }
        if g.compose(inv, p) != Some(g.source(p)) {
            report.fail("inverse-left", format!("{inv}·{p}"));
        }
    }

    for p in &g.arrows {
        for q in &g.arrows {
            let Some(pq) = g.compose(p, q) else { continue };
            if g.source(pq) != g.source(q) || g.target(pq) != g.target(p) {
                report.fail("compose-ends", format!("({p},{q})"));
            }
            for r in &g.arrows {
                let Some(qr) = g.compose(q, r) else { continue };
                let left = g.compose(pq, r);
                let right = g.compose(p, qr);
                if left != right {
                    report.fail("associativity", format!("({p},{q},{r})"));
                }
            }
        }
    }
    report
}

/// Errors while constructing or loading a groupoid.
#[derive(Debug, thiserror::Error)]
pub enum GroupoidError {
    #[error("malformed group table: {0}")]
    MalformedGroup(String),
    #[error("malformed groupoid description: {0}")]
    Malformed(String),
    #[error("groupoid axioms violated: {0}")]
    Invalid(String),
    #[error("cannot parse groupoid file: {0}")]
    Parse(String),
}

fn checked(g: Groupoid) -> Result<Groupoid, GroupoidError> {
    let report = validate(&g);
    if report.ok() {
        Ok(g)
    } else {
        let list: Vec<String> = report
            .violations
            .iter()
            .map(|v| format!("{} [{}]", v.axiom, v.witness))
            .collect();
        Err(GroupoidError::Invalid(list.join("; ")))
    }
}

/// The pair groupoid on `n` points: arrows `(i,j)`, units `(i,i)`,
/// `(i,j)·(j,k) = (i,k)`.
pub fn pair_groupoid(n: usize) -> Groupoid {
    let label = |i: usize, j: usize| format!("({i},{j})");
    let mut arrows = Vec::new();
    let mut source = BTreeMap::new();
    let mut target = BTreeMap::new();
    let mut inverse = BTreeMap::new();
    let mut compose = BTreeMap::new();
    for i in 1..=n {
        for j in 1..=n {
            let a = label(i, j);
            arrows.push(a.clone());
            source.insert(a.clone(), label(j, j));
            target.insert(a.clone(), label(i, i));
            inverse.insert(a.clone(), label(j, i));
            for k in 1..=n {
                compose.insert((a.clone(), label(j, k)), label(i, k));
            }
        }
    }
    let units = (1..=n).map(|i| label(i, i));
    Groupoid::from_tables(arrows, units, source, target, inverse, compose)
}

/// A finite group given by a multiplication table:
/// `table[i][j]` is the label of `elements[i]·elements[j]`.
#[derive(Clone, Debug, Deserialize)]
pub struct GroupTable {
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
}

impl GroupTable {
    fn product(&self, x: &str, y: &str) -> Result<&str, GroupoidError> {
        let find = |l: &str| {
            self.elements
                .iter()
                .position(|e| e == l)
                .ok_or_else(|| GroupoidError::MalformedGroup(format!("unknown element {l}")))
        };
        let (i, j) = (find(x)?, find(y)?);
        self.table
            .get(i)
            .and_then(|row| row.get(j))
            .map(String::as_str)
            .ok_or_else(|| GroupoidError::MalformedGroup("ragged multiplication table".into()))
    }

    /// The identity element, determined from the table.
    fn identity(&self) -> Result<&str, GroupoidError> {
        self.elements
            .iter()
            .find(|e| {
                self.elements.iter().all(|x| {
                    self.product(e, x).map(|r| r == x).unwrap_or(false)
                        && self.product(x, e).map(|r| r == x.as_str()).unwrap_or(false)
                })
            })
            .map(String::as_str)
            .ok_or_else(|| GroupoidError::MalformedGroup("no identity element".into()))
    }

    fn inverse_of(&self, x: &str) -> Result<&str, GroupoidError> {
        let e = self.identity()?.to_string();
        self.elements
            .iter()
            .find(|y| self.product(x, y).map(|r| r == e).unwrap_or(false))
            .map(String::as_str)
            .ok_or_else(|| GroupoidError::MalformedGroup(format!("no inverse for {x}")))
    }

    fn check(&self) -> Result<(), GroupoidError> {
        if self.elements.is_empty() {
            return Err(GroupoidError::MalformedGroup("empty element list".into()));
        }
        let set: BTreeSet<&String> = self.elements.iter().collect();
        if set.len() != self.elements.len() {
            return Err(GroupoidError::MalformedGroup("duplicate element labels".into()));
        }
        for x in &self.elements {
            for y in &self.elements {
                let xy = self.product(x, y)?.to_string();
                if !set.contains(&xy) {
                    return Err(GroupoidError::MalformedGroup(format!(
                        "product {x}·{y} = {xy} not an element"
                    )));
                }
                for z in &self.elements {
                    let a = self.product(&xy, z)?.to_string();
                    let yz = self.product(y, z)?.to_string();
                    let b = self.product(x, &yz)?.to_string();
                    if a != b {
                        return Err(GroupoidError::MalformedGroup(format!(
                            "non-associative at ({x},{y},{z})"
                        )));
                    }
                }
            }
        }
        self.identity()?;
        for x in &self.elements {
            self.inverse_of(x)?;
        }
        Ok(())
    }
}

/// A group as a one-unit groupoid.
pub fn one_object_group(table: &GroupTable) -> Result<Groupoid, GroupoidError> {
    table.check()?;
    let e = table.identity()?.to_string();
    let mut source = BTreeMap::new();
    let mut target = BTreeMap::new();
    let mut inverse = BTreeMap::new();
    let mut compose = BTreeMap::new();
    for x in &table.elements {
        source.insert(x.clone(), e.clone());
        target.insert(x.clone(), e.clone());
        inverse.insert(x.clone(), table.inverse_of(x)?.to_string());
        for y in &table.elements {
            compose.insert((x.clone(), y.clone()), table.product(x, y)?.to_string());
        }
    }
    checked(Groupoid::from_tables(
        table.elements.clone(),
        [e],
        source,
        target,
        inverse,
        compose,
    ))
}

/// Disjoint union of two groupoids. Arrow labels must not clash; if
/// they do, the parts are prefixed `1.`/`2.` to keep them apart.
pub fn disjoint_union(g1: &Groupoid, g2: &Groupoid) -> Result<Groupoid, GroupoidError> {
    let clash = g1.arrows.iter().any(|a| g2.arrows.contains(a));
    let rename = |g: &Groupoid, prefix: &str| -> Groupoid {
        if !clash {
            return g.clone();
        }
        let re = |l: &String| format!("{prefix}{l}");
        Groupoid {
            arrows: g.arrows.iter().map(re).collect(),
            units: g.units.iter().map(re).collect(),
            source: g.source.iter().map(|(k, v)| (re(k), re(v))).collect(),
            target: g.target.iter().map(|(k, v)| (re(k), re(v))).collect(),
            inverse: g.inverse.iter().map(|(k, v)| (re(k), re(v))).collect(),
            compose: g
                .compose
                .iter()
                .map(|((p, q), r)| ((re(p), re(q)), re(r)))
                .collect(),
        }
    };
    let a = rename(g1, "1.");
    let b = rename(g2, "2.");
    let mut arrows = a.arrows.clone();
    arrows.extend(b.arrows.iter().cloned());
    let merge = |x: &BTreeMap<String, String>, y: &BTreeMap<String, String>| {
        let mut m = x.clone();
        m.extend(y.iter().map(|(k, v)| (k.clone(), v.clone())));
        m
    };
    let mut compose = a.compose.clone();
    compose.extend(b.compose.iter().map(|(k, v)| (k.clone(), v.clone())));
    checked(Groupoid::from_tables(
        arrows,
        a.units.iter().chain(b.units.iter()).cloned(),
        merge(&a.source, &b.source),
        merge(&a.target, &b.target),
        merge(&a.inverse, &b.inverse),
        compose,
    ))
}

/// A bundle of groups: disjoint union of one-object groupoids, with
/// labels `name.element`.
pub fn group_bundle(groups: &[(String, GroupTable)]) -> Result<Groupoid, GroupoidError> {
    if groups.is_empty() {
        return Err(GroupoidError::Malformed("empty group bundle".into()));
    }
    let mut acc: Option<Groupoid> = None;
    for (name, table) in groups {
        let renamed = GroupTable {
            elements: table.elements.iter().map(|e| format!("{name}.{e}")).collect(),
            table: table
                .table
                .iter()
                .map(|row| row.iter().map(|e| format!("{name}.{e}")).collect())
                .collect(),
        };
        let g = one_object_group(&renamed)?;
        acc = Some(match acc {
            None => g,
            Some(prev) => disjoint_union(&prev, &g)?,
        });
    }
    Ok(acc.unwrap())
}

/// Action groupoid of a group acting on points `1..=n` by
/// permutations: arrows `(g,x)` with source `x`, target `g·x`, and
/// `(g,x')·(h,x) = (gh,x)` when `x' = h·x`.
///
/// `action[g]` lists the images of `1..=n` under `g` (1-based).
pub fn action_groupoid(
    table: &GroupTable,
    points: usize,
    action: &BTreeMap<String, Vec<usize>>,
) -> Result<Groupoid, GroupoidError> {
    table.check()?;
    if points == 0 {
        return Err(GroupoidError::Malformed("action on zero points".into()));
    }
    let act = |g: &str, x: usize| -> Result<usize, GroupoidError> {
        let perm = action
            .get(g)
            .ok_or_else(|| GroupoidError::Malformed(format!("no action for element {g}")))?;
        perm.get(x - 1)
            .copied()
            .filter(|&y| (1..=points).contains(&y))
            .ok_or_else(|| GroupoidError::Malformed(format!("action of {g} undefined on {x}")))
    };
    let e = table.identity()?.to_string();
    // Must be an action: e acts trivially and g(h(x)) = (gh)(x).
    for x in 1..=points {
        if act(&e, x)? != x {
            return Err(GroupoidError::Malformed("identity does not act trivially".into()));
        }
        for g in &table.elements {
            for h in &table.elements {
                let gh = table.product(g, h)?.to_string();
                if act(g, act(h, x)?)? != act(&gh, x)? {
                    return Err(GroupoidError::Malformed(format!(
                        "not an action at ({g},{h},{x})"
                    )));
                }
            }
        }
    }

    let label = |g: &str, x: usize| format!("({g},{x})");
    let unit = |x: usize| label(&e, x);
    let mut arrows = Vec::new();
    let mut source = BTreeMap::new();
    let mut target = BTreeMap::new();
    let mut inverse = BTreeMap::new();
    let mut compose = BTreeMap::new();
    for g in &table.elements {
        for x in 1..=points {
            let a = label(g, x);
            arrows.push(a.clone());
            source.insert(a.clone(), unit(x));
            target.insert(a.clone(), unit(act(g, x)?));
            inverse.insert(a.clone(), label(table.inverse_of(g)?, act(g, x)?));
        }
    }
    for g in &table.elements {
        for h in &table.elements {
            let gh = table.product(g, h)?.to_string();
            for x in 1..=points {
                // (g, h·x) · (h, x) = (gh, x).
                compose.insert((label(g, act(h, x)?), label(h, x)), label(&gh, x));
            }
        }
    }
    checked(Groupoid::from_tables(
        arrows,
        (1..=points).map(unit),
        source,
        target,
        inverse,
        compose,
    ))
}

// ---------------------------------------------------------------------
// File format
// ---------------------------------------------------------------------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupoidFile {
    #[serde(default)]
    generator: Option<GeneratorSpec>,
    #[serde(default)]
    arrows: Option<Vec<String>>,
    #[serde(default)]
    units: Option<Vec<String>>,
    #[serde(default)]
    source: Option<BTreeMap<String, String>>,
    #[serde(default)]
    target: Option<BTreeMap<String, String>>,
    #[serde(default)]
    inverse: Option<BTreeMap<String, String>>,
    #[serde(default)]
    compose: Option<Vec<[String; 3]>>,
}

/// Generator descriptions accepted by the file format.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GeneratorSpec {
    /// Pair groupoid on `points` points.
    Pair { points: usize },
    /// A group as a one-unit groupoid.
    Group {
        #[serde(flatten)]
        table: GroupTable,
    },
    /// Bundle of named groups.
    Bundle { groups: Vec<NamedGroup> },
    /// Disjoint union of further generators.
    Union { parts: Vec<GeneratorSpec> },
    /// Action groupoid of a group on `points` points.
    Action {
        group: GroupTable,
        points: usize,
        action: BTreeMap<String, Vec<usize>>,
    },
}

#[derive(Clone, Debug, Deserialize)]
pub struct NamedGroup {
    pub name: String,
    #[serde(flatten)]
    pub table: GroupTable,
}

/// Expands a generator description into a validated groupoid.
pub fn build_generator(spec: &GeneratorSpec) -> Result<Groupoid, GroupoidError> {
    match spec {
        GeneratorSpec::Pair { points } => {
            if *points == 0 {
                return Err(GroupoidError::Malformed("pair groupoid on zero points".into()));
            }
            Ok(pair_groupoid(*points))
        }
        GeneratorSpec::Group { table } => one_object_group(table),
        GeneratorSpec::Bundle { groups } => {
            let named: Vec<(String, GroupTable)> = groups
                .iter()
                .map(|g| (g.name.clone(), g.table.clone()))
                .collect();
            group_bundle(&named)
        }
        GeneratorSpec::Union { parts } => {
            if parts.is_empty() {
                return Err(GroupoidError::Malformed("empty union".into()));
            }
            let mut acc: Option<Groupoid> = None;
            for part in parts {
                let g = build_generator(part)?;
                acc = Some(match acc {
                    None => g,
                    Some(prev) => disjoint_union(&prev, &g)?,
                });
            }
            Ok(acc.unwrap())
        }
        GeneratorSpec::Action { group, points, action } => {
            action_groupoid(group, *points, action)
        }
    }
}

/// Parses a groupoid from its JSON file form (either explicit tables
/// or a generator description) and validates it.
pub fn from_json(value: &serde_json::Value) -> Result<Groupoid, GroupoidError> {
    let file: GroupoidFile = serde_json::from_value(value.clone())
        .map_err(|e| GroupoidError::Parse(e.to_string()))?;
    if let Some(generator) = &file.generator {
        if file.arrows.is_some() {
            return Err(GroupoidError::Parse(
                "give either explicit tables or a generator, not both".into(),
            ));
        }
        return build_generator(generator);
    }
    let arrows = file
        .arrows
        .ok_or_else(|| GroupoidError::Parse("missing arrows".into()))?;
    let units = file
        .units
        .ok_or_else(|| GroupoidError::Parse("missing units".into()))?;
    let source = file
        .source
        .ok_or_else(|| GroupoidError::Parse("missing source map".into()))?;
    let target = file
        .target
        .ok_or_else(|| GroupoidError::Parse("missing target map".into()))?;
    let inverse = file
        .inverse
        .ok_or_else(|| GroupoidError::Parse("missing inverse map".into()))?;
    let compose = file
        .compose
        .ok_or_else(|| GroupoidError::Parse("missing compose table".into()))?
        .into_iter()
        .map(|[p, q, r]| ((p, q), r))
        .collect();
    checked(Groupoid::from_tables(arrows, units, source, target, inverse, compose))
}

/// The cyclic group of order `n` as a [`GroupTable`]; elements are
/// `g0..g{n-1}` with `g0` the identity.
pub fn cyclic_group_table(n: usize) -> GroupTable {
    assert!(n > 0);
    let label = |i: usize| format!("g{i}");
    GroupTable {
        elements: (0..n).map(label).collect(),
        table: (0..n)
            .map(|i| (0..n).map(|j| label((i + j) % n)).collect())
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_groupoid_shape() {
        let g = pair_groupoid(2);
        assert!(validate(&g).ok());
        assert_eq!(g.arrows().len(), 4);
        assert_eq!(g.unit_count(), 2);
        assert_eq!(g.compose("(1,2)", "(2,1)"), Some("(1,1)"));
        assert_eq!(g.compose("(1,2)", "(1,2)"), None);
        assert_eq!(g.source("(1,2)"), "(2,2)");
        assert_eq!(g.target("(1,2)"), "(1,1)");
        assert_eq!(g.inverse("(1,2)"), "(2,1)");
    }

    #[test]
    fn pair_groupoid_n_counts() {
        for n in 1..=4 {
            let g = pair_groupoid(n);
            assert!(validate(&g).ok());
            assert_eq!(g.arrows().len(), n * n);
            assert_eq!(g.unit_count(), n);
        }
    }

    #[test]
    fn cyclic_groups_are_one_unit_groupoids() {
        for n in 1..=4 {
            let g = one_object_group(&cyclic_group_table(n)).unwrap();
            assert!(validate(&g).ok());
            assert_eq!(g.unit_count(), 1);
            assert_eq!(g.arrows().len(), n);
        }
    }

    #[test]
    fn union_counts() {
        let z2 = one_object_group(&cyclic_group_table(2)).unwrap();
        let triv = one_object_group(&cyclic_group_table(1)).unwrap();
        let g = disjoint_union(&z2, &triv).unwrap();
        assert_eq!(g.arrows().len(), 3);
        assert_eq!(g.unit_count(), 2);
        assert!(validate(&g).ok());
    }

    #[test]
    fn action_groupoid_swap() {
        let z2 = cyclic_group_table(2);
        let action: BTreeMap<String, Vec<usize>> = [
            ("g0".to_string(), vec![1, 2]),
            ("g1".to_string(), vec![2, 1]),
        ]
        .into_iter()
        .collect();
        let g = action_groupoid(&z2, 2, &action).unwrap();
        assert!(validate(&g).ok());
        assert_eq!(g.arrows().len(), 4);
        assert_eq!(g.unit_count(), 2);
        // (g1,1) goes from point 1 to point 2.
        assert_eq!(g.source("(g1,1)"), "(g0,1)");
        assert_eq!(g.target("(g1,1)"), "(g0,2)");
        // (g1,2)·(g1,1) = (g0,1).
        assert_eq!(g.compose("(g1,2)", "(g1,1)"), Some("(g0,1)"));
    }

    #[test]
    fn validate_catches_bad_composability() {
        let mut g = pair_groupoid(2);
        // Define a composition that should not exist.
        g.compose
            .insert(("(1,2)".into(), "(1,2)".into()), "(1,1)".into());
        let report = validate(&g);
        assert!(!report.ok());
        assert!(report
            .violations
            .iter()
            .any(|v| v.axiom == "composability" && v.witness.contains("(1,2)")));
    }

    #[test]
    fn json_round_trip_generator() {
        let value: serde_json::Value =
            serde_json::json!({"generator": {"kind": "pair", "points": 3}});
        let g = from_json(&value).unwrap();
        assert_eq!(g.arrows().len(), 9);

        let value = serde_json::json!({"generator": {
            "kind": "union",
            "parts": [
                {"kind": "group", "elements": ["e","g"],
                 "table": [["e","g"],["g","e"]]},
                {"kind": "group", "elements": ["E","a","b"],
                 "table": [["E","a","b"],["a","b","E"],["b","E","a"]]},
            ]}});
        let g = from_json(&value).unwrap();
        assert_eq!(g.arrows().len(), 5);
        assert_eq!(g.unit_count(), 2);
    }

    #[test]
    fn json_explicit_tables() {
        // Z1: a single unit arrow.
        let value = serde_json::json!({
            "arrows": ["e"], "units": ["e"],
            "source": {"e": "e"}, "target": {"e": "e"},
            "inverse": {"e": "e"}, "compose": [["e","e","e"]],
        });
        let g = from_json(&value).unwrap();
        assert!(validate(&g).ok());

        // Broken: missing inverse entry.
        let value = serde_json::json!({
            "arrows": ["e"], "units": ["e"],
            "source": {"e": "e"}, "target": {"e": "e"},
            "inverse": {}, "compose": [["e","e","e"]],
        });
        assert!(from_json(&value).is_err());
    }
}
