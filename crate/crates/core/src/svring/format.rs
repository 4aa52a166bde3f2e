//! The `ringspec v1` text format.
//!
//! ```text
//! ringspec v1
//! leaf p1 depth 2          # a minimal prime with V_2 as its factor
//! leaf p2 depth 2
//! node q level 1           # a branching node with residue field level c(q)
//! cover p1 q
//! cover p2 q
//! top q prime              # `maximal` iff the top has level 0
//! value a p1 1 + x^(0,1)   # component of the named element `a` at leaf p1
//! ```
//!
//! Components omitted from a `value` group are zero.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::{RingSpec, TupleElt};
use crate::error::{Error, Result};
use crate::hahn::{parse_val_elt, ValElt};
use crate::rootsys::{content, is_identifier, RootPoset};
use crate::scalars::OrderedField;

pub const RING_HEADER: &str = "ringspec v1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueLine {
    pub name: String,
    pub leaf: String,
    pub expr: String,
    pub line: usize,
}

/// A parsed ring spec together with its named element literals.
#[derive(Clone, Debug)]
pub struct RingSpecFile {
    pub spec: Arc<RingSpec>,
    pub values: Vec<ValueLine>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn count(line: usize, s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| parse_err(line, format!("expected a nonnegative integer, found `{s}`")))
}

pub fn parse_ring_spec(text: &str) -> Result<RingSpecFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, content(l)))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, RING_HEADER)) => {}
        Some((n, other)) => {
            return Err(parse_err(n, format!("expected header `{RING_HEADER}`, found `{other}`")))
        }
        None => return Err(parse_err(1, "empty file")),
    }

    let mut ids: Vec<String> = Vec::new();
    let mut levels: Vec<usize> = Vec::new();
    let mut is_leaf: Vec<bool> = Vec::new();
    let mut decl_line: HashMap<String, usize> = HashMap::new();
    let mut covers: Vec<(String, String)> = Vec::new();
    let mut top: Option<(usize, String, bool)> = None;
    let mut values = Vec::new();

    for (n, line) in lines {
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.as_slice() {
            [kw @ ("leaf" | "node"), id, attr, c] => {
                let expected = if *kw == "leaf" { "depth" } else { "level" };
                if *attr != expected {
                    return Err(parse_err(n, format!("expected `{kw} <id> {expected} <n>`")));
                }
                if !is_identifier(id) {
                    return Err(parse_err(n, format!("invalid identifier `{id}`")));
                }
                if decl_line.insert(id.to_string(), n).is_some() {
                    return Err(parse_err(n, format!("duplicate node `{id}`")));
                }
                ids.push(id.to_string());
                levels.push(count(n, c)?);
                is_leaf.push(*kw == "leaf");
            }
            ["cover", lo, hi] => {
                for id in [lo, hi] {
                    if !decl_line.contains_key(*id) {
                        return Err(parse_err(n, format!("undeclared node `{id}`")));
                    }
                }
                covers.push((lo.to_string(), hi.to_string()));
            }
            ["top", id, flag] => {
                if top.is_some() {
                    return Err(parse_err(n, "duplicate `top` statement"));
                }
                let maximal = match *flag {
                    "maximal" => true,
                    "prime" => false,
                    other => {
                        return Err(parse_err(
                            n,
                            format!("top flag must be `maximal` or `prime`, found `{other}`"),
                        ))
                    }
                };
                top = Some((n, id.to_string(), maximal));
            }
            ["value", name, leaf, rest @ ..] if !rest.is_empty() => {
                if !is_identifier(name) {
                    return Err(parse_err(n, format!("invalid identifier `{name}`")));
                }
                let mut expr = line;
                for _ in 0..3 {
                    expr = expr.trim_start();
                    expr = &expr[expr.find(char::is_whitespace).unwrap_or(expr.len())..];
                }
                let expr = expr.trim().to_string();
                values.push(ValueLine {
                    name: name.to_string(),
                    leaf: leaf.to_string(),
                    expr,
                    line: n,
                });
            }
            [kw, ..] => {
                return Err(parse_err(n, format!("malformed or unrecognised statement `{kw}`")))
            }
            [] => unreachable!(),
        }
    }

    if ids.is_empty() {
        return Err(parse_err(1, "no nodes declared"));
    }
    let tree = RootPoset::new(&ids, &covers).map_err(|e| Error::InvalidSpec(e.to_string()))?;
    let spec = RingSpec::new(tree, levels)?;

    for (k, id) in ids.iter().enumerate() {
        let minimal = spec.leaf_index(id).is_some();
        if minimal != is_leaf[k] {
            let what = if minimal { "minimal, declare it as a leaf" } else { "not minimal" };
            return Err(parse_err(decl_line[id], format!("`{id}` is {what}")));
        }
    }
    let Some((tline, tid, maximal)) = top else {
        return Err(parse_err(1, "missing `top` statement"));
    };
    let actual_top = spec.tree().id(spec.top());
    if tid != actual_top {
        return Err(parse_err(tline, format!("`{tid}` is not the top; the top is `{actual_top}`")));
    }
    if maximal != spec.top_is_max() {
        let want = if spec.top_is_max() { "maximal" } else { "prime" };
        return Err(parse_err(
            tline,
            format!("top `{tid}` has level {}, so its flag must be `{want}`", spec.tree_level(spec.top())),
        ));
    }
    for v in &values {
        if spec.leaf_index(&v.leaf).is_none() {
            return Err(parse_err(v.line, format!("`{}` is not a leaf", v.leaf)));
        }
    }
    Ok(RingSpecFile {
        spec: spec.shared(),
        values,
    })
}

impl RingSpecFile {
    /// Builds the named elements, in order of first appearance.
    pub fn elements<F: OrderedField>(&self) -> Result<Vec<(String, TupleElt<F>)>> {
        let spec = &self.spec;
        let mut order: Vec<&str> = Vec::new();
        let mut comps: HashMap<&str, (usize, Vec<ValElt<F>>)> = HashMap::new();
        let mut seen = HashSet::new();
        for v in &self.values {
            let i = spec.leaf_index(&v.leaf).expect("checked at parse time");
            if !seen.insert((v.name.as_str(), i)) {
                return Err(parse_err(
                    v.line,
                    format!("second component for `{}` at leaf `{}`", v.name, v.leaf),
                ));
            }
            let entry = comps.entry(v.name.as_str()).or_insert_with(|| {
                order.push(v.name.as_str());
                (
                    v.line,
                    (0..spec.n()).map(|j| ValElt::zero(spec.depth(j))).collect(),
                )
            });
            entry.1[i] = parse_val_elt(&v.expr, spec.depth(i)).map_err(|m| parse_err(v.line, m))?;
        }
        order
            .into_iter()
            .map(|name| {
                let (line, c) = comps.remove(name).expect("recorded");
                spec.make_element(c)
                    .map(|e| (name.to_string(), e))
                    .map_err(|e| parse_err(line, format!("value `{name}`: {e}")))
            })
            .collect()
    }
}

/// Serializes a spec; leaves first in leaf order, then internal nodes.
pub fn write_ring_spec(spec: &RingSpec) -> String {
    let tree = spec.tree();
    let mut out = format!("{RING_HEADER}\n");
    for i in 0..spec.n() {
        out.push_str(&format!("leaf {} depth {}\n", spec.leaf_id(i), spec.depth(i)));
    }
    for q in spec.internal_nodes() {
        out.push_str(&format!("node {} level {}\n", tree.id(q), spec.tree_level(q)));
    }
    let mut covers: Vec<(&str, &str)> =
        tree.covers().iter().map(|&(a, b)| (tree.id(a), tree.id(b))).collect();
    covers.sort_unstable();
    for (a, b) in covers {
        out.push_str(&format!("cover {a} {b}\n"));
    }
    let flag = if spec.top_is_max() { "maximal" } else { "prime" };
    out.push_str(&format!("top {} {flag}\n", tree.id(spec.top())));
    out
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::scalars::Rational;

    const PAIR: &str = "\
ringspec v1
leaf p1 depth 1
leaf p2 depth 1
node m level 0
cover p1 m
cover p2 m
top m maximal
value a p1 1 + x
value a p2 1 + x^2
value e p1 x
";

    #[test]
    fn parses_and_builds_values() {
        let f = parse_ring_spec(PAIR).unwrap();
        assert_eq!(*f.spec, *pair());
        let els = f.elements::<Rational>().unwrap();
        assert_eq!(els.len(), 2);
        assert_eq!(els[0].0, "a");
        assert_eq!(els[1].1, pair().canonical_orthogonals()[0]);
    }

    #[test]
    fn round_trip() {
        for s in [pair(), rank4(), star(3, 2, 1), single(2)] {
            let text = write_ring_spec(&s);
            assert_eq!(*parse_ring_spec(&text).unwrap().spec, *s, "{text}");
        }
    }

    fn line_of(text: &str) -> Option<usize> {
        match parse_ring_spec(text) {
            Err(Error::Parse { line, .. }) => Some(line),
            _ => None,
        }
    }

    #[test]
    fn errors() {
        assert_eq!(line_of("poset v1\n"), Some(1));
        assert_eq!(line_of(&PAIR.replace("top m maximal", "top m prime")), Some(7));
        assert_eq!(line_of(&PAIR.replace("cover p2 m", "cover p2 z")), Some(6));
        assert_eq!(line_of(&PAIR.replace("leaf p2 depth 1", "leaf p2 depth one")), Some(3));
        assert_eq!(line_of(&PAIR.replace("top m maximal\n", "")), Some(1));
        assert_eq!(line_of(&PAIR.replace("value e p1 x", "value e m x")), Some(10));
        let bad_value = PAIR.replace("value e p1 x", "value e p1 1 + x");
        let f = parse_ring_spec(&bad_value).unwrap();
        assert!(matches!(f.elements::<Rational>(), Err(Error::Parse { line: 10, .. })));
        let garbage = PAIR.replace("value e p1 x", "value e p1 x^(");
        assert!(matches!(
            parse_ring_spec(&garbage).unwrap().elements::<Rational>(),
            Err(Error::Parse { line: 10, .. })
        ));
        let not_reduced = "ringspec v1\nleaf a depth 2\nleaf b depth 2\nnode q level 1\nnode t level 0\ncover a q\ncover q t\ncover b t\ntop t maximal\n";
        assert!(matches!(parse_ring_spec(not_reduced), Err(Error::InvalidSpec(_))));
    }
}
