//! A deterministic corpus of ring specs covering every reduced tree shape
//! with up to four leaves and depths up to three.

use std::collections::BTreeSet;
use std::fmt::Write;

use super::RingSpec;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Shape {
    Leaf,
    Node(Vec<Shape>),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Labeled {
    Leaf(usize),
    Node(usize, Vec<Labeled>),
}

fn leaf_count(s: &Shape) -> usize {
    match s {
        Shape::Leaf => 1,
        Shape::Node(ch) => ch.iter().map(leaf_count).sum(),
    }
}

/// Reduced tree shapes (every internal node has at least two children) with
/// exactly `n` leaves.
fn shapes(n: usize) -> Vec<Shape> {
    if n == 1 {
        return vec![Shape::Leaf];
    }
    let mut pool: Vec<Shape> = Vec::new();
    for k in 1..n {
        pool.extend(shapes(k));
    }
    let mut out = BTreeSet::new();
    let mut current = Vec::new();
    multisets(&pool, 0, n, &mut current, &mut out);
    out.into_iter().collect()
}

fn multisets(
    pool: &[Shape],
    start: usize,
    remaining: usize,
    current: &mut Vec<Shape>,
    out: &mut BTreeSet<Shape>,
) {
    if remaining == 0 {
        if current.len() >= 2 {
            let mut ch = current.clone();
            ch.sort();
            out.insert(Shape::Node(ch));
        }
        return;
    }
    for (k, s) in pool.iter().enumerate().skip(start) {
        let c = leaf_count(s);
        if c <= remaining {
            current.push(s.clone());
            multisets(pool, k, remaining - c, current, out);
            current.pop();
        }
    }
}

/// All labellings of `shape` with levels strictly above `parent`
/// (`None` at the top) and at most `max_depth`.
fn labelings(shape: &Shape, parent: Option<usize>, max_depth: usize) -> Vec<Labeled> {
    let lo = parent.map_or(0, |p| p + 1);
    match shape {
        Shape::Leaf => (lo.max(1)..=max_depth).map(Labeled::Leaf).collect(),
        Shape::Node(children) => {
            let mut out = BTreeSet::new();
            for c in lo..max_depth {
                let mut combos: Vec<Vec<Labeled>> = vec![Vec::new()];
                for child in children {
                    let opts = labelings(child, Some(c), max_depth);
                    combos = combos
                        .into_iter()
                        .flat_map(|prefix| {
                            opts.iter().map(move |o| {
                                let mut v = prefix.clone();
                                v.push(o.clone());
                                v
                            })
                        })
                        .collect();
                }
                for mut ch in combos {
                    ch.sort();
                    out.insert(Labeled::Node(c, ch));
                }
            }
            out.into_iter().collect()
        }
    }
}

fn to_spec(t: &Labeled) -> RingSpec {
    let mut leaves: Vec<(String, usize)> = Vec::new();
    let mut nodes: Vec<(String, usize)> = Vec::new();
    let mut covers: Vec<(String, String)> = Vec::new();

    fn walk(
        t: &Labeled,
        parent: Option<&str>,
        leaves: &mut Vec<(String, usize)>,
        nodes: &mut Vec<(String, usize)>,
        covers: &mut Vec<(String, String)>,
    ) {
        let name = match t {
            Labeled::Leaf(d) => {
                let name = format!("p{}", leaves.len() + 1);
                leaves.push((name.clone(), *d));
                name
            }
            Labeled::Node(c, children) => {
                let name = if parent.is_none() && *c == 0 {
                    "m".to_string()
                } else {
                    format!("q{}", nodes.len() + 1)
                };
                nodes.push((name.clone(), *c));
                for ch in children {
                    walk(ch, Some(&name), leaves, nodes, covers);
                }
                name
            }
        };
        if let Some(p) = parent {
            covers.push((name, p.to_string()));
        }
    }

    walk(t, None, &mut leaves, &mut nodes, &mut covers);
    let l: Vec<(&str, usize)> = leaves.iter().map(|(s, d)| (s.as_str(), *d)).collect();
    let n: Vec<(&str, usize)> = nodes.iter().map(|(s, d)| (s.as_str(), *d)).collect();
    let c: Vec<(&str, &str)> = covers.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    RingSpec::build(&l, &n, &c).expect("generated specs are valid")
}

/// Every labelled reduced tree with `2 ≤ n ≤ max_leaves` leaves and depths
/// at most `max_depth`, one per isomorphism class, in canonical order.
pub fn all_specs(max_leaves: usize, max_depth: usize) -> Vec<RingSpec> {
    let mut out = Vec::new();
    for n in 2..=max_leaves {
        for shape in shapes(n) {
            for t in labelings(&shape, None, max_depth) {
                out.push(to_spec(&t));
            }
        }
    }
    out
}

fn top_level(t: &Labeled) -> usize {
    match t {
        Labeled::Leaf(d) | Labeled::Node(d, _) => *d,
    }
}

/// The standard corpus: every spec with two or three leaves, and an evenly
/// strided selection of those with four leaves that keeps every shape and
/// every top level.
pub fn spec_corpus() -> Vec<RingSpec> {
    let mut out = Vec::new();
    for n in 2..=4 {
        let stride = match n {
            2 => 1,
            3 => 1,
            _ => 4,
        };
        for shape in shapes(n) {
            let labeled = labelings(&shape, None, 3);
            let levels: BTreeSet<usize> = labeled.iter().map(top_level).collect();
            for c in levels {
                out.extend(
                    labeled
                        .iter()
                        .filter(|t| top_level(t) == c)
                        .step_by(stride)
                        .map(to_spec),
                );
            }
        }
    }
    out
}

/// A compact description such as `0(1(2,2),2)`: each node's level followed by
/// its children; leaves show their depth.
pub fn corpus_name(spec: &RingSpec) -> String {
    fn go(spec: &RingSpec, q: usize, out: &mut String) {
        write!(out, "{}", spec.tree_level(q)).unwrap();
        let mut children = spec.tree().lower_covers(q);
        if children.is_empty() {
            return;
        }
        children.sort_unstable();
        out.push('(');
        for (k, c) in children.into_iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            go(spec, c, out);
        }
        out.push(')');
    }
    let mut s = String::new();
    go(spec, spec.top(), &mut s);
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_counts() {
        // reduced rooted trees by leaf count: 1, 1, 2, 5
        let counts: Vec<usize> = (1..=4).map(|n| shapes(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5]);
    }

    #[test]
    fn two_leaf_labellings() {
        // c(⊤) = 0: multisets of two depths from {1,2,3}: 6; c = 1: 3; c = 2: 1
        assert_eq!(labelings(&shapes(2)[0], None, 3).len(), 10);
    }

    #[test]
    fn corpus_is_large_and_varied() {
        let corpus = spec_corpus();
        assert!(corpus.len() >= 50, "{}", corpus.len());
        assert!(corpus.len() <= 120, "{}", corpus.len());
        let mut names = BTreeSet::new();
        for s in &corpus {
            assert!(names.insert(corpus_name(s)), "duplicate {}", corpus_name(s));
        }
        for n in 2..=4 {
            let of_n: Vec<&RingSpec> = corpus.iter().filter(|s| s.n() == n).collect();
            assert!(of_n.iter().any(|s| s.internal_nodes().len() == 1 && s.top_is_max()));
            assert!(of_n.iter().any(|s| s.internal_nodes().len() == 1 && !s.top_is_max()));
            if n > 2 {
                assert!(of_n.iter().any(|s| s.internal_nodes().len() > 1));
            }
        }
    }
}
