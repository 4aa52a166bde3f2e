//! Finite posets, root systems and roots.
//!
//! A root system is a finite poset in which every principal up-set `p↑` is a
//! chain; a root additionally has a greatest element `⊤`. The Hasse diagram of
//! a root is therefore a rooted tree with `⊤` as its root.

mod enumerate;
mod format;
mod iso;

use std::collections::HashMap;

pub use enumerate::{all_roots, random_root};
pub use format::{parse_poset, write_poset};
pub(crate) use format::{content, is_identifier};
pub use iso::poset_iso;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootPoset {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    /// `leq[a][b]` iff `a ⊑ b`; reflexive and transitively closed.
    leq: Vec<Vec<bool>>,
    covers: Vec<(usize, usize)>,
}

/// Outcome of [`RootPoset::validate_root_system`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootCheck {
    Valid,
    /// `element↑` contains the incomparable pair `(a, b)`.
    UpSetNotChain {
        element: String,
        a: String,
        b: String,
    },
}

impl RootPoset {
    /// Builds a poset from ids and order pairs `(lower, upper)`; the order is
    /// the reflexive-transitive closure of the pairs. Cycles are rejected.
    pub fn new<S: AsRef<str>>(ids: &[S], relations: &[(S, S)]) -> Result<Self> {
        let ids: Vec<String> = ids.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::InvalidPoset(format!("duplicate element `{id}`")));
            }
        }
        let mut pairs = Vec::with_capacity(relations.len());
        for (lo, hi) in relations {
            let find = |s: &S| {
                index
                    .get(s.as_ref())
                    .copied()
                    .ok_or_else(|| Error::UnknownNode(s.as_ref().to_string()))
            };
            pairs.push((find(lo)?, find(hi)?));
        }
        Self::from_indices(ids, &pairs)
    }

    pub fn from_indices(ids: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = ids.len();
        let index = ids
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect::<HashMap<_, _>>();
        if index.len() != n {
            return Err(Error::InvalidPoset("duplicate element ids".into()));
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::InvalidPoset(format!(
                        "cycle through `{}` and `{}`",
                        ids[i], ids[j]
                    )));
                }
            }
        }
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b
                    && leq[a][b]
                    && !(0..n).any(|c| c != a && c != b && leq[a][c] && leq[c][b])
                {
                    covers.push((a, b));
                }
            }
        }
        Ok(RootPoset {
            ids,
            index,
            leq,
            covers,
        })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq[a][b] || self.leq[b][a]
    }

    /// Covering pairs `(lower, upper)`.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn lower_covers(&self, q: usize) -> Vec<usize> {
        self.covers
            .iter()
            .filter(|&&(_, hi)| hi == q)
            .map(|&(lo, _)| lo)
            .collect()
    }

    pub fn upper_covers(&self, p: usize) -> Vec<usize> {
        self.covers
            .iter()
            .filter(|&&(lo, _)| lo == p)
            .map(|&(_, hi)| hi)
            .collect()
    }

    /// `p↑`, sorted bottom-up when it is a chain.
    pub fn up_set(&self, p: usize) -> Vec<usize> {
        let mut up: Vec<usize> = (0..self.len()).filter(|&q| self.leq[p][q]).collect();
        up.sort_by_key(|&q| std::cmp::Reverse(self.up_count(q)));
        up
    }

    pub fn down_set(&self, p: usize) -> Vec<usize> {
        (0..self.len()).filter(|&q| self.leq[q][p]).collect()
    }

    /// `|p↑|`.
    pub fn up_count(&self, p: usize) -> usize {
        (0..self.len()).filter(|&q| self.leq[p][q]).count()
    }

    pub fn down_count(&self, p: usize) -> usize {
        (0..self.len()).filter(|&q| self.leq[q][p]).count()
    }

    pub fn validate_root_system(&self) -> RootCheck {
        for p in 0..self.len() {
            let up: Vec<usize> = (0..self.len()).filter(|&q| self.leq[p][q]).collect();
            for (k, &a) in up.iter().enumerate() {
                for &b in &up[k + 1..] {
                    if !self.comparable(a, b) {
                        return RootCheck::UpSetNotChain {
                            element: self.ids[p].clone(),
                            a: self.ids[a].clone(),
                            b: self.ids[b].clone(),
                        };
                    }
                }
            }
        }
        RootCheck::Valid
    }

    pub fn is_root_system(&self) -> bool {
        self.validate_root_system() == RootCheck::Valid
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&p| (0..self.len()).all(|q| !self.lt(p, q)))
            .collect()
    }

    /// `P^min`, in index order.
    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&p| (0..self.len()).all(|q| !self.lt(q, p)))
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.minimal().len()
    }

    /// The greatest element, if any.
    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&t| (0..self.len()).all(|p| self.leq[p][t]))
    }

    pub fn is_root(&self) -> bool {
        !self.is_empty() && self.top().is_some() && self.is_root_system()
    }

    /// Fails unless the poset is a finite root.
    pub fn require_root(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::InvalidPoset("empty poset".into()));
        }
        if let RootCheck::UpSetNotChain { element, a, b } = self.validate_root_system() {
            return Err(Error::InvalidPoset(format!(
                "`{element}`↑ is not a chain: `{a}` and `{b}` are incomparable"
            )));
        }
        self.top()
            .ok_or_else(|| Error::InvalidPoset("no greatest element".into()))
    }

    /// `min(a↑ ∩ b↑)` when it exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let common: Vec<usize> = (0..self.len())
            .filter(|&q| self.leq[a][q] && self.leq[b][q])
            .collect();
        common
            .iter()
            .copied()
            .find(|&q| common.iter().all(|&r| self.leq[q][r]))
    }

    pub fn join_ids(&self, a: &str, b: &str) -> Option<&str> {
        let j = self.join(self.index_of(a)?, self.index_of(b)?)?;
        Some(self.id(j))
    }

    /// `q` is a branching point if `{q} = min(p_1↑ ∩ p_2↑)` for some
    /// `p_1, p_2` strictly below `q`.
    pub fn is_branching_point(&self, q: usize) -> bool {
        let below: Vec<usize> = (0..self.len()).filter(|&p| self.lt(p, q)).collect();
        below.iter().enumerate().any(|(k, &p1)| {
            below[k + 1..]
                .iter()
                .any(|&p2| self.join(p1, p2) == Some(q))
        })
    }

    pub fn branching_points(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&q| self.is_branching_point(q))
            .collect()
    }

    /// The subposet on `keep` (any order; duplicates ignored) with the
    /// induced order.
    pub fn induced(&self, keep: &[usize]) -> RootPoset {
        let mut keep: Vec<usize> = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let ids = keep.iter().map(|&i| self.ids[i].clone()).collect();
        let mut pairs = Vec::new();
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                if i != j && self.leq[i][j] {
                    pairs.push((a, b));
                }
            }
        }
        RootPoset::from_indices(ids, &pairs).expect("induced order is a partial order")
    }

    /// `Br(P) = P^min ∪ {⊤} ∪ {branching points}`.
    pub fn branching_root(&self) -> RootPoset {
        self.induced(&self.branching_root_elements())
    }

    pub fn branching_root_elements(&self) -> Vec<usize> {
        let mut keep = self.minimal();
        keep.extend(self.top());
        keep.extend(self.branching_points());
        keep.sort_unstable();
        keep.dedup();
        keep
    }

    pub fn is_reduced(&self) -> bool {
        self.branching_root_elements().len() == self.len()
    }

    /// Hasse diagram in Graphviz DOT, bottom-to-top.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph \"{name}\" {{\n  rankdir=BT;\n  node [shape=plaintext];\n");
        for id in &self.ids {
            out.push_str(&format!("  \"{id}\";\n"));
        }
        let mut covers: Vec<(&str, &str)> = self
            .covers
            .iter()
            .map(|&(a, b)| (self.id(a), self.id(b)))
            .collect();
        covers.sort_unstable();
        for (a, b) in covers {
            out.push_str(&format!("  \"{a}\" -> \"{b}\";\n"));
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn chain(n: usize) -> RootPoset {
        let ids: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let rel: Vec<(String, String)> = (1..n).map(|i| (ids[i - 1].clone(), ids[i].clone())).collect();
        RootPoset::new(&ids, &rel).unwrap()
    }

    pub(crate) fn vee() -> RootPoset {
        RootPoset::new(&["a", "b", "t"], &[("a", "t"), ("b", "t")]).unwrap()
    }

    pub(crate) fn seven() -> RootPoset {
        RootPoset::new(
            &["p1", "p2", "p3", "p4", "q1", "q2", "m"],
            &[
                ("p1", "q1"),
                ("p2", "q1"),
                ("p3", "q2"),
                ("p4", "q2"),
                ("q1", "m"),
                ("q2", "m"),
            ],
        )
        .unwrap()
    }

    fn ids(p: &RootPoset, v: &[usize]) -> Vec<String> {
        v.iter().map(|&i| p.id(i).to_string()).collect()
    }

    #[test]
    fn validate_examples() {
        assert_eq!(chain(3).validate_root_system(), RootCheck::Valid);
        let n = RootPoset::new(&["a", "b", "c", "d"], &[("a", "c"), ("b", "c"), ("b", "d")]).unwrap();
        assert!(matches!(
            n.validate_root_system(),
            RootCheck::UpSetNotChain { ref element, .. } if element == "b"
        ));
        assert!(seven().is_root());
    }

    #[test]
    fn cycles_are_rejected() {
        let err = RootPoset::new(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, Error::InvalidPoset(_)));
        assert!(RootPoset::new(&["a", "a"], &[]).is_err());
        assert!(RootPoset::new(&["a"], &[("a", "z")]).is_err());
    }

    #[test]
    fn branching_point_examples() {
        assert!(chain(4).branching_points().is_empty());
        let v = vee();
        assert_eq!(ids(&v, &v.branching_points()), vec!["t"]);
        let s = seven();
        assert_eq!(ids(&s, &s.branching_points()), vec!["q1", "q2", "m"]);
    }

    #[test]
    fn branching_root_examples() {
        let c = chain(4);
        let br = c.branching_root();
        assert_eq!(br.ids(), &["c0", "c3"]);
        assert!(!c.is_reduced());
        assert!(vee().is_reduced());
        assert_eq!(vee().branching_root(), vee());
        let s = seven();
        assert!(s.is_reduced());
        assert_eq!(s.branching_root().len(), 7);
    }

    #[test]
    fn join_examples() {
        let s = seven();
        assert_eq!(s.join_ids("p1", "p1"), Some("p1"));
        assert_eq!(vee().join_ids("a", "b"), Some("t"));
        assert_eq!(s.join_ids("p1", "p3"), Some("m"));
        assert_eq!(s.join_ids("p1", "p2"), Some("q1"));
    }

    #[test]
    fn covers_and_counts() {
        let s = seven();
        assert_eq!(s.covers().len(), 6);
        assert_eq!(s.rank(), 4);
        assert_eq!(s.top().map(|t| s.id(t)), Some("m"));
        let p1 = s.index_of("p1").unwrap();
        assert_eq!(ids(&s, &s.up_set(p1)), vec!["p1", "q1", "m"]);
    }

    #[test]
    fn dot_output() {
        let dot = vee().to_dot("V");
        assert!(dot.contains("rankdir=BT"));
        assert!(dot.contains("\"a\" -> \"t\";"));
        assert_eq!(dot.matches("->").count(), 2);
    }
}
