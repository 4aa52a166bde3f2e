//! Finite-rank local rings glued from valuation rings along a labelled root
//! tree.
//!
//! A [`RingSpec`] is a reduced root tree whose leaves `i` carry depths `d_i`
//! and whose internal nodes `q` carry levels `c(q)`. The ring it presents is
//! the set of tuples `(a_i)` with `a_i ∈ V_{d_i}` such that, for all leaves
//! `i, j` with `q = join(i, j)`, the residues of `a_i` and `a_j` in
//! `K_{c(q)}` agree. Leaves are the minimal primes, internal nodes are the
//! branching ideals, and the maximal ideal `𝔪` is either `⊤` itself
//! (`c(⊤) = 0`) or an extra element above it.

mod corpus;
mod format;
mod tuple;

use std::sync::Arc;

pub use corpus::{all_specs, corpus_name, spec_corpus};
pub use format::{parse_ring_spec, write_ring_spec, RingSpecFile, ValueLine};
pub use tuple::TupleElt;

use crate::error::{Error, Result};
use crate::rootsys::RootPoset;

/// A prime of the ring that appears in its branching spectrum: a tree node,
/// or the maximal ideal when it lies strictly above `⊤`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Tree(usize),
    Max,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    tree: RootPoset,
    level: Vec<usize>,
    leaves: Vec<usize>,
    leaf_of: Vec<Option<usize>>,
    top: usize,
    max_id: String,
    joins: Vec<Vec<usize>>,
}

impl RingSpec {
    /// `level[q]` is `c(q)` for internal nodes and `d_i` for leaves.
    pub fn new(tree: RootPoset, level: Vec<usize>) -> Result<Self> {
        let top = tree
            .require_root()
            .map_err(|e| Error::InvalidSpec(e.to_string()))?;
        if level.len() != tree.len() {
            return Err(Error::InvalidSpec(format!(
                "{} levels for {} nodes",
                level.len(),
                tree.len()
            )));
        }
        if !tree.is_reduced() {
            let extra: Vec<&str> = (0..tree.len())
                .filter(|q| !tree.branching_root_elements().contains(q))
                .map(|q| tree.id(q))
                .collect();
            return Err(Error::InvalidSpec(format!(
                "tree is not reduced: `{}` is neither a leaf nor a branching node",
                extra.join("`, `")
            )));
        }
        let leaves = tree.minimal();
        if leaves.len() >= 2 && !tree.is_branching_point(top) {
            return Err(Error::InvalidSpec(format!(
                "top `{}` must be a branching node",
                tree.id(top)
            )));
        }
        for &i in &leaves {
            if level[i] == 0 {
                return Err(Error::InvalidSpec(format!(
                    "leaf `{}` must have positive depth",
                    tree.id(i)
                )));
            }
        }
        for &(lo, hi) in tree.covers() {
            if level[lo] <= level[hi] {
                return Err(Error::InvalidSpec(format!(
                    "levels must strictly decrease upward: `{}` has {} but `{}` has {}",
                    tree.id(lo),
                    level[lo],
                    tree.id(hi),
                    level[hi]
                )));
            }
        }
        let mut leaf_of = vec![None; tree.len()];
        for (k, &i) in leaves.iter().enumerate() {
            leaf_of[i] = Some(k);
        }
        let joins = leaves
            .iter()
            .map(|&i| {
                leaves
                    .iter()
                    .map(|&j| tree.join(i, j).expect("roots have joins"))
                    .collect()
            })
            .collect();
        let max_id = if level[top] == 0 {
            tree.id(top).to_string()
        } else {
            let mut name = "m".to_string();
            while tree.index_of(&name).is_some() {
                name.push('\'');
            }
            name
        };
        Ok(RingSpec {
            tree,
            level,
            leaves,
            leaf_of,
            top,
            max_id,
            joins,
        })
    }

    /// Builds a spec from named leaves with depths, named internal nodes with
    /// levels, and covering pairs `(lower, upper)`.
    pub fn build(
        leaves: &[(&str, usize)],
        nodes: &[(&str, usize)],
        covers: &[(&str, &str)],
    ) -> Result<Self> {
        let ids: Vec<&str> = leaves.iter().chain(nodes).map(|(id, _)| *id).collect();
        let level = leaves.iter().chain(nodes).map(|(_, c)| *c).collect();
        let tree = RootPoset::new(&ids, covers).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        let spec = Self::new(tree, level)?;
        let declared: Vec<&str> = leaves.iter().map(|(id, _)| *id).collect();
        let actual: Vec<&str> = spec.leaves.iter().map(|&i| spec.tree.id(i)).collect();
        if declared != actual {
            return Err(Error::InvalidSpec(format!(
                "declared leaves {declared:?} differ from the minimal nodes {actual:?}"
            )));
        }
        Ok(spec)
    }

    pub fn shared(self) -> Arc<Self> {
        Arc::new(self)
    }

    /// Number of leaves, the rank of the ring.
    pub fn n(&self) -> usize {
        self.leaves.len()
    }

    pub fn tree(&self) -> &RootPoset {
        &self.tree
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Whether `⊤` is the maximal ideal (`c(⊤) = 0`).
    pub fn top_is_max(&self) -> bool {
        self.level[self.top] == 0
    }

    pub fn max_id(&self) -> &str {
        &self.max_id
    }

    pub fn max_node(&self) -> Node {
        if self.top_is_max() {
            Node::Tree(self.top)
        } else {
            Node::Max
        }
    }

    /// Tree index of leaf `i`.
    pub fn leaf_node(&self, i: usize) -> usize {
        self.leaves[i]
    }

    pub fn leaf_id(&self, i: usize) -> &str {
        self.tree.id(self.leaves[i])
    }

    pub fn leaf_index(&self, id: &str) -> Option<usize> {
        self.leaf_of[self.tree.index_of(id)?]
    }

    pub fn leaf_of_node(&self, q: usize) -> Option<usize> {
        self.leaf_of[q]
    }

    /// `d_i`.
    pub fn depth(&self, i: usize) -> usize {
        self.level[self.leaves[i]]
    }

    pub fn depths(&self) -> Vec<usize> {
        (0..self.n()).map(|i| self.depth(i)).collect()
    }

    /// `c(q)`; the maximal ideal has level 0.
    pub fn level(&self, node: Node) -> usize {
        match node {
            Node::Tree(q) => self.level[q],
            Node::Max => 0,
        }
    }

    pub fn tree_level(&self, q: usize) -> usize {
        self.level[q]
    }

    /// Tree index of `join(i, j)` for leaves `i, j`.
    pub fn join_leaves(&self, i: usize, j: usize) -> usize {
        self.joins[i][j]
    }

    pub fn is_leaf_node(&self, q: usize) -> bool {
        self.leaf_of[q].is_some()
    }

    /// Internal tree nodes (the branching nodes), in tree index order.
    pub fn internal_nodes(&self) -> Vec<usize> {
        (0..self.tree.len())
            .filter(|&q| !self.is_leaf_node(q))
            .collect()
    }

    /// Leaves below or equal to `node`.
    pub fn leaves_below(&self, node: Node) -> Vec<usize> {
        match node {
            Node::Tree(q) => (0..self.n())
                .filter(|&i| self.tree.leq(self.leaves[i], q))
                .collect(),
            Node::Max => (0..self.n()).collect(),
        }
    }

    pub fn first_leaf_below(&self, node: Node) -> usize {
        self.leaves_below(node)[0]
    }

    pub fn node(&self, id: &str) -> Option<Node> {
        if id == self.max_id {
            return Some(self.max_node());
        }
        self.tree.index_of(id).map(Node::Tree)
    }

    pub fn node_id(&self, node: Node) -> &str {
        match node {
            Node::Tree(q) => self.tree.id(q),
            Node::Max => &self.max_id,
        }
    }

    /// Every tree node, followed by the maximal ideal when it is not `⊤`.
    pub fn all_nodes(&self) -> Vec<Node> {
        let mut v: Vec<Node> = (0..self.tree.len()).map(Node::Tree).collect();
        if !self.top_is_max() {
            v.push(Node::Max);
        }
        v
    }

    /// The greatest common depth `d_max`.
    pub fn max_depth(&self) -> usize {
        self.depths().into_iter().max().unwrap_or(0)
    }

    /// The residue depth at which leaf `i` meets `node`: `d_i − c(node)`.
    pub fn depth_at(&self, i: usize, node: Node) -> usize {
        self.depth(i) - self.level(node)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// `V ×_k V` with `d = 1`.
    pub fn pair() -> Arc<RingSpec> {
        RingSpec::build(&[("p1", 1), ("p2", 1)], &[("m", 0)], &[("p1", "m"), ("p2", "m")])
            .unwrap()
            .shared()
    }

    /// The rank-4 ring with two inner joins at level 1 under a top at level 0.
    pub fn rank4() -> Arc<RingSpec> {
        RingSpec::build(
            &[("p1", 2), ("p2", 2), ("p3", 2), ("p4", 2)],
            &[("q1", 1), ("q2", 1), ("m", 0)],
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
        .shared()
    }

    /// Star of `n` leaves of depth `d` joined at level `c`.
    pub fn star(n: usize, d: usize, c: usize) -> Arc<RingSpec> {
        let names: Vec<String> = (1..=n).map(|i| format!("p{i}")).collect();
        let leaves: Vec<(&str, usize)> = names.iter().map(|s| (s.as_str(), d)).collect();
        let covers: Vec<(&str, &str)> = names.iter().map(|s| (s.as_str(), "q")).collect();
        RingSpec::build(&leaves, &[("q", c)], &covers).unwrap().shared()
    }

    pub fn single(d: usize) -> Arc<RingSpec> {
        RingSpec::build(&[("p", d)], &[], &[]).unwrap().shared()
    }
}
