use std::fmt;
use std::sync::Arc;

use rand::Rng;

use super::{sample_non_unit, test_elements, Check, SampleConfig};
use crate::error::{Error, Result};
use crate::rootsys::RootPoset;
use crate::scalars::OrderedField;
use crate::svring::{Node, RingSpec, TupleElt};

const SALT_RANK: u64 = 1;
const SALT_ANN: u64 = 2;
const SALT_SV: u64 = 3;
const SALT_BRANCH: u64 = 4;
const SALT_MAX: u64 = 5;
const SALT_TYPE: u64 = 6;
const SALT_GOURSAT: u64 = 7;
const SALT_LOCAL: u64 = 8;
const SALT_PAIRS: u64 = 9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub rank: usize,
    pub check: Check,
}

/// The rank `n` with its witnesses: `e_1, …, e_n` are nonzero and pairwise
/// orthogonal, and no sampled nonzero `b` annihilates all of them.
pub fn rank_check<F: OrderedField>(spec: &Arc<RingSpec>, cfg: &SampleConfig) -> RankReport {
    let n = spec.n();
    let e = spec.canonical_orthogonals::<F>();
    let check = (|| {
        if let Some(i) = e.iter().position(TupleElt::is_zero) {
            return Check::fail(format!("e_{} is zero", i + 1));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if !(&e[i] * &e[j]).is_zero() {
                    return Check::fail(format!("e_{} e_{} != 0", i + 1, j + 1));
                }
            }
        }
        for b in test_elements::<F>(spec, cfg, SALT_RANK) {
            if !b.is_zero() && e.iter().all(|ei| (&b * ei).is_zero()) {
                return Check::fail(format!("nonzero {b} annihilates every e_i"));
            }
        }
        Check::pass(format!(
            "{n} nonzero pairwise orthogonal elements, maximal on {} samples",
            cfg.trials
        ))
    })();
    RankReport { rank: n, check }
}

/// `Ann(e_i)` is the minimal prime at leaf `i`: `b e_i = 0 ⇔ b_i = 0`.
pub fn annihilator_check<F: OrderedField>(spec: &Arc<RingSpec>, cfg: &SampleConfig) -> Check {
    let e = spec.canonical_orthogonals::<F>();
    for b in test_elements::<F>(spec, cfg, SALT_ANN) {
        for (i, ei) in e.iter().enumerate() {
            let ann = (&b * ei).is_zero();
            let prime = spec.in_prime(&b, Node::Tree(spec.leaf_node(i)));
            if ann != b.component(i).is_zero() || ann != prime {
                return Check::fail(format!("Ann(e_{}) disagrees with leaf prime at {b}", i + 1));
            }
        }
    }
    Check::pass(format!("b e_i = 0 iff b_i = 0 on {} samples", cfg.trials))
}

/// The ring is local and reduced on samples: `a` or `1 − a` is a unit,
/// `a² = 0 ⇒ a = 0`, and no element mixes unit and non-unit components.
pub fn local_reduced_check<F: OrderedField>(spec: &Arc<RingSpec>, cfg: &SampleConfig) -> Check {
    let one = spec.one::<F>();
    for a in test_elements::<F>(spec, cfg, SALT_LOCAL) {
        if !a.is_unit() && !(&one - &a).is_unit() {
            return Check::fail(format!("neither {a} nor 1 - a is a unit"));
        }
        if (&a * &a).is_zero() && !a.is_zero() {
            return Check::fail(format!("{a} is nilpotent"));
        }
        let units = a.components().iter().filter(|c| c.is_unit()).count();
        if units != 0 && units != spec.n() {
            return Check::fail(format!("{a} mixes unit and non-unit components"));
        }
    }
    Check::pass(format!("local and reduced on {} samples", cfg.trials))
}

#[derive(Clone, Debug)]
pub struct SvReport<F> {
    pub check: Check,
    pub pairs: usize,
    pub counterexample: Option<(TupleElt<F>, TupleElt<F>, usize)>,
}

/// Checks that `b e_i | c e_i` or `c e_i | b e_i` in the ring for sampled
/// pairs and every leaf, with the quotient lifted to a ring element.
pub fn sv_check<F: OrderedField>(spec: &Arc<RingSpec>, cfg: &SampleConfig) -> SvReport<F> {
    let e = spec.canonical_orthogonals::<F>();
    let boundary = super::boundary_elements::<F>(spec);
    let mut rng = cfg.rng(SALT_SV);
    let mut pairs: Vec<(TupleElt<F>, TupleElt<F>)> = Vec::new();
    for b in &boundary {
        pairs.push((b.clone(), b.clone()));
        for c in &boundary {
            pairs.push((b.clone(), c.clone()));
        }
    }
    for _ in 0..cfg.trials {
        let b = spec.sample(&mut rng, cfg.size);
        let c = if rng.gen_bool(0.1) {
            b.clone()
        } else {
            spec.sample(&mut rng, cfg.size)
        };
        pairs.push((b, c));
    }
    let total = pairs.len();
    for (b, c) in pairs {
        for (i, ei) in e.iter().enumerate() {
            let bi = &b * ei;
            let ci = &c * ei;
            let witnessed = [(&bi, &ci, b.component(i), c.component(i)), (&ci, &bi, c.component(i), b.component(i))]
                .into_iter()
                .any(|(u, v, ui, vi)| match ui.divides(vi) {
                    Some(q) => spec.lift(i, &q).is_ok_and(|lq| &(u * &lq) == v),
                    None => false,
                });
            if !witnessed {
                return SvReport {
                    check: Check::fail(format!(
                        "no divisibility between b = {b} and c = {c} at leaf {}",
                        spec.leaf_id(i)
                    )),
                    pairs: total,
                    counterexample: Some((b, c, i)),
                };
            }
        }
    }
    SvReport {
        check: Check::pass(format!("{total} pairs, divisibility witnessed at every leaf")),
        pairs: total,
        counterexample: None,
    }
}

/// The branching ideals: every internal tree node.
pub fn branching_ideals(spec: &RingSpec) -> Vec<Node> {
    spec.internal_nodes().into_iter().map(Node::Tree).collect()
}

/// `BrSpec`: leaves, branching nodes and the maximal ideal, ordered by the
/// tree with `𝔪` on top.
pub fn brspec(spec: &RingSpec) -> RootPoset {
    let tree = spec.tree();
    let mut ids: Vec<String> = tree.ids().to_vec();
    let mut covers: Vec<(usize, usize)> = tree.covers().to_vec();
    if !spec.top_is_max() {
        ids.push(spec.max_id().to_string());
        covers.push((spec.top(), ids.len() - 1));
    }
    RootPoset::from_indices(ids, &covers).expect("a tree with a new top is a poset")
}

/// Decides `a ∈ Ann(e_i) + Ann(e_j)` by the residue at `join(i, j)`; on
/// success returns `(x, y)` with `a = x + y`, `x e_i = 0` and `y e_j = 0`.
pub fn in_sum_of_primes<F: OrderedField>(
    spec: &Arc<RingSpec>,
    a: &TupleElt<F>,
    i: usize,
    j: usize,
) -> Option<(TupleElt<F>, TupleElt<F>)> {
    if i == j {
        return a.component(i).is_zero().then(|| (a.clone(), spec.zero()));
    }
    let q = Node::Tree(spec.join_leaves(i, j));
    if !spec.residue_at(a, q).is_zero() {
        return None;
    }
    let y = spec.lift(i, a.component(i)).expect("components lift");
    let x = a - &y;
    Some((x, y))
}

fn verify_split<F: OrderedField>(
    a: &TupleElt<F>,
    x: &TupleElt<F>,
    y: &TupleElt<F>,
    ei: &TupleElt<F>,
    ej: &TupleElt<F>,
) -> bool {
    &(x + y) == a && (x * ei).is_zero() && (y * ej).is_zero()
}

/// Branching structure: `BrSpec` is a reduced root whose branching points
/// are the internal nodes, there are at most `n − 1` of them, and each is
/// `Ann(e_i) + Ann(e_j)` for leaves meeting there (checked on samples with
/// explicit splittings).
pub fn branching_check<F: OrderedField>(spec: &Arc<RingSpec>, cfg: &SampleConfig) -> Check {
    let n = spec.n();
    let br = brspec(spec);
    if !br.is_root() || !br.is_reduced() {
        return Check::fail("BrSpec is not a reduced root");
    }
    let internal = branching_ideals(spec);
    let mut from_poset: Vec<&str> = br.branching_points().iter().map(|&q| br.id(q)).collect();
    let mut from_tree: Vec<&str> = internal.iter().map(|&q| spec.node_id(q)).collect();
    from_poset.sort_unstable();
    from_tree.sort_unstable();
    if n >= 2 && from_poset != from_tree {
        return Check::fail(format!(
            "branching points {from_poset:?} differ from internal nodes {from_tree:?}"
        ));
    }
    if n >= 1 && internal.len() > n.saturating_sub(1) {
        return Check::fail(format!("{} branching ideals exceed n - 1 = {}", internal.len(), n - 1));
    }
    let e = spec.canonical_orthogonals::<F>();
    let elements = test_elements::<F>(spec, cfg, SALT_BRANCH);
    for &q in &internal {
        let Node::Tree(qi) = q else { unreachable!() };
        let (i, j) = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| i != j && spec.join_leaves(i, j) == qi)
            .expect("branching nodes are joins");
        for a in &elements {
            let member = spec.in_prime(a, q);
            match in_sum_of_primes(spec, a, i, j) {
                Some((x, y)) => {
                    if !member || !verify_split(a, &x, &y, &e[i], &e[j]) {
                        return Check::fail(format!("bad splitting of {a} at {}", spec.node_id(q)));
                    }
                }
                None if member => {
                    return Check::fail(format!("{a} in {} but not split", spec.node_id(q)));
                }
                None => {}
            }
        }
    }
    Check::pass(format!(
        "{} branching ideals (bound {}), each a sum of two minimal primes",
        internal.len(),
        n.saturating_sub(1)
    ))
}

/// Whether every sum `Ann(e_i) + Ann(e_j)` (`i ≠ j`) contains the same
/// elements of `elements`.
pub fn sum_ideals_agree<F: OrderedField>(spec: &Arc<RingSpec>, elements: &[TupleElt<F>]) -> bool {
    let n = spec.n();
    elements.iter().all(|a| {
        let mut verdicts = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .map(|(i, j)| in_sum_of_primes(spec, a, i, j).is_some());
        match verdicts.next() {
            Some(first) => verdicts.all(|v| v == first),
            None => true,
        }
    })
}

/// For one-branching rings, sum membership does not depend on the pair.
/// `None` when the ring has several branching ideals.
pub fn one_branching_pair_check<F: OrderedField>(
    spec: &Arc<RingSpec>,
    cfg: &SampleConfig,
) -> Option<Check> {
    if spec.n() < 2 || spec.internal_nodes().len() != 1 {
        return None;
    }
    let elements = test_elements::<F>(spec, cfg, SALT_PAIRS);
    Some(if sum_ideals_agree(spec, &elements) {
        Check::pass(format!("sum membership pair-independent on {} samples", cfg.trials))
    } else {
        Check::fail("sum membership depends on the pair")
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingType {
    /// One branching ideal, equal to the maximal ideal.
    OneMax(usize),
    /// One branching ideal, strictly below the maximal ideal.
    OnePrime(usize),
    Other,
}

impl fmt::Display for RingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingType::OneMax(n) => write!(f, "({n},1)"),
            RingType::OnePrime(n) => write!(f, "({n},2)"),
            RingType::Other => f.write_str("other"),
        }
    }
}

/// Type from the tree, cross-checked on samples: one branching ideal iff all
/// pairwise sums of minimal primes coincide, and that ideal is `𝔪` iff it
/// contains exactly the non-units.
pub fn classify_type<F: OrderedField>(
    spec: &Arc<RingSpec>,
    cfg: &SampleConfig,
) -> Result<(RingType, Check)> {
    let n = spec.n();
    if n < 2 {
        return Err(Error::Rejected("type needs rank at least 2".into()));
    }
    let one = spec.internal_nodes().len() == 1;
    let ty = match (one, spec.top_is_max()) {
        (true, true) => RingType::OneMax(n),
        (true, false) => RingType::OnePrime(n),
        (false, _) => RingType::Other,
    };
    let elements = test_elements::<F>(spec, cfg, SALT_TYPE);
    let agree = sum_ideals_agree(spec, &elements);
    if agree != one {
        return Ok((
            ty,
            Check::fail(format!(
                "tree has {} branching nodes but sums of minimal primes {}",
                spec.internal_nodes().len(),
                if agree { "all agree" } else { "differ" }
            )),
        ));
    }
    if one {
        let sum_is_max = elements
            .iter()
            .all(|a| in_sum_of_primes(spec, a, 0, 1).is_some() == a.in_max_ideal());
        if sum_is_max != spec.top_is_max() {
            return Ok((ty, Check::fail("branching ideal disagrees with the maximal ideal")));
        }
    }
    Ok((
        ty,
        Check::pass(format!("type {ty} confirmed on {} samples", cfg.trials)),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxIdealBranching {
    /// Structural verdict: `c(⊤) = 0`.
    pub branching: bool,
    /// Leaves under the first child of `⊤`, and the rest.
    pub partition: Option<(Vec<usize>, Vec<usize>)>,
    pub check: Check,
}

/// Splits a non-unit as `x + y`, `x` equal to `a` on `s1` and zero elsewhere.
/// Both parts are zero divisors when `s1` and its complement are nonempty.
pub fn split_non_unit<F: OrderedField>(
    spec: &Arc<RingSpec>,
    a: &TupleElt<F>,
    s1: &[usize],
) -> Option<(TupleElt<F>, TupleElt<F>)> {
    let comps = (0..spec.n())
        .map(|i| {
            if s1.contains(&i) {
                a.component(i).clone()
            } else {
                crate::hahn::ValElt::zero(spec.depth(i))
            }
        })
        .collect();
    let x = spec.make_element(comps).ok()?;
    let y = a - &x;
    Some((x, y))
}

/// Whether `𝔪` is branching, cross-checked by splitting sampled non-units
/// into two zero divisors along the leaf partition at `⊤`.
pub fn max_ideal_branching_check<F: OrderedField>(
    spec: &Arc<RingSpec>,
    cfg: &SampleConfig,
) -> MaxIdealBranching {
    let n = spec.n();
    let mut children = spec.tree().lower_covers(spec.top());
    children.sort_unstable();
    let s1: Vec<usize> = children
        .first()
        .map(|&c| spec.leaves_below(Node::Tree(c)))
        .unwrap_or_default();
    let s2: Vec<usize> = (0..n).filter(|i| !s1.contains(i)).collect();
    let branching = spec.top_is_max() && n >= 2;
    let e = spec.canonical_orthogonals::<F>();

    let mut rng = cfg.rng(SALT_MAX);
    let mut non_units: Vec<TupleElt<F>> = super::boundary_elements(spec)
        .into_iter()
        .filter(|a| !a.is_unit())
        .collect();
    non_units.extend((0..cfg.trials).map(|_| sample_non_unit(spec, &mut rng, cfg.size)));

    let mut failures = 0;
    for a in &non_units {
        match split_non_unit(spec, a, &s1) {
            Some((x, y)) => {
                let ok = &(&x + &y) == a
                    && s2.iter().all(|&j| (&x * &e[j]).is_zero())
                    && s1.iter().all(|&i| (&y * &e[i]).is_zero());
                if !ok {
                    return MaxIdealBranching {
                        branching,
                        partition: None,
                        check: Check::fail(format!("invalid splitting of {a}")),
                    };
                }
            }
            None => failures += 1,
        }
    }
    let check = match (branching, failures) {
        (true, 0) => Check::pass(format!(
            "{} non-units split as sums of two zero divisors",
            non_units.len()
        )),
        (true, k) => Check::fail(format!("{k} non-units did not split")),
        (false, 0) if n >= 2 => Check::fail("maximal ideal not branching, yet every non-unit split"),
        (false, k) => Check::pass(format!(
            "maximal ideal not branching; partition splitting fails on {k} of {} non-units (one-sided)",
            non_units.len()
        )),
    };
    MaxIdealBranching {
        branching,
        partition: branching.then(|| (s1, s2)),
        check,
    }
}

/// Goursat decomposition for two leaves, with `H_i` the kernel of the
/// projection to leaf `i` and `I` the kernel of the residue map of `V_{d_1}`
/// at `⊤`.
pub fn goursat_verify<F: OrderedField>(spec: &Arc<RingSpec>, cfg: &SampleConfig) -> Result<Check> {
    if spec.n() != 2 {
        return Err(Error::Rejected("Goursat decomposition needs exactly two leaves".into()));
    }
    let top = Node::Tree(spec.top());
    let e = spec.canonical_orthogonals::<F>();
    let cofactor = |a: &TupleElt<F>| spec.residue_at(a, top);
    let mut rng = cfg.rng(SALT_GOURSAT);
    let h1_of = |a: &TupleElt<F>| a - &spec.lift(0, a.component(0)).expect("lift");
    let h2_of = |a: &TupleElt<F>| a - &spec.lift(1, a.component(1)).expect("lift");
    let elements = test_elements::<F>(spec, cfg, SALT_GOURSAT ^ 0xff);
    for a in &elements {
        let b: TupleElt<F> = spec.sample(&mut rng, cfg.size);
        let (h1, h2) = (h1_of(a), h2_of(&b));
        if !h1.component(0).is_zero() || !h2.component(1).is_zero() {
            return Ok(Check::fail("kernel elements do not vanish"));
        }
        if !(&h1 * &h2).is_zero() {
            return Ok(Check::fail("H_1 H_2 is not contained in (0)"));
        }
        let member = in_sum_of_primes(spec, a, 0, 1);
        match &member {
            Some((x, y)) if !verify_split(a, x, y, &e[0], &e[1]) => {
                return Ok(Check::fail(format!("bad H_1 + H_2 splitting of {a}")))
            }
            Some(_) if !cofactor(a).is_zero() => {
                return Ok(Check::fail(format!("{a} split but has nonzero residue")))
            }
            None if cofactor(a).is_zero() => {
                return Ok(Check::fail(format!("{a} has zero residue but did not split")))
            }
            _ => {}
        }
        let shifted = &(a + &h1) + &h2;
        if !cofactor(&(&h1 + &h2)).is_zero() || cofactor(&shifted) != cofactor(a) {
            return Ok(Check::fail("cofactor map is not well defined"));
        }
        if cofactor(a) == cofactor(&b) && in_sum_of_primes(spec, &(a - &b), 0, 1).is_none() {
            return Ok(Check::fail("cofactor map is not injective"));
        }
        let w = spec.residue_at(&b, top);
        let lifted = spec.lift_from(top, &w).map_err(|e| Error::Rejected(e.to_string()))?;
        if cofactor(&lifted) != w {
            return Ok(Check::fail("cofactor map is not surjective"));
        }
    }
    Ok(Check::pass(format!(
        "H_1 ∩ H_2 = 0, H_1 + H_2 = residue kernel, cofactor bijective on {} samples",
        cfg.trials
    )))
}
