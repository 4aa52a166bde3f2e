use std::fmt::Write;
use std::sync::Arc;

use super::checks::*;
use super::{Check, SampleConfig};
use crate::rootsys::RootPoset;
use crate::scalars::OrderedField;
use crate::svring::RingSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckEntry {
    pub name: &'static str,
    /// The structural statement the check exercises.
    pub tag: &'static str,
    pub check: Check,
}

#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub rank: usize,
    pub branching_nodes: Vec<String>,
    pub brspec: RootPoset,
    pub ring_type: Option<RingType>,
    pub max_branching: bool,
    pub sv_passed: bool,
    pub checks: Vec<CheckEntry>,
}

impl AnalysisReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.check.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.checks.iter().filter(|c| !c.check.passed)
    }

    /// `rank=2; SV=pass; branching=1 (=m); type=(2,1)`.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "rank={}; SV={}; branching={}",
            self.rank,
            if self.sv_passed { "pass" } else { "fail" },
            self.branching_nodes.len()
        );
        if self.max_branching && self.branching_nodes.len() == 1 {
            write!(s, " (={})", self.branching_nodes[0]).unwrap();
        }
        match self.ring_type {
            Some(t) => write!(s, "; type={t}").unwrap(),
            None => s.push_str("; type=n/a"),
        }
        s
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.summary()).unwrap();
        writeln!(out, "branching ideals: {}", self.branching_nodes.join(" ")).unwrap();
        let p = &self.brspec;
        let mut covers: Vec<String> = p
            .covers()
            .iter()
            .map(|&(a, b)| format!("{}<{}", p.id(a), p.id(b)))
            .collect();
        covers.sort();
        writeln!(out, "brspec: {} | {}", p.ids().join(" "), covers.join(" ")).unwrap();
        for c in &self.checks {
            writeln!(
                out,
                "[{}] {:<18} {}: {}",
                if c.check.passed { "pass" } else { "FAIL" },
                c.name,
                c.tag,
                c.check.detail
            )
            .unwrap();
        }
        out
    }
}

/// Runs every applicable structural check on `spec`.
pub fn analyze<F: OrderedField>(spec: &Arc<RingSpec>, cfg: &SampleConfig) -> AnalysisReport {
    let n = spec.n();
    let mut checks = Vec::new();
    let mut push = |name, tag, check| checks.push(CheckEntry { name, tag, check });

    let rank = rank_check::<F>(spec, cfg);
    push("rank", "maximal orthogonal family", rank.check);
    push("annihilators", "minimal primes are annihilators", annihilator_check::<F>(spec, cfg));
    push("local-reduced", "local reduced ring", local_reduced_check::<F>(spec, cfg));
    let sv = sv_check::<F>(spec, cfg);
    let sv_passed = sv.check.passed;
    push("sv", "divisibility is total on each factor", sv.check);

    let brspec = brspec(spec);
    push(
        "brspec-root",
        "branching spectrum is a reduced root",
        if brspec.is_root() && brspec.is_reduced() {
            Check::pass(format!("{} elements", brspec.len()))
        } else {
            Check::fail("not a reduced root")
        },
    );
    let branching_nodes: Vec<String> = branching_ideals(spec)
        .into_iter()
        .map(|q| spec.node_id(q).to_string())
        .collect();
    let mut ring_type = None;
    let mut max_branching = false;
    if n >= 2 {
        push("branching", "branching ideals are sums of minimal primes", branching_check::<F>(spec, cfg));
        if let Ok((t, check)) = classify_type::<F>(spec, cfg) {
            ring_type = Some(t);
            push("type", "one-branching type", check);
        }
        if let Some(check) = one_branching_pair_check::<F>(spec, cfg) {
            push("pair-independence", "sum of minimal primes independent of pair", check);
        }
        let m = max_ideal_branching_check::<F>(spec, cfg);
        max_branching = m.branching;
        push("max-branching", "non-units split into zero divisors", m.check);
    }
    if n == 2 {
        if let Ok(check) = goursat_verify::<F>(spec, cfg) {
            push("goursat", "fibre product over the cofactor", check);
        }
    }
    AnalysisReport {
        rank: rank.rank,
        branching_nodes,
        brspec,
        ring_type,
        max_branching,
        sv_passed,
        checks,
    }
}
