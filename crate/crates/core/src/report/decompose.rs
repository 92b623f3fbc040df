use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::branch::{germ_invariants, GermSpec};
use crate::divide::{validate, Divide};
use crate::error::{Error, Result};
use crate::lattice::DEFAULT_ENUMERATION_BUDGET;
use crate::strata::{curve_component_count, BranchPartition, Multiplicity, Strata};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TermKind {
    Main,
    Stratum,
}

/// One summand `IC(...)[-shift](twist)^{multiplicity}` of the direct image
/// over the `n`-th cover of the base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionTerm {
    pub kind: TermKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<BranchPartition>,
    /// `h_{I•}`, zero for main terms.
    pub height: u64,
    /// Degree of the local system being extended.
    pub degree: u64,
    pub shift: u64,
    pub twist: i64,
    #[serde(serialize_with = "crate::count::serialize")]
    pub multiplicity: BigUint,
    /// Name of the intermediate-extension complex; its stalks are unknowns.
    pub ic_placeholder: String,
    pub lambda_invariant: bool,
}

/// Per-partition data behind the stratum terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumSummary {
    pub partition: BranchPartition,
    pub height: u64,
    pub ordered_height: u64,
    pub rank: usize,
    pub multiplicity: Multiplicity,
}

/// `sum_{I' >= I} |(V_{I'}/n)°| = |V_I/n|`, checked at one partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionSumCheck {
    pub partition: BranchPartition,
    #[serde(serialize_with = "crate::count::serialize")]
    pub coarsening_sum: BigUint,
    #[serde(serialize_with = "crate::count::serialize")]
    pub quotient_order: BigUint,
    /// `n^rank`, equal to `quotient_order` when `V_I` is saturated at the
    /// primes dividing `n`.
    #[serde(serialize_with = "crate::count::serialize")]
    pub free_order: BigUint,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub checks: Vec<PartitionSumCheck>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub n: u64,
    pub r: usize,
    pub delta: u64,
    pub mu: u64,
    pub strata: Vec<StratumSummary>,
    pub terms: Vec<DecompositionTerm>,
    pub consistency: ConsistencyReport,
}

impl Decomposition {
    pub fn main_terms(&self) -> impl Iterator<Item = &DecompositionTerm> {
        self.terms.iter().filter(|t| t.kind == TermKind::Main)
    }

    pub fn stratum_terms(&self) -> impl Iterator<Item = &DecompositionTerm> {
        self.terms.iter().filter(|t| t.kind == TermKind::Stratum)
    }
}

fn main_placeholder(i: u64) -> String {
    format!("j!*(R^{} f_* Ql)", i)
}

fn stratum_placeholder(p: &BranchPartition, i: u64) -> String {
    format!("j[{}]!*(F^{}[{}])", p, i, p)
}

pub fn decompose(germ: &GermSpec, divide: &Divide, n: u64) -> Result<Decomposition> {
    decompose_with_budget(germ, divide, n, DEFAULT_ENUMERATION_BUDGET)
}

/// The summands of the direct image over the `n`-th cover: the main terms
/// `j!*(R^i f_*)[-i]` for `i = 0..2 delta` and, for every nontrivial partition
/// with `|(V/n)°| > 0`, the terms of degree `i' = 0..2(delta - h)` shifted by
/// `i' + 2h` with Tate twist `-h`.
pub fn decompose_with_budget(germ: &GermSpec, divide: &Divide, n: u64, budget: u64) -> Result<Decomposition> {
    let report = validate(divide, germ)?;
    if !report.passed {
        let failed: Vec<String> = report.failures().map(|c| c.name.clone()).collect();
        return Err(Error::Validation(format!("divide does not match the germ: {}", failed.join(", "))));
    }
    let inv = germ_invariants(germ)?;
    let strata = Strata::new(germ, divide)?;
    let delta = inv.delta;

    let mut terms: Vec<DecompositionTerm> = (0..=2 * delta)
        .map(|i| DecompositionTerm {
            kind: TermKind::Main,
            partition: None,
            height: 0,
            degree: i,
            shift: i,
            twist: 0,
            multiplicity: BigUint::one(),
            ic_placeholder: main_placeholder(i),
            lambda_invariant: true,
        })
        .collect();

    let multiplicities: Vec<Multiplicity> =
        strata.records.iter().map(|rec| strata.multiplicity(rec, n, budget)).collect::<Result<_>>()?;

    let mut summaries = Vec::new();
    for (rec, m) in strata.records.iter().zip(&multiplicities) {
        if rec.partition.is_trivial() {
            continue;
        }
        summaries.push(StratumSummary {
            partition: rec.partition.clone(),
            height: rec.height,
            ordered_height: rec.ordered_height,
            rank: rec.rank,
            multiplicity: m.clone(),
        });
        if m.value.is_zero() {
            continue;
        }
        let h = rec.height;
        if h > delta {
            return Err(Error::Validation(format!("stratum {} has height {} above delta = {}", rec.partition, h, delta)));
        }
        for i in 0..=2 * (delta - h) {
            terms.push(DecompositionTerm {
                kind: TermKind::Stratum,
                partition: Some(rec.partition.clone()),
                height: h,
                degree: i,
                shift: i + 2 * h,
                twist: -(h as i64),
                multiplicity: m.value.clone(),
                ic_placeholder: stratum_placeholder(&rec.partition, i),
                lambda_invariant: false,
            });
        }
    }

    let mut checks = Vec::new();
    for rec in &strata.records {
        let coarsening_sum: BigUint = strata
            .records
            .iter()
            .zip(&multiplicities)
            .filter(|(other, _)| rec.partition.refines(&other.partition))
            .map(|(_, m)| m.value.clone())
            .sum();
        let quotient_order = curve_component_count(rec, n)?;
        checks.push(PartitionSumCheck {
            partition: rec.partition.clone(),
            passed: coarsening_sum == quotient_order,
            coarsening_sum,
            quotient_order,
            free_order: BigUint::from(n).pow(rec.rank as u32),
        });
    }
    let passed = checks.iter().all(|c| c.passed);

    Ok(Decomposition {
        n,
        r: inv.r,
        delta,
        mu: inv.mu,
        strata: summaries,
        terms,
        consistency: ConsistencyReport { checks, passed },
    })
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "decomposition over the cover of order n = {} (r = {}, delta = {}, mu = {})", self.n, self.r, self.delta, self.mu)?;
        writeln!(f, "main terms:")?;
        for t in self.main_terms() {
            writeln!(f, "  {}[-{}]  (Lambda-invariant)", t.ic_placeholder, t.shift)?;
        }
        writeln!(f, "strata:")?;
        for s in &self.strata {
            write!(f, "  {}  h = {}", s.partition, s.height)?;
            if s.ordered_height != s.height {
                write!(f, " (ordered sum {})", s.ordered_height)?;
            }
            writeln!(f, ", rank {}, multiplicity {}", s.rank, s.multiplicity.value)?;
        }
        writeln!(f, "stratum terms:")?;
        for t in self.stratum_terms() {
            writeln!(f, "  {}({})[-{}] ^ {}", t.ic_placeholder, t.twist, t.shift, t.multiplicity)?;
        }
        writeln!(f, "partition-sum identity:")?;
        for c in &self.consistency.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            writeln!(f, "  {} {}: sum {} vs |V/n| = {} (n^rank = {})", mark, c.partition, c.coarsening_sum, c.quotient_order, c.free_order)?;
        }
        write!(f, "{}", if self.consistency.passed { "consistent" } else { "INCONSISTENT" })
    }
}
