use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::decompose::TermKind;
use crate::branch::{germ_invariants, GermSpec};
use crate::divide::{validate, Divide};
use crate::error::{Error, Result};
use crate::strata::{BranchPartition, Strata};

/// A strict coarsening whose classes are removed from `V_{I•}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coarsening {
    pub partition: BranchPartition,
    pub rank: usize,
}

/// The infinite index set `V°_{I•}`, described by the rank of `V_{I•}` and
/// the coarser subgroups taken out of it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexSet {
    pub label: String,
    pub rank: usize,
    pub subtracted: Vec<Coarsening>,
}

/// One summand of `H_i` of the local compactified Jacobian.
///
/// Main terms carry `inner_degree = i'` and one cycle degree `i - i'`;
/// stratum terms carry `inner_degree = i''`, the per-block degrees
/// `i_1..i_l` summing to it and `j_1..j_l` summing to `i - 2h - i''`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyTermLimit {
    pub kind: TermKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<BranchPartition>,
    pub height: u64,
    pub degree: u64,
    pub inner_degree: u64,
    pub block_degrees: Vec<u64>,
    pub cycle_degrees: Vec<u64>,
    pub twist: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index_set: Option<IndexSet>,
    pub factor_placeholders: Vec<String>,
    pub lambda_invariant: bool,
}

impl HomologyTermLimit {
    /// `sum i_k + sum j_k + 2h`, which always equals `degree`.
    pub fn degree_sum(&self) -> u64 {
        let blocks: u64 = if self.kind == TermKind::Main { self.inner_degree } else { self.block_degrees.iter().sum() };
        blocks + self.cycle_degrees.iter().sum::<u64>() + 2 * self.height
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitReport {
    pub r: usize,
    pub delta: u64,
    pub max_degree: u64,
    /// `delta_I` for every block that occurs, keyed by its branches.
    pub block_deltas: BTreeMap<String, u64>,
    pub terms: Vec<HomologyTermLimit>,
}

impl LimitReport {
    pub fn terms_in_degree(&self, i: u64) -> impl Iterator<Item = &HomologyTermLimit> {
        self.terms.iter().filter(move |t| t.degree == i)
    }
}

fn block_name(block: &[usize]) -> String {
    block.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn main_factor(i: u64, inner: u64) -> String {
    let j = i - inner;
    format!("Im[H_0^(2tau-{j})(j!* wedge^{inner} (F/Eperp)^dual) -> H_0^(2tau-{j})(j!* wedge^{inner} F^dual)]")
}

fn block_factor(block: &[usize], i: u64, j: u64) -> String {
    let b = block_name(block);
    format!("Im[H_0^(2tau[{b}]-{j})(j[{b}]!* wedge^{i} (F[{b}]/Eperp[{b}])^dual) -> H_0^(2tau[{b}]-{j})(j[{b}]!* wedge^{i} F[{b}]^dual)]")
}

/// Tuples of length `bounds.len()` summing to `total`, entry `k` at most
/// `bounds[k]` when given, in lexicographic order.
fn compositions(total: u64, bounds: &[Option<u64>]) -> Vec<Vec<u64>> {
    fn go(total: u64, bounds: &[Option<u64>], prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        match bounds {
            [] => {
                if total == 0 {
                    out.push(prefix.clone());
                }
            }
            [last] => {
                if last.map_or(true, |b| total <= b) {
                    prefix.push(total);
                    out.push(prefix.clone());
                    prefix.pop();
                }
            }
            [first, rest @ ..] => {
                for x in 0..=first.map_or(total, |b| b.min(total)) {
                    prefix.push(x);
                    go(total - x, rest, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(total, bounds, &mut Vec::new(), &mut out);
    out
}

/// Symbolic form of `H_i` for `i = 0..max_degree` (default `2 delta`), the
/// stratum multiplicities replaced by the index sets `V°_{I•}`.
///
/// Wedge powers of `F_I/E_I^perp`, which has rank `2 delta_I`, vanish above
/// that rank, so the block degrees `i_k` and the main-term degree `i'` are
/// capped accordingly. The cycle degrees `j_k` are only bounded by their sum.
pub fn homology_limit_report(germ: &GermSpec, divide: &Divide, max_degree: Option<u64>) -> Result<LimitReport> {
    let report = validate(divide, germ)?;
    if !report.passed {
        let failed: Vec<String> = report.failures().map(|c| c.name.clone()).collect();
        return Err(Error::Validation(format!("divide does not match the germ: {}", failed.join(", "))));
    }
    let inv = germ_invariants(germ)?;
    let c = germ.intersection_matrix()?;
    let strata = Strata::new(germ, divide)?;
    let delta = inv.delta;
    let top = max_degree.unwrap_or(2 * delta);

    let block_delta = |block: &[usize]| -> u64 {
        let own: u64 = block.iter().map(|&i| inv.branch_deltas[i - 1]).sum();
        let mut pairs = 0;
        for (a, &i) in block.iter().enumerate() {
            for &k in &block[a + 1..] {
                pairs += c[i - 1][k - 1];
            }
        }
        own + pairs
    };

    let mut block_deltas = BTreeMap::new();
    let strata_info: Vec<_> = strata
        .nontrivial()
        .map(|rec| {
            let bounds: Vec<Option<u64>> = rec
                .partition
                .blocks()
                .iter()
                .map(|b| {
                    let d = block_delta(b);
                    block_deltas.insert(block_name(b), d);
                    Some(2 * d)
                })
                .collect();
            let subtracted = strata
                .records
                .iter()
                .filter(|o| o.partition != rec.partition && rec.partition.refines(&o.partition))
                .map(|o| Coarsening { partition: o.partition.clone(), rank: o.rank })
                .collect();
            let index_set = IndexSet { label: format!("V°[{}]", rec.partition), rank: rec.rank, subtracted };
            (rec, bounds, index_set)
        })
        .collect();

    let mut terms = Vec::new();
    for i in 0..=top {
        for inner in 0..=i.min(2 * delta) {
            terms.push(HomologyTermLimit {
                kind: TermKind::Main,
                partition: None,
                height: 0,
                degree: i,
                inner_degree: inner,
                block_degrees: Vec::new(),
                cycle_degrees: vec![i - inner],
                twist: 0,
                index_set: None,
                factor_placeholders: vec![main_factor(i, inner)],
                lambda_invariant: true,
            });
        }
        for (rec, bounds, index_set) in &strata_info {
            let h = rec.height;
            if 2 * h > i {
                continue;
            }
            let blocks = rec.partition.blocks();
            let free = vec![None; blocks.len()];
            for inner in 0..=i - 2 * h {
                for is in compositions(inner, bounds) {
                    for js in compositions(i - 2 * h - inner, &free) {
                        let factor_placeholders =
                            blocks.iter().zip(is.iter().zip(&js)).map(|(b, (&ik, &jk))| block_factor(b, ik, jk)).collect();
                        terms.push(HomologyTermLimit {
                            kind: TermKind::Stratum,
                            partition: Some(rec.partition.clone()),
                            height: h,
                            degree: i,
                            inner_degree: inner,
                            block_degrees: is.clone(),
                            cycle_degrees: js,
                            twist: h as i64,
                            index_set: Some(index_set.clone()),
                            factor_placeholders,
                            lambda_invariant: false,
                        });
                    }
                }
            }
        }
    }

    Ok(LimitReport { r: inv.r, delta, max_degree: top, block_deltas, terms })
}

impl fmt::Display for LimitReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "homology in degrees 0..{} (r = {}, delta = {})", self.max_degree, self.r, self.delta)?;
        for i in 0..=self.max_degree {
            writeln!(f, "H_{}:", i)?;
            for t in self.terms_in_degree(i) {
                match &t.partition {
                    None => writeln!(f, "  main i'={}: {}", t.inner_degree, t.factor_placeholders.join(" (x) "))?,
                    Some(p) => {
                        let set = t.index_set.as_ref().map_or(String::new(), |s| format!("{} (rank {})", s.label, s.rank));
                        writeln!(
                            f,
                            "  {} i''={} i={:?} j={:?}: {} ({}) ^ {}",
                            p,
                            t.inner_degree,
                            t.block_degrees,
                            t.cycle_degrees,
                            t.factor_placeholders.join(" (x) "),
                            t.twist,
                            set
                        )?
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::compositions;

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(3, &[None, None]).len(), 4);
        assert_eq!(compositions(0, &[None, None, None]), vec![vec![0, 0, 0]]);
        assert_eq!(compositions(3, &[Some(1), None]), vec![vec![0, 3], vec![1, 2]]);
        assert!(compositions(3, &[Some(1), Some(1)]).is_empty());
        assert!(compositions(1, &[]).is_empty());
    }
}
