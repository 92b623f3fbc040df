use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use super::classes::{class_sum, AtomicClasses};
use super::partition::BranchPartition;
use crate::error::{Error, Result};
use crate::lattice::{
    check_modulus, enumerate_quotient, kernel_of_hom_on_subgroup, smith_normal_form, subgroup_quotient_order, IntMatrix,
};

/// Combinatorial data of the stratum attached to a partition of the branches.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumRecord {
    pub partition: BranchPartition,
    /// `|S|`, the number of double points in the union of the supports.
    pub height: u64,
    /// Sum of `C_i . C_i'` over unordered pairs of distinct blocks.
    pub formula_height: u64,
    /// The same sum over ordered pairs of distinct blocks.
    pub ordered_height: u64,
    pub support: BTreeSet<usize>,
    /// Rows `c_{I_1}, ..., c_{I_l}` over the double points.
    #[serde(skip)]
    pub generators: IntMatrix,
    pub rank: usize,
}

pub fn stratum_record(cs: &AtomicClasses, p: &BranchPartition, c_matrix: &[Vec<u64>]) -> Result<StratumRecord> {
    let mut rows = Vec::with_capacity(p.len());
    let mut support = BTreeSet::new();
    for block in p.blocks() {
        let c = class_sum(cs, &block.iter().copied().collect(), c_matrix)?;
        support.extend(c.support());
        rows.push(c.coefficients);
    }
    let mut formula = 0;
    for (a, ba) in p.blocks().iter().enumerate() {
        for bb in &p.blocks()[a + 1..] {
            for &i in ba {
                for &k in bb {
                    formula += c_matrix[i - 1][k - 1];
                }
            }
        }
    }
    let generators = IntMatrix::from_rows(cs.double_point_count(), &rows)?;
    let rank = smith_normal_form(&generators).rank();
    Ok(StratumRecord {
        partition: p.clone(),
        height: support.len() as u64,
        formula_height: formula,
        ordered_height: 2 * formula,
        support,
        generators,
        rank,
    })
}

/// Which computations produced a multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Multiplicity {
    #[serde(serialize_with = "crate::count::serialize")]
    pub value: BigUint,
    /// Brute-force count, when the quotient fit in the budget.
    #[serde(serialize_with = "crate::count::option::serialize")]
    pub enumeration: Option<BigUint>,
    /// Möbius inversion over the coarsenings, when its hypothesis held.
    #[serde(serialize_with = "crate::count::option::serialize")]
    pub inclusion_exclusion: Option<BigUint>,
}

/// Size of `V/n` minus the union of `V'/n` over strict coarsenings, the
/// trivial partition contributing `{0}`.
///
/// The brute-force path lists `V/n` and the subgroups of the partitions one
/// merge coarser (every strict coarsening lies below one of them). The
/// inclusion-exclusion path inverts `|V/n| = sum_{I' >= I} |(V_{I'}/n)°|`
/// over the coarsening poset; it is used only when `|V_{I'}/n| = n^(l(I')-1)`
/// for every coarsening, which makes the pieces disjoint. When both paths
/// run they must agree.
pub fn stratum_multiplicity(
    rec: &StratumRecord,
    all_records: &[StratumRecord],
    n: u64,
    budget: u64,
) -> Result<Multiplicity> {
    check_modulus(n)?;
    let by_partition: BTreeMap<&BranchPartition, &StratumRecord> = all_records.iter().map(|r| (&r.partition, r)).collect();
    let find = |p: &BranchPartition| -> Result<&StratumRecord> {
        by_partition
            .get(p)
            .copied()
            .ok_or_else(|| Error::Validation(format!("no stratum record for partition {}", p)))
    };

    if rec.partition.is_trivial() {
        return Ok(Multiplicity {
            value: BigUint::one(),
            enumeration: Some(BigUint::one()),
            inclusion_exclusion: Some(BigUint::one()),
        });
    }

    let enumeration = match enumerate_quotient(&rec.generators, n, budget) {
        Ok(elements) => {
            let mut covered: HashSet<Vec<u64>> = HashSet::new();
            covered.insert(vec![0; rec.generators.cols()]);
            for c in rec.partition.one_merge_coarsenings() {
                covered.extend(enumerate_quotient(&find(&c)?.generators, n, budget)?);
            }
            Some(BigUint::from(elements.iter().filter(|e| !covered.contains(*e)).count()))
        }
        Err(Error::EnumerationTooLarge { .. }) => None,
        Err(e) => return Err(e),
    };

    let coarser: Vec<&StratumRecord> =
        all_records.iter().filter(|r| rec.partition.refines(&r.partition)).collect();
    let free = coarser.iter().try_fold(true, |ok, r| -> Result<bool> {
        let expected = BigUint::from(n).pow(r.partition.len().saturating_sub(1) as u32);
        Ok(ok && subgroup_quotient_order(&r.generators, n)? == expected)
    })?;
    let inclusion_exclusion = if free { Some(mobius(rec, &coarser, n)?) } else { None };

    match (&enumeration, &inclusion_exclusion) {
        (Some(a), Some(b)) if a != b => Err(Error::Validation(format!(
            "multiplicity of {} mod {}: enumeration gives {} but inclusion-exclusion gives {}",
            rec.partition, n, a, b
        ))),
        (Some(v), _) | (None, Some(v)) => Ok(Multiplicity { value: v.clone(), enumeration, inclusion_exclusion }),
        (None, None) => Err(Error::BudgetExceeded(format!(
            "multiplicity of {} mod {}: the quotient exceeds the enumeration budget and inclusion-exclusion does not apply",
            rec.partition, n
        ))),
    }
}

/// `g(I) = |V_I/n| - sum_{I' > I} g(I')`, evaluated from the coarsest
/// partition down.
fn mobius(rec: &StratumRecord, coarser: &[&StratumRecord], n: u64) -> Result<BigUint> {
    let mut order: Vec<&StratumRecord> = coarser.to_vec();
    order.sort_by_key(|r| r.partition.len());
    let mut g: BTreeMap<&BranchPartition, BigUint> = BTreeMap::new();
    for r in &order {
        let total = subgroup_quotient_order(&r.generators, n)?;
        let above: BigUint = order
            .iter()
            .filter(|s| s.partition != r.partition && r.partition.refines(&s.partition))
            .map(|s| g[&s.partition].clone())
            .sum();
        if total < above {
            return Err(Error::Validation(format!("inclusion-exclusion went negative at {}", r.partition)));
        }
        g.insert(&r.partition, total - above);
    }
    Ok(g.remove(&rec.partition).expect("the record is its own coarsening"))
}

/// Number of irreducible components of a fiber over the stratum: `|V/n|`.
pub fn curve_component_count(rec: &StratumRecord, n: u64) -> Result<BigUint> {
    if n == 1 {
        return Ok(BigUint::one());
    }
    subgroup_quotient_order(&rec.generators, n)
}

/// Components of an abelian covering: `|ker(phi)|` on the subgroup spanned by
/// the rows of `t_gens`.
pub fn covering_component_count(t_gens: &IntMatrix, phi: &IntMatrix, n: u64) -> Result<BigUint> {
    if n == 1 {
        return Ok(BigUint::one());
    }
    Ok(kernel_of_hom_on_subgroup(t_gens, phi, n)?.kernel)
}
