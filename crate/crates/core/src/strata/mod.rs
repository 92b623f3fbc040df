//! Invariant classes of the vanishing-cycle lattice and the strata indexed by
//! partitions of the branches: heights, the subgroups `V_{I•}`, their
//! multiplicities modulo `n` and component counts.

mod classes;
mod multiplicity;
mod partition;

pub use classes::{atomic_classes, class_sum, AtomicClasses, InvariantClass};
pub use multiplicity::{
    covering_component_count, curve_component_count, stratum_multiplicity, stratum_record, Multiplicity,
    StratumRecord,
};
pub use partition::{enumerate_partitions, BranchPartition, MAX_PARTITION_BRANCHES};

use crate::branch::GermSpec;
use crate::divide::{intersection_form, CycleLattice, Divide};
use crate::error::Result;

/// Everything needed to work with the strata of one germ and divide: the
/// atomic classes and one record per partition (the trivial one included).
#[derive(Clone, Debug)]
pub struct Strata {
    pub lattice: CycleLattice,
    pub classes: AtomicClasses,
    pub c_matrix: Vec<Vec<u64>>,
    pub records: Vec<StratumRecord>,
}

impl Strata {
    pub fn new(germ: &GermSpec, divide: &Divide) -> Result<Self> {
        let lattice = intersection_form(divide);
        let r = germ.branch_count();
        let classes = atomic_classes(&lattice, divide, r)?;
        let c_matrix = germ.intersection_matrix()?;
        let records = enumerate_partitions(r, true)?
            .iter()
            .map(|p| stratum_record(&classes, p, &c_matrix))
            .collect::<Result<Vec<_>>>()?;
        Ok(Strata { lattice, classes, c_matrix, records })
    }

    pub fn record(&self, p: &BranchPartition) -> Option<&StratumRecord> {
        self.records.iter().find(|r| &r.partition == p)
    }

    /// Records of the nontrivial partitions.
    pub fn nontrivial(&self) -> impl Iterator<Item = &StratumRecord> {
        self.records.iter().filter(|r| !r.partition.is_trivial())
    }

    pub fn multiplicity(&self, rec: &StratumRecord, n: u64, budget: u64) -> Result<Multiplicity> {
        stratum_multiplicity(rec, &self.records, n, budget)
    }
}
