//! Symbolic decomposition reports: the summands of the direct image over
//! the `n`-th cover with their multiplicities, and the `n -> infinity` form
//! describing the homology of the local compactified Jacobian. Stalks of
//! intermediate extensions are never evaluated; they appear as named
//! placeholders.

mod decompose;
mod limit;

pub use decompose::{
    decompose, decompose_with_budget, ConsistencyReport, Decomposition, DecompositionTerm, PartitionSumCheck,
    StratumSummary, TermKind,
};
pub use limit::{homology_limit_report, Coarsening, HomologyTermLimit, IndexSet, LimitReport};

use serde::Serialize;

/// Pretty JSON with object keys sorted, so that output depends only on the
/// value.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report types serialize to JSON");
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values print");
    s.push('\n');
    s
}
