use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest branch count for which all set partitions are listed.
pub const MAX_PARTITION_BRANCHES: usize = 12;

/// A set partition of the branches `{1..r}`, blocks sorted internally and
/// ordered by their least element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct BranchPartition {
    blocks: Vec<Vec<usize>>,
}

impl BranchPartition {
    pub fn new(r: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; r + 1];
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::Validation("partition has an empty block".into()));
            }
            for &i in b {
                if i == 0 || i > r {
                    return Err(Error::Validation(format!("branch {} is outside 1..{}", i, r)));
                }
                if seen[i] {
                    return Err(Error::Validation(format!("branch {} appears twice", i)));
                }
                seen[i] = true;
            }
        }
        if let Some(i) = (1..=r).find(|&i| !seen[i]) {
            return Err(Error::Validation(format!("branch {} is not covered", i)));
        }
        blocks.sort();
        Ok(BranchPartition { blocks })
    }

    /// Partition from a restricted growth string (`labels[i]` is the block of
    /// branch `i + 1`).
    fn from_labels(labels: &[usize]) -> Self {
        let count = labels.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); count];
        for (i, &l) in labels.iter().enumerate() {
            blocks[l].push(i + 1);
        }
        BranchPartition { blocks }
    }

    pub fn trivial(r: usize) -> Self {
        Self::from_labels(&vec![0; r])
    }

    pub fn finest(r: usize) -> Self {
        Self::from_labels(&(0..r).collect::<Vec<_>>())
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn branch_count(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.len() <= 1
    }

    fn label_of(&self) -> Vec<usize> {
        let mut labels = vec![0; self.branch_count() + 1];
        for (k, b) in self.blocks.iter().enumerate() {
            for &i in b {
                labels[i] = k;
            }
        }
        labels
    }

    /// Whether every block of `coarser` is a union of blocks of `self`.
    pub fn refines(&self, coarser: &BranchPartition) -> bool {
        if self.branch_count() != coarser.branch_count() {
            return false;
        }
        let outer = coarser.label_of();
        self.blocks.iter().all(|b| b.iter().all(|&i| outer[i] == outer[b[0]]))
    }

    /// Partitions obtained by merging two blocks.
    pub fn one_merge_coarsenings(&self) -> Vec<BranchPartition> {
        let l = self.blocks.len();
        let mut out = Vec::new();
        for a in 0..l {
            for b in a + 1..l {
                let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(l - 1);
                for (k, block) in self.blocks.iter().enumerate() {
                    if k == b {
                        continue;
                    }
                    let mut block = block.clone();
                    if k == a {
                        block.extend(&self.blocks[b]);
                        block.sort_unstable();
                    }
                    blocks.push(block);
                }
                blocks.sort();
                out.push(BranchPartition { blocks });
            }
        }
        out
    }
}

impl fmt::Display for BranchPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("{{{}}}", b.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All set partitions of `{1..r}` in restricted-growth-string order (the
/// trivial partition first, the finest last).
pub fn enumerate_partitions(r: usize, include_trivial: bool) -> Result<Vec<BranchPartition>> {
    if r > MAX_PARTITION_BRANCHES {
        return Err(Error::BudgetExceeded(format!(
            "{} branches: listing set partitions is limited to {}",
            r, MAX_PARTITION_BRANCHES
        )));
    }
    let mut out = Vec::new();
    if r == 0 {
        return Ok(out);
    }
    let mut labels = vec![0usize; r];
    loop {
        let p = BranchPartition::from_labels(&labels);
        if include_trivial || !p.is_trivial() {
            out.push(p);
        }
        // advance: rightmost position that can grow
        let mut i = r - 1;
        loop {
            if i == 0 {
                return Ok(out);
            }
            let prefix_max = labels[..i].iter().copied().max().unwrap_or(0);
            if labels[i] <= prefix_max {
                labels[i] += 1;
                labels[i + 1..].iter_mut().for_each(|x| *x = 0);
                break;
            }
            i -= 1;
        }
    }
}
