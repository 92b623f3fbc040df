//! A'Campo divides: double points, signed regions, validation against the
//! germ, the intersection form of the vanishing cycles and generators for
//! standard examples.

mod dynkin;
mod form;
mod generate;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::branch::{germ_invariants, GermSpec};
use crate::error::{Error, Result};

pub use dynkin::{DynkinEdge, DynkinGraph, DynkinVertex, VertexTag};
pub use form::{intersection_form, CriticalPoint, CycleLattice};
pub use generate::{generate_grid_divide, generate_line_arrangement_divide, GeneratedDivide};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn opposite(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// A crossing of the divide; `branches.0 == branches.1` marks a self-crossing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoublePoint {
    pub id: usize,
    pub branches: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedRegion {
    pub id: usize,
    pub sign: Sign,
    pub closure_double_points: BTreeSet<usize>,
    pub segment_neighbors: BTreeSet<usize>,
}

/// A structurally sound divide.
///
/// Construction checks ids, references, symmetry of the segment relation and
/// the alternation of signs across segments; agreement with a germ is checked
/// separately by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divide {
    double_points: Vec<DoublePoint>,
    regions: Vec<SignedRegion>,
}

impl Divide {
    pub fn new(mut double_points: Vec<DoublePoint>, regions: Vec<SignedRegion>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidDivide(msg));
        for (k, dp) in double_points.iter_mut().enumerate() {
            if dp.id != k + 1 {
                return bad(format!("double point ids must be 1..{} in order, found {}", k + 1, dp.id));
            }
            let (a, b) = dp.branches;
            if a == 0 || b == 0 {
                return bad(format!("double point {} names branch 0; branches are numbered from 1", dp.id));
            }
            dp.branches = (a.min(b), a.max(b));
        }
        for (k, region) in regions.iter().enumerate() {
            if region.id != k + 1 {
                return bad(format!("region ids must be 1..{} in order, found {}", k + 1, region.id));
            }
            if let Some(&j) = region.closure_double_points.iter().find(|&&j| j == 0 || j > double_points.len()) {
                return bad(format!("region {} refers to unknown double point {}", region.id, j));
            }
            for &n in &region.segment_neighbors {
                let Some(other) = n.checked_sub(1).and_then(|i| regions.get(i)) else {
                    return bad(format!("region {} refers to unknown region {}", region.id, n));
                };
                if n == region.id {
                    return bad(format!("region {} is listed as its own neighbor", n));
                }
                if !other.segment_neighbors.contains(&region.id) {
                    return bad(format!("segment relation not symmetric between regions {} and {}", region.id, n));
                }
                if other.sign == region.sign {
                    return bad(format!("neighboring regions {} and {} carry the same sign", region.id, n));
                }
            }
        }
        Ok(Divide { double_points, regions })
    }

    pub fn empty() -> Self {
        Divide { double_points: Vec::new(), regions: Vec::new() }
    }

    pub fn double_points(&self) -> &[DoublePoint] {
        &self.double_points
    }

    pub fn regions(&self) -> &[SignedRegion] {
        &self.regions
    }

    pub fn mu_plus(&self) -> usize {
        self.regions.iter().filter(|r| r.sign == Sign::Plus).count()
    }

    pub fn mu_zero(&self) -> usize {
        self.double_points.len()
    }

    pub fn mu_minus(&self) -> usize {
        self.regions.iter().filter(|r| r.sign == Sign::Minus).count()
    }

    pub fn mu(&self) -> usize {
        self.double_points.len() + self.regions.len()
    }

    /// Largest branch id mentioned by a double point.
    pub fn max_branch(&self) -> usize {
        self.double_points.iter().map(|d| d.branches.1).max().unwrap_or(0)
    }

    /// Ids of the double points lying on branch `i` and on some other branch.
    pub fn cross_points_on(&self, branch: usize) -> Vec<usize> {
        self.double_points
            .iter()
            .filter(|d| d.branches.0 != d.branches.1 && (d.branches.0 == branch || d.branches.1 == branch))
            .map(|d| d.id)
            .collect()
    }

    /// Copy of the divide without the given region; remaining regions are
    /// renumbered.
    pub fn without_region(&self, id: usize) -> Result<Divide> {
        if id == 0 || id > self.regions.len() {
            return Err(Error::InvalidDivide(format!("no region {}", id)));
        }
        let renumber = |k: usize| if k > id { k - 1 } else { k };
        let regions = self
            .regions
            .iter()
            .filter(|r| r.id != id)
            .map(|r| SignedRegion {
                id: renumber(r.id),
                sign: r.sign,
                closure_double_points: r.closure_double_points.clone(),
                segment_neighbors: r.segment_neighbors.iter().filter(|&&n| n != id).map(|&n| renumber(n)).collect(),
            })
            .collect();
        Divide::new(self.double_points.clone(), regions)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: DivideFile = serde_json::from_str(text)?;
        file.into_divide()
    }

    pub fn to_file(&self) -> DivideFile {
        DivideFile {
            double_points: self
                .double_points
                .iter()
                .map(|d| DoublePointFile { id: d.id, branches: [d.branches.0, d.branches.1] })
                .collect(),
            regions: self.regions.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("divide files serialize")
    }
}

/// On-disk divide description.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivideFile {
    pub double_points: Vec<DoublePointFile>,
    pub regions: Vec<SignedRegion>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoublePointFile {
    pub id: usize,
    pub branches: [usize; 2],
}

impl DivideFile {
    pub fn into_divide(self) -> Result<Divide> {
        let dps = self
            .double_points
            .into_iter()
            .map(|d| DoublePoint { id: d.id, branches: (d.branches[0], d.branches[1]) })
            .collect();
        Divide::new(dps, self.regions)
    }
}

/// One numerical comparison made by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: u64,
    pub actual: u64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub mu_plus: usize,
    pub mu_zero: usize,
    pub mu_minus: usize,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl ValidationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mu+ = {}, mu0 = {}, mu- = {}", self.mu_plus, self.mu_zero, self.mu_minus)?;
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            writeln!(f, "{} {}: expected {}, found {}", mark, c.name, c.expected, c.actual)?;
        }
        write!(f, "{}", if self.passed { "divide is consistent with the germ" } else { "divide does NOT match the germ" })
    }
}

/// Compares the divide with the germ: `mu0 = delta`, `mu+ + mu0 + mu- = mu`,
/// the number of crossings between branches `i` and `j` equals `C_ij`, and
/// branch `i` crosses itself `delta_i` times.
pub fn validate(d: &Divide, germ: &GermSpec) -> Result<ValidationReport> {
    let inv = germ_invariants(germ)?;
    let r = inv.r;
    if d.max_branch() > r {
        return Err(Error::InvalidDivide(format!("divide refers to branch {} but the germ has {} branches", d.max_branch(), r)));
    }
    let c = germ.intersection_matrix()?;
    let mut checks = Vec::new();
    let mut push = |name: String, expected: u64, actual: u64| {
        checks.push(Check { name, expected, actual, passed: expected == actual });
    };
    push("double points = delta".into(), inv.delta, d.mu_zero() as u64);
    push("mu+ + mu0 + mu- = mu".into(), inv.mu, d.mu() as u64);
    let count = |a: usize, b: usize| d.double_points.iter().filter(|p| p.branches == (a, b)).count() as u64;
    for i in 1..=r {
        for j in i + 1..=r {
            push(format!("crossings of branches {} and {}", i, j), c[i - 1][j - 1], count(i, j));
        }
    }
    for i in 1..=r {
        push(format!("self-crossings of branch {}", i), inv.branch_deltas[i - 1], count(i, i));
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(ValidationReport { mu_plus: d.mu_plus(), mu_zero: d.mu_zero(), mu_minus: d.mu_minus(), checks, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn region(id: usize, sign: Sign, closure: &[usize], nbrs: &[usize]) -> SignedRegion {
        SignedRegion {
            id,
            sign,
            closure_double_points: closure.iter().copied().collect(),
            segment_neighbors: nbrs.iter().copied().collect(),
        }
    }

    fn dp(id: usize, a: usize, b: usize) -> DoublePoint {
        DoublePoint { id, branches: (a, b) }
    }

    #[test]
    fn structural_checks() {
        let dps = vec![dp(1, 2, 1)];
        let d = Divide::new(dps.clone(), vec![]).unwrap();
        assert_eq!(d.double_points()[0].branches, (1, 2));
        assert!(Divide::new(vec![dp(2, 1, 2)], vec![]).is_err());
        assert!(Divide::new(dps.clone(), vec![region(1, Sign::Plus, &[2], &[])]).is_err());
        let asym = vec![region(1, Sign::Plus, &[1], &[2]), region(2, Sign::Minus, &[1], &[])];
        assert!(Divide::new(dps.clone(), asym).is_err());
        let same = vec![region(1, Sign::Plus, &[1], &[2]), region(2, Sign::Plus, &[1], &[1])];
        assert!(Divide::new(dps.clone(), same).is_err());
        let good = vec![region(1, Sign::Plus, &[1], &[2]), region(2, Sign::Minus, &[1], &[1])];
        let d = Divide::new(dps, good).unwrap();
        assert_eq!((d.mu_plus(), d.mu_zero(), d.mu_minus()), (1, 1, 1));
        let smaller = d.without_region(1).unwrap();
        assert_eq!(smaller.regions()[0].id, 1);
        assert!(smaller.regions()[0].segment_neighbors.is_empty());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"double_points": [{"id": 1, "branches": [1, 1]}],
            "regions": [{"id": 1, "sign": "minus", "closure_double_points": [1], "segment_neighbors": []}]}"#;
        let d = Divide::from_json(text).unwrap();
        assert_eq!(Divide::from_json(&d.to_json()).unwrap(), d);
        assert!(Divide::from_json(r#"{"double_points": [], "regions": [], "extra": 1}"#).is_err());
    }
}
