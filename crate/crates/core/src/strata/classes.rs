use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::divide::{CriticalPoint, CycleLattice, Divide};
use crate::error::{Error, Result};
use crate::lattice::{kernel_basis, IntMatrix};

/// A monodromy-invariant class `c_I = sum_{i in I} c_i`, written in the
/// double-point cycles `alpha_1..alpha_mu0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantClass {
    pub subset: BTreeSet<usize>,
    pub coefficients: Vec<i64>,
    /// Number of nonzero coefficients.
    pub height: u64,
    /// `sum_{i in I, i' not in I} C_i . C_i'`.
    pub formula_height: u64,
}

impl InvariantClass {
    fn new(subset: BTreeSet<usize>, coefficients: Vec<i64>, formula_height: u64) -> Self {
        let height = coefficients.iter().filter(|&&a| a != 0).count() as u64;
        InvariantClass { subset, coefficients, height, formula_height }
    }

    /// Double-point ids (1-based) where the class has a nonzero coefficient.
    pub fn support(&self) -> BTreeSet<usize> {
        self.coefficients.iter().enumerate().filter(|(_, &a)| a != 0).map(|(j, _)| j + 1).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|&a| a == 0)
    }

    /// The class as a vector in the full cycle lattice.
    pub fn to_cycle_vector(&self, lat: &CycleLattice) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); lat.rank()];
        for (j, &a) in self.coefficients.iter().enumerate() {
            if a != 0 {
                let k = lat.index_of(CriticalPoint::Double(j + 1)).expect("double point in basis");
                v[k] = BigInt::from(a);
            }
        }
        v
    }

    /// Human-readable form such as `a1 - a2 + a3`.
    pub fn expression(&self) -> String {
        let mut out = String::new();
        for (j, &a) in self.coefficients.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let mag = a.unsigned_abs();
            let term = if mag == 1 { format!("a{}", j + 1) } else { format!("{}*a{}", mag, j + 1) };
            if out.is_empty() {
                out = if a < 0 { format!("-{}", term) } else { term };
            } else {
                out.push_str(if a < 0 { " - " } else { " + " });
                out.push_str(&term);
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

/// The atomic classes `c_1..c_r` together with the branch data needed to
/// form class sums.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtomicClasses {
    pub classes: Vec<InvariantClass>,
    /// `crossings[i][j]`: double points shared by branches `i + 1` and `j + 1`.
    pub crossings: Vec<Vec<u64>>,
}

impl AtomicClasses {
    pub fn branch_count(&self) -> usize {
        self.classes.len()
    }

    pub fn double_point_count(&self) -> usize {
        self.classes.first().map_or(0, |c| c.coefficients.len())
    }

    /// Rows `c_1..c_r` as an integer matrix over the double points.
    pub fn matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self.classes.iter().map(|c| c.coefficients.clone()).collect();
        IntMatrix::from_rows(self.double_point_count(), &rows).expect("rows have equal length")
    }
}

/// Invariant classes `c_i = sum_{j in J_i°} ±alpha_j`, one per branch.
///
/// For each branch the vectors supported on its crossing points that pair
/// to zero with every cycle form a rank one lattice spanned by a `±1`
/// vector; the relative signs of different branches are then fixed by
/// requiring opposite signs at every shared double point, propagated along
/// the branches that share double points. The global sign makes the first
/// nonzero coefficient of the first nonzero class `+1`.
pub fn atomic_classes(lat: &CycleLattice, d: &Divide, branch_count: usize) -> Result<AtomicClasses> {
    let r = branch_count;
    let mu0 = d.mu_zero();
    if d.max_branch() > r {
        return Err(Error::InvalidDivide(format!("divide refers to branch {} of {}", d.max_branch(), r)));
    }
    let bad = |msg: String| Err(Error::InconsistentDivide(msg));

    let mut crossings = vec![vec![0u64; r]; r];
    for p in d.double_points() {
        let (a, b) = p.branches;
        if a != b {
            crossings[a - 1][b - 1] += 1;
            crossings[b - 1][a - 1] += 1;
        }
    }

    let dp_columns: Vec<usize> = lat.double_point_indices();
    let mut coeffs: Vec<Vec<i64>> = vec![vec![0; mu0]; r];
    for i in 1..=r {
        let support = d.cross_points_on(i);
        if support.is_empty() {
            continue;
        }
        let cols: Vec<usize> = support.iter().map(|&j| dp_columns[j - 1]).collect();
        let kernel = kernel_basis(&lat.form().select_columns(&cols));
        if kernel.rows() != 1 {
            return bad(format!(
                "cycles supported on the crossing points of branch {} have {} independent invariants, expected 1",
                i,
                kernel.rows()
            ));
        }
        for (pos, &j) in support.iter().enumerate() {
            let a = &kernel[(0, pos)];
            if !(a.is_one() || (-a).is_one()) {
                return bad(format!("invariant class of branch {} has coefficient {} at double point {}", i, a, j));
            }
            coeffs[i - 1][j - 1] = a.to_i64().expect("unit");
        }
    }

    // fix relative signs by walking the graph of branches sharing double points
    let mut fixed = vec![false; r];
    for start in 0..r {
        if fixed[start] || coeffs[start].iter().all(|&a| a == 0) {
            continue;
        }
        fixed[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for p in d.double_points() {
                let (a, b) = (p.branches.0 - 1, p.branches.1 - 1);
                if a == b || (a != i && b != i) {
                    continue;
                }
                let other = if a == i { b } else { a };
                if fixed[other] {
                    continue;
                }
                let j = p.id - 1;
                if coeffs[other][j] == coeffs[i][j] {
                    coeffs[other].iter_mut().for_each(|x| *x = -*x);
                }
                fixed[other] = true;
                queue.push_back(other);
            }
        }
    }

    for p in d.double_points() {
        let (a, b) = (p.branches.0 - 1, p.branches.1 - 1);
        let j = p.id - 1;
        if a != b && coeffs[a][j] != -coeffs[b][j] {
            return bad(format!(
                "branches {} and {} cannot have opposite signs at double point {}",
                a + 1,
                b + 1,
                p.id
            ));
        }
    }
    if let Some(j) = (0..mu0).find(|&j| coeffs.iter().map(|c| c[j]).sum::<i64>() != 0) {
        return bad(format!("the classes do not sum to zero at double point {}", j + 1));
    }

    if let Some(&lead) = coeffs.iter().flatten().find(|&&a| a != 0) {
        if lead < 0 {
            coeffs.iter_mut().flatten().for_each(|x| *x = -*x);
        }
    }

    let classes = coeffs
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            let formula = (0..r).filter(|&k| k != i).map(|k| crossings[i][k]).sum();
            InvariantClass::new(BTreeSet::from([i + 1]), c, formula)
        })
        .collect();
    Ok(AtomicClasses { classes, crossings })
}

/// `c_I = sum_{i in I} c_i`, with both its support size and the value
/// `sum_{i in I, i' not in I} C_i . C_i'` computed from `c_matrix`.
pub fn class_sum(cs: &AtomicClasses, subset: &BTreeSet<usize>, c_matrix: &[Vec<u64>]) -> Result<InvariantClass> {
    let r = cs.branch_count();
    if let Some(&i) = subset.iter().find(|&&i| i == 0 || i > r) {
        return Err(Error::Validation(format!("branch {} is outside 1..{}", i, r)));
    }
    let mut coeffs = vec![0i64; cs.double_point_count()];
    for &i in subset {
        for (x, a) in coeffs.iter_mut().zip(&cs.classes[i - 1].coefficients) {
            *x += a;
        }
    }
    let mut formula = 0;
    for &i in subset {
        for k in 1..=r {
            if !subset.contains(&k) {
                formula += c_matrix[i - 1][k - 1];
            }
        }
    }
    Ok(InvariantClass::new(subset.clone(), coeffs, formula))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divide::{generate_grid_divide, intersection_form, DoublePoint};

    #[test]
    fn node_classes() {
        let d = Divide::new(vec![DoublePoint { id: 1, branches: (1, 2) }], vec![]).unwrap();
        let cs = atomic_classes(&intersection_form(&d), &d, 2).unwrap();
        assert_eq!(cs.classes[0].coefficients, vec![1]);
        assert_eq!(cs.classes[1].coefficients, vec![-1]);
        assert_eq!(cs.classes[0].expression(), "a1");
    }

    #[test]
    fn cusp_has_zero_class() {
        let g = generate_grid_divide(2, 3).unwrap();
        let cs = atomic_classes(&intersection_form(&g.divide), &g.divide, 1).unwrap();
        assert!(cs.classes[0].is_zero());
        assert_eq!(cs.classes[0].expression(), "0");
    }
}
