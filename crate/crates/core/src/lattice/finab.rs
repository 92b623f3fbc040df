use std::collections::{BTreeSet, HashSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{smith_normal_form, IntMatrix};
use crate::error::{Error, Result};

/// Default cap on the number of elements an explicit enumeration may produce.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1_000_000;

/// A finitely generated abelian group `Z^ambient_rank / rowspan(relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAbPresentation {
    pub ambient_rank: usize,
    pub relation_matrix: IntMatrix,
    invariant_factors: Vec<BigInt>,
}

impl FinAbPresentation {
    pub fn new(relation_matrix: IntMatrix) -> Self {
        let ambient_rank = relation_matrix.cols();
        let snf = smith_normal_form(&relation_matrix);
        let mut factors = snf.diagonal();
        factors.resize(ambient_rank, BigInt::zero());
        // unit factors carry no information about the group
        factors.retain(|d| !d.is_one());
        FinAbPresentation { ambient_rank, relation_matrix, invariant_factors: factors }
    }

    /// `(Z/n)^r / diagonal`, the `n`-torsion of the split torus `G_m^r / G_m`.
    pub fn spectral_torus_torsion(r: usize, n: u64) -> Result<Self> {
        check_modulus(n)?;
        let mut rows: Vec<Vec<BigInt>> = (0..r)
            .map(|i| (0..r).map(|j| if i == j { BigInt::from(n) } else { BigInt::zero() }).collect())
            .collect();
        if r > 0 {
            rows.push(vec![BigInt::one(); r]);
        }
        Ok(Self::new(IntMatrix::from_rows(r, &rows)?))
    }

    /// Non-unit invariant factors; zeros stand for free summands.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.invariant_factors.iter().filter(|d| d.is_zero()).count()
    }

    /// Group order, `None` when the group is infinite.
    pub fn order(&self) -> Option<BigUint> {
        if self.free_rank() > 0 {
            return None;
        }
        Some(self.invariant_factors.iter().fold(BigUint::one(), |acc, d| acc * d.magnitude()))
    }
}

pub(crate) fn check_modulus(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidModulus(n));
    }
    Ok(())
}

/// Order of the image of the row lattice `L` of `gens` in `(Z/n)^m`.
///
/// Computed from the invariant factors `d_k` of `L` as `prod n / gcd(n, d_k)`;
/// this is `n^rank(L)` whenever every `d_k` is prime to `n` (in particular for
/// saturated lattices such as the ones spanned by the invariant classes).
pub fn subgroup_quotient_order(gens: &IntMatrix, n: u64) -> Result<BigUint> {
    check_modulus(n)?;
    let nb = BigInt::from(n);
    let snf = smith_normal_form(gens);
    Ok(snf
        .invariant_factors()
        .iter()
        .map(|d| (&nb / d.gcd(&nb)).magnitude().clone())
        .fold(BigUint::one(), |acc, x| acc * x))
}

/// Number of `a ∈ (Z/n)^cols` with `M a ≡ 0 (mod n)`.
fn solution_count(m: &IntMatrix, n: u64) -> BigUint {
    let nb = BigInt::from(n);
    let snf = smith_normal_form(m);
    let diag = snf.diagonal();
    (0..m.cols())
        .map(|i| match diag.get(i) {
            Some(d) => d.gcd(&nb).magnitude().clone(),
            None => BigUint::from(n),
        })
        .fold(BigUint::one(), |acc, x| acc * x)
}

/// Sizes attached to a homomorphism restricted to a subgroup of `(Z/n)^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelImage {
    pub subgroup: BigUint,
    pub kernel: BigUint,
    pub image: BigUint,
}

/// For the subgroup `T = <rows of t_gens>` of `(Z/n)^m` and the map
/// `phi: (Z/n)^m -> (Z/n)^k` (acting on column vectors), returns `|T|`,
/// `|ker(phi|_T)|` and `|phi(T)|`.
pub fn kernel_of_hom_on_subgroup(t_gens: &IntMatrix, phi: &IntMatrix, n: u64) -> Result<KernelImage> {
    check_modulus(n)?;
    if phi.cols() != t_gens.cols() {
        return Err(Error::Shape(format!(
            "map has {} columns but the subgroup lives in rank {}",
            phi.cols(),
            t_gens.cols()
        )));
    }
    let g = t_gens.rows() as u32;
    let coords = t_gens.transpose();
    let composed = phi.mul(&coords)?;
    let total = BigUint::from(n).pow(g);
    let sol_t = solution_count(&coords, n);
    let sol_phi = solution_count(&composed, n);
    Ok(KernelImage {
        subgroup: &total / &sol_t,
        kernel: &sol_phi / &sol_t,
        image: &total / &sol_phi,
    })
}

/// All residues `sum a_k g_k mod n` for the rows `g_k` of `gens`.
///
/// Fails with [`Error::EnumerationTooLarge`] before doing any work when the
/// subgroup order exceeds `budget`.
pub fn enumerate_quotient(gens: &IntMatrix, n: u64, budget: u64) -> Result<BTreeSet<Vec<u64>>> {
    let order = subgroup_quotient_order(gens, n)?;
    if order > BigUint::from(budget) {
        return Err(Error::EnumerationTooLarge { size: order.to_string(), budget });
    }
    let nb = BigInt::from(n);
    let m = gens.cols();
    let reduced: Vec<Vec<u64>> = gens
        .row_vectors()
        .into_iter()
        .map(|row| row.iter().map(|a| a.mod_floor(&nb).to_u64().expect("residue fits")).collect())
        .collect();

    let add = |a: &[u64], b: &[u64]| -> Vec<u64> { a.iter().zip(b).map(|(x, y)| (x + y) % n).collect() };

    // grow the subgroup one generator at a time by adjoining cosets
    let mut group: HashSet<Vec<u64>> = HashSet::from([vec![0; m]]);
    for g in &reduced {
        let base: Vec<Vec<u64>> = group.iter().cloned().collect();
        let mut shift = g.clone();
        while !group.contains(&shift) {
            for s in &base {
                group.insert(add(s, &shift));
            }
            shift = add(&shift, g);
        }
    }
    debug_assert_eq!(BigUint::from(group.len()), order);
    Ok(group.into_iter().collect())
}
