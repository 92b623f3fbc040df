//! Picard-Lefschetz monodromy of the vanishing-cycle lattice: transvections,
//! the invariant sublattice, the symplectic quotient and mod-`p` evidence
//! that the monodromy acts irreducibly on it.

mod evidence;
mod fp;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::divide::CycleLattice;
use crate::error::{Error, Result};
use crate::lattice::{kernel_basis, smith_normal_form, IntMatrix, Lattice};

pub use evidence::{sp_fullness_evidence, EvidenceReport, PrimeEvidence};

/// Which sign the Picard-Lefschetz formula uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignConvention {
    #[default]
    Plus,
    Minus,
}

impl SignConvention {
    fn value(self) -> i64 {
        match self {
            SignConvention::Plus => 1,
            SignConvention::Minus => -1,
        }
    }
}

/// `alpha -> alpha + s <alpha, delta_i> delta_i` as a matrix on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transvection {
    pub cycle_index: usize,
    pub sign: SignConvention,
    pub matrix: IntMatrix,
}

impl Transvection {
    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        self.matrix.apply(v)
    }

    /// The `k`-th power, `alpha -> alpha + k s <alpha, delta_i> delta_i`.
    pub fn power(&self, k: i64) -> IntMatrix {
        let n = self.matrix.rows();
        let mut m = IntMatrix::identity(n);
        let i = self.cycle_index;
        for c in 0..n {
            let shear = &self.matrix[(i, c)] - if c == i { BigInt::from(1) } else { BigInt::zero() };
            m[(i, c)] += shear * k;
        }
        m
    }
}

/// Picard-Lefschetz transformation of the `i`-th basis cycle.
pub fn picard_lefschetz(lat: &CycleLattice, i: usize, sign: SignConvention) -> Result<Transvection> {
    let n = lat.rank();
    if i >= n {
        return Err(Error::InvalidIndex { index: i, rank: n });
    }
    let j = lat.form();
    let mut m = IntMatrix::identity(n);
    // <alpha, delta_i> = sum_k alpha_k J[k][i]
    for k in 0..n {
        m[(i, k)] += &j[(k, i)] * sign.value();
    }
    Ok(Transvection { cycle_index: i, sign, matrix: m })
}

pub fn all_generators(lat: &CycleLattice, sign: SignConvention) -> Vec<Transvection> {
    (0..lat.rank()).map(|i| picard_lefschetz(lat, i, sign).expect("index in range")).collect()
}

/// The null space of the form, `{alpha : <alpha, delta_j> = 0 for all j}`.
pub fn radical(lat: &CycleLattice) -> Lattice {
    Lattice::from_generators(&kernel_basis(lat.form()))
}

/// Vectors fixed by every transformation in `gens`.
pub fn fixed_lattice(rank: usize, gens: &[IntMatrix]) -> Result<Lattice> {
    let id = IntMatrix::identity(rank);
    let mut stacked = IntMatrix::zeros(0, rank);
    for g in gens {
        stacked = stacked.vstack(&g.sub(&id)?)?;
    }
    Ok(Lattice::from_generators(&kernel_basis(&stacked)))
}

/// The lattice `W = E / radical` with its induced nondegenerate form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticQuotient {
    pub radical: Lattice,
    pub quotient_rank: usize,
    /// Form on `W` in the chosen basis.
    pub induced_form: IntMatrix,
    /// Action of each Picard-Lefschetz generator on `W`.
    pub induced_generators: Vec<IntMatrix>,
    /// `quotient_rank x mu` matrix sending a cycle to its class in `W`.
    pub projection: IntMatrix,
}

impl SymplecticQuotient {
    pub fn form_determinant(&self) -> BigInt {
        self.induced_form.determinant().expect("square form")
    }

    /// The determinant of a nondegenerate skew form is the square of its
    /// Pfaffian; returns `|Pf|` when that holds.
    pub fn pfaffian_abs(&self) -> Option<BigInt> {
        let det = self.form_determinant();
        if det.is_zero() || det.is_negative() {
            return None;
        }
        let root = det.sqrt();
        (&root * &root == det).then_some(root)
    }
}

/// Splits off the radical using the Smith transform `V` of the form: the
/// last columns of `V` span the radical, so in the basis given by the columns
/// of `V` the form and the generators become block triangular and their
/// leading blocks describe `W`.
pub fn symplectic_quotient(lat: &CycleLattice, sign: SignConvention) -> SymplecticQuotient {
    let n = lat.rank();
    let j = lat.form();
    let snf = smith_normal_form(j);
    let q = snf.rank();
    let v = &snf.v;
    let v_inv = &snf.v_inv;
    let form_in_v = v.transpose().mul(j).and_then(|m| m.mul(v)).expect("square shapes");
    let induced_form = form_in_v.submatrix(0..q, 0..q);
    let induced_generators = all_generators(lat, sign)
        .iter()
        .map(|t| {
            let m = v_inv.mul(&t.matrix).and_then(|m| m.mul(v)).expect("square shapes");
            m.submatrix(0..q, 0..q)
        })
        .collect();
    SymplecticQuotient {
        radical: radical(lat),
        quotient_rank: q,
        induced_form,
        induced_generators,
        projection: v_inv.submatrix(0..q, 0..n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divide::{intersection_form, Divide, DoublePoint, Sign, SignedRegion};

    fn cusp() -> CycleLattice {
        let d = Divide::new(
            vec![DoublePoint { id: 1, branches: (1, 1) }],
            vec![SignedRegion {
                id: 1,
                sign: Sign::Minus,
                closure_double_points: [1].into(),
                segment_neighbors: Default::default(),
            }],
        )
        .unwrap();
        intersection_form(&d)
    }

    #[test]
    fn transvection_basics() {
        let lat = cusp();
        for sign in [SignConvention::Plus, SignConvention::Minus] {
            let t = picard_lefschetz(&lat, 0, sign).unwrap();
            let delta = vec![BigInt::from(1), BigInt::zero()];
            assert_eq!(t.apply(&delta).unwrap(), delta);
            assert_eq!(t.matrix.determinant().unwrap(), BigInt::from(1));
            let j = lat.form();
            assert_eq!(&t.matrix.transpose().mul(j).unwrap().mul(&t.matrix).unwrap(), j);
            let cubed = t.matrix.mul(&t.matrix).unwrap().mul(&t.matrix).unwrap();
            assert_eq!(cubed, t.power(3));
        }
        assert!(matches!(picard_lefschetz(&lat, 2, SignConvention::Plus), Err(Error::InvalidIndex { index: 2, rank: 2 })));
    }

    #[test]
    fn cusp_quotient() {
        let sq = symplectic_quotient(&cusp(), SignConvention::Plus);
        assert_eq!(sq.radical.rank(), 0);
        assert_eq!(sq.quotient_rank, 2);
        assert_eq!(sq.pfaffian_abs(), Some(BigInt::from(1)));
    }

    #[test]
    fn node_quotient_is_zero() {
        let d = Divide::new(vec![DoublePoint { id: 1, branches: (1, 2) }], vec![]).unwrap();
        let lat = intersection_form(&d);
        let sq = symplectic_quotient(&lat, SignConvention::Plus);
        assert_eq!((sq.radical.rank(), sq.quotient_rank), (1, 0));
    }
}
