use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{smith_normal_form, IntMatrix};
use crate::error::{Error, Result};

/// Row-style Hermite normal form of the lattice spanned by the rows of `a`.
/// Zero rows are dropped, pivots are positive, and entries above a pivot lie
/// in `[0, pivot)`. Two generator sets span the same lattice iff their HNFs
/// are equal.
pub fn hermite_normal_form(a: &IntMatrix) -> IntMatrix {
    let mut h = a.clone();
    let (m, n) = h.shape();
    let mut r = 0;
    for j in 0..n {
        if r == m {
            break;
        }
        loop {
            // smallest nonzero |entry| at or below row r in column j
            let pick = (r..m)
                .filter(|&i| !h[(i, j)].is_zero())
                .min_by(|&x, &y| h[(x, j)].abs().cmp(&h[(y, j)].abs()).then(x.cmp(&y)));
            let Some(p) = pick else { break };
            h.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..m {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let q = &h[(i, j)] / &h[(r, j)];
                h.add_row_multiple(i, r, &-q);
                done &= h[(i, j)].is_zero();
            }
            if done {
                break;
            }
        }
        if h[(r, j)].is_zero() {
            continue;
        }
        if h[(r, j)].is_negative() {
            h.negate_row(r);
        }
        let pivot = h[(r, j)].clone();
        for i in 0..r {
            let q = h[(i, j)].div_floor(&pivot);
            h.add_row_multiple(i, r, &-q);
        }
        r += 1;
    }
    h.submatrix(0..r, 0..n)
}

/// A sublattice of `Z^ambient`, kept in Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient: usize,
    basis: IntMatrix,
}

impl Lattice {
    pub fn from_generators(gens: &IntMatrix) -> Self {
        Lattice { ambient: gens.cols(), basis: hermite_normal_form(gens) }
    }

    pub fn from_vectors(ambient: usize, vectors: &[Vec<BigInt>]) -> Result<Self> {
        Ok(Self::from_generators(&IntMatrix::from_rows(ambient, vectors)?))
    }

    pub fn zero(ambient: usize) -> Self {
        Lattice { ambient, basis: IntMatrix::zeros(0, ambient) }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical (HNF) basis, one vector per row.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::Shape(format!("vector of length {} in Z^{}", v.len(), self.ambient)));
        }
        let extra = IntMatrix::from_rows(self.ambient, &[v.to_vec()])?;
        Ok(hermite_normal_form(&self.basis.vstack(&extra)?) == self.basis)
    }

    pub fn is_subset_of(&self, other: &Lattice) -> Result<bool> {
        for v in self.basis.row_vectors() {
            if !other.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A lattice is saturated when `Z^ambient / L` is torsion free.
    pub fn is_saturated(&self) -> bool {
        smith_normal_form(&self.basis).invariant_factors().iter().all(|d| d == &BigInt::from(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_lattice_same_hnf() {
        let a = IntMatrix::from_i64(&[&[1, 2, 3], &[0, 1, 1]]);
        let b = IntMatrix::from_i64(&[&[1, 3, 4], &[2, 5, 7], &[1, 1, 2]]);
        assert_eq!(Lattice::from_generators(&a), Lattice::from_generators(&b));
    }

    #[test]
    fn hnf_shape() {
        let h = hermite_normal_form(&IntMatrix::from_i64(&[&[4, 6], &[6, 9], &[0, 0]]));
        assert_eq!(h, IntMatrix::from_i64(&[&[2, 3]]));
    }

    #[test]
    fn saturation() {
        let l = Lattice::from_generators(&IntMatrix::from_i64(&[&[2, 0]]));
        assert!(!l.is_saturated());
        assert!(Lattice::from_generators(&IntMatrix::from_i64(&[&[1, -1, 1, 0]])).is_saturated());
        assert!(l.contains(&[BigInt::from(4), BigInt::from(0)]).unwrap());
        assert!(!l.contains(&[BigInt::from(1), BigInt::from(0)]).unwrap());
    }
}
