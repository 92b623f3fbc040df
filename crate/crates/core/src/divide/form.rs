use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::{Divide, Sign};
use crate::error::{Error, Result};
use crate::lattice::IntMatrix;

/// A basis element of the vanishing-cycle lattice, named by the critical
/// point it comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", content = "id", rename_all = "lowercase")]
pub enum CriticalPoint {
    /// Maximum inside a plus region.
    Plus(usize),
    /// Saddle at a double point.
    Double(usize),
    /// Minimum inside a minus region.
    Minus(usize),
}

impl fmt::Display for CriticalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CriticalPoint::Plus(k) => write!(f, "R+{}", k),
            CriticalPoint::Double(k) => write!(f, "D{}", k),
            CriticalPoint::Minus(k) => write!(f, "R-{}", k),
        }
    }
}

/// The lattice `Z^mu` of vanishing cycles with its skew intersection form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleLattice {
    basis: Vec<CriticalPoint>,
    form: IntMatrix,
}

impl CycleLattice {
    pub fn basis(&self) -> &[CriticalPoint] {
        &self.basis
    }

    /// Gram matrix `J` with `<x, y> = x^T J y`.
    pub fn form(&self) -> &IntMatrix {
        &self.form
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, p: CriticalPoint) -> Option<usize> {
        self.basis.iter().position(|&q| q == p)
    }

    /// Indices of the basis elements coming from double points, in order.
    pub fn double_point_indices(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&k| matches!(self.basis[k], CriticalPoint::Double(_))).collect()
    }

    pub fn pairing(&self, x: &[BigInt], y: &[BigInt]) -> Result<BigInt> {
        if x.len() != self.rank() || y.len() != self.rank() {
            return Err(Error::Shape(format!("vectors must have length {}", self.rank())));
        }
        let jy = self.form.apply(y)?;
        Ok(x.iter().zip(&jy).fold(BigInt::zero(), |acc, (a, b)| acc + a * b))
    }
}

/// Intersection numbers of the vanishing cycles, in the basis
/// (plus regions, double points, minus regions).
///
/// `<plus R, D> = 1` when `D` lies on the closure of `R`, `<D, minus R> = 1`
/// when `D` lies on the closure of `R`, `<plus R, minus R'> = 1` when the two
/// regions share a segment; transposed pairs get `-1`, everything else `0`.
pub fn intersection_form(d: &Divide) -> CycleLattice {
    let mut basis = Vec::with_capacity(d.mu());
    basis.extend(d.regions().iter().filter(|r| r.sign == Sign::Plus).map(|r| CriticalPoint::Plus(r.id)));
    basis.extend(d.double_points().iter().map(|p| CriticalPoint::Double(p.id)));
    basis.extend(d.regions().iter().filter(|r| r.sign == Sign::Minus).map(|r| CriticalPoint::Minus(r.id)));

    let n = basis.len();
    let index = |p: CriticalPoint| basis.iter().position(|&q| q == p).expect("basis covers the divide");
    let mut rows = vec![vec![0i64; n]; n];
    let mut set = |a: usize, b: usize| {
        rows[a][b] = 1;
        rows[b][a] = -1;
    };
    for region in d.regions() {
        match region.sign {
            Sign::Plus => {
                let i = index(CriticalPoint::Plus(region.id));
                for &j in &region.closure_double_points {
                    set(i, index(CriticalPoint::Double(j)));
                }
                for &k in &region.segment_neighbors {
                    set(i, index(CriticalPoint::Minus(k)));
                }
            }
            Sign::Minus => {
                let k = index(CriticalPoint::Minus(region.id));
                for &j in &region.closure_double_points {
                    set(index(CriticalPoint::Double(j)), k);
                }
            }
        }
    }
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    let form = if n == 0 { IntMatrix::zeros(0, 0) } else { IntMatrix::from_i64(&refs) };
    CycleLattice { basis, form }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divide::{DoublePoint, SignedRegion};

    #[test]
    fn cusp_form() {
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
        let lat = intersection_form(&d);
        assert_eq!(lat.basis(), &[CriticalPoint::Double(1), CriticalPoint::Minus(1)]);
        assert_eq!(lat.form(), &IntMatrix::from_i64(&[&[0, 1], &[-1, 0]]));
        assert!(lat.form().is_antisymmetric());
    }

    #[test]
    fn empty_divide() {
        let lat = intersection_form(&Divide::empty());
        assert_eq!(lat.rank(), 0);
    }
}
