use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Smith normal form `U·A·V = D` together with the inverses of the
/// unimodular transforms.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    /// Diagonal of `D`, length `min(rows, cols)`, zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// The nonzero invariant factors `d_1 | d_2 | ...`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }
}

struct Reducer {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    // row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.d.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
        self.u_inv.add_col_multiple(src, dst, &-c);
    }

    // col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.d.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
        self.v_inv.add_row_multiple(src, dst, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Smallest nonzero |entry| in the trailing block, ties to lowest (row, col).
    fn pick_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let (m, n) = self.d.shape();
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let a = &self.d[(i, j)];
                if a.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.d[(bi, bj)].abs() <= a.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn first_non_multiple(&self, t: usize) -> Option<usize> {
        let (m, n) = self.d.shape();
        let p = &self.d[(t, t)];
        (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&self.d[(i, j)] % p).is_zero()))
    }

    fn run(&mut self) {
        let (m, n) = self.d.shape();
        for t in 0..m.min(n) {
            loop {
                let Some((pi, pj)) = self.pick_pivot(t) else { return };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let pivot = self.d[(t, t)].clone();
                let mut clean = true;
                for i in t + 1..m {
                    if self.d[(i, t)].is_zero() {
                        continue;
                    }
                    let q = &self.d[(i, t)] / &pivot;
                    self.add_row(i, t, &-q);
                    clean &= self.d[(i, t)].is_zero();
                }
                for j in t + 1..n {
                    if self.d[(t, j)].is_zero() {
                        continue;
                    }
                    let q = &self.d[(t, j)] / &pivot;
                    self.add_col(j, t, &-q);
                    clean &= self.d[(t, j)].is_zero();
                }
                if !clean {
                    continue;
                }
                if let Some(i) = self.first_non_multiple(t) {
                    self.add_row(t, i, &BigInt::from(1));
                    continue;
                }
                break;
            }
            if self.d[(t, t)].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

/// Computes the Smith normal form of `a`.
///
/// Pivots are chosen as the smallest nonzero absolute value in the remaining
/// block, ties broken by lowest `(row, col)`, so the transforms are
/// reproducible run to run.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = a.shape();
    let mut r = Reducer {
        d: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    r.run();
    SmithForm { u: r.u, d: r.d, v: r.v, u_inv: r.u_inv, v_inv: r.v_inv }
}

/// Basis of the integer kernel `{x : A x = 0}`, returned as the rows of a
/// matrix. The basis spans a saturated sublattice.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    let n = a.cols();
    let rows: Vec<Vec<BigInt>> = (rank..n).map(|j| snf.v.column(j)).collect();
    IntMatrix::from_rows(n, &rows).expect("kernel columns have ambient length")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(a: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).unwrap().mul(&s.v).unwrap(), s.d);
        assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntMatrix::identity(a.rows()));
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), IntMatrix::identity(a.cols()));
        s
    }

    #[test]
    fn identity_is_fixed() {
        let i3 = IntMatrix::identity(3);
        let s = check(&i3);
        assert_eq!(s.d, i3);
        assert_eq!(s.u, i3);
        assert_eq!(s.v, i3);
    }

    #[test]
    fn two_by_two_example() {
        let s = check(&IntMatrix::from_i64(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn zero_matrix() {
        let z = IntMatrix::zeros(2, 2);
        let s = check(&z);
        assert!(s.d.is_zero());
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(2));
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn divisibility_needs_fixup() {
        // diag(2, 3) has invariant factors (1, 6)
        let s = check(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::one(), BigInt::from(6)]);
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = IntMatrix::from_i64(&[&[1, -1, 1, 0]]);
        let k = kernel_basis(&a);
        assert_eq!(k.rows(), 3);
        for row in k.row_vectors() {
            assert!(a.apply(&row).unwrap().iter().all(Zero::is_zero));
        }
    }
}
