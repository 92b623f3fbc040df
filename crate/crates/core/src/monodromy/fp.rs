//! Small dense linear algebra over a prime field `F_p`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::lattice::IntMatrix;

pub(crate) type FpMatrix = Vec<Vec<u64>>;

pub(crate) fn reduce(m: &IntMatrix, p: u64) -> FpMatrix {
    let pb = BigInt::from(p);
    let r = m.reduce_mod(&pb);
    (0..r.rows())
        .map(|i| (0..r.cols()).map(|j| r[(i, j)].to_u64().expect("residue fits")).collect())
        .collect()
}

pub(crate) fn identity(n: usize) -> FpMatrix {
    (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect()
}

pub(crate) fn mul(a: &FpMatrix, b: &FpMatrix, p: u64) -> FpMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(0u64, |acc, k| (acc + row[k] * b[k][j]) % p))
                .collect()
        })
        .collect()
}

pub(crate) fn add_scaled(a: &FpMatrix, b: &FpMatrix, c: u64, p: u64) -> FpMatrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| (x + c * y) % p).collect())
        .collect()
}

pub(crate) fn transpose(a: &FpMatrix) -> FpMatrix {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|row| row[j]).collect()).collect()
}

pub(crate) fn apply(a: &FpMatrix, v: &[u64], p: u64) -> Vec<u64> {
    a.iter().map(|row| row.iter().zip(v).fold(0, |acc, (x, y)| (acc + x * y) % p)).collect()
}

pub(crate) fn inv(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2)
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Row echelon basis of a subspace, kept reduced so membership tests are a
/// single elimination pass.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    pub(crate) fn new(p: u64) -> Self {
        Echelon { p, rows: Vec::new() }
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut v = v.to_vec();
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = (*x + (p - c) * r) % p;
                }
            }
        }
        v
    }

    /// Adds `v`; returns the reduced vector when it was new.
    pub(crate) fn insert(&mut self, v: &[u64]) -> Option<Vec<u64>> {
        let p = self.p;
        let mut w = self.reduce(v);
        let piv = w.iter().position(|&x| x != 0)?;
        let s = inv(w[piv], p);
        w.iter_mut().for_each(|x| *x = *x * s % p);
        for (_, row) in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                for (x, y) in row.iter_mut().zip(&w) {
                    *x = (*x + (p - c) * y) % p;
                }
            }
        }
        self.rows.push((piv, w.clone()));
        Some(w)
    }
}

pub(crate) fn rank(a: &FpMatrix, p: u64) -> usize {
    let mut e = Echelon::new(p);
    for row in a {
        e.insert(row);
    }
    e.dim()
}

/// Basis of `{v : A v = 0}`.
pub(crate) fn nullspace(a: &FpMatrix, p: u64) -> Vec<Vec<u64>> {
    let n = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<u64>> = a.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(k) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, k);
        let s = inv(m[r][c], p);
        m[r].iter_mut().for_each(|x| *x = *x * s % p);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; n];
            v[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[row][f]) % p;
            }
            v
        })
        .collect()
}

/// Dimension of the smallest subspace containing `v` and stable under `gens`.
pub(crate) fn spin(v: &[u64], gens: &[FpMatrix], p: u64) -> usize {
    let mut span = Echelon::new(p);
    let Some(first) = span.insert(v) else { return 0 };
    let mut queue = vec![first];
    let n = v.len();
    while let Some(w) = queue.pop() {
        for g in gens {
            if let Some(new) = span.insert(&apply(g, &w, p)) {
                queue.push(new);
                if span.dim() == n {
                    return n;
                }
            }
        }
    }
    span.dim()
}

/// Enumerates one representative per line of `span(basis)`: vectors whose
/// first nonzero coordinate (in the basis) is 1.
pub(crate) fn projective_points(basis: &[Vec<u64>], p: u64, mut visit: impl FnMut(&[u64]) -> bool) {
    let k = basis.len();
    let n = basis.first().map_or(0, Vec::len);
    for lead in 0..k {
        let tail = k - lead - 1;
        let mut coeffs = vec![0u64; tail];
        loop {
            let mut v = basis[lead].clone();
            for (c, b) in coeffs.iter().zip(&basis[lead + 1..]) {
                for i in 0..n {
                    v[i] = (v[i] + c * b[i]) % p;
                }
            }
            if !visit(&v) {
                return;
            }
            // next coefficient tuple in base p
            let mut idx = 0;
            loop {
                if idx == tail {
                    break;
                }
                coeffs[idx] += 1;
                if coeffs[idx] < p {
                    break;
                }
                coeffs[idx] = 0;
                idx += 1;
            }
            if idx == tail {
                break;
            }
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_and_rank() {
        let a = vec![vec![1, 2, 3], vec![2, 4, 6]];
        assert_eq!(rank(&a, 7), 1);
        let ns = nullspace(&a, 7);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(apply(&a, &v, 7).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn projective_count() {
        let basis = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let mut count = 0;
        projective_points(&basis, 3, |_| {
            count += 1;
            true
        });
        assert_eq!(count, (27 - 1) / 2);
    }

    #[test]
    fn spin_of_shear() {
        let t = vec![vec![1, 1], vec![0, 1]];
        assert_eq!(spin(&[1, 0], &[t.clone()], 5), 1);
        assert_eq!(spin(&[0, 1], &[t], 5), 2);
        assert!(is_prime(7) && !is_prime(9) && !is_prime(1));
    }
}
