use std::collections::BTreeSet;

use acampo::branch::Polynomial;
use acampo::lattice::{
    enumerate_quotient, hermite_normal_form, kernel_of_hom_on_subgroup, smith_normal_form, subgroup_quotient_order,
    IntMatrix, DEFAULT_ENUMERATION_BUDGET,
};
use acampo::strata::{enumerate_partitions, BranchPartition};
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        (Just(c), proptest::collection::vec(proptest::collection::vec(-bound..=bound, c), r))
    })
}

proptest! {
    #[test]
    fn smith_form_is_a_valid_factorization((cols, rows) in matrix(5, 5, 20)) {
        let a = IntMatrix::from_rows(cols, &rows).unwrap();
        let f = smith_normal_form(&a);
        prop_assert_eq!(f.u.mul(&a).unwrap().mul(&f.v).unwrap(), f.d.clone());
        prop_assert_eq!(f.u.mul(&f.u_inv).unwrap(), IntMatrix::identity(a.rows()));
        prop_assert_eq!(f.v.mul(&f.v_inv).unwrap(), IntMatrix::identity(a.cols()));
        let diag = f.diagonal();
        prop_assert!(diag.iter().all(|d| !d.is_negative()));
        for w in diag.windows(2) {
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(divides, "{} does not divide {}", w[0], w[1]);
        }
    }

    #[test]
    fn hermite_form_spans_the_same_rows((cols, rows) in matrix(4, 4, 12)) {
        let a = IntMatrix::from_rows(cols, &rows).unwrap();
        let h = hermite_normal_form(&a);
        // same row lattice iff the stacked matrix has the same Smith invariants as each part
        let both = a.vstack(&h).unwrap();
        prop_assert_eq!(smith_normal_form(&both).invariant_factors(), smith_normal_form(&a).invariant_factors());
        prop_assert_eq!(smith_normal_form(&h).invariant_factors(), smith_normal_form(&a).invariant_factors());
        prop_assert_eq!(hermite_normal_form(&h), h);
    }

    #[test]
    fn quotient_order_matches_enumeration((cols, rows) in matrix(4, 4, 9), n in 2u64..=7) {
        let a = IntMatrix::from_rows(cols, &rows).unwrap();
        let listed = enumerate_quotient(&a, n, DEFAULT_ENUMERATION_BUDGET).unwrap();
        prop_assert_eq!(subgroup_quotient_order(&a, n).unwrap(), BigUint::from(listed.len()));
        prop_assert!(listed.contains(&vec![0; cols]));
    }

    #[test]
    fn kernel_times_image_is_the_subgroup(
        (cols, t) in matrix(3, 3, 9),
        phi in proptest::collection::vec(proptest::collection::vec(-9i64..=9, 3), 1..=3),
        n in 2u64..=9,
    ) {
        let t = IntMatrix::from_rows(cols, &t).unwrap();
        let phi: Vec<Vec<i64>> = phi.into_iter().map(|r| r[..cols].to_vec()).collect();
        let phi = IntMatrix::from_rows(cols, &phi).unwrap();
        let ki = kernel_of_hom_on_subgroup(&t, &phi, n).unwrap();
        prop_assert_eq!(&ki.kernel * &ki.image, ki.subgroup.clone());
        let elements = enumerate_quotient(&t, n, DEFAULT_ENUMERATION_BUDGET).unwrap();
        prop_assert_eq!(ki.subgroup, BigUint::from(elements.len()));
        let nb = BigInt::from(n);
        let kernel = elements
            .iter()
            .filter(|x| {
                let v: Vec<BigInt> = x.iter().map(|&a| BigInt::from(a)).collect();
                phi.apply(&v).unwrap().iter().all(|y| (y % &nb).is_zero())
            })
            .count();
        prop_assert_eq!(ki.kernel, BigUint::from(kernel));
    }

    #[test]
    fn one_merge_coarsenings_are_the_covers(r in 2usize..=6, pick in 0usize..1000) {
        let all = enumerate_partitions(r, true).unwrap();
        let p = &all[pick % all.len()];
        let covers: BTreeSet<BranchPartition> = p.one_merge_coarsenings().into_iter().collect();
        let expected: BTreeSet<BranchPartition> =
            all.iter().filter(|q| q.len() + 1 == p.len() && p.refines(q)).cloned().collect();
        prop_assert_eq!(covers, expected);
    }

    #[test]
    fn polynomials_print_and_parse_back(
        terms in proptest::collection::btree_map((0u32..4, 0u32..4), -5i64..=5, 0..6)
    ) {
        let mut p = Polynomial::zero();
        for ((i, j), c) in terms {
            p = p.add(&Polynomial::monomial(BigInt::from(c), i, j));
        }
        let text = p.to_string();
        let back: Polynomial = text.parse().unwrap();
        prop_assert_eq!(back, p);
    }
}
