use std::collections::{BTreeSet, HashSet};
use std::fs;
use std::path::PathBuf;

use acampo::branch::GermSpec;
use acampo::divide::{generate_grid_divide, generate_line_arrangement_divide, Divide};
use acampo::lattice::{enumerate_quotient, FinAbPresentation, IntMatrix, Lattice, DEFAULT_ENUMERATION_BUDGET};
use acampo::monodromy::radical;
use acampo::strata::{class_sum, covering_component_count, curve_component_count, BranchPartition, Strata};
use num_bigint::{BigInt, BigUint};

fn fixture(name: &str) -> String {
    fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)).unwrap()
}

fn gl4() -> Strata {
    let germ = GermSpec::from_json(&fixture("gl4.germ.json")).unwrap();
    let divide = Divide::from_json(&fixture("gl4.divide.json")).unwrap();
    Strata::new(&germ, &divide).unwrap()
}

fn partition(blocks: &[&[usize]]) -> BranchPartition {
    BranchPartition::new(4, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
}

/// Sign oracle: try every ±1 assignment on J_i° and keep those in the radical.
fn brute_force_class(s: &Strata, divide: &Divide, branch: usize) -> Vec<Vec<i64>> {
    let support = divide.cross_points_on(branch);
    let lat = &s.lattice;
    let mut found = Vec::new();
    for mask in 0..(1u32 << support.len()) {
        let mut coeffs = vec![0i64; divide.mu_zero()];
        for (k, &j) in support.iter().enumerate() {
            coeffs[j - 1] = if mask >> k & 1 == 1 { -1 } else { 1 };
        }
        let mut v = vec![BigInt::from(0); lat.rank()];
        for (j, &a) in coeffs.iter().enumerate() {
            v[lat.index_of(acampo::divide::CriticalPoint::Double(j + 1)).unwrap()] = BigInt::from(a);
        }
        if lat.form().apply(&v).unwrap().iter().all(|x| *x == BigInt::from(0)) {
            found.push(coeffs);
        }
    }
    found
}

#[test]
fn atomic_classes_match_displayed_vectors() {
    let s = gl4();
    let expected: [[i64; 6]; 4] = [[1, -1, 1, 0, 0, 0], [-1, 0, 0, 1, -1, 0], [0, 0, -1, 0, 1, 1], [0, 1, 0, -1, 0, -1]];
    let sign = s.classes.classes[0].coefficients[0];
    for (c, e) in s.classes.classes.iter().zip(expected) {
        let scaled: Vec<i64> = e.iter().map(|x| x * sign).collect();
        assert_eq!(c.coefficients, scaled);
    }
    assert_eq!(sign, 1, "first coefficient of c_1 is normalized to +1");
}

#[test]
fn sign_oracle_agrees() {
    let s = gl4();
    let divide = Divide::from_json(&fixture("gl4.divide.json")).unwrap();
    for i in 1..=4 {
        let options = brute_force_class(&s, &divide, i);
        assert_eq!(options.len(), 2, "exactly ±c_{i}");
        assert!(options.contains(&s.classes.classes[i - 1].coefficients));
    }
}

#[test]
fn classes_span_the_radical() {
    let s = gl4();
    let rows: Vec<Vec<BigInt>> = s.classes.classes.iter().map(|c| c.to_cycle_vector(&s.lattice)).collect();
    let span = Lattice::from_vectors(s.lattice.rank(), &rows).unwrap();
    assert_eq!(span, radical(&s.lattice));
    assert_eq!(span.rank(), 3);
}

#[test]
fn heights_and_cancellation() {
    let s = gl4();
    let one = class_sum(&s.classes, &BTreeSet::from([1]), &s.c_matrix).unwrap();
    assert_eq!(one.height, 3);
    let twelve = class_sum(&s.classes, &BTreeSet::from([1, 2]), &s.c_matrix).unwrap();
    assert_eq!(twelve.coefficients, vec![0, -1, 1, 1, -1, 0]);
    assert_eq!((twelve.height, twelve.formula_height), (4, 4));
    let all = class_sum(&s.classes, &BTreeSet::from([1, 2, 3, 4]), &s.c_matrix).unwrap();
    assert!(all.is_zero());
    // every subset: support size equals the closed formula
    for mask in 1u32..16 {
        let subset: BTreeSet<usize> = (1..=4).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        let c = class_sum(&s.classes, &subset, &s.c_matrix).unwrap();
        assert_eq!(c.height, c.formula_height, "{subset:?}");
    }
    // disjoint I, I': h(I ∪ I') = h(I) + h(I') - 2 sum C
    let a = BTreeSet::from([1]);
    let b = BTreeSet::from([3, 4]);
    let ab: BTreeSet<usize> = a.union(&b).copied().collect();
    let h = |x: &BTreeSet<usize>| class_sum(&s.classes, x, &s.c_matrix).unwrap().height;
    let cross: u64 = a.iter().flat_map(|&i| b.iter().map(move |&k| (i, k))).map(|(i, k)| s.c_matrix[i - 1][k - 1]).sum();
    assert_eq!(h(&ab), h(&a) + h(&b) - 2 * cross);
}

#[test]
fn stratum_records() {
    let s = gl4();
    let finest = s.record(&BranchPartition::finest(4)).unwrap();
    assert_eq!((finest.height, finest.rank, finest.formula_height), (6, 3, 6));
    assert_eq!(finest.ordered_height, 12);
    let pairs = s.record(&partition(&[&[1, 2], &[3, 4]])).unwrap();
    assert_eq!((pairs.height, pairs.rank), (4, 1));
    let trivial = s.record(&BranchPartition::trivial(4)).unwrap();
    assert_eq!((trivial.height, trivial.rank), (0, 0));
    for r in &s.records {
        assert_eq!(r.height, r.formula_height);
        assert!(r.rank + 1 <= r.partition.len().max(1));
    }
}

/// (n-1)(n-2)...(n-l+1): elements of (Z/n)^l / diagonal with pairwise distinct coordinates.
fn closed_form(n: u64, l: usize) -> u64 {
    (1..l as u64).map(|k| n.saturating_sub(k)).product()
}

#[test]
fn multiplicities() {
    let s = gl4();
    let two = s.record(&partition(&[&[1, 2], &[3, 4]])).unwrap();
    let three = s.record(&partition(&[&[1, 2], &[3], &[4]])).unwrap();
    let finest = s.record(&BranchPartition::finest(4)).unwrap();
    let m = |r, n| s.multiplicity(r, n, DEFAULT_ENUMERATION_BUDGET).unwrap().value;
    assert_eq!(m(two, 2), BigUint::from(1u32));
    assert_eq!(m(two, 3), BigUint::from(2u32));
    assert_eq!(m(finest, 2), BigUint::from(0u32));
    assert_eq!(m(three, 3), BigUint::from(2u32));
    for n in 2..=7 {
        for r in s.nontrivial() {
            let mult = s.multiplicity(r, n, DEFAULT_ENUMERATION_BUDGET).unwrap();
            assert_eq!(mult.enumeration, mult.inclusion_exclusion, "{} mod {n}", r.partition);
            assert_eq!(mult.value, BigUint::from(closed_form(n, r.partition.len())));
        }
    }
}

#[test]
fn partition_sum_identity() {
    let s = gl4();
    for n in 2..=5 {
        for r in &s.records {
            let total: BigUint = s
                .records
                .iter()
                .filter(|c| r.partition.refines(&c.partition))
                .map(|c| s.multiplicity(c, n, DEFAULT_ENUMERATION_BUDGET).unwrap().value)
                .sum();
            assert_eq!(total, curve_component_count(r, n).unwrap(), "{} mod {n}", r.partition);
        }
    }
}

#[test]
fn component_counts() {
    let s = gl4();
    let finest = s.record(&BranchPartition::finest(4)).unwrap();
    assert_eq!(curve_component_count(finest, 3).unwrap(), BigUint::from(27u32));
    assert_eq!(curve_component_count(finest, 1).unwrap(), BigUint::from(1u32));
    let listed: HashSet<Vec<u64>> = enumerate_quotient(&finest.generators, 3, 1000).unwrap().into_iter().collect();
    assert_eq!(listed.len(), 27);
    // the fiber over 0 of the spectral family: S[2] = (Z/2)^4 / diagonal, map to a trivial Jacobian
    let torsion = FinAbPresentation::spectral_torus_torsion(4, 2).unwrap();
    assert_eq!(torsion.order(), Some(BigUint::from(8u32)));
    let t = IntMatrix::identity(3);
    assert_eq!(covering_component_count(&t, &IntMatrix::zeros(1, 3), 2).unwrap(), BigUint::from(8u32));
    assert_eq!(covering_component_count(&t, &IntMatrix::zeros(1, 3), 1).unwrap(), BigUint::from(1u32));
}

#[test]
fn generated_divides_satisfy_class_laws() {
    let mut cases = Vec::new();
    for d in 2..=6 {
        cases.push(generate_line_arrangement_divide(d).unwrap());
    }
    for (p, q) in [(2, 2), (2, 3), (2, 4), (4, 6), (2, 6), (6, 4)] {
        cases.push(generate_grid_divide(p, q).unwrap());
    }
    for g in cases {
        let s = Strata::new(&g.germ, &g.divide).unwrap();
        let rows: Vec<Vec<BigInt>> = s.classes.classes.iter().map(|c| c.to_cycle_vector(&s.lattice)).collect();
        let span = Lattice::from_vectors(s.lattice.rank(), &rows).unwrap();
        assert_eq!(span, radical(&s.lattice));
        for r in &s.records {
            assert_eq!(r.height, r.formula_height);
        }
    }
}
