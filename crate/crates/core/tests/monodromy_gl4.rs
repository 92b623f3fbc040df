use std::fs;
use std::path::PathBuf;

use acampo::divide::{intersection_form, CriticalPoint, CycleLattice, Divide};
use acampo::monodromy::{
    all_generators, fixed_lattice, picard_lefschetz, radical, sp_fullness_evidence, symplectic_quotient, SignConvention,
};
use num_bigint::BigInt;
use num_traits::Zero;

fn gl4() -> CycleLattice {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/gl4.divide.json");
    intersection_form(&Divide::from_json(&fs::read_to_string(path).unwrap()).unwrap())
}

#[test]
fn radical_and_quotient_ranks() {
    let lat = gl4();
    assert_eq!(radical(&lat).rank(), 3);
    let sq = symplectic_quotient(&lat, SignConvention::Plus);
    assert_eq!(sq.quotient_rank, 6);
    assert!(sq.pfaffian_abs().is_some());
}

#[test]
fn radical_is_the_fixed_lattice_for_both_signs() {
    let lat = gl4();
    for sign in [SignConvention::Plus, SignConvention::Minus] {
        let gens: Vec<_> = all_generators(&lat, sign).into_iter().map(|t| t.matrix).collect();
        assert_eq!(fixed_lattice(lat.rank(), &gens).unwrap(), radical(&lat));
        for t in &gens {
            assert_eq!(&t.transpose().mul(lat.form()).unwrap().mul(t).unwrap(), lat.form());
        }
    }
}

#[test]
fn generator_fixes_orthogonal_cycle() {
    let lat = gl4();
    let a1 = lat.index_of(CriticalPoint::Double(1)).unwrap();
    let plus = lat.index_of(CriticalPoint::Plus(1)).unwrap();
    assert!(lat.form()[(plus, a1)].is_zero());
    let t = picard_lefschetz(&lat, a1, SignConvention::Plus).unwrap();
    let mut beta = vec![BigInt::zero(); lat.rank()];
    beta[plus] = BigInt::from(1);
    assert_eq!(t.apply(&beta).unwrap(), beta);
}

#[test]
fn induced_generators_preserve_induced_form() {
    let sq = symplectic_quotient(&gl4(), SignConvention::Plus);
    for g in &sq.induced_generators {
        assert_eq!(g.transpose().mul(&sq.induced_form).unwrap().mul(g).unwrap(), sq.induced_form);
    }
}

#[test]
fn irreducible_mod_small_primes() {
    let sq = symplectic_quotient(&gl4(), SignConvention::Plus);
    let report = sp_fullness_evidence(&sq, &[3, 5, 7]).unwrap();
    println!("{report:#?}");
    for e in &report.primes {
        assert!(e.irreducible, "p = {}", e.prime);
        assert!(e.generators_are_transvections && e.form_preserved);
    }
}
