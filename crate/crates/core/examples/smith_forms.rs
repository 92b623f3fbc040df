//! Smith normal form of an integer matrix and the finite abelian groups it
//! describes.

use acampo::lattice::{
    enumerate_quotient, kernel_of_hom_on_subgroup, smith_normal_form, subgroup_quotient_order, FinAbPresentation,
    IntMatrix, DEFAULT_ENUMERATION_BUDGET,
};

fn main() -> acampo::Result<()> {
    let a = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    let snf = smith_normal_form(&a);
    println!("A =\n{}", a);
    println!("D =\n{}", snf.d);
    println!("invariant factors: {:?}", snf.invariant_factors().iter().map(ToString::to_string).collect::<Vec<_>>());
    assert_eq!(snf.u.mul(&a)?.mul(&snf.v)?, snf.d);

    let coker = FinAbPresentation::new(a.clone());
    println!("|Z^3 / A Z^3| = {:?}", coker.order());

    // image of the row span in (Z/6)^3, by formula and by listing
    let n = 6;
    let order = subgroup_quotient_order(&a, n)?;
    let listed = enumerate_quotient(&a, n, DEFAULT_ENUMERATION_BUDGET)?.len();
    println!("row span mod {}: {} elements (listed {})", n, order, listed);

    // a homomorphism restricted to a subgroup of (Z/n)^3
    let t = IntMatrix::from_i64(&[&[1, 1, 0], &[0, 2, 1]]);
    let phi = IntMatrix::from_i64(&[&[1, -1, 0]]);
    let ki = kernel_of_hom_on_subgroup(&t, &phi, n)?;
    println!("|T| = {}, |ker| = {}, |im| = {}", ki.subgroup, ki.kernel, ki.image);
    assert_eq!(&ki.kernel * &ki.image, ki.subgroup);

    let torsion = FinAbPresentation::spectral_torus_torsion(4, 5)?;
    println!("n-torsion of a rank 3 torus, n = 5: {:?}", torsion.order());
    Ok(())
}
