//! Picard-Lefschetz monodromy of the four-line divide: the invariant
//! lattice, the symplectic quotient and irreducibility mod small primes.

use acampo::divide::{intersection_form, Divide};
use acampo::monodromy::{all_generators, fixed_lattice, radical, sp_fullness_evidence, symplectic_quotient, SignConvention};

const DIVIDE: &str = include_str!("../fixtures/gl4.divide.json");

fn main() -> acampo::Result<()> {
    let divide = Divide::from_json(DIVIDE)?;
    let lat = intersection_form(&divide);

    for sign in [SignConvention::Plus, SignConvention::Minus] {
        let gens: Vec<_> = all_generators(&lat, sign).into_iter().map(|t| t.matrix).collect();
        for g in &gens {
            assert_eq!(&g.transpose().mul(lat.form())?.mul(g)?, lat.form());
        }
        let fixed = fixed_lattice(lat.rank(), &gens)?;
        println!("{:?}: invariants of rank {}, equal to the radical: {}", sign, fixed.rank(), fixed == radical(&lat));
    }

    let sq = symplectic_quotient(&lat, SignConvention::Plus);
    println!("symplectic quotient of rank {}, form determinant {}", sq.quotient_rank, sq.form_determinant());
    println!("{}", sq.induced_form);

    let report = sp_fullness_evidence(&sq, &[3, 5, 7, 11])?;
    for p in &report.primes {
        println!(
            "p = {:>2}: irreducible {} via {:?}; transvections {}; form preserved {}",
            p.prime, p.irreducible, p.method, p.generators_are_transvections, p.form_preserved
        );
    }
    Ok(())
}
