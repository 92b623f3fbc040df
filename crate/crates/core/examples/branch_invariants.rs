//! Semigroups, conductors and delta invariants of branches, and intersection
//! numbers computed from parametrizations and equations.

use acampo::branch::{
    germ_invariants, intersection_multiplicity, monomial_parametrization, semigroup_and_delta, BranchSpec, GermSpec,
    Polynomial, PuiseuxCharacteristic,
};

fn main() -> acampo::Result<()> {
    for (beta0, betas) in [(2, vec![3]), (2, vec![5]), (3, vec![4]), (4, vec![6, 7]), (6, vec![9, 10]), (4, vec![6, 9])] {
        let ch = PuiseuxCharacteristic::new(beta0, betas.clone())?;
        let sg = semigroup_and_delta(&ch)?;
        println!(
            "({}; {:?}): semigroup <{:?}>, conductor {}, delta {}",
            beta0, betas, sg.generators, sg.conductor, sg.delta
        );
    }

    // the tacnode-like pair y = x^2, y = -x^2
    let up = BranchSpec::new(
        1,
        PuiseuxCharacteristic::smooth(),
        Some(monomial_parametrization((1, 1), (1, 2))),
        Some("y - x^2".parse::<Polynomial>()?),
    )?;
    let down = BranchSpec::new(
        2,
        PuiseuxCharacteristic::smooth(),
        Some(monomial_parametrization((1, 1), (-1, 2))),
        Some("y + x^2".parse::<Polynomial>()?),
    )?;
    println!("C(up, down) = {}", intersection_multiplicity(&up, &down)?);

    let germ = GermSpec::new(vec![up, down], None)?;
    let inv = germ_invariants(&germ)?;
    println!("{}", inv);
    println!("{}", germ.to_json());
    Ok(())
}
