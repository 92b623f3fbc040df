//! Invariant classes c_I, heights and the multiplicities |(V/n)°| of the
//! partition strata for four lines.

use acampo::branch::GermSpec;
use acampo::divide::Divide;
use acampo::lattice::DEFAULT_ENUMERATION_BUDGET;
use acampo::strata::{curve_component_count, Strata};

const GERM: &str = include_str!("../fixtures/gl4.germ.json");
const DIVIDE: &str = include_str!("../fixtures/gl4.divide.json");

fn main() -> acampo::Result<()> {
    let germ = GermSpec::from_json(GERM)?;
    let divide = Divide::from_json(DIVIDE)?;
    let strata = Strata::new(&germ, &divide)?;

    for (i, c) in strata.classes.classes.iter().enumerate() {
        println!("c{} = {}", i + 1, c.expression());
    }
    println!();
    print!("{:<22}{:>4}{:>6}", "partition", "h", "rank");
    for n in 2..=5 {
        print!("{:>8}", format!("n={}", n));
    }
    println!();
    for rec in strata.nontrivial() {
        print!("{:<22}{:>4}{:>6}", rec.partition.to_string(), rec.height, rec.rank);
        for n in 2..=5 {
            let m = strata.multiplicity(rec, n, DEFAULT_ENUMERATION_BUDGET)?;
            let total = curve_component_count(rec, n)?;
            print!("{:>8}", format!("{}/{}", m.value, total));
        }
        println!();
    }
    println!("\nentries are |(V/n)°| / |V/n|");
    Ok(())
}
