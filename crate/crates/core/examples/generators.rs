//! Divides generated for line arrangements and for x^p - y^q, each checked
//! against its germ.

use acampo::branch::germ_invariants;
use acampo::divide::{generate_grid_divide, generate_line_arrangement_divide, validate, GeneratedDivide};
use acampo::Error;

fn summary(name: &str, g: &GeneratedDivide) -> acampo::Result<()> {
    let inv = germ_invariants(&g.germ)?;
    let report = validate(&g.divide, &g.germ)?;
    println!(
        "{:<12} r = {}, delta = {:>2}, mu = {:>2}  (mu+, mu0, mu-) = ({}, {}, {})  valid: {}",
        name,
        inv.r,
        inv.delta,
        inv.mu,
        report.mu_plus,
        report.mu_zero,
        report.mu_minus,
        report.passed
    );
    Ok(())
}

fn main() -> acampo::Result<()> {
    for d in 2..=6 {
        summary(&format!("{} lines", d), &generate_line_arrangement_divide(d)?)?;
    }
    for (p, q) in [(2, 3), (2, 5), (3, 4), (3, 5), (2, 4), (4, 6), (3, 3), (4, 4)] {
        summary(&format!("x^{} - y^{}", p, q), &generate_grid_divide(p, q)?)?;
    }
    match generate_grid_divide(3, 6) {
        Err(e @ Error::UnsupportedExponents(..)) => println!("x^3 - y^6: {}", e),
        other => println!("x^3 - y^6: unexpected {:?}", other.map(|_| ())),
    }
    Ok(())
}
