//! Symbolic decomposition of the direct image over the n-th cover for the
//! node, and the symbolic homology of the four-line germ in low degrees.

use acampo::branch::GermSpec;
use acampo::divide::Divide;
use acampo::report::{decompose, homology_limit_report, to_canonical_json};

fn main() -> acampo::Result<()> {
    let node = GermSpec::from_json(include_str!("../fixtures/node.germ.json"))?;
    let node_divide = Divide::from_json(include_str!("../fixtures/node.divide.json"))?;
    let d = decompose(&node, &node_divide, 3)?;
    println!("{}\n", d);

    let gl4 = GermSpec::from_json(include_str!("../fixtures/gl4.germ.json"))?;
    let gl4_divide = Divide::from_json(include_str!("../fixtures/gl4.divide.json"))?;
    let limit = homology_limit_report(&gl4, &gl4_divide, Some(6))?;
    println!("{}", limit);

    let first_stratum = limit.terms.iter().find(|t| t.partition.is_some()).expect("a stratum term in degree 6");
    println!("{}", to_canonical_json(first_stratum));
    Ok(())
}
