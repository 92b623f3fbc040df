//! The divide of four lines: validation against the germ, the intersection
//! form of the distinguished basis and its Dynkin diagram.

use acampo::branch::{germ_invariants, GermSpec};
use acampo::divide::{intersection_form, validate, Divide, DynkinGraph};

const GERM: &str = include_str!("../fixtures/gl4.germ.json");
const DIVIDE: &str = include_str!("../fixtures/gl4.divide.json");
const TAMPERED: &str = include_str!("../fixtures/gl4-tampered.divide.json");

fn main() -> acampo::Result<()> {
    let germ = GermSpec::from_json(GERM)?;
    let divide = Divide::from_json(DIVIDE)?;
    println!("{}", germ_invariants(&germ)?);
    println!("{}\n", validate(&divide, &germ)?);

    let lat = intersection_form(&divide);
    let labels: Vec<String> = lat.basis().iter().map(ToString::to_string).collect();
    println!("basis: {}", labels.join(" "));
    println!("{}", lat.form());

    let dynkin = DynkinGraph::from_lattice(&lat);
    println!("{} vertices, {} edges", dynkin.vertex_count(), dynkin.edge_count());
    print!("{}", dynkin.to_dot());

    let broken = Divide::from_json(TAMPERED)?;
    let report = validate(&broken, &germ)?;
    println!("\ntampered divide:");
    for c in report.failures() {
        println!("  {}: expected {}, found {}", c.name, c.expected, c.actual);
    }
    Ok(())
}
