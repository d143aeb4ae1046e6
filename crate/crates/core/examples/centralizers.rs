// Component groups of centralizers of r-matrices: the E6 triples whose
// centralizer in the simply connected group is disconnected.

use bdq::centralizer::{exceptional_report, shape_table};
use bdq::rootsys::{LatticeTag, SimpleType};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let report = exceptional_report(SimpleType::e(6), &LatticeTag::P)?;
    let disconnected: Vec<_> = report.disconnected().collect();
    println!("E6, weight lattice: {} of {} triples are disconnected", disconnected.len(), report.rows.len());
    for row in disconnected.iter().take(5) {
        println!("  {}  strings {}  torus rank {}  torsion {:?}", row.triple.label(), row.strings, row.torus_rank, row.torsion);
    }
    assert_eq!(disconnected.len(), 70);

    // In the adjoint group the centralizer is always a torus.
    let adjoint = shape_table(SimpleType::e(6), &LatticeTag::Q)?;
    assert!(adjoint.iter().all(|r| r.torsion.is_empty()));

    // An intermediate lattice given by a basis in weight coordinates.
    let a3: SimpleType = "A3".parse()?;
    let half: LatticeTag = "[[2,0,0],[0,1,0],[0,0,2]]".parse()?;
    match shape_table(a3, &half) {
        Ok(rows) => println!("A3 with an intermediate lattice: {} disconnected", rows.iter().filter(|r| !r.torsion.is_empty()).count()),
        Err(e) => println!("A3 intermediate lattice rejected: {e}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
