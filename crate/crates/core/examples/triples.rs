// Enumerates Belavin-Drinfeld triples for a few types and groups the E6
// ones into orbits of the diagram automorphism.

use bdq::bdtriple::{collapse_mirrors, enumerate_triples, orbits_under_out, AdmissibleTriple};
use bdq::rootsys::SimpleType;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for label in ["A3", "B3", "D4", "G2", "E6"] {
        let ty: SimpleType = label.parse()?;
        let all = enumerate_triples(ty, false)?;
        println!("{label}: {} ordered, {} up to mirror", all.len(), collapse_mirrors(&all).len());
    }

    let e6 = SimpleType::e(6);
    let triples = enumerate_triples(e6, false)?;
    assert_eq!(triples.len(), 406);
    let orbits = orbits_under_out(&triples);
    println!("E6 orbits under the diagram automorphism: {}", orbits.len());

    // alpha_1 -> alpha_2, alpha_4 -> alpha_5 (1-based labels)
    let t = AdmissibleTriple::from_labels(e6, &[(1, 2), (4, 5)]);
    assert!(t.check()?);
    println!("{t}");
    println!("  strings: {}", t.strings());
    println!("  json: {}", serde_json::to_string(&t)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
