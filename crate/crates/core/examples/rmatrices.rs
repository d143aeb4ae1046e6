// Builds explicit r-matrices in sl(3) and checks the classical Yang-Baxter
// equation and `r + r^21 = Omega` in exact arithmetic.

use bdq::bdtriple::enumerate_triples;
use bdq::rmatrix::{build_rbd, cyb, r_dj, verify_rmatrix, GlBasis};
use bdq::rootsys::SimpleType;
use bdq::twisted::continuous_space_nontwisted;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for n in 2..=4 {
        let r = r_dj(n)?;
        println!("sl({n}) Drinfeld-Jimbo: verified = {}", verify_rmatrix(&r));
    }

    let basis = GlBasis::new(3)?;
    for t in enumerate_triples(SimpleType::a(2), false)? {
        let (dim, r0) = continuous_space_nontwisted(&t);
        let r0 = r0.ok_or("no r0")?;
        let r = build_rbd(&t, &r0)?;
        println!("{t}: r0 space of dimension {dim}, CYB terms {}", cyb(&r).nonzero_count());
        println!("{}", r.pretty(&basis));
        assert!(verify_rmatrix(&r));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
