// Exact arithmetic in `K = Q((t))`: Laurent polynomials, rational
// functions and Hermite bases over `O`.

use bdq::exactnum::{hermite_over_o, smith_normal_form, IntMat, LaurentPoly, MatK, RatFunc};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p: LaurentPoly = "t^-2+3-1/2t".parse()?;
    println!("p = {p}, valuation {:?}, [p] = {}", p.valuation(), p.bracket_negative());

    let u: RatFunc = "(1)/(1+t)".parse()?;
    println!("1/(1+t) = {} + ...", u.series_below(5));
    assert!(u.in_o());

    let m = MatK::from_rows(vec![
        vec!["t^-1".parse()?, "1+t".parse()?],
        vec!["t^2".parse()?, "t".parse()?],
    ]);
    println!("Hermite basis over O: {:?}", hermite_over_o(&m)?.to_rows());

    let a = IntMat::from_rows(vec![vec![2.into(), 4.into()], vec![6.into(), 8.into()]]);
    println!("Smith torsion: {:?}", smith_normal_form(&a).torsion());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
