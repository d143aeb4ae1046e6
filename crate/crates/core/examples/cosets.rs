// Double cosets `GL(n,O) \ GL(n,K) / Diag(n,K)` for n = 2, 3.

use bdq::exactnum::{LaurentPoly, MatK, RatFunc};
use bdq::orders::{reduce_gl2, reduce_gl3, same_coset_gl3, CosetForm3};

fn m(rows: &[&[&str]]) -> Result<MatK, Box<dyn std::error::Error>> {
    let mut out = Vec::new();
    for r in rows {
        out.push(r.iter().map(|s| s.parse::<RatFunc>()).collect::<Result<Vec<_>, _>>()?);
    }
    Ok(MatK::from_rows(out))
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = m(&[&["t^-3+2", "5t+t^-2"], &["1", "t^2"]])?;
    println!("GL(2): representative T_{}", reduce_gl2(&g)?.i);

    let g = m(&[&["1", "t^-1", "3t^-2+t^-1"], &["0", "1+t", "t^-2"], &["t", "0", "2"]])?;
    let f = reduce_gl3(&g)?;
    println!("GL(3): T_{{{},{}}}({})", f.i, f.j, f.q);

    // For i, j >= 1 the orbit of 0 consists of the q of degree at most j in t^-1.
    let zero = CosetForm3::new(1, 2, LaurentPoly::zero())?;
    for q in ["t^-1", "2t^-2-t^-1", "t^-3"] {
        let form = CosetForm3::new(1, 2, q.parse()?)?;
        println!("  T_{{1,2}}({q}) ~ T_{{1,2}}(0): {}", same_coset_gl3(&form, &zero));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
