// Cubic rings from binary cubic forms: multiplication tables,
// discriminants, the algebra type and the number of lattice classes.

use bdq::orders::{
    classify_cubic_algebra, cubic_from_index_form, discriminant, gl2_action_on_forms, lattice_class_count,
    lattice_class_oracle, IndexForm,
};
use bdq::exactnum::{MatK, RatFunc};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for s in ["0,1,-1,0", "1,0,0,t", "1,0,-t,0", "t,t,t,t"] {
        let f: IndexForm = s.parse()?;
        let ring = cubic_from_index_form(&f);
        assert!(ring.is_associative());
        println!(
            "{s}: disc {}, {}, lc {}",
            discriminant(&f),
            classify_cubic_algebra(&f),
            lattice_class_count(&f)?
        );
    }

    let f: IndexForm = "t,0,t^2,t".parse()?;
    println!("brute force up to index 2: {} classes", lattice_class_oracle(&f, 2)?);

    let g = MatK::from_rows(vec![
        vec![RatFunc::from_int(1), "t".parse()?],
        vec![RatFunc::from_int(0), "1+t".parse()?],
    ]);
    let moved = gl2_action_on_forms(&g, &f)?;
    println!("{f} -> {moved}, same type: {}", classify_cubic_algebra(&moved) == classify_cubic_algebra(&f));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
