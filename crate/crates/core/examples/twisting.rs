// Which triples admit a twisted r-matrix: the discrete conditions and the
// linear system for `r0 = u + j v`.

use bdq::bdtriple::AdmissibleTriple;
use bdq::rootsys::SimpleType;
use bdq::twisted::{
    check_twisted_witness, compare_twist_filters, continuous_space_twisted, d_odd_twisted_families, e6_twisted_list,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let list = e6_twisted_list();
    println!("E6: {} triples pass the discrete conditions", list.len());
    assert_eq!(list.len(), 40);

    let t = AdmissibleTriple::from_labels(SimpleType::e(6), &[(1, 5)]);
    let check = continuous_space_twisted(&t)?;
    println!("{t}: solution space of dimension {}", check.continuous_dim);
    if let Some(w) = &check.witness {
        assert!(check_twisted_witness(&t, w));
    }

    for m in [5, 7] {
        println!("D{m}: {} twistable triples", d_odd_twisted_families(m)?.len());
    }

    let cmp = compare_twist_filters(SimpleType::e(6))?;
    println!("E6: {} discrete, {} with solvable continuous conditions", cmp.discrete_only, cmp.all_conditions);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
