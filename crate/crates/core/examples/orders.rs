// Multiplier orders of lattices and the suborders of `O^3` and `O (+) O_L`.

use bdq::orders::{
    classify_order_k2, enumerate_suborders_k3, enumerate_suborders_kl, is_gorenstein_order, lambda_k2,
    multiplier_order, Algebra, CosetForm2, Lattice,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for i in 0..4 {
        let lattice = Lattice::from_columns(Algebra::Kn(2), &CosetForm2 { i }.matrix())?;
        let order = multiplier_order(&lattice)?;
        assert_eq!(order, lambda_k2(i));
        let basis: Vec<_> = (0..2).map(|c| order.basis.column(c)).collect();
        println!("T_{i} -> order of index {}", classify_order_k2(&basis)?);
    }

    for n in 0..=5 {
        let k3: Vec<String> = enumerate_suborders_k3(n).iter().map(|c| c.to_string()).collect();
        let kl: Vec<String> = enumerate_suborders_kl(n).iter().map(|c| c.to_string()).collect();
        println!("index {n}: K^3 {k3:?}  K+L {kl:?}");
    }

    for c in enumerate_suborders_k3(3) {
        println!("{c}: Gorenstein {}", is_gorenstein_order(&c.order())?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
