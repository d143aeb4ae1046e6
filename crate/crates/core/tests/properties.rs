use proptest::prelude::*;

use bdq::bdtriple::{enumerate_triples, AdmissibleTriple};
use bdq::centralizer::centralizer_shape;
use bdq::exactnum::{LaurentPoly, MatK, RatFunc};
use bdq::orders::{
    classify_cubic_algebra, discriminant, gl2_action_on_forms, lattice_class_count, reduce_gl2, reduce_gl3,
    same_coset_gl3, CosetForm2, CosetForm3, IndexForm,
};
use bdq::rootsys::{root_coordinates, LatticeTag, SimpleType};

fn poly_strategy(low: i64, max_len: usize) -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec(-3i64..=3, 1..=max_len).prop_map(move |c| LaurentPoly::from_ints(low, &c))
}

/// Elements of `O^x` with polynomial representatives of degree at most 4.
fn unit_strategy() -> impl Strategy<Value = RatFunc> {
    (prop_oneof![Just(-2i64), Just(-1), Just(1), Just(2), Just(3)], poly_strategy(1, 4))
        .prop_map(|(c, p)| RatFunc::from_laurent(&LaurentPoly::from_int(c) + &p))
}

fn gl_o_strategy(n: usize) -> impl Strategy<Value = MatK> {
    gl_o_strategy_with(n, 4)
}

fn gl_o_strategy_with(n: usize, len: usize) -> impl Strategy<Value = MatK> {
    let strict = n * (n - 1) / 2;
    (
        proptest::collection::vec(poly_strategy(0, len), strict),
        proptest::collection::vec(poly_strategy(0, len), strict),
        proptest::collection::vec(unit_strategy(), n),
    )
        .prop_map(move |(up, lo, d)| {
            let mut u = MatK::identity(n);
            let mut l = MatK::identity(n);
            let mut k = 0;
            for r in 0..n {
                for c in r + 1..n {
                    u[(r, c)] = RatFunc::from_laurent(up[k].clone());
                    l[(c, r)] = RatFunc::from_laurent(lo[k].clone());
                    k += 1;
                }
            }
            &(&u * &MatK::diagonal(&d)) * &l
        })
}

fn diag_strategy(n: usize) -> impl Strategy<Value = MatK> {
    proptest::collection::vec((-4i64..=4, unit_strategy()), n)
        .prop_map(|v| MatK::diagonal(&v.into_iter().map(|(e, u)| &RatFunc::t_pow(e) * &u).collect::<Vec<_>>()))
}

fn form_strategy() -> impl Strategy<Value = IndexForm> {
    proptest::collection::vec(poly_strategy(0, 3), 4)
        .prop_map(|c| {
            let r: Vec<RatFunc> = c.into_iter().map(RatFunc::from_laurent).collect();
            IndexForm::new(r[0].clone(), r[1].clone(), r[2].clone(), r[3].clone()).unwrap()
        })
        .prop_filter("separable", |f| !discriminant(f).is_zero())
}

/// `q` in negative powers of `t`, degree at most 3 in `t^-1`.
fn q_strategy() -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec(-2i64..=2, 3).prop_map(|c| LaurentPoly::from_ints(-3, &c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn gl2_reduction_recovers_the_representative(i in 0u32..=6, p in gl_o_strategy(2), h in diag_strategy(2)) {
        let m = &(&p * &CosetForm2 { i }.matrix()) * &h;
        prop_assert_eq!(reduce_gl2(&m).unwrap().i, i);
    }

    #[test]
    fn gl3_reduction_is_a_coset_invariant(
        i in 0u32..=2, j in 0u32..=2, q in q_strategy(), p in gl_o_strategy(3), h in diag_strategy(3),
    ) {
        let form = CosetForm3::new(i, j, q).unwrap();
        let direct = reduce_gl3(&form.matrix()).unwrap();
        let moved = reduce_gl3(&(&(&p * &form.matrix()) * &h)).unwrap();
        prop_assert_eq!(&direct, &moved);
        prop_assert!(same_coset_gl3(&direct, &form));
    }

    #[test]
    fn coset_equivalence_is_symmetric(i in 0u32..=2, j in 0u32..=2, q1 in q_strategy(), q2 in q_strategy()) {
        let a = CosetForm3::new(i, j, q1).unwrap();
        let b = CosetForm3::new(i, j, q2).unwrap();
        prop_assert_eq!(same_coset_gl3(&a, &b), same_coset_gl3(&b, &a));
        prop_assert!(same_coset_gl3(&a, &a));
    }

    #[test]
    fn discriminant_scales_by_det_squared(f in form_strategy(), g in gl_o_strategy(2)) {
        let moved = gl2_action_on_forms(&g, &f).unwrap();
        let det = g.det();
        prop_assert_eq!(discriminant(&moved), &(&det * &det) * &discriminant(&f));
        prop_assert_eq!(lattice_class_count(&moved).unwrap(), lattice_class_count(&f).unwrap());
    }

    #[test]
    fn laurent_strings_round_trip(p in poly_strategy(-4, 8)) {
        let back: LaurentPoly = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }
}

const FORMS: [&str; 20] = [
    "t,t,t,t",
    "t,0,t^2,t",
    "0,t,-t,0",
    "t,0,0,t",
    "t,0,-t,0",
    "t^2,t,-t,t",
    "0,t,t^2,t",
    "t,t,0,t^2",
    "t,-t,t,2t",
    "t+t^2,0,t,t",
    "1,0,-t,0",
    "0,1,-1,0",
    "1,0,0,t",
    "1,1,1,t",
    "1,0,t,t^2",
    "0,1,t,t",
    "t,1,0,t",
    "1,0,0,1",
    "2,t,t,1",
    "t,t,1,1",
];

#[test]
fn cubic_type_is_constant_on_gl2_orbits() {
    use proptest::strategy::ValueTree;
    use proptest::test_runner::{Config, TestRng, TestRunner};
    let mut runner = TestRunner::new_with_rng(Config::default(), TestRng::deterministic_rng(Config::default().rng_algorithm));
    let g = gl_o_strategy_with(2, 2);
    for s in FORMS {
        let f: IndexForm = s.parse().unwrap();
        let kind = classify_cubic_algebra(&f);
        for _ in 0..50 {
            let m = g.new_tree(&mut runner).unwrap().current();
            let moved = gl2_action_on_forms(&m, &f).unwrap();
            assert_eq!(classify_cubic_algebra(&moved), kind, "{s} under {m:?}");
        }
    }
}

#[test]
fn mirrors_share_the_centralizer_shape() {
    for label in ["A4", "D5", "E6"] {
        let ty: SimpleType = label.parse().unwrap();
        let p = root_coordinates(ty, &LatticeTag::P).unwrap();
        let triples = enumerate_triples(ty, false).unwrap();
        for t in &triples {
            let m: AdmissibleTriple = t.mirror();
            assert!(m.check().unwrap());
            assert_eq!(centralizer_shape(t, &p).unwrap(), centralizer_shape(&m, &p).unwrap(), "{t}");
        }
    }
}
