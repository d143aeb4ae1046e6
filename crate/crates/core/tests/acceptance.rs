//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints one PASS/FAIL line; the process fails when the set of
//! failing criteria differs from `KNOWN_FAILURES`.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bdq::bdtriple::{enumerate_triples, AdmissibleTriple};
use bdq::centralizer::{centralizer_shape, shape_table};
use bdq::exactnum::{LaurentPoly, MatK, RatFunc};
use bdq::orders::{
    classify_cubic_algebra, classify_order_k2, discriminant, enumerate_suborders_k3, enumerate_suborders_kl,
    lambda_k2, lattice_class_count, lattice_class_oracle, multiplier_order, reduce_gl2, same_coset_gl3, Algebra,
    CosetForm2, CosetForm3, CubicAlgebraType, IndexForm, Lattice,
};
use bdq::rmatrix::{build_rbd, r_dj, verify_rmatrix};
use bdq::rootsys::{root_coordinates, LatticeTag, SimpleType};
use bdq::twisted::{continuous_space_nontwisted, d_odd_twisted_families, e6_twisted_list, twistable_triples};

/// Criteria expected to fail, with the reason.
const KNOWN_FAILURES: &[(u32, &str)] = &[(
    13,
    "for (i,j) = (0,1) the orbit of 0 is {c t^-1 : c != 1}, so q = t^-1 is not equivalent to 0",
)];

type Outcome = Result<String, String>;

fn e6() -> SimpleType {
    SimpleType::e(6)
}

fn with_mirrors(ty: SimpleType, list: &[&[(usize, usize)]]) -> BTreeSet<AdmissibleTriple> {
    let mut out = BTreeSet::new();
    for pairs in list {
        let t = AdmissibleTriple::from_labels(ty, pairs);
        out.insert(t.mirror());
        out.insert(t);
    }
    out
}

/// The printed list of disconnected E6 triples, one orientation each.
const E6_DISCONNECTED: &[&[(usize, usize)]] = &[
    &[(1, 2), (4, 5)],
    &[(1, 2), (5, 4)],
    &[(1, 5), (2, 4)],
    &[(1, 5), (4, 2)],
    &[(1, 2), (3, 4), (4, 5)],
    &[(1, 2), (2, 3), (4, 5)],
    &[(1, 5), (3, 2), (4, 3)],
    &[(1, 3), (2, 4), (3, 5)],
    &[(1, 3), (2, 4), (5, 1)],
    &[(1, 5), (4, 2), (5, 3)],
    &[(1, 2), (4, 6), (6, 5)],
    &[(1, 2), (5, 6), (6, 4)],
    &[(1, 6), (4, 5), (6, 2)],
    &[(1, 6), (5, 4), (6, 2)],
    &[(1, 5), (2, 4), (4, 6)],
    &[(1, 5), (2, 4), (6, 2)],
    &[(1, 5), (4, 6), (6, 2)],
    &[(1, 5), (2, 4), (5, 6)],
    &[(1, 5), (2, 4), (6, 1)],
    &[(1, 6), (4, 2), (6, 5)],
    &[(1, 4), (2, 5), (4, 2)],
    &[(1, 5), (2, 4), (4, 1)],
    &[(1, 4), (2, 5), (5, 1)],
    &[(1, 5), (2, 4), (5, 2)],
    &[(1, 2), (3, 6), (5, 4)],
    &[(1, 6), (2, 3), (3, 4), (5, 1)],
    &[(1, 6), (2, 3), (3, 4), (6, 5)],
    &[(1, 5), (3, 2), (4, 3), (5, 6)],
    &[(1, 2), (3, 5), (5, 6), (6, 4)],
    &[(1, 3), (2, 6), (4, 5), (6, 1)],
    &[(1, 2), (2, 3), (3, 4), (4, 5)],
    &[(1, 4), (2, 5), (4, 6), (6, 2)],
    &[(1, 5), (2, 4), (4, 6), (6, 1)],
    &[(1, 4), (2, 5), (5, 6), (6, 1)],
    &[(1, 5), (2, 4), (5, 6), (6, 2)],
];

/// The printed list of E6 triples passing the twisting conditions.
const E6_TWISTED: &[&[(usize, usize)]] = &[
    &[(1, 5)],
    &[(2, 4)],
    &[(1, 4), (2, 5)],
    &[(1, 5), (2, 4)],
    &[(1, 3), (3, 5)],
    &[(1, 2), (4, 5)],
    &[(1, 5), (4, 2)],
    &[(1, 6), (6, 5)],
    &[(2, 3), (3, 4)],
    &[(2, 6), (6, 4)],
    &[(1, 3), (2, 4), (3, 5)],
    &[(1, 4), (2, 5), (4, 2)],
    &[(1, 4), (2, 5), (5, 1)],
    &[(1, 5), (3, 2), (4, 3)],
    &[(1, 5), (4, 6), (6, 2)],
    &[(1, 6), (4, 2), (6, 5)],
    &[(1, 2), (2, 3), (3, 4), (4, 5)],
    &[(1, 6), (2, 3), (3, 4), (6, 5)],
    &[(1, 4), (2, 5), (4, 6), (6, 2)],
    &[(1, 4), (2, 5), (5, 6), (6, 1)],
];

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c1_e6_count() -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = bdq::cli::run_with(["bdq", "triples", "enumerate", "--type", "E6", "--nonempty"], &mut out, &mut err);
    check(code == 0, String::from_utf8_lossy(&err).into_owned())?;
    let list: Vec<AdmissibleTriple> = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    check(list.len() == 406, format!("{} triples", list.len()))?;
    Ok("406 triples".into())
}

fn c2_e6_disconnected() -> Outcome {
    let rows = shape_table(e6(), &LatticeTag::P).map_err(|e| e.to_string())?;
    check(rows.len() == 406, format!("{} rows", rows.len()))?;
    let bad: Vec<&Vec<u64>> = rows.iter().map(|r| &r.torsion).filter(|t| !t.is_empty() && **t != vec![3]).collect();
    check(bad.is_empty(), format!("torsion other than [3]: {bad:?}"))?;
    let found: BTreeSet<AdmissibleTriple> = rows.iter().filter(|r| !r.torsion.is_empty()).map(|r| r.triple.clone()).collect();
    let printed = with_mirrors(e6(), E6_DISCONNECTED);
    check(printed.len() == 70, format!("printed list has {} entries", printed.len()))?;
    check(
        found == printed,
        format!(
            "{} found, {} only found, {} only printed",
            found.len(),
            found.difference(&printed).count(),
            printed.difference(&found).count()
        ),
    )?;
    Ok("70 triples with torsion [3], equal to the printed list".into())
}

fn c3_e6_strings() -> Outcome {
    let rows = shape_table(e6(), &LatticeTag::P).map_err(|e| e.to_string())?;
    for r in &rows {
        let s = &r.strings;
        // 0-based: alpha_1..alpha_5 are 0..4.
        let predicted = (s.same_string(0, 1) && s.same_string(3, 4)) || (s.same_string(0, 4) && s.same_string(1, 3));
        check(predicted == !r.torsion.is_empty(), format!("mismatch at {}", r.triple))?;
    }
    Ok(format!("string condition agrees on all {} triples", rows.len()))
}

fn c4_e7_connected() -> Outcome {
    let rows = shape_table(SimpleType::e(7), &LatticeTag::P).map_err(|e| e.to_string())?;
    let bad = rows.iter().filter(|r| !r.torsion.is_empty()).count();
    check(bad == 0, format!("{bad} disconnected"))?;
    Ok(format!("{} triples, all connected", rows.len()))
}

fn c5_adjoint_connected() -> Outcome {
    let mut total = 0;
    for label in ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "D5", "G2", "F4", "E6"] {
        let ty: SimpleType = label.parse().map_err(|e| format!("{e}"))?;
        let q = root_coordinates(ty, &LatticeTag::Q).map_err(|e| e.to_string())?;
        for t in enumerate_triples(ty, true).map_err(|e| e.to_string())? {
            let shape = centralizer_shape(&t, &q).map_err(|e| e.to_string())?;
            check(shape.torsion.is_empty(), format!("{t} has torsion {:?}", shape.torsion))?;
            total += 1;
        }
    }
    Ok(format!("{total} triples over 12 types"))
}

fn c6_e6_twisted() -> Outcome {
    let found: BTreeSet<AdmissibleTriple> = e6_twisted_list().into_iter().collect();
    let printed = with_mirrors(e6(), E6_TWISTED);
    check(found.len() == 40, format!("{} found", found.len()))?;
    check(found == printed, "differs from the printed list")?;
    Ok("40 triples, equal to the printed list".into())
}

fn c7_d5_families() -> Outcome {
    let ty: SimpleType = "D5".parse().map_err(|e| format!("{e}"))?;
    let found: BTreeSet<AdmissibleTriple> = twistable_triples(ty).map_err(|e| e.to_string())?.into_iter().collect();
    let families: BTreeSet<AdmissibleTriple> = d_odd_twisted_families(5).map_err(|e| e.to_string())?.into_iter().collect();
    check(found == families, format!("{} found, {} in the families", found.len(), families.len()))?;
    Ok(format!("{} triples, equal to the two families", found.len()))
}

fn c8_rmatrices() -> Outcome {
    for n in [2, 3] {
        check(verify_rmatrix(&r_dj(n).map_err(|e| e.to_string())?), format!("r_DJ fails for sl({n})"))?;
    }
    let triples = enumerate_triples(SimpleType::a(2), false).map_err(|e| e.to_string())?;
    for t in &triples {
        let r0 = continuous_space_nontwisted(t).1.ok_or(format!("no r0 for {t}"))?;
        let r = build_rbd(t, &r0).map_err(|e| e.to_string())?;
        check(verify_rmatrix(&r), format!("{t} fails"))?;
    }
    Ok(format!("sl(2), sl(3) and {} A2 triples", triples.len()))
}

fn poly(rng: &mut ChaCha8Rng, low: i64, max_deg: i64) -> LaurentPoly {
    let len = rng.gen_range(0..=max_deg - low) + 1;
    let coeffs: Vec<i64> = (0..len).map(|_| rng.gen_range(-3..=3)).collect();
    LaurentPoly::from_ints(low, &coeffs)
}

/// A unit of `O`: nonzero constant term, higher terms up to degree 4.
fn unit(rng: &mut ChaCha8Rng) -> RatFunc {
    let c = [-2i64, -1, 1, 2, 3][rng.gen_range(0..5)];
    RatFunc::from_laurent(&LaurentPoly::from_int(c) + &poly(rng, 1, 4))
}

fn random_gl2_o(rng: &mut ChaCha8Rng) -> MatK {
    let (z, o) = (RatFunc::zero, RatFunc::one);
    let upper = MatK::from_rows(vec![vec![o(), RatFunc::from_laurent(poly(rng, 0, 4))], vec![z(), o()]]);
    let lower = MatK::from_rows(vec![vec![o(), z()], vec![RatFunc::from_laurent(poly(rng, 0, 4)), o()]]);
    let diag = MatK::diagonal(&[unit(rng), unit(rng)]);
    let p = &(&upper * &diag) * &lower;
    if rng.gen_bool(0.5) {
        let swap = MatK::from_rows(vec![vec![z(), o()], vec![o(), z()]]);
        &swap * &p
    } else {
        p
    }
}

fn random_diag(rng: &mut ChaCha8Rng) -> MatK {
    let mut entry = || {
        let e = rng.gen_range(-4..=4);
        &RatFunc::t_pow(e) * &unit(rng)
    };
    MatK::diagonal(&[entry(), entry()])
}

fn c9_gl2_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    for k in 0..1000 {
        let i = rng.gen_range(0..=6u32);
        let m = &(&random_gl2_o(&mut rng) * &CosetForm2 { i }.matrix()) * &random_diag(&mut rng);
        let got = reduce_gl2(&m).map_err(|e| format!("instance {k}: {e}"))?;
        check(got.i == i, format!("instance {k}: expected {i}, got {}", got.i))?;
    }
    Ok("1000 instances".into())
}

fn c10_coset_order_bijection() -> Outcome {
    for i in 0..=6u32 {
        let lattice = Lattice::from_columns(Algebra::Kn(2), &CosetForm2 { i }.matrix()).map_err(|e| e.to_string())?;
        let order = multiplier_order(&lattice).map_err(|e| e.to_string())?;
        check(order == lambda_k2(i), format!("multiplier order of T_{i} is not Λ_{i}"))?;
        let basis: Vec<Vec<RatFunc>> = (0..2).map(|c| order.basis.column(c)).collect();
        let back = classify_order_k2(&basis).map_err(|e| e.to_string())?;
        check(back == i, format!("Λ_{i} classified as {back}"))?;
    }
    Ok("i = 0..6".into())
}

fn c11_suborder_counts() -> Outcome {
    for n in 0..=10u32 {
        let k3 = enumerate_suborders_k3(n).len() as u32;
        check(k3 == n / 2 + 1, format!("K^3, n = {n}: {k3}"))?;
        let kl = enumerate_suborders_kl(n).len() as u32;
        let expected = if n % 2 == 0 { n / 2 + 1 } else { n / 2 + 2 };
        check(kl == expected, format!("K+L, n = {n}: {kl}"))?;
    }
    Ok("n = 0..10".into())
}

const DIVISIBLE_FORMS: [&str; 10] = [
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
];

const UNIT_FORMS: [&str; 10] = [
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

fn c12_lattice_classes() -> Outcome {
    for (forms, expected) in [(&DIVISIBLE_FORMS, 2usize), (&UNIT_FORMS, 1)] {
        for s in forms.iter() {
            let f: IndexForm = s.parse().map_err(|e| format!("{s}: {e}"))?;
            check(!discriminant(&f).is_zero(), format!("{s}: zero discriminant"))?;
            check(f.divisible_by_t() == (expected == 2), format!("{s}: wrong group"))?;
            let lc = lattice_class_count(&f).map_err(|e| e.to_string())? as usize;
            let oracle = lattice_class_oracle(&f, 3).map_err(|e| e.to_string())?;
            check(lc == expected && oracle == expected, format!("{s}: count {lc}, oracle {oracle}"))?;
        }
    }
    Ok("20 forms, oracle at index <= 3".into())
}

fn c13_orbit_of_zero() -> Outcome {
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for (i, j) in [(0u32, 1u32), (1, 1), (1, 2), (2, 2)] {
        let width = j as usize + 2;
        let zero = CosetForm3::new(i, j, LaurentPoly::zero()).map_err(|e| e.to_string())?;
        for code in 0..5usize.pow(width as u32) {
            let mut x = code;
            let mut coeffs = vec![0i64; width];
            for c in coeffs.iter_mut() {
                *c = (x % 5) as i64 - 2;
                x /= 5;
            }
            // coeffs[k] multiplies t^-(k+1).
            let rev: Vec<i64> = coeffs.iter().rev().copied().collect();
            let q = LaurentPoly::from_ints(-(width as i64), &rev);
            let form = CosetForm3::new(i, j, q.clone()).map_err(|e| e.to_string())?;
            let expected = form.q_degree() <= j;
            checked += 1;
            if same_coset_gl3(&form, &zero) != expected {
                mismatches.push(format!("(i,j)=({i},{j}) q={q}"));
            }
        }
    }
    if mismatches.is_empty() {
        Ok(format!("{checked} grid points"))
    } else {
        let shown: Vec<&String> = mismatches.iter().take(4).collect();
        Err(format!("{} of {checked} grid points disagree, e.g. {shown:?}", mismatches.len()))
    }
}

/// `Δ = -Res(f_x, f_y) / 3`, the resultant taken as a Sylvester determinant.
fn discriminant_oracle(f: &IndexForm) -> RatFunc {
    let c = |k: i64| RatFunc::from_int(k);
    let (a, b, cc, d) = (&f.a, &f.b, &f.c, &f.d);
    let z = RatFunc::zero;
    let fx = [&c(3) * a, &c(2) * b, cc.clone()];
    let fy = [b.clone(), &c(2) * cc, &c(3) * d];
    let syl = MatK::from_rows(vec![
        vec![fx[0].clone(), fx[1].clone(), fx[2].clone(), z()],
        vec![z(), fx[0].clone(), fx[1].clone(), fx[2].clone()],
        vec![fy[0].clone(), fy[1].clone(), fy[2].clone(), z()],
        vec![z(), fy[0].clone(), fy[1].clone(), fy[2].clone()],
    ]);
    &syl.det() * &RatFunc::from_laurent(LaurentPoly::monomial(bdq::exactnum::ratio(-1, 3), 0))
}

fn c14_cubic_classification() -> Outcome {
    let cases = [
        ("0,1,-1,0", CubicAlgebraType::KCubed, "1"),
        ("1,0,0,t", CubicAlgebraType::Field, "-27t^2"),
        ("1,0,-t,0", CubicAlgebraType::LPlusK, "4t^3"),
    ];
    for (s, kind, disc) in cases {
        let f: IndexForm = s.parse().map_err(|e| format!("{e}"))?;
        let expected: RatFunc = disc.parse().map_err(|e| format!("{e}"))?;
        check(discriminant_oracle(&f) == expected, format!("{s}: oracle gives {}", discriminant_oracle(&f)))?;
        check(discriminant(&f) == expected, format!("{s}: discriminant {}", discriminant(&f)))?;
        let got = classify_cubic_algebra(&f);
        check(got == kind, format!("{s}: classified as {got}"))?;
    }
    Ok("K^3, Field, L+K with discriminants 1, -27t^2, 4t^3".into())
}

fn main() {
    let criteria: Vec<(u32, &str, fn() -> Outcome)> = vec![
        (1, "E6 triple count", c1_e6_count),
        (2, "E6 disconnected set", c2_e6_disconnected),
        (3, "E6 string characterization", c3_e6_strings),
        (4, "E7 connectedness", c4_e7_connected),
        (5, "adjoint connectedness", c5_adjoint_connected),
        (6, "E6 twisted list", c6_e6_twisted),
        (7, "D5 twisted families", c7_d5_families),
        (8, "r-matrix verification", c8_rmatrices),
        (9, "GL(2) coset round trip", c9_gl2_round_trip),
        (10, "coset/order bijection", c10_coset_order_bijection),
        (11, "suborder counts", c11_suborder_counts),
        (12, "lattice classes", c12_lattice_classes),
        (13, "orbit of zero", c13_orbit_of_zero),
        (14, "cubic classification", c14_cubic_classification),
    ];
    let mut failed = BTreeSet::new();
    for (n, name, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {n:>2} {name}: PASS ({detail}; {secs:.1}s)"),
            Err(detail) => {
                println!("criterion {n:>2} {name}: FAIL ({detail}; {secs:.1}s)");
                failed.insert(n);
            }
        }
    }
    let known: BTreeSet<u32> = KNOWN_FAILURES.iter().map(|(n, _)| *n).collect();
    for (n, why) in KNOWN_FAILURES {
        println!("known failure {n}: {why}");
    }
    if failed != known {
        eprintln!("unexpected outcome: failing {failed:?}, expected {known:?}");
        std::process::exit(1);
    }
}
