//! Column echelon form over `O = C[[t]]`.
//!
//! The canonical basis of the `O`-lattice spanned by the columns of `M` is
//! lower triangular, has diagonal entries `t^{e_k}`, and every entry to the
//! left of a pivot only involves exponents below that pivot's exponent.

use super::{ExactError, MatK, RatFunc};

struct Echelon {
    /// `n x m`, lower triangular in the first `n` columns, zero afterwards.
    h: MatK,
    /// Column transform in `GL(m, O)` with `a * g == h`.
    g: Option<MatK>,
    pivots: Vec<i64>,
}

fn echelon(a: &MatK, track: bool) -> Result<Echelon, ExactError> {
    let (n, m) = (a.rows(), a.cols());
    if n > m {
        return Err(ExactError::NotALatticeBasis);
    }
    let mut h = a.clone();
    let mut g = track.then(|| MatK::identity(m));
    let mut pivots = Vec::with_capacity(n);

    for k in 0..n {
        let best = (k..m)
            .filter_map(|j| h[(k, j)].valuation().map(|v| (v, j)))
            .min()
            .ok_or(ExactError::NotALatticeBasis)?;
        let (e, pj) = best;
        h.swap_cols(k, pj);
        if let Some(g) = g.as_mut() {
            g.swap_cols(k, pj);
        }
        let (_, unit) = h[(k, k)].split_unit().expect("pivot is nonzero");
        let inv = unit.inv();
        h.scale_col(k, &inv);
        if let Some(g) = g.as_mut() {
            g.scale_col(k, &inv);
        }
        let te_inv = RatFunc::t_pow(-e);
        for j in k + 1..m {
            if h[(k, j)].is_zero() {
                continue;
            }
            let c = -(&h[(k, j)] * &te_inv);
            h.add_col_multiple(j, k, &c);
            if let Some(g) = g.as_mut() {
                g.add_col_multiple(j, k, &c);
            }
        }
        pivots.push(e);
    }

    for j in 0..n {
        for k in j + 1..n {
            let e = pivots[k];
            let x = h[(k, j)].clone();
            if x.is_zero() {
                continue;
            }
            let low = RatFunc::from_laurent(x.series_below(e));
            if low == x {
                continue;
            }
            let c = -(&(&x - &low) * &RatFunc::t_pow(-e));
            h.add_col_multiple(j, k, &c);
            if let Some(g) = g.as_mut() {
                g.add_col_multiple(j, k, &c);
            }
        }
    }
    Ok(Echelon { h, g, pivots })
}

/// Canonical basis (as columns) of the lattice `M * O^n`.
///
/// `M` must be square and invertible over `K`. Two matrices give the same
/// output exactly when their columns span the same lattice.
pub fn hermite_over_o(m: &MatK) -> Result<MatK, ExactError> {
    if !m.is_square() {
        return Err(ExactError::Dimension(format!(
            "expected a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(echelon(m, false)?.h)
}

/// Canonical `n x n` basis of the lattice spanned by the columns of an
/// `n x m` matrix of rank `n`, together with the pivot exponents.
pub fn hermite_columns(a: &MatK) -> Result<(MatK, Vec<i64>), ExactError> {
    let ech = echelon(a, false)?;
    let n = a.rows();
    Ok((ech.h.submatrix(0..n, 0..n), ech.pivots))
}

/// Finds `x` in `O^m` with `a * x == b`, if one exists. `a` must have rank
/// equal to its number of rows.
pub fn solve_integral_preimage(a: &MatK, b: &[RatFunc]) -> Result<Option<Vec<RatFunc>>, ExactError> {
    if b.len() != a.rows() {
        return Err(ExactError::Dimension("right-hand side length".into()));
    }
    let ech = echelon(a, true)?;
    let n = a.rows();
    let mut y: Vec<RatFunc> = Vec::with_capacity(n);
    for k in 0..n {
        let mut r = b[k].clone();
        for (j, yj) in y.iter().enumerate() {
            r = &r - &(&ech.h[(k, j)] * yj);
        }
        let yk = &r * &RatFunc::t_pow(-ech.pivots[k]);
        if !yk.in_o() {
            return Ok(None);
        }
        y.push(yk);
    }
    let g = ech.g.expect("transform tracked");
    let x = (0..a.cols())
        .map(|i| {
            y.iter()
                .enumerate()
                .fold(RatFunc::zero(), |acc, (j, yj)| &acc + &(&g[(i, j)] * yj))
        })
        .collect();
    Ok(Some(x))
}

/// Convenience: converts a matrix of Laurent polynomials.
#[cfg(test)]
pub(crate) fn laurent_matrix(rows: Vec<Vec<super::LaurentPoly>>) -> MatK {
    MatK::from_rows(
        rows.into_iter()
            .map(|r| r.into_iter().map(RatFunc::from_laurent).collect())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::LaurentPoly;
    use proptest::prelude::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn mat(rows: &[&[&str]]) -> MatK {
        laurent_matrix(rows.iter().map(|r| r.iter().map(|s| lp(s)).collect()).collect())
    }

    #[test]
    fn diagonal_is_canonical() {
        let m = mat(&[&["t^2", "0"], &["0", "1"]]);
        assert_eq!(hermite_over_o(&m).unwrap(), m);
    }

    #[test]
    fn unipotent_with_pole() {
        let m = mat(&[&["1", "t^-1"], &["0", "1"]]);
        let h = hermite_over_o(&m).unwrap();
        assert_eq!(h, mat(&[&["t^-1", "0"], &["1", "t"]]));
        let (_, piv) = hermite_columns(&m).unwrap();
        assert_eq!(piv, vec![-1, 1]);
    }

    #[test]
    fn singular_is_rejected() {
        let m = mat(&[&["1", "t"], &["1", "t"]]);
        assert_eq!(hermite_over_o(&m), Err(ExactError::NotALatticeBasis));
    }

    #[test]
    fn preimage_membership() {
        let a = mat(&[&["t", "0"], &["0", "t^2"]]);
        let b = vec![RatFunc::from_laurent(lp("t + t^3")), RatFunc::from_laurent(lp("t^2"))];
        let x = solve_integral_preimage(&a, &b).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x), b);
        let c = vec![RatFunc::from_laurent(lp("1")), RatFunc::zero()];
        assert!(solve_integral_preimage(&a, &c).unwrap().is_none());
    }

    fn small_poly() -> impl Strategy<Value = LaurentPoly> {
        (proptest::collection::vec(-2i64..=2, 4), -2i64..=0).prop_map(|(c, low)| LaurentPoly::from_ints(low, &c))
    }

    fn unit_poly() -> impl Strategy<Value = LaurentPoly> {
        (prop_oneof![Just(1i64), Just(-1), Just(2)], proptest::collection::vec(-2i64..=2, 3)).prop_map(|(c0, rest)| {
            let mut v = vec![c0];
            v.extend(rest);
            LaurentPoly::from_ints(0, &v)
        })
    }

    fn o_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec(-2i64..=2, 4).prop_map(|c| LaurentPoly::from_ints(0, &c))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn constant_on_right_orbits(
            m in proptest::collection::vec(small_poly(), 4),
            d in proptest::collection::vec(unit_poly(), 2),
            x in o_poly(),
            y in o_poly(),
        ) {
            let mk = laurent_matrix(vec![vec![m[0].clone(), m[1].clone()], vec![m[2].clone(), m[3].clone()]]);
            prop_assume!(!mk.det().is_zero());
            // lower * upper unipotent times diagonal units: an element of GL(2, O)
            let g = laurent_matrix(vec![
                vec![d[0].clone(), &d[0] * &x],
                vec![&y * &d[0], &(&(&y * &d[0]) * &x) + &d[1]],
            ]);
            let h1 = hermite_over_o(&mk).unwrap();
            let h2 = hermite_over_o(&(&mk * &g)).unwrap();
            prop_assert_eq!(&h1, &h2);
            prop_assert_eq!(hermite_over_o(&h1).unwrap(), h1);
        }
    }
}
