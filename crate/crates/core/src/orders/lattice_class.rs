//! Brute-force lattice classes for cubic orders, used to cross-check
//! [`lattice_class_count`](super::cubic::lattice_class_count) at small index.

use rayon::prelude::*;

use super::algebra::{contained, Structure};
use super::cubic::{cubic_from_index_form, discriminant, IndexForm};
use super::lattice::Order;
use super::OrderError;
use crate::exactnum::{hermite_over_o, MatK, RatFunc};

/// True when `h M2 = M1` for some invertible `h`.
///
/// Such `h` lies in `(M1 : M2)`, and `h M2 = M1` exactly when a cubic
/// polynomial in the coordinates of `h` is a unit. A cubic that is nonzero
/// modulo `t` does not vanish on all of `{0,1,2,3}^3`, so scanning that grid
/// decides the question.
pub fn lattices_isomorphic(s: &Structure, b1: &MatK, b2: &MatK) -> Result<bool, OrderError> {
    let colon = s.colon(b1, b2)?;
    let inv = b1.inverse().ok_or(OrderError::RankDefect)?;
    let n = s.dim();
    let grid: Vec<Vec<i64>> = (0..4i64.pow(n as u32))
        .map(|mut x| {
            (0..n)
                .map(|_| {
                    let d = x % 4;
                    x /= 4;
                    d
                })
                .collect()
        })
        .collect();
    for c in grid {
        let coords: Vec<RatFunc> = c.iter().map(|&v| RatFunc::from_int(v)).collect();
        let h = colon.mul_vec(&coords);
        if h.iter().all(RatFunc::is_zero) {
            continue;
        }
        let x = &(&inv * &s.mult_matrix(&h)) * b2;
        if x.det().valuation() == Some(0) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Trace dual `{x : Tr(x Λ) ⊆ O}` of a lattice with basis `b`.
pub fn trace_dual(s: &Structure, b: &MatK) -> Result<MatK, OrderError> {
    let gram = &(&b.transpose() * &s.trace_form()) * b;
    let inv = gram.inverse().ok_or(OrderError::Inseparable)?;
    Ok(hermite_over_o(&(b * &inv))?)
}

/// Gorenstein test through duality: `Λ` is Gorenstein exactly when its trace
/// dual is isomorphic to `Λ`.
pub fn is_gorenstein_order(order: &Order) -> Result<bool, OrderError> {
    let s = order.algebra.structure();
    let dual = trace_dual(&s, &order.basis)?;
    lattices_isomorphic(&s, &order.basis, &dual)
}

/// Lattices `M` with `t^N Λ* ⊆ M ⊆ Λ*` and `[Λ*:M] ≤ max_index`, in
/// Hermite form relative to the basis of `Λ*`, with the free coefficients
/// drawn from `{-1, 0, 1}`.
fn candidate_lattices(dual: &MatK, max_index: u32) -> Vec<MatK> {
    let mut out = Vec::new();
    let m = max_index as i64;
    for e0 in 0..=m {
        for e1 in 0..=m - e0 {
            for e2 in 0..=m - e0 - e1 {
                // Free entries: (1,0) has e1 coefficients, (2,0) and (2,1) have e2 each.
                let slots = (e1 + 2 * e2) as u32;
                for code in 0..3i64.pow(slots) {
                    let mut digits = Vec::with_capacity(slots as usize);
                    let mut x = code;
                    for _ in 0..slots {
                        digits.push(x % 3 - 1);
                        x /= 3;
                    }
                    let poly = |ds: &[i64]| {
                        RatFunc::from_laurent(crate::exactnum::LaurentPoly::from_ints(0, ds))
                    };
                    let (d10, rest) = digits.split_at(e1 as usize);
                    let (d20, d21) = rest.split_at(e2 as usize);
                    let mut h = MatK::diagonal(&[RatFunc::t_pow(e0), RatFunc::t_pow(e1), RatFunc::t_pow(e2)]);
                    h[(1, 0)] = poly(d10);
                    h[(2, 0)] = poly(d20);
                    h[(2, 1)] = poly(d21);
                    out.push(dual * &h);
                }
            }
        }
    }
    out
}

/// Number of isomorphism classes of lattices `M` with `I(M) = Λ_abcd` found
/// among `Λ_abcd`, its trace dual, and the candidate sublattices of the dual
/// up to the given index.
pub fn lattice_class_oracle(form: &IndexForm, max_index: u32) -> Result<usize, OrderError> {
    if discriminant(form).is_zero() {
        return Err(OrderError::Inseparable);
    }
    let s = cubic_from_index_form(form).structure();
    let lambda = MatK::identity(3);
    let dual = trace_dual(&s, &lambda)?;
    let belonging: Vec<MatK> = candidate_lattices(&dual, max_index)
        .into_par_iter()
        .filter_map(|m| {
            let ok = (1..3).all(|k| contained(&(&s.mats[k] * &m), &m).unwrap_or(false));
            if !ok {
                return None;
            }
            let i = s.multipliers(&m).ok()?;
            (i == lambda).then(|| hermite_over_o(&m).expect("invertible"))
        })
        .collect();
    let mut reps: Vec<MatK> = vec![lambda];
    for m in belonging {
        if reps.contains(&m) {
            continue;
        }
        let mut found = false;
        for r in &reps {
            if lattices_isomorphic(&s, r, &m)? {
                found = true;
                break;
            }
        }
        if !found {
            reps.push(m);
        }
    }
    Ok(reps.len())
}
