//! Twistability of Belavin-Drinfeld data: the discrete conditions on
//! `(Gamma1, Gamma2, tau)` and the linear conditions on the Cartan part `r0`.
//!
//! `r0` is stored as its coefficient matrix `c` in `r0 = sum c_kl h_k (x) h_l`
//! over the simple coroots; the leg swap is the transpose.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bdtriple::{enumerate_triples, is_admissible, AdmissibleTriple, TripleError};
use crate::exactnum::{fmt_rational, rat, AffineSolution, LinearSystem, QMat, Rational};
use crate::rootsys::{build_root_system, involution_d, Family, RootSystem, SimpleType};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum TwistError {
    #[error("discrete conditions fail")]
    DiscreteConditionsFail,
    #[error("expected type D with odd rank at least 5, got {0}")]
    NotOddD(String),
    #[error(transparent)]
    Triple(#[from] TripleError),
}

/// Serializes a rational matrix as nested arrays of `"p/q"` strings.
pub mod rational_matrix {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &QMat, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(fmt_rational).collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<QMat, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(d)?;
        let parsed: Option<Vec<Vec<Rational>>> = rows
            .iter()
            .map(|r| r.iter().map(|x| crate::exactnum::parse_rational(x)).collect())
            .collect();
        let parsed = parsed.ok_or_else(|| serde::de::Error::custom("bad rational entry"))?;
        if parsed.iter().any(|r| r.len() != parsed.len()) {
            return Err(serde::de::Error::custom("matrix must be square"));
        }
        Ok(QMat::from_rows(parsed))
    }
}

/// The Cartan part `r0` of a non-twisted r-matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuousParameter {
    #[serde(with = "rational_matrix")]
    pub matrix: QMat,
}

/// `r0 = u + j v` over the quadratic extension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwistedParameter {
    #[serde(with = "rational_matrix")]
    pub u: QMat,
    #[serde(with = "rational_matrix")]
    pub v: QMat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TwistCheck {
    pub discrete_ok: bool,
    /// Affine dimension of the solution set, `-1` when empty.
    pub continuous_dim: i64,
    pub witness: Option<TwistedParameter>,
}

/// Both conditions on `(Gamma1, Gamma2, tau)` that a twisted r-matrix needs:
/// `Gamma2 = d(Gamma1)` and `tau = d tau^-1 d^-1`. For inner types only the
/// empty triple qualifies.
pub fn discrete_twistable(t: &AdmissibleTriple) -> bool {
    if t.ty.chevalley_is_inner() {
        return t.is_empty();
    }
    let d = involution_d(t.ty);
    let mut image: Vec<usize> = t.gamma1.iter().map(|&a| d.apply(a)).collect();
    image.sort_unstable();
    if image != t.gamma2 {
        return false;
    }
    // tau(x) = d(tau^-1(d(x))) for every x in Gamma1.
    t.gamma1.iter().all(|&x| {
        let dx = d.apply(x);
        let pre = t.tau.iter().find(|(_, &b)| b == dx).map(|(&a, _)| a);
        pre.map(|p| d.apply(p)) == t.tau_of(x)
    })
}

/// Index of unknown `c_kl` in an `n x n` block starting at `offset`.
fn var(offset: usize, n: usize, k: usize, l: usize) -> usize {
    offset + k * n + l
}

/// `alpha(h_k)` for the simple root `alpha` and simple coroot `h_k`.
fn root_on_coroots(rs: &RootSystem, alpha: usize) -> Vec<Rational> {
    (0..rs.rank()).map(|k| rat(rs.a(alpha, k))).collect()
}

/// Adds `(tau(alpha) (x) 1 + 1 (x) alpha)(c) = 0` for every `alpha` in `Gamma1`.
fn push_gamma_constraints(sys: &mut LinearSystem, rs: &RootSystem, t: &AdmissibleTriple, offset: usize) {
    let n = rs.rank();
    for (&a, &ta) in &t.tau {
        let wa = root_on_coroots(rs, a);
        let wt = root_on_coroots(rs, ta);
        for m in 0..n {
            let mut terms = Vec::with_capacity(2 * n);
            for k in 0..n {
                // sum_k c_km tau(alpha)(h_k) + sum_l c_ml alpha(h_l)
                terms.push((var(offset, n, k, m), wt[k].clone()));
                terms.push((var(offset, n, m, k), wa[k].clone()));
            }
            sys.push_sparse(&terms, Rational::zero());
        }
    }
}

/// `c + c^T = target`.
fn push_symmetric_part(sys: &mut LinearSystem, n: usize, offset: usize, target: &QMat) {
    for k in 0..n {
        for l in k..n {
            sys.push_sparse(
                &[(var(offset, n, k, l), rat(1)), (var(offset, n, l, k), rat(1))],
                target[(k, l)].clone(),
            );
        }
    }
}

fn matrix_from(sol: &[Rational], n: usize, offset: usize) -> QMat {
    QMat::from_fn(n, n, |k, l| sol[var(offset, n, k, l)].clone())
}

/// Checks the linear conditions on a proposed `r0` for a non-twisted
/// r-matrix, returning a description of the first violated one.
pub fn check_r0(t: &AdmissibleTriple, c: &QMat) -> Result<(), String> {
    let rs = build_root_system(t.ty);
    let n = rs.rank();
    if c.rows() != n || c.cols() != n {
        return Err(format!("r0 must be {n}x{n}"));
    }
    let sum = c + &c.transpose();
    if sum != rs.omega0() {
        return Err("r0 + r0^21 differs from the Cartan part of the Casimir".into());
    }
    for (&a, &ta) in &t.tau {
        let wa = root_on_coroots(&rs, a);
        let wt = root_on_coroots(&rs, ta);
        let lhs = &c.transpose().mul_vec(&wt);
        let rhs = c.mul_vec(&wa);
        if lhs.iter().zip(&rhs).any(|(x, y)| !(x + y).is_zero()) {
            return Err(format!("constraint for alpha_{} -> alpha_{} fails", a + 1, ta + 1));
        }
    }
    Ok(())
}

/// Affine space of `r0` with `r0 + r0^21 = Omega_0` and the `Gamma1`
/// constraints, as `(dimension, witness)`; dimension `-1` when empty.
pub fn continuous_space_nontwisted(t: &AdmissibleTriple) -> (i64, Option<ContinuousParameter>) {
    let rs = build_root_system(t.ty);
    let n = rs.rank();
    let mut sys = LinearSystem::new(n * n);
    push_symmetric_part(&mut sys, n, 0, &rs.omega0());
    push_gamma_constraints(&mut sys, &rs, t, 0);
    match sys.solve() {
        None => (-1, None),
        Some(sol) => (
            sol.dimension() as i64,
            Some(ContinuousParameter {
                matrix: matrix_from(&sol.particular, n, 0),
            }),
        ),
    }
}

fn twisted_system(t: &AdmissibleTriple) -> (LinearSystem, usize) {
    let rs = build_root_system(t.ty);
    let n = rs.rank();
    let (u0, v0) = (0, n * n);
    let mut sys = LinearSystem::new(2 * n * n);
    push_symmetric_part(&mut sys, n, u0, &rs.omega0());
    push_symmetric_part(&mut sys, n, v0, &QMat::zeros(n, n));
    // (M c M^T)^T has entry (k,l) equal to c_{d^-1 l, d^-1 k}; d is an involution.
    let d = involution_d(t.ty);
    for k in 0..n {
        for l in 0..n {
            let (pk, pl) = (d.apply(k), d.apply(l));
            sys.push_sparse(&[(var(u0, n, k, l), rat(1)), (var(u0, n, pl, pk), rat(-1))], Rational::zero());
            sys.push_sparse(&[(var(v0, n, k, l), rat(1)), (var(v0, n, pl, pk), rat(1))], Rational::zero());
        }
    }
    push_gamma_constraints(&mut sys, &rs, t, u0);
    push_gamma_constraints(&mut sys, &rs, t, v0);
    (sys, n)
}

/// Solves the linear conditions on `r0 = u + j v` for a twisted r-matrix.
pub fn continuous_space_twisted(t: &AdmissibleTriple) -> Result<TwistCheck, TwistError> {
    if !discrete_twistable(t) {
        return Err(TwistError::DiscreteConditionsFail);
    }
    let (sys, n) = twisted_system(t);
    Ok(match sys.solve() {
        None => TwistCheck {
            discrete_ok: true,
            continuous_dim: -1,
            witness: None,
        },
        Some(sol) => TwistCheck {
            discrete_ok: true,
            continuous_dim: sol.dimension() as i64,
            witness: Some(witness_from(&sol, n)),
        },
    })
}

fn witness_from(sol: &AffineSolution, n: usize) -> TwistedParameter {
    TwistedParameter {
        u: matrix_from(&sol.particular, n, 0),
        v: matrix_from(&sol.particular, n, n * n),
    }
}

/// Verifies a twisted witness against every condition.
pub fn check_twisted_witness(t: &AdmissibleTriple, w: &TwistedParameter) -> bool {
    let rs = build_root_system(t.ty);
    let n = rs.rank();
    let m = involution_d(t.ty).matrix();
    let conj = |x: &QMat| (&(&m * x) * &m.transpose()).transpose();
    let zero = QMat::zeros(n, n);
    check_r0(t, &w.u).is_ok()
        && &w.v + &w.v.transpose() == zero
        && conj(&w.u) == w.u
        && conj(&w.v) == -&w.v
        && gamma_constraints_hold(&rs, t, &w.v)
}

fn gamma_constraints_hold(rs: &RootSystem, t: &AdmissibleTriple, c: &QMat) -> bool {
    t.tau.iter().all(|(&a, &ta)| {
        let wa = root_on_coroots(rs, a);
        let wt = root_on_coroots(rs, ta);
        let lhs = c.transpose().mul_vec(&wt);
        let rhs = c.mul_vec(&wa);
        lhs.iter().zip(&rhs).all(|(x, y)| (x + y).is_zero())
    })
}

/// The twistable triples of `D_m`, `m` odd: `{alpha_{m-1}} -> {alpha_m}` and
/// `{alpha_{m-1}, alpha_k} -> {alpha_k, alpha_m}` with
/// `alpha_{m-1} -> alpha_k -> alpha_m`, together with their mirrors.
pub fn d_odd_twisted_families(m: usize) -> Result<Vec<AdmissibleTriple>, TwistError> {
    if m < 5 || m % 2 == 0 {
        return Err(TwistError::NotOddD(format!("D{m}")));
    }
    let ty = SimpleType::new(Family::D, m).map_err(|_| TwistError::NotOddD(format!("D{m}")))?;
    let mut out = vec![AdmissibleTriple::from_labels(ty, &[(m - 1, m)])];
    for k in 1..=m - 2 {
        let t = AdmissibleTriple::from_labels(ty, &[(m - 1, k), (k, m)]);
        if is_admissible(ty, &t.gamma1, &t.gamma2, &t.tau)? {
            out.push(t);
        }
    }
    let mirrors: Vec<AdmissibleTriple> = out.iter().map(|t| t.mirror()).collect();
    out.extend(mirrors);
    out.sort();
    Ok(out)
}

/// Nonempty admissible triples of `ty` passing the discrete twisting test.
pub fn twistable_triples(ty: SimpleType) -> Result<Vec<AdmissibleTriple>, TwistError> {
    Ok(enumerate_triples(ty, false)?.into_iter().filter(discrete_twistable).collect())
}

/// The E6 twisted list: the discrete filter of the full enumeration.
pub fn e6_twisted_list() -> Vec<AdmissibleTriple> {
    twistable_triples(SimpleType::e(6)).expect("E6 is within the enumeration bound")
}

/// Comparison of the discrete filter with the filter that also requires the
/// continuous conditions to be solvable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FilterComparison {
    pub discrete_only: usize,
    pub all_conditions: usize,
    pub only_discrete: Vec<AdmissibleTriple>,
}

pub fn compare_twist_filters(ty: SimpleType) -> Result<FilterComparison, TwistError> {
    let discrete = twistable_triples(ty)?;
    let mut only_discrete = Vec::new();
    for t in &discrete {
        if continuous_space_twisted(t)?.continuous_dim < 0 {
            only_discrete.push(t.clone());
        }
    }
    Ok(FilterComparison {
        discrete_only: discrete.len(),
        all_conditions: discrete.len() - only_discrete.len(),
        only_discrete,
    })
}
