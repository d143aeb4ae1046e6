//! Commutative `K`-algebras given by multiplication matrices, and the
//! lattice operations over `O` that only depend on those matrices.

use serde::{Deserialize, Serialize};

use super::OrderError;
use crate::exactnum::{hermite_columns, hermite_over_o, solve_integral_preimage, MatK, RatFunc};

/// The separable algebras that carry orders in this module.
///
/// Coordinates: `Kn(n)` uses the standard idempotents; `L` uses `(even, odd)`
/// for `x + j*y`; `LK` uses `(even, odd, k)` for `(x + j*y, k)` in `L (+) K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algebra {
    Kn(usize),
    L,
    LK,
}

impl Algebra {
    pub fn dim(self) -> usize {
        match self {
            Algebra::Kn(n) => n,
            Algebra::L => 2,
            Algebra::LK => 3,
        }
    }

    pub fn one(self) -> Vec<RatFunc> {
        match self {
            Algebra::Kn(n) => vec![RatFunc::one(); n],
            Algebra::L => vec![RatFunc::one(), RatFunc::zero()],
            Algebra::LK => vec![RatFunc::one(), RatFunc::zero(), RatFunc::one()],
        }
    }

    pub fn structure(self) -> Structure {
        let t = RatFunc::t_pow(1);
        match self {
            Algebra::Kn(n) => Structure::new(
                (0..n)
                    .map(|k| MatK::from_fn(n, n, |r, c| if r == k && c == k { RatFunc::one() } else { RatFunc::zero() }))
                    .collect(),
            ),
            Algebra::L => {
                let j = MatK::from_rows(vec![vec![RatFunc::zero(), t], vec![RatFunc::one(), RatFunc::zero()]]);
                Structure::new(vec![MatK::identity(2), j])
            }
            Algebra::LK => {
                let z = RatFunc::zero;
                let o = RatFunc::one;
                let e = MatK::from_rows(vec![vec![o(), z(), z()], vec![z(), o(), z()], vec![z(), z(), z()]]);
                let j = MatK::from_rows(vec![vec![z(), t, z()], vec![o(), z(), z()], vec![z(), z(), z()]]);
                let k = MatK::from_rows(vec![vec![z(), z(), z()], vec![z(), z(), z()], vec![z(), z(), o()]]);
                Structure::new(vec![e, j, k])
            }
        }
    }

    /// Canonical basis of the maximal order.
    pub fn maximal_basis(self) -> MatK {
        MatK::identity(self.dim())
    }
}

/// A commutative algebra with basis `b_0..b_{n-1}`; `mats[k]` is the matrix
/// of multiplication by `b_k` in that basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Structure {
    pub mats: Vec<MatK>,
}

impl Structure {
    pub fn new(mats: Vec<MatK>) -> Self {
        Self { mats }
    }

    pub fn dim(&self) -> usize {
        self.mats.len()
    }

    /// Matrix of multiplication by `x`.
    pub fn mult_matrix(&self, x: &[RatFunc]) -> MatK {
        let n = self.dim();
        let mut m = MatK::zeros(n, n);
        for (k, xk) in x.iter().enumerate() {
            if !xk.is_zero() {
                m = &m + &self.mats[k].scale(xk);
            }
        }
        m
    }

    pub fn mul(&self, x: &[RatFunc], y: &[RatFunc]) -> Vec<RatFunc> {
        self.mult_matrix(x).mul_vec(y)
    }

    /// Trace form `Tr(b_i b_j)`.
    pub fn trace_form(&self) -> MatK {
        let n = self.dim();
        let traces: Vec<RatFunc> = self.mats.iter().map(|m| m.trace()).collect();
        MatK::from_fn(n, n, |i, j| {
            let prod = self.mats[i].column(j);
            prod.iter().zip(&traces).fold(RatFunc::zero(), |acc, (p, tr)| &acc + &(p * tr))
        })
    }

    /// `{x : x * M2 ⊆ M1}` for lattices with column bases `b1`, `b2`.
    pub fn colon(&self, b1: &MatK, b2: &MatK) -> Result<MatK, OrderError> {
        let n = self.dim();
        let inv = b1.inverse().ok_or(OrderError::RankDefect)?;
        // Row (r, s), column k: entry (r, s) of b1^{-1} * m_k * b2.
        let blocks: Vec<MatK> = self.mats.iter().map(|m| &(&inv * m) * b2).collect();
        let at = MatK::from_fn(n, n * n, |k, rs| blocks[k][(rs / n, rs % n)].clone());
        let (l, _) = hermite_columns(&at).map_err(|_| OrderError::RankDefect)?;
        let lt_inv = l.transpose().inverse().ok_or(OrderError::RankDefect)?;
        Ok(hermite_over_o(&lt_inv)?)
    }

    /// `I(M) = {x : xM ⊆ M}`.
    pub fn multipliers(&self, b: &MatK) -> Result<MatK, OrderError> {
        self.colon(b, b)
    }

    /// Canonical basis of the lattice spanned by all products.
    pub fn product(&self, b1: &MatK, b2: &MatK) -> Result<MatK, OrderError> {
        let n = self.dim();
        let mut cols = Vec::with_capacity(n * n);
        for i in 0..n {
            let m = self.mult_matrix(&b1.column(i));
            for j in 0..n {
                cols.push(m.mul_vec(&b2.column(j)));
            }
        }
        let a = MatK::from_fn(n, n * n, |r, c| cols[c][r].clone());
        Ok(hermite_columns(&a).map_err(|_| OrderError::RankDefect)?.0)
    }

    pub fn contains(&self, b: &MatK, x: &[RatFunc]) -> Result<bool, OrderError> {
        Ok(solve_integral_preimage(b, x)?.is_some())
    }

    /// True when the columns of `b` span a ring with unit `one`.
    pub fn is_order(&self, b: &MatK, one: &[RatFunc]) -> Result<bool, OrderError> {
        if !self.contains(b, one)? {
            return Ok(false);
        }
        let n = self.dim();
        for i in 0..n {
            let m = self.mult_matrix(&b.column(i));
            for j in i..n {
                if !self.contains(b, &m.mul_vec(&b.column(j)))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Whether every column of `sub` lies in the lattice spanned by `sup`.
pub fn contained(sub: &MatK, sup: &MatK) -> Result<bool, OrderError> {
    let inv = sup.inverse().ok_or(OrderError::RankDefect)?;
    Ok((&inv * sub).to_rows().iter().flatten().all(RatFunc::in_o))
}

/// Valuation of `det(sup^{-1} sub)`, the index of `sub` in `sup`.
pub fn lattice_index(sub: &MatK, sup: &MatK) -> Result<i64, OrderError> {
    if !contained(sub, sup)? {
        return Err(OrderError::NotContained);
    }
    let inv = sup.inverse().ok_or(OrderError::RankDefect)?;
    (&inv * sub).det().valuation().ok_or(OrderError::RankDefect)
}

/// Columns of the given vectors as a canonical lattice basis.
pub fn canonical_basis(vectors: &[Vec<RatFunc>], dim: usize) -> Result<MatK, OrderError> {
    if vectors.len() != dim || vectors.iter().any(|v| v.len() != dim) {
        return Err(OrderError::Shape(format!("expected {dim} vectors of length {dim}")));
    }
    let m = MatK::from_fn(dim, dim, |r, c| vectors[c][r].clone());
    if m.det().is_zero() {
        return Err(OrderError::RankDefect);
    }
    Ok(hermite_over_o(&m)?)
}
