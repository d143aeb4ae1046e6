use serde::{Deserialize, Serialize};

use super::algebra::{canonical_basis, lattice_index, Algebra};
use super::OrderError;
use crate::exactnum::{ExtElem, MatK, RatFunc};

/// A full-rank `O`-lattice in one of the algebras of [`Algebra`], stored by
/// its canonical column basis so that equality is lattice equality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lattice {
    pub algebra: Algebra,
    #[serde(with = "super::matk_serde")]
    pub basis: MatK,
}

/// A lattice that is also a subring containing the unit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Order {
    pub algebra: Algebra,
    #[serde(with = "super::matk_serde")]
    pub basis: MatK,
}

impl Lattice {
    pub fn new(algebra: Algebra, vectors: &[Vec<RatFunc>]) -> Result<Self, OrderError> {
        Ok(Self {
            algebra,
            basis: canonical_basis(vectors, algebra.dim())?,
        })
    }

    /// The lattice spanned by the columns of `m`.
    pub fn from_columns(algebra: Algebra, m: &MatK) -> Result<Self, OrderError> {
        let vectors: Vec<Vec<RatFunc>> = (0..m.cols()).map(|c| m.column(c)).collect();
        Self::new(algebra, &vectors)
    }

    /// `h * M` for an invertible algebra element `h`.
    pub fn scaled(&self, h: &[RatFunc]) -> Result<Self, OrderError> {
        let m = &self.algebra.structure().mult_matrix(h) * &self.basis;
        Self::from_columns(self.algebra, &m)
    }
}

impl Order {
    /// Checks containment of the unit and closure under multiplication.
    pub fn new(algebra: Algebra, vectors: &[Vec<RatFunc>]) -> Result<Self, OrderError> {
        let basis = canonical_basis(vectors, algebra.dim())?;
        let s = algebra.structure();
        if !s.is_order(&basis, &algebra.one())? {
            return Err(OrderError::NotAnOrder);
        }
        Ok(Self { algebra, basis })
    }

    pub fn maximal(algebra: Algebra) -> Self {
        Self {
            algebra,
            basis: algebra.maximal_basis(),
        }
    }

    pub fn as_lattice(&self) -> Lattice {
        Lattice {
            algebra: self.algebra,
            basis: self.basis.clone(),
        }
    }

    pub fn contains(&self, x: &[RatFunc]) -> Result<bool, OrderError> {
        self.algebra.structure().contains(&self.basis, x)
    }

    /// Index in the maximal order.
    pub fn index(&self) -> i64 {
        lattice_index(&self.basis, &self.algebra.maximal_basis()).expect("orders lie in the maximal order")
    }
}

/// `I(M) = {x : xM ⊆ M}`.
pub fn multiplier_order(m: &Lattice) -> Result<Order, OrderError> {
    let basis = m.algebra.structure().multipliers(&m.basis)?;
    Ok(Order {
        algebra: m.algebra,
        basis,
    })
}

/// Multiplier order of a lattice in `L (+) K`, coordinates `(even, odd, k)`.
pub fn multiplier_order_lk(n: &Lattice) -> Result<Order, OrderError> {
    if n.algebra != Algebra::LK {
        return Err(OrderError::Shape(format!("expected a lattice in L+K, got {:?}", n.algebra)));
    }
    multiplier_order(n)
}

/// Exponent of the product of invariant factors of `sub` in `sup`.
pub fn index_of_suborder(sub: &Order, sup: &Order) -> Result<i64, OrderError> {
    if sub.algebra != sup.algebra {
        return Err(OrderError::Shape("orders live in different algebras".into()));
    }
    lattice_index(&sub.basis, &sup.basis)
}

/// `Λ_k = {(d1, d2) ∈ O^2 : d1 ≡ d2 mod t^k}`.
pub fn lambda_k2(k: u32) -> Order {
    let basis = canonical_basis(
        &[
            vec![RatFunc::one(), RatFunc::one()],
            vec![RatFunc::t_pow(k as i64), RatFunc::zero()],
        ],
        2,
    )
    .expect("independent");
    Order {
        algebra: Algebra::Kn(2),
        basis,
    }
}

/// `O[t^{n+1/2}]` inside `L`.
pub fn lambda_l(n: u32) -> Order {
    Order {
        algebra: Algebra::L,
        basis: MatK::diagonal(&[RatFunc::one(), RatFunc::t_pow(n as i64)]),
    }
}

/// The unique `k` with `Λ = Λ_k`.
pub fn classify_order_k2(basis: &[Vec<RatFunc>]) -> Result<u32, OrderError> {
    let order = Order::new(Algebra::Kn(2), basis)?;
    let k = order.index();
    let k = u32::try_from(k).map_err(|_| OrderError::NotAnOrder)?;
    if order != lambda_k2(k) {
        return Err(OrderError::NotAnOrder);
    }
    Ok(k)
}

pub fn ext_coords(x: &ExtElem) -> Vec<RatFunc> {
    vec![RatFunc::from_laurent(x.even.clone()), RatFunc::from_laurent(x.odd.clone())]
}

/// The unique `n` with `Λ = O[t^{n+1/2}]`.
pub fn classify_order_l(basis: &[ExtElem]) -> Result<u32, OrderError> {
    let vectors: Vec<Vec<RatFunc>> = basis.iter().map(ext_coords).collect();
    let order = Order::new(Algebra::L, &vectors)?;
    let n = u32::try_from(order.index()).map_err(|_| OrderError::NotAnOrder)?;
    if order != lambda_l(n) {
        return Err(OrderError::NotAnOrder);
    }
    Ok(n)
}
