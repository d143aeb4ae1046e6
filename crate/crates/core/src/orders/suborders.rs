//! Suborders of the maximal orders `O^3` and `O (+) O_L`, listed up to
//! isomorphism by index.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::algebra::Algebra;
use super::lattice::Order;
use crate::exactnum::RatFunc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum OrderClassK3 {
    Maximal,
    /// `O + O e2 + O t^k e3`.
    Lk { k: u32 },
    /// `O + O (e2 + e3) + O t^k e3`.
    LkPrime { k: u32 },
    /// `O + t^l Λ_k`; `k = 0` stands for `O + t^l O^3`.
    Lkl { k: u32, l: u32 },
    /// `O + t^l Λ'_k`.
    LklPrime { k: u32, l: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum OrderClassKL {
    Maximal,
    /// `O + O e2 + O t^k e3` with `e2 = (0, 1)`, `e3 = (0, j)`.
    Lk { k: u32 },
    /// `O + O t e2 + O e3`.
    L1Prime,
    /// `O + t^l Λ_k`; `k = 0` stands for `O + t^l (O (+) O_L)`.
    Lkl { k: u32, l: u32 },
    /// `O + t^k Λ'_1`.
    LkPrimeSeries { k: u32 },
}

fn tp(e: u32) -> RatFunc {
    RatFunc::t_pow(e as i64)
}

fn build(algebra: Algebra, one: Vec<RatFunc>, f2: Vec<RatFunc>, f3: Vec<RatFunc>) -> Order {
    Order::new(algebra, &[one, f2, f3]).expect("listed suborders are orders")
}

fn scaled(v: &[RatFunc], c: &RatFunc) -> Vec<RatFunc> {
    v.iter().map(|x| x * c).collect()
}

impl OrderClassK3 {
    pub fn index(&self) -> u32 {
        match *self {
            OrderClassK3::Maximal => 0,
            OrderClassK3::Lk { k } | OrderClassK3::LkPrime { k } => k,
            OrderClassK3::Lkl { k, l } | OrderClassK3::LklPrime { k, l } => k + 2 * l,
        }
    }

    pub fn is_gorenstein(&self) -> bool {
        matches!(self, OrderClassK3::Maximal | OrderClassK3::Lk { .. } | OrderClassK3::LkPrime { .. })
    }

    pub fn order(&self) -> Order {
        let (z, o) = (RatFunc::zero, RatFunc::one);
        let one = vec![o(), o(), o()];
        let e2 = vec![z(), o(), z()];
        let e3 = vec![z(), z(), o()];
        let e23 = vec![z(), o(), o()];
        let alg = Algebra::Kn(3);
        match *self {
            OrderClassK3::Maximal => Order::maximal(alg),
            OrderClassK3::Lk { k } => build(alg, one, e2, scaled(&e3, &tp(k))),
            OrderClassK3::LkPrime { k } => build(alg, one, e23, scaled(&e3, &tp(k))),
            OrderClassK3::Lkl { k, l } => build(alg, one, scaled(&e2, &tp(l)), scaled(&e3, &tp(k + l))),
            OrderClassK3::LklPrime { k, l } => build(alg, one, scaled(&e23, &tp(l)), scaled(&e3, &tp(k + l))),
        }
    }
}

impl OrderClassKL {
    pub fn index(&self) -> u32 {
        match *self {
            OrderClassKL::Maximal => 0,
            OrderClassKL::Lk { k } => k,
            OrderClassKL::L1Prime => 1,
            OrderClassKL::Lkl { k, l } => k + 2 * l,
            OrderClassKL::LkPrimeSeries { k } => 2 * k + 1,
        }
    }

    pub fn is_gorenstein(&self) -> bool {
        matches!(self, OrderClassKL::Maximal | OrderClassKL::Lk { .. } | OrderClassKL::L1Prime)
    }

    /// The order in `L (+) K` coordinates `(even, odd, k)`.
    pub fn order(&self) -> Order {
        let (z, o) = (RatFunc::zero, RatFunc::one);
        let one = vec![o(), z(), o()];
        let e2 = vec![o(), z(), z()];
        let e3 = vec![z(), o(), z()];
        let alg = Algebra::LK;
        match *self {
            OrderClassKL::Maximal => Order::maximal(alg),
            OrderClassKL::Lk { k } => build(alg, one, e2, scaled(&e3, &tp(k))),
            OrderClassKL::L1Prime => build(alg, one, scaled(&e2, &tp(1)), e3),
            OrderClassKL::Lkl { k, l } => build(alg, one, scaled(&e2, &tp(l)), scaled(&e3, &tp(k + l))),
            OrderClassKL::LkPrimeSeries { k } => build(alg, one, scaled(&e2, &tp(k + 1)), scaled(&e3, &tp(k))),
        }
    }
}

impl fmt::Display for OrderClassK3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderClassK3::Maximal => write!(f, "O^3"),
            OrderClassK3::Lk { k } => write!(f, "L_{k}"),
            OrderClassK3::LkPrime { k } => write!(f, "L'_{k}"),
            OrderClassK3::Lkl { k, l } => write!(f, "L_{{{k},{l}}}"),
            OrderClassK3::LklPrime { k, l } => write!(f, "L'_{{{k},{l}}}"),
        }
    }
}

impl fmt::Display for OrderClassKL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderClassKL::Maximal => write!(f, "O+O_L"),
            OrderClassKL::Lk { k } => write!(f, "L_{k}"),
            OrderClassKL::L1Prime => write!(f, "L'_1"),
            OrderClassKL::Lkl { k, l } => write!(f, "L_{{{k},{l}}}"),
            OrderClassKL::LkPrimeSeries { k } => write!(f, "O+t^{k}L'_1"),
        }
    }
}

fn split_index(n: u32) -> impl Iterator<Item = (u32, u32)> {
    (0..=n / 2).map(move |l| (n - 2 * l, l))
}

/// Suborders of `O^3` of index `n`, one per isomorphism class. `Λ'_k` and
/// `Λ'_{k,l}` are omitted because a coordinate swap identifies them with
/// `Λ_k` and `Λ_{k,l}`.
pub fn enumerate_suborders_k3(n: u32) -> Vec<OrderClassK3> {
    split_index(n)
        .map(|(k, l)| match (k, l) {
            (0, 0) => OrderClassK3::Maximal,
            (k, 0) => OrderClassK3::Lk { k },
            (k, l) => OrderClassK3::Lkl { k, l },
        })
        .collect()
}

/// Suborders of `O (+) O_L` of index `n`.
pub fn enumerate_suborders_kl(n: u32) -> Vec<OrderClassKL> {
    let mut out: Vec<OrderClassKL> = split_index(n)
        .map(|(k, l)| match (k, l) {
            (0, 0) => OrderClassKL::Maximal,
            (k, 0) => OrderClassKL::Lk { k },
            (k, l) => OrderClassKL::Lkl { k, l },
        })
        .collect();
    if n == 1 {
        out.push(OrderClassKL::L1Prime);
    } else if n % 2 == 1 {
        out.push(OrderClassKL::LkPrimeSeries { k: (n - 1) / 2 });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::MatK;
    use crate::orders::lattice::multiplier_order;

    /// Image of an order in `K^3` under a permutation of coordinates.
    fn permuted(o: &Order, p: [usize; 3]) -> Order {
        let b = MatK::from_fn(3, 3, |r, c| o.basis[(p[r], c)].clone());
        Order::new(Algebra::Kn(3), &(0..3).map(|c| b.column(c)).collect::<Vec<_>>()).unwrap()
    }

    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

    fn isomorphic(a: &Order, b: &Order) -> bool {
        PERMS.iter().any(|p| &permuted(a, *p) == b)
    }

    #[test]
    fn counts_match_the_closed_forms() {
        for n in 0..=10 {
            assert_eq!(enumerate_suborders_k3(n).len() as u32, n / 2 + 1);
            let expected = if n % 2 == 0 { n / 2 + 1 } else { n / 2 + 2 };
            assert_eq!(enumerate_suborders_kl(n).len() as u32, expected);
        }
        assert_eq!(
            enumerate_suborders_kl(1),
            vec![OrderClassKL::Lk { k: 1 }, OrderClassKL::L1Prime]
        );
    }

    #[test]
    fn listed_classes_are_orders_of_the_stated_index() {
        for n in 0..=8 {
            for c in enumerate_suborders_k3(n) {
                let o = c.order();
                assert_eq!(o.index(), n as i64, "{c}");
                assert_eq!(multiplier_order(&o.as_lattice()).unwrap(), o, "{c}");
            }
            for c in enumerate_suborders_kl(n) {
                let o = c.order();
                assert_eq!(o.index(), n as i64, "{c}");
                assert_eq!(multiplier_order(&o.as_lattice()).unwrap(), o, "{c}");
            }
        }
    }

    #[test]
    fn primed_k3_orders_are_coordinate_swaps() {
        for k in 1..4 {
            let a = OrderClassK3::Lk { k }.order();
            let b = OrderClassK3::LkPrime { k }.order();
            assert_ne!(a, b);
            assert!(isomorphic(&a, &b));
            let a = OrderClassK3::Lkl { k, l: 1 }.order();
            let b = OrderClassK3::LklPrime { k, l: 1 }.order();
            assert!(isomorphic(&a, &b));
        }
        for n in 0..=6 {
            let list: Vec<Order> = enumerate_suborders_k3(n).iter().map(|c| c.order()).collect();
            for (x, a) in list.iter().enumerate() {
                for b in &list[x + 1..] {
                    assert!(!isomorphic(a, b));
                }
            }
        }
    }

    #[test]
    fn gorenstein_tags() {
        assert!(OrderClassK3::Lk { k: 3 }.is_gorenstein());
        assert!(!OrderClassK3::Lkl { k: 1, l: 1 }.is_gorenstein());
        assert!(OrderClassK3::Maximal.is_gorenstein());
        assert!(OrderClassKL::L1Prime.is_gorenstein());
        assert!(!OrderClassKL::LkPrimeSeries { k: 1 }.is_gorenstein());
    }
}
