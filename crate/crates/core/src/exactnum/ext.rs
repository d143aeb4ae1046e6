use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::LaurentPoly;

/// An element `even + j*odd` of the quadratic extension `L = K[j]`, `j^2 = t`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ExtElem {
    pub even: LaurentPoly,
    pub odd: LaurentPoly,
}

impl ExtElem {
    pub fn new(even: LaurentPoly, odd: LaurentPoly) -> Self {
        Self { even, odd }
    }

    pub fn from_k(x: LaurentPoly) -> Self {
        Self {
            even: x,
            odd: LaurentPoly::zero(),
        }
    }

    /// The generator `j`.
    pub fn j() -> Self {
        Self {
            even: LaurentPoly::zero(),
            odd: LaurentPoly::one(),
        }
    }

    /// The nontrivial automorphism of `L` over `K`, `j -> -j`.
    pub fn conj(&self) -> Self {
        Self {
            even: self.even.clone(),
            odd: -&self.odd,
        }
    }

    /// `x * conj(x)`, an element of `K`.
    pub fn norm(&self) -> LaurentPoly {
        &(&self.even * &self.even) - &(&self.odd * &self.odd).shift(1)
    }

    /// `x + conj(x)`.
    pub fn trace(&self) -> LaurentPoly {
        &self.even + &self.even
    }

    /// Valuation in the `j`-adic normalization, where `v(j) = 1` and
    /// `v(t) = 2`. `None` for zero.
    pub fn valuation_j(&self) -> Option<i64> {
        let a = self.even.valuation().map(|v| 2 * v);
        let b = self.odd.valuation().map(|v| 2 * v + 1);
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(x), Some(y)) => Some(x.min(y)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.even.is_zero(), self.odd.is_zero()) {
            (_, true) => write!(f, "{}", self.even),
            (true, false) => write!(f, "j*({})", self.odd),
            (false, false) => write!(f, "{} + j*({})", self.even, self.odd),
        }
    }
}

impl fmt::Debug for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtElem({self})")
    }
}

impl Add for &ExtElem {
    type Output = ExtElem;
    fn add(self, rhs: &ExtElem) -> ExtElem {
        ExtElem::new(&self.even + &rhs.even, &self.odd + &rhs.odd)
    }
}

impl Sub for &ExtElem {
    type Output = ExtElem;
    fn sub(self, rhs: &ExtElem) -> ExtElem {
        ExtElem::new(&self.even - &rhs.even, &self.odd - &rhs.odd)
    }
}

impl Mul for &ExtElem {
    type Output = ExtElem;
    fn mul(self, rhs: &ExtElem) -> ExtElem {
        let even = &(&self.even * &rhs.even) + &(&self.odd * &rhs.odd).shift(1);
        let odd = &(&self.even * &rhs.odd) + &(&self.odd * &rhs.even);
        ExtElem::new(even, odd)
    }
}

impl Neg for &ExtElem {
    type Output = ExtElem;
    fn neg(self) -> ExtElem {
        ExtElem::new(-&self.even, -&self.odd)
    }
}

impl Add for ExtElem {
    type Output = ExtElem;
    fn add(self, rhs: ExtElem) -> ExtElem {
        &self + &rhs
    }
}

impl Sub for ExtElem {
    type Output = ExtElem;
    fn sub(self, rhs: ExtElem) -> ExtElem {
        &self - &rhs
    }
}

impl Mul for ExtElem {
    type Output = ExtElem;
    fn mul(self, rhs: ExtElem) -> ExtElem {
        &self * &rhs
    }
}

impl Neg for ExtElem {
    type Output = ExtElem;
    fn neg(self) -> ExtElem {
        -&self
    }
}

impl Zero for ExtElem {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        ExtElem::is_zero(self)
    }
}

impl One for ExtElem {
    fn one() -> Self {
        Self::from_k(LaurentPoly::one())
    }
}

impl From<LaurentPoly> for ExtElem {
    fn from(x: LaurentPoly) -> Self {
        Self::from_k(x)
    }
}

impl From<i64> for ExtElem {
    fn from(c: i64) -> Self {
        Self::from_k(LaurentPoly::from_int(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j_squares_to_t() {
        let j = ExtElem::j();
        assert_eq!(&j * &j, ExtElem::from_k(LaurentPoly::t_pow(1)));
        assert_eq!(j.valuation_j(), Some(1));
    }

    #[test]
    fn norm_is_product_with_conjugate() {
        let x = ExtElem::new("1 + t".parse().unwrap(), "t^-1 - 2".parse().unwrap());
        let p = &x * &x.conj();
        assert!(p.odd.is_zero());
        assert_eq!(p.even, x.norm());
    }
}
