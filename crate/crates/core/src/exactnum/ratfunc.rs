use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{LaurentPoly, Rational};

/// A quotient `num / den` with `den` a polynomial whose constant term is one.
///
/// Such quotients form a subfield of `K = C((t))` (every one of them has a
/// Laurent expansion) that is closed under the field operations. The
/// representation is canonical: `num` and `den` share no nontrivial common
/// factor in `Q[t]`, so structural equality is equality in `K`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        // Move powers of t and the constant term normalization into the numerator.
        let (vn, pn) = num.split_monomial();
        let (vd, pd) = den.split_monomial();
        let g = LaurentPoly::poly_gcd(&pn, &pd);
        let (mut pn, _) = pn.poly_divrem(&g);
        let (mut pd, _) = pd.poly_divrem(&g);
        let c0 = pd.coeff(0);
        let inv = Rational::one() / c0;
        pd = pd.scale(&inv);
        pn = pn.scale(&inv);
        Self {
            num: pn.shift(vn - vd),
            den: pd,
        }
    }

    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_laurent(LaurentPoly::from_int(c))
    }

    pub fn t_pow(e: i64) -> Self {
        Self::from_laurent(LaurentPoly::t_pow(e))
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the element is a Laurent polynomial.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    /// The `t`-adic valuation; `None` for zero. The denominator is a unit.
    pub fn valuation(&self) -> Option<i64> {
        self.num.valuation()
    }

    pub fn in_o(&self) -> bool {
        self.num.in_o()
    }

    /// Laurent expansion up to (excluding) `t^bound`.
    pub fn series_below(&self, bound: i64) -> LaurentPoly {
        if self.num.is_zero() {
            return LaurentPoly::zero();
        }
        if self.den.is_one() {
            return self.num.truncate_below(bound);
        }
        // Long division by a power series with constant term one.
        let low = self.num.valuation().unwrap();
        let mut out = LaurentPoly::zero();
        let mut rem = self.num.truncate_below(bound);
        let mut e = low;
        while e < bound {
            let c = rem.coeff(e);
            if !c.is_zero() {
                out.add_term(e, c.clone());
                let sub = self.den.shift(e).scale(&c).truncate_below(bound);
                rem = &rem - &sub;
            }
            e += 1;
        }
        out
    }

    /// Coefficient of `t^e` in the Laurent expansion.
    pub fn coeff(&self, e: i64) -> Rational {
        self.series_below(e + 1).coeff(e)
    }

    /// The strictly negative part of the expansion, a Laurent polynomial.
    pub fn bracket_negative(&self) -> LaurentPoly {
        self.series_below(0)
    }

    /// Splits `self = t^v * u` with `u` a unit of `O`. Returns `None` for zero.
    pub fn split_unit(&self) -> Option<(i64, RatFunc)> {
        let v = self.valuation()?;
        Some((
            v,
            Self {
                num: self.num.shift(-v),
                den: self.den.clone(),
            },
        ))
    }

    /// Leading coefficient of the expansion.
    pub fn leading_coeff(&self) -> Option<Rational> {
        self.num.leading_low().cloned()
    }

    /// Writes `xs[i] = nums[i] / den` over the least common denominator.
    pub fn common_denominator(xs: &[&RatFunc]) -> (Vec<LaurentPoly>, LaurentPoly) {
        let mut den = LaurentPoly::one();
        for x in xs {
            if !x.den.is_one() && x.den != den {
                let g = LaurentPoly::poly_gcd(&den, &x.den);
                den = &den * &x.den.poly_divrem(&g).0;
            }
        }
        let nums = xs.iter().map(|x| &x.num * &den.poly_divrem(&x.den).0).collect();
        (nums, den)
    }

    pub fn inv(&self) -> RatFunc {
        assert!(!self.is_zero(), "inverse of zero");
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, k: u32) -> RatFunc {
        let mut acc = RatFunc::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_laurent(&self.num * &rhs.num);
        }
        // Cross-cancel so that the final reduction only sees small gcds.
        let (a, b) = cancel(&self.num, &rhs.den);
        let (c, d) = cancel(&rhs.num, &self.den);
        RatFunc::new(&a * &c, &b * &d)
    }
}

/// `(p / g, q / g)` for `g = gcd(p, q)` in `Q[t]`, ignoring powers of `t`.
fn cancel(p: &LaurentPoly, q: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    if q.is_one() || p.is_zero() {
        return (p.clone(), q.clone());
    }
    let (vp, pp) = p.split_monomial();
    let (vq, pq) = q.split_monomial();
    let g = LaurentPoly::poly_gcd(&pp, &pq);
    if g.is_one() {
        return (p.clone(), q.clone());
    }
    (pp.poly_divrem(&g).0.shift(vp), pq.poly_divrem(&g).0.shift(vq))
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self * &rhs.inv()
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        RatFunc::from_laurent(p)
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        RatFunc::from_int(c)
    }
}

impl std::str::FromStr for RatFunc {
    type Err = super::ParseLaurentError;

    /// Accepts a Laurent polynomial string or `(num)/(den)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('(') {
            if let Some((num, den)) = rest.split_once(")/(") {
                if let Some(den) = den.strip_suffix(')') {
                    let num: LaurentPoly = num.parse()?;
                    let den: LaurentPoly = den.parse()?;
                    if den.is_zero() {
                        return Err(super::ParseLaurentError {
                            input: s.to_string(),
                            reason: "zero denominator".into(),
                        });
                    }
                    return Ok(RatFunc::new(num, den));
                }
            }
        }
        Ok(RatFunc::from_laurent(s.parse()?))
    }
}

impl serde::Serialize for RatFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for RatFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) => s.parse().map_err(serde::de::Error::custom),
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(RatFunc::from_int)
                .ok_or_else(|| serde::de::Error::custom("integer entry expected")),
            other => serde_json::from_value::<LaurentPoly>(other)
                .map(RatFunc::from_laurent)
                .map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn rf(n: &str, d: &str) -> RatFunc {
        RatFunc::new(n.parse().unwrap(), d.parse().unwrap())
    }

    #[test]
    fn canonical_form() {
        assert_eq!(rf("1 - t^2", "1 + t"), RatFunc::from_laurent("1 - t".parse().unwrap()));
        assert_eq!(rf("t", "t^2"), RatFunc::t_pow(-1));
        assert_eq!(rf("2", "2 + 2*t"), rf("1", "1 + t"));
    }

    #[test]
    fn series_of_geometric() {
        let g = rf("1", "1 - t");
        assert_eq!(g.series_below(4), LaurentPoly::from_ints(0, &[1, 1, 1, 1]));
        let h = rf("t^-2", "1 + t");
        assert_eq!(h.bracket_negative(), "t^-2 - t^-1".parse().unwrap());
        assert_eq!(h.coeff(3), rat(-1));
    }

    #[test]
    fn field_operations() {
        let a = rf("1", "1 + t");
        let b = RatFunc::from_laurent("1 + t".parse().unwrap());
        assert_eq!(&a * &b, RatFunc::one());
        assert_eq!(&(&a + &a) - &a, a);
        assert_eq!(&b / &b, RatFunc::one());
        assert_eq!(b.inv(), a);
    }
}
