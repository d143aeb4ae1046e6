use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use super::{fmt_rational, parse_rational, Rational};

/// A Laurent polynomial `sum c_k t^k` with rational coefficients.
///
/// Zero coefficients are never stored, so the map is empty exactly for the
/// zero element and the smallest key is the `t`-adic valuation.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse Laurent polynomial {input:?}: {reason}")]
pub struct ParseLaurentError {
    pub input: String,
    pub reason: String,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(super::rat(c))
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `t^exp`.
    pub fn t_pow(exp: i64) -> Self {
        Self::monomial(Rational::one(), exp)
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    /// Builds from integer coefficients, `coeffs[k]` multiplying `t^(low + k)`.
    pub fn from_ints(low: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| (low + k as i64, super::rat(c))),
        )
    }

    pub fn add_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Minimum exponent with nonzero coefficient; `None` stands for `+inf`
    /// (the zero element).
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Maximum exponent with nonzero coefficient; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the lowest-order term.
    pub fn leading_low(&self) -> Option<&Rational> {
        self.terms.values().next()
    }

    /// Coefficient of the highest-order term.
    pub fn leading_high(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Nonnegative valuation: an element of `O`.
    pub fn in_o(&self) -> bool {
        self.valuation().map_or(true, |v| v >= 0)
    }

    /// Terms with exponent `< bound`.
    pub fn truncate_below(&self, bound: i64) -> Self {
        Self {
            terms: self.terms.range(..bound).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    /// Terms with exponent `>= bound`.
    pub fn part_from(&self, bound: i64) -> Self {
        Self {
            terms: self.terms.range(bound..).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    /// The strictly negative part `[f]`.
    pub fn bracket_negative(&self) -> Self {
        self.truncate_below(0)
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Substitutes `t -> -t`.
    pub fn reflect_sign(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, if e % 2 == 0 { c.clone() } else { -c.clone() }))
                .collect(),
        }
    }

    /// Splits off the power of `t`: returns `(v, p)` with `self = t^v * p`,
    /// `p` a polynomial with nonzero constant term. Zero maps to `(0, 0)`.
    pub fn split_monomial(&self) -> (i64, Self) {
        match self.valuation() {
            None => (0, Self::zero()),
            Some(v) => (v, self.shift(-v)),
        }
    }

    /// Division with remainder in `Q[t]`; both operands must have
    /// nonnegative exponents and `divisor` must be nonzero.
    pub fn poly_divrem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        debug_assert!(self.in_o() && divisor.in_o());
        let dd = divisor.degree().unwrap();
        let lc = divisor.leading_high().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading_high().unwrap() / &lc;
            let m = Self::monomial(c, rd - dd);
            rem = &rem - &(&m * divisor);
            quot = &quot + &m;
        }
        (quot, rem)
    }

    /// Greatest common divisor in `Q[t]`, normalized to constant term one when
    /// that term is nonzero and otherwise made monic.
    pub fn poly_gcd(a: &Self, b: &Self) -> Self {
        let monic = |p: &Self| match p.leading_high() {
            Some(lc) if !lc.is_one() => p.scale(&(Rational::one() / lc.clone())),
            _ => p.clone(),
        };
        let mut x = monic(a);
        let mut y = monic(b);
        while !y.is_zero() {
            if y.degree() == Some(0) {
                return Self::one();
            }
            let (_, r) = x.poly_divrem(&y);
            x = y;
            y = monic(&r);
        }
        if x.is_zero() {
            return x;
        }
        let c = x.coeff(0);
        if !c.is_zero() {
            x.scale(&(Rational::one() / c))
        } else {
            let lc = x.leading_high().unwrap().clone();
            x.scale(&(Rational::one() / lc))
        }
    }

    /// Evaluates at a rational point; panics on negative exponents at zero.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                num_traits::pow(x.clone(), *e as usize)
            } else {
                Rational::one() / num_traits::pow(x.clone(), (-*e) as usize)
            };
            acc += c * p;
        }
        acc
    }

    /// Formal derivative with respect to `t`.
    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| **e != 0)
                .map(|(e, c)| (e - 1, c * super::rat(*e))),
        )
    }

    pub fn parse(s: &str) -> Result<Self, ParseLaurentError> {
        parse_laurent(s)
    }
}

fn parse_laurent(input: &str) -> Result<LaurentPoly, ParseLaurentError> {
    let err = |reason: &str| ParseLaurentError {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let s: String = input
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '{' | '(' => '(',
            '}' | ')' => ')',
            other => other,
        })
        .collect();
    if s.is_empty() {
        return Err(err("empty input"));
    }
    // Split into signed terms, ignoring signs that belong to an exponent.
    let bytes: Vec<char> = s.chars().collect();
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    for (i, &c) in bytes.iter().enumerate() {
        let in_exponent = i > 0 && (bytes[i - 1] == '^' || bytes[i - 1] == '(');
        if (c == '+' || c == '-') && !cur.is_empty() && !in_exponent {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(c);
    }
    terms.push(cur);

    let mut out = LaurentPoly::zero();
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1, rest.to_string()),
            None => (1, term.strip_prefix('+').unwrap_or(&term).to_string()),
        };
        if body.is_empty() {
            return Err(err("dangling sign"));
        }
        let (coef_str, var_part) = match body.find('t') {
            Some(pos) => (body[..pos].trim_end_matches('*').to_string(), Some(body[pos + 1..].to_string())),
            None => (body.clone(), None),
        };
        let coef = if coef_str.is_empty() {
            super::rat(1)
        } else {
            parse_rational(&coef_str).ok_or_else(|| err("bad coefficient"))?
        };
        let exp = match var_part {
            None => 0,
            Some(v) if v.is_empty() => 1,
            Some(v) => {
                let e = v.strip_prefix('^').ok_or_else(|| err("expected '^' after t"))?;
                let e = e.trim_start_matches('(').trim_end_matches(')');
                e.parse::<i64>().map_err(|_| err("bad exponent"))?
            }
        };
        out.add_term(exp, coef * super::rat(sign));
    }
    Ok(out)
}

impl std::str::FromStr for LaurentPoly {
    type Err = ParseLaurentError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_laurent(s)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let body = match *e {
                0 => fmt_rational(&abs),
                _ => {
                    let var = if *e == 1 { "t".to_string() } else { format!("t^{e}") };
                    if abs.is_one() {
                        var
                    } else {
                        format!("{}*{}", fmt_rational(&abs), var)
                    }
                }
            };
            write!(f, "{body}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            map.serialize_entry(&e.to_string(), &fmt_rational(c))?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = LaurentPoly;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a map from exponent strings to rational strings, or a polynomial string")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<LaurentPoly, E> {
                parse_laurent(v).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<LaurentPoly, E> {
                Ok(LaurentPoly::from_int(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<LaurentPoly, E> {
                Ok(LaurentPoly::from_int(v as i64))
            }
            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<LaurentPoly, A::Error> {
                let mut p = LaurentPoly::zero();
                while let Some((k, v)) = access.next_entry::<String, serde_json::Value>()? {
                    let e: i64 = k.trim().parse().map_err(|_| de::Error::custom("bad exponent key"))?;
                    let c = match &v {
                        serde_json::Value::String(s) => parse_rational(s),
                        serde_json::Value::Number(n) => n.as_i64().map(super::rat),
                        _ => None,
                    }
                    .ok_or_else(|| de::Error::custom("bad coefficient"))?;
                    p.add_term(e, c);
                }
                Ok(p)
            }
        }
        deserializer.deserialize_any(V)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::from_int(c)
    }
}

impl From<Rational> for LaurentPoly {
    fn from(c: Rational) -> Self {
        LaurentPoly::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, ratio};

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(lp("t^2 + 3*t^5").valuation(), Some(2));
        assert_eq!(LaurentPoly::zero().valuation(), None);
        assert_eq!(lp("t^-3 + 1").valuation(), Some(-3));
    }

    #[test]
    fn parse_variants() {
        assert_eq!(lp("t^-2+3"), LaurentPoly::from_terms([(-2, rat(1)), (0, rat(3))]));
        assert_eq!(lp("t^{-2} + 3"), lp("t^-2+3"));
        assert_eq!(lp("t^(-2) - t"), LaurentPoly::from_terms([(-2, rat(1)), (1, rat(-1))]));
        assert_eq!(lp("1/2*t^3 - 2/3"), LaurentPoly::from_terms([(3, ratio(1, 2)), (0, ratio(-2, 3))]));
        assert_eq!(lp("-t"), LaurentPoly::monomial(rat(-1), 1));
        assert_eq!(lp("0"), LaurentPoly::zero());
        assert_eq!(lp("5t^2"), LaurentPoly::monomial(rat(5), 2));
        assert!(LaurentPoly::parse("t^").is_err());
        assert!(LaurentPoly::parse("").is_err());
        assert!(LaurentPoly::parse("x+1").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["t^-2 + 3 + t", "-1/2*t^-1 - t^4", "0", "7", "-t"] {
            let p = lp(s);
            assert_eq!(lp(&p.to_string()), p, "{s}");
        }
    }

    #[test]
    fn json_round_trip() {
        let p = lp("t^-2 + 3/4 - 5*t^3");
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, r#"{"-2":"1","0":"3/4","3":"-5"}"#);
        let back: LaurentPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
        let from_str: LaurentPoly = serde_json::from_str(r#""t^-1+2""#).unwrap();
        assert_eq!(from_str, lp("t^-1 + 2"));
    }

    #[test]
    fn bracket_negative_examples() {
        assert_eq!(lp("t^-2 + 3 + t").bracket_negative(), lp("t^-2"));
        assert_eq!(lp("5").bracket_negative(), LaurentPoly::zero());
        assert_eq!(lp("2*t^-1 + t^-3").bracket_negative(), lp("2*t^-1 + t^-3"));
    }

    #[test]
    fn poly_division_and_gcd() {
        let a = lp("1 + 2*t + t^2");
        let b = lp("1 + t");
        let (q, r) = a.poly_divrem(&b);
        assert_eq!(q, b);
        assert!(r.is_zero());
        let g = LaurentPoly::poly_gcd(&lp("1 - t^2"), &lp("2 + 2*t"));
        assert_eq!(g, lp("1 + t"));
    }
}
