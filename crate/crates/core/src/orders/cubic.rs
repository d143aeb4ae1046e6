//! Cubic rings over `O` from binary cubic index forms.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::algebra::Structure;
use super::OrderError;
use crate::exactnum::{LaurentPoly, MatK, RatFunc, Rational};

/// `f(x, y) = a x^3 + b x^2 y + c x y^2 + d y^3` with coefficients in `O`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexForm {
    pub a: RatFunc,
    pub b: RatFunc,
    pub c: RatFunc,
    pub d: RatFunc,
}

impl IndexForm {
    pub fn new(a: RatFunc, b: RatFunc, c: RatFunc, d: RatFunc) -> Result<Self, OrderError> {
        let f = Self { a, b, c, d };
        if !f.coeffs().iter().all(|x| x.in_o()) {
            return Err(OrderError::Shape("index form coefficients must lie in O".into()));
        }
        Ok(f)
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(a.into(), b.into(), c.into(), d.into()).expect("integers lie in O")
    }

    pub fn coeffs(&self) -> [&RatFunc; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// True when every coefficient lies in `tO`.
    pub fn divisible_by_t(&self) -> bool {
        self.coeffs().iter().all(|x| x.is_zero() || x.valuation().unwrap() >= 1)
    }
}

impl FromStr for IndexForm {
    type Err = OrderError;

    /// Parses `"a,b,c,d"`, each entry a Laurent polynomial string.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(OrderError::Shape(format!("expected four comma-separated coefficients, got {s:?}")));
        }
        let mut v = Vec::with_capacity(4);
        for p in parts {
            let x: RatFunc = p.parse().map_err(|e| OrderError::Shape(format!("{e}")))?;
            v.push(x);
        }
        let mut it = v.into_iter();
        let mut next = || it.next().unwrap();
        Self::new(next(), next(), next(), next())
    }
}

impl fmt::Display for IndexForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.a, self.b, self.c, self.d)
    }
}

/// The ring `O + O w + O th` with
/// `w th = -ad`, `w^2 = -ac + b w - a th`, `th^2 = -bd + d w - c th`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CubicRing {
    pub form: IndexForm,
    /// Products in coordinates `(1, w, th)`.
    pub omega_theta: [RatFunc; 3],
    pub omega_sq: [RatFunc; 3],
    pub theta_sq: [RatFunc; 3],
}

pub fn cubic_from_index_form(form: &IndexForm) -> CubicRing {
    let IndexForm { a, b, c, d } = form;
    let z = RatFunc::zero();
    CubicRing {
        form: form.clone(),
        omega_theta: [-(a * d), z.clone(), z.clone()],
        omega_sq: [-(a * c), b.clone(), -a.clone()],
        theta_sq: [-(b * d), d.clone(), -c.clone()],
    }
}

impl CubicRing {
    pub fn structure(&self) -> Structure {
        let (z, o) = (RatFunc::zero, RatFunc::one);
        let col = |v: &[RatFunc; 3]| v.to_vec();
        let from_cols = |cols: [Vec<RatFunc>; 3]| MatK::from_fn(3, 3, |r, c| cols[c][r].clone());
        let by_omega = from_cols([vec![z(), o(), z()], col(&self.omega_sq), col(&self.omega_theta)]);
        let by_theta = from_cols([vec![z(), z(), o()], col(&self.omega_theta), col(&self.theta_sq)]);
        Structure::new(vec![MatK::identity(3), by_omega, by_theta])
    }

    pub fn mul(&self, x: &[RatFunc], y: &[RatFunc]) -> Vec<RatFunc> {
        self.structure().mul(x, y)
    }

    /// `(xy)z == x(yz)` on all basis triples.
    pub fn is_associative(&self) -> bool {
        let s = self.structure();
        let basis: Vec<Vec<RatFunc>> = (0..3).map(|k| MatK::identity(3).column(k)).collect();
        basis.iter().all(|x| {
            basis.iter().all(|y| {
                basis
                    .iter()
                    .all(|z| s.mul(&s.mul(x, y), z) == s.mul(x, &s.mul(y, z)))
            })
        })
    }

    /// Evaluates a polynomial (coefficients from the constant term up) at `x`.
    pub fn eval_poly(&self, p: &[RatFunc], x: &[RatFunc]) -> Vec<RatFunc> {
        let s = self.structure();
        let mut acc = vec![RatFunc::zero(); 3];
        for c in p.iter().rev() {
            acc = s.mul(&acc, x);
            acc[0] = &acc[0] + c;
        }
        acc
    }
}

/// `(P_w, P_th)` with coefficients from the constant term up:
/// `P_w = X^3 - b X^2 + ac X - a^2 d`, `P_th = X^3 + c X^2 + bd X + a d^2`.
pub fn char_polys(form: &IndexForm) -> (Vec<RatFunc>, Vec<RatFunc>) {
    let IndexForm { a, b, c, d } = form;
    let p_omega = vec![-(&(a * a) * d), a * c, -b.clone(), RatFunc::one()];
    let p_theta = vec![&(a * d) * d, b * d, c.clone(), RatFunc::one()];
    (p_omega, p_theta)
}

/// Checks `X^3 P_th(-ad/X) = a d^2 P_w(X)` coefficientwise.
pub fn reciprocity_holds(form: &IndexForm) -> bool {
    let (pw, pt) = char_polys(form);
    let n = -(&form.a * &form.d);
    // X^3 P_th(n/X) = sum_k pt[k] n^k X^{3-k}.
    let mut lhs = vec![RatFunc::zero(); 4];
    for (k, c) in pt.iter().enumerate() {
        lhs[3 - k] = c * &n.pow(k as u32);
    }
    let scale = &(&form.a * &form.d) * &form.d;
    let rhs: Vec<RatFunc> = pw.iter().map(|c| c * &scale).collect();
    lhs == rhs
}

/// `18abcd + b^2c^2 - 4ac^3 - 4db^3 - 27a^2d^2`.
pub fn discriminant(form: &IndexForm) -> RatFunc {
    // Work over a common denominator so the sum needs one reduction.
    let (n, den) = RatFunc::common_denominator(&form.coeffs());
    let (a, b, c, d) = (&n[0], &n[1], &n[2], &n[3]);
    let k = |x: i64| LaurentPoly::from_int(x);
    let abcd = &(a * b) * &(c * d);
    let b2c2 = &(b * b) * &(c * c);
    let ac3 = &(a * c) * &(c * c);
    let db3 = &(d * b) * &(b * b);
    let a2d2 = &(a * a) * &(d * d);
    let mut out = &k(18) * &abcd;
    out = &out + &b2c2;
    out = &out - &(&k(4) * &ac3);
    out = &out - &(&k(4) * &db3);
    out = &out - &(&k(27) * &a2d2);
    let den2 = &den * &den;
    RatFunc::new(out, &den2 * &den2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CubicAlgebraType {
    Field,
    LPlusK,
    KCubed,
    Inseparable,
}

impl fmt::Display for CubicAlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CubicAlgebraType::Field => "Field",
            CubicAlgebraType::LPlusK => "LPlusK",
            CubicAlgebraType::KCubed => "KCubed",
            CubicAlgebraType::Inseparable => "Inseparable",
        };
        f.write_str(s)
    }
}

/// Which of `K^3`, `L (+) K` or a cubic field `K ⊗ Λ_abcd` is.
pub fn classify_cubic_algebra(form: &IndexForm) -> CubicAlgebraType {
    if discriminant(form).is_zero() {
        return CubicAlgebraType::Inseparable;
    }
    let (pw, pt) = char_polys(form);
    let p = if !form.a.is_zero() {
        pw
    } else if !form.d.is_zero() {
        pt
    } else {
        return CubicAlgebraType::KCubed;
    };
    match count_roots_in_k(&p) {
        3 => CubicAlgebraType::KCubed,
        1 => CubicAlgebraType::LPlusK,
        0 => CubicAlgebraType::Field,
        n => unreachable!("a separable cubic has 0, 1 or 3 roots in K, found {n}"),
    }
}

/// Number of roots in `K = C((t))` of a separable polynomial with
/// coefficients (constant term first) in the rational-function subfield.
pub fn count_roots_in_k(p: &[RatFunc]) -> usize {
    count_roots(p, None)
}

/// Roots whose valuation exceeds `above`.
fn count_roots(p: &[RatFunc], above: Option<i64>) -> usize {
    let mut p: Vec<RatFunc> = p.to_vec();
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    let mut count = 0;
    while p.len() > 1 && p[0].is_zero() {
        count += 1;
        p.remove(0);
    }
    if p.len() <= 1 {
        return count;
    }
    let points: Vec<(i64, i64)> = p
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.valuation().map(|v| (i as i64, v)))
        .collect();
    for ((i1, v1), (i2, v2)) in lower_hull(&points) {
        let (num, den) = (v1 - v2, i2 - i1);
        if num % den != 0 {
            continue;
        }
        let lambda = num / den;
        if above.is_some_and(|b| lambda <= b) {
            continue;
        }
        let m = v1 + lambda * i1;
        let residual = LaurentPoly::from_terms((i1..=i2).map(|i| (i - i1, p[i as usize].coeff(m - lambda * i))));
        count += residual_roots(&p, lambda, &residual);
    }
    count
}

/// Roots lifting from the residual polynomial of one integral slope.
fn residual_roots(p: &[RatFunc], lambda: i64, residual: &LaurentPoly) -> usize {
    let deg = residual.degree().unwrap() as usize;
    let g = LaurentPoly::poly_gcd(residual, &residual.derivative());
    let gdeg = g.degree().unwrap_or(0) as usize;
    if gdeg == 0 {
        return deg;
    }
    // In degree at most three the repeated root is unique and rational.
    let sq = LaurentPoly::poly_gcd(&g, &g.derivative());
    let (lin, _) = g.poly_divrem(&sq);
    assert_eq!(lin.degree(), Some(1), "one repeated residual root");
    let r = -(lin.coeff(0) / lin.coeff(1));
    let mult = gdeg + 1;
    let shifted = substitute(p, lambda, &r);
    deg - mult + count_roots(&shifted, Some(0))
}

/// Coefficients of `p(t^lambda (r + Y))` in `Y`.
fn substitute(p: &[RatFunc], lambda: i64, r: &Rational) -> Vec<RatFunc> {
    let n = p.len();
    let mut out = vec![RatFunc::zero(); n];
    let rr = RatFunc::from_rational(r.clone());
    for (i, c) in p.iter().enumerate() {
        let scale = c * &RatFunc::t_pow(lambda * i as i64);
        // (r + Y)^i = sum binom(i, k) r^{i-k} Y^k
        let mut binom = 1i64;
        for k in 0..=i {
            let term = &(&scale * &RatFunc::from_int(binom)) * &rr.pow((i - k) as u32);
            out[k] = &out[k] + &term;
            binom = binom * (i - k) as i64 / (k + 1) as i64;
        }
    }
    out
}

/// Segments of the lower convex hull, left to right.
fn lower_hull(points: &[(i64, i64)]) -> Vec<((i64, i64), (i64, i64))> {
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in points {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 - o.0) * (pt.1 - o.1) - (a.1 - o.1) * (pt.0 - o.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull.windows(2).map(|w| (w[0], w[1])).collect()
}

/// `g . f(u, v) = f((u, v) g) / det g` for `g ∈ GL(2, O)`.
pub fn gl2_action_on_forms(g: &MatK, form: &IndexForm) -> Result<IndexForm, OrderError> {
    if g.rows() != 2 || g.cols() != 2 {
        return Err(OrderError::Shape("2x2 matrix expected".into()));
    }
    let det = g.det();
    if !g.to_rows().iter().flatten().all(RatFunc::in_o) || det.valuation() != Some(0) {
        return Err(OrderError::NotUnimodular);
    }
    // x = g00 u + g10 v, y = g01 u + g11 v as binary linear forms.
    let x = [g[(0, 0)].clone(), g[(1, 0)].clone()];
    let y = [g[(0, 1)].clone(), g[(1, 1)].clone()];
    let mul = |p: &[RatFunc], q: &[RatFunc]| {
        let mut out = vec![RatFunc::zero(); p.len() + q.len() - 1];
        for (i, a) in p.iter().enumerate() {
            for (j, b) in q.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        out
    };
    let monomials = [
        mul(&mul(&x, &x), &x),
        mul(&mul(&x, &x), &y),
        mul(&mul(&x, &y), &y),
        mul(&mul(&y, &y), &y),
    ];
    let mut out = vec![RatFunc::zero(); 4];
    for (coef, mono) in form.coeffs().iter().zip(&monomials) {
        for (k, m) in mono.iter().enumerate() {
            out[k] = &out[k] + &(*coef * m);
        }
    }
    let inv = det.inv();
    let mut it = out.into_iter().map(|c| &c * &inv);
    let mut next = || it.next().unwrap();
    IndexForm::new(next(), next(), next(), next())
}

/// Number of lattice classes belonging to `Λ_abcd`: two when every
/// coefficient lies in `tO`, one otherwise.
pub fn lattice_class_count(form: &IndexForm) -> Result<u8, OrderError> {
    if discriminant(form).is_zero() {
        return Err(OrderError::Inseparable);
    }
    Ok(if form.divisible_by_t() { 2 } else { 1 })
}
