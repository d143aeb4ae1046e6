//! Representatives of `GL(n, O) \ GL(n, K) / Diag(n, K)` for `n = 2, 3`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::OrderError;
use crate::exactnum::{hermite_over_o, AffineSolution, LaurentPoly, LinearSystem, MatK, RatFunc, Rational};

/// The coset of `T_i = [[1, t^-i], [0, 1]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CosetForm2 {
    pub i: u32,
}

/// The coset of `T_ij(q) = [[1, t^-i, q], [0, 1, t^-j], [0, 0, 1]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CosetForm3 {
    pub i: u32,
    pub j: u32,
    pub q: LaurentPoly,
}

impl CosetForm2 {
    pub fn matrix(&self) -> MatK {
        MatK::from_rows(vec![
            vec![RatFunc::one(), RatFunc::t_pow(-(self.i as i64))],
            vec![RatFunc::zero(), RatFunc::one()],
        ])
    }
}

impl CosetForm3 {
    pub fn new(i: u32, j: u32, q: LaurentPoly) -> Result<Self, OrderError> {
        if q.degree().is_some_and(|d| d >= 0) {
            return Err(OrderError::Shape("q must only involve negative powers of t".into()));
        }
        Ok(Self { i, j, q })
    }

    pub fn matrix(&self) -> MatK {
        let (z, o) = (RatFunc::zero, RatFunc::one);
        MatK::from_rows(vec![
            vec![o(), RatFunc::t_pow(-(self.i as i64)), RatFunc::from_laurent(self.q.clone())],
            vec![z(), o(), RatFunc::t_pow(-(self.j as i64))],
            vec![z(), z(), o()],
        ])
    }

    /// Degree of `q` as a polynomial in `t^-1`.
    pub fn q_degree(&self) -> u32 {
        self.q.valuation().map_or(0, |v| (-v) as u32)
    }
}

/// The strictly negative part `[f]`.
pub fn bracket_negative(f: &LaurentPoly) -> LaurentPoly {
    f.bracket_negative()
}

/// Upper unitriangular `U` with `M ∈ GL(n,O) U Diag(n,K)` whose entries above
/// the diagonal only involve negative powers of `t`.
fn unitriangular(m: &MatK) -> Result<MatK, OrderError> {
    if !m.is_square() {
        return Err(OrderError::Shape("square matrix expected".into()));
    }
    if m.det().is_zero() {
        return Err(OrderError::Singular);
    }
    // Column Hermite form of the transpose: its transpose is g * M with g
    // over O, upper triangular with diagonal t^{e_k}.
    let mut u = hermite_over_o(&m.transpose())?.transpose();
    let n = u.rows();
    for c in 0..n {
        let d = u[(c, c)].inv();
        u.scale_col(c, &d);
    }
    Ok(u)
}

fn negative_laurent(x: &RatFunc) -> LaurentPoly {
    x.bracket_negative()
}

/// Splits a nonzero `x` with only negative exponents as `t^-i * w`, `w` a
/// polynomial unit.
fn split_negative(x: &LaurentPoly) -> (u32, LaurentPoly) {
    let v = x.valuation().expect("nonzero");
    ((-v) as u32, x.shift(-v))
}

/// The unique `i` with `M ∈ GL(2,O) T_i Diag(2,K)`.
pub fn reduce_gl2(m: &MatK) -> Result<CosetForm2, OrderError> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(OrderError::Shape("2x2 matrix expected".into()));
    }
    let u = unitriangular(m)?;
    let a = negative_laurent(&u[(0, 1)]);
    let i = if a.is_zero() { 0 } else { split_negative(&a).0 };
    Ok(CosetForm2 { i })
}

/// A representative `T_ij(q)` of the coset of `M`, with `q` the canonical
/// member of its `N_ij`-orbit (see [`canonical_q`]).
pub fn reduce_gl3(m: &MatK) -> Result<CosetForm3, OrderError> {
    if m.rows() != 3 || m.cols() != 3 {
        return Err(OrderError::Shape("3x3 matrix expected".into()));
    }
    let u = unitriangular(m)?;
    let mut a = negative_laurent(&u[(0, 1)]);
    let mut b = RatFunc::from_laurent(negative_laurent(&u[(0, 2)]));
    let mut c = negative_laurent(&u[(1, 2)]);
    // Zero entries become 1 by adding row 3 to row 2, then row 2 to row 1.
    if c.is_zero() {
        c = LaurentPoly::one();
    }
    if a.is_zero() {
        a = LaurentPoly::one();
        b = &b + &RatFunc::from_laurent(c.clone());
    }
    let (i, w1) = if a.is_one() { (0, LaurentPoly::one()) } else { split_negative(&a) };
    let (j, w2) = if c.is_one() { (0, LaurentPoly::one()) } else { split_negative(&c) };
    let scale = RatFunc::from_laurent(&w1 * &w2).inv();
    let q = (&b * &scale).bracket_negative();
    Ok(CosetForm3 {
        i,
        j,
        q: canonical_q(i, j, &q),
    })
}

/// The affine system in the coefficients of `(y1, y2) ∈ N_ij` describing
/// `[y1 q + (y2 - y1) t^{-i-j}]`.
struct OrbitSystem {
    base: LinearSystem,
    /// `forms[s - 1]` is the coefficient of `t^-s` as a linear form.
    forms: Vec<Vec<Rational>>,
    width: usize,
}

impl OrbitSystem {
    fn new(i: u32, j: u32, q: &LaurentPoly) -> Self {
        let (i, j) = (i as usize, j as usize);
        let dq = q.valuation().map_or(0, |v| (-v) as usize);
        let width = (i + j).max(dq).max(1);
        // Unknowns: y1_0..y1_{w-1}, then y2_0..y2_{w-1}.
        let y1 = |k: usize| k;
        let y2 = |k: usize| width + k;
        let mut base = LinearSystem::new(2 * width);
        for k in 0..j.min(width) {
            base.fix(y2(k), if k == 0 { Rational::one() } else { Rational::zero() });
        }
        for k in 0..i.min(width) {
            base.push_sparse(&[(y1(k), Rational::one()), (y2(k), -Rational::one())], Rational::zero());
        }
        let top = width;
        let mut forms = Vec::with_capacity(top);
        for s in 1..=top {
            let mut f = vec![Rational::zero(); 2 * width];
            for (k, slot) in f.iter_mut().enumerate().take(width) {
                *slot = q.coeff(-((s + k) as i64));
            }
            if s <= i + j {
                let k = i + j - s;
                f[y2(k)] += Rational::one();
                f[y1(k)] -= Rational::one();
            }
            forms.push(f);
        }
        Self { base, forms, width }
    }

    fn units_possible(&self, sol: &AffineSolution) -> bool {
        !sol.coordinate_vanishes(0) && !sol.coordinate_vanishes(self.width)
    }

    fn feasible(&self, sys: &LinearSystem) -> bool {
        sys.solve().is_some_and(|sol| self.units_possible(&sol))
    }

    fn with_targets(&self, targets: &[(usize, Rational)]) -> LinearSystem {
        let mut sys = self.base.clone();
        for (s, value) in targets {
            sys.push(self.forms[s - 1].clone(), value.clone());
        }
        sys
    }
}

/// Whether `T_{i1 j1}(q1)` and `T_{i2 j2}(q2)` lie in the same double coset.
pub fn same_coset_gl3(f1: &CosetForm3, f2: &CosetForm3) -> bool {
    if (f1.i, f1.j) != (f2.i, f2.j) {
        return false;
    }
    let sys = OrbitSystem::new(f1.i, f1.j, &f1.q);
    let top = sys.forms.len();
    if f2.q_degree() as usize > top {
        return false;
    }
    let targets: Vec<(usize, Rational)> = (1..=top).map(|s| (s, f2.q.coeff(-(s as i64)))).collect();
    sys.feasible(&sys.with_targets(&targets))
}

/// Orbit representative of `q` under `N_ij`: the highest coefficients are
/// fixed first, each to the earliest feasible value in `0, 1, -1, 2, -2, ...`
/// or to its forced value. This gives minimal degree, then the
/// lexicographically smallest tail under that ordering.
pub fn canonical_q(i: u32, j: u32, q: &LaurentPoly) -> LaurentPoly {
    let sys = OrbitSystem::new(i, j, q);
    let top = sys.forms.len();
    let mut targets: Vec<(usize, Rational)> = Vec::new();
    for s in (1..=top).rev() {
        let current = sys.with_targets(&targets);
        let sol = current.solve().expect("the identity element is a solution");
        let form = &sys.forms[s - 1];
        let dot = |v: &[Rational]| v.iter().zip(form).fold(Rational::zero(), |acc, (a, b)| acc + a * b);
        let value = if sol.directions.iter().all(|d| dot(d).is_zero()) {
            dot(&sol.particular)
        } else {
            candidates()
                .find(|c| {
                    let mut next = targets.clone();
                    next.push((s, c.clone()));
                    sys.feasible(&sys.with_targets(&next))
                })
                .expect("a nonconstant coefficient avoids at most two values")
        };
        targets.push((s, value));
    }
    LaurentPoly::from_terms(targets.into_iter().map(|(s, c)| (-(s as i64), c)))
}

fn candidates() -> impl Iterator<Item = Rational> {
    (0i64..).flat_map(|n| if n == 0 { vec![0] } else { vec![n, -n] }).map(crate::exactnum::rat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn mat(rows: &[&[&str]]) -> MatK {
        MatK::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| RatFunc::from_laurent(lp(s))).collect())
                .collect(),
        )
    }

    #[test]
    fn gl2_examples() {
        assert_eq!(reduce_gl2(&CosetForm2 { i: 3 }.matrix()).unwrap().i, 3);
        assert_eq!(reduce_gl2(&MatK::identity(2)).unwrap().i, 0);
        assert_eq!(reduce_gl2(&mat(&[&["t^-1", "1"], &["1", "0"]])).unwrap().i, 1);
        assert!(matches!(
            reduce_gl2(&mat(&[&["1", "t"], &["1", "t"]])),
            Err(OrderError::Singular)
        ));
    }

    #[test]
    fn gl2_with_units_in_the_entries() {
        // [[1, (1+t) t^-2], [0, 1]] is T_2 after scaling by a unit.
        let m = mat(&[&["1", "t^-2+t^-1"], &["0", "1"]]);
        assert_eq!(reduce_gl2(&m).unwrap().i, 2);
    }

    #[test]
    fn gl3_examples() {
        let f = CosetForm3::new(2, 1, LaurentPoly::zero()).unwrap();
        assert_eq!(reduce_gl3(&f.matrix()).unwrap(), f);
        assert_eq!(reduce_gl3(&MatK::identity(3)).unwrap(), CosetForm3::new(0, 0, LaurentPoly::zero()).unwrap());
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket_negative(&lp("t^-2+3+t")), lp("t^-2"));
        assert!(bracket_negative(&lp("5")).is_zero());
        assert_eq!(bracket_negative(&lp("2t^-1+t^-3")), lp("2t^-1+t^-3"));
    }

    #[test]
    fn orbit_of_zero_small_cases() {
        let same = |i, j, q: &str| {
            same_coset_gl3(
                &CosetForm3::new(i, j, lp(q)).unwrap(),
                &CosetForm3::new(i, j, LaurentPoly::zero()).unwrap(),
            )
        };
        assert!(same(1, 1, "5t^-1"));
        assert!(same(1, 2, "t^-2-t^-1"));
        assert!(!same(1, 2, "t^-3"));
        assert!(same(2, 2, "t^-2"));
        // For i = 0 the constant terms of y1 and y2 may differ, and
        // [y1*0 + (y2 - y1) t^-1] = (1 - y1(0)) t^-1 never equals t^-1.
        assert!(same(0, 1, "2t^-1"));
        assert!(!same(0, 1, "t^-1"));
        assert!(!same_coset_gl3(
            &CosetForm3::new(1, 1, LaurentPoly::zero()).unwrap(),
            &CosetForm3::new(1, 2, LaurentPoly::zero()).unwrap()
        ));
    }

    #[test]
    fn canonical_q_is_an_orbit_invariant() {
        assert!(canonical_q(1, 1, &lp("3t^-1")).is_zero());
        assert!(canonical_q(2, 2, &lp("t^-2-7t^-1")).is_zero());
        // For (0,1) the orbit of t^-1 is {t^-1} alone.
        assert_eq!(canonical_q(0, 1, &lp("t^-1")), lp("t^-1"));
        assert!(canonical_q(0, 1, &lp("4t^-1")).is_zero());
        let q = lp("t^-4+2t^-2");
        let c = canonical_q(1, 1, &q);
        let f = |q: LaurentPoly| CosetForm3::new(1, 1, q).unwrap();
        assert!(same_coset_gl3(&f(q.clone()), &f(c.clone())));
        assert_eq!(canonical_q(1, 1, &c), c);
        assert_eq!(c.coeff(-4), rat(1));
    }

    #[test]
    fn row_lattice_separates_the_zero_one_exception() {
        use crate::orders::algebra::Algebra;
        use crate::orders::lattice::{multiplier_order, Lattice};
        let row_order = |q: &str| {
            let m = CosetForm3::new(0, 1, lp(q)).unwrap().matrix().transpose();
            multiplier_order(&Lattice::from_columns(Algebra::Kn(3), &m).unwrap()).unwrap()
        };
        assert_ne!(row_order("t^-1"), row_order("0"));
        assert_eq!(row_order("2t^-1"), row_order("0"));
    }
}
