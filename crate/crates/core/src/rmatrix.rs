//! Explicit r-matrices for `sl(n)`, `n <= 4`, in the defining representation.
//!
//! The ordered basis of `sl(n)` is every off-diagonal matrix unit `E_ij`
//! (row-major order) followed by `h_k = E_kk - E_{k+1,k+1}`.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bdtriple::AdmissibleTriple;
use crate::exactnum::{fmt_rational, parse_rational, ratio, QMat, Rational};
use crate::rootsys::{Family, SimpleType};
use crate::twisted::{check_r0, ContinuousParameter};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RMatrixError {
    #[error("sl(n) tensors are available for 2 <= n <= 4, got n = {0}")]
    OutOfRange(usize),
    #[error("explicit r-matrices are implemented for type A only, got {0}")]
    NotTypeA(SimpleType),
    #[error("invalid r0: {0}")]
    InvalidR0(String),
    #[error("triple is not admissible")]
    NotAdmissible,
}

/// Ordered basis of `sl(n)` with its structure constants.
#[derive(Debug, Clone)]
pub struct GlBasis {
    pub n: usize,
    /// The basis elements as `n x n` matrices.
    pub elements: Vec<QMat>,
    labels: Vec<String>,
    /// `brackets[a][b]` is `[x_a, x_b]` as a sparse coordinate vector.
    brackets: Vec<Vec<Vec<(usize, Rational)>>>,
}

impl GlBasis {
    pub fn new(n: usize) -> Result<Self, RMatrixError> {
        if !(2..=4).contains(&n) {
            return Err(RMatrixError::OutOfRange(n));
        }
        let mut elements = Vec::new();
        let mut labels = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let mut m = QMat::zeros(n, n);
                    m[(i, j)] = Rational::one();
                    elements.push(m);
                    labels.push(format!("E{}{}", i + 1, j + 1));
                }
            }
        }
        for k in 0..n - 1 {
            let mut m = QMat::zeros(n, n);
            m[(k, k)] = Rational::one();
            m[(k + 1, k + 1)] = -Rational::one();
            elements.push(m);
            labels.push(format!("h{}", k + 1));
        }
        let mut basis = Self {
            n,
            elements,
            labels,
            brackets: Vec::new(),
        };
        let dim = basis.dim();
        let mut brackets = vec![vec![Vec::new(); dim]; dim];
        for (a, row) in brackets.iter_mut().enumerate() {
            for (b, slot) in row.iter_mut().enumerate() {
                let x = &basis.elements[a];
                let y = &basis.elements[b];
                let c = &(x * y) - &(y * x);
                *slot = basis.sparse_coords(&c);
            }
        }
        basis.brackets = brackets;
        Ok(basis)
    }

    pub fn dim(&self) -> usize {
        self.n * self.n - 1
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    /// Index of `E_ij` (0-based, `i != j`).
    pub fn e(&self, i: usize, j: usize) -> usize {
        assert!(i != j && i < self.n && j < self.n);
        i * (self.n - 1) + if j > i { j - 1 } else { j }
    }

    /// Index of `h_k` (0-based).
    pub fn h(&self, k: usize) -> usize {
        self.n * (self.n - 1) + k
    }

    /// Coordinates of a traceless matrix.
    pub fn coords(&self, m: &QMat) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        for (a, c) in self.sparse_coords(m) {
            v[a] = c;
        }
        v
    }

    fn sparse_coords(&self, m: &QMat) -> Vec<(usize, Rational)> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && !m[(i, j)].is_zero() {
                    out.push((self.e(i, j), m[(i, j)].clone()));
                }
            }
        }
        let mut acc = Rational::zero();
        for k in 0..n - 1 {
            acc += &m[(k, k)];
            if !acc.is_zero() {
                out.push((self.h(k), acc.clone()));
            }
        }
        out.sort_by_key(|(a, _)| *a);
        out
    }

    pub fn bracket(&self, a: usize, b: usize) -> &[(usize, Rational)] {
        &self.brackets[a][b]
    }
}

/// A tensor in `sl(n) (x) sl(n)` with dense exact coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor2 {
    pub n: usize,
    dim: usize,
    coeffs: Vec<Rational>,
}

impl Tensor2 {
    pub fn zero(n: usize) -> Self {
        let dim = n * n - 1;
        Self {
            n,
            dim,
            coeffs: vec![Rational::zero(); dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, a: usize, b: usize) -> &Rational {
        &self.coeffs[a * self.dim + b]
    }

    pub fn add_to(&mut self, a: usize, b: usize, c: &Rational) {
        self.coeffs[a * self.dim + b] += c;
    }

    /// Adds `c * x (x) y` for coordinate vectors `x`, `y`.
    pub fn add_outer(&mut self, x: &[Rational], y: &[Rational], c: &Rational) {
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if !yb.is_zero() {
                    self.add_to(a, b, &(xa * yb * c));
                }
            }
        }
    }

    /// Adds `c * (x (x) y - y (x) x)`.
    pub fn add_wedge(&mut self, x: &[Rational], y: &[Rational], c: &Rational) {
        self.add_outer(x, y, c);
        self.add_outer(y, x, &-c.clone());
    }

    /// The leg swap `r^21`.
    pub fn swap(&self) -> Self {
        let mut out = Self::zero(self.n);
        for a in 0..self.dim {
            for b in 0..self.dim {
                out.coeffs[b * self.dim + a] = self.get(a, b).clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            n: self.n,
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (i / self.dim, i % self.dim, c))
    }

    /// Sparse `(a, b, "p/q")` triples.
    pub fn to_sparse(&self) -> Vec<(usize, usize, String)> {
        self.nonzero().map(|(a, b, c)| (a, b, fmt_rational(c))).collect()
    }

    pub fn from_sparse(n: usize, entries: &[(usize, usize, String)]) -> Option<Self> {
        let mut t = Self::zero(n);
        for (a, b, c) in entries {
            if *a >= t.dim || *b >= t.dim {
                return None;
            }
            t.add_to(*a, *b, &parse_rational(c)?);
        }
        Some(t)
    }

    /// Readable form such as `E12 (x) E21 + 1/4 h1 (x) h1`.
    pub fn pretty(&self, basis: &GlBasis) -> String {
        let parts: Vec<String> = self
            .nonzero()
            .map(|(a, b, c)| {
                let coef = if c.is_one() { String::new() } else { format!("{} ", fmt_rational(c)) };
                format!("{coef}{} (x) {}", basis.label(a), basis.label(b))
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl std::ops::Add for &Tensor2 {
    type Output = Tensor2;
    fn add(self, rhs: &Tensor2) -> Tensor2 {
        assert_eq!(self.n, rhs.n);
        Tensor2 {
            n: self.n,
            dim: self.dim,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl std::ops::Sub for &Tensor2 {
    type Output = Tensor2;
    fn sub(self, rhs: &Tensor2) -> Tensor2 {
        assert_eq!(self.n, rhs.n);
        Tensor2 {
            n: self.n,
            dim: self.dim,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for Tensor2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tensor2").field("n", &self.n).field("entries", &self.to_sparse()).finish()
    }
}

#[derive(Serialize, Deserialize)]
struct Tensor2Json {
    n: usize,
    entries: Vec<(usize, usize, String)>,
}

impl Serialize for Tensor2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Tensor2Json {
            n: self.n,
            entries: self.to_sparse(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tensor2 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = Tensor2Json::deserialize(d)?;
        if !(2..=4).contains(&j.n) {
            return Err(serde::de::Error::custom("n out of range"));
        }
        Tensor2::from_sparse(j.n, &j.entries).ok_or_else(|| serde::de::Error::custom("bad tensor entry"))
    }
}

/// A tensor in `sl(n)^{(x) 3}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor3 {
    dim: usize,
    coeffs: Vec<Rational>,
}

impl Tensor3 {
    fn zero(dim: usize) -> Self {
        Self {
            dim,
            coeffs: vec![Rational::zero(); dim * dim * dim],
        }
    }

    fn add_to(&mut self, a: usize, b: usize, c: usize, x: &Rational) {
        self.coeffs[(a * self.dim + b) * self.dim + c] += x;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

/// The quadratic Casimir for the trace form: `sum_{i != j} E_ij (x) E_ji`
/// plus its Cartan part.
pub fn casimir(n: usize) -> Result<Tensor2, RMatrixError> {
    let basis = GlBasis::new(n)?;
    let mut t = cartan_casimir_in(&basis);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                t.add_to(basis.e(i, j), basis.e(j, i), &Rational::one());
            }
        }
    }
    Ok(t)
}

/// The `h (x) h` component of the Casimir: `sum (A^-1)_kl h_k (x) h_l`.
pub fn cartan_casimir(n: usize) -> Result<Tensor2, RMatrixError> {
    Ok(cartan_casimir_in(&GlBasis::new(n)?))
}

fn cartan_casimir_in(basis: &GlBasis) -> Tensor2 {
    let n = basis.n;
    let rs = crate::rootsys::build_root_system(SimpleType::a(n - 1));
    let inv = rs.omega0();
    let mut t = Tensor2::zero(n);
    for k in 0..n - 1 {
        for l in 0..n - 1 {
            t.add_to(basis.h(k), basis.h(l), &inv[(k, l)]);
        }
    }
    t
}

/// The Drinfeld-Jimbo r-matrix `sum_{i<j} E_ij (x) E_ji + Omega_0 / 2`.
pub fn r_dj(n: usize) -> Result<Tensor2, RMatrixError> {
    let basis = GlBasis::new(n)?;
    let mut t = cartan_casimir_in(&basis).scale(&ratio(1, 2));
    for i in 0..n {
        for j in i + 1..n {
            t.add_to(basis.e(i, j), basis.e(j, i), &Rational::one());
        }
    }
    Ok(t)
}

/// A positive root `eps_i - eps_j`, `i < j`, as the run of simple roots
/// `i, i+1, ..., j-1`.
fn segment(i: usize, j: usize) -> Vec<usize> {
    (i..j).collect()
}

fn bracket_matrices(x: &QMat, y: &QMat) -> QMat {
    &(x * y) - &(y * x)
}

/// `E_ij` for `i < j` written as `[e_i, [e_{i+1}, ... e_{j-1}]]` after
/// replacing each simple root by its image.
fn raising_from_simple(n: usize, simple: &[usize]) -> QMat {
    let unit = |a: usize, b: usize| {
        let mut m = QMat::zeros(n, n);
        m[(a, b)] = Rational::one();
        m
    };
    let mut acc = unit(simple[simple.len() - 1], simple[simple.len() - 1] + 1);
    for &s in simple[..simple.len() - 1].iter().rev() {
        acc = bracket_matrices(&unit(s, s + 1), &acc);
    }
    acc
}

/// `E_ji` for `i < j` written as `[f_{j-1}, [f_{j-2}, ... f_i]]` after
/// replacing each simple root by its image.
fn lowering_from_simple(n: usize, simple: &[usize]) -> QMat {
    let unit = |a: usize, b: usize| {
        let mut m = QMat::zeros(n, n);
        m[(a, b)] = Rational::one();
        m
    };
    let mut acc = unit(simple[0] + 1, simple[0]);
    for &s in &simple[1..] {
        acc = bracket_matrices(&unit(s + 1, s), &acc);
    }
    acc
}

/// One term `e_alpha ^ theta^k(e_{-alpha})` of the Belavin-Drinfeld sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WedgeTerm {
    /// Positive root `(i, j)` meaning `eps_i - eps_j`, 0-based.
    pub root: (usize, usize),
    /// The positive root `tau^k(root)`.
    pub image: (usize, usize),
    pub power: usize,
}

/// All pairs `(alpha, tau^k alpha)` with `alpha` in the positive span of
/// `Gamma1` and `k >= 1`.
pub fn wedge_terms(t: &AdmissibleTriple) -> Vec<WedgeTerm> {
    let n = t.ty.rank + 1;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut simple = segment(i, j);
            let mut k = 0;
            while simple.iter().all(|s| t.tau.contains_key(s)) {
                simple = simple.iter().map(|s| t.tau[s]).collect();
                k += 1;
                let lo = *simple.iter().min().unwrap();
                let hi = *simple.iter().max().unwrap() + 1;
                out.push(WedgeTerm {
                    root: (i, j),
                    image: (lo, hi),
                    power: k,
                });
            }
        }
    }
    out
}

fn tau_power_images(t: &AdmissibleTriple, simple: &[usize], k: usize) -> Vec<usize> {
    let mut cur = simple.to_vec();
    for _ in 0..k {
        cur = cur.iter().map(|s| t.tau[s]).collect();
    }
    cur
}

/// The Belavin-Drinfeld tensor
/// `r0 + sum_{alpha>0} e_alpha (x) e_{-alpha} + sum e_alpha ^ e_{-tau^k(alpha)}`,
/// with `tau` extended to root vectors as the Lie algebra map determined by
/// the simple root vectors.
pub fn build_rbd(t: &AdmissibleTriple, r0: &ContinuousParameter) -> Result<Tensor2, RMatrixError> {
    if t.ty.family != Family::A {
        return Err(RMatrixError::NotTypeA(t.ty));
    }
    if !t.check().unwrap_or(false) {
        return Err(RMatrixError::NotAdmissible);
    }
    let n = t.ty.rank + 1;
    let basis = GlBasis::new(n)?;
    check_r0(t, &r0.matrix).map_err(RMatrixError::InvalidR0)?;
    let mut r = Tensor2::zero(n);
    for k in 0..n - 1 {
        for l in 0..n - 1 {
            r.add_to(basis.h(k), basis.h(l), &r0.matrix[(k, l)]);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            r.add_to(basis.e(i, j), basis.e(j, i), &Rational::one());
        }
    }
    for w in wedge_terms(t) {
        let simple = segment(w.root.0, w.root.1);
        let pos = raising_from_simple(n, &simple);
        let neg_image = lowering_from_simple(n, &tau_power_images(t, &simple, w.power));
        r.add_wedge(&basis.coords(&pos), &basis.coords(&neg_image), &Rational::one());
    }
    Ok(r)
}

/// `[r12, r13] + [r12, r23] + [r13, r23]`.
pub fn cyb(r: &Tensor2) -> Tensor3 {
    let basis = GlBasis::new(r.n).expect("tensor rank in range");
    let dim = basis.dim();
    let mut out = Tensor3::zero(dim);
    let entries: Vec<(usize, usize, Rational)> = r.nonzero().map(|(a, b, c)| (a, b, c.clone())).collect();
    for (a, b, rab) in &entries {
        for (c, d, rcd) in &entries {
            let w = rab * rcd;
            // [r12, r13]: [x_a, x_c] (x) x_b (x) x_d
            for (e, s) in basis.bracket(*a, *c) {
                out.add_to(*e, *b, *d, &(&w * s));
            }
            // [r12, r23]: x_a (x) [x_b, x_c] (x) x_d
            for (e, s) in basis.bracket(*b, *c) {
                out.add_to(*a, *e, *d, &(&w * s));
            }
            // [r13, r23]: x_a (x) x_c (x) [x_b, x_d]
            for (e, s) in basis.bracket(*b, *d) {
                out.add_to(*a, *c, *e, &(&w * s));
            }
        }
    }
    out
}

/// True when `r` solves the classical Yang-Baxter equation and
/// `r + r^21` is the Casimir.
pub fn verify_rmatrix(r: &Tensor2) -> bool {
    let Ok(omega) = casimir(r.n) else {
        return false;
    };
    &(r + &r.swap()) == &omega && cyb(r).is_zero()
}

/// `[Omega, x (x) 1 + 1 (x) x]` for the basis element `x_a`.
pub fn casimir_commutator(n: usize, a: usize) -> Result<Tensor2, RMatrixError> {
    let basis = GlBasis::new(n)?;
    let omega = casimir(n)?;
    let mut out = Tensor2::zero(n);
    for (p, q, c) in omega.nonzero() {
        for (e, s) in basis.bracket(p, a) {
            out.add_to(*e, q, &(c * s));
        }
        for (e, s) in basis.bracket(q, a) {
            out.add_to(p, *e, &(c * s));
        }
    }
    Ok(out)
}
