use num_traits::Zero;

use super::{QMat, Rational};

/// Accumulates affine equations `sum c_i x_i = rhs` over `Q` in a fixed
/// number of unknowns.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    vars: usize,
    rows: Vec<(Vec<Rational>, Rational)>,
}

/// Solution set `particular + span(directions)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSolution {
    pub particular: Vec<Rational>,
    pub directions: Vec<Vec<Rational>>,
}

impl AffineSolution {
    pub fn dimension(&self) -> usize {
        self.directions.len()
    }

    /// True when coordinate `i` is zero on the whole solution set.
    pub fn coordinate_vanishes(&self, i: usize) -> bool {
        self.particular[i].is_zero() && self.directions.iter().all(|d| d[i].is_zero())
    }

    /// True when coordinate `i` takes the same value everywhere.
    pub fn coordinate_fixed(&self, i: usize) -> Option<&Rational> {
        self.directions.iter().all(|d| d[i].is_zero()).then_some(&self.particular[i])
    }
}

impl LinearSystem {
    pub fn new(vars: usize) -> Self {
        Self { vars, rows: Vec::new() }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Adds `sum coeffs[i] * x_i = rhs`.
    pub fn push(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        assert_eq!(coeffs.len(), self.vars, "equation width");
        if coeffs.iter().all(|c| c.is_zero()) && rhs.is_zero() {
            return;
        }
        self.rows.push((coeffs, rhs));
    }

    /// Adds a sparse equation given as `(index, coefficient)` pairs.
    pub fn push_sparse(&mut self, terms: &[(usize, Rational)], rhs: Rational) {
        let mut coeffs = vec![Rational::zero(); self.vars];
        for (i, c) in terms {
            coeffs[*i] += c;
        }
        self.push(coeffs, rhs);
    }

    /// Fixes `x_i = value`.
    pub fn fix(&mut self, i: usize, value: Rational) {
        self.push_sparse(&[(i, super::rat(1))], value);
    }

    /// Solves exactly; `None` if inconsistent.
    pub fn solve(&self) -> Option<AffineSolution> {
        let n = self.vars;
        if self.rows.is_empty() {
            return Some(AffineSolution {
                particular: vec![Rational::zero(); n],
                directions: (0..n)
                    .map(|i| {
                        let mut v = vec![Rational::zero(); n];
                        v[i] = super::rat(1);
                        v
                    })
                    .collect(),
            });
        }
        let aug = QMat::from_rows(
            self.rows
                .iter()
                .map(|(c, r)| {
                    let mut row = c.clone();
                    row.push(r.clone());
                    row
                })
                .collect(),
        );
        let (red, piv) = aug.rref();
        if piv.last() == Some(&n) {
            return None;
        }
        let mut particular = vec![Rational::zero(); n];
        for (r, &p) in piv.iter().enumerate() {
            particular[p] = red[(r, n)].clone();
        }
        let coeff = red.submatrix(0..red.rows(), 0..n);
        let directions = (0..n)
            .filter(|c| !piv.contains(c))
            .map(|f| {
                let mut v = vec![Rational::zero(); n];
                v[f] = super::rat(1);
                for (r, &p) in piv.iter().enumerate() {
                    v[p] = -coeff[(r, f)].clone();
                }
                v
            })
            .collect();
        Some(AffineSolution { particular, directions })
    }
}
