use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMat;

/// Result of [`smith_normal_form`]: `u * m * v == d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
}

impl SmithForm {
    /// Diagonal entries of `d`, including zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|x| x > &BigInt::from(1)).collect()
    }
}

/// Smith normal form over `Z`.
///
/// Pivots on an entry of minimal absolute value, scanning rows then columns
/// in index order, so `u` and `v` are reproducible.
pub fn smith_normal_form(m: &IntMat) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);

    for k in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = min_abs_entry(&d, k) else {
                return finish(u, d, v);
            };
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);

            let p = d[(k, k)].clone();
            let mut clean = true;
            for i in k + 1..rows {
                let q = d[(i, k)].div_floor(&p);
                if !q.is_zero() {
                    d.add_row_multiple(i, k, &-q.clone());
                    u.add_row_multiple(i, k, &-q);
                }
                clean &= d[(i, k)].is_zero();
            }
            for j in k + 1..cols {
                let q = d[(k, j)].div_floor(&p);
                if !q.is_zero() {
                    d.add_col_multiple(j, k, &-q.clone());
                    v.add_col_multiple(j, k, &-q);
                }
                clean &= d[(k, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            let bad = (k + 1..rows)
                .flat_map(|i| (k + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !d[(i, j)].is_multiple_of(&p));
            match bad {
                Some((i, _)) => {
                    d.add_row_multiple(k, i, &BigInt::from(1));
                    u.add_row_multiple(k, i, &BigInt::from(1));
                }
                None => break,
            }
        }
    }
    finish(u, d, v)
}

fn min_abs_entry(d: &IntMat, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in k..d.rows() {
        for j in k..d.cols() {
            let a = d[(i, j)].abs();
            if a.is_zero() {
                continue;
            }
            if best.as_ref().map_or(true, |(_, _, b)| &a < b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn finish(mut u: IntMat, mut d: IntMat, v: IntMat) -> SmithForm {
    for i in 0..d.rows().min(d.cols()) {
        if d[(i, i)].is_negative() {
            d.scale_row(i, &BigInt::from(-1));
            u.scale_row(i, &BigInt::from(-1));
        }
    }
    SmithForm { u, d, v }
}
