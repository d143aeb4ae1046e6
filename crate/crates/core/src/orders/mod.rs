//! Lattices and orders over `O = C[[t]]`: double-coset representatives for
//! `GL(2)` and `GL(3)`, multiplier orders, the orders of `K^2`, `L`, `K^3`
//! and `K (+) L`, and cubic rings given by binary cubic forms.

pub mod algebra;
pub mod cosets;
pub mod cubic;
pub mod lattice;
pub mod lattice_class;
pub mod suborders;

pub use algebra::{Algebra, Structure};
pub use cosets::{bracket_negative, canonical_q, reduce_gl2, reduce_gl3, same_coset_gl3, CosetForm2, CosetForm3};
pub use cubic::{
    char_polys, classify_cubic_algebra, count_roots_in_k, cubic_from_index_form, discriminant, gl2_action_on_forms,
    lattice_class_count, reciprocity_holds, CubicAlgebraType, CubicRing, IndexForm,
};
pub use lattice::{
    classify_order_k2, classify_order_l, index_of_suborder, lambda_k2, lambda_l, multiplier_order,
    multiplier_order_lk, Lattice, Order,
};
pub use lattice_class::{is_gorenstein_order, lattice_class_oracle};
pub use suborders::{enumerate_suborders_k3, enumerate_suborders_kl, OrderClassK3, OrderClassKL};

use crate::exactnum::{ExactError, ExtElem, LaurentPoly, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrderError {
    #[error("singular matrix")]
    Singular,
    #[error("rank defect: the vectors do not form a lattice basis")]
    RankDefect,
    #[error("not an order: missing the unit or not closed under multiplication")]
    NotAnOrder,
    #[error("the first lattice is not contained in the second")]
    NotContained,
    #[error("determinant is not a unit of O")]
    NotUnimodular,
    #[error("inseparable: the discriminant vanishes")]
    Inseparable,
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// `J_2 = [[1, 1], [-j, j]]`.
pub fn j2() -> Matrix<ExtElem> {
    let j = ExtElem::j();
    Matrix::from_rows(vec![vec![ExtElem::from(1), ExtElem::from(1)], vec![-j.clone(), j]])
}

/// `J_3 = [[1, 0, 1], [0, 1, 0], [-j, 0, j]]`.
pub fn j3() -> Matrix<ExtElem> {
    let j = ExtElem::j();
    let (z, o) = (|| ExtElem::from(0), || ExtElem::from(1));
    Matrix::from_rows(vec![vec![o(), z(), o()], vec![z(), o(), z()], vec![-j.clone(), z(), j]])
}

/// `diag(d, γ(d))`, an element of the torus `D_2`.
pub fn d2(d: &ExtElem) -> Matrix<ExtElem> {
    Matrix::diagonal(&[d.clone(), d.conj()])
}

/// `diag(d, a, γ(d))`, an element of the torus `D_3`.
pub fn d3(d: &ExtElem, a: &LaurentPoly) -> Matrix<ExtElem> {
    Matrix::diagonal(&[d.clone(), ExtElem::from_k(a.clone()), d.conj()])
}

pub(crate) mod matk_serde {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::exactnum::{MatK, RatFunc};

    pub fn serialize<S: Serializer>(m: &MatK, s: S) -> Result<S::Ok, S::Error> {
        m.to_rows().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<MatK, D::Error> {
        let rows = Vec::<Vec<RatFunc>>::deserialize(d)?;
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(serde::de::Error::custom("ragged matrix"));
        }
        Ok(MatK::from_rows(rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn adjugate2(m: &Matrix<ExtElem>) -> Matrix<ExtElem> {
        Matrix::from_rows(vec![
            vec![m[(1, 1)].clone(), -m[(0, 1)].clone()],
            vec![-m[(1, 0)].clone(), m[(0, 0)].clone()],
        ])
    }

    #[test]
    fn j_constants() {
        let two_j = ExtElem::new(LaurentPoly::zero(), LaurentPoly::from_int(2));
        assert_eq!(j2().det(), two_j);
        let v = vec![ExtElem::from(0), ExtElem::from(5), ExtElem::from(0)];
        assert_eq!(j3().mul_vec(&v), v);
    }

    #[test]
    fn conjugating_the_torus_lands_in_k() {
        // J D adj(J) = det(J) * (J D J^-1) = 2j * (matrix over K): every
        // entry is purely odd.
        let d = ExtElem::new("1+t".parse().unwrap(), "t^-1-3".parse().unwrap());
        let m = &(&j2() * &d2(&d)) * &adjugate2(&j2());
        for x in m.to_rows().iter().flatten() {
            assert!(x.even.is_zero(), "{x}");
        }
        let e = d3(&d, &LaurentPoly::from_int(7));
        assert_eq!(e[(1, 1)], ExtElem::from(7));
    }
}
