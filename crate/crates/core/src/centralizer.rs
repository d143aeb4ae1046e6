//! The centralizer of a Belavin-Drinfeld r-matrix in a group with character
//! lattice `X` is the diagonalizable group dual to `X / span{alpha - tau(alpha)}`.
//! Its dimension and component group come from the Smith form of the
//! relation matrix.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bdtriple::{enumerate_triples, AdmissibleTriple, StringDecomposition, TripleError};
use crate::exactnum::{smith_normal_form, IntMat};
use crate::rootsys::{root_coordinates, CharacterLattice, Family, LatticeTag, RootSysError, SimpleType};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CentralizerShape {
    pub torus_rank: usize,
    /// Invariant factors greater than one, each dividing the next.
    pub torsion: Vec<u64>,
}

impl CentralizerShape {
    pub fn is_connected(&self) -> bool {
        self.torsion.is_empty()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CentralizerError {
    #[error(transparent)]
    Triple(#[from] TripleError),
    #[error(transparent)]
    Lattice(#[from] RootSysError),
    #[error("lattice type {lattice} does not match triple type {triple}")]
    TypeMismatch { triple: SimpleType, lattice: SimpleType },
    #[error("the exceptional report is only defined for E6 and E7, got {0}")]
    NotExceptional(SimpleType),
}

/// Rows `alpha - tau(alpha)` for `alpha` in sorted `Gamma1`, in lattice coordinates.
pub fn relation_matrix(t: &AdmissibleTriple, lattice: &CharacterLattice) -> IntMat {
    let n = lattice.ty.rank;
    IntMat::from_fn(t.gamma1.len(), n, |r, j| {
        let a = t.gamma1[r];
        let ta = t.tau[&a];
        &lattice.root_coords[(a, j)] - &lattice.root_coords[(ta, j)]
    })
}

pub fn centralizer_shape(t: &AdmissibleTriple, lattice: &CharacterLattice) -> Result<CentralizerShape, CentralizerError> {
    if t.ty != lattice.ty {
        return Err(CentralizerError::TypeMismatch {
            triple: t.ty,
            lattice: lattice.ty,
        });
    }
    let n = lattice.ty.rank;
    if t.is_empty() {
        return Ok(CentralizerShape {
            torus_rank: n,
            torsion: Vec::new(),
        });
    }
    let snf = smith_normal_form(&relation_matrix(t, lattice));
    Ok(CentralizerShape {
        torus_rank: n - snf.rank(),
        torsion: snf.torsion().iter().map(|x: &BigInt| x.to_u64().expect("small invariant factor")).collect(),
    })
}

pub fn is_connected(t: &AdmissibleTriple, lattice: &CharacterLattice) -> Result<bool, CentralizerError> {
    Ok(centralizer_shape(t, lattice)?.is_connected())
}

/// Cyclic factors of the non-twisted cohomology `K^x/(K^x)^{m_1} x ...`.
pub fn nontwisted_h_size(shape: &CentralizerShape) -> Vec<u64> {
    shape.torsion.clone()
}

/// Upper bound for the number of twisted cohomology classes.
pub fn twisted_h_bound(shape: &CentralizerShape) -> u64 {
    shape.torsion.iter().product()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportRow {
    pub triple: AdmissibleTriple,
    pub strings: StringDecomposition,
    pub torus_rank: usize,
    pub torsion: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalReport {
    pub ty: SimpleType,
    pub lattice: LatticeTag,
    pub rows: Vec<ReportRow>,
}

impl ExceptionalReport {
    pub fn disconnected(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| !r.torsion.is_empty())
    }
}

/// Shapes for every nonempty admissible triple of `ty`, in enumeration order.
pub fn shape_table(ty: SimpleType, tag: &LatticeTag) -> Result<Vec<ReportRow>, CentralizerError> {
    let lattice = root_coordinates(ty, tag)?;
    let triples = enumerate_triples(ty, false)?;
    triples
        .into_par_iter()
        .map(|t| {
            let shape = centralizer_shape(&t, &lattice)?;
            Ok(ReportRow {
                strings: t.strings(),
                triple: t,
                torus_rank: shape.torus_rank,
                torsion: shape.torsion,
            })
        })
        .collect()
}

pub fn exceptional_report(ty: SimpleType, tag: &LatticeTag) -> Result<ExceptionalReport, CentralizerError> {
    if ty.family != Family::E || !(6..=7).contains(&ty.rank) {
        return Err(CentralizerError::NotExceptional(ty));
    }
    Ok(ExceptionalReport {
        ty,
        lattice: tag.clone(),
        rows: shape_table(ty, tag)?,
    })
}
