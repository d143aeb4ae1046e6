//! Cartan data for the simple types, diagram automorphisms, and character
//! lattices between the root lattice and the weight lattice.
//!
//! Cartan entries follow `a_ij = <alpha_i, alpha_j^vee>`, so that in the basis
//! of fundamental weights `alpha_i = sum_j a_ij omega_j`. The exceptional
//! types use the chain labeling: `E_n` is the chain `1 - 2 - ... - (n-1)` with
//! node `n` attached to node 3.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exactnum::{IntMat, QMat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum RootSysError {
    #[error("invalid rank {rank} for family {family:?}")]
    InvalidRank { family: Family, rank: usize },
    #[error("cannot parse type label {0:?}")]
    BadLabel(String),
    #[error("lattice basis is not between the root and weight lattices: {0}")]
    BadLattice(String),
}

/// A simple type such as `A2` or `E6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootSysError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(RootSysError::InvalidRank { family, rank })
        }
    }

    pub fn a(rank: usize) -> Self {
        Self::new(Family::A, rank).expect("valid rank")
    }

    pub fn e(rank: usize) -> Self {
        Self::new(Family::E, rank).expect("valid rank")
    }

    /// True when the Chevalley involution is inner.
    pub fn chevalley_is_inner(&self) -> bool {
        match self.family {
            Family::A => self.rank == 1,
            Family::B | Family::C | Family::F | Family::G => true,
            Family::D => self.rank % 2 == 0,
            Family::E => self.rank != 6,
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = RootSysError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || RootSysError::BadLabel(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().trim_start_matches('_').parse().map_err(|_| bad())?;
        SimpleType::new(family, rank)
    }
}

impl Serialize for SimpleType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SimpleType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Cartan matrix and symmetrizer of a simple type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    pub ty: SimpleType,
    pub cartan: IntMat,
    /// `d_i` with `d_i * a_ij` symmetric; long roots have `d_i = 1`.
    pub symmetrizer: Vec<i64>,
}

/// Edges `(i, j, a_ij, a_ji)` with 0-based indices.
fn edges(ty: SimpleType) -> Vec<(usize, usize, i64, i64)> {
    let n = ty.rank;
    let chain = |len: usize| (0..len.saturating_sub(1)).map(|i| (i, i + 1, -1, -1)).collect::<Vec<_>>();
    match ty.family {
        Family::A => chain(n),
        Family::B => {
            let mut e = chain(n - 1);
            e.push((n - 2, n - 1, -2, -1));
            e
        }
        Family::C => {
            let mut e = chain(n - 1);
            e.push((n - 2, n - 1, -1, -2));
            e
        }
        Family::D => {
            let mut e = chain(n - 1);
            e.push((n - 3, n - 1, -1, -1));
            e
        }
        Family::E => {
            let mut e = chain(n - 1);
            e.push((2, n - 1, -1, -1));
            e
        }
        Family::F => vec![(0, 1, -1, -1), (1, 2, -2, -1), (2, 3, -1, -1)],
        Family::G => vec![(0, 1, -1, -3)],
    }
}

fn symmetrizer(ty: SimpleType) -> Vec<i64> {
    let n = ty.rank;
    match ty.family {
        Family::B => (0..n).map(|i| if i == n - 1 { 2 } else { 1 }).collect(),
        Family::C => (0..n).map(|i| if i == n - 1 { 1 } else { 2 }).collect(),
        Family::F => vec![1, 1, 2, 2],
        Family::G => vec![3, 1],
        _ => vec![1; n],
    }
}

pub fn build_root_system(ty: SimpleType) -> RootSystem {
    let n = ty.rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (i, j, aij, aji) in edges(ty) {
        a[i][j] = aij;
        a[j][i] = aji;
    }
    RootSystem {
        ty,
        cartan: IntMat::from_i64(&a),
        symmetrizer: symmetrizer(ty),
    }
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        i64::try_from(&self.cartan[(i, j)]).expect("small Cartan entry")
    }

    /// `d_i * a_ij`, the symmetrized pairing of simple coroots up to scale.
    pub fn symmetric_pairing(&self, i: usize, j: usize) -> i64 {
        self.symmetrizer[i] * self.a(i, j)
    }

    /// Gram matrix of the simple coroots for the invariant form normalized
    /// so that long roots have squared length 2.
    pub fn coroot_gram(&self) -> QMat {
        let n = self.rank();
        QMat::from_fn(n, n, |i, j| crate::exactnum::rat(self.symmetric_pairing(i, j)))
    }

    /// Coefficient matrix `c` of the Cartan part of the Casimir,
    /// `Omega_0 = sum c_kl h_k (x) h_l` in the coroot basis.
    pub fn omega0(&self) -> QMat {
        self.coroot_gram().inverse().expect("coroot Gram matrix is invertible")
    }

    pub fn cartan_rational(&self) -> QMat {
        self.cartan.to_rational()
    }

    /// Neighbours of node `i` in the Dynkin diagram.
    pub fn neighbours(&self, i: usize) -> Vec<usize> {
        (0..self.rank()).filter(|&j| j != i && self.a(i, j) != 0).collect()
    }
}

/// A permutation of the simple roots, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiagramAutomorphism {
    pub perm: Vec<usize>,
}

impl DiagramAutomorphism {
    pub fn identity(n: usize) -> Self {
        Self { perm: (0..n).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            perm: other.perm.iter().map(|&i| self.perm[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        Self { perm: inv }
    }

    /// Permutation matrix sending basis vector `e_i` to `e_{perm(i)}`.
    pub fn matrix(&self) -> QMat {
        let n = self.perm.len();
        let mut m = QMat::zeros(n, n);
        for (i, &p) in self.perm.iter().enumerate() {
            m[(p, i)] = Rational::one();
        }
        m
    }

    /// Non-identity cycles, 1-based, for display.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.perm.len()];
        let mut out = Vec::new();
        for start in 0..self.perm.len() {
            if seen[start] || self.perm[start] == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i + 1);
                i = self.perm[i];
            }
            out.push(cyc);
        }
        out
    }
}

impl fmt::Display for DiagramAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "id");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// All permutations preserving the Cartan matrix, identity first and the
/// rest in lexicographic order.
pub fn diagram_automorphisms(ty: SimpleType) -> Vec<DiagramAutomorphism> {
    let rs = build_root_system(ty);
    let n = rs.rank();
    let mut out = Vec::new();
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend_automorphisms(&rs, &mut perm, &mut used, &mut out);
    out.sort_by_key(|d| (!d.is_identity(), d.perm.clone()));
    out
}

fn extend_automorphisms(rs: &RootSystem, perm: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<DiagramAutomorphism>) {
    let n = rs.rank();
    let i = perm.len();
    if i == n {
        out.push(DiagramAutomorphism { perm: perm.clone() });
        return;
    }
    for p in 0..n {
        if used[p] {
            continue;
        }
        let consistent = (0..i).all(|j| rs.a(i, j) == rs.a(p, perm[j]) && rs.a(j, i) == rs.a(perm[j], p));
        if !consistent {
            continue;
        }
        used[p] = true;
        perm.push(p);
        extend_automorphisms(rs, perm, used, out);
        perm.pop();
        used[p] = false;
    }
}

/// The diagram involution `d` paired with the Chevalley involution: trivial
/// for inner types, otherwise the unique nontrivial diagram automorphism of
/// order two.
pub fn involution_d(ty: SimpleType) -> DiagramAutomorphism {
    if ty.chevalley_is_inner() {
        return DiagramAutomorphism::identity(ty.rank);
    }
    diagram_automorphisms(ty)
        .into_iter()
        .find(|d| !d.is_identity() && d.compose(d).is_identity())
        .expect("outer types have a diagram involution")
}

/// Which lattice `X` with `Q <= X <= P` is in use.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum LatticeTag {
    /// The root lattice (adjoint group).
    Q,
    /// The weight lattice (simply connected group).
    P,
    /// Rows are basis vectors of `X` in fundamental-weight coordinates.
    Intermediate(Vec<Vec<i64>>),
}

impl FromStr for LatticeTag {
    type Err = RootSysError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "Q" | "q" | "root" | "adjoint" => Ok(LatticeTag::Q),
            "P" | "p" | "weight" | "sc" => Ok(LatticeTag::P),
            other => serde_json::from_str::<Vec<Vec<i64>>>(other)
                .map(LatticeTag::Intermediate)
                .map_err(|_| RootSysError::BadLattice(format!("unrecognized lattice {other:?}"))),
        }
    }
}

impl fmt::Display for LatticeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeTag::Q => write!(f, "Q"),
            LatticeTag::P => write!(f, "P"),
            LatticeTag::Intermediate(b) => write!(f, "{}", serde_json::to_string(b).unwrap_or_default()),
        }
    }
}

/// A character lattice together with the coordinates of the simple roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterLattice {
    pub ty: SimpleType,
    pub tag: LatticeTag,
    /// Row `i` holds the coordinates of `alpha_i` in the lattice basis.
    pub root_coords: IntMat,
}

pub fn root_coordinates(ty: SimpleType, tag: &LatticeTag) -> Result<CharacterLattice, RootSysError> {
    let rs = build_root_system(ty);
    let n = ty.rank;
    let root_coords = match tag {
        LatticeTag::Q => IntMat::identity(n),
        LatticeTag::P => rs.cartan.clone(),
        LatticeTag::Intermediate(basis) => {
            if basis.len() != n || basis.iter().any(|r| r.len() != n) {
                return Err(RootSysError::BadLattice(format!("expected a {n}x{n} basis")));
            }
            let b = IntMat::from_i64(basis).to_rational();
            let inv = b
                .inverse()
                .ok_or_else(|| RootSysError::BadLattice("basis is singular".into()))?;
            let coords = &rs.cartan_rational() * &inv;
            let mut out = IntMat::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    let c = &coords[(i, j)];
                    if !c.is_integer() {
                        return Err(RootSysError::BadLattice("root lattice is not contained in X".into()));
                    }
                    out[(i, j)] = c.to_integer();
                }
            }
            out
        }
    };
    Ok(CharacterLattice {
        ty,
        tag: tag.clone(),
        root_coords,
    })
}

impl CharacterLattice {
    /// Index `[X : Q]`.
    pub fn index_over_root_lattice(&self) -> BigInt {
        let d = self.root_coords.det();
        if d < BigInt::zero() {
            -d
        } else {
            d
        }
    }
}
