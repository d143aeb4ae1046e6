//! Admissible triples `(Gamma1, Gamma2, tau)`: validation, enumeration,
//! decomposition into strings, and the action of diagram automorphisms.
//!
//! Root indices are 0-based in memory and 1-based in every textual or JSON
//! form.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rootsys::{build_root_system, diagram_automorphisms, DiagramAutomorphism, RootSystem, SimpleType};

/// Largest rank enumerated unless the caller raises the bound.
pub const DEFAULT_RANK_GUARD: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TripleError {
    #[error("root index {index} out of range for {ty}")]
    IndexOutOfRange { ty: SimpleType, index: usize },
    #[error("tau must be defined exactly on gamma1 with image gamma2")]
    Shape,
    #[error("rank {rank} exceeds the enumeration bound {bound}")]
    RankGuard { rank: usize, bound: usize },
    #[error("triple is not admissible")]
    NotAdmissible,
}

/// A discrete Belavin-Drinfeld parameter. The empty triple is the
/// Drinfeld-Jimbo case.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdmissibleTriple {
    pub ty: SimpleType,
    pub gamma1: Vec<usize>,
    pub gamma2: Vec<usize>,
    pub tau: BTreeMap<usize, usize>,
}

impl AdmissibleTriple {
    /// Builds from `(source, target)` pairs, 0-based, without checking
    /// admissibility.
    pub fn from_pairs(ty: SimpleType, pairs: &[(usize, usize)]) -> Self {
        let tau: BTreeMap<usize, usize> = pairs.iter().copied().collect();
        let gamma1 = tau.keys().copied().collect();
        let mut gamma2: Vec<usize> = tau.values().copied().collect();
        gamma2.sort_unstable();
        Self { ty, gamma1, gamma2, tau }
    }

    /// Same as [`from_pairs`](Self::from_pairs) but with 1-based labels.
    pub fn from_labels(ty: SimpleType, pairs: &[(usize, usize)]) -> Self {
        let zero: Vec<(usize, usize)> = pairs.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
        Self::from_pairs(ty, &zero)
    }

    pub fn empty(ty: SimpleType) -> Self {
        Self::from_pairs(ty, &[])
    }

    pub fn is_empty(&self) -> bool {
        self.gamma1.is_empty()
    }

    pub fn size(&self) -> usize {
        self.gamma1.len()
    }

    /// `(Gamma2, Gamma1, tau^-1)`.
    pub fn mirror(&self) -> Self {
        let pairs: Vec<(usize, usize)> = self.tau.iter().map(|(&a, &b)| (b, a)).collect();
        Self::from_pairs(self.ty, &pairs)
    }

    /// The key used for the deterministic enumeration order.
    fn sort_key(&self) -> (usize, &[usize], &[usize], Vec<(usize, usize)>) {
        (
            self.gamma1.len(),
            &self.gamma1,
            &self.gamma2,
            self.tau.iter().map(|(&a, &b)| (a, b)).collect(),
        )
    }

    /// Applies `tau` to `alpha` when defined.
    pub fn tau_of(&self, alpha: usize) -> Option<usize> {
        self.tau.get(&alpha).copied()
    }

    /// Maximal chains `[alpha, tau(alpha), tau^2(alpha), ...]` covering every
    /// simple root.
    pub fn strings(&self) -> StringDecomposition {
        let image: BTreeSet<usize> = self.gamma2.iter().copied().collect();
        let mut strings = Vec::new();
        for start in (0..self.ty.rank).filter(|a| !image.contains(a)) {
            let mut chain = vec![start];
            let mut cur = start;
            while let Some(next) = self.tau_of(cur) {
                chain.push(next);
                cur = next;
                if chain.len() > self.ty.rank {
                    break;
                }
            }
            strings.push(chain);
        }
        StringDecomposition { strings }
    }

    /// 1-based human-readable form, e.g. `{1,4} -> {2,5}: 1->2, 4->5`.
    pub fn label(&self) -> String {
        if self.is_empty() {
            return "{} -> {}".to_string();
        }
        let set = |v: &[usize]| v.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",");
        let arrows: Vec<String> = self.tau.iter().map(|(a, b)| format!("{}->{}", a + 1, b + 1)).collect();
        format!("{{{}}} -> {{{}}}: {}", set(&self.gamma1), set(&self.gamma2), arrows.join(", "))
    }
}

impl PartialOrd for AdmissibleTriple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AdmissibleTriple {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ty.cmp(&other.ty).then_with(|| self.sort_key().cmp(&other.sort_key()))
    }
}

impl fmt::Display for AdmissibleTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.ty, self.label())
    }
}

#[derive(Serialize, Deserialize)]
struct TripleJson {
    #[serde(rename = "type")]
    ty: SimpleType,
    gamma1: Vec<usize>,
    gamma2: Vec<usize>,
    tau: BTreeMap<String, usize>,
}

impl Serialize for AdmissibleTriple {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TripleJson {
            ty: self.ty,
            gamma1: self.gamma1.iter().map(|x| x + 1).collect(),
            gamma2: self.gamma2.iter().map(|x| x + 1).collect(),
            tau: self.tau.iter().map(|(a, b)| ((a + 1).to_string(), b + 1)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AdmissibleTriple {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = TripleJson::deserialize(d)?;
        let n = j.ty.rank;
        let mut pairs = Vec::new();
        for (k, v) in &j.tau {
            let a: usize = k.trim().parse().map_err(|_| D::Error::custom("tau keys must be root labels"))?;
            if a == 0 || a > n || *v == 0 || *v > n {
                return Err(D::Error::custom("root label out of range"));
            }
            pairs.push((a - 1, v - 1));
        }
        let t = AdmissibleTriple::from_pairs(j.ty, &pairs);
        let mut g1: Vec<usize> = j.gamma1.iter().map(|x| x.wrapping_sub(1)).collect();
        let mut g2: Vec<usize> = j.gamma2.iter().map(|x| x.wrapping_sub(1)).collect();
        g1.sort_unstable();
        g2.sort_unstable();
        if g1 != t.gamma1 || g2 != t.gamma2 {
            return Err(D::Error::custom("gamma1/gamma2 disagree with tau"));
        }
        Ok(t)
    }
}

/// Partition of the simple roots into maximal `tau`-chains. Serialized as
/// 1-based chains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringDecomposition {
    pub strings: Vec<Vec<usize>>,
}

impl Serialize for StringDecomposition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Vec<usize>> = self.strings.iter().map(|c| c.iter().map(|x| x + 1).collect()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for StringDecomposition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<Vec<usize>>::deserialize(d)?;
        if v.iter().flatten().any(|&x| x == 0) {
            return Err(serde::de::Error::custom("root labels are 1-based"));
        }
        Ok(Self {
            strings: v.into_iter().map(|c| c.into_iter().map(|x| x - 1).collect()).collect(),
        })
    }
}

impl StringDecomposition {
    pub fn count(&self) -> usize {
        self.strings.len()
    }

    /// True when `a` and `b` lie in the same chain.
    pub fn same_string(&self, a: usize, b: usize) -> bool {
        self.strings.iter().any(|s| s.contains(&a) && s.contains(&b))
    }

    /// Chains with at least two roots, each sorted, as 1-based sets.
    pub fn nontrivial_sets(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .strings
            .iter()
            .filter(|s| s.len() > 1)
            .map(|s| {
                let mut v: Vec<usize> = s.iter().map(|x| x + 1).collect();
                v.sort_unstable();
                v
            })
            .collect();
        out.sort();
        out
    }
}

impl fmt::Display for StringDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .strings
            .iter()
            .map(|s| format!("{{{}}}", s.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn lengths_and_angles_match(rs: &RootSystem, a: usize, b: usize, ta: usize, tb: usize) -> bool {
    rs.symmetric_pairing(ta, tb) == rs.symmetric_pairing(a, b)
}

/// Checks bijectivity, isometry and nilpotency.
pub fn is_admissible(
    ty: SimpleType,
    gamma1: &[usize],
    gamma2: &[usize],
    tau: &BTreeMap<usize, usize>,
) -> Result<bool, TripleError> {
    let n = ty.rank;
    for &i in gamma1.iter().chain(gamma2).chain(tau.keys()).chain(tau.values()) {
        if i >= n {
            return Err(TripleError::IndexOutOfRange { ty, index: i + 1 });
        }
    }
    let g1: BTreeSet<usize> = gamma1.iter().copied().collect();
    let g2: BTreeSet<usize> = gamma2.iter().copied().collect();
    if g1.len() != gamma1.len() || g2.len() != gamma2.len() || g1.len() != g2.len() {
        return Ok(false);
    }
    let domain: BTreeSet<usize> = tau.keys().copied().collect();
    let image: BTreeSet<usize> = tau.values().copied().collect();
    if domain != g1 || image != g2 || image.len() != domain.len() {
        return Ok(false);
    }
    let rs = build_root_system(ty);
    for (&a, &ta) in tau {
        for (&b, &tb) in tau {
            if !lengths_and_angles_match(&rs, a, b, ta, tb) {
                return Ok(false);
            }
        }
    }
    for &a in &g1 {
        let mut cur = a;
        let mut steps = 0;
        while let Some(&next) = tau.get(&cur) {
            cur = next;
            steps += 1;
            if steps > n {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

impl AdmissibleTriple {
    pub fn check(&self) -> Result<bool, TripleError> {
        is_admissible(self.ty, &self.gamma1, &self.gamma2, &self.tau)
    }
}

pub fn enumerate_triples(ty: SimpleType, include_empty: bool) -> Result<Vec<AdmissibleTriple>, TripleError> {
    enumerate_triples_guarded(ty, include_empty, DEFAULT_RANK_GUARD)
}

/// Every admissible ordered triple, sorted by `|Gamma1|`, then `Gamma1`,
/// `Gamma2` and the graph of `tau` lexicographically. A triple and its mirror
/// are separate entries.
pub fn enumerate_triples_guarded(
    ty: SimpleType,
    include_empty: bool,
    max_rank: usize,
) -> Result<Vec<AdmissibleTriple>, TripleError> {
    let n = ty.rank;
    if n > max_rank {
        return Err(TripleError::RankGuard { rank: n, bound: max_rank });
    }
    let rs = build_root_system(ty);
    let masks: Vec<u32> = (1u32..(1 << n)).filter(|m| m.count_ones() < n as u32).collect();
    let mut out: Vec<AdmissibleTriple> = masks
        .par_iter()
        .flat_map_iter(|&mask| {
            let gamma1: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let mut found = Vec::new();
            let mut images = Vec::with_capacity(gamma1.len());
            extend_maps(&rs, &gamma1, &mut images, &mut found);
            found
        })
        .collect();
    out.sort();
    if include_empty {
        out.insert(0, AdmissibleTriple::empty(ty));
    }
    Ok(out)
}

fn extend_maps(rs: &RootSystem, gamma1: &[usize], images: &mut Vec<usize>, out: &mut Vec<AdmissibleTriple>) {
    let k = images.len();
    if k == gamma1.len() {
        let pairs: Vec<(usize, usize)> = gamma1.iter().copied().zip(images.iter().copied()).collect();
        let t = AdmissibleTriple::from_pairs(rs.ty, &pairs);
        if nilpotent(&t) {
            out.push(t);
        }
        return;
    }
    let a = gamma1[k];
    for ta in 0..rs.rank() {
        if images.contains(&ta) {
            continue;
        }
        if !lengths_and_angles_match(rs, a, a, ta, ta) {
            continue;
        }
        let ok = (0..k).all(|j| lengths_and_angles_match(rs, a, gamma1[j], ta, images[j]));
        if !ok {
            continue;
        }
        images.push(ta);
        extend_maps(rs, gamma1, images, out);
        images.pop();
    }
}

fn nilpotent(t: &AdmissibleTriple) -> bool {
    t.gamma1.iter().all(|&a| {
        let mut cur = a;
        for _ in 0..=t.ty.rank {
            match t.tau_of(cur) {
                Some(next) => cur = next,
                None => return true,
            }
        }
        false
    })
}

/// Transports a triple along a diagram automorphism: `(d(Gamma1), d(Gamma2), d tau d^-1)`.
pub fn out_action(d: &DiagramAutomorphism, t: &AdmissibleTriple) -> AdmissibleTriple {
    let pairs: Vec<(usize, usize)> = t.tau.iter().map(|(&a, &b)| (d.apply(a), d.apply(b))).collect();
    AdmissibleTriple::from_pairs(t.ty, &pairs)
}

/// Partitions triples of one type into orbits of the diagram automorphism
/// group. Each orbit is sorted and orbits are ordered by representative.
pub fn orbits_under_out(triples: &[AdmissibleTriple]) -> Vec<Vec<AdmissibleTriple>> {
    let Some(first) = triples.first() else {
        return Vec::new();
    };
    let group = diagram_automorphisms(first.ty);
    let mut by_rep: BTreeMap<AdmissibleTriple, BTreeSet<AdmissibleTriple>> = BTreeMap::new();
    for t in triples {
        let rep = group.iter().map(|d| out_action(d, t)).min().expect("group is nonempty");
        by_rep.entry(rep).or_default().insert(t.clone());
    }
    by_rep.into_values().map(|s| s.into_iter().collect()).collect()
}

/// Keeps one triple from each mirror pair (the smaller in enumeration order).
pub fn collapse_mirrors(triples: &[AdmissibleTriple]) -> Vec<AdmissibleTriple> {
    triples.iter().filter(|t| **t <= t.mirror()).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{involution_d, Family};

    fn tau(pairs: &[(usize, usize)]) -> BTreeMap<usize, usize> {
        pairs.iter().map(|&(a, b)| (a - 1, b - 1)).collect()
    }

    fn set(v: &[usize]) -> Vec<usize> {
        v.iter().map(|x| x - 1).collect()
    }

    #[test]
    fn admissibility_examples() {
        let a2 = SimpleType::a(2);
        assert!(is_admissible(a2, &set(&[1]), &set(&[2]), &tau(&[(1, 2)])).unwrap());
        assert!(!is_admissible(a2, &set(&[1]), &set(&[1]), &tau(&[(1, 1)])).unwrap());
        let a3 = SimpleType::a(3);
        assert!(is_admissible(a3, &set(&[1, 2]), &set(&[2, 3]), &tau(&[(1, 2), (2, 3)])).unwrap());
        assert!(is_admissible(a2, &set(&[3]), &set(&[1]), &tau(&[(3, 1)])).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_triples(SimpleType::e(6), false).unwrap().len(), 406);
        assert!(enumerate_triples(SimpleType::a(1), false).unwrap().is_empty());
        assert_eq!(enumerate_triples(SimpleType::a(2), false).unwrap().len(), 2);
        assert_eq!(enumerate_triples(SimpleType::a(2), true).unwrap().len(), 3);
        assert!(matches!(
            enumerate_triples_guarded(SimpleType::e(8), false, 7),
            Err(TripleError::RankGuard { .. })
        ));
    }

    #[test]
    fn non_simply_laced_respects_lengths() {
        // In B2 the two simple roots have different lengths.
        assert!(enumerate_triples(SimpleType::new(Family::B, 2).unwrap(), false).unwrap().is_empty());
        // In B3 the two long roots may be exchanged.
        let b3 = enumerate_triples(SimpleType::new(Family::B, 3).unwrap(), false).unwrap();
        assert_eq!(b3.len(), 2);
        assert!(b3.iter().all(|t| !t.tau.contains_key(&2) && !t.gamma2.contains(&2)));
    }

    #[test]
    fn strings_examples() {
        let t = AdmissibleTriple::from_labels(SimpleType::e(6), &[(1, 2), (4, 5)]);
        let s = t.strings();
        assert_eq!(s.strings, vec![vec![0, 1], vec![2], vec![3, 4], vec![5]]);
        assert_eq!(AdmissibleTriple::empty(SimpleType::a(2)).strings().strings, vec![vec![0], vec![1]]);
        let a3 = AdmissibleTriple::from_labels(SimpleType::a(3), &[(1, 2), (2, 3)]);
        assert_eq!(a3.strings().strings, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn out_action_examples() {
        let a2 = SimpleType::a(2);
        let t = AdmissibleTriple::from_labels(a2, &[(1, 2)]);
        assert_eq!(out_action(&DiagramAutomorphism::identity(2), &t), t);
        let d = involution_d(a2);
        assert_eq!(out_action(&d, &t), AdmissibleTriple::from_labels(a2, &[(2, 1)]));
        let e6 = SimpleType::e(6);
        let t = AdmissibleTriple::from_labels(e6, &[(1, 2), (4, 5)]);
        assert_eq!(out_action(&involution_d(e6), &t), AdmissibleTriple::from_labels(e6, &[(5, 4), (2, 1)]));
    }

    #[test]
    fn orbit_examples() {
        let a2 = enumerate_triples(SimpleType::a(2), false).unwrap();
        assert_eq!(orbits_under_out(&a2).len(), 1);
        let a3 = enumerate_triples(SimpleType::a(3), false).unwrap();
        let orbits = orbits_under_out(&a3);
        assert_eq!(orbits.iter().map(|o| o.len()).sum::<usize>(), a3.len());
    }

    #[test]
    fn json_uses_one_based_labels() {
        let t = AdmissibleTriple::from_labels(SimpleType::e(6), &[(1, 2), (4, 5)]);
        let js = serde_json::to_string(&t).unwrap();
        assert_eq!(js, r#"{"type":"E6","gamma1":[1,4],"gamma2":[2,5],"tau":{"1":2,"4":5}}"#);
        let back: AdmissibleTriple = serde_json::from_str(&js).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<AdmissibleTriple>(r#"{"type":"A2","gamma1":[1],"gamma2":[1],"tau":{"1":2}}"#).is_err());
    }
}
