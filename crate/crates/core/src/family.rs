//! Uniform families of vertex sets: enumeration, stars and k-wise
//! intersection.

use itertools::Itertools;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::bounds::{binomial, pow2};
use crate::error::{param_err, Error, Result};
use crate::vertex_set::{MatchingGraph, VertexSet};

/// Refuse to materialize families larger than this.
pub const MAX_FAMILY_LEN: usize = 1 << 24;

/// A duplicate-free family of `r`-subsets of `{1, ..., ground}`, kept in
/// ascending bit-pattern order so that equal families compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniformFamily {
    ground: u32,
    r: u32,
    sets: Vec<VertexSet>,
}

impl UniformFamily {
    /// Validates cardinalities and ground, sorts, and rejects duplicates.
    pub fn new(ground: u32, r: u32, mut sets: Vec<VertexSet>) -> Result<Self> {
        if ground == 0 || ground > 64 {
            return Err(param_err!("ground size {ground} outside 1..=64"));
        }
        let universe = VertexSet::full(ground);
        for s in &sets {
            if s.len() != r {
                return Err(param_err!(
                    "set {{{s}}} has cardinality {}, expected {r}",
                    s.len()
                ));
            }
            if !s.is_subset(universe) {
                return Err(param_err!("set {{{s}}} leaves the ground set 1..={ground}"));
            }
        }
        sets.sort_unstable();
        if let Some(w) = sets.windows(2).find(|w| w[0] == w[1]) {
            return Err(param_err!("duplicate set {{{}}}", w[0]));
        }
        Ok(UniformFamily { ground, r, sets })
    }

    pub fn empty(ground: u32, r: u32) -> Self {
        UniformFamily {
            ground,
            r,
            sets: Vec::new(),
        }
    }

    pub(crate) fn from_sorted(ground: u32, r: u32, sets: Vec<VertexSet>) -> Self {
        debug_assert!(sets.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(sets.iter().all(|s| s.len() == r));
        UniformFamily { ground, r, sets }
    }

    pub fn ground(&self) -> u32 {
        self.ground
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: VertexSet) -> bool {
        self.sets.binary_search(&s).is_ok()
    }

    pub fn index_of(&self, s: VertexSet) -> Option<usize> {
        self.sets.binary_search(&s).ok()
    }

    /// Subfamily selected by a predicate; order is preserved.
    pub fn filter(&self, mut keep: impl FnMut(VertexSet) -> bool) -> Self {
        let sets = self.sets.iter().copied().filter(|&s| keep(s)).collect();
        UniformFamily::from_sorted(self.ground, self.r, sets)
    }

    /// Image under a vertex relabeling `map[v - 1]`.
    pub fn relabel(&self, map: &[u32]) -> Self {
        let mut sets: Vec<VertexSet> = self.sets.iter().map(|s| s.relabel(map)).collect();
        sets.sort_unstable();
        UniformFamily::from_sorted(self.ground, self.r, sets)
    }

    /// Vertices shared by every member (all of the ground set when empty).
    pub fn common_vertices(&self) -> VertexSet {
        self.sets
            .iter()
            .fold(VertexSet::full(self.ground), |acc, &s| acc.intersection(s))
    }
}

/// Which r-uniform subfamily of `P(M_n)` to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    /// Independent sets, `I^r(M_n)`.
    Independent,
    /// Sets containing a maximum independent set, `M^r(M_n)`.
    MaxContaining,
    /// `P^r(M_n)`, the union of the two.
    Union,
}

fn ensure_capacity(count: &num_bigint::BigUint) -> Result<usize> {
    count
        .to_usize()
        .filter(|&c| c <= MAX_FAMILY_LEN)
        .ok_or_else(|| Error::Capacity(format!("family of {count} sets exceeds {MAX_FAMILY_LEN}")))
}

fn independent_sets(n: u32, r: u32) -> Result<Vec<VertexSet>> {
    if r > n {
        return Ok(Vec::new());
    }
    let count = binomial(n.into(), r.into()) * pow2(r.into());
    let mut out = Vec::with_capacity(ensure_capacity(&count)?);
    for edges in (1..=n).combinations(r as usize) {
        for flips in 0u64..1 << r {
            let mut s = VertexSet::EMPTY;
            for (j, &e) in edges.iter().enumerate() {
                s.insert(if flips >> j & 1 == 1 { e + n } else { e });
            }
            out.push(s);
        }
    }
    Ok(out)
}

fn max_containing_sets(n: u32, r: u32) -> Result<Vec<VertexSet>> {
    if r < n {
        return Ok(Vec::new());
    }
    let g = MatchingGraph::new(n)?;
    let singles = 2 * n - r;
    let count = binomial(n.into(), (r - n).into()) * pow2(singles.into());
    let mut out = Vec::with_capacity(ensure_capacity(&count)?);
    for full in (1..=n).combinations((r - n) as usize) {
        let base = full
            .iter()
            .fold(VertexSet::EMPTY, |acc, &e| acc.union(g.edge(e)));
        let rest: Vec<u32> = (1..=n).filter(|e| !full.contains(e)).collect();
        for flips in 0u64..1 << singles {
            let mut s = base;
            for (j, &e) in rest.iter().enumerate() {
                s.insert(if flips >> j & 1 == 1 { e + n } else { e });
            }
            out.push(s);
        }
    }
    Ok(out)
}

/// The r-uniform subfamily of the requested kind for `M_n`.
pub fn enumerate_family(n: u32, r: u32, kind: FamilyKind) -> Result<UniformFamily> {
    MatchingGraph::new(n)?;
    if r == 0 || r > 2 * n {
        return Err(param_err!("cardinality r={r} outside 1..=2n={}", 2 * n));
    }
    let mut sets = match kind {
        FamilyKind::Independent => independent_sets(n, r)?,
        FamilyKind::MaxContaining => max_containing_sets(n, r)?,
        // Only one side is nonempty unless r = n, where they coincide.
        FamilyKind::Union if r <= n => independent_sets(n, r)?,
        FamilyKind::Union => max_containing_sets(n, r)?,
    };
    sets.sort_unstable();
    Ok(UniformFamily::from_sorted(2 * n, r, sets))
}

/// All `r`-subsets of `{1, ..., m}`.
pub fn complete_family(m: u32, r: u32) -> Result<UniformFamily> {
    if m == 0 || m > 64 {
        return Err(param_err!("ground size {m} outside 1..=64"));
    }
    if r == 0 || r > m {
        return Err(param_err!("cardinality r={r} outside 1..={m}"));
    }
    let count = binomial(m.into(), r.into());
    ensure_capacity(&count)?;
    let mut sets: Vec<VertexSet> = (1..=m)
        .combinations(r as usize)
        .map(|c| VertexSet::from_vertices(c).expect("labels within 1..=64"))
        .collect();
    sets.sort_unstable();
    Ok(UniformFamily::from_sorted(m, r, sets))
}

/// Members of `fam` containing `v`.
pub fn star(fam: &UniformFamily, v: u32) -> Result<UniformFamily> {
    if v == 0 || v > fam.ground {
        return Err(param_err!("vertex {v} outside 1..={}", fam.ground));
    }
    Ok(fam.filter(|s| s.contains(v)))
}

/// Outcome of a k-wise intersection check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KWiseCheck {
    Yes,
    /// `k` members (repetition allowed) with empty common intersection.
    No {
        witness: Vec<VertexSet>,
    },
}

impl KWiseCheck {
    pub fn is_yes(&self) -> bool {
        matches!(self, KWiseCheck::Yes)
    }
}

/// Searches for at most `k` distinct members of `sets` with empty common
/// intersection, padding the witness to length `k` by repetition.
pub fn k_wise_witness(sets: &[VertexSet], k: usize) -> Option<Vec<VertexSet>> {
    fn descend(
        sets: &[VertexSet],
        start: usize,
        acc: u64,
        k: usize,
        chosen: &mut Vec<VertexSet>,
    ) -> bool {
        for i in start..sets.len() {
            let next = acc & sets[i].bits();
            chosen.push(sets[i]);
            if next == 0 {
                return true;
            }
            if chosen.len() < k && descend(sets, i + 1, next, k, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    if k == 0 {
        return None;
    }
    let mut ordered = sets.to_vec();
    ordered.sort_by_key(|s| (s.len(), *s));
    let mut chosen = Vec::with_capacity(k);
    if descend(&ordered, 0, u64::MAX, k, &mut chosen) {
        let last = *chosen.last().expect("witness is nonempty");
        chosen.resize(k, last);
        Some(chosen)
    } else {
        None
    }
}

pub fn is_k_wise_intersecting(fam: &UniformFamily, k: usize) -> Result<KWiseCheck> {
    if k < 2 {
        return Err(param_err!("k={k} must be at least 2"));
    }
    Ok(match k_wise_witness(&fam.sets, k) {
        None => KWiseCheck::Yes,
        Some(witness) => KWiseCheck::No { witness },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[u32]) -> VertexSet {
        VertexSet::from_vertices(vs.iter().copied()).unwrap()
    }

    #[test]
    fn enumerate_examples() {
        let p33 = enumerate_family(3, 3, FamilyKind::Union).unwrap();
        assert_eq!(p33.len(), 8);
        assert!(p33.sets().iter().all(|s| s.full_edges(3) == 0));
        assert_eq!(enumerate_family(4, 5, FamilyKind::Union).unwrap().len(), 32);
        assert!(matches!(
            enumerate_family(3, 7, FamilyKind::Independent),
            Err(Error::Parameter(_))
        ));
        assert!(enumerate_family(3, 0, FamilyKind::Union).is_err());
        assert!(enumerate_family(33, 1, FamilyKind::Union).is_err());
    }

    #[test]
    fn union_coincides_at_r_equals_n() {
        for n in 1..=5 {
            let i = enumerate_family(n, n, FamilyKind::Independent).unwrap();
            let m = enumerate_family(n, n, FamilyKind::MaxContaining).unwrap();
            let p = enumerate_family(n, n, FamilyKind::Union).unwrap();
            assert_eq!(i, m);
            assert_eq!(i, p);
        }
        assert!(enumerate_family(4, 3, FamilyKind::MaxContaining)
            .unwrap()
            .is_empty());
        assert!(enumerate_family(4, 5, FamilyKind::Independent)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn star_examples() {
        let p33 = enumerate_family(3, 3, FamilyKind::Union).unwrap();
        assert_eq!(star(&p33, 6).unwrap().len(), 4);
        assert!(star(&UniformFamily::empty(6, 3), 2).unwrap().is_empty());
        let p45 = enumerate_family(4, 5, FamilyKind::Union).unwrap();
        assert_eq!(star(&p45, 8).unwrap().len(), 20);
        assert!(star(&p45, 9).is_err());
        assert!(star(&p45, 0).is_err());
    }

    #[test]
    fn k_wise_examples() {
        let p45 = enumerate_family(4, 5, FamilyKind::Union).unwrap();
        let st = star(&p45, 3).unwrap();
        for k in 2..6 {
            assert!(is_k_wise_intersecting(&st, k).unwrap().is_yes());
        }

        let fam = UniformFamily::new(
            6,
            3,
            vec![set(&[1, 2, 6]), set(&[1, 5, 3]), set(&[4, 2, 3])],
        )
        .unwrap();
        assert!(is_k_wise_intersecting(&fam, 2).unwrap().is_yes());
        match is_k_wise_intersecting(&fam, 3).unwrap() {
            KWiseCheck::No { mut witness } => {
                witness.sort();
                assert_eq!(witness, fam.sets());
            }
            KWiseCheck::Yes => panic!("triple intersection is empty"),
        }

        assert!(is_k_wise_intersecting(&UniformFamily::empty(6, 3), 2)
            .unwrap()
            .is_yes());
        assert!(is_k_wise_intersecting(&fam, 1).is_err());
    }

    #[test]
    fn witness_is_padded_to_k() {
        let fam = UniformFamily::new(4, 2, vec![set(&[1, 2]), set(&[3, 4])]).unwrap();
        match is_k_wise_intersecting(&fam, 4).unwrap() {
            KWiseCheck::No { witness } => {
                assert_eq!(witness.len(), 4);
                let meet = witness
                    .iter()
                    .fold(VertexSet::full(4), |a, &s| a.intersection(s));
                assert!(meet.is_empty());
            }
            KWiseCheck::Yes => panic!("disjoint pair"),
        }
    }

    #[test]
    fn new_rejects_malformed_sets() {
        assert!(UniformFamily::new(6, 2, vec![set(&[1, 2, 3])]).is_err());
        assert!(UniformFamily::new(4, 2, vec![set(&[1, 5])]).is_err());
        assert!(UniformFamily::new(4, 2, vec![set(&[1, 2]), set(&[2, 1])]).is_err());
    }

    #[test]
    fn complete_family_sizes() {
        assert_eq!(complete_family(5, 2).unwrap().len(), 10);
        assert_eq!(complete_family(6, 6).unwrap().len(), 1);
        assert!(complete_family(5, 6).is_err());
    }
}
