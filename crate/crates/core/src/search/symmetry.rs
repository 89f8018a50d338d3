//! Vertex relabelings that preserve the universe, orbit representatives and
//! canonical forms of families.

use itertools::Itertools;
use serde::Serialize;

use crate::error::{param_err, Error, Result};
use crate::family::UniformFamily;
use crate::vertex_set::{MatchingGraph, VertexSet};

/// Group elements are materialized, so the group order is capped.
pub const MAX_GROUP_ORDER: usize = 50_000;

/// A symmetry group acting on vertex labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "group", rename_all = "snake_case")]
pub enum Symmetry {
    /// Automorphisms of `M_n`: edge permutations combined with per-edge
    /// endpoint flips, `2^n n!` elements.
    Matching { n: u32 },
    /// All permutations of `{1, ..., ground}`.
    Symmetric { ground: u32 },
}

impl Symmetry {
    pub fn ground(self) -> u32 {
        match self {
            Symmetry::Matching { n } => 2 * n,
            Symmetry::Symmetric { ground } => ground,
        }
    }

    pub fn order(self) -> u128 {
        let fact = |m: u32| (1..=u128::from(m)).product::<u128>();
        match self {
            Symmetry::Matching { n } => (1u128 << n) * fact(n),
            Symmetry::Symmetric { ground } => fact(ground),
        }
    }

    /// Every group element as a map `map[v - 1] = image of v`.
    pub fn elements(self) -> Result<Vec<Vec<u32>>> {
        if self.order() > MAX_GROUP_ORDER as u128 {
            return Err(Error::Capacity(format!(
                "{self:?} has order {} > {MAX_GROUP_ORDER}",
                self.order()
            )));
        }
        Ok(match self {
            Symmetry::Matching { n } => {
                MatchingGraph::new(n)?;
                let nn = n as usize;
                let mut out = Vec::with_capacity(self.order() as usize);
                for perm in (1..=n).permutations(nn) {
                    for flips in 0u64..1 << n {
                        let mut map = vec![0u32; 2 * nn];
                        for e in 0..nn {
                            let (lo, hi) = (perm[e], perm[e] + n);
                            let (a, b) = if flips >> e & 1 == 1 {
                                (hi, lo)
                            } else {
                                (lo, hi)
                            };
                            map[e] = a;
                            map[e + nn] = b;
                        }
                        out.push(map);
                    }
                }
                out
            }
            Symmetry::Symmetric { ground } => {
                if ground == 0 || ground > 64 {
                    return Err(param_err!("ground size {ground} outside 1..=64"));
                }
                (1..=ground).permutations(ground as usize).collect()
            }
        })
    }

    /// Whether every element maps the universe onto itself.
    pub fn preserves(self, universe: &UniformFamily) -> Result<bool> {
        if universe.ground() != self.ground() {
            return Ok(false);
        }
        Ok(self.elements()?.iter().all(|map| {
            universe
                .sets()
                .iter()
                .all(|s| universe.contains(s.relabel(map)))
        }))
    }
}

/// Least image of each universe member under the group; one entry per orbit,
/// returned as indices into the universe in ascending order.
pub fn orbit_representatives(universe: &UniformFamily, group: &[Vec<u32>]) -> Vec<usize> {
    let mut reps: Vec<usize> = universe
        .sets()
        .iter()
        .map(|&s| {
            let least = group.iter().map(|g| s.relabel(g)).min().unwrap_or(s);
            universe
                .index_of(least)
                .expect("symmetry group preserves the universe")
        })
        .collect();
    reps.sort_unstable();
    reps.dedup();
    reps
}

/// Lexicographically least image of `fam` under the automorphisms of `M_n`,
/// comparing the canonically ordered member lists.
pub fn canonical_form(fam: &UniformFamily, n: u32) -> Result<UniformFamily> {
    if fam.ground() != 2 * n {
        return Err(param_err!(
            "family on {} vertices is not over M_{n}",
            fam.ground()
        ));
    }
    let group = Symmetry::Matching { n }.elements()?;
    Ok(canonical_form_with(fam, &group))
}

pub(crate) fn canonical_form_with(fam: &UniformFamily, group: &[Vec<u32>]) -> UniformFamily {
    let mut best: Option<Vec<VertexSet>> = None;
    let mut scratch: Vec<VertexSet> = Vec::with_capacity(fam.len());
    for g in group {
        scratch.clear();
        scratch.extend(fam.sets().iter().map(|s| s.relabel(g)));
        scratch.sort_unstable();
        if best.as_ref().is_none_or(|b| scratch < *b) {
            best = Some(scratch.clone());
        }
    }
    UniformFamily::from_sorted(fam.ground(), fam.r(), best.unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{complete_family, enumerate_family, star, FamilyKind};

    #[test]
    fn group_orders() {
        assert_eq!(Symmetry::Matching { n: 3 }.elements().unwrap().len(), 48);
        assert_eq!(
            Symmetry::Symmetric { ground: 4 }.elements().unwrap().len(),
            24
        );
        assert!(Symmetry::Matching { n: 8 }.elements().is_err());
    }

    #[test]
    fn matching_group_preserves_edges() {
        let g = MatchingGraph::new(3).unwrap();
        for map in (Symmetry::Matching { n: 3 }).elements().unwrap() {
            for e in g.edges() {
                let img = e.relabel(&map);
                assert!(g.edges().any(|f| f == img));
            }
        }
    }

    #[test]
    fn preserves_universes() {
        let p = enumerate_family(3, 4, FamilyKind::Union).unwrap();
        assert!(Symmetry::Matching { n: 3 }.preserves(&p).unwrap());
        let c = complete_family(4, 2).unwrap();
        assert!(Symmetry::Symmetric { ground: 4 }.preserves(&c).unwrap());
        assert!(!Symmetry::Symmetric { ground: 6 }.preserves(&p).unwrap());
    }

    #[test]
    fn orbit_reps() {
        let p = enumerate_family(4, 5, FamilyKind::Union).unwrap();
        let group = Symmetry::Matching { n: 4 }.elements().unwrap();
        assert_eq!(orbit_representatives(&p, &group).len(), 1);
    }

    #[test]
    fn canonical_forms() {
        let p = enumerate_family(3, 3, FamilyKind::Union).unwrap();
        let s5 = star(&p, 5).unwrap();
        let s1 = star(&p, 1).unwrap();
        let c5 = canonical_form(&s5, 3).unwrap();
        assert_eq!(c5, canonical_form(&s1, 3).unwrap());
        assert_eq!(canonical_form(&c5, 3).unwrap(), c5);
        let empty = UniformFamily::empty(6, 3);
        assert_eq!(canonical_form(&empty, 3).unwrap(), empty);
        assert!(canonical_form(&empty, 2).is_err());
    }
}
