//! Exact branch-and-bound for maximum k-wise intersecting subfamilies.
//!
//! Universe members are indexed in canonical order and a partial family is a
//! bitmask over those indices. Feasibility of an extension is tracked through
//! the intersections of all subfamilies of at most `k - 1` members: a set can
//! join iff it meets every one of them.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::symmetry::{orbit_representatives, Symmetry};
use crate::error::{param_err, Error, Result};
use crate::family::{star, UniformFamily};

pub const MAX_UNIVERSE: usize = 64;
pub const MAX_UNIVERSE_ALL_MAXIMUM: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    MaxSizeOnly,
    OneWitness,
    AllMaximum,
}

#[derive(Clone, Debug)]
pub struct SearchProblem {
    pub universe: UniformFamily,
    pub k: usize,
    pub mode: SearchMode,
    /// Group preserving the universe; used only to pick root branches.
    pub symmetry: Option<Symmetry>,
    /// Worker count; `0` or `1` runs on the calling thread.
    pub threads: usize,
}

impl SearchProblem {
    pub fn new(universe: UniformFamily, k: usize, mode: SearchMode) -> Self {
        SearchProblem {
            universe,
            k,
            mode,
            symmetry: None,
            threads: 1,
        }
    }

    pub fn with_symmetry(mut self, symmetry: Symmetry) -> Self {
        self.symmetry = Some(symmetry);
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub max_size: usize,
    pub witnesses: Vec<UniformFamily>,
    pub all_are_stars: Option<bool>,
    pub star_centers: Option<Vec<u32>>,
    pub explored_nodes: u64,
    pub elapsed: Duration,
}

/// Intersections of subfamilies, tagged with the fewest members producing
/// each one.
#[derive(Clone, Default)]
struct Closure {
    entries: Vec<(u64, usize)>,
}

impl Closure {
    /// Adds `s`, returning the newly created intersections.
    fn extend(&mut self, s: u64, limit: usize) -> Vec<u64> {
        let mut fresh: Vec<(u64, usize)> = vec![(s, 1)];
        for &(mask, count) in &self.entries {
            if count < limit {
                fresh.push((mask & s, count + 1));
            }
        }
        let mut added = Vec::new();
        for (mask, count) in fresh {
            match self.entries.iter_mut().find(|(m, _)| *m == mask) {
                Some(entry) => entry.1 = entry.1.min(count),
                None => {
                    self.entries.push((mask, count));
                    added.push(mask);
                }
            }
        }
        added
    }
}

struct Shared {
    best: AtomicUsize,
}

struct Worker<'a> {
    sets: &'a [u64],
    limit: usize,
    mode: SearchMode,
    shared: &'a Shared,
    nodes: u64,
    local_best: usize,
    found: Vec<u64>,
}

fn filter_candidates(sets: &[u64], mut cand: u64, new_masks: &[u64]) -> u64 {
    let mut out = cand;
    while cand != 0 {
        let j = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        if new_masks.iter().any(|&m| sets[j] & m == 0) {
            out &= !(1u64 << j);
        }
    }
    out
}

impl Worker<'_> {
    fn record(&mut self, members: u64, size: usize) {
        if size > self.local_best || (self.found.is_empty() && size == self.local_best) {
            self.local_best = size;
            self.found.clear();
            self.found.push(members);
            self.shared.best.fetch_max(size, Ordering::Relaxed);
        } else if size == self.local_best && self.mode == SearchMode::AllMaximum {
            self.found.push(members);
        }
    }

    fn pruned(&self, reach: usize) -> bool {
        let global = self.shared.best.load(Ordering::Relaxed);
        if reach < global {
            return true;
        }
        match self.mode {
            SearchMode::AllMaximum => reach < self.local_best,
            _ => !self.found.is_empty() && reach <= self.local_best,
        }
    }

    fn descend(&mut self, members: u64, size: usize, closure: &Closure, cand: u64) {
        self.nodes += 1;
        if self.pruned(size + cand.count_ones() as usize) {
            return;
        }
        if cand == 0 {
            self.record(members, size);
            return;
        }
        let i = cand.trailing_zeros() as usize;
        let rest = cand & !(1u64 << i);

        let mut child = closure.clone();
        let added = child.extend(self.sets[i], self.limit);
        let child_cand = filter_candidates(self.sets, rest, &added);
        self.descend(members | 1u64 << i, size + 1, &child, child_cand);

        self.descend(members, size, closure, rest);
    }
}

struct RootOutcome {
    best: usize,
    found: Vec<u64>,
    nodes: u64,
}

fn run_root(
    sets: &[u64],
    k: usize,
    mode: SearchMode,
    shared: &Shared,
    root: usize,
    allowed: u64,
) -> RootOutcome {
    let mut closure = Closure::default();
    let added = closure.extend(sets[root], k - 1);
    let cand = filter_candidates(sets, allowed & !(1u64 << root), &added);
    let mut worker = Worker {
        sets,
        limit: k - 1,
        mode,
        shared,
        nodes: 0,
        local_best: 0,
        found: Vec::new(),
    };
    worker.descend(1u64 << root, 1, &closure, cand);
    RootOutcome {
        best: worker.local_best,
        found: worker.found,
        nodes: worker.nodes,
    }
}

fn family_from_mask(universe: &UniformFamily, mask: u64) -> UniformFamily {
    let sets = universe.sets();
    let mut picked = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        let j = m.trailing_zeros() as usize;
        m &= m - 1;
        picked.push(sets[j]);
    }
    UniformFamily::from_sorted(universe.ground(), universe.r(), picked)
}

/// Vertices `x` such that `fam` is the whole star of the universe at `x`.
pub fn star_centers_of(universe: &UniformFamily, fam: &UniformFamily) -> Vec<u32> {
    if fam.is_empty() {
        return Vec::new();
    }
    fam.common_vertices()
        .vertices()
        .filter(|&x| star(universe, x).is_ok_and(|s| s.len() == fam.len()))
        .collect()
}

/// Largest k-wise intersecting subfamily of the universe.
///
/// Branches include-first over members in canonical order. Root branches
/// fix the least member of the family, or with a symmetry group one orbit
/// representative that the family must contain; in the latter case
/// witnesses are closed under the group afterwards. Witness lists are sorted
/// so results do not depend on the worker count.
pub fn max_kwise_family(problem: &SearchProblem) -> Result<SearchResult> {
    let start = Instant::now();
    let universe = &problem.universe;
    let k = problem.k;
    if k < 2 {
        return Err(param_err!("k={k} must be at least 2"));
    }
    let m = universe.len();
    if m > MAX_UNIVERSE {
        return Err(Error::Capacity(format!(
            "universe of {m} sets exceeds {MAX_UNIVERSE}"
        )));
    }
    if problem.mode == SearchMode::AllMaximum && m > MAX_UNIVERSE_ALL_MAXIMUM {
        return Err(Error::Capacity(format!(
            "all-maximum search over {m} sets exceeds {MAX_UNIVERSE_ALL_MAXIMUM}"
        )));
    }
    if m == 0 {
        return Ok(SearchResult {
            max_size: 0,
            witnesses: if problem.mode == SearchMode::MaxSizeOnly {
                Vec::new()
            } else {
                vec![UniformFamily::empty(universe.ground(), universe.r())]
            },
            all_are_stars: None,
            star_centers: None,
            explored_nodes: 1,
            elapsed: start.elapsed(),
        });
    }

    let sets: Vec<u64> = universe.sets().iter().map(|s| s.bits()).collect();
    let full: u64 = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };

    let group = match problem.symmetry {
        Some(sym) => {
            if !sym.preserves(universe)? {
                return Err(param_err!("{sym:?} does not preserve the universe"));
            }
            Some(sym.elements()?)
        }
        None => None,
    };
    // (root index, members allowed besides the root)
    let roots: Vec<(usize, u64)> = match &group {
        Some(g) => orbit_representatives(universe, g)
            .into_iter()
            .map(|i| (i, full))
            .collect(),
        None => (0..m)
            .map(|i| (i, full & !((1u64 << i) | ((1u64 << i) - 1))))
            .collect(),
    };

    // Stars are k-wise intersecting, so the largest one is a valid floor.
    let floor = (1..=universe.ground())
        .map(|x| universe.sets().iter().filter(|s| s.contains(x)).count())
        .max()
        .unwrap_or(0);
    let shared = Shared {
        best: AtomicUsize::new(floor),
    };

    let run =
        |&(root, allowed): &(usize, u64)| run_root(&sets, k, problem.mode, &shared, root, allowed);
    let outcomes: Vec<RootOutcome> = if problem.threads <= 1 {
        roots.iter().map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(problem.threads)
            .build()
            .map_err(|e| param_err!("cannot start {} workers: {e}", problem.threads))?;
        pool.install(|| roots.par_iter().map(run).collect())
    };

    let max_size = outcomes.iter().map(|o| o.best).max().unwrap_or(0);
    let explored_nodes = outcomes.iter().map(|o| o.nodes).sum();
    let winners = outcomes
        .iter()
        .filter(|o| o.best == max_size && !o.found.is_empty());

    let mut witnesses: Vec<UniformFamily> = match problem.mode {
        SearchMode::AllMaximum => winners
            .flat_map(|o| o.found.iter())
            .map(|&mask| family_from_mask(universe, mask))
            .collect(),
        _ => winners
            .take(1)
            .map(|o| family_from_mask(universe, o.found[0]))
            .collect(),
    };
    if let (SearchMode::AllMaximum, Some(g)) = (problem.mode, &group) {
        witnesses = witnesses
            .iter()
            .flat_map(|w| g.iter().map(move |map| w.relabel(map)))
            .collect();
    }
    witnesses.sort_by(|a, b| a.sets().cmp(b.sets()));
    witnesses.dedup();

    let (all_are_stars, star_centers) = if witnesses.is_empty() {
        (None, None)
    } else {
        let mut centers: Vec<u32> = Vec::new();
        let mut all = true;
        for w in &witnesses {
            let c = star_centers_of(universe, w);
            all &= !c.is_empty();
            centers.extend(c);
        }
        centers.sort_unstable();
        centers.dedup();
        (Some(all), Some(centers))
    };
    if problem.mode == SearchMode::MaxSizeOnly {
        witnesses.clear();
    }

    Ok(SearchResult {
        max_size,
        all_are_stars: if problem.mode == SearchMode::MaxSizeOnly {
            None
        } else {
            all_are_stars
        },
        star_centers: if problem.mode == SearchMode::MaxSizeOnly {
            None
        } else {
            star_centers
        },
        witnesses,
        explored_nodes,
        elapsed: start.elapsed(),
    })
}

/// Every witness is k-wise intersecting, distinct and of the reported size.
pub fn result_is_sound(result: &SearchResult, k: usize) -> bool {
    use crate::family::is_k_wise_intersecting;
    let distinct = result.witnesses.windows(2).all(|w| w[0] != w[1]);
    distinct
        && result.witnesses.iter().all(|w| {
            w.len() == result.max_size && is_k_wise_intersecting(w, k).is_ok_and(|c| c.is_yes())
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{complete_family, enumerate_family, FamilyKind};
    use crate::vertex_set::VertexSet;

    #[test]
    fn closure_tracks_small_intersections() {
        let mut c = Closure::default();
        c.extend(0b0111, 2);
        let added = c.extend(0b1100, 2);
        assert!(added.contains(&0b1100));
        assert!(added.contains(&0b0100));
        // Third member only pairs with singletons when limit is 2.
        let added = c.extend(0b0101, 2);
        assert!(added.contains(&0b0101));
        assert!(!added.contains(&0b0100));
        assert!(c.entries.iter().all(|&(_, n)| n <= 2));
    }

    #[test]
    fn p33_all_maximum_gives_six_stars() {
        let u = enumerate_family(3, 3, FamilyKind::Union).unwrap();
        let res = max_kwise_family(&SearchProblem::new(u, 3, SearchMode::AllMaximum)).unwrap();
        assert_eq!(res.max_size, 4);
        assert_eq!(res.witnesses.len(), 6);
        assert_eq!(res.all_are_stars, Some(true));
        assert_eq!(res.star_centers, Some(vec![1, 2, 3, 4, 5, 6]));
        assert!(result_is_sound(&res, 3));
    }

    #[test]
    fn ekr_boundary_has_non_star_maxima() {
        let u = complete_family(4, 2).unwrap();
        let res = max_kwise_family(&SearchProblem::new(u, 2, SearchMode::AllMaximum)).unwrap();
        assert_eq!(res.max_size, 3);
        assert_eq!(res.all_are_stars, Some(false));
        let triangle = UniformFamily::new(
            4,
            2,
            [[1, 2], [1, 3], [2, 3]]
                .iter()
                .map(|p| VertexSet::from_vertices(p.iter().copied()).unwrap())
                .collect(),
        )
        .unwrap();
        assert!(res.witnesses.contains(&triangle));
    }

    #[test]
    fn symmetry_and_threads_do_not_change_results() {
        let u = enumerate_family(3, 4, FamilyKind::Union).unwrap();
        let base =
            max_kwise_family(&SearchProblem::new(u.clone(), 3, SearchMode::AllMaximum)).unwrap();
        let sym = max_kwise_family(
            &SearchProblem::new(u.clone(), 3, SearchMode::AllMaximum)
                .with_symmetry(Symmetry::Matching { n: 3 })
                .with_threads(3),
        )
        .unwrap();
        assert_eq!(base.max_size, 8);
        assert_eq!(base.witnesses, sym.witnesses);
        for mode in [SearchMode::OneWitness, SearchMode::MaxSizeOnly] {
            let a = max_kwise_family(&SearchProblem::new(u.clone(), 3, mode)).unwrap();
            let b =
                max_kwise_family(&SearchProblem::new(u.clone(), 3, mode).with_threads(4)).unwrap();
            assert_eq!(a.max_size, b.max_size);
            assert_eq!(a.witnesses, b.witnesses);
        }
    }

    #[test]
    fn parameter_and_capacity_errors() {
        let u = enumerate_family(3, 3, FamilyKind::Union).unwrap();
        assert!(matches!(
            max_kwise_family(&SearchProblem::new(u, 1, SearchMode::OneWitness)),
            Err(Error::Parameter(_))
        ));
        let big = enumerate_family(5, 4, FamilyKind::Union).unwrap();
        assert_eq!(big.len(), 80);
        assert!(matches!(
            max_kwise_family(&SearchProblem::new(big, 2, SearchMode::OneWitness)),
            Err(Error::Capacity(_))
        ));
        let mid = complete_family(8, 3).unwrap();
        assert!(matches!(
            max_kwise_family(&SearchProblem::new(mid, 2, SearchMode::AllMaximum)),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn empty_universe() {
        let res = max_kwise_family(&SearchProblem::new(
            UniformFamily::empty(6, 3),
            2,
            SearchMode::AllMaximum,
        ))
        .unwrap();
        assert_eq!(res.max_size, 0);
        assert_eq!(res.witnesses.len(), 1);
    }
}
