//! Families of arcs on a discrete circle and the index-assignment procedure
//! that bounds k-wise intersecting arc families.
//!
//! The circle has `N` positions `1..=N`. An arc of length `r` starting at
//! `x` covers `x, x+1, ..., x+r-1` (wrapping). Its complement is the arc of
//! length `N - r` that ends at `x - 1`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::order::wrap;
use crate::error::{integrity_err, param_err, Result};
use crate::family::k_wise_witness;
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntervalFamily {
    circle: u32,
    len: u32,
    starts: BTreeSet<u32>,
}

impl IntervalFamily {
    pub fn new(circle: u32, len: u32, starts: impl IntoIterator<Item = u32>) -> Result<Self> {
        if !(2..=64).contains(&circle) {
            return Err(param_err!("circle size {circle} outside 2..=64"));
        }
        if len == 0 || len >= circle {
            return Err(param_err!("arc length {len} outside 1..{circle}"));
        }
        let starts: BTreeSet<u32> = starts.into_iter().collect();
        if let Some(bad) = starts.iter().find(|&&s| s == 0 || s > circle) {
            return Err(param_err!("start {bad} outside 1..={circle}"));
        }
        Ok(IntervalFamily {
            circle,
            len,
            starts,
        })
    }

    pub fn circle(&self) -> u32 {
        self.circle
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn starts(&self) -> &BTreeSet<u32> {
        &self.starts
    }

    pub fn size(&self) -> usize {
        self.starts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.starts.is_empty()
    }

    /// All arcs of this length that cover position `x`.
    pub fn through(circle: u32, len: u32, x: u32) -> Result<Self> {
        let starts = (0..len).map(|j| wrap(i64::from(x) - i64::from(j), circle));
        IntervalFamily::new(circle, len, starts)
    }

    /// Arcs as position sets.
    pub fn as_sets(&self) -> Vec<VertexSet> {
        self.starts
            .iter()
            .map(|&s| arc(self.circle, s, self.len))
            .collect()
    }

    pub fn is_k_wise_intersecting(&self, k: usize) -> bool {
        k_wise_witness(&self.as_sets(), k).is_none()
    }
}

/// Positions `start, ..., start + len - 1` on a circle of size `circle`.
pub fn arc(circle: u32, start: u32, len: u32) -> VertexSet {
    (0..len).fold(VertexSet::EMPTY, |mut acc, j| {
        acc.insert(wrap(i64::from(start) + i64::from(j), circle));
        acc
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AssignmentOutcome {
    /// Every residue class keeps an unassigned index, so the family has at
    /// most `r` members.
    Bounded,
    /// A fully assigned residue class: the complements of these arcs
    /// (original start positions, repetition allowed) cover the circle.
    CoveringWitness { starts: Vec<u32> },
}

/// Full trace of one run of [`lemma1_assign`].
///
/// Indices run over `1..=k(N - r)`; `assigned` and `normalized_starts` use
/// the rotated labeling in which the distinguished complement ends at `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssignmentReport {
    pub circle: u32,
    pub len: u32,
    pub k: usize,
    /// Rotation added to every original position.
    pub shift: u32,
    pub normalized_starts: Vec<u32>,
    /// Index to the normalized start of the arc whose complement owns it.
    pub assigned: BTreeMap<u32, u32>,
    pub unassigned: Vec<u32>,
    /// Indices grouped by residue mod `N - r`.
    pub classes: Vec<Vec<u32>>,
    pub outcome: AssignmentOutcome,
}

impl AssignmentReport {
    /// Complements of the witness arcs, in original positions.
    pub fn witness_complements(&self) -> Option<Vec<VertexSet>> {
        match &self.outcome {
            AssignmentOutcome::Bounded => None,
            AssignmentOutcome::CoveringWitness { starts } => Some(
                starts
                    .iter()
                    .map(|&s| {
                        arc(
                            self.circle,
                            wrap(i64::from(s) + i64::from(self.len), self.circle),
                            self.circle - self.len,
                        )
                    })
                    .collect(),
            ),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::json!({
            "N": self.circle,
            "r": self.len,
            "k": self.k,
            "outcome": match self.outcome {
                AssignmentOutcome::Bounded => "bounded",
                AssignmentOutcome::CoveringWitness { .. } => "covering_witness",
            },
            "unassigned": self.unassigned,
        });
        if let Some(cover) = self.witness_complements() {
            let lists: Vec<Vec<u32>> = cover.iter().map(|s| s.vertices().collect()).collect();
            obj["witness"] = serde_json::json!(lists);
        }
        obj
    }
}

/// Runs the complement index-assignment on an arc family.
///
/// The complement with the largest end position is distinguished and the
/// circle is rotated so that it ends at `N`. Every other complement is
/// assigned its end index; the distinguished one takes all of
/// `N..=k(N - r)`. A residue class mod `N - r` with every index assigned
/// yields `k` complements covering the circle; otherwise the family has at
/// most `r` arcs.
pub fn lemma1_assign(fam: &IntervalFamily, k: usize) -> Result<AssignmentReport> {
    let (circle, len) = (fam.circle, fam.len);
    if k < 2 {
        return Err(param_err!("k={k} must be at least 2"));
    }
    if fam.is_empty() {
        return Err(param_err!("assignment needs a nonempty family"));
    }
    let kk = k as u64;
    if kk * u64::from(len) > (kk - 1) * u64::from(circle) {
        return Err(param_err!(
            "arc length {len} exceeds (k-1)N/k for N={circle}, k={k}"
        ));
    }
    let gap = circle - len;
    let last_index = k as u32 * gap;

    let end_of = |start: u32| wrap(i64::from(start) - 1, circle);
    let distinguished = *fam
        .starts
        .iter()
        .max_by_key(|&&s| end_of(s))
        .expect("nonempty");
    let shift = circle - end_of(distinguished);
    let normalize = |p: u32| wrap(i64::from(p) + i64::from(shift), circle);

    let mut normalized_starts: Vec<u32> = fam.starts.iter().map(|&s| normalize(s)).collect();
    normalized_starts.sort_unstable();
    let g_start = normalize(distinguished);
    debug_assert_eq!(g_start, 1);

    let mut assigned = BTreeMap::new();
    for &s in &normalized_starts {
        if s != g_start {
            assigned.insert(wrap(i64::from(s) - 1, circle), s);
        }
    }
    for idx in circle..=last_index {
        assigned.insert(idx, g_start);
    }
    let unassigned: Vec<u32> = (1..=last_index)
        .filter(|i| !assigned.contains_key(i))
        .collect();
    let classes: Vec<Vec<u32>> = (1..=gap)
        .map(|c| (0..k as u32).map(|j| c + j * gap).collect())
        .collect();

    let full_class = classes
        .iter()
        .find(|class| class.iter().all(|i| assigned.contains_key(i)));
    let outcome = match full_class {
        Some(class) => {
            let starts: Vec<u32> = class
                .iter()
                .map(|i| wrap(i64::from(assigned[i]) - i64::from(shift), circle))
                .collect();
            AssignmentOutcome::CoveringWitness { starts }
        }
        None => AssignmentOutcome::Bounded,
    };

    let report = AssignmentReport {
        circle,
        len,
        k,
        shift,
        normalized_starts,
        assigned,
        unassigned,
        classes,
        outcome,
    };
    match report.witness_complements() {
        Some(cover) => {
            let union = cover.iter().fold(VertexSet::EMPTY, |acc, &s| acc.union(s));
            if union != VertexSet::full(circle) {
                return Err(integrity_err!(
                    "witness complements miss positions {{{}}}",
                    union.complement(circle)
                ));
            }
        }
        None => {
            if fam.size() > len as usize {
                return Err(integrity_err!(
                    "bounded outcome with {} arcs of length {len}",
                    fam.size()
                ));
            }
        }
    }
    Ok(report)
}

/// For a k-wise intersecting family of exactly `r` arcs of length
/// `r < (k-1)N/k`, returns the position shared by all of them; the family
/// is then exactly the set of arcs through that position.
///
/// The unassigned indices of the assignment must form the block
/// `[x, x + N - r - 1]`; `x` (mapped back to original positions) is the
/// common position. Any deviation is an integrity error.
pub fn lemma2_common_index(fam: &IntervalFamily, k: usize) -> Result<u32> {
    let (circle, len) = (fam.circle, fam.len);
    if k < 2 {
        return Err(param_err!("k={k} must be at least 2"));
    }
    if fam.size() != len as usize {
        return Err(param_err!(
            "family has {} arcs, the common-index extraction needs exactly r={len}",
            fam.size()
        ));
    }
    let kk = k as u64;
    if kk * u64::from(len) >= (kk - 1) * u64::from(circle) {
        return Err(param_err!(
            "arc length {len} must be strictly below (k-1)N/k for N={circle}, k={k}"
        ));
    }
    let report = lemma1_assign(fam, k)?;
    if let AssignmentOutcome::CoveringWitness { starts } = &report.outcome {
        return Err(integrity_err!(
            "family is not {k}-wise intersecting: arcs {starts:?}"
        ));
    }
    let gap = circle - len;
    let x = *report
        .unassigned
        .first()
        .ok_or_else(|| integrity_err!("no unassigned index"))?;
    let expected: Vec<u32> = (x..x + gap).collect();
    if report.unassigned != expected {
        return Err(integrity_err!(
            "unassigned indices {:?} are not a block of length {gap}",
            report.unassigned
        ));
    }
    let common = wrap(i64::from(x) - i64::from(report.shift), circle);
    let through = IntervalFamily::through(circle, len, common)?;
    if through.starts != fam.starts {
        return Err(integrity_err!(
            "family {:?} is not the set of arcs through position {common}",
            fam.starts
        ));
    }
    Ok(common)
}
