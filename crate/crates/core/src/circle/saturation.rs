//! Saturation of good orderings by a family, and its behaviour under moves.

use serde::Serialize;

use super::interval::{lemma2_common_index, IntervalFamily};
use super::order::{GoodCyclicOrder, Move};
use crate::error::{integrity_err, param_err, Result};
use crate::family::UniformFamily;
use crate::vertex_set::MatchingGraph;

/// How many members of a family are intervals of an ordering, and where
/// they meet when the count is maximal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaturationStatus {
    pub saturated: bool,
    pub member_interval_count: u32,
    pub common_position: Option<u32>,
    pub common_vertex: Option<u32>,
}

/// Counts the members of `fam` that are intervals of `order`.
///
/// With exactly `r` member intervals and `r < (k-1)2n/k` the common
/// position comes from [`lemma2_common_index`]. At the boundary
/// `r = (k-1)2n/k` the member intervals need not share a position; the
/// common position is reported only when they are exactly the intervals
/// through one position.
pub fn saturation(
    order: &GoodCyclicOrder,
    fam: &UniformFamily,
    k: usize,
) -> Result<SaturationStatus> {
    let n = order.n();
    let circle = 2 * n;
    let r = fam.r();
    if k < 2 {
        return Err(param_err!("k={k} must be at least 2"));
    }
    if fam.ground() != circle {
        return Err(param_err!(
            "family lives on {} vertices, the ordering on {circle}",
            fam.ground()
        ));
    }
    if r == 0 || r >= circle {
        return Err(param_err!("set size r={r} outside 1..{circle}"));
    }
    let kk = k as u64;
    let lhs = kk * u64::from(r);
    let rhs = (kk - 1) * u64::from(circle);
    if lhs > rhs {
        return Err(param_err!("r={r} exceeds (k-1)2n/k for n={n}, k={k}"));
    }
    let g = MatchingGraph::new(n)?;
    if let Some(bad) = fam.sets().iter().find(|&&s| !g.in_union_family(s)) {
        return Err(param_err!("{{{bad}}} is not a member of P^{r}(M_{n})"));
    }

    let starts: Vec<u32> = order
        .intervals(r)?
        .into_iter()
        .filter(|&(_, s)| fam.contains(s))
        .map(|(p, _)| p)
        .collect();
    let count = starts.len() as u32;
    if count > r {
        return Err(integrity_err!(
            "{count} member intervals exceed r={r}; the family is not {k}-wise intersecting"
        ));
    }
    if count < r {
        return Ok(SaturationStatus {
            saturated: false,
            member_interval_count: count,
            common_position: None,
            common_vertex: None,
        });
    }

    let arcs = IntervalFamily::new(circle, r, starts)?;
    let common_position = if lhs < rhs {
        Some(lemma2_common_index(&arcs, k)?)
    } else {
        (1..=circle).find(|&x| {
            IntervalFamily::through(circle, r, x).is_ok_and(|t| t.starts() == arcs.starts())
        })
    };
    Ok(SaturationStatus {
        saturated: true,
        member_interval_count: count,
        common_position,
        common_vertex: common_position.map(|p| order.vertex_at(i64::from(p))),
    })
}

/// Saturation before and after one move.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoveCheck {
    pub mv: Move,
    pub before: SaturationStatus,
    pub after: SaturationStatus,
}

/// Applies `mv` to an ordering saturated at vertex `2n` and checks that, if
/// the image is saturated, it is saturated at vertex `2n` too.
///
/// Preconditions: `n <= r < (k-1)2n/k`; for the swap only `W_{n-1}` with
/// `r > n` is accepted.
pub fn saturation_preserved_under_move(
    order: &GoodCyclicOrder,
    mv: Move,
    fam: &UniformFamily,
    k: usize,
) -> Result<MoveCheck> {
    let n = order.n();
    let r = fam.r();
    let kk = k as u64;
    if k < 2 || r < n || kk * u64::from(r) >= (kk - 1) * u64::from(2 * n) {
        return Err(param_err!(
            "move check needs n <= r < (k-1)2n/k, got n={n}, r={r}, k={k}"
        ));
    }
    if let Move::Swap(i) = mv {
        if i != n - 1 || r == n {
            return Err(param_err!(
                "only W_{{n-1}} with r > n is covered, got W_{i} with r={r}"
            ));
        }
    }
    let before = saturation(order, fam, k)?;
    if before.common_vertex != Some(2 * n) {
        return Err(param_err!(
            "ordering {order} is not saturated at vertex {}",
            2 * n
        ));
    }
    let moved = mv.apply(order)?;
    let after = saturation(&moved, fam, k)?;
    if after.saturated && after.common_vertex != Some(2 * n) {
        return Err(integrity_err!(
            "{mv} took {order} to {moved}, saturated at vertex {:?} instead of {}",
            after.common_vertex,
            2 * n
        ));
    }
    Ok(MoveCheck { mv, before, after })
}
