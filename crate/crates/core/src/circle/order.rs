//! Good cyclic orderings of `V(M_n)`.
//!
//! Positions are 1-based on a circle of size `2n`. A good ordering puts
//! partners exactly `n` positions apart; rotations are factored out by
//! pinning vertex `2n` to position `2n`, which pins vertex `n` to position
//! `n` as well.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use itertools::Itertools;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::bounds::good_order_count;
use crate::error::{integrity_err, param_err, Result};
use crate::vertex_set::{MatchingGraph, VertexSet};

/// Largest `n` accepted by [`enumerate_good_orders`].
pub const MAX_ENUMERATION_EDGES: u32 = 8;
/// Largest `n` accepted by [`connectivity_check`].
pub const MAX_CONNECTIVITY_EDGES: u32 = 6;

/// Maps any integer position onto `1..=m`.
pub fn wrap(p: i64, m: u32) -> u32 {
    (p - 1).rem_euclid(i64::from(m)) as u32 + 1
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GoodCyclicOrder {
    n: u32,
    /// `seq[p - 1]` is the vertex at position `p`.
    seq: Vec<u32>,
    /// `pos[v - 1]` is the position of vertex `v`.
    pos: Vec<u32>,
}

impl GoodCyclicOrder {
    /// Validates a position-indexed sequence of all `2n` vertices.
    pub fn new(seq: Vec<u32>) -> Result<Self> {
        let len = seq.len() as u32;
        if len < 2 || !len.is_multiple_of(2) {
            return Err(param_err!(
                "order length {len} is not a positive even number"
            ));
        }
        let n = len / 2;
        let g = MatchingGraph::new(n)?;
        let mut pos = vec![0u32; len as usize];
        for (i, &v) in seq.iter().enumerate() {
            if v == 0 || v > len || pos[v as usize - 1] != 0 {
                return Err(param_err!("sequence is not a permutation of 1..={len}"));
            }
            pos[v as usize - 1] = i as u32 + 1;
        }
        for p in 1..=n {
            if seq[(p + n - 1) as usize] != g.partner(seq[(p - 1) as usize]) {
                return Err(param_err!(
                    "positions {p} and {} do not hold partners",
                    p + n
                ));
            }
        }
        if seq[len as usize - 1] != len {
            return Err(param_err!("vertex {len} must sit at position {len}"));
        }
        Ok(GoodCyclicOrder { n, seq, pos })
    }

    /// Builds the order whose positions `1..n-1` hold `first`; the rest is
    /// forced by the partner rule and the normalization.
    pub(crate) fn from_first_half(n: u32, first: &[u32]) -> Self {
        debug_assert_eq!(first.len() as u32, n - 1);
        let len = 2 * n;
        let mut seq = vec![0u32; len as usize];
        for (i, &v) in first.iter().enumerate() {
            seq[i] = v;
            seq[i + n as usize] = if v > n { v - n } else { v + n };
        }
        seq[n as usize - 1] = n;
        seq[len as usize - 1] = len;
        let mut pos = vec![0u32; len as usize];
        for (i, &v) in seq.iter().enumerate() {
            pos[v as usize - 1] = i as u32 + 1;
        }
        GoodCyclicOrder { n, seq, pos }
    }

    /// The ordering `(1, 2, ..., 2n)`.
    pub fn identity(n: u32) -> Result<Self> {
        MatchingGraph::new(n)?;
        let first: Vec<u32> = (1..n).collect();
        Ok(GoodCyclicOrder::from_first_half(n, &first))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn circle_len(&self) -> u32 {
        2 * self.n
    }

    pub fn seq(&self) -> &[u32] {
        &self.seq
    }

    /// Vertex at a position; positions wrap.
    pub fn vertex_at(&self, p: i64) -> u32 {
        self.seq[wrap(p, self.circle_len()) as usize - 1]
    }

    pub fn position_of(&self, v: u32) -> u32 {
        self.pos[v as usize - 1]
    }

    /// Vertices at positions `start, ..., start + r - 1`.
    pub fn interval(&self, start: u32, r: u32) -> VertexSet {
        (0..r).fold(VertexSet::EMPTY, |mut acc, j| {
            acc.insert(self.vertex_at(i64::from(start) + i64::from(j)));
            acc
        })
    }

    /// All `2n` intervals of length `r`, by start position.
    pub fn intervals(&self, r: u32) -> Result<Vec<(u32, VertexSet)>> {
        if r == 0 || r >= self.circle_len() {
            return Err(param_err!(
                "interval length {r} outside 1..{}",
                self.circle_len()
            ));
        }
        Ok((1..=self.circle_len())
            .map(|p| (p, self.interval(p, r)))
            .collect())
    }

    /// Start position of `s` if it occupies consecutive positions.
    pub fn is_interval(&self, s: VertexSet) -> Option<u32> {
        let m = self.circle_len();
        let r = s.len();
        if r == 0 || r >= m || !s.is_subset(VertexSet::full(m)) {
            return None;
        }
        // The start is the unique member whose predecessor is not a member.
        let mut start = None;
        for v in s.vertices() {
            let p = self.position_of(v);
            if !s.contains(self.vertex_at(i64::from(p) - 1)) {
                if start.is_some() {
                    return None;
                }
                start = Some(p);
            }
        }
        start
    }

    /// The move `T_i`: swap positions `i, i+1` and `i+n, i+n+1`.
    pub fn transpose(&self, i: u32) -> Result<Self> {
        if self.n < 3 || i == 0 || i > self.n - 2 {
            return Err(param_err!(
                "transposition index {i} outside 1..={}",
                self.n as i64 - 2
            ));
        }
        let mut seq = self.seq.clone();
        let (i, n) = (i as usize, self.n as usize);
        seq.swap(i - 1, i);
        seq.swap(i + n - 1, i + n);
        Ok(GoodCyclicOrder::from_seq_unchecked(self.n, seq))
    }

    /// The move `W_i`: exchange positions `i` and `i + n`.
    pub fn swap_halves(&self, i: u32) -> Result<Self> {
        if i == 0 || i >= self.n {
            return Err(param_err!("swap index {i} outside 1..={}", self.n - 1));
        }
        let mut seq = self.seq.clone();
        seq.swap(i as usize - 1, (i + self.n) as usize - 1);
        Ok(GoodCyclicOrder::from_seq_unchecked(self.n, seq))
    }

    fn from_seq_unchecked(n: u32, seq: Vec<u32>) -> Self {
        let mut pos = vec![0u32; seq.len()];
        for (i, &v) in seq.iter().enumerate() {
            pos[v as usize - 1] = i as u32 + 1;
        }
        GoodCyclicOrder { n, seq, pos }
    }

    /// True when positions `1..n-1` only hold vertices from `1..n-1`.
    pub fn in_base_class(&self) -> bool {
        self.seq[..self.n as usize - 1].iter().all(|&v| v < self.n)
    }
}

impl fmt::Display for GoodCyclicOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.seq.iter().join(","))
    }
}

impl fmt::Debug for GoodCyclicOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GoodCyclicOrder({self})")
    }
}

/// Every normalized good ordering of `V(M_n)` exactly once.
///
/// Slots `1..n-1` receive a permutation of the edges `1..n-1`, and one
/// orientation bit per slot picks which endpoint sits in the first half.
pub fn enumerate_good_orders(n: u32) -> Result<impl Iterator<Item = GoodCyclicOrder>> {
    if n == 0 || n > MAX_ENUMERATION_EDGES {
        return Err(param_err!(
            "good-order enumeration supports 1 <= n <= {MAX_ENUMERATION_EDGES}, got {n}"
        ));
    }
    let slots = (n - 1) as usize;
    Ok((1..n).permutations(slots).flat_map(move |perm| {
        (0u32..1 << slots).map(move |flips| {
            let first: Vec<u32> = perm
                .iter()
                .enumerate()
                .map(|(j, &e)| if flips >> j & 1 == 1 { e + n } else { e })
                .collect();
            GoodCyclicOrder::from_first_half(n, &first)
        })
    }))
}

/// A move on normalized good orderings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Move {
    /// `T_i`, `1 <= i <= n - 2`.
    Transpose(u32),
    /// `W_i`, `1 <= i <= n - 1`.
    Swap(u32),
}

impl Move {
    pub fn apply(self, order: &GoodCyclicOrder) -> Result<GoodCyclicOrder> {
        match self {
            Move::Transpose(i) => order.transpose(i),
            Move::Swap(i) => order.swap_halves(i),
        }
    }

    /// `T_1, ..., T_{n-2}` and `W_{n-1}`.
    pub fn generators(n: u32) -> Vec<Move> {
        let mut moves: Vec<Move> = (1..n.saturating_sub(1)).map(Move::Transpose).collect();
        if n >= 2 {
            moves.push(Move::Swap(n - 1));
        }
        moves
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Transpose(i) => write!(f, "T_{i}"),
            Move::Swap(i) => write!(f, "W_{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Connectivity {
    pub n: u32,
    pub orbit_size: u64,
    pub expected: u64,
    pub connected: bool,
}

/// Breadth-first search from the identity under [`Move::generators`].
pub fn connectivity_check(n: u32) -> Result<Connectivity> {
    if n == 0 || n > MAX_CONNECTIVITY_EDGES {
        return Err(param_err!(
            "connectivity check supports 1 <= n <= {MAX_CONNECTIVITY_EDGES}, got {n}"
        ));
    }
    let moves = Move::generators(n);
    let start = GoodCyclicOrder::identity(n)?;
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(start.seq.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(order) = queue.pop_front() {
        for mv in &moves {
            let next = mv.apply(&order)?;
            if seen.insert(next.seq.clone()) {
                queue.push_back(next);
            }
        }
    }
    let expected = good_order_count(n)?.to_u64().expect("n <= 6 fits");
    let orbit_size = seen.len() as u64;
    Ok(Connectivity {
        n,
        orbit_size,
        expected,
        connected: orbit_size == expected,
    })
}

/// Builds a normalized good ordering in which `a` is an interval, for
/// `a` in the star of `P^r(M_n)` at vertex `2n` and `n <= r < 2n`.
///
/// * `r > n`, `n` in `a`: full-edge endpoints then singles fill positions
///   `1..n-1`; `a` runs from position `2n` to `r - 1`.
/// * `r > n`, `n` not in `a`: singles then full-edge endpoints; `a` ends at
///   position `n - 1`.
/// * `r = n`: members below `n` first, then the partners of the members
///   above `n`; `a` ends at position `|a ∩ [n-1]|`.
///
/// Within each group labels are placed in ascending order.
pub fn construct_order_containing(n: u32, r: u32, a: VertexSet) -> Result<GoodCyclicOrder> {
    let g = MatchingGraph::new(n)?;
    if r < n || r >= 2 * n {
        return Err(param_err!(
            "construction needs n <= r < 2n, got n={n}, r={r}"
        ));
    }
    if a.len() != r || !g.in_union_family(a) {
        return Err(param_err!("{{{a}}} is not a member of P^{r}(M_{n})"));
    }
    if !a.contains(2 * n) {
        return Err(param_err!("{{{a}}} does not contain vertex {}", 2 * n));
    }

    let lower_edges = 1..n;
    let first: Vec<u32> = if r > n {
        let full: Vec<u32> = lower_edges
            .clone()
            .filter(|&e| a.contains(e) && a.contains(e + n))
            .collect();
        let singles: Vec<u32> = a
            .vertices()
            .filter(|&v| v != 2 * n && v != n && !a.contains(g.partner(v)))
            .collect();
        if a.contains(n) {
            full.into_iter().chain(singles).collect()
        } else {
            singles.into_iter().chain(full).collect()
        }
    } else {
        let low: Vec<u32> = a.vertices().filter(|&v| v < n).collect();
        let high: Vec<u32> = a
            .vertices()
            .filter(|&v| v > n && v < 2 * n)
            .map(|v| v - n)
            .collect();
        low.into_iter().chain(high).collect()
    };
    if first.len() as u32 != n - 1 {
        return Err(integrity_err!(
            "construction filled {} of {} slots for {{{a}}}",
            first.len(),
            n - 1
        ));
    }
    let order = GoodCyclicOrder::from_first_half(n, &first);
    match order.is_interval(a) {
        Some(_) => Ok(order),
        None => Err(integrity_err!(
            "{{{a}}} is not an interval of constructed order {order}"
        )),
    }
}
