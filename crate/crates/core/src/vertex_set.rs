//! Vertex sets of the perfect matching `M_n` as 64-bit masks.
//!
//! Vertex `v` (1-based) lives at bit `v - 1`, so `M_n` fits whenever
//! `2n <= 64`. Edge `i` is the pair `{i, i + n}`.

use std::fmt;

use crate::error::{param_err, Result};

/// Largest supported edge count; `2 * MAX_EDGES` vertices fill a `u64`.
pub const MAX_EDGES: u32 = 32;

/// A subset of `{1, ..., 64}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Builds a set from 1-based labels. Labels outside `1..=64` are rejected.
    pub fn from_vertices<I: IntoIterator<Item = u32>>(vertices: I) -> Result<Self> {
        let mut bits = 0u64;
        for v in vertices {
            if !(1..=64).contains(&v) {
                return Err(param_err!("vertex label {v} outside 1..=64"));
            }
            bits |= 1u64 << (v - 1);
        }
        Ok(VertexSet(bits))
    }

    /// The set `{1, ..., m}`.
    pub fn full(m: u32) -> Self {
        debug_assert!(m <= 64);
        if m == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << m) - 1)
        }
    }

    pub fn singleton(v: u32) -> Self {
        debug_assert!((1..=64).contains(&v));
        VertexSet(1u64 << (v - 1))
    }

    pub fn contains(self, v: u32) -> bool {
        (1..=64).contains(&v) && self.0 >> (v - 1) & 1 == 1
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Complement inside the ground set `{1, ..., ground}`.
    pub fn complement(self, ground: u32) -> Self {
        VertexSet(!self.0 & VertexSet::full(ground).0)
    }

    pub fn insert(&mut self, v: u32) {
        debug_assert!((1..=64).contains(&v));
        self.0 |= 1u64 << (v - 1);
    }

    /// Members in ascending order.
    pub fn vertices(self) -> impl Iterator<Item = u32> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let v = bits.trailing_zeros() + 1;
            bits &= bits - 1;
            Some(v)
        })
    }

    /// Number of edges of `M_n` with both endpoints in the set.
    pub fn full_edges(self, n: u32) -> u32 {
        let low = self.0 & VertexSet::full(n).0;
        let high = self.0 >> n;
        (low & high).count_ones()
    }

    /// Applies a relabeling given as `map[v - 1] = image of v`.
    pub fn relabel(self, map: &[u32]) -> Self {
        let mut out = 0u64;
        for v in self.vertices() {
            out |= 1u64 << (map[v as usize - 1] - 1);
        }
        VertexSet(out)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.vertices()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self.vertices() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// The perfect matching `M_n` on vertices `1..=2n` with edges `{i, i + n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MatchingGraph {
    n: u32,
}

impl MatchingGraph {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 || n > MAX_EDGES {
            return Err(param_err!("edge count n={n} outside 1..={MAX_EDGES}"));
        }
        Ok(MatchingGraph { n })
    }

    pub fn n(self) -> u32 {
        self.n
    }

    pub fn vertex_count(self) -> u32 {
        2 * self.n
    }

    /// Independence number; one endpoint per edge.
    pub fn independence_number(self) -> u32 {
        self.n
    }

    pub fn partner(self, v: u32) -> u32 {
        debug_assert!((1..=2 * self.n).contains(&v));
        if v > self.n {
            v - self.n
        } else {
            v + self.n
        }
    }

    /// Edge `i` (1-based) as a two-element set.
    pub fn edge(self, i: u32) -> VertexSet {
        debug_assert!((1..=self.n).contains(&i));
        VertexSet::singleton(i).union(VertexSet::singleton(i + self.n))
    }

    pub fn edges(self) -> impl Iterator<Item = VertexSet> {
        (1..=self.n).map(move |i| self.edge(i))
    }

    pub fn vertices(self) -> VertexSet {
        VertexSet::full(2 * self.n)
    }

    pub fn is_independent(self, s: VertexSet) -> bool {
        s.full_edges(self.n) == 0
    }

    /// True when `s` contains an independent set of size `n`, i.e. it meets
    /// every edge.
    pub fn contains_maximum_independent(self, s: VertexSet) -> bool {
        let low = s.bits() & VertexSet::full(self.n).bits();
        let high = s.bits() >> self.n;
        (low | high) == VertexSet::full(self.n).bits()
    }

    /// Membership in `P(M_n)`: independent or containing a maximum
    /// independent set.
    pub fn in_union_family(self, s: VertexSet) -> bool {
        s.is_subset(self.vertices())
            && (self.is_independent(s) || self.contains_maximum_independent(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_and_partners() {
        let g = MatchingGraph::new(3).unwrap();
        let edges: Vec<String> = g.edges().map(|e| e.to_string()).collect();
        assert_eq!(edges, ["1,4", "2,5", "3,6"]);
        for v in 1..=6 {
            assert_eq!(g.partner(g.partner(v)), v);
            assert_ne!(g.partner(v), v);
        }
        assert_eq!(g.independence_number(), 3);
    }

    #[test]
    fn full_edges_and_independence() {
        let g = MatchingGraph::new(3).unwrap();
        let s = VertexSet::from_vertices([1, 4, 2]).unwrap();
        assert_eq!(s.full_edges(3), 1);
        assert!(!g.is_independent(s));
        assert!(!g.contains_maximum_independent(s));
        assert!(!g.in_union_family(s));
        let t = VertexSet::from_vertices([1, 2, 3, 4]).unwrap();
        assert!(g.contains_maximum_independent(t));
        assert!(g.in_union_family(t));
    }

    #[test]
    fn set_algebra() {
        let a = VertexSet::from_vertices([1, 3, 5]).unwrap();
        let b = VertexSet::from_vertices([3, 4]).unwrap();
        assert_eq!(a.union(b).to_string(), "1,3,4,5");
        assert_eq!(a.intersection(b).to_string(), "3");
        assert_eq!(a.complement(6).to_string(), "2,4,6");
        assert_eq!(VertexSet::full(64).len(), 64);
        assert!(VertexSet::from_vertices([0]).is_err());
        assert!(VertexSet::from_vertices([65]).is_err());
    }

    #[test]
    fn rejects_bad_edge_counts() {
        assert!(MatchingGraph::new(0).is_err());
        assert!(MatchingGraph::new(33).is_err());
        assert!(MatchingGraph::new(32).is_ok());
    }
}
