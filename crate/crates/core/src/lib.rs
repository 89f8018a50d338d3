//! Exact combinatorial engine for k-wise intersecting families of vertex
//! sets in the perfect matching `M_n`.
//!
//! The crate is organised in four layers:
//!
//! * [`vertex_set`], [`family`] and [`bounds`]: the matching graph, the
//!   uniform families of independent and maximum-independent-set-containing
//!   vertex sets, k-wise intersection checks and the closed-form bounds in
//!   exact integer arithmetic.
//! * [`circle`]: good cyclic orderings of `V(M_n)`, their intervals, the
//!   index-assignment procedure on interval families, saturation analysis
//!   and the transposition/swap moves.
//! * [`search`]: branch-and-bound search for maximum k-wise intersecting
//!   subfamilies, automorphism-based canonical forms and extremal
//!   verification reports.
//! * [`io`]: the line and JSON serializations of families and orders.
//! * [`fuzz`]: seeded random trials of the arc-family procedures.

pub mod bounds;
pub mod circle;
pub mod error;
pub mod family;
pub mod fuzz;
pub mod io;
pub mod search;
pub mod vertex_set;

pub use error::{Error, Result};
pub use family::{FamilyKind, KWiseCheck, UniformFamily};
pub use vertex_set::{MatchingGraph, VertexSet};

/// Version tag carried by every machine-readable report.
pub const SCHEMA_VERSION: u32 = 1;
