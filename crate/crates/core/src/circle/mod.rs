//! Cyclic-order machinery: good orderings of `V(M_n)`, arc families on a
//! circle, the index-assignment procedure, saturation and moves.

mod interval;
mod order;
mod saturation;

pub use interval::{
    arc, lemma1_assign, lemma2_common_index, AssignmentOutcome, AssignmentReport, IntervalFamily,
};
pub use order::{
    connectivity_check, construct_order_containing, enumerate_good_orders, wrap, Connectivity,
    GoodCyclicOrder, Move, MAX_CONNECTIVITY_EDGES, MAX_ENUMERATION_EDGES,
};
pub use saturation::{saturation, saturation_preserved_under_move, MoveCheck, SaturationStatus};
