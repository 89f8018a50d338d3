//! Exact search for maximum k-wise intersecting subfamilies and the
//! extremal checks built on it.

mod bnb;
mod symmetry;
mod verify;

pub use bnb::{
    max_kwise_family, result_is_sound, star_centers_of, SearchMode, SearchProblem, SearchResult,
    MAX_UNIVERSE, MAX_UNIVERSE_ALL_MAXIMUM,
};
pub use symmetry::{canonical_form, orbit_representatives, Symmetry, MAX_GROUP_ORDER};
pub use verify::{
    verify, verify_extremal_characterization, Uniqueness, Universe, VerifyReport, VerifyRequest,
    MAX_CHARACTERIZATION_EDGES,
};
