//! Extremal checks: run the exact search on a named universe and compare
//! the maximum against its closed-form bound and star characterization.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use super::bnb::{max_kwise_family, SearchMode, SearchProblem, SearchResult};
use super::symmetry::Symmetry;
use crate::bounds::{frankl_bound, theorem_bound};
use crate::error::{param_err, Result};
use crate::family::{complete_family, enumerate_family, FamilyKind, UniformFamily};
use crate::SCHEMA_VERSION;

/// Largest `n` for [`verify_extremal_characterization`].
pub const MAX_CHARACTERIZATION_EDGES: u32 = 4;

/// The universe searched and the bound it is compared against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Universe {
    /// `P^r(M_n)` against the matching bound.
    Matching,
    /// `I^r(M_n)`, `r <= n`, against `2^(r-1) C(n-1, r-1)`.
    Independent,
    /// All `r`-subsets of `{1, ..., n}` against `C(n-1, r-1)`.
    Complete,
}

impl Universe {
    pub fn as_str(self) -> &'static str {
        match self {
            Universe::Matching => "matching",
            Universe::Independent => "independent",
            Universe::Complete => "complete",
        }
    }
}

/// Whether the star characterization was checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Uniqueness {
    Asserted,
    NotAsserted { reason: String },
}

#[derive(Clone, Debug)]
pub struct VerifyRequest {
    pub universe: Universe,
    pub n: u32,
    pub r: u32,
    pub k: usize,
    pub all_maximum: bool,
    pub check_stars: bool,
    pub threads: usize,
}

impl VerifyRequest {
    pub fn new(universe: Universe, n: u32, r: u32, k: usize) -> Self {
        VerifyRequest {
            universe,
            n,
            r,
            k,
            all_maximum: true,
            check_stars: true,
            threads: 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub universe: Universe,
    pub n: u32,
    pub r: u32,
    pub k: usize,
    pub bound_expected: BigUint,
    pub bound_met: bool,
    pub uniqueness: Uniqueness,
    pub result: SearchResult,
    pub passed: bool,
}

/// `k * r` against `(k - 1) * m`: `Less`, `Equal` (boundary) or `Greater`.
fn compare_threshold(k: usize, r: u32, m: u32) -> std::cmp::Ordering {
    let k = k as u64;
    (k * u64::from(r)).cmp(&((k - 1) * u64::from(m)))
}

/// Searches the requested universe and checks the maximum against its
/// bound. The star characterization is asserted when `check_stars` is set,
/// the search enumerates all maxima, and the parameters are strictly inside
/// the range where it is claimed.
pub fn verify(req: &VerifyRequest) -> Result<VerifyReport> {
    let (n, r, k) = (req.n, req.r, req.k);
    if k < 2 {
        return Err(param_err!("k={k} must be at least 2"));
    }
    use std::cmp::Ordering::*;
    let (universe, bound, symmetry, star_claim): (
        UniformFamily,
        BigUint,
        Symmetry,
        std::result::Result<(), String>,
    ) = match req.universe {
        Universe::Matching => {
            let universe = enumerate_family(n, r, FamilyKind::Union)?;
            let claim = match compare_threshold(k, r, 2 * n) {
                Greater => return Err(param_err!("r={r} exceeds (k-1)2n/k for n={n}, k={k}")),
                Equal => Err("boundary: not asserted".to_string()),
                Less => Ok(()),
            };
            (
                universe,
                theorem_bound(n, r)?.value,
                Symmetry::Matching { n },
                claim,
            )
        }
        Universe::Independent => {
            if r > n {
                return Err(param_err!(
                    "independent universe needs r <= n, got n={n}, r={r}"
                ));
            }
            let universe = enumerate_family(n, r, FamilyKind::Independent)?;
            let claim = if r < n {
                Ok(())
            } else {
                Err("boundary: not asserted".to_string())
            };
            (
                universe,
                theorem_bound(n, r)?.value,
                Symmetry::Matching { n },
                claim,
            )
        }
        Universe::Complete => {
            let universe = complete_family(n, r)?;
            if compare_threshold(k, r, n) == Greater {
                return Err(param_err!("r={r} exceeds (k-1)n/k for n={n}, k={k}"));
            }
            (
                universe,
                frankl_bound(n, r)?,
                Symmetry::Symmetric { ground: n },
                Err("bound only: not asserted".to_string()),
            )
        }
    };

    let mode = if req.all_maximum || req.check_stars {
        SearchMode::AllMaximum
    } else {
        SearchMode::OneWitness
    };
    let mut problem = SearchProblem::new(universe, k, mode).with_threads(req.threads);
    if symmetry.order() <= super::symmetry::MAX_GROUP_ORDER as u128 {
        problem = problem.with_symmetry(symmetry);
    }
    let result = max_kwise_family(&problem)?;

    let bound_met = BigUint::from(result.max_size) == bound;
    // Parameters outside the claimed range are flagged even when the star
    // check was not requested.
    let uniqueness = match (star_claim, req.check_stars) {
        (Err(reason), _) => Uniqueness::NotAsserted { reason },
        (Ok(()), false) => Uniqueness::NotAsserted {
            reason: "not requested".to_string(),
        },
        (Ok(()), true) => Uniqueness::Asserted,
    };
    let passed =
        bound_met && (uniqueness != Uniqueness::Asserted || result.all_are_stars == Some(true));
    Ok(VerifyReport {
        universe: req.universe,
        n,
        r,
        k,
        bound_expected: bound,
        bound_met,
        uniqueness,
        result,
        passed,
    })
}

/// Exhaustive check of the matching bound and, strictly below the
/// threshold, of star uniqueness, for `n <= 4` and `n <= r <= (k-1)2n/k`.
pub fn verify_extremal_characterization(n: u32, r: u32, k: usize) -> Result<VerifyReport> {
    if n == 0 || n > MAX_CHARACTERIZATION_EDGES {
        return Err(param_err!(
            "characterization check supports 1 <= n <= {MAX_CHARACTERIZATION_EDGES}, got {n}"
        ));
    }
    if r < n {
        return Err(param_err!(
            "characterization check needs r >= n, got n={n}, r={r}"
        ));
    }
    verify(&VerifyRequest::new(Universe::Matching, n, r, k))
}

fn big_to_json(v: &BigUint) -> Value {
    match v.to_u64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

impl VerifyReport {
    /// Machine-readable form; `explored_nodes` and `elapsed_ms` are the only
    /// run-dependent fields.
    pub fn to_json(&self, include_witnesses: bool) -> Value {
        let res = &self.result;
        let mut obj = json!({
            "schema_version": SCHEMA_VERSION,
            "universe": self.universe.as_str(),
            "n": self.n,
            "r": self.r,
            "k": self.k,
            "max_size": res.max_size,
            "bound_expected": big_to_json(&self.bound_expected),
            "bound_met": self.bound_met,
            "uniqueness": match &self.uniqueness {
                Uniqueness::Asserted => "asserted".to_string(),
                Uniqueness::NotAsserted { reason } => reason.clone(),
            },
            "passed": self.passed,
            "witness_count": res.witnesses.len(),
            "all_are_stars": res.all_are_stars,
            "star_centers": res.star_centers,
            "explored_nodes": res.explored_nodes,
            "elapsed_ms": res.elapsed.as_millis() as u64,
        });
        if include_witnesses {
            let lists: Vec<Vec<Vec<u32>>> = res
                .witnesses
                .iter()
                .map(|w| w.sets().iter().map(|s| s.vertices().collect()).collect())
                .collect();
            obj["witnesses"] = json!(lists);
        }
        obj
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p33_k3() {
        let rep = verify_extremal_characterization(3, 3, 3).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.result.max_size, 4);
        assert_eq!(rep.result.witnesses.len(), 6);
        assert_eq!(rep.uniqueness, Uniqueness::Asserted);
    }

    #[test]
    fn boundary_is_flagged() {
        let rep = verify_extremal_characterization(3, 4, 3).unwrap();
        assert_eq!(rep.result.max_size, 8);
        assert!(rep.bound_met);
        assert!(matches!(rep.uniqueness, Uniqueness::NotAsserted { .. }));
        assert!(rep.passed);
    }

    #[test]
    fn out_of_range() {
        assert!(verify_extremal_characterization(5, 5, 3).is_err());
        assert!(verify_extremal_characterization(3, 2, 3).is_err());
        assert!(verify_extremal_characterization(3, 5, 2).is_err());
        assert!(verify(&VerifyRequest::new(Universe::Independent, 3, 4, 2)).is_err());
        assert!(verify(&VerifyRequest::new(Universe::Complete, 4, 3, 2)).is_err());
    }

    #[test]
    fn json_fields() {
        let rep = verify_extremal_characterization(3, 3, 3).unwrap();
        let j = rep.to_json(true);
        for key in [
            "max_size",
            "bound_expected",
            "bound_met",
            "witness_count",
            "all_are_stars",
            "star_centers",
            "witnesses",
            "explored_nodes",
            "elapsed_ms",
            "schema_version",
        ] {
            assert!(j.get(key).is_some(), "{key}");
        }
        assert_eq!(j["witness_count"], 6);
        assert!(rep.to_json(false).get("witnesses").is_none());
    }
}
