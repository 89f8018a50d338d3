//! Seeded random trials for the arc-family procedures.
//!
//! Instances are drawn from a ChaCha8 stream seeded by the caller, so a
//! `(lemma, trials, seed)` triple always replays the same sequence.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::circle::{arc, lemma1_assign, lemma2_common_index, AssignmentOutcome, IntervalFamily};
use crate::error::{param_err, Result};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma {
    /// `|F| <= r` via [`lemma1_assign`].
    Bound,
    /// Common position via [`lemma2_common_index`].
    CommonIndex,
}

impl Lemma {
    pub fn number(self) -> u8 {
        match self {
            Lemma::Bound => 1,
            Lemma::CommonIndex => 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FuzzConfig {
    pub lemma: Lemma,
    /// Conforming instances to check.
    pub trials: usize,
    pub seed: u64,
    /// Largest circle size drawn.
    pub max_circle: u32,
    /// Keep every drawn instance in the summary.
    pub record: bool,
}

impl FuzzConfig {
    pub fn new(lemma: Lemma, trials: usize, seed: u64) -> Self {
        FuzzConfig {
            lemma,
            trials,
            seed,
            max_circle: 12,
            record: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzInstance {
    #[serde(rename = "N")]
    pub circle: u32,
    pub r: u32,
    pub k: usize,
    pub starts: Vec<u32>,
    pub conforming: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub draw: usize,
    pub instance: FuzzInstance,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzSummary {
    pub lemma: u8,
    pub trials: usize,
    pub seed: u64,
    pub draws: usize,
    pub conforming: usize,
    pub nonconforming: usize,
    pub witnesses_checked: usize,
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instances: Option<Vec<FuzzInstance>>,
}

fn random_subset(rng: &mut ChaCha8Rng, pool: &[u32]) -> Vec<u32> {
    let p: f64 = rng.gen_range(0.1..0.9);
    let mut out: Vec<u32> = pool.iter().copied().filter(|_| rng.gen_bool(p)).collect();
    if out.is_empty() {
        out.push(*pool.choose(rng).expect("nonempty pool"));
    }
    out
}

fn draw_bound_instance(rng: &mut ChaCha8Rng, max_circle: u32) -> (u32, u32, usize, Vec<u32>) {
    let k = rng.gen_range(2..=5usize);
    let circle = rng.gen_range(3..=max_circle);
    let r_max = ((k as u32 - 1) * circle) / k as u32;
    let r = rng.gen_range(1..=r_max);
    let all: Vec<u32> = (1..=circle).collect();
    let starts = if rng.gen_bool(0.5) {
        let x = rng.gen_range(1..=circle);
        let through: Vec<u32> = IntervalFamily::through(circle, r, x)
            .expect("valid parameters")
            .starts()
            .iter()
            .copied()
            .collect();
        let mut s = random_subset(rng, &through);
        if rng.gen_bool(0.5) {
            for _ in 0..rng.gen_range(1..=2) {
                s.push(*all.choose(rng).expect("nonempty"));
            }
        }
        s
    } else {
        random_subset(rng, &all)
    };
    (circle, r, k, starts)
}

fn draw_common_index_instance(
    rng: &mut ChaCha8Rng,
    max_circle: u32,
) -> (u32, u32, usize, Vec<u32>) {
    let k = rng.gen_range(2..=5usize);
    let circle = rng.gen_range(3..=max_circle);
    // Largest r with k r < (k-1) N.
    let r_max = ((k as u32 - 1) * circle - 1) / k as u32;
    let r = rng.gen_range(1..=r_max);
    let all: Vec<u32> = (1..=circle).collect();
    let x = rng.gen_range(1..=circle);
    let mut starts: Vec<u32> = IntervalFamily::through(circle, r, x)
        .expect("valid parameters")
        .starts()
        .iter()
        .copied()
        .collect();
    match rng.gen_range(0..3) {
        0 => {}
        1 => {
            let outside: Vec<u32> = all
                .iter()
                .copied()
                .filter(|s| !starts.contains(s))
                .collect();
            if let Some(&replacement) = outside.choose(rng) {
                let slot = rng.gen_range(0..starts.len());
                starts[slot] = replacement;
            }
        }
        _ => {
            starts = all.choose_multiple(rng, r as usize).copied().collect();
        }
    }
    (circle, r, k, starts)
}

/// Brute-force check that `k` complements of arcs cover the circle.
fn complements_cover(circle: u32, len: u32, starts: &[u32]) -> bool {
    starts.iter().fold(VertexSet::EMPTY, |acc, &s| {
        acc.union(arc(circle, s, len).complement(circle))
    }) == VertexSet::full(circle)
}

/// Position contained in every arc, by direct enumeration.
fn brute_common_positions(circle: u32, len: u32, starts: &[u32]) -> Vec<u32> {
    let meet = starts.iter().fold(VertexSet::full(circle), |acc, &s| {
        acc.intersection(arc(circle, s, len))
    });
    meet.vertices().collect()
}

pub fn run_fuzz(cfg: &FuzzConfig) -> Result<FuzzSummary> {
    if cfg.trials == 0 {
        return Err(param_err!("trials must be at least 1"));
    }
    if cfg.max_circle < 3 || cfg.max_circle > 64 {
        return Err(param_err!("max circle {} outside 3..=64", cfg.max_circle));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut summary = FuzzSummary {
        lemma: cfg.lemma.number(),
        trials: cfg.trials,
        seed: cfg.seed,
        draws: 0,
        conforming: 0,
        nonconforming: 0,
        witnesses_checked: 0,
        violations: Vec::new(),
        instances: cfg.record.then(Vec::new),
    };
    let max_draws = cfg.trials.saturating_mul(1000);

    while summary.conforming < cfg.trials && summary.draws < max_draws {
        let draw = summary.draws;
        summary.draws += 1;
        let (circle, len, k, starts) = match cfg.lemma {
            Lemma::Bound => draw_bound_instance(&mut rng, cfg.max_circle),
            Lemma::CommonIndex => draw_common_index_instance(&mut rng, cfg.max_circle),
        };
        let fam = IntervalFamily::new(circle, len, starts)?;
        let conforming = fam.is_k_wise_intersecting(k);
        let instance = FuzzInstance {
            circle,
            r: len,
            k,
            starts: fam.starts().iter().copied().collect(),
            conforming,
        };
        if let Some(list) = summary.instances.as_mut() {
            list.push(instance.clone());
        }
        let mut violate = |detail: String| {
            summary.violations.push(Violation {
                draw,
                instance: instance.clone(),
                detail,
            })
        };

        match (cfg.lemma, conforming) {
            (Lemma::Bound, true) => match lemma1_assign(&fam, k) {
                Ok(rep) if rep.outcome == AssignmentOutcome::Bounded => {
                    if fam.size() > len as usize {
                        violate(format!("{} arcs exceed r={len}", fam.size()));
                    }
                }
                Ok(rep) => violate(format!(
                    "covering witness on a conforming family: {:?}",
                    rep.outcome
                )),
                Err(e) => violate(e.to_string()),
            },
            (Lemma::Bound, false) => match lemma1_assign(&fam, k) {
                Ok(rep) => {
                    if let AssignmentOutcome::CoveringWitness { starts } = &rep.outcome {
                        summary.witnesses_checked += 1;
                        if starts.len() != k
                            || !starts.iter().all(|s| fam.starts().contains(s))
                            || !complements_cover(circle, len, starts)
                        {
                            violate(format!("witness {starts:?} does not cover the circle"));
                        }
                    }
                }
                Err(e) => violate(e.to_string()),
            },
            (Lemma::CommonIndex, true) => match lemma2_common_index(&fam, k) {
                Ok(x) => {
                    let starts: Vec<u32> = fam.starts().iter().copied().collect();
                    if !brute_common_positions(circle, len, &starts).contains(&x)
                        || fam.size() != len as usize
                    {
                        violate(format!("position {x} is not shared by every arc"));
                    }
                }
                Err(e) => violate(e.to_string()),
            },
            (Lemma::CommonIndex, false) => {}
        }
        if conforming {
            summary.conforming += 1;
        } else {
            summary.nonconforming += 1;
        }
    }
    Ok(summary)
}
