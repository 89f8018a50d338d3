//! Acceptance suite: one PASS/FAIL line per criterion, each with its own
//! runtime limit. Exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use kwise_core::bounds::{
    double_counting_quotient, frankl_bound, good_order_count, orders_containing_count,
    theorem_bound,
};
use kwise_core::circle::{
    connectivity_check, construct_order_containing, enumerate_good_orders, saturation,
    saturation_preserved_under_move, IntervalFamily, Move,
};
use kwise_core::family::{complete_family, enumerate_family, star, FamilyKind};
use kwise_core::fuzz::{run_fuzz, FuzzConfig, Lemma};
use kwise_core::search::{
    max_kwise_family, verify, verify_extremal_characterization, SearchMode, SearchProblem,
    Uniqueness, Universe, VerifyRequest,
};
use kwise_core::{UniformFamily, VertexSet};
use num_bigint::BigUint;

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(x: usize) -> BigUint {
    BigUint::from(x)
}

fn stars_of(universe: &UniformFamily) -> BTreeSet<Vec<VertexSet>> {
    (1..=universe.ground())
        .map(|v| star(universe, v).unwrap().sets().to_vec())
        .collect()
}

/// Every maximum k-wise intersecting subfamily, by scanning all subsets.
fn brute_all_maximum(universe: &UniformFamily, k: usize) -> (usize, BTreeSet<Vec<VertexSet>>) {
    let sets = universe.sets();
    let m = sets.len();
    assert!(m <= 24);
    let mut bad: Vec<u32> = Vec::new();
    for size in 1..=k.min(m) {
        for c in (0..m).combinations(size) {
            if c.iter().fold(!0u64, |acc, &i| acc & sets[i].bits()) == 0 {
                bad.push(c.iter().fold(0u32, |acc, &i| acc | 1 << i));
            }
        }
    }
    let mut best = 0;
    let mut all = BTreeSet::new();
    for mask in 0u32..1 << m {
        let size = mask.count_ones() as usize;
        if size < best || bad.iter().any(|&b| b & !mask == 0) {
            continue;
        }
        if size > best {
            best = size;
            all.clear();
        }
        all.insert(
            (0..m)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| sets[i])
                .collect(),
        );
    }
    (best, all)
}

fn ac1() -> Outcome {
    let mut counts = Vec::new();
    for n in 2..=5u32 {
        let got = enumerate_good_orders(n).map_err(|e| e.to_string())?.count();
        let expected = [2usize, 8, 48, 384][n as usize - 2];
        ensure(got == expected, || {
            format!("n={n}: {got} orders, expected {expected}")
        })?;
        ensure(big(got) == good_order_count(n).unwrap(), || {
            format!("n={n}: formula mismatch")
        })?;
        counts.push(got.to_string());
    }
    Ok(format!("counts {}", counts.join(",")))
}

fn ac2() -> Outcome {
    let mut checked = 0;
    for n in 2..=16u32 {
        for r in n + 1..2 * n {
            let q = double_counting_quotient(n, r).map_err(|e| e.to_string())?;
            let b = theorem_bound(n, r).unwrap().value;
            ensure(q == b, || format!("n={n} r={r}: quotient {q} vs bound {b}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (n,r) pairs exact"))
}

fn ac3() -> Outcome {
    let mut checked = 0;
    for n in 1..=6u32 {
        for r in n..2 * n {
            let p = enumerate_family(n, r, FamilyKind::Union).map_err(|e| e.to_string())?;
            let b = theorem_bound(n, r).unwrap().value;
            for x in 1..=2 * n {
                let size = star(&p, x).unwrap().len();
                ensure(big(size) == b, || {
                    format!("n={n} r={r} x={x}: {size} vs {b}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} stars match"))
}

fn star_case(n: u32, r: u32, k: usize, max: usize, count: usize) -> Outcome {
    let universe = enumerate_family(n, r, FamilyKind::Union).map_err(|e| e.to_string())?;
    let (brute_max, brute_all) = brute_all_maximum(&universe, k);
    let rep = verify_extremal_characterization(n, r, k).map_err(|e| e.to_string())?;
    let found: BTreeSet<Vec<VertexSet>> = rep
        .result
        .witnesses
        .iter()
        .map(|w| w.sets().to_vec())
        .collect();
    let stars = stars_of(&universe);
    ensure(brute_max == max, || {
        format!("oracle max {brute_max}, expected {max}")
    })?;
    ensure(rep.result.max_size == max, || {
        format!("search max {}", rep.result.max_size)
    })?;
    ensure(found == brute_all, || {
        "search and oracle maxima differ".into()
    })?;
    ensure(found == stars && found.len() == count, || {
        format!("{} maxima, not the {count} stars", found.len())
    })?;
    ensure(rep.passed, || "report not passed".into())?;
    Ok(format!(
        "max={max}, {count} star witnesses, oracle over 2^{} subfamilies agrees",
        universe.len()
    ))
}

fn ac4() -> Outcome {
    star_case(3, 3, 3, 4, 6)
}

fn ac5() -> Outcome {
    star_case(4, 4, 3, 8, 8)
}

fn ac6() -> Outcome {
    let mut req = VerifyRequest::new(Universe::Matching, 4, 5, 3);
    req.threads = 1;
    let rep = verify(&req).map_err(|e| e.to_string())?;
    let universe = enumerate_family(4, 5, FamilyKind::Union).unwrap();
    ensure(universe.len() == 32, || {
        format!("universe has {} sets", universe.len())
    })?;
    ensure(rep.result.max_size == 20, || {
        format!("max {}", rep.result.max_size)
    })?;
    ensure(rep.result.all_are_stars == Some(true), || {
        "non-star maximum found".into()
    })?;
    ensure(rep.uniqueness == Uniqueness::Asserted && rep.passed, || {
        "report not passed".into()
    })?;
    Ok(format!(
        "max=20 over 32 sets, {} maxima all stars, {} nodes",
        rep.result.witnesses.len(),
        rep.result.explored_nodes
    ))
}

fn ac7() -> Outcome {
    let rep = verify_extremal_characterization(3, 4, 3).map_err(|e| e.to_string())?;
    let b = theorem_bound(3, 4).unwrap().value;
    ensure(rep.result.max_size == 8 && big(8) == b, || {
        format!("max {} bound {b}", rep.result.max_size)
    })?;
    ensure(
        matches!(rep.uniqueness, Uniqueness::NotAsserted { .. }),
        || "uniqueness asserted".into(),
    )?;
    ensure(rep.passed, || "report not passed".into())?;
    Ok(format!(
        "max=8=bound, {} maxima, uniqueness not asserted",
        rep.result.witnesses.len()
    ))
}

fn ac8() -> Outcome {
    let mut checked = 0;
    for n in 1..=4u32 {
        let orders: Vec<_> = enumerate_good_orders(n)
            .map_err(|e| e.to_string())?
            .collect();
        for r in 1..2 * n {
            let expected = orders_containing_count(n, r).unwrap();
            for &s in enumerate_family(n, r, FamilyKind::Union).unwrap().sets() {
                let count = orders.iter().filter(|o| o.is_interval(s).is_some()).count();
                ensure(big(count) == expected, || {
                    format!("n={n} r={r} {{{s}}}: {count} vs {expected}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} sets checked"))
}

fn ac9() -> Outcome {
    let mut parts = Vec::new();
    for lemma in [Lemma::Bound, Lemma::CommonIndex] {
        let s = run_fuzz(&FuzzConfig::new(lemma, 10_000, 0)).map_err(|e| e.to_string())?;
        ensure(s.conforming == 10_000, || {
            format!("only {} conforming draws", s.conforming)
        })?;
        ensure(s.violations.is_empty(), || {
            format!(
                "{} violations, first {:?}",
                s.violations.len(),
                s.violations[0]
            )
        })?;
        parts.push(format!(
            "lemma {}: 10000 conforming, {} nonconforming, {} witnesses checked",
            s.lemma, s.nonconforming, s.witnesses_checked
        ));
    }
    Ok(parts.join("; "))
}

fn ac10() -> Outcome {
    let mut move_checks = 0;
    for n in 2..=4u32 {
        let orders: Vec<_> = enumerate_good_orders(n)
            .map_err(|e| e.to_string())?
            .collect();
        for r in n..2 * n {
            // Smallest k with r < (k-1)2n/k.
            let k = (2 * n / (2 * n - r) + 1) as usize;
            let p = enumerate_family(n, r, FamilyKind::Union).unwrap();
            let st = star(&p, 2 * n).unwrap();
            for o in &orders {
                let s = saturation(o, &st, k).map_err(|e| e.to_string())?;
                ensure(s.common_position == Some(o.position_of(2 * n)), || {
                    format!("n={n} r={r} {o}: {s:?}")
                })?;
                // The r intervals of o through 2n: saturated, not a full star.
                let through = IntervalFamily::through(2 * n, r, o.position_of(2 * n)).unwrap();
                let sets: Vec<VertexSet> =
                    through.starts().iter().map(|&p| o.interval(p, r)).collect();
                let thin = UniformFamily::new(2 * n, r, sets).unwrap();
                let mut moves: Vec<Move> = (1..n.saturating_sub(1)).map(Move::Transpose).collect();
                if r > n {
                    moves.push(Move::Swap(n - 1));
                }
                for fam in [&st, &thin] {
                    for &mv in &moves {
                        let check = saturation_preserved_under_move(o, mv, fam, k)
                            .map_err(|e| e.to_string())?;
                        if fam == &st {
                            ensure(check.after.common_vertex == Some(2 * n), || {
                                format!("{mv} on {o}")
                            })?;
                        }
                        move_checks += 1;
                    }
                }
            }
        }
    }
    for n in 1..=5 {
        let c = connectivity_check(n).map_err(|e| e.to_string())?;
        ensure(c.connected, || {
            format!("n={n}: orbit {} of {}", c.orbit_size, c.expected)
        })?;
    }
    Ok(format!("{move_checks} move checks, connected for n<=5"))
}

fn ac11() -> Outcome {
    let mut built = 0;
    for n in 1..=5u32 {
        for r in n..2 * n {
            let p = enumerate_family(n, r, FamilyKind::Union).unwrap();
            for &a in star(&p, 2 * n).unwrap().sets() {
                let o = construct_order_containing(n, r, a).map_err(|e| format!("{{{a}}}: {e}"))?;
                ensure(o.is_interval(a).is_some(), || {
                    format!("{{{a}}} not an interval of {o}")
                })?;
                built += 1;
            }
        }
    }
    Ok(format!("{built} orders constructed"))
}

fn ac12() -> Outcome {
    let mut frankl = 0;
    for n in 2..=6u32 {
        for k in 2..=4usize {
            for r in 1..=((k as u32 - 1) * n) / k as u32 {
                let mut req = VerifyRequest::new(Universe::Complete, n, r, k);
                req.all_maximum = false;
                req.check_stars = false;
                let rep = verify(&req).map_err(|e| e.to_string())?;
                let b = frankl_bound(n, r).unwrap();
                ensure(big(rep.result.max_size) == b, || {
                    format!("C([{n}],{r}) k={k}: {} vs {b}", rep.result.max_size)
                })?;
                frankl += 1;
            }
        }
    }
    let mut independent = 0;
    for n in 1..=4u32 {
        for r in 1..=n {
            let rep = verify(&VerifyRequest::new(Universe::Independent, n, r, 2))
                .map_err(|e| e.to_string())?;
            ensure(rep.passed, || {
                format!(
                    "I^{r}(M_{n}): max {} vs {}",
                    rep.result.max_size, rep.bound_expected
                )
            })?;
            independent += 1;
        }
    }
    // At r = n/2 on C([4],2) the triangle is a non-star maximum.
    let universe = complete_family(4, 2).unwrap();
    let res = max_kwise_family(&SearchProblem::new(
        universe.clone(),
        2,
        SearchMode::AllMaximum,
    ))
    .map_err(|e| e.to_string())?;
    let stars = stars_of(&universe);
    let non_star = res
        .witnesses
        .iter()
        .filter(|w| !stars.contains(w.sets()))
        .count();
    ensure(res.max_size == 3 && non_star > 0, || {
        format!("control: max {}, {non_star} non-stars", res.max_size)
    })?;
    Ok(format!(
        "{frankl} Frankl cases, {independent} independent cases, control has {non_star} non-star maxima"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("AC-1", "good-order counts", Duration::from_secs(1), ac1),
        ("AC-2", "bound identity", Duration::from_secs(1), ac2),
        ("AC-3", "star sizes", Duration::from_secs(5), ac3),
        ("AC-4", "extremal (3,3,3)", Duration::from_secs(1), ac4),
        ("AC-5", "extremal (4,4,3)", Duration::from_secs(10), ac5),
        ("AC-6", "extremal (4,5,3)", Duration::from_secs(300), ac6),
        ("AC-7", "boundary (3,4,3)", Duration::from_secs(60), ac7),
        ("AC-8", "interval counts", Duration::from_secs(30), ac8),
        ("AC-9", "arc-family fuzz", Duration::from_secs(30), ac9),
        (
            "AC-10",
            "saturation and moves",
            Duration::from_secs(60),
            ac10,
        ),
        (
            "AC-11",
            "construction coverage",
            Duration::from_secs(60),
            ac11,
        ),
        ("AC-12", "calibrations", Duration::from_secs(60), ac12),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; too slow")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "[{}] {id} {name} ({:.3}s, limit {}s): {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
