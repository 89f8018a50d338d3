use std::path::Path;

use kwise_core::bounds::{good_order_count, theorem_bound};
use kwise_core::circle::{
    connectivity_check, construct_order_containing, enumerate_good_orders, saturation,
    saturation_preserved_under_move, Move,
};
use kwise_core::family::{enumerate_family, is_k_wise_intersecting, star, FamilyKind};
use kwise_core::fuzz::{run_fuzz, FuzzConfig, Lemma};
use kwise_core::io::{family_from_json, family_from_lines, family_to_lines, FamilyDoc};
use kwise_core::search::{verify, VerifyRequest};
use kwise_core::{Error, KWiseCheck, UniformFamily};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::report::{big_json, opt, set_list, set_string, versioned, Report};

/// Star sizes are enumerated only up to this many vertices.
const STAR_ENUMERATION_VERTICES: u32 = 16;
const MAX_BOUND_ROWS: usize = 4096;
const MAX_BOUND_EDGES: u32 = 64;

fn param(msg: String) -> Error {
    Error::Parameter(msg)
}

/// Smallest `k` with `k r < (k-1) 2n`.
pub fn default_k(n: u32, r: u32) -> Result<usize, Error> {
    if r == 0 || r >= 2 * n {
        return Err(param(format!("r={r} outside 1..{} for n={n}", 2 * n)));
    }
    Ok((2 * n / (2 * n - r) + 1) as usize)
}

pub fn bounds(n_range: (u32, u32), r_range: Option<(u32, u32)>) -> Result<Report, Error> {
    let (n_lo, n_hi) = n_range;
    if n_lo == 0 || n_hi > MAX_BOUND_EDGES {
        return Err(param(format!("n range must lie in 1..={MAX_BOUND_EDGES}")));
    }
    if r_range.is_some_and(|(lo, _)| lo == 0) {
        return Err(param("r range must start at 1 or above".into()));
    }
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    let mut text = format!(
        "{:>3} {:>3} {:>6} {:>24} {:>10} match\n",
        "n", "r", "branch", "bound", "star"
    );
    let mut all_match = true;
    for n in n_lo..=n_hi {
        let (r_lo, r_hi) = r_range.unwrap_or((n, 2 * n - 1));
        for r in r_lo..=r_hi.min(2 * n) {
            if rows.len() >= MAX_BOUND_ROWS {
                return Err(param(format!("more than {MAX_BOUND_ROWS} rows requested")));
            }
            let b = theorem_bound(n, r)?;
            let star_size = if 2 * n <= STAR_ENUMERATION_VERTICES {
                let p = enumerate_family(n, r, FamilyKind::Union)?;
                Some(star(&p, 2 * n)?.len())
            } else {
                None
            };
            let matched = star_size.map(|s| BigUint::from(s) == b.value);
            all_match &= matched != Some(false);
            json_rows.push(json!({
                "n": n,
                "r": r,
                "branch": b.branch.as_str(),
                "bound": b.value.to_string(),
                "star_size_enumerated": star_size,
                "match": matched,
            }));
            rows.push(vec![
                n.to_string(),
                r.to_string(),
                b.branch.as_str().to_string(),
                b.value.to_string(),
                opt(star_size),
                opt(matched),
            ]);
            text.push_str(&format!(
                "{n:>3} {r:>3} {:>6} {:>24} {:>10} {}\n",
                b.branch.as_str(),
                b.value.to_string(),
                star_size.map_or("-".to_string(), |s| s.to_string()),
                matched.map_or("-", |m| if m { "yes" } else { "NO" }),
            ));
        }
    }
    if rows.is_empty() {
        return Err(param(
            "the requested ranges contain no valid (n, r) pair".into(),
        ));
    }
    Ok(Report {
        json: versioned(json!({ "command": "bounds", "rows": json_rows, "all_match": all_match })),
        header: vec!["n", "r", "branch", "bound", "star_size_enumerated", "match"],
        rows,
        text,
        passed: all_match,
    })
}

pub struct EnumerateArgs<'a> {
    pub n: Option<u32>,
    pub r: Option<u32>,
    pub kind: FamilyKind,
    pub star: Option<u32>,
    pub input: Option<&'a Path>,
    pub k: Option<usize>,
}

fn kind_str(kind: FamilyKind) -> &'static str {
    match kind {
        FamilyKind::Independent => "independent",
        FamilyKind::MaxContaining => "max_containing",
        FamilyKind::Union => "union",
    }
}

pub fn enumerate(args: EnumerateArgs<'_>) -> Result<Report, Error> {
    let (n, source, fam) = match args.input {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| param(format!("cannot read {}: {e}", path.display())))?;
            let (n, fam) = if text.trim_start().starts_with('{') {
                family_from_json(&text)?
            } else {
                let n = args
                    .n
                    .ok_or_else(|| param("--n is required for line-form input".into()))?;
                (n, family_from_lines(&text, n, args.r)?)
            };
            if args.n.is_some_and(|m| m != n) {
                return Err(param(format!(
                    "input is over M_{n}, not M_{}",
                    args.n.unwrap_or(0)
                )));
            }
            (n, "input", fam)
        }
        None => {
            let n = args.n.ok_or_else(|| param("--n is required".into()))?;
            let r = args.r.ok_or_else(|| param("--r is required".into()))?;
            (n, kind_str(args.kind), enumerate_family(n, r, args.kind)?)
        }
    };
    let fam: UniformFamily = match args.star {
        Some(v) => star(&fam, v)?,
        None => fam,
    };

    let doc = FamilyDoc::from_family(n, &fam);
    let mut obj = versioned(json!({
        "command": "enumerate",
        "n": doc.n,
        "r": doc.r,
        "source": source,
        "star": args.star,
        "count": fam.len(),
        "sets": doc.sets,
    }));
    let mut text = family_to_lines(&fam);
    if let Some(k) = args.k {
        let check = is_k_wise_intersecting(&fam, k)?;
        let witness: Option<Vec<Vec<u32>>> = match &check {
            KWiseCheck::Yes => None,
            KWiseCheck::No { witness } => Some(witness.iter().map(|&s| set_list(s)).collect()),
        };
        text = format!(
            "# {k}-wise intersecting: {}\n{text}",
            if check.is_yes() { "yes" } else { "no" }
        );
        obj["k_wise"] = json!({ "k": k, "intersecting": check.is_yes(), "witness": witness });
    }
    let rows = fam
        .sets()
        .iter()
        .enumerate()
        .map(|(i, &s)| vec![(i + 1).to_string(), s.len().to_string(), set_string(s)])
        .collect();
    Ok(Report {
        json: obj,
        header: vec!["index", "size", "vertices"],
        rows,
        text,
        passed: true,
    })
}

pub fn verify_cmd(req: &VerifyRequest, witnesses: bool) -> Result<Report, Error> {
    let rep = verify(req)?;
    let j = rep.to_json(witnesses);
    let res = &rep.result;
    let uniqueness = j["uniqueness"].as_str().unwrap_or_default().to_string();
    let row = vec![
        rep.universe.as_str().to_string(),
        rep.n.to_string(),
        rep.r.to_string(),
        rep.k.to_string(),
        res.max_size.to_string(),
        rep.bound_expected.to_string(),
        rep.bound_met.to_string(),
        uniqueness.clone(),
        rep.passed.to_string(),
        res.witnesses.len().to_string(),
        opt(res.all_are_stars),
        res.explored_nodes.to_string(),
        res.elapsed.as_millis().to_string(),
    ];
    let mut text = format!(
        "{} n={} r={} k={}: max {} (bound {}), {} witnesses, uniqueness {}\n",
        rep.universe.as_str(),
        rep.n,
        rep.r,
        rep.k,
        res.max_size,
        rep.bound_expected,
        res.witnesses.len(),
        uniqueness
    );
    if let Some(centers) = &res.star_centers {
        text.push_str(&format!("star centers: {centers:?}\n"));
    }
    if witnesses {
        for (i, w) in res.witnesses.iter().enumerate() {
            text.push_str(&format!("witness {}:\n{}", i + 1, family_to_lines(w)));
        }
    }
    text.push_str(if rep.passed { "PASS\n" } else { "FAIL\n" });
    Ok(Report {
        json: j,
        header: vec![
            "universe",
            "n",
            "r",
            "k",
            "max_size",
            "bound_expected",
            "bound_met",
            "uniqueness",
            "passed",
            "witness_count",
            "all_are_stars",
            "explored_nodes",
            "elapsed_ms",
        ],
        rows: vec![row],
        text,
        passed: rep.passed,
    })
}

fn single_row(obj: &Value, keys: &[&'static str]) -> (Vec<&'static str>, Vec<Vec<String>>) {
    let row = keys
        .iter()
        .map(|&k| match &obj[k] {
            Value::Null => String::new(),
            Value::String(s) => s.clone(),
            v => v.to_string(),
        })
        .collect();
    (keys.to_vec(), vec![row])
}

pub fn circle_count(n: u32) -> Result<Report, Error> {
    let enumerated = enumerate_good_orders(n)?.count();
    let expected = good_order_count(n)?;
    let matched = BigUint::from(enumerated) == expected;
    let obj = versioned(json!({
        "command": "circle",
        "action": "count",
        "n": n,
        "enumerated": enumerated,
        "expected": big_json(&expected),
        "passed": matched,
    }));
    let (header, rows) = single_row(&obj, &["action", "n", "enumerated", "expected", "passed"]);
    Ok(Report {
        text: format!("n={n}: {enumerated}/{expected} good orderings\n"),
        json: obj,
        header,
        rows,
        passed: matched,
    })
}

pub fn circle_saturate(n: u32, r: u32, k: Option<usize>) -> Result<Report, Error> {
    let k = match k {
        Some(k) => k,
        None => default_k(n, r)?,
    };
    let top = 2 * n;
    let fam = star(&enumerate_family(n, r, FamilyKind::Union)?, top)?;
    let kk = k as u64;
    let strict = kk * u64::from(r) < (kk - 1) * u64::from(top);
    let mut moves: Vec<Move> = (1..n.saturating_sub(1)).map(Move::Transpose).collect();
    if r > n {
        moves.push(Move::Swap(n - 1));
    }
    let check_moves = strict && r >= n;

    let (mut orders, mut saturated, mut at_top, mut move_checks) = (0usize, 0usize, 0usize, 0usize);
    let mut failures: Vec<String> = Vec::new();
    for o in enumerate_good_orders(n)? {
        orders += 1;
        let s = saturation(&o, &fam, k)?;
        saturated += usize::from(s.saturated);
        at_top += usize::from(s.common_vertex == Some(top));
        if !check_moves || s.common_vertex != Some(top) {
            continue;
        }
        for &mv in &moves {
            match saturation_preserved_under_move(&o, mv, &fam, k) {
                Ok(_) => move_checks += 1,
                Err(Error::Integrity(msg)) => failures.push(msg),
                Err(e) => return Err(e),
            }
        }
    }
    let passed = at_top == orders && failures.is_empty();
    let obj = versioned(json!({
        "command": "circle",
        "action": "saturate",
        "n": n,
        "r": r,
        "k": k,
        "vertex": top,
        "orders": orders,
        "saturated": saturated,
        "saturated_at_vertex": at_top,
        "move_checks": move_checks,
        "move_failures": failures,
        "passed": passed,
    }));
    let (header, rows) = single_row(
        &obj,
        &[
            "action",
            "n",
            "r",
            "k",
            "vertex",
            "orders",
            "saturated",
            "saturated_at_vertex",
            "move_checks",
            "passed",
        ],
    );
    let mut text =
        format!("n={n} r={r} k={k}: {at_top}/{orders} orderings saturated at vertex {top}\n");
    if check_moves {
        text.push_str(&format!(
            "{move_checks} move checks, {} failures\n",
            obj["move_failures"].as_array().map_or(0, Vec::len)
        ));
    }
    Ok(Report {
        json: obj,
        header,
        rows,
        text,
        passed,
    })
}

pub fn circle_moves(n: u32) -> Result<Report, Error> {
    let c = connectivity_check(n)?;
    let obj = versioned(json!({
        "command": "circle",
        "action": "moves",
        "n": c.n,
        "orbit_size": c.orbit_size,
        "expected": c.expected,
        "connected": c.connected,
        "passed": c.connected,
    }));
    let (header, rows) = single_row(
        &obj,
        &[
            "action",
            "n",
            "orbit_size",
            "expected",
            "connected",
            "passed",
        ],
    );
    Ok(Report {
        text: format!(
            "n={n}: orbit {} of {} ({})\n",
            c.orbit_size,
            c.expected,
            if c.connected {
                "connected"
            } else {
                "not connected"
            }
        ),
        json: obj,
        header,
        rows,
        passed: c.connected,
    })
}

pub fn circle_construct(n: u32, r: u32) -> Result<Report, Error> {
    let fam = star(&enumerate_family(n, r, FamilyKind::Union)?, 2 * n)?;
    let mut constructed = 0usize;
    let mut failures = Vec::new();
    for &a in fam.sets() {
        match construct_order_containing(n, r, a) {
            Ok(o) if o.is_interval(a).is_some() => constructed += 1,
            Ok(o) => failures
                .push(json!({ "set": set_list(a), "error": format!("not an interval of {o}") })),
            Err(Error::Integrity(msg)) => {
                failures.push(json!({ "set": set_list(a), "error": msg }))
            }
            Err(e) => return Err(e),
        }
    }
    let passed = failures.is_empty();
    let obj = versioned(json!({
        "command": "circle",
        "action": "construct",
        "n": n,
        "r": r,
        "sets": fam.len(),
        "constructed": constructed,
        "failures": failures,
        "passed": passed,
    }));
    let (header, rows) = single_row(&obj, &["action", "n", "r", "sets", "constructed", "passed"]);
    Ok(Report {
        text: format!(
            "n={n} r={r}: {constructed}/{} sets are intervals of a constructed ordering\n",
            fam.len()
        ),
        json: obj,
        header,
        rows,
        passed,
    })
}

pub fn fuzz(
    lemma: u8,
    trials: usize,
    seed: u64,
    max_circle: u32,
    record: bool,
) -> Result<Report, Error> {
    let lemma = match lemma {
        1 => Lemma::Bound,
        2 => Lemma::CommonIndex,
        other => return Err(param(format!("lemma must be 1 or 2, got {other}"))),
    };
    let mut cfg = FuzzConfig::new(lemma, trials, seed);
    cfg.max_circle = max_circle;
    cfg.record = record;
    let s = run_fuzz(&cfg)?;
    let mut obj = serde_json::to_value(&s).expect("summary serializes");
    obj["command"] = json!("fuzz");
    obj["violation_count"] = json!(s.violations.len());
    obj["passed"] = json!(s.violations.is_empty() && s.conforming == s.trials);
    let obj = versioned(obj);
    let (header, rows) = single_row(
        &obj,
        &[
            "lemma",
            "trials",
            "seed",
            "draws",
            "conforming",
            "nonconforming",
            "witnesses_checked",
            "violation_count",
        ],
    );
    let mut text = format!(
        "lemma {}: {} conforming, {} nonconforming, {} witnesses checked, {} violations (seed {})\n",
        s.lemma,
        s.conforming,
        s.nonconforming,
        s.witnesses_checked,
        s.violations.len(),
        s.seed
    );
    for v in &s.violations {
        text.push_str(&format!(
            "  draw {}: N={} r={} k={} starts={:?}: {}\n",
            v.draw, v.instance.circle, v.instance.r, v.instance.k, v.instance.starts, v.detail
        ));
    }
    // Violations are report content; the exit status stays 0.
    Ok(Report {
        json: obj,
        header,
        rows,
        text,
        passed: true,
    })
}
