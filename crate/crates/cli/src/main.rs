//! `kwise`: enumeration, bounds, cyclic-order checks, arc-family fuzzing
//! and exhaustive extremal verification for k-wise intersecting families
//! over the perfect matching `M_n`.
//!
//! Exit status: 0 success, 1 a reported check failed, 2 bad parameters,
//! 3 a capacity limit was hit, 4 an internal consistency check failed.
//! Errors are also written to stderr as a JSON diagnostic.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kwise_core::family::FamilyKind;
use kwise_core::search::{Universe, VerifyRequest};
use kwise_core::Error;

use report::{diagnostic, exit_code, write_output, Format, Report};

#[derive(Parser, Debug)]
#[command(
    name = "kwise",
    version,
    about = "k-wise intersecting families over perfect matchings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format; json and csv follow the versioned report schema.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for the exact search.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Independent,
    MaxContaining,
    Union,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum UniverseArg {
    Matching,
    Independent,
    Complete,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CircleAction {
    Count,
    Saturate,
    Moves,
    Construct,
}

/// Parses `A`, `A-B` or `A..B`, all inclusive.
fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (lo, hi) = match s.split_once("..").or_else(|| s.split_once('-')) {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (s, s),
    };
    let lo: u32 = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad range start in {s:?}"))?;
    let hi: u32 = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad range end in {s:?}"))?;
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok((lo, hi))
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bound table with enumerated star sizes.
    Bounds {
        /// Edge counts, e.g. `3-4`.
        #[arg(short, long, value_parser = parse_range)]
        n: (u32, u32),
        /// Set sizes; defaults to n..2n-1 for each n.
        #[arg(short, long, value_parser = parse_range)]
        r: Option<(u32, u32)>,
    },
    /// List a family, or load one from a file, optionally restricted to a star.
    Enumerate {
        #[arg(short, long)]
        n: Option<u32>,
        #[arg(short, long)]
        r: Option<u32>,
        #[arg(long, value_enum, default_value_t = KindArg::Union)]
        kind: KindArg,
        /// Keep only the sets containing this vertex.
        #[arg(long)]
        star: Option<u32>,
        /// Family file: JSON document or one comma-separated set per line.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Also report whether the family is k-wise intersecting.
        #[arg(short, long)]
        k: Option<usize>,
    },
    /// Exact maximum k-wise intersecting subfamily against the bound.
    Verify {
        #[arg(short, long)]
        n: u32,
        #[arg(short, long)]
        r: u32,
        #[arg(short, long)]
        k: usize,
        /// Enumerate every maximum family.
        #[arg(long)]
        all_maximum: bool,
        /// Check that every maximum family is a star.
        #[arg(long)]
        check_stars: bool,
        #[arg(long, value_enum, default_value_t = UniverseArg::Matching)]
        universe: UniverseArg,
        /// Include the witness families in the report.
        #[arg(long)]
        witnesses: bool,
    },
    /// Good cyclic ordering checks.
    Circle {
        #[arg(value_enum)]
        action: CircleAction,
        #[arg(short, long)]
        n: u32,
        #[arg(short, long)]
        r: Option<u32>,
        /// Defaults to the smallest k with k r < (k-1) 2n.
        #[arg(short, long)]
        k: Option<usize>,
    },
    /// Seeded random trials of the arc-family procedures.
    Fuzz {
        /// 1: size bound by index assignment; 2: common index.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        lemma: u8,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Largest circle size drawn.
        #[arg(long, default_value_t = 12)]
        max_circle: u32,
        /// Include every drawn instance in the report.
        #[arg(long)]
        record: bool,
    },
}

fn need_r(r: Option<u32>) -> Result<u32, Error> {
    r.ok_or_else(|| Error::Parameter("--r is required for this action".into()))
}

fn run(cli: &Cli) -> Result<Report, Error> {
    match &cli.command {
        Command::Bounds { n, r } => commands::bounds(*n, *r),
        Command::Enumerate {
            n,
            r,
            kind,
            star,
            input,
            k,
        } => commands::enumerate(commands::EnumerateArgs {
            n: *n,
            r: *r,
            kind: match kind {
                KindArg::Independent => FamilyKind::Independent,
                KindArg::MaxContaining => FamilyKind::MaxContaining,
                KindArg::Union => FamilyKind::Union,
            },
            star: *star,
            input: input.as_deref(),
            k: *k,
        }),
        Command::Verify {
            n,
            r,
            k,
            all_maximum,
            check_stars,
            universe,
            witnesses,
        } => {
            let universe = match universe {
                UniverseArg::Matching => Universe::Matching,
                UniverseArg::Independent => Universe::Independent,
                UniverseArg::Complete => Universe::Complete,
            };
            let mut req = VerifyRequest::new(universe, *n, *r, *k);
            req.all_maximum = *all_maximum;
            req.check_stars = *check_stars;
            req.threads = cli.threads;
            commands::verify_cmd(&req, *witnesses)
        }
        Command::Circle { action, n, r, k } => match action {
            CircleAction::Count => commands::circle_count(*n),
            CircleAction::Saturate => commands::circle_saturate(*n, need_r(*r)?, *k),
            CircleAction::Moves => commands::circle_moves(*n),
            CircleAction::Construct => commands::circle_construct(*n, need_r(*r)?),
        },
        Command::Fuzz {
            lemma,
            trials,
            max_circle,
            record,
        } => commands::fuzz(*lemma, *trials, cli.seed, *max_circle, *record),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|report| {
        write_output(cli.output.as_deref(), &report.render(cli.format))?;
        Ok(report.passed)
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{}", diagnostic(&e));
            ExitCode::from(exit_code(&e))
        }
    }
}
