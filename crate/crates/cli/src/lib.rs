//! `virfusion`: exact fusion rules of Virasoro vertex operator algebras from
//! the command line.

// core errors carry exact rationals; they are rare and cold
#![allow(clippy::result_large_err)]

pub mod cache;
mod commands;
pub mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use virasoro_fusion::algebra::Rational;
use virasoro_fusion::verma::memo_stats;

pub use render::Format;

/// Exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit status for malformed or out-of-range input.
pub const EXIT_INVALID: i32 = 1;
/// Exit status when `verify` finds routes that disagree.
pub const EXIT_DISAGREEMENT: i32 = 2;

/// An `(i, s)` or `(r, s)` label written as `I,S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pair(pub u32, pub u32);

impl FromStr for Pair {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| format!("expected I,S but got {s:?}"))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("expected positive integers in {s:?}"))
        };
        Ok(Pair(parse(a)?, parse(b)?))
    }
}

impl From<Pair> for (u32, u32) {
    fn from(p: Pair) -> Self {
        (p.0, p.1)
    }
}

fn rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "virfusion", version, about = "Exact fusion rules for Virasoro VOAs at c_{1,q} and c_{p,q}")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    global: GlobalOpts,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Singular-vector cache file (JSON); created if missing.
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,

    /// Accepted for interface compatibility; every computation is deterministic.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,

    /// Print solver and timing statistics to stderr.
    #[arg(long, global = true)]
    verbose: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Central charge and conformal weights for (p,q), or (1,q) when p = 1.
    Weights {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        /// Largest i listed when p = 1.
        #[arg(long, default_value_t = 3)]
        imax: u32,
    },
    /// Singular vector of M(c,h) at a given level.
    Singular {
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        c: Rational,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        h: Rational,
        #[arg(long)]
        level: u32,
    },
    /// Zhu-bimodule images of the singular generators of a module.
    ZhuImage {
        /// `c1q:Q,I,S` or `min:P,Q,R,S`.
        #[arg(long)]
        label: String,
    },
    /// A single fusion rule.
    Fusion(FusionArgs),
    /// The fusion product of two c_{1,q} modules.
    FusionProduct {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        w1: Pair,
        #[arg(long)]
        w2: Pair,
    },
    /// Three-point coefficients of descendants inserted in one slot.
    Threept {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        w1: Pair,
        #[arg(long)]
        w2: Pair,
        #[arg(long)]
        w3: Pair,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
        slot: u32,
        /// Insert this PBW monomial (parts, e.g. `2,1`) instead of the slot's
        /// singular generators.
        #[arg(long, value_delimiter = ',')]
        partition: Option<Vec<u32>>,
    },
    /// Convergence table along c_{k,kq-1} -> c_{1,q}.
    Limit {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        w1: Pair,
        #[arg(long)]
        w2: Pair,
        #[arg(long)]
        w3: Pair,
        #[arg(long)]
        kmin: u32,
        #[arg(long)]
        kmax: u32,
    },
    /// Cross-check the fusion routes and the polynomial equivalence.
    Verify {
        #[arg(long, default_value_t = 3)]
        qmax: u32,
        #[arg(long, default_value_t = 3)]
        imax: u32,
        /// Largest q in the polynomial equivalence sweep.
        #[arg(long, default_value_t = 4)]
        sweep_qmax: u32,
    },
}

#[derive(Debug, Args)]
struct FusionArgs {
    #[arg(long)]
    q: u32,
    /// Use the minimal model c_{p,q} with Kac labels instead of c_{1,q}.
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    w1: Pair,
    #[arg(long)]
    w2: Option<Pair>,
    #[arg(long)]
    w3: Option<Pair>,
    /// Weight of the Verma module in the second slot.
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    verma_h2: Option<Rational>,
    /// Weight of the Verma module in the target slot.
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    verma_h3: Option<Rational>,
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let rendered = e.render().to_string();
            if informational {
                let _ = write!(stdout, "{rendered}");
                return EXIT_OK;
            }
            let _ = write!(stderr, "{rendered}");
            return EXIT_INVALID;
        }
    };
    let start = Instant::now();
    let g = &cli.global;

    let cached = match &g.cache {
        Some(path) => match cache::read_entries(path) {
            Ok(entries) => {
                cache::seed(&entries);
                Some(entries)
            }
            Err(e) => {
                let _ = writeln!(stderr, "warning: {e}; recomputing and rewriting it");
                Some(Vec::new())
            }
        },
        None => None,
    };

    let code = match commands::execute(&cli.command) {
        Ok(outcome) => match outcome.document.write(g.format, stdout) {
            Ok(()) => outcome.exit,
            Err(e) => {
                let _ = writeln!(stderr, "error: cannot write output: {e}");
                EXIT_INVALID
            }
        },
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INVALID
        }
    };

    if let (Some(path), Some(existing)) = (&g.cache, &cached) {
        let merged = cache::merged_with_memo(existing);
        if merged != *existing {
            if let Err(e) = cache::write_entries(path, &merged) {
                let _ = writeln!(stderr, "warning: {e}");
            }
        }
    }

    if g.verbose {
        let s = memo_stats();
        let _ = writeln!(
            stderr,
            "memo: {} solves, {} hits, {} entries; elapsed {:.3} ms",
            s.solves,
            s.hits,
            s.entries,
            start.elapsed().as_secs_f64() * 1e3
        );
    }
    code
}
