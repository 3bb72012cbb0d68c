//! Argument handling for the `patbij` binary, kept in a library so tests can
//! drive it with in-memory writers.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use pattern_bijection::oracle::{self, Statistic, VerificationReport};
use pattern_bijection::{
    collect_avoiders, count_avoiders, omega, omega_inverse, profile, theta, theta_inverse,
    PatternSet, Permutation, Variant,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "patbij",
    version,
    about = "Statistic-preserving bijections between 1423-, 2314- and 2413-avoiding permutations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the statistic profile of a permutation
    Stats {
        /// e.g. "2 4 1 3", 2,4,1,3 or 2413
        #[arg(required = true, num_args = 1..)]
        perm: Vec<String>,
    },
    /// Apply theta (1423-avoiders to 2413-avoiders) or its inverse
    Theta {
        #[arg(long)]
        inverse: bool,
        #[arg(required = true, num_args = 1..)]
        perm: Vec<String>,
    },
    /// Apply omega (2314-avoiders to 2413-avoiders) or its inverse
    Omega {
        #[arg(long)]
        inverse: bool,
        #[arg(required = true, num_args = 1..)]
        perm: Vec<String>,
    },
    /// List the permutations of length N avoiding every given pattern
    Avoiders {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// comma-separated, e.g. 1423,2413
        #[arg(long)]
        patterns: String,
        #[arg(long)]
        count_only: bool,
    },
    /// Distribution of a statistic over an avoidance class
    Distribution {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        patterns: String,
        /// maj, des, rlmax, lrmin, steps, posn or posn1
        #[arg(long)]
        stat: String,
    },
    /// Exhaustively verify the bijections and the equidistribution claims
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_n: u64,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// also check the decomposition and inflation lemmas (theta suite)
        #[arg(long)]
        checked: bool,
        /// one tab-separated record per property instead of a table
        #[arg(long)]
        records: bool,
        /// run a deliberately broken theta to self-test the harness
        #[arg(long, value_enum, hide = true)]
        mutant: Option<Mutant>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Theta,
    Omega,
    Conjecture,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mutant {
    NoStepCase,
}

/// Runs one invocation and returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn parse_perm(parts: &[String]) -> Result<Permutation, String> {
    parts
        .join(" ")
        .parse()
        .map_err(|e| format!("invalid permutation: {e}"))
}

fn parse_patterns(text: &str) -> Result<PatternSet, String> {
    text.parse().map_err(|e| format!("invalid --patterns: {e}"))
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, String> {
    let io = |e: std::io::Error| e.to_string();
    match command {
        Command::Stats { perm } => {
            let p = parse_perm(&perm)?;
            writeln!(out, "{}", profile(&p).record(&p)).map_err(io)?;
        }
        Command::Theta { inverse, perm } => {
            let p = parse_perm(&perm)?;
            let image = if inverse {
                theta_inverse(&p)
            } else {
                theta(&p)
            };
            writeln!(out, "{}", image.map_err(|e| e.to_string())?).map_err(io)?;
        }
        Command::Omega { inverse, perm } => {
            let p = parse_perm(&perm)?;
            let image = if inverse {
                omega_inverse(&p)
            } else {
                omega(&p)
            };
            writeln!(out, "{}", image.map_err(|e| e.to_string())?).map_err(io)?;
        }
        Command::Avoiders {
            n,
            patterns,
            count_only,
        } => {
            let ps = parse_patterns(&patterns)?;
            let n = n as usize;
            if count_only {
                writeln!(out, "{}", count_avoiders(n, &ps)).map_err(io)?;
            } else {
                for p in collect_avoiders(n, &ps) {
                    writeln!(out, "{p}").map_err(io)?;
                }
            }
        }
        Command::Distribution { n, patterns, stat } => {
            let ps = parse_patterns(&patterns)?;
            let stat: Statistic = stat
                .parse()
                .map_err(|e: pattern_bijection::Error| e.to_string())?;
            write!(out, "{}", oracle::distribution(n as usize, &ps, stat)).map_err(io)?;
        }
        Command::Verify {
            max_n,
            suite,
            checked,
            records,
            mutant,
        } => {
            let max_n = max_n as usize;
            let variant = match mutant {
                Some(Mutant::NoStepCase) => Variant::WithoutStepCase,
                None => Variant::Standard,
            };
            let mut reports: Vec<VerificationReport> = Vec::new();
            if matches!(suite, Suite::Theta | Suite::All) {
                reports.extend(oracle::verify_theta_variant(1..=max_n, checked, variant));
            }
            if matches!(suite, Suite::Omega | Suite::All) {
                reports.extend(oracle::verify_omega(max_n));
            }
            if matches!(suite, Suite::Conjecture | Suite::All) {
                reports.extend(oracle::verify_conjecture(max_n));
            }
            if records {
                for r in &reports {
                    writeln!(out, "{}", r.record()).map_err(io)?;
                }
            } else {
                write!(out, "{}", oracle::render_table(&reports)).map_err(io)?;
            }
            let failed = reports.iter().filter(|r| !r.pass()).count();
            if failed > 0 {
                if !records {
                    writeln!(out, "{failed} of {} properties FAILED", reports.len()).map_err(io)?;
                }
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
    }
    Ok(EXIT_OK)
}
