//! The `fpfun` command line: named inputs, single computations and
//! verification runs.

mod compute;
mod expr;
mod workspace;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::verify::{builder_algebras, run_suite, BatterySpec, Report, Status, SuiteConfig, SUITES};

pub use compute::{cmd_compute, ComputeKind, ComputeOutput};
pub use expr::Expr;
pub use workspace::{Loaded, Workspace};

/// Exit status for a clean run.
pub const EXIT_OK: i32 = 0;
/// Exit status when some check failed.
pub const EXIT_FAIL: i32 = 1;
/// Exit status for usage and validation errors.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "fpfun", version, about = "Exact computation with finitely presented functors")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Algebra name (k<p>x<n>, A<n>, a loaded name) or algebra file; repeatable for verify.
    #[arg(long, global = true)]
    pub algebra: Vec<String>,
    /// Prime for builtin algebras that do not name one.
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Algebra, module or functor files, or directories of them.
    #[arg(long, global = true)]
    pub load: Vec<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Candidate budget for isomorphism searches.
    #[arg(long, global = true, default_value_t = 256)]
    pub budget: usize,
    #[arg(long, global = true)]
    pub json: bool,
    /// Print the underlying presentations and action matrices.
    #[arg(long, global = true)]
    pub matrices: bool,
    /// Directory for report and result files.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one computation.
    Compute {
        #[arg(value_enum)]
        kind: ComputeKind,
        /// Module or functor expressions.
        args: Vec<String>,
        /// Save the resulting module or functor under this name in the output directory.
        #[arg(long)]
        save: Option<String>,
    },
    /// Run verification suites.
    Verify {
        /// Suite names, with or without the `suite_` prefix.
        suites: Vec<String>,
        /// Every suite; over the builder algebras unless --algebra is given.
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = BatteryArg::Full)]
        battery: BatteryArg,
        /// Pad every presentation with a split summand.
        #[arg(long)]
        pad: bool,
        /// Keep only checks whose id starts with this prefix.
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BatteryArg {
    Full,
    RepresentablesOnly,
}

impl From<BatteryArg> for BatterySpec {
    fn from(b: BatteryArg) -> Self {
        match b {
            BatteryArg::Full => BatterySpec::Full,
            BatteryArg::RepresentablesOnly => BatterySpec::RepresentablesOnly,
        }
    }
}

/// Runs a parsed command line, writing results to `out`; returns the exit status.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let c = &cli.common;
    let mut ws = Workspace::new(c.p.unwrap_or(2));
    ws.output_dir = c.out.clone();
    ws.load_paths(&c.load)?;
    match &cli.command {
        Command::Compute { kind, args, save } => {
            let spec = match c.algebra.as_slice() {
                [] => "k2x2",
                [one] => one.as_str(),
                _ => return Err(Error::Parse("compute takes a single --algebra".into())),
            };
            let alg = ws.algebra(spec)?;
            let result = cmd_compute(&ws, &alg, *kind, args, c.budget)?;
            if let Some(name) = save {
                let dir = c.out.clone().unwrap_or_else(|| PathBuf::from("."));
                result.save(&dir, name)?;
            }
            if c.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&result.json(c.matrices))?)?;
            } else {
                write!(out, "{}", result.text(c.matrices))?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            suites,
            all,
            battery,
            pad,
            only,
        } => {
            let algebras = if c.algebra.is_empty() {
                let primes = match c.p {
                    Some(p) => vec![p],
                    None => vec![2, 3],
                };
                let mut v = Vec::new();
                for p in primes {
                    v.extend(builder_algebras(p)?);
                }
                v
            } else {
                c.algebra
                    .iter()
                    .map(|a| ws.algebra(a))
                    .collect::<Result<Vec<_>>>()?
            };
            let mut config = SuiteConfig::new(algebras);
            config.extra_probes = ws.extra_probes();
            config.battery = (*battery).into();
            config.budget = c.budget;
            config.seed = c.seed;
            config.padded = *pad;
            config.only = only.clone();
            let names: Vec<String> = if *all || suites.is_empty() {
                SUITES.iter().map(|s| s.to_string()).collect()
            } else {
                suites.clone()
            };
            let reports = names
                .iter()
                .map(|n| run_suite(n, &config))
                .collect::<Result<Vec<_>>>()?;
            if let Some(dir) = &c.out {
                fs::create_dir_all(dir)?;
                for r in &reports {
                    let path = dir.join(format!("{}.json", r.suite));
                    fs::write(path, serde_json::to_string_pretty(r)? + "\n")?;
                }
            }
            if c.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?;
            } else {
                write!(out, "{}", summary(&reports))?;
            }
            Ok(if reports.iter().all(Report::passed) {
                EXIT_OK
            } else {
                EXIT_FAIL
            })
        }
    }
}

/// One row per suite, then every non-passing check with its repro command.
pub fn summary(reports: &[Report]) -> String {
    let mut s = format!(
        "{:<20} {:>7} {:>6} {:>6} {:>13}\n",
        "suite", "checks", "pass", "fail", "inconclusive"
    );
    for r in reports {
        s += &format!(
            "{:<20} {:>7} {:>6} {:>6} {:>13}\n",
            r.suite,
            r.checks.len(),
            r.count(Status::Pass),
            r.count(Status::Fail),
            r.count(Status::Inconclusive)
        );
    }
    for r in reports {
        for c in r.checks.iter().filter(|c| c.status != Status::Pass) {
            let tag = if c.status == Status::Fail { "FAIL" } else { "INCONCLUSIVE" };
            s += &format!("{tag} {}: {}\n  observed: {}\n", c.id, c.relation, c.observed);
            if let Some(repro) = &c.repro {
                s += &format!("  repro: {repro}\n");
            }
        }
    }
    s
}
