use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use nilkoszul_cli::config::{parse_coords, RunConfig, Suite};
use nilkoszul_cli::run_command;

#[derive(Parser)]
#[command(name = "nilkoszul", version, about = "Exact checks for nilpotent radicals, bar-Koszul complexes and curve-model Hilbert series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Positive roots, rho and the Weyl group order.
    Roots(Common),
    /// Kostant's theorem for H^*(n, V(eta)).
    Kostant(Common),
    /// Chevalley-Eilenberg cohomology table (trivial coefficients unless --eta).
    Cohomology(Common),
    /// Bar-Koszul concentration for every lambda up to --bound, and character inversion.
    Koszul(Common),
    /// Hilbert series of R, compared with Upsilon and with its inverse.
    Hilbert(Common),
    /// Hilbert series of the Hecke modules R(V_x).
    Hecke(Common),
    /// The GL(2) Koszul resolution for --genus.
    Gl2(Common),
    /// Stratification partitions of every lambda up to --bound.
    Strata(Common),
    /// The full verification grid.
    VerifyAll(VerifyArgs),
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Root system preset (A1, A2, A3, B2, B3, C2, C3, G2).
    #[arg(long = "type", value_name = "TYPE")]
    root_type: Option<String>,
    /// JSON file holding a Cartan matrix.
    #[arg(long, value_name = "PATH")]
    cartan: Option<PathBuf>,
    /// Truncation bound |lambda| <= n.
    #[arg(long, value_name = "N")]
    bound: Option<u32>,
    /// Genus of the regular curve model.
    #[arg(long, value_name = "G", conflicts_with = "h1")]
    genus: Option<u32>,
    /// Uniform h^1 of the root twists.
    #[arg(long, value_name = "N")]
    h1: Option<u64>,
    /// Highest weight in fundamental coordinates, e.g. 1,0 (repeatable).
    #[arg(long, value_name = "COORDS")]
    eta: Vec<String>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, value_name = "N")]
    jobs: Option<usize>,
    /// JSON run configuration; flags override its fields.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated suites to run (default: all).
    #[arg(long, value_delimiter = ',')]
    suites: Option<Vec<String>>,
}

fn build_config(common: &Common, suites: Option<&[String]>) -> Result<RunConfig> {
    let base = match &common.config {
        Some(p) => RunConfig::from_json_file(p)?,
        None => RunConfig::default(),
    };
    let cartan = match &common.cartan {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Some(serde_json::from_str(&text).with_context(|| format!("invalid config field `cartan`: {}", p.display()))?)
        }
        None => None,
    };
    let suites = suites
        .map(|s| s.iter().filter(|x| !x.is_empty()).map(|x| Suite::parse(x)).collect::<Result<BTreeSet<_>, _>>())
        .transpose()?;
    let flags = RunConfig {
        root_type: common.root_type.clone(),
        cartan,
        bound: common.bound,
        genus: common.genus,
        h1: common.h1,
        eta: common.eta.iter().map(|e| parse_coords(e)).collect::<Result<_, _>>()?,
        suites,
        out: common.out.clone(),
        jobs: common.jobs,
    };
    Ok(base.merged(flags))
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    let (name, common, suites) = match &cli.command {
        Command::Roots(c) => ("roots", c, None),
        Command::Kostant(c) => ("kostant", c, None),
        Command::Cohomology(c) => ("cohomology", c, None),
        Command::Koszul(c) => ("koszul", c, None),
        Command::Hilbert(c) => ("hilbert", c, None),
        Command::Hecke(c) => ("hecke", c, None),
        Command::Gl2(c) => ("gl2", c, None),
        Command::Strata(c) => ("strata", c, None),
        Command::VerifyAll(v) => ("verify-all", &v.common, v.suites.as_deref()),
    };
    let cfg = build_config(common, suites)?;
    let report = run_command(name, &cfg)?;
    let json = report.to_json();
    match &cfg.out {
        Some(p) => std::fs::write(p, json + "\n").with_context(|| format!("writing {}", p.display()))?,
        None => println!("{json}"),
    }
    eprint!("{}", report.render_table());
    Ok(report.all_pass())
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
