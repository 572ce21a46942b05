use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use spectile_cli::config::{parse_range, FileConfig};
use spectile_cli::report::SearchOutcome;
use spectile_cli::{analyze, run_experiment, AnalysisReport, AnalyzeConfig, Experiment, ExperimentConfig};

#[derive(Parser)]
#[command(name = "spectile", version, about = "Tiling and spectrality of finite integer sets")]
struct Cli {
    /// TOML file whose keys mirror the flags; flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: cyclotomic divisors, (T1)/(T2), tiling, spectra, checks.
    Analyze {
        #[command(flatten)]
        set: SetArg,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        period_bound: Option<u64>,
        #[arg(long)]
        denominator_cap: Option<u64>,
    },
    /// Decide whether the set tiles Z and print the certificate.
    Tile {
        #[command(flatten)]
        set: SetArg,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        period_bound: Option<u64>,
    },
    /// Construct (from T1/T2) or search for a rational spectrum.
    Spectrum {
        #[command(flatten)]
        set: SetArg,
        #[arg(long)]
        json: bool,
        #[arg(long, conflicts_with = "search")]
        construct: bool,
        #[arg(long)]
        search: bool,
        #[arg(long)]
        denominator_cap: Option<u64>,
    },
    /// Run a registered experiment over every set with the given sizes.
    Enumerate {
        /// Set size, or an inclusive range like 2..6.
        #[arg(long)]
        n: Option<String>,
        /// Sets are drawn from {0, ..., MAX-1}.
        #[arg(long)]
        max: Option<u64>,
        /// One of thm-3N2, n3-equivalence, cm-crosscheck, prime-power.
        #[arg(long)]
        experiment: Option<String>,
        #[arg(long)]
        workers: Option<usize>,
        /// JSON report path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// CSV summary path, one row per set.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        period_bound: Option<u64>,
        #[arg(long)]
        denominator_cap: Option<u64>,
        #[arg(long)]
        spectra_limit: Option<usize>,
    },
}

#[derive(Args)]
struct SetArg {
    /// Comma-separated integers, e.g. 0,1,6,7.
    #[arg(long, allow_hyphen_values = true)]
    set: Option<String>,
}

impl SetArg {
    fn resolve(&self, file: &FileConfig) -> Result<Vec<i64>> {
        match (&self.set, &file.set) {
            (Some(s), _) => Ok(spectile_cli::parse_set(s)?),
            (None, Some(s)) => Ok(s.elements()?),
            (None, None) => bail!("--set is required"),
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let base = AnalyzeConfig {
        period_limit: file.period_limit.unwrap_or(AnalyzeConfig::default().period_limit),
        ..AnalyzeConfig::default()
    };
    match cli.command {
        Command::Analyze { set, json, period_bound, denominator_cap } => {
            let cfg = AnalyzeConfig {
                period_bound: period_bound.or(file.period_bound),
                denominator_cap: denominator_cap.or(file.denominator_cap),
                ..base
            };
            let report = analyze(&set.resolve(&file)?, &cfg)?;
            if json || file.json == Some(true) {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print_report(&report);
            }
            Ok(if report.all_checks_pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Tile { set, json, period_bound } => {
            let cfg = AnalyzeConfig {
                period_bound: period_bound.or(file.period_bound),
                construct: false,
                search: false,
                ..base
            };
            let report = analyze(&set.resolve(&file)?, &cfg)?;
            if json || file.json == Some(true) {
                println!("{}", serde_json::to_string_pretty(&report.tiling)?);
            } else {
                print_tiling(&report);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Spectrum { set, json, construct, search, denominator_cap } => {
            let construct = construct || (!search && file.construct == Some(true) && file.search != Some(true));
            let cfg = AnalyzeConfig {
                denominator_cap: denominator_cap.or(file.denominator_cap),
                construct,
                search: !construct,
                ..base
            };
            let report = analyze(&set.resolve(&file)?, &cfg)?;
            let spectrum = report.constructed_spectrum.as_ref().or(report.searched_spectrum.as_ref());
            if json || file.json == Some(true) {
                println!("{}", serde_json::to_string_pretty(&spectrum)?);
            } else {
                match (spectrum, report.search) {
                    (Some(s), _) => println!("{s}"),
                    (None, SearchOutcome::DenominatorCapExceeded) => {
                        println!("unknown: lcm of cyclotomic divisors exceeds the denominator cap")
                    }
                    (None, SearchOutcome::Skipped) => println!("no spectrum: (T1) and (T2) do not both hold"),
                    (None, _) => println!("no rational spectrum found"),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate {
            n,
            max,
            experiment,
            workers,
            out,
            csv,
            period_bound,
            denominator_cap,
            spectra_limit,
        } => {
            let (n_min, n_max) = match (n, &file.n) {
                (Some(t), _) => parse_range(&t)?,
                (None, Some(r)) => r.bounds()?,
                (None, None) => bail!("--n is required"),
            };
            let m = max.or(file.max).context("--max is required")?;
            let name = experiment.or(file.experiment.clone()).context("--experiment is required")?;
            let mut cfg = ExperimentConfig::new(name.parse::<Experiment>()?, n_min, n_max, m);
            cfg.period_bound = period_bound.or(file.period_bound);
            cfg.period_limit = base.period_limit;
            cfg.denominator_cap = denominator_cap.or(file.denominator_cap);
            cfg.workers = workers.or(file.workers).unwrap_or(1);
            cfg.spectra_limit = spectra_limit.or(file.spectra_limit).unwrap_or(cfg.spectra_limit);
            cfg.out = out.or(file.out.clone());
            cfg.csv = csv.or(file.csv.clone());
            let report = run_experiment(&cfg)?;
            let s = &report.summary;
            println!(
                "{}: {} sets, tiles {} / does not tile {} / unknown {}, spectral {} / not {} / unknown {}, \
                 fundamental domains {}, spectra checked {}, numeric checks {}, findings {}, violations {}",
                cfg.experiment,
                s.sets,
                s.tiles,
                s.does_not_tile,
                s.tiling_unknown,
                s.spectral,
                s.not_spectral,
                s.spectral_unknown,
                s.fundamental_domains,
                s.spectra_checked,
                s.numeric_checks,
                s.findings,
                s.violations
            );
            for v in &report.violations {
                println!("VIOLATION {} [{}]: {}", v.set, v.direction, v.detail);
            }
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn print_tiling(r: &AnalysisReport) {
    let t = &r.tiling;
    match &t.certificate {
        Some(c) => println!("tiles: period {}, complement {}", c.period, c.complement_set()),
        None => match t.status {
            spectile::TilingStatus::DoesNotTile => println!("does not tile: (T1) fails"),
            _ => println!("unknown: no complement up to period {}", t.period_bound),
        },
    }
}

fn print_report(r: &AnalysisReport) {
    if r.shift != 0 {
        println!("note: translated by {} so that the minimum is 0", -r.shift);
    }
    println!("A = {}  (N = {}, M = {})", r.set, r.n, r.m);
    println!("cyclotomic divisors: {:?}", r.divisors);
    println!("S_A: {:?}", r.s_a);
    println!("t1 = {}, t2 = {}", r.t1, r.t2);
    print_tiling(r);
    println!("fundamental domain mod N: {}", r.fundamental_domain);
    match &r.constructed_spectrum {
        Some(s) => println!("constructed spectrum: {s}"),
        None => println!("constructed spectrum: none ((T1) and (T2) do not both hold)"),
    }
    match (&r.searched_spectrum, r.search) {
        (Some(s), _) => println!("searched spectrum: {s}"),
        (None, SearchOutcome::DenominatorCapExceeded) => println!("searched spectrum: unknown (denominator cap)"),
        (None, _) => println!("searched spectrum: no rational spectrum found"),
    }
    for c in &r.checks {
        println!("[{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
    }
}
