//! `vesd` command line.
//!
//! Results go to stdout (CSV or JSON) and to files under `--out`; progress and
//! errors go to stderr. Exit status is 0 on success, 1 on a runtime failure and
//! 2 on a configuration error.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::config::ConfigFile;
use crate::harness::{
    aggregate_and_fit, bias_scan, bridge_study, figure_cdfs, read_records_csv, run_experiment,
    with_threads, write_failures_csv, write_records_csv, BerryEsseenConfig, BiasRoute,
    BiasScanConfig, ExperimentConfig, ExperimentRecord,
};
use crate::semicircle::{semicircle_cdf, semicircle_density, semicircle_stieltjes};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "vesd", version, about = "Eigenvector empirical spectral distributions of Wigner matrices")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// TOML experiment configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Override a config key, e.g. `--set experiment.replicates=50`.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    pub overrides: Vec<String>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Dimension to simulate (repeatable; replaces the config list).
    #[arg(long = "n", global = true)]
    pub n: Vec<usize>,
    #[arg(long, global = true)]
    pub reps: Option<usize>,
    /// Unit-vector law (repeatable): uniform01, normal, poisson1, binomial10_06, basisK, constant.
    #[arg(long = "vector-law", global = true)]
    pub vector_law: Vec<String>,
    /// goe, gue, or an entry law name for a real Wigner matrix.
    #[arg(long, global = true)]
    pub ensemble: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the sweep and write records.csv, summary.json and optional CDF exports.
    Simulate,
    /// Fit rates to an existing records CSV.
    Rates {
        #[arg(long)]
        input: PathBuf,
    },
    /// Average s_n^H(u + iv) over replicates and compare with the semicircle transform.
    BiasScan {
        /// Real parts to scan (repeatable; replaces the config grid).
        #[arg(long = "u", allow_negative_numbers = true)]
        u: Vec<f64>,
        #[arg(long)]
        c0: Option<f64>,
        #[arg(long, value_enum)]
        route: Option<RouteArg>,
    },
    /// Summaries of the partial-sum process Q_n and replicate-0 paths.
    Bridge,
    /// Check the smoothing inequality on every replicate.
    CheckBe,
    /// Semicircle CDF/density at real points and Stieltjes transform at complex points.
    Cdf {
        #[arg(long = "x", allow_negative_numbers = true)]
        x: Vec<f64>,
        /// `re,im` with im > 0.
        #[arg(long = "z", allow_hyphen_values = true, value_parser = parse_complex)]
        z: Vec<Complex64>,
        /// Print the density instead of the CDF for `--x`.
        #[arg(long)]
        density: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RouteArg {
    Solve,
    Eigen,
}

fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected re,im but got `{s}`"))?;
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    Ok(Complex64::new(parse(re)?, parse(im)?))
}

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_config() { 2 } else { 1 })
        }
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let common = &cli.common;
    match &cli.command {
        Command::Cdf { x, z, density } => cdf(x, z, *density),
        Command::Rates { input } => rates(input, common.out.as_deref()),
        command => {
            let cfg = experiment_config(common)?;
            let out = common.out.clone().unwrap_or_else(|| PathBuf::from("results"));
            with_threads(common.threads, || match command {
                Command::Simulate => simulate(&cfg, &out),
                Command::BiasScan { u, c0, route } => scan(&cfg, &out, u, *c0, *route),
                Command::Bridge => bridge(&cfg, &out),
                Command::CheckBe => check_be(&cfg, &out),
                Command::Cdf { .. } | Command::Rates { .. } => unreachable!(),
            })?
        }
    }
}

/// Config file, then `--set` overrides, then the dedicated flags.
pub fn experiment_config(common: &CommonArgs) -> Result<ExperimentConfig> {
    let file = match &common.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let mut overrides = common.overrides.clone();
    if let Some(seed) = common.seed {
        overrides.push(format!("experiment.master_seed={seed}"));
    }
    if !common.n.is_empty() {
        let ns: Vec<String> = common.n.iter().map(|n| n.to_string()).collect();
        overrides.push(format!("experiment.n_values=[{}]", ns.join(",")));
    }
    if let Some(reps) = common.reps {
        overrides.push(format!("experiment.replicates={reps}"));
    }
    if !common.vector_law.is_empty() {
        let laws: Vec<String> = common.vector_law.iter().map(|l| format!("{l:?}")).collect();
        overrides.push(format!("experiment.vector_laws=[{}]", laws.join(",")));
    }
    if let Some(name) = &common.ensemble {
        overrides.push(format!("ensemble.preset={name:?}"));
    }
    file.with_overrides(&overrides)?.experiment()
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    Ok(BufWriter::new(File::create(path)?))
}

fn write_json<T: Serialize>(value: &T, path: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    if let Some(path) = path {
        let mut f = create(path)?;
        writeln!(f, "{text}")?;
        f.flush()?;
    }
    println!("{text}");
    Ok(())
}

fn persist_records(records: &[ExperimentRecord], out: &Path, name: &str) -> Result<usize> {
    let path = out.join(name);
    write_records_csv(records, create(&path)?)?;
    eprintln!("wrote {}", path.display());
    let failures = records.iter().filter(|r| r.is_failure()).count();
    if failures > 0 {
        let path = out.join("failures.csv");
        write_failures_csv(records, create(&path)?)?;
        eprintln!("{failures} failed rows listed in {}", path.display());
    }
    Ok(failures)
}

fn simulate(cfg: &ExperimentConfig, out: &Path) -> Result<()> {
    let records = run_experiment(cfg)?;
    persist_records(&records, out, "records.csv")?;
    if cfg.export_cdfs {
        for (n, label, cdf) in figure_cdfs(cfg)? {
            cdf.write_csv(create(&out.join("cdfs").join(format!("n{n}_{label}.csv")))?)?;
        }
        eprintln!("wrote step CDFs to {}", out.join("cdfs").display());
    }
    let distinct = cfg.n_values.len();
    if distinct >= 3 {
        write_json(&aggregate_and_fit(&records)?, Some(&out.join("summary.json")))
    } else {
        eprintln!("skipping rate fit: {distinct} dimension(s), at least 3 needed");
        Ok(())
    }
}

fn rates(input: &Path, out: Option<&Path>) -> Result<()> {
    let file = File::open(input)?;
    let records = read_records_csv(file)?;
    let summary = aggregate_and_fit(&records)?;
    write_json(&summary, out.map(|d| d.join("summary.json")).as_deref())
}

fn scan(
    cfg: &ExperimentConfig,
    out: &Path,
    u: &[f64],
    c0: Option<f64>,
    route: Option<RouteArg>,
) -> Result<()> {
    let mut scan_cfg = cfg.bias_scan.clone().unwrap_or_else(|| BiasScanConfig::at(vec![0.5], 2.0));
    if !u.is_empty() {
        scan_cfg.u_values = Some(u.to_vec());
    }
    if let Some(c0) = c0 {
        scan_cfg.c0 = c0;
    }
    match route {
        Some(RouteArg::Solve) => scan_cfg.route = BiasRoute::Solve,
        Some(RouteArg::Eigen) => scan_cfg.route = BiasRoute::Eigen,
        None => {}
    }
    let rows = bias_scan(cfg, &scan_cfg)?;
    let path = out.join("bias_scan.csv");
    let mut file = csv::Writer::from_writer(create(&path)?);
    let mut stdout = csv::Writer::from_writer(io::stdout().lock());
    for row in &rows {
        file.serialize(row)?;
        stdout.serialize(row)?;
    }
    file.flush()?;
    stdout.flush()?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn bridge(cfg: &ExperimentConfig, out: &Path) -> Result<()> {
    let study = bridge_study(cfg)?;
    let path = out.join("bridge.csv");
    let mut file = csv::Writer::from_writer(create(&path)?);
    let mut stdout = csv::Writer::from_writer(io::stdout().lock());
    for s in &study.summaries {
        file.serialize(s)?;
        stdout.serialize(s)?;
    }
    file.flush()?;
    stdout.flush()?;
    for (n, law, path) in &study.paths {
        path.write_csv(create(&out.join("paths").join(format!("n{n}_{law}.csv")))?)?;
    }
    eprintln!("wrote {} and {}", path.display(), out.join("paths").display());
    Ok(())
}

#[derive(Serialize)]
struct BeReport {
    checks: usize,
    holds: usize,
    violations: usize,
    failed_replicates: usize,
    max_lhs_over_rhs: f64,
}

fn check_be(cfg: &ExperimentConfig, out: &Path) -> Result<()> {
    let mut cfg = cfg.clone();
    cfg.berry_esseen.get_or_insert_with(BerryEsseenConfig::default);
    let records = run_experiment(&cfg)?;
    let failed_replicates = persist_records(&records, out, "be_records.csv")?;
    let outcomes: Vec<bool> = records.iter().filter_map(ExperimentRecord::be_holds).collect();
    let holds = outcomes.iter().filter(|&&h| h).count();
    let max_ratio = records
        .iter()
        .filter_map(|r| Some(r.be_lhs? / r.be_rhs?))
        .fold(0.0, f64::max);
    let report = BeReport {
        checks: outcomes.len(),
        holds,
        violations: outcomes.len() - holds,
        failed_replicates,
        max_lhs_over_rhs: max_ratio,
    };
    write_json(&report, None)?;
    if report.violations > 0 {
        return Err(Error::InvalidParameter(format!(
            "smoothing inequality violated in {} of {} checks",
            report.violations, report.checks
        )));
    }
    Ok(())
}

fn cdf(xs: &[f64], zs: &[Complex64], density: bool) -> Result<()> {
    if xs.is_empty() && zs.is_empty() {
        return Err(Error::Config("cdf: give at least one --x or --z".into()));
    }
    let mut stdout = io::stdout().lock();
    for &x in xs {
        let value = if density { semicircle_density(x) } else { semicircle_cdf(x) };
        writeln!(stdout, "{value}")?;
    }
    for &z in zs {
        let s = semicircle_stieltjes(z).map_err(|e| Error::Config(e.to_string()))?;
        // `+ 0.0` turns a negative zero into 0.
        writeln!(stdout, "{},{}", s.re + 0.0, s.im + 0.0)?;
    }
    Ok(())
}
