//! The `onecut` command line.
//!
//! Exit codes: 0 success, 2 invalid arguments, 3 numerical non-convergence,
//! 4 verification failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;

use crate::closedform::{self, EnsembleSpec};
use crate::density::DensityGrid;
use crate::error::{Error, Result};
use crate::genfun::{self, CovarianceTable, SupportInterval};
use crate::mcsim::{self, MCConfig};
use crate::planarcount;
use crate::series::ExactScalar;
use crate::verify::{self, Level, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NONCONVERGENCE: i32 = 3;
pub const EXIT_VERIFY_FAILED: i32 = 4;

const DEFAULT_SEED: u64 = 20240917;

#[derive(Debug, Parser)]
#[command(
    name = "onecut",
    version,
    about = "Large-N power-trace covariances of one-cut beta-ensembles"
)]
pub struct Cli {
    /// Output format for results written to stdout
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Gaussian,
    Wishart,
    Jacobi,
}

#[derive(Debug, Clone, Args)]
pub struct EnsembleArgs {
    #[arg(long, value_enum, default_value_t = Kind::Gaussian)]
    pub ensemble: Kind,
    /// Wishart aspect ratio (>= 1)
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[arg(long, default_value_t = 0.0)]
    pub gamma1: f64,
    #[arg(long, default_value_t = 0.0)]
    pub gamma2: f64,
    /// Dyson index
    #[arg(long, default_value_t = 2.0)]
    pub beta: f64,
}

impl EnsembleArgs {
    fn spec(&self) -> Result<EnsembleSpec> {
        match self.ensemble {
            Kind::Gaussian => EnsembleSpec::gaussian(self.beta),
            Kind::Wishart => EnsembleSpec::wishart(self.c, self.beta),
            Kind::Jacobi => EnsembleSpec::jacobi(self.gamma1, self.gamma2, self.beta),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of alpha_{k,l}/beta
    Cov {
        #[command(flatten)]
        ensemble: EnsembleArgs,
        /// Arbitrary support [a, b] (rationals like -2, 1/2, 0.25); overrides --ensemble
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
        support: Option<Vec<String>>,
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        /// Print exact rationals
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate or expand the generating function
    Genfun {
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true, required = true)]
        support: Vec<String>,
        #[arg(long, allow_negative_numbers = true)]
        z: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        zeta: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        /// Exact expansion up to this order instead of a point value
        #[arg(long)]
        expand: Option<usize>,
    },
    /// Equilibrium density on a Chebyshev grid (CSV)
    Density {
        #[command(flatten)]
        ensemble: EnsembleArgs,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        /// Reconstruct the density from V' instead of the closed form
        #[arg(long)]
        tricomi: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo estimate of N^2 Cov(X_k, X_l)
    Mc {
        #[command(flatten)]
        ensemble: EnsembleArgs,
        /// Matrix size
        #[arg(long = "N", default_value_t = 50)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, env = "ONECUT_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        #[arg(long)]
        lmax: Option<usize>,
        /// Write the full estimate as JSON
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the covariance comparison as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write the correlation comparison (with z-scores) as CSV
        #[arg(long)]
        corr_csv: Option<PathBuf>,
    },
    /// Count connected planar pairings of two circles
    Count {
        #[arg(long)]
        kappa: usize,
        #[arg(long)]
        ell: usize,
    },
    /// Run the cross-check suite
    Verify {
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
        #[arg(long, env = "ONECUT_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

/// Machine-readable record of one invocation.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub version: &'static str,
    pub seed: Option<u64>,
    pub wall_seconds: f64,
    pub result: serde_json::Value,
    pub passed: Option<bool>,
}

/// Parses `args` (including the program name) and runs the command,
/// writing results to `out`. Returns the process exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(out, "{}", e.render());
            } else {
                let _ = e.print();
            }
            return if code == 0 { EXIT_OK } else { EXIT_INVALID };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Entry point for the binary.
pub fn main_entry() -> i32 {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    run_with(std::env::args_os(), &mut lock)
}

fn create(path: &PathBuf) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn parse_support(values: &[String]) -> Result<SupportInterval> {
    let a = genfun::parse_rational(&values[0])?;
    let b = genfun::parse_rational(&values[1])?;
    SupportInterval::rational(a, b)
}

fn exact_beta(beta: f64) -> Result<ExactScalar> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::invalid(format!("beta must be positive, got {beta}")));
    }
    BigRational::from_float(beta).ok_or_else(|| Error::invalid("beta"))
}

fn report(
    cli: &Cli,
    out: &mut dyn Write,
    command: &str,
    seed: Option<u64>,
    start: Instant,
    result: serde_json::Value,
    passed: Option<bool>,
) -> Result<()> {
    if cli.format == Format::Json {
        let r = RunReport {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION"),
            seed,
            wall_seconds: start.elapsed().as_secs_f64(),
            result,
            passed,
        };
        serde_json::to_writer_pretty(&mut *out, &r)?;
        writeln!(out)?;
    }
    Ok(())
}

fn table_json(table: &CovarianceTable, beta: &ExactScalar, exact: bool) -> serde_json::Value {
    let rows: Vec<Vec<serde_json::Value>> = (0..=table.order)
        .map(|k| {
            (0..=table.order)
                .map(|l| match (exact, table.get_exact(k, l)) {
                    (true, Some(v)) => serde_json::Value::String((v / beta).to_string()),
                    _ => serde_json::json!(table.get(k, l) / crate::series::to_f64(beta)),
                })
                .collect()
        })
        .collect();
    serde_json::json!({
        "support": table.support,
        "order": table.order,
        "provenance": table.provenance,
        "alpha_over_beta": rows,
    })
}

fn write_table_csv(
    w: &mut dyn Write,
    table: &CovarianceTable,
    beta: &ExactScalar,
    exact: bool,
) -> Result<()> {
    let mut c = csv::Writer::from_writer(w);
    c.write_record(["kappa", "ell", "alpha_over_beta"])?;
    let bf = crate::series::to_f64(beta);
    for k in 1..=table.order {
        for l in 1..=table.order {
            let v = match (exact, table.get_exact(k, l)) {
                (true, Some(v)) => (v / beta).to_string(),
                _ => format!("{:.16e}", table.get(k, l) / bf),
            };
            c.write_record([k.to_string(), l.to_string(), v])?;
        }
    }
    c.flush()?;
    Ok(())
}

fn write_table_text(
    w: &mut dyn Write,
    table: &CovarianceTable,
    beta: &ExactScalar,
    exact: bool,
) -> Result<()> {
    writeln!(
        w,
        "alpha_{{k,l}}/beta on [{}, {}] ({:?}), k, l = 1..{}",
        table.support.a(),
        table.support.b(),
        table.provenance,
        table.order
    )?;
    let bf = crate::series::to_f64(beta);
    for k in 1..=table.order {
        let row: Vec<String> = (1..=table.order)
            .map(|l| match (exact, table.get_exact(k, l)) {
                (true, Some(v)) => (v / beta).to_string(),
                _ => format!("{:.10}", table.get(k, l) / bf),
            })
            .collect();
        writeln!(w, "{}", row.join("\t"))?;
    }
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let start = Instant::now();
    match &cli.command {
        Command::Cov {
            ensemble,
            support,
            kmax,
            exact,
            out: path,
        } => {
            let beta = exact_beta(ensemble.beta)?;
            let table = match support {
                Some(s) => genfun::expand_f(&parse_support(s)?, *kmax)?,
                None => ensemble.spec()?.covariance_table(*kmax)?,
            };
            if *exact && !table.is_exact() {
                return Err(Error::IrrationalEdges);
            }
            if let Some(p) = path {
                write_table_csv(&mut create(p)?, &table, &beta, *exact)?;
            }
            match cli.format {
                Format::Text => write_table_text(out, &table, &beta, *exact)?,
                Format::Csv => write_table_csv(out, &table, &beta, *exact)?,
                Format::Json => report(
                    cli,
                    out,
                    "cov",
                    None,
                    start,
                    table_json(&table, &beta, *exact),
                    None,
                )?,
            }
            Ok(EXIT_OK)
        }
        Command::Genfun {
            support,
            z,
            zeta,
            beta,
            expand,
        } => {
            let s = parse_support(support)?;
            if let Some(k) = expand {
                let table = genfun::expand_f(&s, *k)?;
                let b = exact_beta(*beta)?;
                match cli.format {
                    Format::Text => write_table_text(out, &table, &b, true)?,
                    Format::Csv => write_table_csv(out, &table, &b, true)?,
                    Format::Json => report(
                        cli,
                        out,
                        "genfun",
                        None,
                        start,
                        table_json(&table, &b, true),
                        None,
                    )?,
                }
                return Ok(EXIT_OK);
            }
            let (Some(z), Some(zeta)) = (z, zeta) else {
                return Err(Error::invalid("genfun needs --z and --zeta, or --expand K"));
            };
            let direct = genfun::eval_f(&s, *beta, *z, *zeta)?;
            let jouk = genfun::eval_f_joukowski(&s, *beta, *z, *zeta)?;
            let symmetric = if s.is_centered() {
                Some(genfun::eval_f_symmetric(s.b(), *beta, *z, *zeta)?)
            } else {
                None
            };
            let dev = symmetric
                .iter()
                .chain(std::iter::once(&jouk))
                .map(|v| (v - direct).abs())
                .fold(0.0, f64::max);
            match cli.format {
                Format::Json => report(
                    cli,
                    out,
                    "genfun",
                    None,
                    start,
                    serde_json::json!({"direct": direct, "symmetric": symmetric, "joukowski": jouk, "max_deviation": dev}),
                    None,
                )?,
                _ => {
                    writeln!(out, "direct     {direct:.17e}")?;
                    if let Some(v) = symmetric {
                        writeln!(out, "symmetric  {v:.17e}")?;
                    }
                    writeln!(out, "joukowski  {jouk:.17e}")?;
                    writeln!(out, "max deviation {dev:.3e}")?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Density {
            ensemble,
            grid,
            tricomi,
            out: path,
        } => {
            let spec = ensemble.spec()?;
            let closed = DensityGrid::closed(&spec, *grid)?;
            let recon = DensityGrid::tricomi(&spec.potential()?, *grid, 16)?;
            let chosen = if *tricomi { &recon } else { &closed };
            let dev = closed.max_abs_diff(&recon);
            let norm = chosen.normalization();
            match path {
                Some(p) => chosen.write_csv(create(p)?)?,
                None if cli.format != Format::Json => {
                    chosen.write_csv(&mut *out)?;
                    return Ok(EXIT_OK);
                }
                None => {}
            }
            match cli.format {
                Format::Json => report(
                    cli,
                    out,
                    "density",
                    None,
                    start,
                    serde_json::json!({"points": grid, "normalization": norm, "max_tricomi_deviation": dev}),
                    None,
                )?,
                _ => {
                    writeln!(out, "points {grid}")?;
                    writeln!(out, "normalization {norm:.12}")?;
                    writeln!(out, "max |closed - tricomi| {dev:.3e}")?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Mc {
            ensemble,
            n,
            samples,
            seed,
            workers,
            kmax,
            lmax,
            json,
            csv,
            corr_csv,
        } => {
            let cfg = MCConfig::new(ensemble.spec()?, *n, *samples, *seed)
                .with_orders(*kmax, lmax.unwrap_or(*kmax))
                .with_workers(*workers);
            let est = mcsim::estimate(&cfg)?;
            let theory = est.theory()?;
            if let Some(p) = json {
                let mut f = create(p)?;
                est.write_json(&mut f)?;
                writeln!(f)?;
            }
            if let Some(p) = csv {
                est.write_csv(create(p)?, &theory)?;
            }
            if let Some(p) = corr_csv {
                est.write_correlation_csv(create(p)?, &theory)?;
            }
            match cli.format {
                Format::Json => report(
                    cli,
                    out,
                    "mc",
                    Some(*seed),
                    start,
                    serde_json::to_value(&est)?,
                    None,
                )?,
                Format::Csv => est.write_correlation_csv(&mut *out, &theory)?,
                Format::Text => {
                    writeln!(
                        out,
                        "{} N={} samples={} beta={} seed={} ess={:.0}",
                        cfg.ensemble.name(),
                        cfg.n,
                        cfg.samples,
                        cfg.beta(),
                        cfg.seed,
                        est.effective_sample_size
                    )?;
                    writeln!(out, "kappa\tell\tr_emp\tr_theory\tstderr\tz")?;
                    for r in est.correlation_rows(&theory) {
                        writeln!(
                            out,
                            "{}\t{}\t{:.5}\t{:.5}\t{:.5}\t{:+.2}",
                            r.kappa, r.ell, r.empirical, r.theory, r.stderr, r.z
                        )?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Count { kappa, ell } => {
            let count = planarcount::count_connected_annular(*kappa, *ell)?;
            let half = closedform::gaussian_cov(*kappa, *ell) / crate::series::int(2);
            let agrees = ExactScalar::from_integer(count.clone().into()) == half;
            match cli.format {
                Format::Json => report(
                    cli,
                    out,
                    "count",
                    None,
                    start,
                    serde_json::json!({"kappa": kappa, "ell": ell, "count": count.to_string(), "half_alpha": half.to_string(), "agrees": agrees}),
                    None,
                )?,
                _ => writeln!(
                    out,
                    "{count}\t(alpha^G/2 = {half}, {})",
                    if agrees { "match" } else { "MISMATCH" }
                )?,
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            level,
            seed,
            workers,
            inject_fault,
        } => {
            let opts = VerifyOptions {
                level: *level,
                seed: *seed,
                workers: *workers,
                inject_fault: *inject_fault,
            };
            let rep = verify::run(&opts);
            match cli.format {
                Format::Json => report(
                    cli,
                    out,
                    "verify",
                    Some(*seed),
                    start,
                    serde_json::to_value(&rep)?,
                    Some(rep.passed),
                )?,
                _ => {
                    for c in &rep.checks {
                        writeln!(
                            out,
                            "{} {:<16} {:>8.2}s  {}",
                            if c.passed { "PASS" } else { "FAIL" },
                            c.name,
                            c.seconds,
                            c.detail
                        )?;
                    }
                    writeln!(
                        out,
                        "{}",
                        if rep.passed {
                            "all checks passed"
                        } else {
                            "verification FAILED"
                        }
                    )?;
                }
            }
            Ok(if rep.passed {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let code = run_with(
            std::iter::once("onecut").chain(args.iter().copied()),
            &mut out,
        );
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn cov_exact_csv() {
        let (code, text) = run(&[
            "--format",
            "csv",
            "cov",
            "--support",
            "-2",
            "2",
            "--beta",
            "2",
            "--kmax",
            "2",
            "--exact",
        ]);
        assert_eq!(code, 0);
        assert!(text.starts_with("kappa,ell,alpha_over_beta\n"));
        assert!(text.contains("1,1,1\n"));
        assert!(text.contains("2,2,2\n"));
    }

    #[test]
    fn invalid_arguments() {
        assert_eq!(run(&["cov", "--ensemble", "wishart", "--c", "0.5"]).0, 2);
        assert_eq!(run(&["bogus"]).0, 2);
        assert_eq!(run(&["count", "--kappa", "9", "--ell", "9"]).0, 2);
    }
}
