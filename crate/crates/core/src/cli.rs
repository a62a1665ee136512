//! Command driver behind the `crflat` binary.
//!
//! Exit codes: `0` success (and, for `invariants`, a CR-flat candidate),
//! `1` computed but not flat or a failed check, `2` invalid input or a
//! violated precondition, `3` I/O or parse failure.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::config::{read_sidecar, write_sidecar, ConstructConfig};
use crate::construct::{construct_tol, mtilde0};
use crate::error::Error;
use crate::invariants::{full_report, Flags, HypersurfaceGerm, InvariantReport, JFormula};
use crate::sampling::DEFAULT_SEED;
use crate::series::io::{read_series, write_series, SeriesFile};
use crate::series::{Var, ORDER_CAP};
use crate::tolerance::Tolerances;
use crate::xcheck::{
    cauchy_pompeiu_check, eval_grid, fd_residual, fd_threshold, Plane, Verdict,
    CAUCHY_POMPEIU_THRESHOLD,
};

pub const REPORT_FORMAT: &str = "crflat-report-v1";
pub const MIN_ORDER: u32 = 6;
pub const DEFAULT_MAX_ORDER: u32 = 24;
pub const MAX_ORDER_ENV: &str = "CRFLAT_MAX_ORDER";

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_FLAT: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "crflat",
    version,
    about = "Construct and certify CR-flat rigid hypersurface germs"
)]
pub struct Cli {
    /// Relative comparison tolerance.
    #[arg(long, global = true)]
    pub tol_cmp: Option<f64>,
    /// Absolute division tolerance.
    #[arg(long, global = true)]
    pub tol_div: Option<f64>,
    /// Increase log verbosity (repeatable).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Fd,
    CauchyPompeiu,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlaneArg {
    Z1,
    Z2,
}

impl From<PlaneArg> for Plane {
    fn from(p: PlaneArg) -> Self {
        match p {
            PlaneArg::Z1 => Plane::Z1,
            PlaneArg::Z2 => Plane::Z2,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build F from a construction config.
    Construct {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write r, t, u and Re v.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Compute invariants and residuals of a series file.
    Invariants {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        report: PathBuf,
        /// Include S, J, W and the residual series in the report.
        #[arg(long)]
        embed_series: bool,
    },
    /// Write the model germ.
    Mtilde0 {
        #[arg(long)]
        order: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a numerical cross-check.
    Check {
        #[arg(long, value_enum)]
        kind: CheckKind,
        /// A series file (fd) or a sidecar (cauchy-pompeiu).
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        radius: f64,
        #[arg(long)]
        n: usize,
        /// Derivative multi-index `a,b,c,d` for fd.
        #[arg(long, default_value = "1,1,0,0")]
        deriv: String,
        #[arg(long, value_enum, default_value = "z1")]
        plane: PlaneArg,
        /// Override the pass threshold.
        #[arg(long)]
        threshold: Option<f64>,
        /// Write the derivative values on the grid as CSV (fd only).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run the condensed acceptance checks.
    Selftest {
        #[arg(long, default_value_t = 12)]
        order: u32,
        #[arg(long, default_value_t = 5)]
        draws: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

/// A failure together with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) | Error::Format(_) => EXIT_IO,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// The largest accepted order: `CRFLAT_MAX_ORDER` if set, else 24.
pub fn max_order() -> std::result::Result<u32, Failure> {
    match std::env::var(MAX_ORDER_ENV) {
        Ok(v) => {
            let n: u32 = v
                .trim()
                .parse()
                .map_err(|_| Failure::invalid(format!("{MAX_ORDER_ENV}={v:?} is not an order")))?;
            if n > ORDER_CAP {
                return Err(Failure::invalid(format!(
                    "{MAX_ORDER_ENV}={n} exceeds the engine cap {ORDER_CAP}"
                )));
            }
            Ok(n)
        }
        Err(_) => Ok(DEFAULT_MAX_ORDER),
    }
}

fn check_order(order: u32, min: u32) -> std::result::Result<(), Failure> {
    let max = max_order()?;
    if order < min {
        return Err(Failure::invalid(format!(
            "order {order} is below the minimum {min}"
        )));
    }
    if order > max {
        return Err(Failure::invalid(format!(
            "order {order} exceeds the maximum {max} ({MAX_ORDER_ENV})"
        )));
    }
    Ok(())
}

fn io_err(path: &Path, e: Error) -> Failure {
    let mut f = Failure::from(e);
    f.message = format!("{}: {}", path.display(), f.message);
    f
}

#[derive(Debug, Clone, Copy, Serialize)]
struct Complex {
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct ReportFile<'a> {
    format: &'static str,
    order_in: u32,
    tolerances: Tolerances,
    #[serde(rename = "S0")]
    s0: Option<Complex>,
    flags: Flags,
    j_formula: Option<JFormula>,
    max_residual_magnitudes: BTreeMap<&'static str, Option<f64>>,
    errors: BTreeMap<&'static str, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    series: Option<BTreeMap<&'a str, SeriesFile>>,
}

/// The `crflat-report-v1` JSON text of a report.
pub fn report_json(report: &InvariantReport, embed_series: bool) -> String {
    let series = embed_series.then(|| {
        let mut m = BTreeMap::new();
        if let Ok(s) = &report.s {
            m.insert("S", SeriesFile::from(s));
        }
        for (name, s) in report.residuals() {
            if let Ok(s) = s {
                m.insert(name, SeriesFile::from(s));
            }
        }
        m
    });
    let file = ReportFile {
        format: REPORT_FORMAT,
        order_in: report.order_in,
        tolerances: report.tolerances,
        s0: report.s0.map(|c| Complex { re: c.re, im: c.im }),
        flags: report.flags,
        j_formula: report.j.as_ref().ok().map(|j| j.formula),
        max_residual_magnitudes: report.max_residual_magnitudes(),
        errors: report.errors(),
        series,
    };
    let mut out = serde_json::to_string_pretty(&file).expect("serializable");
    out.push('\n');
    out
}

fn parse_deriv(text: &str) -> std::result::Result<[u32; 4], Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || {
        Failure::invalid(format!(
            "--deriv {text:?} is not four comma-separated integers"
        ))
    };
    if parts.len() != 4 {
        return Err(bad());
    }
    let mut out = [0u32; 4];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p.parse().map_err(|_| bad())?;
    }
    Ok(out)
}

fn cmd_construct(config: &Path, out: &Path, sidecar: Option<&Path>, tol: &Tolerances) -> CmdResult {
    let cfg = ConstructConfig::read(config).map_err(|e| io_err(config, e))?;
    check_order(cfg.order, MIN_ORDER)?;
    let rho = cfg.rho().map_err(|e| io_err(config, e))?;
    let seed = cfg.seed().map_err(|e| io_err(config, e))?;
    let built = construct_tol(&rho, &seed, cfg.order, tol)?;
    write_series(out, built.germ.f()).map_err(|e| io_err(out, e))?;
    if let Some(path) = sidecar {
        write_sidecar(path, &built.data).map_err(|e| io_err(path, e))?;
    }
    log::info!(
        "wrote F at order {} to {}",
        built.germ.order(),
        out.display()
    );
    Ok(EXIT_OK)
}

fn cmd_invariants(input: &Path, report: &Path, embed: bool, tol: &Tolerances) -> CmdResult {
    let f = read_series(input).map_err(|e| io_err(input, e))?;
    check_order(f.order(), MIN_ORDER)?;
    let g = HypersurfaceGerm::with_tolerances(f, tol)?;
    let rep = full_report(&g, tol);
    std::fs::write(report, report_json(&rep, embed)).map_err(|e| io_err(report, e.into()))?;
    if rep.flags.cr_flat_candidate.value {
        Ok(EXIT_OK)
    } else {
        for (name, err) in rep.errors() {
            log::warn!("{name}: {err}");
        }
        Ok(EXIT_NOT_FLAT)
    }
}

fn cmd_mtilde0(order: u32, out: &Path) -> CmdResult {
    check_order(order, 2)?;
    let g = mtilde0(order)?;
    write_series(out, g.f()).map_err(|e| io_err(out, e))?;
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_check(
    kind: CheckKind,
    input: &Path,
    radius: f64,
    n: usize,
    deriv: &str,
    plane: Plane,
    threshold: Option<f64>,
    csv: Option<&Path>,
) -> CmdResult {
    let verdict = match kind {
        CheckKind::Fd => {
            let deriv = parse_deriv(deriv)?;
            let f = read_series(input).map_err(|e| io_err(input, e))?;
            let max_residual = fd_residual(&f, deriv, radius, n, plane)?;
            if let Some(path) = csv {
                let vars: Vec<Var> = Var::ALL
                    .iter()
                    .zip(deriv)
                    .flat_map(|(&v, e)| std::iter::repeat_n(v, e as usize))
                    .collect();
                let grid = eval_grid(&f.diff_many(&vars)?, radius, n, plane)?;
                let file = std::fs::File::create(path).map_err(|e| io_err(path, e.into()))?;
                grid.write_csv(file).map_err(|e| io_err(path, e))?;
            }
            let threshold = threshold.unwrap_or_else(|| fd_threshold(deriv.iter().sum()));
            Verdict {
                check: "fd".into(),
                radius,
                n,
                max_residual,
                threshold,
                pass: max_residual <= threshold,
                deriv: Some(deriv),
                plane: Some(plane),
            }
        }
        CheckKind::CauchyPompeiu => {
            let data = read_sidecar(input).map_err(|e| io_err(input, e))?;
            let max_residual = cauchy_pompeiu_check(&data.r, &data.u, radius, n)?;
            let threshold = threshold.unwrap_or(CAUCHY_POMPEIU_THRESHOLD);
            Verdict {
                check: "cauchy-pompeiu".into(),
                radius,
                n,
                max_residual,
                threshold,
                pass: max_residual <= threshold,
                deriv: None,
                plane: None,
            }
        }
    };
    println!("{}", verdict.to_line());
    if verdict.pass {
        Ok(EXIT_OK)
    } else {
        eprintln!(
            "check {} failed: {:e} > {:e}",
            verdict.check, verdict.max_residual, verdict.threshold
        );
        Ok(EXIT_NOT_FLAT)
    }
}

fn cmd_selftest(order: u32, draws: usize, seed: u64, tol: &Tolerances) -> CmdResult {
    check_order(order, MIN_ORDER)?;
    let verdict = crate::selftest::run(order, draws, seed, tol)?;
    println!("{}", verdict.to_line());
    match &verdict.first_failure {
        None => Ok(EXIT_OK),
        Some(name) => {
            eprintln!("selftest failed at {name}");
            Ok(EXIT_NOT_FLAT)
        }
    }
}

fn tolerances(cli: &Cli) -> std::result::Result<Tolerances, Failure> {
    let mut tol = Tolerances::default();
    if let Some(c) = cli.tol_cmp {
        tol.cmp = c;
    }
    if let Some(d) = cli.tol_div {
        tol.div = d;
    }
    if !(tol.cmp > 0.0 && tol.cmp.is_finite() && tol.div > 0.0 && tol.div.is_finite()) {
        return Err(Failure::invalid("tolerances must be positive and finite"));
    }
    Ok(tol)
}

pub fn execute(cli: &Cli) -> CmdResult {
    let tol = tolerances(cli)?;
    match &cli.command {
        Command::Construct {
            config,
            out,
            sidecar,
        } => cmd_construct(config, out, sidecar.as_deref(), &tol),
        Command::Invariants {
            input,
            report,
            embed_series,
        } => cmd_invariants(input, report, *embed_series, &tol),
        Command::Mtilde0 { order, out } => cmd_mtilde0(*order, out),
        Command::Check {
            kind,
            input,
            radius,
            n,
            deriv,
            plane,
            threshold,
            csv,
        } => cmd_check(
            *kind,
            input,
            *radius,
            *n,
            deriv,
            (*plane).into(),
            *threshold,
            csv.as_deref(),
        ),
        Command::Selftest { order, draws, seed } => cmd_selftest(*order, *draws, *seed, &tol),
    }
}

/// Parses `args` (including the program name), runs and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new().filter_level(level).try_init();
    match execute(&cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deriv_parsing() {
        assert_eq!(parse_deriv("2, 1,0,0").unwrap(), [2, 1, 0, 0]);
        assert!(parse_deriv("1,1").is_err());
        assert!(parse_deriv("a,1,0,0").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(["crflat", "bogus"]), EXIT_INVALID);
        assert_eq!(
            run(["crflat", "mtilde0", "--order", "x", "--out", "y"]),
            EXIT_INVALID
        );
        assert_eq!(run(["crflat", "--help"]), EXIT_OK);
    }
}
