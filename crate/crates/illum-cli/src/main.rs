//! `illum` — certified upper bounds on covering numbers of convex bodies.
//!
//! Four subcommands: `meanwidth` (regular-simplex mean width via sandwich
//! quadrature), `theta` (Euclidean-ball covering-density bounds), `bound`
//! (integer covering bounds assembled from quermassintegral estimates), and
//! `tables` (the full bound tables for 3 ≤ n ≤ 14). Every printed interval
//! endpoint is rounded outward, so the output itself is a certificate.
//!
//! Exit codes: 0 success, 2 usage or domain error, 3 I/O error.

mod output;

use clap::{Parser, Subcommand, ValueEnum};
use illum_core::covering::{
    parse_catalog_overrides, rogers_rn, theta_anstar, theta_best_with, theta_catalog_with,
};
use illum_core::hadwiger::{
    best_bound_with, external_citation, john_bound, rogers_bound, BoundMethod, HadwigerBound,
    PlanKind,
};
use illum_core::meanwidth::{simplex_mean_width, QuadratureParams};
use illum_core::{BodyClass, Dimension, Precision};
use output::{
    render_record_csv, render_record_json, render_record_text, render_tables_csv,
    render_tables_json, render_tables_text, BoundRow, OutputRecord, ParamsOut, RogersRow,
    TablesOut,
};
use rug::Rational;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "illum",
    version,
    about = "Certified upper bounds on covering numbers of convex bodies",
    long_about = "Computes enclosure-certified upper bounds on Hadwiger-type covering \
numbers, Euclidean-ball covering densities, and regular-simplex mean widths. \
Every interval endpoint in the output is rounded outward, so printed values \
remain rigorous bounds."
)]
struct Cli {
    /// Working precision in bits (53 to 2^24).
    #[arg(long, global = true, default_value_t = 128)]
    precision: u32,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Decimal digits for printed endpoints (lower rounds down, upper up).
    #[arg(long, global = true, default_value_t = 6)]
    digits: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ThetaMethodArg {
    /// Exact-formula lattice-family density bound.
    Anstar,
    /// Published six-decimal catalog row plus the certification margin.
    Catalog,
    /// Certified grid minimum of the Rogers bound function.
    Rogers,
    /// Smallest available upper bound among the applicable methods.
    Best,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BoundMethodArg {
    /// Minimum over external constants, the John assembly, and Rogers.
    Best,
    /// John-position quermassintegral assembly only.
    John,
    /// Rogers counting bound only.
    Rogers,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PlanArg {
    /// Hand-chosen anchor plans.
    Hand,
    /// Fixpoint search over all admissible anchor triples.
    Auto,
}

#[derive(Subcommand)]
enum Command {
    /// Certified mean width of the regular simplex with unit edge.
    Meanwidth {
        /// Dimension n (1 to 16).
        #[arg(long)]
        dim: u32,
        /// Quadrature cutoff a (integrand tail beyond it is bounded in closed form).
        #[arg(long, default_value_t = 20)]
        cutoff: u32,
        /// Number of quadrature subdivisions N.
        #[arg(long, default_value_t = 1_000_000)]
        subdivisions: u64,
    },
    /// Certified upper bound on the Euclidean-ball covering density.
    Theta {
        /// Dimension n (2 to 14; rogers needs n >= 3, catalog stops at 13).
        #[arg(long)]
        dim: u32,
        /// Bounding method.
        #[arg(long, value_enum, default_value_t = ThetaMethodArg::Best)]
        method: ThetaMethodArg,
        /// Grid resolution for the rogers method (points per unit of 1/n).
        #[arg(long, default_value_t = 1000)]
        grid: u32,
    },
    /// Certified integer covering bound for convex bodies of dimension n.
    Bound {
        /// Dimension n (3 or larger).
        #[arg(long)]
        dim: u32,
        /// Bound centrally symmetric bodies instead of all convex bodies.
        #[arg(long)]
        symmetric: bool,
        /// Bounding method.
        #[arg(long, value_enum, default_value_t = BoundMethodArg::Best)]
        method: BoundMethodArg,
        /// Quermassintegral plan for the John assembly.
        #[arg(long, value_enum, default_value_t = PlanArg::Hand)]
        plan: PlanArg,
        /// Quadrature cutoff a for the mean-width ingredient.
        #[arg(long, default_value_t = 20)]
        cutoff: u32,
        /// Quadrature subdivisions N for the mean-width ingredient.
        #[arg(long, default_value_t = 1_000_000)]
        subdivisions: u64,
    },
    /// All three bound tables for 3 <= n <= 14.
    Tables {
        /// Quadrature cutoff a for the mean-width ingredients.
        #[arg(long, default_value_t = 20)]
        cutoff: u32,
        /// Quadrature subdivisions N for the mean-width ingredients.
        #[arg(long, default_value_t = 1_000_000)]
        subdivisions: u64,
        /// Grid resolution for the covering-density minima table.
        #[arg(long, default_value_t = 1000)]
        grid: u32,
    },
}

/// Errors mapped to process exit codes.
enum CliError {
    /// Usage or domain error → exit 2.
    Usage(String),
    /// I/O error → exit 3.
    Io(String),
}

impl From<illum_core::Error> for CliError {
    fn from(e: illum_core::Error) -> CliError {
        CliError::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(rendered) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, rendered) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(3);
                }
            } else {
                print!("{rendered}");
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let p = Precision::new(cli.precision)?;
    match &cli.command {
        Command::Meanwidth { dim, cutoff, subdivisions } => {
            cmd_meanwidth(cli, p, *dim, *cutoff, *subdivisions)
        }
        Command::Theta { dim, method, grid } => cmd_theta(cli, p, *dim, *method, *grid),
        Command::Bound { dim, symmetric, method, plan, cutoff, subdivisions } => cmd_bound(
            cli,
            p,
            *dim,
            *symmetric,
            *method,
            *plan,
            *cutoff,
            *subdivisions,
        ),
        Command::Tables { cutoff, subdivisions, grid } => {
            cmd_tables(cli, p, *cutoff, *subdivisions, *grid)
        }
    }
}

/// Reads the optional covering-density override file named by
/// `ILLUM_DENSITY_OVERRIDE`: `n value` decimal pairs, one per line.
fn load_overrides() -> Result<Vec<(u32, Rational)>, CliError> {
    match std::env::var_os("ILLUM_DENSITY_OVERRIDE") {
        None => Ok(Vec::new()),
        Some(path) => {
            let text = std::fs::read_to_string(&path).map_err(|e| {
                CliError::Io(format!(
                    "cannot read density override file {}: {e}",
                    PathBuf::from(&path).display()
                ))
            })?;
            Ok(parse_catalog_overrides(&text)?)
        }
    }
}

fn render(cli: &Cli, record: &OutputRecord) -> String {
    match cli.format {
        Format::Text => render_record_text(record),
        Format::Csv => render_record_csv(record),
        Format::Json => render_record_json(record),
    }
}

fn cmd_meanwidth(
    cli: &Cli,
    p: Precision,
    dim: u32,
    cutoff: u32,
    subdivisions: u64,
) -> Result<String, CliError> {
    if !(1..=16).contains(&dim) {
        return Err(CliError::Usage(format!(
            "meanwidth supports dimensions 1 to 16, got {dim}"
        )));
    }
    let n = Dimension::new(dim)?;
    let params = QuadratureParams::from_integers(cutoff, subdivisions)?;
    let mw = simplex_mean_width(n, &params, p);
    let record = OutputRecord {
        quantity: "mean_width",
        n: dim,
        class: None,
        value_lo: mw.width.decimal_lo(cli.digits),
        value_hi: mw.width.decimal_hi(cli.digits),
        integer: None,
        method: "riemann_sandwich".into(),
        params: ParamsOut {
            precision_bits: cli.precision,
            cutoff_a: Some(cutoff),
            subdivisions_n: Some(subdivisions),
            grid_n: None,
        },
        title: format!("mean width of the unit-edge regular simplex, n = {dim}"),
        detail: None,
    };
    Ok(render(cli, &record))
}

fn cmd_theta(
    cli: &Cli,
    p: Precision,
    dim: u32,
    method: ThetaMethodArg,
    grid: u32,
) -> Result<String, CliError> {
    if !(2..=14).contains(&dim) {
        return Err(CliError::Usage(format!(
            "theta supports dimensions 2 to 14, got {dim}"
        )));
    }
    if grid < 2 {
        return Err(CliError::Usage(format!(
            "grid must have at least one interior point (grid >= 2), got {grid}"
        )));
    }
    let n = Dimension::new(dim)?;
    let overrides = load_overrides()?;
    let params = ParamsOut {
        precision_bits: cli.precision,
        cutoff_a: None,
        subdivisions_n: None,
        grid_n: matches!(method, ThetaMethodArg::Rogers).then_some(grid),
    };

    let record = match method {
        ThetaMethodArg::Rogers => {
            if dim < 3 {
                return Err(CliError::Usage(format!(
                    "the rogers method supports dimensions 3 to 14, got {dim}"
                )));
            }
            let rr = rogers_rn(n, grid, p);
            OutputRecord {
                quantity: "rogers_r",
                n: dim,
                class: None,
                value_lo: rr.r.decimal_lo(cli.digits),
                value_hi: rr.r.decimal_hi(cli.digits),
                integer: None,
                method: format!("rogers (grid minimum at j = {})", rr.best_j),
                params,
                title: format!("covering-density bound r_{dim} (any convex body)"),
                detail: None,
            }
        }
        _ => {
            let theta = match method {
                ThetaMethodArg::Anstar => theta_anstar(n, p),
                ThetaMethodArg::Catalog => theta_catalog_with(n, &overrides)?,
                ThetaMethodArg::Best => theta_best_with(n, p, &overrides),
                ThetaMethodArg::Rogers => unreachable!(),
            };
            OutputRecord {
                quantity: "theta",
                n: dim,
                class: None,
                value_lo: theta.value.decimal_lo(cli.digits),
                value_hi: theta.value.decimal_hi(cli.digits),
                integer: None,
                method: theta.method.to_string(),
                params,
                title: format!("covering density of the Euclidean ball, n = {dim}"),
                detail: None,
            }
        }
    };
    Ok(render(cli, &record))
}

fn hadwiger_record(cli: &Cli, hb: &HadwigerBound, params: ParamsOut) -> OutputRecord {
    let cls = match hb.cls {
        BodyClass::General => "general",
        BodyClass::Symmetric => "symmetric",
    };
    OutputRecord {
        quantity: "hadwiger",
        n: hb.n.get(),
        class: Some(cls),
        value_lo: hb.real_bound.decimal_lo(cli.digits),
        value_hi: hb.real_bound.decimal_hi(cli.digits),
        integer: Some(hb.integer_bound.clone()),
        method: hb.method.to_string(),
        params,
        title: format!("covering bound, n = {}, {cls} bodies", hb.n.get()),
        detail: Some(hb.plan_trace.trim_end().to_string()),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_bound(
    cli: &Cli,
    p: Precision,
    dim: u32,
    symmetric: bool,
    method: BoundMethodArg,
    plan: PlanArg,
    cutoff: u32,
    subdivisions: u64,
) -> Result<String, CliError> {
    if dim < 3 {
        return Err(CliError::Usage(format!(
            "integer covering bounds are provided from n = 3 on, got {dim}"
        )));
    }
    let n = Dimension::new(dim)?;
    let cls = if symmetric {
        BodyClass::Symmetric
    } else {
        BodyClass::General
    };
    let overrides = load_overrides()?;
    let qparams = QuadratureParams::from_integers(cutoff, subdivisions)?;
    let plan_kind = match plan {
        PlanArg::Hand => PlanKind::Hand,
        PlanArg::Auto => PlanKind::Auto,
    };

    let hb = match method {
        BoundMethodArg::Best => best_bound_with(n, cls, &qparams, plan_kind, &overrides, p)?,
        BoundMethodArg::John => john_bound(n, cls, &qparams, plan_kind, &overrides, p)?,
        BoundMethodArg::Rogers => rogers_bound(n, cls, p)?,
    };

    let uses_quadrature =
        hb.method == BoundMethod::John && cls == BodyClass::General;
    let params = ParamsOut {
        precision_bits: cli.precision,
        cutoff_a: uses_quadrature.then_some(cutoff),
        subdivisions_n: uses_quadrature.then_some(subdivisions),
        grid_n: (hb.method == BoundMethod::Rogers).then_some(1000),
    };
    Ok(render(cli, &hadwiger_record(cli, &hb, params)))
}

fn cmd_tables(
    cli: &Cli,
    p: Precision,
    cutoff: u32,
    subdivisions: u64,
    grid: u32,
) -> Result<String, CliError> {
    if grid < 2 {
        return Err(CliError::Usage(format!(
            "grid must have at least one interior point (grid >= 2), got {grid}"
        )));
    }
    let overrides = load_overrides()?;
    let qparams = QuadratureParams::from_integers(cutoff, subdivisions)?;

    let bound_rows = |cls: BodyClass| -> Result<Vec<BoundRow>, CliError> {
        (3..=14u32)
            .map(|dim| {
                let n = Dimension::new(dim)?;
                let hb = best_bound_with(n, cls, &qparams, PlanKind::Hand, &overrides, p)?;
                let comment = if hb.method == BoundMethod::External {
                    external_citation(n, cls).unwrap_or_default().to_string()
                } else {
                    String::new()
                };
                Ok(BoundRow {
                    n: dim,
                    bound: hb.integer_bound,
                    method: hb.method.to_string(),
                    comment,
                })
            })
            .collect()
    };

    let rogers_rows: Vec<RogersRow> = (3..=14u32)
        .map(|dim| {
            let rr = rogers_rn(Dimension::new(dim).expect("3..=14"), grid, p);
            RogersRow {
                n: dim,
                r_hi: rr.r.decimal_hi(cli.digits),
            }
        })
        .collect();

    let tables = TablesOut {
        params: ParamsOut {
            precision_bits: cli.precision,
            cutoff_a: Some(cutoff),
            subdivisions_n: Some(subdivisions),
            grid_n: Some(grid),
        },
        general: bound_rows(BodyClass::General)?,
        symmetric: bound_rows(BodyClass::Symmetric)?,
        rogers: rogers_rows,
    };

    Ok(match cli.format {
        Format::Text => render_tables_text(&tables),
        Format::Csv => render_tables_csv(&tables),
        Format::Json => render_tables_json(&tables),
    })
}
