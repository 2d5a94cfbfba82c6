mod output;
mod plot;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lattice_lab::minimizer::{
    classify_shape, locate_boundaries, monotonicity, sweep_areas, sweep_row, Certainty,
    LjLandscape, Minimizer, PhasePoint, SearchOptions, SweepRow,
};
use lattice_lab::{
    checks, classify_point, compute_thresholds, LatticePoint, LennardJones, LjModel, LjParams, Site,
};
use rayon::prelude::*;

const MAX_TOL: f64 = 1e-4;
const BOUNDARY_RESOLUTION: f64 = 1e-5;

#[derive(Parser)]
#[command(
    name = "lattice-lab",
    version,
    about = "Lattice energies and Lennard-Jones phase diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: Config,
}

#[derive(Args, Clone)]
struct Config {
    #[arg(long, global = true, default_value_t = 2.0)]
    a1: f64,
    #[arg(long, global = true, default_value_t = 1.0)]
    a2: f64,
    #[arg(long, global = true, default_value_t = 3.0)]
    t1: f64,
    #[arg(long, global = true, default_value_t = 6.0)]
    t2: f64,
    /// Certified absolute tolerance, in (0, 1e-4].
    #[arg(long, global = true, env = "LATTICE_LAB_TOL", default_value_t = 1e-10, value_parser = parse_tol)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the table here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for sweeps (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Full,
    Rhombic,
    Rectangular,
}

#[derive(Subcommand)]
enum Command {
    /// Stability thresholds A_BZ, A0, A1 and A2.
    Thresholds {
        /// Skip the two-dimensional search for A_BZ.
        #[arg(long)]
        no_abz: bool,
    },
    /// Local stability of the square and triangular lattices at one area.
    Classify {
        #[arg(long)]
        area: f64,
    },
    /// Minimizer at one area.
    Minimize {
        #[arg(long)]
        area: f64,
        #[arg(long, value_enum, default_value_t = Family::Full)]
        family: Family,
    },
    /// Minimizer over a range of areas.
    Sweep {
        #[arg(long, conflicts_with_all = ["area_min", "area_max"])]
        area: Option<f64>,
        #[arg(long, requires = "area_max")]
        area_min: Option<f64>,
        #[arg(long, requires = "area_min")]
        area_max: Option<f64>,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        /// Bisect every phase change and report the boundaries.
        #[arg(long)]
        refine: bool,
        /// Write an SVG plot of the sweep here.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Identity and invariant battery.
    Selftest,
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v <= MAX_TOL {
        Ok(v)
    } else {
        Err(format!("tolerance must lie in (0, {MAX_TOL:e}], got {v}"))
    }
}

fn emit(config: &Config, text: &str) -> io::Result<()> {
    match &config.out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn params(config: &Config) -> lattice_lab::Result<LjParams> {
    LjParams::new(config.a1, config.a2, config.t1, config.t2)
}

fn thresholds(config: &Config, no_abz: bool) -> lattice_lab::Result<String> {
    let set = compute_thresholds(&params(config)?, config.tol, !no_abz)?;
    if config.format == Format::Json {
        return Ok(serde_json::to_string_pretty(&set).expect("serializable") + "\n");
    }
    let mut out = format!("params: {} tol={:e}\n", set.params, config.tol);
    if let Some(b) = set.a_bz {
        let theta = b.y.atan2(b.x).to_degrees();
        out += &format!(
            "A_BZ={}±{:.1e} x={} y={} theta_deg={}\n",
            output::sig12(b.value),
            b.error,
            output::sig12(b.x),
            output::sig12(b.y),
            output::sig12(theta)
        );
    }
    for (name, e) in [("A0", set.a0), ("A1", set.a1), ("A2", set.a2)] {
        out += &format!(
            "{name}={}±{:.1e}\n",
            output::sig12(e.value),
            e.error.max(config.tol)
        );
    }
    Ok(out)
}

fn classify(config: &Config, area: f64) -> lattice_lab::Result<String> {
    let f = LennardJones::new(params(config)?)?;
    let reports = [
        classify_point(&f, Site::Square, area, config.tol)?,
        classify_point(&f, Site::Triangular, area, config.tol)?,
    ];
    if config.format == Format::Json {
        return Ok(serde_json::to_string_pretty(&reports).expect("serializable") + "\n");
    }
    let mut out = format!("A={}\n", output::sig12(area));
    for r in &reports {
        out += &format!(
            "{:?}: {:?} margin={:.3e} dxx={} dyy={} dxy={:.1e} tail={:.1e}\n",
            r.site,
            r.verdict,
            r.margin,
            output::sig12(r.hessian.dxx),
            output::sig12(r.hessian.dyy),
            r.hessian.dxy,
            r.tail_bound
        );
    }
    Ok(out)
}

fn restricted_point(
    x: f64,
    y: f64,
    area: f64,
    energy: f64,
    tail: f64,
    capped: bool,
) -> lattice_lab::Result<PhasePoint> {
    Ok(PhasePoint {
        area,
        minimizer: LatticePoint::reduced(x, y, area)?,
        shape: classify_shape(x, y),
        energy,
        energy_tail: tail,
        certainty: if capped {
            Certainty::BoundaryCapped
        } else {
            Certainty::GridPolished
        },
    })
}

fn minimize(config: &Config, area: f64, family: Family) -> lattice_lab::Result<SweepRow> {
    let model = LjModel::new(params(config)?)?;
    let land = LjLandscape::new(&model, area)?;
    let m = Minimizer::new(config.tol)?;
    let point = match family {
        Family::Full => m.full(&land)?.best,
        Family::Rhombic => {
            let r = m.rhombic(&land)?;
            let t = r.theta_deg.to_radians();
            restricted_point(
                t.cos().clamp(0.0, 0.5),
                t.sin(),
                area,
                r.energy,
                r.energy_tail,
                false,
            )?
        }
        Family::Rectangular => {
            let r = m.rectangular(&land)?;
            restricted_point(0.0, r.y, area, r.energy, r.energy_tail, r.capped)?
        }
    };
    Ok(SweepRow {
        area,
        point: Some(point),
        error: None,
    })
}

fn table(config: &Config, rows: &[SweepRow]) -> String {
    match config.format {
        Format::Csv => output::csv_table(rows),
        Format::Json => {
            let v: Vec<_> = rows.iter().map(output::json_row).collect();
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
    }
}

fn sweep(
    config: &Config,
    areas: &[f64],
    refine: bool,
    plot_path: Option<&PathBuf>,
) -> Result<ExitCode, String> {
    let model =
        LjModel::new(params(config).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let options = SearchOptions::new(config.tol).map_err(|e| e.to_string())?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = config.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = pool.build().map_err(|e| e.to_string())?;
    let rows: Vec<SweepRow> = pool.install(|| {
        areas
            .par_iter()
            .map(|&a| sweep_row(&model, a, options))
            .collect()
    });
    emit(config, &table(config, &rows)).map_err(|e| e.to_string())?;

    let diag = monotonicity(&rows);
    let order: Vec<&str> = diag.order.iter().map(|k| k.name()).collect();
    eprintln!("phase order: {}", order.join(" -> "));
    eprintln!(
        "theta nondecreasing: {}, y nondecreasing: {}",
        diag.theta_nondecreasing, diag.y_nondecreasing
    );
    if refine {
        match locate_boundaries(&model, &rows, options, BOUNDARY_RESOLUTION) {
            Ok(bs) => {
                for b in bs {
                    let theta = b
                        .upper_point
                        .shape
                        .theta_deg()
                        .map(output::sig12)
                        .unwrap_or_default();
                    eprintln!(
                        "boundary {} -> {} at A={} (bracket [{}, {}]) upper theta_deg={theta}",
                        b.lower.name(),
                        b.upper.name(),
                        output::sig12(b.area),
                        output::sig12(b.bracket.0),
                        output::sig12(b.bracket.1)
                    );
                }
            }
            Err(e) => eprintln!("boundary refinement failed: {e}"),
        }
    }
    if let Some(path) = plot_path {
        fs::write(path, plot::render(&rows)).map_err(|e| e.to_string())?;
    }
    let ok = rows.iter().filter(|r| r.point.is_some()).count();
    for r in rows.iter().filter(|r| r.point.is_none()) {
        eprintln!(
            "A={}: {}",
            output::sig12(r.area),
            r.error.as_deref().unwrap_or("unknown error")
        );
    }
    if (ok as f64) < 0.9 * rows.len() as f64 {
        eprintln!("only {ok} of {} rows succeeded", rows.len());
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn selftest(config: &Config) -> Result<ExitCode, String> {
    let outcomes = checks::run_selftest().map_err(|e| e.to_string())?;
    let mut text = String::new();
    for c in &outcomes {
        text += &format!(
            "{} {}: {}\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    let failed = outcomes.iter().filter(|c| !c.passed).count();
    text += &format!("{} checks, {failed} failed\n", outcomes.len());
    emit(config, &text).map_err(|e| e.to_string())?;
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(cli: Cli) -> Result<ExitCode, (u8, String)> {
    let config = &cli.config;
    let fail = |code: u8| move |e: lattice_lab::Error| (code, e.to_string());
    let io_fail = |e: io::Error| (1u8, e.to_string());
    match &cli.command {
        Command::Thresholds { no_abz } => {
            let text = thresholds(config, *no_abz).map_err(fail(2))?;
            emit(config, &text).map_err(io_fail)?;
        }
        Command::Classify { area } => {
            let text = classify(config, *area).map_err(fail(2))?;
            emit(config, &text).map_err(io_fail)?;
        }
        Command::Minimize { area, family } => {
            let row = minimize(config, *area, *family).map_err(fail(2))?;
            emit(config, &table(config, &[row])).map_err(io_fail)?;
        }
        Command::Sweep {
            area,
            area_min,
            area_max,
            step,
            refine,
            plot,
        } => {
            let areas = match (area, area_min, area_max) {
                (Some(a), _, _) => vec![*a],
                (None, Some(lo), Some(hi)) => sweep_areas(*lo, *hi, *step).map_err(fail(2))?,
                _ => return Err((2, "give --area or both --area-min and --area-max".into())),
            };
            return sweep(config, &areas, *refine, plot.as_ref()).map_err(|e| (2, e));
        }
        Command::Selftest => return selftest(config).map_err(|e| (1, e)),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
