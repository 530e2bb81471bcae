//! Command-line front end.
//!
//! Every command reads its inputs, checks output locations, computes, and
//! writes CSV to `--out` (or stdout). Failures print one line to stderr,
//! `error: <command>: <message>`, and exit with status 1.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::io;
use crate::matrix::assemble;
use crate::params::Lap2Params;
use crate::plot::{self, Series};
use crate::precision::PrecisionFunction;
use crate::predict::predict_batch;
use crate::simulate::{lattice_spectrum, simulate_with_spectrum};
use crate::variogram::{empirical_variogram, matern1_variogram, Axis};

#[derive(Debug, Clone, Parser)]
#[command(
    name = "sphlap2",
    version,
    about = "SPH-LAP2 precision functions, lattice simulation and prediction"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

/// `--theta t0,t1,t2` or `--matern-xi XI`, exactly one.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct ThetaArgs {
    /// Operator coefficients, comma separated
    #[arg(long, value_parser = parse_theta, allow_hyphen_values = true)]
    pub theta: Option<[f64; 3]>,
    /// Matérn nu = 1 correlation length
    #[arg(long)]
    pub matern_xi: Option<f64>,
}

impl ThetaArgs {
    pub fn params(&self) -> Result<Lap2Params> {
        match (self.theta, self.matern_xi) {
            (Some([a, b, c]), None) => Lap2Params::validate(a, b, c),
            (None, Some(xi)) => Lap2Params::matern(xi),
            _ => Err(Error::Parse(
                "exactly one of --theta and --matern-xi is required".into(),
            )),
        }
    }
}

fn parse_theta(s: &str) -> std::result::Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected t0,t1,t2 (got {s:?})"));
    }
    let mut out = [0.0; 3];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.parse().map_err(|_| format!("not a number: {p:?}"))?;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Matern,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check the coefficients and report the regime
    Validate {
        #[command(flatten)]
        theta: ThetaArgs,
    },
    /// Tabulate Q*(r) on [0, rmax]
    #[command(name = "precision-fn")]
    PrecisionFn {
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long)]
        h: f64,
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Largest radius (default 6h)
        #[arg(long)]
        rmax: Option<f64>,
        /// Number of grid points
        #[arg(long, default_value_t = 201)]
        n: usize,
        /// Divide by Q*(0)
        #[arg(long)]
        normalize: bool,
        #[arg(long)]
        plot: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Assemble the precision matrix of a point set
    #[command(name = "precision-matrix")]
    PrecisionMatrix {
        #[arg(long)]
        points: PathBuf,
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long)]
        h: f64,
        /// Relative truncation threshold
        #[arg(long, default_value_t = 0.0)]
        epsilon: f64,
        /// Write `i,j,q` triplets instead of a dense matrix
        #[arg(long)]
        sparse: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw lattice realizations
    Simulate {
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long)]
        h: f64,
        /// Nodes per side (even)
        #[arg(long = "L", default_value_t = 256)]
        side: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 1.0)]
        spacing: f64,
        #[arg(long)]
        seed: u64,
        /// Realizations, seeded seed, seed+1, ...; with R > 1 files are
        /// written as `<out-stem>_<i>.csv`
        #[arg(long, default_value_t = 1)]
        reps: usize,
        /// Grayscale heatmap of the first realization
        #[arg(long)]
        plot: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Row/column variograms of a grid
    Variogram {
        #[arg(long)]
        grid: PathBuf,
        #[arg(long)]
        max_lag: usize,
        #[arg(long, default_value_t = 1.0)]
        spacing: f64,
        /// Add a model column; empirical columns are then divided by the
        /// sample variance
        #[arg(long, value_enum, requires = "xi")]
        model: Option<Model>,
        #[arg(long)]
        xi: Option<f64>,
        #[arg(long)]
        plot: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Predictive mean and variance at target locations
    Predict {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        targets: PathBuf,
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long)]
        h: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Energy 1/2 x^T Q x of the point values
    Energy {
        #[arg(long)]
        points: PathBuf,
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long)]
        h: f64,
        #[arg(long, default_value_t = 0.0)]
        epsilon: f64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::PrecisionFn { .. } => "precision-fn",
            Command::PrecisionMatrix { .. } => "precision-matrix",
            Command::Simulate { .. } => "simulate",
            Command::Variogram { .. } => "variogram",
            Command::Predict { .. } => "predict",
            Command::Energy { .. } => "energy",
        }
    }
}

fn check_input(path: &Path) -> Result<()> {
    if path.is_file() {
        Ok(())
    } else {
        Err(Error::Io(format!("{}: no such file", path.display())))
    }
}

fn check_output(path: Option<&Path>) -> Result<()> {
    if let Some(p) = path {
        let parent = p.parent().filter(|d| !d.as_os_str().is_empty());
        if parent.is_some_and(|d| !d.is_dir()) {
            return Err(Error::Io(format!("{}: parent directory does not exist", p.display())));
        }
    }
    Ok(())
}

/// Writes through `f` into the file at `out`, or into `stdout`.
fn emit(out: Option<&Path>, stdout: &mut dyn Write, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match out {
        Some(p) => {
            let mut file = std::fs::File::create(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            f(&mut file)?;
            file.flush()?;
            Ok(())
        }
        None => f(stdout),
    }
}

fn numbered(out: &Path, i: usize) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let ext = out
        .extension()
        .map(|e| format!(".{}", e.to_string_lossy()))
        .unwrap_or_default();
    out.with_file_name(format!("{stem}_{i}{ext}"))
}

/// Executes one command, writing primary output to `stdout` when no `--out` is given.
pub fn run(config: &RunConfig, stdout: &mut dyn Write) -> Result<()> {
    match &config.command {
        Command::Validate { theta } => {
            let p = theta.params()?;
            writeln!(stdout, "valid ({})", p.regime())?;
        }
        Command::PrecisionFn {
            theta,
            h,
            d,
            rmax,
            n,
            normalize,
            plot: plot_path,
            out,
        } => {
            check_output(out.as_deref())?;
            check_output(plot_path.as_deref())?;
            let pf = PrecisionFunction::gaussian(theta.params()?, *h, *d)?;
            let rmax = rmax.unwrap_or(6.0 * h);
            if !(rmax > 0.0) {
                return Err(Error::NonPositiveRadius(rmax));
            }
            let n = (*n).max(2);
            let r: Vec<f64> = (0..n).map(|i| rmax * i as f64 / (n - 1) as f64).collect();
            let q: Vec<f64> = r
                .iter()
                .map(|&r| if *normalize { pf.normalized(r) } else { pf.value(r) })
                .collect();
            emit(out.as_deref(), stdout, |w| {
                io::write_table(w, &["r", "Q"], r.iter().zip(&q).map(|(&a, &b)| vec![a, b]))
            })?;
            if let Some(p) = plot_path {
                let title = format!("Q*(r), {}, h = {h}, d = {d}", pf.params());
                plot::emit_svg_lineplot(p, &title, &[Series::line("Q*", r, q)])?;
            }
        }
        Command::PrecisionMatrix {
            points,
            theta,
            h,
            epsilon,
            sparse,
            out,
        } => {
            check_input(points)?;
            check_output(out.as_deref())?;
            let pts = io::read_points(points)?;
            let pf = PrecisionFunction::gaussian(theta.params()?, *h, pts.dim())?;
            let q = assemble(&pf, &pts, *epsilon)?;
            emit(out.as_deref(), stdout, |w| io::write_matrix_to(w, &q, *sparse))?;
        }
        Command::Simulate {
            theta,
            h,
            side,
            d,
            spacing,
            seed,
            reps,
            plot: plot_path,
            out,
        } => {
            check_output(out.as_deref())?;
            check_output(plot_path.as_deref())?;
            if *reps > 1 && out.is_none() {
                return Err(Error::Parse("--reps above 1 needs --out".into()));
            }
            let pf = PrecisionFunction::gaussian(theta.params()?, *h, *d)?;
            let spectrum = lattice_spectrum(&pf, *side, *spacing)?;
            for i in 0..*reps {
                let field = simulate_with_spectrum(&spectrum, seed.wrapping_add(i as u64));
                let target = match (out, *reps) {
                    (Some(p), 1) => Some(p.clone()),
                    (Some(p), _) => Some(numbered(p, i)),
                    (None, _) => None,
                };
                emit(target.as_deref(), stdout, |w| io::write_grid_to(w, &field))?;
                if i == 0 {
                    if let Some(p) = plot_path {
                        plot::emit_svg_heatmap(p, field.values(), field.rows(), field.side())?;
                    }
                }
            }
        }
        Command::Variogram {
            grid,
            max_lag,
            spacing,
            model,
            xi,
            plot: plot_path,
            out,
        } => {
            check_input(grid)?;
            check_output(out.as_deref())?;
            check_output(plot_path.as_deref())?;
            let field = io::read_grid(grid, *spacing)?;
            let two_d = field.d() == 2;
            let scale = if model.is_some() { field.variance() } else { 1.0 };
            let rows = empirical_variogram(&field, *max_lag, Axis::Rows)?.normalized(scale);
            let (cols, avg) = if two_d {
                (
                    empirical_variogram(&field, *max_lag, Axis::Columns)?.normalized(scale),
                    empirical_variogram(&field, *max_lag, Axis::Averaged)?.normalized(scale),
                )
            } else {
                (Vec::new(), Vec::new())
            };
            let model_col = match (model, xi) {
                (Some(Model::Matern), Some(xi)) => Some(
                    (0..=*max_lag)
                        .map(|l| matern1_variogram(l as f64 * spacing, *xi))
                        .collect::<Result<Vec<_>>>()?,
                ),
                _ => None,
            };
            let mut header = vec!["lag", "gamma_rows"];
            if two_d {
                header.extend(["gamma_cols", "gamma_avg"]);
            }
            if model_col.is_some() {
                header.push("gamma_model");
            }
            let table = (0..=*max_lag).map(|l| {
                let mut row = vec![l as f64, rows[l]];
                if two_d {
                    row.extend([cols[l], avg[l]]);
                }
                if let Some(m) = &model_col {
                    row.push(m[l]);
                }
                row
            });
            emit(out.as_deref(), stdout, |w| io::write_table(w, &header, table))?;
            if let Some(p) = plot_path {
                let x: Vec<f64> = (0..=*max_lag).map(|l| l as f64 * spacing).collect();
                let mut series = vec![Series::markers("rows", x.clone(), rows.clone())];
                if two_d {
                    series.push(Series::markers("columns", x.clone(), cols.clone()));
                }
                if let (Some(xi), Some(_)) = (xi, &model_col) {
                    let n = 200;
                    let xm: Vec<f64> = (0..=n).map(|i| x[x.len() - 1] * i as f64 / n as f64).collect();
                    let ym = xm
                        .iter()
                        .map(|&r| matern1_variogram(r, *xi))
                        .collect::<Result<Vec<_>>>()?;
                    series.push(Series::line("Matérn nu=1", xm, ym));
                }
                plot::emit_svg_lineplot(p, "empirical variogram", &series)?;
            }
        }
        Command::Predict {
            points,
            targets,
            theta,
            h,
            out,
        } => {
            check_input(points)?;
            check_input(targets)?;
            check_output(out.as_deref())?;
            let pts = io::read_points(points)?;
            let tgt = io::read_targets(targets)?;
            let pf = PrecisionFunction::gaussian(theta.params()?, *h, pts.dim())?;
            let preds = predict_batch(&pf, &pts, &tgt)?;
            emit(out.as_deref(), stdout, |w| {
                io::write_predictions_to(w, &preds, pts.dim())
            })?;
        }
        Command::Energy {
            points,
            theta,
            h,
            epsilon,
        } => {
            check_input(points)?;
            let pts = io::read_points(points)?;
            let x = pts.values().ok_or(Error::MissingValues)?.to_vec();
            let pf = PrecisionFunction::gaussian(theta.params()?, *h, pts.dim())?;
            let q = assemble(&pf, &pts, *epsilon)?;
            writeln!(stdout, "{}", q.energy(&x)?)?;
        }
    }
    Ok(())
}

/// Parses `args`, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(&config, &mut lock) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}: {e}", config.command.name());
            1
        }
    }
}
