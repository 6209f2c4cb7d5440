//! Command-line front end: every experiment is a subcommand emitting CSV
//! (header row, comma separators, LF line endings, 17-significant-digit
//! floats). Identical configuration and seed produce byte-identical
//! output for any thread count.

pub mod parse;

use clap::{Args, Parser, Subcommand};
use parse::{parse_csv, render_csv, BinSpec};
use rmt_core::ensembles::{Beta, EnsembleSpec};
use rmt_core::histogram::{histogram_density, sup_norm_against_curve, Histogram};
use rmt_core::numerics::interp_linear;
use rmt_core::{ensembles, painleve2, painleve5, prolate, spacings, zeta};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "rmt",
    about = "Eigenvalue statistics of random-matrix beta-ensembles: \
             tridiagonal simulation, Painleve II/V laws, Prolate gap \
             probabilities, zeta-zero spacings",
    version
)]
pub struct Cli {
    /// Worker threads for trial loops and s-grids (default: RMT_THREADS
    /// env var, else all cores). Output is identical for any value.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Histogram of the rescaled largest eigenvalue over Monte-Carlo
    /// trials (defaults: n = 1e9, 1e4 trials, beta 2, bins -7:0.2:3)
    LargestSim(LargestSimArgs),
    /// Tracy-Widom distributions F1, F2, F4 and densities f1, f2, f4 from
    /// the Painleve II march (defaults: s from 5 to -8, 1000 points)
    TracyWidom(TracyWidomArgs),
    /// Histogram of normalized bulk eigenvalue spacings (defaults:
    /// n = 1000, 1000 trials, beta 2, bins 0:0.05:5)
    SpacingSim(SpacingSimArgs),
    /// Gap probability E(s) and spacing density p(s) from the Painleve V
    /// march (defaults: t from 1e-12 to 16, 1000 points)
    Gaudin(GaudinArgs),
    /// Gap probability from Prolate-matrix eigenvalues; --table1 emits the
    /// Richardson error table against the Painleve V reference
    Prolate(ProlateArgs),
    /// Normalized spacings of Riemann zeta zeros, histogrammed (default
    /// bins 0:0.05:5)
    ZetaSpacings(ZetaSpacingsArgs),
    /// Join a histogram CSV with a curve CSV and report the sup-norm of
    /// the difference at the bin midpoints
    Compare(CompareArgs),
}

#[derive(Args, Debug)]
pub struct LargestSimArgs {
    /// Matrix dimension
    #[arg(long, default_value_t = 1_000_000_000)]
    pub n: u64,
    /// Monte-Carlo trials
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    /// Dyson index (1, 2 or 4); 1 and 4 force the exact sampler
    #[arg(long, default_value_t = 2)]
    pub beta: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Histogram bins lo:step:hi
    #[arg(long, default_value = "-7:0.2:3")]
    pub bins: BinSpec,
    /// Bisection tolerance for the largest eigenvalue
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Output CSV path (stdout when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TracyWidomArgs {
    #[arg(long, default_value_t = painleve2::DEFAULT_S0)]
    pub s0: f64,
    #[arg(long, default_value_t = painleve2::DEFAULT_SN)]
    pub sn: f64,
    #[arg(long, default_value_t = painleve2::DEFAULT_GRID_POINTS)]
    pub points: usize,
    #[arg(long, default_value_t = painleve2::DEFAULT_RELTOL)]
    pub reltol: f64,
    #[arg(long, default_value_t = painleve2::DEFAULT_ABSTOL)]
    pub abstol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SpacingSimArgs {
    /// Matrix dimension (even, >= 8)
    #[arg(long, default_value_t = 1000)]
    pub n: u64,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 2)]
    pub beta: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "0:0.05:5")]
    pub bins: BinSpec,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GaudinArgs {
    #[arg(long, default_value_t = painleve5::DEFAULT_T0)]
    pub t0: f64,
    #[arg(long, default_value_t = painleve5::DEFAULT_TN)]
    pub tn: f64,
    #[arg(long, default_value_t = painleve5::DEFAULT_GRID_POINTS)]
    pub points: usize,
    #[arg(long, default_value_t = painleve5::DEFAULT_RELTOL)]
    pub reltol: f64,
    #[arg(long, default_value_t = painleve5::DEFAULT_ABSTOL)]
    pub abstol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ProlateArgs {
    /// Matrix size for the single-size E(s) curve
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    /// Emit the Richardson error table for sizes 20, 40, 80, 160 instead
    /// of a single-size curve
    #[arg(long, default_value_t = false)]
    pub table1: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ZetaSpacingsArgs {
    /// Text file of ascending zero ordinates, one per line
    #[arg(long)]
    pub file: PathBuf,
    /// Offset to add when the file stores reduced ordinates
    #[arg(long, default_value_t = 0.0)]
    pub offset: f64,
    #[arg(long, default_value = "0:0.05:5")]
    pub bins: BinSpec,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    /// Histogram CSV (columns mid, density)
    #[arg(long)]
    pub hist: PathBuf,
    /// Curve CSV to compare against
    #[arg(long)]
    pub curve: PathBuf,
    /// Name of the curve's abscissa column
    #[arg(long, default_value = "s")]
    pub x: String,
    /// Name of the curve's ordinate column
    #[arg(long, default_value = "f2")]
    pub y: String,
    /// Optional joined table (mid, density, curve, absdiff)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Run a parsed command, returning the text that went to stdout.
pub fn run(cli: Cli) -> rmt_core::Result<String> {
    init_threads(cli.threads);
    match cli.command {
        Command::LargestSim(a) => largest_sim(a),
        Command::TracyWidom(a) => tracy_widom(a),
        Command::SpacingSim(a) => spacing_sim(a),
        Command::Gaudin(a) => gaudin(a),
        Command::Prolate(a) => prolate_cmd(a),
        Command::ZetaSpacings(a) => zeta_spacings(a),
        Command::Compare(a) => compare(a),
    }
}

fn init_threads(flag: Option<usize>) {
    let n = flag.or_else(|| {
        std::env::var("RMT_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(n) = n {
        // A repeated build_global in one process is fine to ignore.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn histogram_csv(hist: &Histogram) -> String {
    render_csv(&["mid", "density"], &[&hist.midpoints, &hist.density])
}

fn emit(out: Option<PathBuf>, text: String) -> rmt_core::Result<String> {
    match out {
        Some(path) => {
            std::fs::write(&path, &text).map_err(|e| {
                rmt_core::Error::Contract(format!("cannot write {}: {e}", path.display()))
            })?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn largest_sim(a: LargestSimArgs) -> rmt_core::Result<String> {
    let beta = Beta::from_int(a.beta)?;
    let spec = if beta == Beta::Two && a.n >= 1_000_000 {
        EnsembleSpec::large_n(a.n)?
    } else {
        EnsembleSpec::exact(a.n, beta)?
    };
    let batch = ensembles::simulate_largest_batch(&spec, a.trials, a.seed, a.tol)?;
    let hist = histogram_density(&batch, &a.bins.edges()?)?;
    emit(a.out, histogram_csv(&hist))
}

fn tracy_widom(a: TracyWidomArgs) -> rmt_core::Result<String> {
    let sol = painleve2::tracy_widom_curves(painleve2::solve_painleve2(
        a.s0, a.sn, a.points, a.reltol, a.abstol,
    )?)?;
    let text = render_csv(
        &["s", "F1", "F2", "F4", "f1", "f2", "f4", "s4"],
        &[
            &sol.s, &sol.big_f1, &sol.big_f2, &sol.big_f4, &sol.f1, &sol.f2, &sol.f4, &sol.s4,
        ],
    );
    emit(a.out, text)
}

fn spacing_sim(a: SpacingSimArgs) -> rmt_core::Result<String> {
    let batch = spacings::simulate_spacing_batch(a.n, a.trials, a.beta, a.seed)?;
    let hist = histogram_density(&batch.values, &a.bins.edges()?)?;
    emit(a.out, histogram_csv(&hist))
}

fn gaudin(a: GaudinArgs) -> rmt_core::Result<String> {
    let sol = painleve5::spacing_density(painleve5::solve_painleve5(
        a.t0, a.tn, a.points, a.reltol, a.abstol,
    )?);
    let text = render_csv(
        &["t", "s", "sigma", "sigmap", "E", "p"],
        &[&sol.t, &sol.s, &sol.sigma, &sol.sigmap, &sol.e, &sol.p],
    );
    emit(a.out, text)
}

fn prolate_cmd(a: ProlateArgs) -> rmt_core::Result<String> {
    let grid = prolate::default_s_grid();
    if a.table1 {
        let table = prolate::prolate_gap_table(&grid, &prolate::DEFAULT_SIZES)?;
        let reference = prolate::painleve_gap_reference(&grid)?;
        let (_, stages) = prolate::richardson_extrapolate(&table.e_by_n)?;
        // Row for size j carries the sup-norm error after 0..=j stages,
        // using the extrapolation whose finest input is that size.
        let sizes = &table.sizes;
        let sup = |col: &[f64]| -> f64 {
            col.iter()
                .zip(&reference.e)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        };
        let mut cols: Vec<Vec<f64>> = vec![vec![f64::NAN; sizes.len()]; sizes.len() + 1];
        cols[0] = sizes.iter().map(|&n| n as f64).collect();
        for (stage, stage_cols) in stages.iter().enumerate() {
            for (j, col) in stage_cols.iter().enumerate() {
                // stage k, column j derives from sizes up to index j + k
                cols[stage + 1][j + stage] = sup(col);
            }
        }
        let col_refs: Vec<&[f64]> = cols.iter().map(Vec::as_slice).collect();
        let text = render_csv(&["n", "err0", "err1", "err2", "err3"], &col_refs);
        emit(a.out, text)
    } else {
        let e: Vec<f64> = {
            use rayon::prelude::*;
            grid.par_iter()
                .map(|&s| prolate::gap_probability(s, a.n))
                .collect::<rmt_core::Result<_>>()?
        };
        let text = render_csv(&["s", "E"], &[&grid, &e]);
        emit(a.out, text)
    }
}

fn zeta_spacings(a: ZetaSpacingsArgs) -> rmt_core::Result<String> {
    let z = zeta::load_zeros(&a.file, a.offset)?;
    let d = zeta::zeta_normalized_spacings(&z)?;
    let hist = histogram_density(&d, &a.bins.edges()?)?;
    emit(a.out, histogram_csv(&hist))
}

fn compare(a: CompareArgs) -> rmt_core::Result<String> {
    let hist_table = parse_csv(&read(&a.hist)?)?;
    let curve_table = parse_csv(&read(&a.curve)?)?;
    let mids = hist_table.column("mid")?;
    let dens = hist_table.column("density")?;
    let xs = curve_table.column(&a.x)?;
    let ys = curve_table.column(&a.y)?;
    if xs.len() < 2 {
        return Err(rmt_core::Error::Contract(
            "compare: curve needs at least two points".into(),
        ));
    }
    let hist = Histogram {
        edges: Vec::new(),
        midpoints: mids.to_vec(),
        density: dens.to_vec(),
    };
    let sup = sup_norm_against_curve(&hist, xs, ys);
    if let Some(path) = a.out {
        let curve_at: Vec<f64> = mids.iter().map(|&m| interp_linear(xs, ys, m)).collect();
        let absdiff: Vec<f64> = curve_at
            .iter()
            .zip(dens)
            .map(|(c, d)| (c - d).abs())
            .collect();
        let text = render_csv(
            &["mid", "density", "curve", "absdiff"],
            &[mids, dens, &curve_at, &absdiff],
        );
        std::fs::write(&path, text).map_err(|e| {
            rmt_core::Error::Contract(format!("cannot write {}: {e}", path.display()))
        })?;
    }
    Ok(format!("sup-norm {}\n", parse::fmt_f64(sup)))
}

fn read(path: &PathBuf) -> rmt_core::Result<String> {
    std::fs::read_to_string(path).map_err(|e| rmt_core::Error::Parse {
        line: 0,
        msg: format!("cannot read {}: {e}", path.display()),
    })
}
