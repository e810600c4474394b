//! Command-line driver.
//!
//! One subcommand per capability: `grid`, `verify`, `frame-bounds`,
//! `ds-divergence`, `decompose`, `reconstruct`, `report`. Every artifact
//! can be read from or written to files or standard streams (`-`), and
//! every emission is accompanied by a run manifest. Exit codes: 0 on
//! success with all margins nonnegative, 1 when an inequality is violated
//! (the worst offender is printed), 2 on usage or input errors.
//!
//! Reproducibility: random suites come from the fixed
//! linear-congruential generator in [`crate::rng`], draws in a documented
//! order (coefficients first, then the ring count, then the radius), so
//! identical seeds and flags give byte-identical data payloads. The
//! `SZEGO_FRAMES_THREADS` environment variable caps the worker pool
//! (0 or unset means automatic); results are merged in input order, so
//! the thread count never changes the output.

use std::collections::BTreeMap;
use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::discrete::{
    verify_dilation_bound, verify_exactness, verify_sup_bracket, DiscreteNormReport,
};
use crate::error::{Error, Result};
use crate::frame::{
    analysis_map, analysis_upper_constant, ds_frame_divergence, frame_bounds_empirical,
    synthesis_partial_sum,
};
use crate::grid::{ring_radius, Grid};
use crate::hardy::HardyFunction;
use crate::io::{
    format_float, read_input, write_manifest, write_output, DecompositionArtifact, RunManifest,
};
use crate::rng::Lcg64;
use crate::synthesis::{solve, verify_decomposition, SolveStatus, SolverConfig, SynthesisProblem};

#[derive(Parser)]
#[command(
    name = "szego-frames",
    version,
    about = "Szegő-kernel representing system on the ring grid: \
             grid construction, inequality verification, frame bounds, and \
             group-sparse decomposition"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Named inequality suites for `verify`.
#[derive(Debug, Clone, Copy, ValueEnum)]
enum Check {
    /// Exactness of the root-of-unity norm for degree below k.
    #[value(name = "lemma3", alias = "exactness")]
    Exactness,
    /// Dilated-norm upper bound with the aliasing denominator.
    #[value(name = "lemma4", alias = "dilation")]
    Dilation,
    /// Two-sided bracket for the sup of per-ring dilated norms.
    #[value(name = "eq5", alias = "sup-bracket")]
    SupBracket,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the ring grid as CSV (columns: k, j, re, im, weight).
    Grid {
        /// Number of rings K.
        #[arg(long)]
        rings: usize,
        /// Output path, or `-` for stdout.
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Run a named inequality suite on random polynomials, one CSV row
    /// per checked bound (columns: trial, k, r, value, bound, margin).
    Verify {
        /// Which inequality to check.
        #[arg(value_enum)]
        check: Check,
        /// Degree of the random polynomials.
        #[arg(long)]
        degree: usize,
        /// Ring range K.
        #[arg(long)]
        rings: usize,
        /// Number of random trials.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Generator seed.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output path, or `-` for stdout.
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Estimate empirical frame bounds over random polynomial samples
    /// (columns: trial, norm, value, ratio).
    FrameBounds {
        /// Ring truncation K of the analysis grid.
        #[arg(long)]
        rings: usize,
        /// Number of random samples.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Degree of the random samples.
        #[arg(long)]
        degree: usize,
        /// Generator seed.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output path, or `-` for stdout.
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Emit the diverging kernel-coefficient partial sums for a function
    /// (columns: k, increment, partial_sum).
    DsDivergence {
        /// Number of rings K to sum over.
        #[arg(long)]
        rings: usize,
        /// Function JSON path, or `-` for stdin.
        #[arg(long)]
        function: String,
        /// Output path, or `-` for stdout.
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Decompose a function into ring-blocked kernel coefficients.
    Decompose {
        /// Function JSON path, or `-` for stdin.
        #[arg(long)]
        function: String,
        /// Number of rings K in the synthesis system.
        #[arg(long)]
        rings: usize,
        /// Taylor rows retained; defaults to max(2·degree, 32).
        #[arg(long)]
        truncation: Option<usize>,
        /// Relative-residual target.
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
        /// Continuation stages (penalty halvings).
        #[arg(long = "mu-stages", default_value_t = 8)]
        mu_stages: usize,
        /// Total iteration budget.
        #[arg(long = "max-iter", default_value_t = 400)]
        max_iter: usize,
        /// Initial penalty weight; 0 selects the automatic rule.
        #[arg(long, default_value_t = 0.0)]
        mu: f64,
        /// Output path, or `-` for stdout.
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Rebuild the represented function from a stored decomposition.
    Reconstruct {
        /// Decomposition JSON path, or `-` for stdin.
        #[arg(long)]
        decomp: String,
        /// Output path, or `-` for stdout.
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Aggregate prior CSV outputs into one summary JSON.
    Report {
        /// Output path, or `-` for stdout.
        #[arg(long, default_value = "-")]
        out: String,
        /// CSV files to aggregate.
        #[arg(required = true)]
        inputs: Vec<String>,
    },
}

/// Violation threshold: margins may round below zero by at most the
/// shared tolerance policy.
fn violation_threshold(bound: f64) -> f64 {
    -1e-10 * (1.0 + bound.abs())
}

fn manifest(command: &str, seed: u64, params: &[(&str, String)]) -> RunManifest {
    let map: BTreeMap<String, String> = params
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect();
    RunManifest::new(command, map, seed)
}

fn read_function(path: &str) -> Result<HardyFunction> {
    let text = read_input(path)?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Malformed(format!("function JSON at {path}: {e}")))
}

/// Entry point used by the binary and the tests; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    configure_thread_pool();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}

fn configure_thread_pool() {
    if let Ok(raw) = std::env::var("SZEGO_FRAMES_THREADS") {
        if let Ok(n) = raw.trim().parse::<usize>() {
            if n > 0 {
                // a second configuration attempt in the same process is a no-op
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }
}

fn execute(command: Command) -> Result<i32> {
    match command {
        Command::Grid { rings, out } => cmd_grid(rings, &out),
        Command::Verify {
            check,
            degree,
            rings,
            trials,
            seed,
            out,
        } => cmd_verify(check, degree, rings, trials, seed, &out),
        Command::FrameBounds {
            rings,
            trials,
            degree,
            seed,
            out,
        } => cmd_frame_bounds(rings, trials, degree, seed, &out),
        Command::DsDivergence {
            rings,
            function,
            out,
        } => cmd_ds_divergence(rings, &function, &out),
        Command::Decompose {
            function,
            rings,
            truncation,
            tol,
            mu_stages,
            max_iter,
            mu,
            out,
        } => cmd_decompose(
            &function, rings, truncation, tol, mu_stages, max_iter, mu, &out,
        ),
        Command::Reconstruct { decomp, out } => cmd_reconstruct(&decomp, &out),
        Command::Report { out, inputs } => cmd_report(&out, &inputs),
    }
}

fn cmd_grid(rings: usize, out: &str) -> Result<i32> {
    let grid = Grid::build(rings)?;
    let mut csv = String::from("k,j,re,im,weight\n");
    for node in grid.nodes() {
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            node.index.k,
            node.index.j,
            format_float(node.point.value().re),
            format_float(node.point.value().im),
            format_float(node.weight),
        ));
    }
    write_output(out, &csv)?;
    write_manifest(
        out,
        &manifest(
            "grid",
            0,
            &[("rings", rings.to_string()), ("out", out.to_string())],
        ),
    )?;
    Ok(0)
}

/// One emitted verification row.
struct VerifyRow {
    trial: usize,
    report: DiscreteNormReport,
}

fn verify_rows_csv(rows: &[VerifyRow]) -> String {
    let mut csv = String::from("trial,k,r,value,bound,margin\n");
    for row in rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.trial,
            row.report.k,
            format_float(row.report.r),
            format_float(row.report.value),
            format_float(row.report.bound),
            format_float(row.report.margin),
        ));
    }
    csv
}

/// Returns the worst offender if any margin dips below the tolerance.
fn worst_violation(rows: &[VerifyRow]) -> Option<&VerifyRow> {
    rows.iter()
        .filter(|row| row.report.margin < violation_threshold(row.report.bound))
        .min_by(|a, b| {
            a.report
                .margin
                .partial_cmp(&b.report.margin)
                .expect("margins are finite")
        })
}

fn cmd_verify(
    check: Check,
    degree: usize,
    rings: usize,
    trials: usize,
    seed: u64,
    out: &str,
) -> Result<i32> {
    if rings < 1 {
        return Err(Error::RingCount { rings });
    }
    let mut rng = Lcg64::new(seed);
    // inputs are drawn sequentially (polynomial, then ring, then radius)
    // so the suite is identical regardless of the worker count
    let rows: Vec<VerifyRow> = match check {
        Check::Exactness => {
            if rings <= degree {
                return Err(Error::RingsNotAboveDegree { rings, degree });
            }
            let inputs: Vec<(usize, HardyFunction, usize)> = (0..trials)
                .map(|t| {
                    let poly = rng.polynomial(degree);
                    let k = rng.next_range(degree + 1, rings);
                    (t, poly, k)
                })
                .collect();
            inputs
                .par_iter()
                .map(|(t, poly, k)| {
                    verify_exactness(poly, *k).map(|report| VerifyRow { trial: *t, report })
                })
                .collect::<Result<_>>()?
        }
        Check::Dilation => {
            let inputs: Vec<(usize, HardyFunction, usize, f64)> = (0..trials)
                .map(|t| {
                    let poly = rng.polynomial(degree);
                    let k = rng.next_range(1, rings);
                    let r = 0.01 + 0.98 * rng.next_f64();
                    (t, poly, k, r)
                })
                .collect();
            inputs
                .par_iter()
                .map(|(t, poly, k, r)| {
                    verify_dilation_bound(poly, *k, *r)
                        .map(|report| VerifyRow { trial: *t, report })
                })
                .collect::<Result<_>>()?
        }
        Check::SupBracket => {
            if rings <= degree {
                return Err(Error::RingsNotAboveDegree { rings, degree });
            }
            let inputs: Vec<(usize, HardyFunction)> =
                (0..trials).map(|t| (t, rng.polynomial(degree))).collect();
            let pairs: Vec<(usize, (DiscreteNormReport, DiscreteNormReport))> = inputs
                .par_iter()
                .map(|(t, poly)| verify_sup_bracket(poly, rings).map(|pair| (*t, pair)))
                .collect::<Result<_>>()?;
            pairs
                .into_iter()
                .flat_map(|(t, (upper, lower))| {
                    [
                        VerifyRow {
                            trial: t,
                            report: upper,
                        },
                        VerifyRow {
                            trial: t,
                            report: lower,
                        },
                    ]
                })
                .collect()
        }
    };

    write_output(out, &verify_rows_csv(&rows))?;
    let check_name = match check {
        Check::Exactness => "lemma3",
        Check::Dilation => "lemma4",
        Check::SupBracket => "eq5",
    };
    write_manifest(
        out,
        &manifest(
            "verify",
            seed,
            &[
                ("check", check_name.to_string()),
                ("degree", degree.to_string()),
                ("rings", rings.to_string()),
                ("trials", trials.to_string()),
                ("out", out.to_string()),
            ],
        ),
    )?;

    if let Some(worst) = worst_violation(&rows) {
        eprintln!(
            "verify {check_name}: violated inequality at trial {} (k={}, r={}): \
             value={} bound={} margin={}",
            worst.trial,
            worst.report.k,
            worst.report.r,
            worst.report.value,
            worst.report.bound,
            worst.report.margin
        );
        return Ok(1);
    }
    Ok(0)
}

fn cmd_frame_bounds(
    rings: usize,
    trials: usize,
    degree: usize,
    seed: u64,
    out: &str,
) -> Result<i32> {
    if rings <= degree {
        return Err(Error::RingsNotAboveDegree { rings, degree });
    }
    if trials < 1 {
        return Err(Error::EmptySamples);
    }
    let grid = Grid::build(rings)?;
    let mut rng = Lcg64::new(seed);
    let samples: Vec<HardyFunction> = (0..trials).map(|_| rng.polynomial(degree)).collect();

    let rows: Vec<(f64, f64)> = samples
        .par_iter()
        .map(|g| {
            let norm = g.h2_norm();
            let value = analysis_map(g, &grid).norm_inf_2();
            (norm, value)
        })
        .collect();

    let mut csv = String::from("trial,norm,value,ratio\n");
    for (t, (norm, value)) in rows.iter().enumerate() {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            t,
            format_float(*norm),
            format_float(*value),
            format_float(value / norm),
        ));
    }
    write_output(out, &csv)?;
    write_manifest(
        out,
        &manifest(
            "frame-bounds",
            seed,
            &[
                ("degree", degree.to_string()),
                ("rings", rings.to_string()),
                ("trials", trials.to_string()),
                ("out", out.to_string()),
            ],
        ),
    )?;

    let estimate = frame_bounds_empirical(&samples, &grid)?;
    eprintln!(
        "frame-bounds: lower={} upper={} samples={} rings={}",
        estimate.lower, estimate.upper, estimate.sample_count, estimate.rings
    );

    let lower_envelope = ring_radius(rings).powi(degree as i32) - 1e-9;
    let upper_envelope = analysis_upper_constant() + 1e-9;
    if estimate.lower < lower_envelope {
        eprintln!(
            "frame-bounds: violated lower envelope: {} < {}",
            estimate.lower, lower_envelope
        );
        return Ok(1);
    }
    if estimate.upper > upper_envelope {
        eprintln!(
            "frame-bounds: violated upper envelope: {} > {}",
            estimate.upper, upper_envelope
        );
        return Ok(1);
    }
    Ok(0)
}

fn cmd_ds_divergence(rings: usize, function: &str, out: &str) -> Result<i32> {
    let f = read_function(function)?;
    let sums = ds_frame_divergence(&f, rings)?;
    let mut csv = String::from("k,increment,partial_sum\n");
    let mut previous = 0.0;
    for (i, s) in sums.iter().enumerate() {
        csv.push_str(&format!(
            "{},{},{}\n",
            i + 1,
            format_float(s - previous),
            format_float(*s),
        ));
        previous = *s;
    }
    write_output(out, &csv)?;
    write_manifest(
        out,
        &manifest(
            "ds-divergence",
            0,
            &[
                ("function", function.to_string()),
                ("rings", rings.to_string()),
                ("out", out.to_string()),
            ],
        ),
    )?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_decompose(
    function: &str,
    rings: usize,
    truncation: Option<usize>,
    tol: f64,
    mu_stages: usize,
    max_iter: usize,
    mu: f64,
    out: &str,
) -> Result<i32> {
    let target = read_function(function)?;
    let grid = Grid::build(rings)?;
    let degree = target.degree().unwrap_or(0);
    let truncation = truncation.unwrap_or_else(|| SynthesisProblem::default_truncation(degree));
    let problem = SynthesisProblem::new(target, grid, truncation)?;
    let config = SolverConfig {
        mu,
        tol,
        max_iter,
        continuation_steps: mu_stages,
    };
    let decomposition = solve(&problem, &config)?;
    let report = verify_decomposition(&decomposition, &problem)?;

    let artifact = DecompositionArtifact {
        rings,
        truncation,
        x: decomposition.x.clone(),
        residual_rel: decomposition.residual_rel,
        mixed_norm: decomposition.mixed_norm,
        iterations: decomposition.iterations,
        prefix_residuals: report.prefix_residuals.clone(),
    };
    write_output(out, &serde_json::to_string_pretty(&artifact)?)?;
    write_manifest(
        out,
        &manifest(
            "decompose",
            0,
            &[
                ("function", function.to_string()),
                ("rings", rings.to_string()),
                ("truncation", truncation.to_string()),
                ("tol", tol.to_string()),
                ("mu-stages", mu_stages.to_string()),
                ("max-iter", max_iter.to_string()),
                ("mu", mu.to_string()),
                ("out", out.to_string()),
            ],
        ),
    )?;
    eprintln!(
        "decompose: residual_rel={} mixed_norm={} iterations={} partial_sum_sup={}",
        decomposition.residual_rel,
        decomposition.mixed_norm,
        decomposition.iterations,
        decomposition.partial_sum_sup
    );

    if decomposition.status == SolveStatus::NonConvergence {
        eprintln!(
            "decompose: residual target unmet: residual_rel={} > tol={} \
             (best iterate emitted)",
            decomposition.residual_rel, tol
        );
        return Ok(1);
    }
    Ok(0)
}

fn cmd_reconstruct(decomp: &str, out: &str) -> Result<i32> {
    let text = read_input(decomp)?;
    let artifact: DecompositionArtifact = serde_json::from_str(&text)
        .map_err(|e| Error::Malformed(format!("decomposition JSON at {decomp}: {e}")))?;
    let grid = Grid::build(artifact.rings)?;
    let f = synthesis_partial_sum(&artifact.x, &grid, artifact.truncation)?;
    write_output(out, &serde_json::to_string(&f)?)?;
    write_manifest(
        out,
        &manifest(
            "reconstruct",
            0,
            &[("decomp", decomp.to_string()), ("out", out.to_string())],
        ),
    )?;
    Ok(0)
}

#[derive(serde::Serialize)]
struct ColumnStats {
    name: String,
    min: f64,
    max: f64,
}

#[derive(serde::Serialize)]
struct InputSummary {
    path: String,
    rows: usize,
    columns: Vec<ColumnStats>,
}

fn summarize_csv(path: &str) -> Result<InputSummary> {
    let text = read_input(path)?;
    let mut lines = text.lines();
    let header: Vec<&str> = lines
        .next()
        .ok_or_else(|| Error::Malformed(format!("{path}: empty CSV")))?
        .split(',')
        .collect();
    let mut stats: Vec<Option<(f64, f64)>> = vec![None; header.len()];
    let mut numeric = vec![true; header.len()];
    let mut rows = 0usize;
    for line in lines {
        if line.is_empty() {
            continue;
        }
        rows += 1;
        for (i, cell) in line.split(',').enumerate().take(header.len()) {
            match cell.parse::<f64>() {
                Ok(v) => {
                    let entry = stats[i].get_or_insert((v, v));
                    entry.0 = entry.0.min(v);
                    entry.1 = entry.1.max(v);
                }
                Err(_) => numeric[i] = false,
            }
        }
    }
    let columns = header
        .iter()
        .enumerate()
        .filter_map(|(i, name)| {
            if !numeric[i] {
                return None;
            }
            stats[i].map(|(min, max)| ColumnStats {
                name: (*name).to_string(),
                min,
                max,
            })
        })
        .collect();
    Ok(InputSummary {
        path: path.to_string(),
        rows,
        columns,
    })
}

fn cmd_report(out: &str, inputs: &[String]) -> Result<i32> {
    let summaries: Vec<InputSummary> = inputs
        .iter()
        .map(|path| summarize_csv(path))
        .collect::<Result<_>>()?;
    let summary = serde_json::json!({ "inputs": summaries });
    write_output(out, &serde_json::to_string_pretty(&summary)?)?;
    write_manifest(
        out,
        &manifest(
            "report",
            0,
            &[("inputs", inputs.join(",")), ("out", out.to_string())],
        ),
    )?;
    Ok(0)
}
