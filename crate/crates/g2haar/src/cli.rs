//! Command-line surface: verification suites, Haar sampling to files, Monte
//! Carlo integration, moment and invariance checks, volumes and the
//! measure-metric cross-check. One JSON object per output line.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{Backend, BackendKind, StructureConstants};
use crate::error::Error;
use crate::measure::{
    self, analytic_volume, channel_ks_statistic, density_vs_metric, invariance_suite,
    mc_integrate, HaarSampler, TestFunction,
};
use crate::parametrization::g2_element;
use crate::verify::{run_structural, Tolerances};

const EXIT_PASS: i32 = 0;
const EXIT_FAIL: i32 = 1;
const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "g2haar",
    version,
    about = "Euler coordinates, Haar sampling and Monte Carlo integration on the compact exceptional group G2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Adjoint,
    Octonion7,
}

impl From<BackendArg> for BackendKind {
    fn from(value: BackendArg) -> Self {
        match value {
            BackendArg::Adjoint => BackendKind::Adjoint,
            BackendArg::Octonion7 => BackendKind::Octonion7,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct CommonOpts {
    /// Matrix realization backing group elements.
    #[arg(long, value_enum, default_value = "adjoint")]
    backend: BackendArg,

    /// RNG seed; falls back to G2_HAAR_SEED, then 0.
    #[arg(long, env = "G2_HAAR_SEED", default_value_t = 0)]
    seed: u64,

    /// Tolerance overrides as KEY=VALUE (e.g. --tolerance jacobi=1e-11).
    #[arg(long, value_name = "KEY=VAL")]
    tolerance: Vec<String>,

    /// Write output to this path instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the structural verification suite and print one line per check.
    Verify {
        #[command(flatten)]
        common: CommonOpts,
        /// Finite-difference step for current and pullback checks.
        #[arg(long, default_value_t = 1e-6)]
        step: f64,
    },
    /// Draw exact Haar samples and write them as JSON lines or CSV.
    Sample {
        #[command(flatten)]
        common: CommonOpts,
        /// Number of samples.
        #[arg(short = 'n', long = "samples", default_value_t = 10)]
        samples: u64,
        /// Output format.
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Also emit the group matrix of each sample (row-major).
        #[arg(long)]
        emit_matrix: bool,
    },
    /// Monte Carlo estimate of a panel function over the Haar measure.
    Integrate {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(short = 'n', long = "samples", default_value_t = 100_000)]
        samples: u64,
        /// Integrand from the built-in panel.
        #[arg(long, value_enum, default_value = "trace")]
        function: FunctionArg,
    },
    /// Character-moment identities E[tr g] = 0 and E[(tr g)^2] = 1.
    Moments {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(short = 'n', long = "samples", default_value_t = 100_000)]
        samples: u64,
        /// Also run per-channel KS tests with this many draws (0 = skip).
        #[arg(long, default_value_t = 0)]
        ks_draws: u64,
    },
    /// Left/right translation invariance z-scores for the function panel.
    Invariance {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(short = 'n', long = "samples", default_value_t = 100_000)]
        samples: u64,
        /// Number of fixed translation elements.
        #[arg(short = 'k', long, default_value_t = 3)]
        translations: usize,
    },
    /// Analytic volumes by factorized quadrature vs the closed forms.
    Volume {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Ratio of sqrt(det metric) to the printed density at interior points.
    MetricCheck {
        #[command(flatten)]
        common: CommonOpts,
        /// Number of interior points.
        #[arg(long, default_value_t = 50)]
        points: usize,
        /// Finite-difference step for the 14x14 metric.
        #[arg(long, default_value_t = 1e-6)]
        step: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FunctionArg {
    Trace,
    TraceSquared,
    TraceOfSquare,
    BlockNormSquared,
}

impl From<FunctionArg> for TestFunction {
    fn from(value: FunctionArg) -> Self {
        match value {
            FunctionArg::Trace => TestFunction::Trace,
            FunctionArg::TraceSquared => TestFunction::TraceSquared,
            FunctionArg::TraceOfSquare => TestFunction::TraceOfSquare,
            FunctionArg::BlockNormSquared => TestFunction::BlockNormSquared,
        }
    }
}

/// Parses arguments and runs; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(Error::InvalidArgument(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_FAIL
        }
    }
}

fn parse_tolerances(overrides: &[String]) -> Result<Tolerances, Error> {
    let mut tol = Tolerances::default();
    for spec in overrides {
        let (key, value) = spec
            .split_once('=')
            .ok_or_else(|| Error::InvalidArgument(format!("expected KEY=VAL, got {spec:?}")))?;
        let value: f64 = value
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad tolerance value in {spec:?}")))?;
        tol.set(key, value)?;
    }
    Ok(tol)
}

fn writer_for(common: &CommonOpts) -> Result<Box<dyn Write>, Error> {
    Ok(match &common.output {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| {
            Error::InvalidArgument(format!("cannot open {}: {e}", path.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn print_json<W: Write, T: Serialize>(out: &mut W, value: &T) -> Result<(), Error> {
    let line = serde_json::to_string(value).expect("report types serialize");
    writeln!(out, "{line}").map_err(|e| Error::InvalidArgument(format!("write failed: {e}")))
}

fn build_backend(kind: BackendKind) -> Result<Backend, Error> {
    Backend::new(&StructureConstants::new(), kind)
}

fn dispatch(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Verify { common, step } => cmd_verify(common, step),
        Command::Sample { common, samples, format, emit_matrix } => {
            cmd_sample(common, samples, format, emit_matrix)
        }
        Command::Integrate { common, samples, function } => {
            cmd_integrate(common, samples, function.into())
        }
        Command::Moments { common, samples, ks_draws } => cmd_moments(common, samples, ks_draws),
        Command::Invariance { common, samples, translations } => {
            cmd_invariance(common, samples, translations)
        }
        Command::Volume { common } => cmd_volume(common),
        Command::MetricCheck { common, points, step } => cmd_metric_check(common, points, step),
    }
}

#[derive(Serialize)]
struct Summary<'a> {
    summary: &'a str,
    checks: usize,
    failures: usize,
}

fn cmd_verify(common: CommonOpts, step: f64) -> Result<i32, Error> {
    let tol = parse_tolerances(&common.tolerance)?;
    let mut out = writer_for(&common)?;
    let lines = run_structural(common.backend.into(), &tol, step)?;
    let failures = lines.iter().filter(|l| !l.pass).count();
    for line in &lines {
        print_json(&mut out, line)?;
    }
    print_json(
        &mut out,
        &Summary {
            summary: if failures == 0 { "PASS" } else { "FAIL" },
            checks: lines.len(),
            failures,
        },
    )?;
    out.flush().ok();
    Ok(if failures == 0 { EXIT_PASS } else { EXIT_FAIL })
}

#[derive(Serialize)]
struct SampleHeader<'a> {
    format: &'a str,
    backend: &'a str,
    seed: u64,
    n: u64,
    version: &'a str,
}

#[derive(Serialize)]
struct SampleRecord {
    alpha: [f64; 6],
    gamma: [f64; 8],
    density: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<f64>>,
}

fn cmd_sample(common: CommonOpts, samples: u64, format: Format, emit_matrix: bool) -> Result<i32, Error> {
    let kind: BackendKind = common.backend.into();
    let backend = if emit_matrix { Some(build_backend(kind)?) } else { None };
    let sampler = HaarSampler::new(common.seed);
    let mut out = writer_for(&common)?;
    let version = env!("CARGO_PKG_VERSION");

    match format {
        Format::Json => {
            print_json(
                &mut out,
                &SampleHeader {
                    format: "g2-haar/1",
                    backend: kind.name(),
                    seed: common.seed,
                    n: samples,
                    version,
                },
            )?;
            for index in 0..samples {
                let s = sampler.sample(index);
                let matrix = backend.as_ref().map(|b| {
                    g2_element(b, &s.coords).matrix().row_iter().flat_map(|r| r.iter().copied().collect::<Vec<_>>()).collect()
                });
                print_json(
                    &mut out,
                    &SampleRecord {
                        alpha: s.coords.alpha,
                        gamma: s.coords.gamma,
                        density: s.density,
                        matrix,
                    },
                )?;
            }
        }
        Format::Csv => {
            let w = |e: io::Error| Error::InvalidArgument(format!("write failed: {e}"));
            writeln!(
                out,
                "# format=g2-haar/1 backend={} seed={} n={} version={}",
                kind.name(),
                common.seed,
                samples,
                version
            )
            .map_err(w)?;
            let mut header: Vec<String> = (1..=6).map(|i| format!("alpha{i}")).collect();
            header.extend((1..=8).map(|i| format!("gamma{i}")));
            header.push("density".into());
            if let Some(b) = &backend {
                let d = b.dim();
                header.extend((0..d * d).map(|i| format!("m{i}")));
            }
            writeln!(out, "{}", header.join(",")).map_err(w)?;
            for index in 0..samples {
                let s = sampler.sample(index);
                let mut fields: Vec<String> =
                    s.coords.flat().iter().map(|v| format!("{v}")).collect();
                fields.push(format!("{}", s.density));
                if let Some(b) = &backend {
                    let g = g2_element(b, &s.coords);
                    for r in g.matrix().row_iter() {
                        fields.extend(r.iter().map(|v| format!("{v}")));
                    }
                }
                writeln!(out, "{}", fields.join(",")).map_err(w)?;
            }
        }
    }
    out.flush().ok();
    Ok(EXIT_PASS)
}

#[derive(Serialize)]
struct IntegrateReport {
    function: &'static str,
    backend: &'static str,
    mean: f64,
    stderr: f64,
    n: u64,
    seed: u64,
}

fn cmd_integrate(common: CommonOpts, samples: u64, function: TestFunction) -> Result<i32, Error> {
    let kind: BackendKind = common.backend.into();
    let backend = build_backend(kind)?;
    let est = mc_integrate(&backend, |g| function.eval(g), samples, common.seed)?;
    let mut out = writer_for(&common)?;
    print_json(
        &mut out,
        &IntegrateReport {
            function: function.name(),
            backend: kind.name(),
            mean: est.mean,
            stderr: est.stderr,
            n: est.n,
            seed: est.seed,
        },
    )?;
    out.flush().ok();
    Ok(EXIT_PASS)
}

#[derive(Serialize)]
struct MomentReport {
    moment: &'static str,
    backend: &'static str,
    mean: f64,
    stderr: f64,
    expected: f64,
    z: f64,
    n: u64,
    seed: u64,
    pass: bool,
}

#[derive(Serialize)]
struct KsReport {
    channel: &'static str,
    distance: f64,
    critical: f64,
    n: u64,
    pass: bool,
}

fn cmd_moments(common: CommonOpts, samples: u64, ks_draws: u64) -> Result<i32, Error> {
    let tol = parse_tolerances(&common.tolerance)?;
    let kind: BackendKind = common.backend.into();
    let backend = build_backend(kind)?;
    let mut out = writer_for(&common)?;
    let mut all_pass = true;

    let cases = [
        ("E[tr g]", TestFunction::Trace, 0.0),
        ("E[(tr g)^2]", TestFunction::TraceSquared, 1.0),
    ];
    for (name, f, expected) in cases {
        let est = mc_integrate(&backend, |g| f.eval(g), samples, common.seed)?;
        let z = if est.stderr == 0.0 { 0.0 } else { (est.mean - expected) / est.stderr };
        let pass = z.abs() <= tol.moment_sigmas;
        all_pass &= pass;
        print_json(
            &mut out,
            &MomentReport {
                moment: name,
                backend: kind.name(),
                mean: est.mean,
                stderr: est.stderr,
                expected,
                z,
                n: est.n,
                seed: est.seed,
                pass,
            },
        )?;
    }

    if ks_draws > 0 {
        let critical = tol.ks_coeff / (ks_draws as f64).sqrt();
        let names = ["alpha2", "alpha5", "alpha6"];
        for (channel, name) in [1usize, 4, 5].into_iter().zip(names) {
            let d = channel_ks_statistic(common.seed, channel, ks_draws);
            let pass = d <= critical;
            all_pass &= pass;
            print_json(
                &mut out,
                &KsReport { channel: name, distance: d, critical, n: ks_draws, pass },
            )?;
        }
    }
    out.flush().ok();
    Ok(if all_pass { EXIT_PASS } else { EXIT_FAIL })
}

fn cmd_invariance(common: CommonOpts, samples: u64, translations: usize) -> Result<i32, Error> {
    let tol = parse_tolerances(&common.tolerance)?;
    let kind: BackendKind = common.backend.into();
    let backend = build_backend(kind)?;
    let report = invariance_suite(&backend, translations, samples, common.seed)?;
    let mut out = writer_for(&common)?;
    for line in &report.lines {
        print_json(&mut out, line)?;
    }
    let pass = report.max_abs_z <= tol.invariance_z;
    print_json(
        &mut out,
        &serde_json::json!({
            "summary": if pass { "PASS" } else { "FAIL" },
            "max_abs_z": report.max_abs_z,
            "limit": tol.invariance_z,
            "n": samples,
            "seed": common.seed,
        }),
    )?;
    out.flush().ok();
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}

fn cmd_volume(common: CommonOpts) -> Result<i32, Error> {
    let tol = parse_tolerances(&common.tolerance)?;
    let v = analytic_volume();
    let pi = std::f64::consts::PI;
    let v_su3_exact = 3f64.sqrt() * pi.powi(5);
    let ratio_exact = 0.9 * pi.powi(3);
    let su3_err = ((v.v_su3 - v_su3_exact) / v_su3_exact).abs();
    let ratio_err = ((v.v_g2 / v.v_su3 - ratio_exact) / ratio_exact).abs();
    let norm = measure::normalization_integral();
    let norm_err = (norm - 1.0).abs();
    let pass = su3_err <= tol.volume && ratio_err <= tol.volume && norm_err <= tol.volume;
    let mut out = writer_for(&common)?;
    print_json(
        &mut out,
        &serde_json::json!({
            "v_su3": v.v_su3,
            "v_g2": v.v_g2,
            "v_su3_closed_form": v_su3_exact,
            "ratio_closed_form": ratio_exact,
            "su3_relative_error": su3_err,
            "ratio_relative_error": ratio_err,
            "normalization_integral": norm,
            "summary": if pass { "PASS" } else { "FAIL" },
        }),
    )?;
    out.flush().ok();
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}

fn cmd_metric_check(common: CommonOpts, points: usize, step: f64) -> Result<i32, Error> {
    let tol = parse_tolerances(&common.tolerance)?;
    let kind: BackendKind = common.backend.into();
    let backend = build_backend(kind)?;
    let report = density_vs_metric(&backend, points, common.seed, step)?;
    let pass = report.ratio_spread <= tol.ratio_spread;
    let mut out = writer_for(&common)?;
    print_json(
        &mut out,
        &serde_json::json!({
            "ratio_mean": report.ratio_mean,
            "ratio_spread": report.ratio_spread,
            "points": report.points,
            "spread_limit": tol.ratio_spread,
            // the printed density is a scale choice; the constancy of the
            // ratio is the invariant under test, its value is reported
            "fitted_constant": report.ratio_mean,
            "summary": if pass { "PASS" } else { "FAIL" },
        }),
    )?;
    out.flush().ok();
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::g2_density;

    #[test]
    fn tolerance_parsing() {
        let tol = parse_tolerances(&["jacobi=1e-11".into(), "ks-coeff=1.9".into()]).unwrap();
        assert_eq!(tol.jacobi, 1e-11);
        assert_eq!(tol.ks_coeff, 1.9);
        assert!(parse_tolerances(&["nope=1".into()]).is_err());
        assert!(parse_tolerances(&["jacobi".into()]).is_err());
        assert!(parse_tolerances(&["jacobi=x".into()]).is_err());
    }

    #[test]
    fn sample_density_matches_module_function() {
        let s = HaarSampler::new(4).sample(0);
        assert_eq!(s.density, g2_density(&s.coords));
    }
}
