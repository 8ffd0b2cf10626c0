//! Command-line front end.
//!
//! Vector inputs accept an inline list (`0,2,5,7`), `-` for stdin or
//! `@path` for a file; stdin and files may hold a list or an `eos/1`
//! document of the matching kind.

use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use num::BigRational;
use rayon::prelude::*;

use crate::error::EosError;
use crate::feasibility::{check_eos, check_moment_hull, check_mixture, Certificate, FeasibilityStatus, FeasibilityVerdict};
use crate::generator::{atomic_parent, atomic_t_from_discrete, default_grid, quantile_from_t, t_from_x, verify_lemma1};
use crate::hankel::DEFAULT_TOL;
use crate::io::{
    exact_numbers, float_numbers, measure_pairs, numbers, parse, parse_number, DistSpec, Document, Format, IoError,
    Report, TSpec,
};
use crate::moments::{nu_from_beta, BetaSequence, ProbabilityVector, UVector};
use crate::oracle::{eos_exact, DiscreteDistribution};
use crate::recovery::recover_measure;
use crate::scalar::{format_float, Number, Scalar};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_AMBIGUOUS: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_NUMERICAL: i32 = 70;

/// Environment variable overriding the default tolerance.
pub const TOL_ENV: &str = "EOS_TOL";

const LEMMA1_TOL: f64 = 1e-8;

#[derive(Parser, Debug)]
#[command(name = "eos", version, about = "Expected order statistics toolkit")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Global {
    /// Emit an eos/1 JSON document
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV where the output is tabular
    #[arg(long, global = true)]
    csv: bool,
    /// Decide in exact rational arithmetic
    #[arg(long, global = true)]
    exact: bool,
    /// Numerical tolerance (overrides EOS_TOL)
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a sequence is a vector of expected order statistics
    CheckEos {
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Decide whether a probability vector is a mixture of binomials
    CheckMixture {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
    },
    /// Decide whether a point lies in the hull of the open moment curve
    CheckHull {
        #[arg(long, allow_hyphen_values = true)]
        u: String,
    },
    /// Normalized moment vector of a sequence
    Nu {
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Atomic measure reproducing a moment vector
    Recover {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "beta", required_unless_present = "beta")]
        nu: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
    },
    /// Normalized parent generated by a law of T
    Generate {
        #[arg(long = "t", allow_hyphen_values = true)]
        law: String,
        #[arg(long, default_value_t = 1001)]
        grid: usize,
    },
    /// Law of T generated by a parent distribution
    Tmap {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "quantile", required_unless_present = "quantile")]
        dist: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        quantile: Option<String>,
        #[arg(long, default_value_t = 1001)]
        grid: usize,
    },
    /// Expected order statistics of a discrete law
    Eos {
        #[arg(long, allow_hyphen_values = true)]
        dist: String,
        #[arg(long)]
        n: usize,
    },
    /// Check the max-moment spacing identity for a law of T
    VerifyLemma1 {
        #[arg(long = "t", allow_hyphen_values = true)]
        law: String,
        #[arg(long, default_value_t = 6)]
        kmax: usize,
    },
    /// Decide one eos/1 document per line
    Batch {
        #[arg(allow_hyphen_values = true)]
        input: String,
    },
}

enum Failure {
    Eos(EosError),
    Io(IoError),
    Usage(String),
}

impl From<EosError> for Failure {
    fn from(e: EosError) -> Self {
        Failure::Eos(e)
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Io(_) => EXIT_DATA,
            Failure::Eos(e) => match e {
                EosError::RankDetectionAmbiguous { .. } => EXIT_AMBIGUOUS,
                EosError::NotRepresentable(_) => EXIT_INFEASIBLE,
                EosError::RecoveryFailed(_) | EosError::IntegrationFailure { .. } => EXIT_NUMERICAL,
                _ => EXIT_DATA,
            },
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "UsageError",
            Failure::Io(IoError::Syntax { .. }) => "SyntaxError",
            Failure::Io(IoError::SchemaVersionMismatch { .. }) => "SchemaVersionMismatch",
            Failure::Io(IoError::InvariantViolation { .. }) => "InvariantViolation",
            Failure::Io(IoError::UnsupportedFormat { .. }) => "UnsupportedFormat",
            Failure::Eos(e) => match e {
                EosError::RankDetectionAmbiguous { .. } => "RankDetectionAmbiguous",
                EosError::NotRepresentable(_) => "NotRepresentable",
                EosError::RecoveryFailed(_) => "RecoveryFailed",
                EosError::IntegrationFailure { .. } => "IntegrationFailure",
                _ => "InvalidInput",
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Io(e) => e.to_string(),
            Failure::Eos(e) => e.to_string(),
        }
    }

    fn to_json(&self) -> String {
        serde_json::json!({
            "kind": "error",
            "version": crate::io::SCHEMA_VERSION,
            "error": self.name(),
            "message": self.message(),
        })
        .to_string()
    }
}

/// Result of one command: text to print and the exit code it implies.
struct Outcome {
    doc: Document,
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(doc: Document, text: String) -> Self {
        Self { doc, text, code: EXIT_OK }
    }
}

#[derive(Debug, Clone, Copy)]
struct Settings {
    json: bool,
    csv: bool,
    exact: bool,
    tol: f64,
}

/// Runs the tool on `argv` (including the program name) and returns the exit code.
pub fn run(argv: &[String], stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if !e.use_stderr() {
                let _ = write!(stdout, "{}", e.render());
                return EXIT_OK;
            }
            let _ = write!(stderr, "{}", e.render());
            if argv.iter().any(|a| a == "--json") {
                let first = e.render().to_string().lines().next().unwrap_or_default().trim_start_matches("error: ").to_string();
                let _ = writeln!(stdout, "{}", Failure::Usage(first).to_json());
            }
            return EXIT_USAGE;
        }
    };
    let settings = match resolve_settings(&cli.global) {
        Ok(s) => s,
        Err(f) => return report_failure(&f, cli.global.json, stdout, stderr),
    };
    if let Command::Batch { input } = &cli.command {
        return match read_source(input, stdin) {
            Ok(text) => run_batch(&text, settings, stdout),
            Err(f) => report_failure(&f, settings.json, stdout, stderr),
        };
    }
    match execute(&cli.command, settings, stdin) {
        Ok(outcome) => match render(&outcome, settings) {
            Ok(text) => {
                let _ = writeln!(stdout, "{text}");
                outcome.code
            }
            Err(f) => report_failure(&f, settings.json, stdout, stderr),
        },
        Err(f) => report_failure(&f, settings.json, stdout, stderr),
    }
}

fn resolve_settings(g: &Global) -> Result<Settings, Failure> {
    let tol = match g.tol {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("{TOL_ENV}={v:?} is not a number")))?,
            Err(_) => DEFAULT_TOL,
        },
    };
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Failure::Usage(format!("tolerance {tol} must be a non-negative number")));
    }
    Ok(Settings {
        json: g.json,
        csv: g.csv,
        exact: g.exact,
        tol,
    })
}

fn report_failure(f: &Failure, json: bool, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    if json {
        let _ = writeln!(stdout, "{}", f.to_json());
    }
    let _ = writeln!(stderr, "error: {}", f.message());
    f.code()
}

fn render(outcome: &Outcome, settings: Settings) -> Result<String, Failure> {
    if settings.json {
        Ok(outcome.doc.emit(Format::Json)?)
    } else if settings.csv {
        Ok(outcome.doc.emit(Format::Csv)?)
    } else {
        Ok(outcome.text.clone())
    }
}

fn read_source(arg: &str, stdin: &mut dyn Read) -> Result<String, Failure> {
    if arg == "-" {
        let mut text = String::new();
        stdin
            .read_to_string(&mut text)
            .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
        Ok(text)
    } else if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

// A list of numbers, inline or as a document of the expected kind.
fn read_numbers(arg: &str, kind: &str, stdin: &mut dyn Read) -> Result<Vec<Number>, Failure> {
    let text = read_source(arg, stdin)?;
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        return match (parse(trimmed)?, kind) {
            (Document::Beta(v), "beta") | (Document::P(v), "p") | (Document::U(v), "u") => Ok(v),
            (Document::Nu { values, .. }, "nu") => Ok(values),
            (doc, _) => Err(Failure::Usage(format!("expected a {kind} document, got {}", doc.kind()))),
        };
    }
    trimmed
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .enumerate()
        .map(|(i, tok)| {
            parse_number(tok).ok_or_else(|| {
                Failure::Io(IoError::InvariantViolation {
                    path: format!("{kind}[{i}]"),
                    message: format!("bad number {tok:?}"),
                })
            })
        })
        .collect()
}

fn read_spec(arg: &str, stdin: &mut dyn Read) -> Result<String, Failure> {
    Ok(read_source(arg, stdin)?.trim().to_string())
}

fn exact_or_usage(values: &[Number]) -> Result<Vec<BigRational>, Failure> {
    exact_numbers(values).ok_or_else(|| Failure::Usage("--exact needs rational inputs such as 3/4 or 0.25".into()))
}

fn execute(command: &Command, s: Settings, stdin: &mut dyn Read) -> Result<Outcome, Failure> {
    match command {
        Command::CheckEos { beta } => {
            let values = read_numbers(beta, "beta", stdin)?;
            decide(s, &values, |v, tol| check_eos(&BetaSequence::new(v.to_vec())?, tol), |v, tol| {
                check_eos(&BetaSequence::new(v.to_vec())?, tol)
            })
        }
        Command::CheckMixture { p } => {
            let values = read_numbers(p, "p", stdin)?;
            decide(s, &values, |v, tol| check_mixture(&ProbabilityVector::new(v.to_vec())?, tol), |v, tol| {
                check_mixture(&ProbabilityVector::new(v.to_vec())?, tol)
            })
        }
        Command::CheckHull { u } => {
            let values = read_numbers(u, "u", stdin)?;
            decide(s, &values, |v, tol| check_moment_hull(&UVector::new(v.to_vec())?, tol), |v, tol| {
                check_moment_hull(&UVector::new(v.to_vec())?, tol)
            })
        }
        Command::Nu { beta } => {
            let values = read_numbers(beta, "beta", stdin)?;
            let (n, lambda, nu) = if s.exact {
                let nu = nu_from_beta(&BetaSequence::new(exact_or_usage(&values)?)?)?;
                (nu.n, Number::of(&nu.lambda), numbers(&nu.nu))
            } else {
                let nu = nu_from_beta(&BetaSequence::new(float_numbers(&values))?)?;
                (nu.n, Number::of(&nu.lambda), numbers(&nu.nu))
            };
            let text = format!("lambda: {lambda}\nnu: {}", join(&nu));
            Ok(Outcome::ok(Document::Nu { n, lambda, values: nu }, text))
        }
        Command::Recover { nu, beta } => {
            let moments = match (nu, beta) {
                (Some(nu), _) => float_numbers(&read_numbers(nu, "nu", stdin)?),
                (None, Some(beta)) => {
                    let values = read_numbers(beta, "beta", stdin)?;
                    if s.exact {
                        let verdict = check_eos(&BetaSequence::new(exact_or_usage(&values)?)?, s.tol)?;
                        return match verdict.certificate {
                            Some(Certificate::Exact(m)) => Ok(measure_outcome(measure_pairs(&m))),
                            Some(Certificate::Approx(m)) => Ok(measure_outcome(measure_pairs(&m))),
                            None => Err(EosError::NotRepresentable(format!(
                                "no representing measure inside (0, 1) ({})",
                                verdict.reason.name()
                            ))
                            .into()),
                        };
                    }
                    nu_from_beta(&BetaSequence::new(float_numbers(&values))?)?.nu
                }
                (None, None) => return Err(Failure::Usage("pass --nu or --beta".into())),
            };
            let m = recover_measure(&moments, s.tol.max(DEFAULT_TOL))?;
            Ok(measure_outcome(measure_pairs(&m)))
        }
        Command::Generate { law, grid } => {
            let spec = TSpec::parse(&read_spec(law, stdin)?)?;
            if let Some(m) = spec.to_exact_measure() {
                let x = atomic_parent(&m)?;
                return Ok(dist_outcome(&x));
            }
            let mixing = spec.to_mixing()?;
            let q = quantile_from_t(&mixing)?;
            if let crate::generator::QuantileFunction::Discrete(x) = &q {
                return Ok(dist_outcome(x));
            }
            let points = q
                .table(grid_size(*grid)?)?
                .into_iter()
                .map(|(t, x)| (Number::Float(t), Number::Float(x)))
                .collect::<Vec<_>>();
            let text = table_text("t", "quantile", &points);
            Ok(Outcome::ok(Document::Dist(DistSpec::QuantileGrid(points)), text))
        }
        Command::Tmap { dist, quantile, grid } => {
            let spec = match (dist, quantile) {
                (Some(d), _) => DistSpec::parse(&read_spec(d, stdin)?)?,
                (None, Some(q)) => DistSpec::parse(&read_spec(q, stdin)?)?,
                (None, None) => return Err(Failure::Usage("pass --dist or --quantile".into())),
            };
            if let Some(x) = spec.to_exact_discrete() {
                let (m, lambda) = atomic_t_from_discrete(&x)?;
                return Ok(tspec_atoms_outcome(measure_pairs(&m), Number::of(&lambda)));
            }
            let q = spec.to_quantile()?;
            let t = t_from_x(&q)?;
            if let crate::generator::MixingDistribution::Atomic(m) = &t.law {
                return Ok(tspec_atoms_outcome(measure_pairs(m), Number::Float(t.lambda)));
            }
            let g = default_grid(grid_size(*grid)?);
            let cdf = t.law.cdf_grid(&g)?;
            let points: Vec<(Number, Number)> = g
                .into_iter()
                .zip(cdf)
                .map(|(a, b)| (Number::Float(a), Number::Float(b)))
                .collect();
            let lambda = Number::Float(t.lambda);
            let text = format!("lambda: {lambda}\n{}", table_text("t", "cdf", &points));
            Ok(Outcome::ok(Document::TSpec(TSpec::CdfGrid { lambda, points }), text))
        }
        Command::Eos { dist, n } => {
            let spec = DistSpec::parse(&read_spec(dist, stdin)?)?;
            let values = match spec.to_exact_discrete() {
                Some(x) => numbers(&eos_exact(&x, *n)?),
                None => match &spec {
                    DistSpec::Atoms(_) => match spec.to_quantile()? {
                        crate::generator::QuantileFunction::Discrete(x) => numbers(&eos_exact(&x, *n)?),
                        _ => unreachable!("atoms give a discrete quantile"),
                    },
                    _ => return Err(Failure::Usage("eos needs --dist atoms:v:m,...".into())),
                },
            };
            let text = join(&values);
            Ok(Outcome::ok(Document::Beta(values), text))
        }
        Command::VerifyLemma1 { law, kmax } => {
            let spec = TSpec::parse(&read_spec(law, stdin)?)?;
            let tol = if s.tol == DEFAULT_TOL && std::env::var(TOL_ENV).is_err() {
                LEMMA1_TOL
            } else {
                s.tol
            };
            lemma1_outcome(&spec, *kmax, tol)
        }
        Command::Batch { .. } => Err(Failure::Usage("batch is handled separately".into())),
    }
}

fn grid_size(n: usize) -> Result<usize, Failure> {
    if n == 0 || n > 1_000_000 {
        return Err(Failure::Usage(format!("grid size {n} must lie in 1..=1000000")));
    }
    Ok(n)
}

fn decide(
    s: Settings,
    values: &[Number],
    exact: impl Fn(&[BigRational], f64) -> crate::Result<FeasibilityVerdict>,
    float: impl Fn(&[f64], f64) -> crate::Result<FeasibilityVerdict>,
) -> Result<Outcome, Failure> {
    let verdict = if s.exact {
        exact(&exact_or_usage(values)?, s.tol)?
    } else {
        float(&float_numbers(values), s.tol)?
    };
    Ok(verdict_outcome(verdict))
}

fn verdict_outcome(v: FeasibilityVerdict) -> Outcome {
    let mut text = format!(
        "{} ({})",
        match v.status {
            FeasibilityStatus::Feasible => "Feasible",
            FeasibilityStatus::Infeasible => "Infeasible",
        },
        v.reason.name()
    );
    if let Some(eps) = &v.epsilon_witness {
        text.push_str(&format!("\nepsilon_witness: {eps}"));
    }
    if let Some(c) = &v.certificate {
        let pairs = match c {
            Certificate::Exact(m) => measure_pairs(m),
            Certificate::Approx(m) => measure_pairs(m),
        };
        text.push_str("\ncertificate:");
        for (t, w) in pairs {
            text.push_str(&format!("\n  t = {t}, w = {w}"));
        }
    }
    if let Some(d) = v.boundary_distance {
        text.push_str(&format!("\nboundary_distance: {}", format_float(d)));
    }
    let code = if v.is_feasible() { EXIT_OK } else { EXIT_INFEASIBLE };
    Outcome {
        doc: Document::Verdict(v),
        text,
        code,
    }
}

fn measure_outcome(pairs: Vec<(Number, Number)>) -> Outcome {
    let text = table_text("t", "w", &pairs);
    Outcome::ok(Document::Measure(pairs), text)
}

fn dist_outcome<S: Scalar>(x: &DiscreteDistribution<S>) -> Outcome {
    let pairs: Vec<(Number, Number)> = x
        .values()
        .iter()
        .zip(x.masses())
        .map(|(v, m)| (Number::of(v), Number::of(m)))
        .collect();
    let text = table_text("value", "mass", &pairs);
    Outcome::ok(Document::Dist(DistSpec::Atoms(pairs)), text)
}

fn tspec_atoms_outcome(pairs: Vec<(Number, Number)>, lambda: Number) -> Outcome {
    let text = format!("lambda: {lambda}\n{}", table_text("t", "w", &pairs));
    Outcome::ok(Document::TSpec(TSpec::Atoms(pairs)), text)
}

fn lemma1_outcome(spec: &TSpec, k_max: usize, tol: f64) -> Result<Outcome, Failure> {
    let law = spec.to_mixing()?;
    let r = verify_lemma1(&law, k_max, tol)?;
    let mut text = format!(
        "{} for {spec}\nmax deviation: {:e}\n|mu_1|: {:e}",
        if r.passed { "passed" } else { "FAILED" },
        r.max_deviation,
        r.mean_deviation
    );
    for (k, d) in r.deviations.iter().enumerate() {
        text.push_str(&format!("\nk = {k}: {d:e}"));
    }
    let report = Report {
        law: spec.to_string(),
        k_max,
        tolerance: Number::Float(tol),
        max_moments: numbers(&r.max_moments),
        deviations: numbers(&r.deviations),
        max_deviation: Number::Float(r.max_deviation),
        mean_deviation: Number::Float(r.mean_deviation),
        passed: r.passed,
    };
    Ok(Outcome {
        doc: Document::Report(report),
        text,
        code: if r.passed { EXIT_OK } else { EXIT_INFEASIBLE },
    })
}

fn join(values: &[Number]) -> String {
    values.iter().map(Number::to_string).collect::<Vec<_>>().join(", ")
}

fn table_text(a: &str, b: &str, pairs: &[(Number, Number)]) -> String {
    let mut text = format!("{a}\t{b}");
    for (x, y) in pairs {
        text.push_str(&format!("\n{x}\t{y}"));
    }
    text
}

// One verdict per document line, in input order.
fn run_batch(text: &str, s: Settings, stdout: &mut dyn Write) -> i32 {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    let results: Vec<(String, i32)> = lines
        .par_iter()
        .map(|&(i, line)| {
            let result = batch_line(line, s).and_then(|o| {
                let rendered = if s.json { o.doc.emit(Format::Json)? } else { o.text.replace('\n', "; ") };
                Ok((rendered, o.code))
            });
            match result {
                Ok((rendered, code)) if s.json => (rendered, code),
                Ok((rendered, code)) => (format!("{}: {rendered}", i + 1), code),
                Err(f) if s.json => (f.to_json(), f.code()),
                Err(f) => (format!("{}: error: {}", i + 1, f.message()), f.code()),
            }
        })
        .collect();
    let mut code = EXIT_OK;
    for (line, c) in results {
        let _ = writeln!(stdout, "{line}");
        code = code.max(c);
    }
    code
}

fn batch_line(line: &str, s: Settings) -> Result<Outcome, Failure> {
    let doc = parse(line)?;
    match doc {
        Document::Beta(v) => decide(s, &v, |v, tol| check_eos(&BetaSequence::new(v.to_vec())?, tol), |v, tol| {
            check_eos(&BetaSequence::new(v.to_vec())?, tol)
        }),
        Document::P(v) => decide(s, &v, |v, tol| check_mixture(&ProbabilityVector::new(v.to_vec())?, tol), |v, tol| {
            check_mixture(&ProbabilityVector::new(v.to_vec())?, tol)
        }),
        Document::U(v) => decide(s, &v, |v, tol| check_moment_hull(&UVector::new(v.to_vec())?, tol), |v, tol| {
            check_moment_hull(&UVector::new(v.to_vec())?, tol)
        }),
        Document::Nu { values, .. } => Ok(measure_outcome(measure_pairs(&recover_measure(
            &float_numbers(&values),
            s.tol.max(DEFAULT_TOL),
        )?))),
        Document::TSpec(spec) => lemma1_outcome(&spec, 6, LEMMA1_TOL),
        other => Err(Failure::Usage(format!("batch cannot decide {} documents", other.kind()))),
    }
}
