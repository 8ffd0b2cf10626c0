//! `eos/1` documents: JSON with sorted keys and numbers as strings, plus CSV
//! for the vector-like kinds.
//!
//! A number string is a float when written in scientific notation (`2.5e-1`)
//! and an exact rational otherwise (`3`, `-7/2`, `0.125`). Floats are emitted
//! with seventeen significant digits, rationals as `num` or `num/den`.

use std::fmt;

use num::BigRational;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::error::EosError;
use crate::feasibility::{Certificate, FeasibilityStatus, FeasibilityVerdict, Reason};
use crate::generator::{ClosedForm, MixingDistribution, QuantileFunction};
use crate::moments::{BetaSequence, ProbabilityVector, UVector};
use crate::oracle::DiscreteDistribution;
use crate::recovery::{Atom, AtomicMeasure};
use crate::scalar::{parse_rational, Number, Scalar};

pub const SCHEMA_VERSION: &str = "eos/1";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IoError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("schema version mismatch: expected \"{SCHEMA_VERSION}\", found {found}")]
    SchemaVersionMismatch { found: String },
    #[error("invariant violated at {path}: {message}")]
    InvariantViolation { path: String, message: String },
    #[error("{kind} documents have no {format} form")]
    UnsupportedFormat { kind: &'static str, format: Format },
}

fn violation(path: impl Into<String>, message: impl fmt::Display) -> IoError {
    IoError::InvariantViolation {
        path: path.into(),
        message: message.to_string(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

/// Exact unless written in scientific notation or as a non-finite literal.
pub fn parse_number(token: &str) -> Option<Number> {
    let t = token.trim();
    let lower = t.to_ascii_lowercase();
    if lower.contains('e') || lower.contains("inf") || lower.contains("nan") {
        let v: f64 = t.parse().ok()?;
        return v.is_finite().then_some(Number::Float(v));
    }
    parse_rational(t).map(Number::Exact)
}

/// All entries as rationals, if every one is exact.
pub fn exact_numbers(values: &[Number]) -> Option<Vec<BigRational>> {
    values
        .iter()
        .map(|v| match v {
            Number::Exact(r) => Some(r.clone()),
            Number::Float(_) => None,
        })
        .collect()
}

pub fn float_numbers(values: &[Number]) -> Vec<f64> {
    values.iter().map(Number::to_f64).collect()
}

pub fn numbers<S: Scalar>(values: &[S]) -> Vec<Number> {
    values.iter().map(Number::of).collect()
}

fn pairs_exact(pairs: &[(Number, Number)]) -> Option<Vec<(BigRational, BigRational)>> {
    pairs
        .iter()
        .map(|(a, b)| match (a, b) {
            (Number::Exact(a), Number::Exact(b)) => Some((a.clone(), b.clone())),
            _ => None,
        })
        .collect()
}

fn pairs_f64(pairs: &[(Number, Number)]) -> Vec<(f64, f64)> {
    pairs.iter().map(|(a, b)| (a.to_f64(), b.to_f64())).collect()
}

pub fn measure_pairs<S: Scalar>(m: &AtomicMeasure<S>) -> Vec<(Number, Number)> {
    m.atoms()
        .iter()
        .map(|a| (Number::of(&a.location), Number::of(&a.weight)))
        .collect()
}

fn measure_from_pairs<S: Scalar>(pairs: Vec<(S, S)>) -> crate::Result<AtomicMeasure<S>> {
    AtomicMeasure::new(
        pairs
            .into_iter()
            .map(|(location, weight)| Atom { location, weight })
            .collect(),
    )
}

/// Law of the generator `T`.
#[derive(Debug, Clone, PartialEq)]
pub enum TSpec {
    Beta { a: Number, b: Number },
    Uniform,
    Degenerate(Number),
    /// `(t, w)` pairs.
    Atoms(Vec<(Number, Number)>),
    /// `(t, Pr(T < t))` on a grid, with the scale of the parent it came from.
    CdfGrid { lambda: Number, points: Vec<(Number, Number)> },
}

impl TSpec {
    /// `beta:a:b`, `uniform`, `degenerate:rho` or `atoms:t:w,t:w,...`.
    pub fn parse(spec: &str) -> Result<Self, IoError> {
        let (head, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let num = |s: &str, path: &str| parse_number(s).ok_or_else(|| violation(path, format!("bad number {s:?}")));
        let t = match head {
            "uniform" if rest.is_empty() => TSpec::Uniform,
            "beta" => {
                let (a, b) = rest
                    .split_once(':')
                    .ok_or_else(|| violation("law", "expected beta:a:b"))?;
                TSpec::Beta {
                    a: num(a, "a")?,
                    b: num(b, "b")?,
                }
            }
            "degenerate" => TSpec::Degenerate(num(rest, "rho")?),
            "atoms" => TSpec::Atoms(parse_pair_list(rest)?),
            _ => return Err(violation("law", format!("unknown law {spec:?}"))),
        };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<(), IoError> {
        match self {
            TSpec::Beta { a, b } => {
                if !(a.to_f64() > 0.0) {
                    return Err(violation("a", "shape must be positive"));
                }
                if !(b.to_f64() > 0.0) {
                    return Err(violation("b", "shape must be positive"));
                }
            }
            TSpec::Degenerate(rho) => {
                let r = rho.to_f64();
                if !(r > 0.0 && r < 1.0) {
                    return Err(violation("rho", "must lie in (0, 1)"));
                }
            }
            TSpec::Atoms(pairs) => {
                self.to_mixing().map_err(|e| violation("atoms", e))?;
                if let Some(exact) = pairs_exact(pairs) {
                    measure_from_pairs(exact).map_err(|e| violation("atoms", e))?;
                }
            }
            TSpec::CdfGrid { lambda, points } => {
                if !(lambda.to_f64() > 0.0) {
                    return Err(violation("lambda", "must be positive"));
                }
                for (i, w) in points.windows(2).enumerate() {
                    if !(w[0].0.to_f64() < w[1].0.to_f64()) || w[0].1.to_f64() > w[1].1.to_f64() {
                        return Err(violation(format!("grid[{}]", i + 1), "grid must increase"));
                    }
                }
            }
            TSpec::Uniform => {}
        }
        Ok(())
    }

    pub fn to_mixing(&self) -> crate::Result<MixingDistribution> {
        match self {
            TSpec::Beta { a, b } => MixingDistribution::beta(a.to_f64(), b.to_f64()),
            TSpec::Uniform => Ok(MixingDistribution::Uniform),
            TSpec::Degenerate(rho) => MixingDistribution::degenerate(rho.to_f64()),
            TSpec::Atoms(pairs) => MixingDistribution::atomic(measure_from_pairs(pairs_f64(pairs))?),
            TSpec::CdfGrid { .. } => Err(EosError::InvalidDistribution(
                "a tabulated law cannot be used as a generator".into(),
            )),
        }
    }

    /// The atomic law in exact arithmetic, when it is one.
    pub fn to_exact_measure(&self) -> Option<AtomicMeasure<BigRational>> {
        match self {
            TSpec::Degenerate(Number::Exact(r)) => AtomicMeasure::point(r.clone()).ok(),
            TSpec::Atoms(pairs) => measure_from_pairs(pairs_exact(pairs)?).ok(),
            _ => None,
        }
    }
}

impl fmt::Display for TSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TSpec::Beta { a, b } => write!(f, "beta:{a}:{b}"),
            TSpec::Uniform => f.write_str("uniform"),
            TSpec::Degenerate(rho) => write!(f, "degenerate:{rho}"),
            TSpec::Atoms(pairs) => write!(f, "atoms:{}", format_pair_list(pairs)),
            TSpec::CdfGrid { points, .. } => write!(f, "cdf-grid:{}", points.len()),
        }
    }
}

fn parse_pair_list(list: &str) -> Result<Vec<(Number, Number)>, IoError> {
    list.split(',')
        .enumerate()
        .map(|(i, item)| {
            let parsed = item
                .split_once(':')
                .and_then(|(a, b)| Some((parse_number(a)?, parse_number(b)?)));
            parsed.ok_or_else(|| violation(format!("atoms[{i}]"), format!("expected x:y, got {item:?}")))
        })
        .collect()
}

fn format_pair_list(pairs: &[(Number, Number)]) -> String {
    pairs
        .iter()
        .map(|(a, b)| format!("{a}:{b}"))
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Uniform,
    Exponential,
    ReflectedExponential,
    Logistic,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::Uniform => "uniform",
            Family::Exponential => "exp",
            Family::ReflectedExponential => "rexp",
            Family::Logistic => "logistic",
        }
    }

    fn from_tag(tag: &str) -> Option<Self> {
        [
            Family::Uniform,
            Family::Exponential,
            Family::ReflectedExponential,
            Family::Logistic,
        ]
        .into_iter()
        .find(|f| f.tag() == tag)
    }

    fn keys(self) -> (&'static str, &'static str) {
        match self {
            Family::Uniform => ("lo", "hi"),
            Family::Exponential | Family::ReflectedExponential => ("shift", "scale"),
            Family::Logistic => ("loc", "scale"),
        }
    }

    fn closed_form(self, p: f64, q: f64) -> ClosedForm {
        match self {
            Family::Uniform => ClosedForm::UniformInterval { lo: p, hi: q },
            Family::Exponential => ClosedForm::ShiftedExponential { shift: p, scale: q },
            Family::ReflectedExponential => ClosedForm::ReflectedExponential { shift: p, scale: q },
            Family::Logistic => ClosedForm::Logistic { loc: p, scale: q },
        }
    }
}

/// A parent distribution `X`.
#[derive(Debug, Clone, PartialEq)]
pub enum DistSpec {
    /// `(value, mass)` pairs.
    Atoms(Vec<(Number, Number)>),
    Quantile { family: Family, params: (Number, Number) },
    /// `(t, F⁻¹(t))` on a grid.
    QuantileGrid(Vec<(Number, Number)>),
}

impl DistSpec {
    /// `atoms:v:m,...`, `uniform:lo:hi`, `exp:shift:scale`, `rexp:shift:scale`
    /// or `logistic:loc:scale`.
    pub fn parse(spec: &str) -> Result<Self, IoError> {
        let (head, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let d = if head == "atoms" {
            DistSpec::Atoms(parse_pair_list(rest)?)
        } else {
            let family = Family::from_tag(head).ok_or_else(|| violation("dist", format!("unknown family {head:?}")))?;
            let (keys_a, keys_b) = family.keys();
            let (a, b) = rest
                .split_once(':')
                .ok_or_else(|| violation("dist", format!("expected {head}:{keys_a}:{keys_b}")))?;
            let a = parse_number(a).ok_or_else(|| violation(keys_a, format!("bad number {a:?}")))?;
            let b = parse_number(b).ok_or_else(|| violation(keys_b, format!("bad number {b:?}")))?;
            DistSpec::Quantile { family, params: (a, b) }
        };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<(), IoError> {
        match self {
            DistSpec::Atoms(pairs) => {
                if let Some(exact) = pairs_exact(pairs) {
                    DiscreteDistribution::new(exact).map_err(|e| violation("atoms", e))?;
                } else {
                    DiscreteDistribution::new(pairs_f64(pairs)).map_err(|e| violation("atoms", e))?;
                }
            }
            DistSpec::Quantile { .. } => {
                self.to_quantile().map_err(|e| violation("dist", e))?;
            }
            DistSpec::QuantileGrid(points) => {
                for (i, w) in points.windows(2).enumerate() {
                    if !(w[0].0.to_f64() < w[1].0.to_f64()) || w[0].1.to_f64() > w[1].1.to_f64() {
                        return Err(violation(format!("grid[{}]", i + 1), "grid must increase"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_quantile(&self) -> crate::Result<QuantileFunction> {
        match self {
            DistSpec::Atoms(pairs) => Ok(QuantileFunction::Discrete(DiscreteDistribution::new(pairs_f64(pairs))?)),
            DistSpec::Quantile { family, params } => {
                QuantileFunction::closed_form(family.closed_form(params.0.to_f64(), params.1.to_f64()))
            }
            DistSpec::QuantileGrid(_) => Err(EosError::InvalidDistribution(
                "a tabulated quantile cannot be evaluated off its grid".into(),
            )),
        }
    }

    pub fn to_exact_discrete(&self) -> Option<DiscreteDistribution<BigRational>> {
        match self {
            DistSpec::Atoms(pairs) => DiscreteDistribution::new(pairs_exact(pairs)?).ok(),
            _ => None,
        }
    }
}

impl fmt::Display for DistSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistSpec::Atoms(pairs) => write!(f, "atoms:{}", format_pair_list(pairs)),
            DistSpec::Quantile { family, params } => write!(f, "{}:{}:{}", family.tag(), params.0, params.1),
            DistSpec::QuantileGrid(points) => write!(f, "quantile-grid:{}", points.len()),
        }
    }
}

/// Outcome of checking the max-moment spacing identity for a generator.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub law: String,
    pub k_max: usize,
    pub tolerance: Number,
    pub max_moments: Vec<Number>,
    pub deviations: Vec<Number>,
    pub max_deviation: Number,
    pub mean_deviation: Number,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Beta(Vec<Number>),
    Nu { n: usize, lambda: Number, values: Vec<Number> },
    P(Vec<Number>),
    U(Vec<Number>),
    Measure(Vec<(Number, Number)>),
    TSpec(TSpec),
    Dist(DistSpec),
    Verdict(FeasibilityVerdict),
    Report(Report),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Beta(_) => "beta",
            Document::Nu { .. } => "nu",
            Document::P(_) => "p",
            Document::U(_) => "u",
            Document::Measure(_) => "measure",
            Document::TSpec(_) => "tspec",
            Document::Dist(_) => "dist",
            Document::Verdict(_) => "verdict",
            Document::Report(_) => "report",
        }
    }

    pub fn emit(&self, format: Format) -> Result<String, IoError> {
        match format {
            Format::Json => Ok(self.to_json().to_string()),
            Format::Csv => self.to_csv(),
        }
    }

    fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("kind".into(), self.kind().into());
        obj.insert("version".into(), SCHEMA_VERSION.into());
        match self {
            Document::Beta(v) | Document::P(v) | Document::U(v) => {
                obj.insert("values".into(), num_array(v));
            }
            Document::Nu { n, lambda, values } => {
                obj.insert("n".into(), (*n).into());
                obj.insert("lambda".into(), num(lambda));
                obj.insert("values".into(), num_array(values));
            }
            Document::Measure(atoms) => {
                obj.insert("atoms".into(), pair_array(atoms, "t", "w"));
            }
            Document::TSpec(t) => match t {
                TSpec::Beta { a, b } => {
                    obj.insert("law".into(), "beta".into());
                    obj.insert("a".into(), num(a));
                    obj.insert("b".into(), num(b));
                }
                TSpec::Uniform => {
                    obj.insert("law".into(), "uniform".into());
                }
                TSpec::Degenerate(rho) => {
                    obj.insert("law".into(), "degenerate".into());
                    obj.insert("rho".into(), num(rho));
                }
                TSpec::Atoms(atoms) => {
                    obj.insert("law".into(), "atoms".into());
                    obj.insert("atoms".into(), pair_array(atoms, "t", "w"));
                }
                TSpec::CdfGrid { lambda, points } => {
                    obj.insert("law".into(), "cdf_grid".into());
                    obj.insert("lambda".into(), num(lambda));
                    obj.insert("grid".into(), pair_array(points, "t", "F"));
                }
            },
            Document::Dist(d) => match d {
                DistSpec::Atoms(atoms) => {
                    obj.insert("form".into(), "atoms".into());
                    obj.insert("atoms".into(), pair_array(atoms, "value", "mass"));
                }
                DistSpec::Quantile { family, params } => {
                    let (ka, kb) = family.keys();
                    obj.insert("form".into(), "quantile".into());
                    obj.insert("family".into(), family.tag().into());
                    obj.insert(ka.into(), num(&params.0));
                    obj.insert(kb.into(), num(&params.1));
                }
                DistSpec::QuantileGrid(points) => {
                    obj.insert("form".into(), "quantile_grid".into());
                    obj.insert("grid".into(), pair_array(points, "t", "x"));
                }
            },
            Document::Verdict(v) => {
                let status = match v.status {
                    FeasibilityStatus::Feasible => "Feasible",
                    FeasibilityStatus::Infeasible => "Infeasible",
                };
                obj.insert("status".into(), status.into());
                obj.insert("reason".into(), v.reason.name().into());
                obj.insert("exact".into(), v.exact.into());
                if let Some(eps) = &v.epsilon_witness {
                    obj.insert("epsilon_witness".into(), num(eps));
                }
                if let Some(c) = &v.certificate {
                    let pairs = match c {
                        Certificate::Exact(m) => measure_pairs(m),
                        Certificate::Approx(m) => measure_pairs(m),
                    };
                    obj.insert("certificate".into(), pair_array(&pairs, "t", "w"));
                }
                if let Some(d) = v.boundary_distance {
                    obj.insert("boundary_distance".into(), num(&Number::Float(d)));
                }
            }
            Document::Report(r) => {
                obj.insert("law".into(), r.law.clone().into());
                obj.insert("k_max".into(), r.k_max.into());
                obj.insert("tolerance".into(), num(&r.tolerance));
                obj.insert("max_moments".into(), num_array(&r.max_moments));
                obj.insert("deviations".into(), num_array(&r.deviations));
                obj.insert("max_deviation".into(), num(&r.max_deviation));
                obj.insert("mean_deviation".into(), num(&r.mean_deviation));
                obj.insert("passed".into(), r.passed.into());
            }
        }
        Value::Object(obj)
    }

    fn to_csv(&self) -> Result<String, IoError> {
        let (header, rows): (&str, Vec<(String, String)>) = match self {
            Document::Beta(v) => ("j,beta", indexed(v, 1)),
            Document::Nu { values, .. } => ("k,nu", indexed(values, 0)),
            Document::P(v) => ("k,p", indexed(v, 0)),
            Document::U(v) => ("k,u", indexed(v, 0)),
            Document::Measure(atoms) | Document::TSpec(TSpec::Atoms(atoms)) => ("t,w", stringify(atoms)),
            Document::TSpec(TSpec::CdfGrid { points, .. }) => ("t,F", stringify(points)),
            Document::Dist(DistSpec::Atoms(atoms)) => ("value,mass", stringify(atoms)),
            Document::Dist(DistSpec::QuantileGrid(points)) => ("t,x", stringify(points)),
            _ => {
                return Err(IoError::UnsupportedFormat {
                    kind: self.kind(),
                    format: Format::Csv,
                })
            }
        };
        let mut out = String::from(header);
        for (a, b) in rows {
            out.push('\n');
            out.push_str(&a);
            out.push(',');
            out.push_str(&b);
        }
        Ok(out)
    }
}

fn indexed(values: &[Number], start: usize) -> Vec<(String, String)> {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| ((i + start).to_string(), v.to_string()))
        .collect()
}

fn stringify(pairs: &[(Number, Number)]) -> Vec<(String, String)> {
    pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

fn num(n: &Number) -> Value {
    Value::String(n.to_string())
}

fn num_array(values: &[Number]) -> Value {
    Value::Array(values.iter().map(num).collect())
}

fn pair_array(pairs: &[(Number, Number)], ka: &str, kb: &str) -> Value {
    Value::Array(
        pairs
            .iter()
            .map(|(a, b)| {
                let mut m = Map::new();
                m.insert(ka.into(), num(a));
                m.insert(kb.into(), num(b));
                Value::Object(m)
            })
            .collect(),
    )
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json().to_string())
    }
}

/// Parses raw bytes, reporting invalid UTF-8 as a syntax error.
pub fn parse_bytes(bytes: &[u8]) -> Result<Document, IoError> {
    match std::str::from_utf8(bytes) {
        Ok(text) => parse(text),
        Err(e) => {
            let valid = &bytes[..e.valid_up_to()];
            let line = valid.iter().filter(|&&b| b == b'\n').count() + 1;
            let column = valid.iter().rev().take_while(|&&b| b != b'\n').count() + 1;
            Err(IoError::Syntax {
                line,
                column,
                message: "invalid UTF-8".into(),
            })
        }
    }
}

pub fn parse(text: &str) -> Result<Document, IoError> {
    let value: Value = serde_json::from_str(text).map_err(|e| IoError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let obj = value.as_object().ok_or_else(|| violation("$", "expected an object"))?;
    match obj.get("version") {
        Some(Value::String(v)) if v == SCHEMA_VERSION => {}
        Some(other) => return Err(IoError::SchemaVersionMismatch { found: other.to_string() }),
        None => {
            return Err(IoError::SchemaVersionMismatch {
                found: "nothing".into(),
            })
        }
    }
    let kind = get_str(obj, "kind")?;
    let doc = match kind {
        "beta" => {
            let values = get_numbers(obj, "values")?;
            check_beta(&values)?;
            Document::Beta(values)
        }
        "nu" => {
            let values = get_numbers(obj, "values")?;
            let n = get_usize(obj, "n")?;
            if values.len() + 1 != n {
                return Err(violation("values", format!("expected {} entries for n = {n}", n.saturating_sub(1))));
            }
            let lambda = get_number(obj, "lambda")?;
            if !(lambda.to_f64() > 0.0) {
                return Err(violation("lambda", "must be positive"));
            }
            Document::Nu { n, lambda, values }
        }
        "p" => {
            let values = get_numbers(obj, "values")?;
            check_p(&values)?;
            Document::P(values)
        }
        "u" => {
            let values = get_numbers(obj, "values")?;
            check_u(&values)?;
            Document::U(values)
        }
        "measure" => {
            let atoms = get_pairs(obj, "atoms", "t", "w")?;
            check_measure(&atoms)?;
            Document::Measure(atoms)
        }
        "tspec" => {
            let t = match get_str(obj, "law")? {
                "beta" => TSpec::Beta {
                    a: get_number(obj, "a")?,
                    b: get_number(obj, "b")?,
                },
                "uniform" => TSpec::Uniform,
                "degenerate" => TSpec::Degenerate(get_number(obj, "rho")?),
                "atoms" => TSpec::Atoms(get_pairs(obj, "atoms", "t", "w")?),
                "cdf_grid" => TSpec::CdfGrid {
                    lambda: get_number(obj, "lambda")?,
                    points: get_pairs(obj, "grid", "t", "F")?,
                },
                other => return Err(violation("law", format!("unknown law {other:?}"))),
            };
            t.validate()?;
            Document::TSpec(t)
        }
        "dist" => {
            let d = match get_str(obj, "form")? {
                "atoms" => DistSpec::Atoms(get_pairs(obj, "atoms", "value", "mass")?),
                "quantile" => {
                    let tag = get_str(obj, "family")?;
                    let family = Family::from_tag(tag).ok_or_else(|| violation("family", format!("unknown family {tag:?}")))?;
                    let (ka, kb) = family.keys();
                    DistSpec::Quantile {
                        family,
                        params: (get_number(obj, ka)?, get_number(obj, kb)?),
                    }
                }
                "quantile_grid" => DistSpec::QuantileGrid(get_pairs(obj, "grid", "t", "x")?),
                other => return Err(violation("form", format!("unknown form {other:?}"))),
            };
            d.validate()?;
            Document::Dist(d)
        }
        "verdict" => Document::Verdict(parse_verdict(obj)?),
        "report" => Document::Report(Report {
            law: get_str(obj, "law")?.to_string(),
            k_max: get_usize(obj, "k_max")?,
            tolerance: get_number(obj, "tolerance")?,
            max_moments: get_numbers(obj, "max_moments")?,
            deviations: get_numbers(obj, "deviations")?,
            max_deviation: get_number(obj, "max_deviation")?,
            mean_deviation: get_number(obj, "mean_deviation")?,
            passed: get_bool(obj, "passed")?,
        }),
        other => return Err(violation("kind", format!("unknown kind {other:?}"))),
    };
    Ok(doc)
}

fn parse_verdict(obj: &Map<String, Value>) -> Result<FeasibilityVerdict, IoError> {
    let status = match get_str(obj, "status")? {
        "Feasible" => FeasibilityStatus::Feasible,
        "Infeasible" => FeasibilityStatus::Infeasible,
        other => return Err(violation("status", format!("unknown status {other:?}"))),
    };
    let reason_name = get_str(obj, "reason")?;
    let reason = Reason::from_name(reason_name).ok_or_else(|| violation("reason", format!("unknown reason {reason_name:?}")))?;
    let exact = get_bool(obj, "exact")?;
    let epsilon_witness = match obj.get("epsilon_witness") {
        Some(_) => Some(get_number(obj, "epsilon_witness")?),
        None => None,
    };
    let certificate = match obj.get("certificate") {
        Some(_) => {
            let pairs = get_pairs(obj, "certificate", "t", "w")?;
            let cert = match pairs_exact(&pairs) {
                Some(exact) => Certificate::Exact(measure_from_pairs(exact).map_err(|e| violation("certificate", e))?),
                None => Certificate::Approx(measure_from_pairs(pairs_f64(&pairs)).map_err(|e| violation("certificate", e))?),
            };
            Some(cert)
        }
        None => None,
    };
    let boundary_distance = match obj.get("boundary_distance") {
        Some(_) => Some(get_number(obj, "boundary_distance")?.to_f64()),
        None => None,
    };
    Ok(FeasibilityVerdict {
        status,
        reason,
        epsilon_witness,
        certificate,
        exact,
        boundary_distance,
    })
}

fn sequence_path(e: &EosError, field: &str) -> String {
    match e {
        EosError::InvalidSequence { index, .. } | EosError::NegativeMass { index, .. } => format!("{field}[{index}]"),
        _ => field.to_string(),
    }
}

fn check_beta(values: &[Number]) -> Result<(), IoError> {
    let r = match exact_numbers(values) {
        Some(v) => BetaSequence::new(v).map(|_| ()),
        None => BetaSequence::new(float_numbers(values)).map(|_| ()),
    };
    r.map_err(|e| violation(sequence_path(&e, "values"), e))
}

fn check_p(values: &[Number]) -> Result<(), IoError> {
    let r = match exact_numbers(values) {
        Some(v) => ProbabilityVector::new(v).map(|_| ()),
        None => ProbabilityVector::new(float_numbers(values)).map(|_| ()),
    };
    r.map_err(|e| violation(sequence_path(&e, "values"), e))
}

fn check_u(values: &[Number]) -> Result<(), IoError> {
    let r = match exact_numbers(values) {
        Some(v) => UVector::new(v).map(|_| ()),
        None => UVector::new(float_numbers(values)).map(|_| ()),
    };
    r.map_err(|e| violation("values[0]", e))?;
    crate::scalar::check_size(values.len().saturating_sub(1)).map_err(|e| violation("values", e))
}

fn check_measure(atoms: &[(Number, Number)]) -> Result<(), IoError> {
    let r = match pairs_exact(atoms) {
        Some(v) => measure_from_pairs(v).map(|_| ()),
        None => measure_from_pairs(pairs_f64(atoms)).map(|_| ()),
    };
    r.map_err(|e| violation("atoms", e))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, IoError> {
    obj.get(key).ok_or_else(|| violation(key, "missing field"))
}

fn get_str<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a str, IoError> {
    field(obj, key)?
        .as_str()
        .ok_or_else(|| violation(key, "expected a string"))
}

fn get_bool(obj: &Map<String, Value>, key: &str) -> Result<bool, IoError> {
    field(obj, key)?
        .as_bool()
        .ok_or_else(|| violation(key, "expected a boolean"))
}

fn get_usize(obj: &Map<String, Value>, key: &str) -> Result<usize, IoError> {
    field(obj, key)?
        .as_u64()
        .and_then(|v| usize::try_from(v).ok())
        .ok_or_else(|| violation(key, "expected a non-negative integer"))
}

fn value_number(v: &Value, path: &str) -> Result<Number, IoError> {
    match v {
        Value::String(s) => parse_number(s).ok_or_else(|| violation(path, format!("bad number {s:?}"))),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Number::Exact(BigRational::from_integer(i.into())))
            } else if let Some(u) = n.as_u64() {
                Ok(Number::Exact(BigRational::from_integer(u.into())))
            } else {
                n.as_f64()
                    .filter(|f| f.is_finite())
                    .map(Number::Float)
                    .ok_or_else(|| violation(path, "bad number"))
            }
        }
        _ => Err(violation(path, "expected a number string")),
    }
}

fn get_number(obj: &Map<String, Value>, key: &str) -> Result<Number, IoError> {
    value_number(field(obj, key)?, key)
}

fn get_numbers(obj: &Map<String, Value>, key: &str) -> Result<Vec<Number>, IoError> {
    field(obj, key)?
        .as_array()
        .ok_or_else(|| violation(key, "expected an array"))?
        .iter()
        .enumerate()
        .map(|(i, v)| value_number(v, &format!("{key}[{i}]")))
        .collect()
}

fn get_pairs(obj: &Map<String, Value>, key: &str, ka: &str, kb: &str) -> Result<Vec<(Number, Number)>, IoError> {
    field(obj, key)?
        .as_array()
        .ok_or_else(|| violation(key, "expected an array"))?
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let path = format!("{key}[{i}]");
            let o = v.as_object().ok_or_else(|| violation(&path, "expected an object"))?;
            let a = o.get(ka).ok_or_else(|| violation(format!("{path}.{ka}"), "missing field"))?;
            let b = o.get(kb).ok_or_else(|| violation(format!("{path}.{kb}"), "missing field"))?;
            Ok((value_number(a, &format!("{path}.{ka}"))?, value_number(b, &format!("{path}.{kb}"))?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feasibility::check_eos;

    fn q(n: i64, d: i64) -> Number {
        Number::Exact(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn parses_beta() {
        let d = parse(r#"{"kind":"beta","version":"eos/1","values":["0","2","5","7"]}"#).unwrap();
        assert_eq!(d, Document::Beta(vec![q(0, 1), q(2, 1), q(5, 1), q(7, 1)]));
    }

    #[test]
    fn parses_tspec() {
        let d = parse(r#"{"kind":"tspec","version":"eos/1","law":"beta","a":"2","b":"2"}"#).unwrap();
        assert_eq!(d, Document::TSpec(TSpec::Beta { a: q(2, 1), b: q(2, 1) }));
    }

    #[test]
    fn tie_is_located() {
        let e = parse(r#"{"kind":"beta","version":"eos/1","values":["0","2","2","7"]}"#).unwrap_err();
        assert!(matches!(e, IoError::InvariantViolation { ref path, .. } if path == "values[2]"), "{e}");
    }

    #[test]
    fn version_and_syntax() {
        assert!(matches!(
            parse(r#"{"kind":"beta","version":"eos/2","values":[]}"#),
            Err(IoError::SchemaVersionMismatch { .. })
        ));
        assert!(matches!(
            parse("{\n  \"kind\": ,"),
            Err(IoError::Syntax { line: 2, .. })
        ));
        assert!(matches!(parse_bytes(&[b'{', 0xff]), Err(IoError::Syntax { line: 1, column: 2, .. })));
    }

    #[test]
    fn verdict_json() {
        let beta = BetaSequence::new(vec![0, 2, 5, 7].into_iter().map(|v| BigRational::from_integer(v.into())).collect()).unwrap();
        let v = check_eos(&beta, 0.0).unwrap();
        let text = Document::Verdict(v).emit(Format::Json).unwrap();
        assert!(text.contains(r#""epsilon_witness":"1/4""#), "{text}");
        assert_eq!(parse(&text).unwrap().emit(Format::Json).unwrap(), text);
    }

    #[test]
    fn nu_csv() {
        let d = Document::Nu {
            n: 4,
            lambda: q(1, 1),
            values: vec![q(1, 1), q(1, 2), q(1, 4)],
        };
        assert_eq!(d.emit(Format::Csv).unwrap(), "k,nu\n0,1\n1,1/2\n2,1/4");
    }

    #[test]
    fn csv_only_for_tables() {
        let d = Document::TSpec(TSpec::Uniform);
        assert!(matches!(d.emit(Format::Csv), Err(IoError::UnsupportedFormat { .. })));
    }

    #[test]
    fn floats_round_trip() {
        let d = Document::Measure(vec![(Number::Float(0.1), Number::Float(1.0))]);
        let text = d.emit(Format::Json).unwrap();
        assert!(text.contains("1.0000000000000001e-1"), "{text}");
        assert_eq!(parse(&text).unwrap(), d);
    }

    #[test]
    fn specs_parse() {
        assert_eq!(TSpec::parse("degenerate:1/2").unwrap(), TSpec::Degenerate(q(1, 2)));
        assert!(TSpec::parse("degenerate:1").is_err());
        assert_eq!(TSpec::parse("atoms:1/4:1/2,3/4:1/2").unwrap().to_string(), "atoms:1/4:1/2,3/4:1/2");
        assert!(DistSpec::parse("atoms:1:1/2,0:1/2").is_err());
        let d = DistSpec::parse("uniform:-3:3").unwrap();
        assert_eq!(d.to_string(), "uniform:-3:3");
        assert!(DistSpec::parse("exp:0:-1").is_err());
    }
}
