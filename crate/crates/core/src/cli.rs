//! Command-line front end: economy files, solve/certify reports, parameter
//! sweeps to CSV and built-in reproduction scenarios.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 when the
//! polynomial route and the oracle disagree or a reproduction check fails.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certify::{
    certify, certify_with, classify_crra_symmetric, cubic_coefficients, direct_count, Certificate, CrraClassification,
    CrraSymmetricSpec, Verdict,
};
use crate::error::{Error, Result};
use crate::model::{ConsumerType, Economy, HaraParams};
use crate::num::{f64_to_rational, fmt_rational, int, parse_rational, ratio, rational_to_f64, Rational, Scalar, Value};
use crate::oracle::{agree, scan, scan_range_from_env, Agreement, OracleResult, DEFAULT_POINTS};
use crate::polynomial::SparsePolynomial;
use crate::reduction::{build_reduced_z, RationalExponent};
use crate::roots::{cubic_discriminant, isolate_positive_roots, RootReport, DEFAULT_ROOT_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DISAGREE: i32 = 2;

/// Relative tolerance for matching polynomial prices with oracle prices.
pub const AGREEMENT_RTOL: f64 = 1e-9;
/// Hypotheses whose slack is below this are flagged in reports.
pub const MARGIN_WARNING: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(
    name = "hara-eq",
    version,
    about = "Count and certify equilibria of HARA exchange economies"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find every equilibrium price and cross-check it with the oracle.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Rational)]
        mode: Mode,
        /// Also write a JSON record here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the strongest uniqueness certificate.
    Certify {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify a one- or two-parameter grid of economies into CSV.
    Sweep(SweepArgs),
    /// Run a built-in reference scenario and print PASS/FAIL lines.
    Reproduce {
        #[arg(value_enum)]
        scenario: Scenario,
        /// Number of types for thm1-boundary (default: every c in 2..=6).
        #[arg(long)]
        c: Option<usize>,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        e: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Rational,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scenario {
    TodaWalsh,
    Thm1Boundary,
    Thm3Critical,
    CriticalLocus,
    All,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// alpha, e, gamma, b or beta:<i> (1-based type index).
    #[arg(long)]
    pub param: String,
    #[arg(long)]
    pub from: String,
    #[arg(long)]
    pub to: String,
    #[arg(long)]
    pub steps: usize,
    /// Second axis as `name:from:to:steps`.
    #[arg(long)]
    pub grid2d: Option<String>,
    /// Base economy; defaults to the symmetric CRRA economy alpha=1/7, e=1/49.
    #[arg(long)]
    pub economy: Option<PathBuf>,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

// ---------------------------------------------------------------- files

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Num {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Num {
    fn to_rational(&self) -> Result<Rational> {
        match self {
            Num::Int(i) => Ok(int(*i)),
            Num::Float(x) => f64_to_rational(*x),
            Num::Text(s) => parse_rational(s),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TypeEntry {
    e: Num,
    f: Num,
    beta: Option<Num>,
    sigma: Option<Num>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SymmetricEntry {
    alpha: Num,
    e: Num,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EconomyFile {
    a: Option<Num>,
    b: Option<Num>,
    gamma: Num,
    #[serde(default)]
    types: Vec<TypeEntry>,
    crra_symmetric: Option<SymmetricEntry>,
}

/// An economy read from a file, remembering the symmetric CRRA shorthand.
#[derive(Debug, Clone)]
pub struct LoadedEconomy {
    pub economy: Economy,
    pub symmetric: Option<CrraSymmetricSpec>,
}

/// Parses the TOML economy format. Numbers may be integers, decimals or
/// `"p/q"` strings; all are kept as exact rationals.
pub fn parse_economy(text: &str) -> Result<LoadedEconomy> {
    let file: EconomyFile = toml::from_str(text).map_err(|e| Error::ConfigParse(e.to_string()))?;
    let gamma = file.gamma.to_rational()?;
    if let Some(sym) = &file.crra_symmetric {
        if !file.types.is_empty() || file.a.is_some() || file.b.is_some() {
            return Err(Error::ConfigParse(
                "crra_symmetric cannot be combined with a, b or types".into(),
            ));
        }
        let spec = CrraSymmetricSpec::new(sym.alpha.to_rational()?, sym.e.to_rational()?, gamma)?;
        return Ok(LoadedEconomy {
            economy: spec.economy()?,
            symmetric: Some(spec),
        });
    }
    let a = file.a.as_ref().map_or(Ok(int(1)), Num::to_rational)?;
    let b = file.b.as_ref().map_or(Ok(int(0)), Num::to_rational)?;
    let hara = HaraParams::new(Value::new(a), Value::new(b), Value::new(gamma))?;
    let types = file
        .types
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let e = Value::new(t.e.to_rational()?);
            let f = Value::new(t.f.to_rational()?);
            match (&t.beta, &t.sigma) {
                (Some(beta), None) => ConsumerType::new(e, f, Value::new(beta.to_rational()?), &hara),
                (None, Some(sigma)) => ConsumerType::with_sigma(e, f, Value::new(sigma.to_rational()?), &hara),
                _ => Err(Error::ConfigParse(format!(
                    "type {} needs exactly one of beta, sigma",
                    i + 1
                ))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LoadedEconomy {
        economy: Economy::new(hara, types)?,
        symmetric: None,
    })
}

pub fn load_economy(path: &Path) -> Result<LoadedEconomy> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::ConfigParse(format!("{}: {e}", path.display())))?;
    parse_economy(&text)
}

// ---------------------------------------------------------------- solve

#[derive(Debug, Clone, Serialize)]
pub struct EconomySummary {
    pub c: usize,
    pub a: String,
    pub b: String,
    pub gamma: String,
    pub beta: Vec<String>,
}

impl EconomySummary {
    fn of(econ: &Economy) -> Self {
        EconomySummary {
            c: econ.c(),
            a: fmt_rational(&econ.hara.a.exact),
            b: fmt_rational(&econ.hara.b.exact),
            gamma: fmt_rational(&econ.hara.gamma.exact),
            beta: econ
                .types
                .iter()
                .map(|t| {
                    if t.beta.is_exact {
                        fmt_rational(&t.beta.exact)
                    } else {
                        t.beta.float.to_string()
                    }
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub economy: EconomySummary,
    pub mode: Mode,
    pub epsilon: RationalExponent,
    pub epsilon_exact: bool,
    pub polynomial: String,
    pub roots: RootReport,
    pub prices: Vec<f64>,
    pub oracle: OracleResult,
    pub agreement: Agreement,
    pub certificate: Certificate,
    pub symmetric: Option<CrraClassification>,
    pub warnings: Vec<String>,
}

impl SolveReport {
    pub fn exit_code(&self) -> i32 {
        if self.agreement.agree {
            EXIT_OK
        } else {
            EXIT_DISAGREE
        }
    }
}

fn margin_warnings(cert: &Certificate, out: &mut Vec<String>) {
    for h in &cert.hypotheses {
        if h.margin.abs() < MARGIN_WARNING {
            out.push(format!(
                "{}: hypothesis '{}' has margin {:e}",
                cert.rule, h.name, h.margin
            ));
        }
    }
    for s in &cert.supporting {
        margin_warnings(s, out);
    }
}

pub fn solve(loaded: &LoadedEconomy, mode: Mode, scan_range: (f64, f64)) -> Result<SolveReport> {
    let econ = &loaded.economy;
    let count = direct_count(econ)?;
    let certificate = certify_with(econ, Some(&count))?;
    let epsilon = count.epsilon;
    let epsilon_exact = count.epsilon_exact;
    let (polynomial, roots) = match mode {
        Mode::Rational => (count.polynomial.to_string(), count.report),
        Mode::Float => {
            let poly: SparsePolynomial<f64> = build_reduced_z(econ, &epsilon)?;
            let report = isolate_positive_roots(&poly, DEFAULT_ROOT_TOL)?.with_price_exponent(epsilon.n());
            (poly.to_string(), report)
        }
    };
    let oracle = scan(econ, scan_range.0, scan_range.1, DEFAULT_POINTS)?;
    let agreement = agree(&roots, &oracle, AGREEMENT_RTOL);

    let mut warnings = Vec::new();
    margin_warnings(&certificate, &mut warnings);
    if !epsilon_exact {
        warnings.push(format!(
            "1/gamma = {} replaced by {epsilon}; prices are approximate",
            fmt_rational(&econ.hara.epsilon.exact)
        ));
    }
    if !oracle.residuals_ok {
        warnings.push("oracle residual above tolerance".into());
    }
    if oracle.count_changed {
        warnings.push("oracle bracket count changed under grid refinement".into());
    }
    let symmetric = match &loaded.symmetric {
        Some(spec) if spec.gamma == int(3) => {
            let class = classify_crra_symmetric(spec)?;
            let rule_value = rational_to_f64(&spec.sign_rule_value());
            if rule_value.abs() < MARGIN_WARNING {
                warnings.push(format!("(alpha-3e)(2alpha-1) = {rule_value:e} is close to zero"));
            }
            let third = rational_to_f64(&(&class.delta - ratio(1, 3)));
            if third.abs() < MARGIN_WARNING {
                warnings.push(format!("delta - 1/3 = {third:e}; close to a critical equilibrium"));
            }
            if !class.consistent {
                warnings.push(format!(
                    "sign rule says {} but the discriminant says {}",
                    class.sign_rule, class.by_discriminant
                ));
            }
            Some(class)
        }
        _ => None,
    };
    Ok(SolveReport {
        economy: EconomySummary::of(econ),
        mode,
        epsilon,
        epsilon_exact,
        polynomial,
        prices: roots.prices(),
        roots,
        oracle,
        agreement,
        certificate,
        symmetric,
        warnings,
    })
}

fn write_certificate(out: &mut String, cert: &Certificate, indent: usize) {
    let pad = " ".repeat(indent);
    let _ = writeln!(out, "{pad}{} -> {}", cert.rule, cert.verdict);
    for h in &cert.hypotheses {
        let mark = if h.satisfied { "ok " } else { "NO " };
        let _ = writeln!(out, "{pad}  [{mark}] {} (margin {:.6e})", h.name, h.margin);
    }
    for n in &cert.notes {
        let _ = writeln!(out, "{pad}  note: {n}");
    }
    for s in &cert.supporting {
        write_certificate(out, s, indent + 4);
    }
}

pub fn format_solve(report: &SolveReport) -> String {
    let mut out = String::new();
    let e = &report.economy;
    let _ = writeln!(
        out,
        "economy: c = {}, a = {}, b = {}, gamma = {}",
        e.c, e.a, e.b, e.gamma
    );
    let _ = writeln!(
        out,
        "epsilon = {}{}, mode = {:?}",
        report.epsilon,
        if report.epsilon_exact { "" } else { " (approximation)" },
        report.mode
    );
    let _ = writeln!(out, "P(q) = {}", report.polynomial);
    let _ = writeln!(
        out,
        "descartes bound = {}, positive roots = {}{}",
        report.roots.descartes_bound,
        report.roots.roots.len(),
        if report.roots.certified {
            " (certified)"
        } else {
            " (not certified)"
        }
    );
    for r in &report.roots.roots {
        let exact_q = r
            .q_exact
            .as_ref()
            .map(|q| format!(" = {}", fmt_rational(q)))
            .unwrap_or_default();
        let exact_p = r
            .q_exact
            .as_ref()
            .map(|q| format!(" = {}", fmt_rational(&q.powu(report.roots.price_exponent))))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "  p = {:.15e}{exact_p}  q = {:.15e}{exact_q}  bracket [{:.6e}, {:.6e}]  {:?}",
            r.p, r.q, r.bracket.0, r.bracket.1, r.multiplicity
        );
    }
    let _ = writeln!(out, "oracle prices: {:?}", report.oracle.prices);
    let _ = writeln!(out, "agreement: {}", report.agreement.agree);
    for d in &report.agreement.discrepancies {
        let _ = writeln!(out, "  discrepancy: {d:?}");
    }
    let _ = writeln!(out, "certificate:");
    write_certificate(&mut out, &report.certificate, 2);
    if let Some(sym) = &report.symmetric {
        let _ = writeln!(
            out,
            "symmetric CRRA: delta = {}, discriminant = {}, sign rule {}, discriminant {}",
            fmt_rational(&sym.delta),
            fmt_rational(&sym.discriminant),
            sym.sign_rule,
            sym.by_discriminant
        );
    }
    for w in &report.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

// ---------------------------------------------------------------- sweep

#[derive(Debug, Clone, PartialEq)]
pub enum SweepParam {
    Alpha,
    E,
    Gamma,
    B,
    /// Zero-based type index.
    Beta(usize),
}

impl SweepParam {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "alpha" => Ok(SweepParam::Alpha),
            "e" => Ok(SweepParam::E),
            "gamma" => Ok(SweepParam::Gamma),
            "b" => Ok(SweepParam::B),
            _ => {
                let idx = s
                    .strip_prefix("beta:")
                    .and_then(|i| i.parse::<usize>().ok())
                    .filter(|&i| i >= 1)
                    .ok_or_else(|| Error::ConfigParse(format!("unknown sweep parameter {s:?}")))?;
                Ok(SweepParam::Beta(idx - 1))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            SweepParam::Alpha => "alpha".into(),
            SweepParam::E => "e".into(),
            SweepParam::Gamma => "gamma".into(),
            SweepParam::B => "b".into(),
            SweepParam::Beta(i) => format!("beta:{}", i + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub param: SweepParam,
    pub values: Vec<Rational>,
}

impl Axis {
    /// `steps` equally spaced exact values from `from` to `to` inclusive.
    pub fn new(param: SweepParam, from: &Rational, to: &Rational, steps: usize) -> Result<Self> {
        if steps < 2 {
            return Err(Error::ConfigParse("sweep needs at least 2 steps".into()));
        }
        let width = (to - from) / int(steps as i64 - 1);
        let values = (0..steps).map(|k| from + &width * int(k as i64)).collect();
        Ok(Axis { param, values })
    }

    fn parse_spec(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(':').collect();
        let (name, rest) = if parts.first() == Some(&"beta") && parts.len() == 5 {
            (format!("beta:{}", parts[1]), &parts[2..])
        } else if parts.len() == 4 {
            (parts[0].to_string(), &parts[1..])
        } else {
            return Err(Error::ConfigParse(format!(
                "grid2d must be name:from:to:steps, got {spec:?}"
            )));
        };
        let steps = rest[2]
            .parse()
            .map_err(|_| Error::ConfigParse(format!("bad step count {:?}", rest[2])))?;
        Axis::new(
            SweepParam::parse(&name)?,
            &parse_rational(rest[0])?,
            &parse_rational(rest[1])?,
            steps,
        )
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub axes: Vec<Axis>,
    pub base: LoadedEconomy,
}

impl SweepSpec {
    pub fn from_args(args: &SweepArgs) -> Result<Self> {
        let mut axes = vec![Axis::new(
            SweepParam::parse(&args.param)?,
            &parse_rational(&args.from)?,
            &parse_rational(&args.to)?,
            args.steps,
        )?];
        if let Some(g) = &args.grid2d {
            axes.push(Axis::parse_spec(g)?);
        }
        let base = match &args.economy {
            Some(path) => load_economy(path)?,
            None => default_symmetric()?,
        };
        Ok(SweepSpec { axes, base })
    }
}

fn default_symmetric() -> Result<LoadedEconomy> {
    let spec = CrraSymmetricSpec::new(ratio(1, 7), ratio(1, 49), int(3))?;
    Ok(LoadedEconomy {
        economy: spec.economy()?,
        symmetric: Some(spec),
    })
}

fn apply(base: &LoadedEconomy, param: &SweepParam, value: &Rational) -> Result<LoadedEconomy> {
    let econ = &base.economy;
    let with_spec = |spec: CrraSymmetricSpec| -> Result<LoadedEconomy> {
        Ok(LoadedEconomy {
            economy: spec.economy()?,
            symmetric: Some(spec),
        })
    };
    match param {
        SweepParam::Alpha | SweepParam::E => {
            let spec = base
                .symmetric
                .as_ref()
                .ok_or_else(|| Error::ConfigParse("alpha and e sweeps need a crra_symmetric economy".into()))?;
            let mut spec = spec.clone();
            if *param == SweepParam::Alpha {
                spec.alpha = value.clone();
            } else {
                spec.e = value.clone();
            }
            with_spec(CrraSymmetricSpec::new(spec.alpha, spec.e, spec.gamma)?)
        }
        SweepParam::Gamma => match &base.symmetric {
            Some(spec) => with_spec(CrraSymmetricSpec::new(
                spec.alpha.clone(),
                spec.e.clone(),
                value.clone(),
            )?),
            None => Ok(LoadedEconomy {
                economy: econ.with_gamma(Value::new(value.clone()))?,
                symmetric: None,
            }),
        },
        SweepParam::B => Ok(LoadedEconomy {
            economy: econ.with_b(Value::new(value.clone()))?,
            symmetric: None,
        }),
        SweepParam::Beta(i) => {
            if *i >= econ.c() {
                return Err(Error::ConfigParse(format!("economy has no type {}", i + 1)));
            }
            let types = econ
                .types
                .iter()
                .enumerate()
                .map(|(j, t)| {
                    let beta = if j == *i {
                        Value::new(value.clone())
                    } else {
                        t.beta.clone()
                    };
                    ConsumerType::new(t.e.clone(), t.f.clone(), beta, &econ.hara)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(LoadedEconomy {
                economy: Economy::new(econ.hara.clone(), types)?,
                symmetric: None,
            })
        }
    }
}

/// One classified grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub params: Vec<Rational>,
    pub rule: String,
    pub verdict: Verdict,
    pub root_count: Option<usize>,
    pub discriminant: Option<f64>,
    pub delta: Option<Rational>,
    pub sign_rule: Option<Verdict>,
    pub margins: String,
}

fn margin_list(cert: &Certificate) -> String {
    fn collect(c: &Certificate, parts: &mut Vec<String>) {
        for h in &c.hypotheses {
            parts.push(format!("{}|{}={:e}", c.rule, h.name, h.margin));
        }
        for s in &c.supporting {
            collect(s, parts);
        }
    }
    let mut parts = Vec::new();
    collect(cert, &mut parts);
    parts.join(";")
}

fn sweep_row(base: &LoadedEconomy, axes: &[Axis], point: &[usize]) -> Result<SweepRow> {
    let mut loaded = base.clone();
    let mut params = Vec::with_capacity(axes.len());
    for (axis, &k) in axes.iter().zip(point) {
        let value = &axis.values[k];
        loaded = apply(&loaded, &axis.param, value)?;
        params.push(value.clone());
    }
    let econ = &loaded.economy;
    let gamma = &econ.hara.gamma.exact;
    let direct = if *gamma > int(1) {
        Some(direct_count(econ)?)
    } else {
        None
    };
    let cert = certify_with(econ, direct.as_ref())?;
    let root_count = direct.as_ref().and_then(|d| d.report.exact_count);
    let discriminant = if econ.c() == 2 && *gamma == int(3) {
        let [a, b, c, d] = cubic_coefficients::<Rational>(econ)?;
        Some(rational_to_f64(&cubic_discriminant(&a, &b, &c, &d)?))
    } else {
        None
    };
    let (delta, sign_rule) = match &loaded.symmetric {
        Some(spec) if *gamma == int(3) => {
            let class = classify_crra_symmetric(spec)?;
            (Some(class.delta), Some(class.sign_rule))
        }
        _ => (None, None),
    };
    Ok(SweepRow {
        params,
        rule: cert.rule.to_string(),
        verdict: cert.verdict,
        root_count,
        discriminant,
        delta,
        sign_rule,
        margins: margin_list(&cert),
    })
}

/// Evaluates every grid point (in parallel) and returns rows in row-major
/// order of the axes.
pub fn sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    let mut points: Vec<Vec<usize>> = vec![vec![]];
    for axis in &spec.axes {
        points = points
            .into_iter()
            .flat_map(|p| {
                (0..axis.values.len()).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    points
        .par_iter()
        .map(|p| sweep_row(&spec.base, &spec.axes, p))
        .collect()
}

pub const CSV_SCHEMA: &str = "# schema=1";

pub fn write_sweep_csv<W: Write>(spec: &SweepSpec, rows: &[SweepRow], out: W) -> Result<()> {
    let io = |e: std::io::Error| Error::ConfigParse(e.to_string());
    let csv_err = |e: csv::Error| Error::ConfigParse(e.to_string());
    let mut out = out;
    writeln!(out, "{CSV_SCHEMA}").map_err(io)?;
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> = spec.axes.iter().map(|a| a.param.name()).collect();
    header.extend(
        [
            "rule",
            "verdict",
            "root_count",
            "discriminant",
            "delta",
            "sign_rule",
            "margins",
        ]
        .iter()
        .map(|s| s.to_string()),
    );
    w.write_record(&header).map_err(csv_err)?;
    for row in rows {
        let mut rec: Vec<String> = row.params.iter().map(fmt_rational).collect();
        rec.push(row.rule.clone());
        rec.push(row.verdict.to_string());
        rec.push(row.root_count.map(|c| c.to_string()).unwrap_or_default());
        rec.push(row.discriminant.map(|d| format!("{d:e}")).unwrap_or_default());
        rec.push(row.delta.as_ref().map(fmt_rational).unwrap_or_default());
        rec.push(row.sign_rule.map(|v| v.to_string()).unwrap_or_default());
        rec.push(row.margins.clone());
        w.write_record(&rec).map_err(csv_err)?;
    }
    w.flush().map_err(io)?;
    Ok(())
}

// ---------------------------------------------------------------- reproduce

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub scenario: String,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(scenario: &str, name: &str, pass: bool, detail: String) -> Check {
    Check {
        scenario: scenario.into(),
        name: name.into(),
        pass,
        detail,
    }
}

pub fn toda_walsh_economy() -> Economy {
    CrraSymmetricSpec::new(ratio(1, 7), ratio(1, 49), int(3))
        .and_then(|s| s.economy())
        .expect("valid constants")
}

pub fn reproduce_toda_walsh(scan_range: (f64, f64)) -> Result<Vec<Check>> {
    let s = "toda-walsh";
    let econ = toda_walsh_economy();
    let count = direct_count(&econ)?;
    let want_poly: SparsePolynomial<Rational> = "0:2/7 1:-1 2:1 3:-2/7".parse()?;
    let mut checks = vec![check(
        s,
        "P(q) = -(2/7)q^3 + q^2 - q + 2/7",
        count.polynomial == want_poly,
        count.polynomial.to_string(),
    )];
    let roots: Vec<Option<Rational>> = count.report.roots.iter().map(|r| r.q_exact.clone()).collect();
    let want_roots = vec![Some(ratio(1, 2)), Some(int(1)), Some(int(2))];
    let shown = roots
        .iter()
        .map(|q| q.as_ref().map_or("inexact".into(), fmt_rational))
        .collect::<Vec<_>>()
        .join(", ");
    checks.push(check(s, "roots {1/2, 1, 2} exact", roots == want_roots, shown));
    let n = count.epsilon.n();
    let prices: Vec<Option<Rational>> = roots
        .iter()
        .map(|q| q.as_ref().map(|q| num_traits::Pow::pow(q, n)))
        .collect();
    let want_prices = vec![Some(ratio(1, 8)), Some(int(1)), Some(int(8))];
    checks.push(check(
        s,
        "prices {1/8, 1, 8} exact (rational mode)",
        prices == want_prices,
        prices
            .iter()
            .map(|p| p.as_ref().map_or("inexact".into(), fmt_rational))
            .collect::<Vec<_>>()
            .join(", "),
    ));
    let poly_f: SparsePolynomial<f64> = build_reduced_z(&econ, &count.epsilon)?;
    let float = isolate_positive_roots(&poly_f, DEFAULT_ROOT_TOL)?.with_price_exponent(n);
    let fp = float.prices();
    let close = fp.len() == 3 && fp.iter().zip([0.125, 1.0, 8.0]).all(|(p, w)| (p - w).abs() <= 1e-12);
    checks.push(check(s, "prices within 1e-12 (float mode)", close, format!("{fp:?}")));
    let oracle = scan(&econ, scan_range.0, scan_range.1, DEFAULT_POINTS)?;
    let agreement = agree(&count.report, &oracle, AGREEMENT_RTOL);
    checks.push(check(
        s,
        "oracle agrees",
        agreement.agree,
        format!("{:?}", oracle.prices),
    ));
    let cert = certify(&econ)?;
    checks.push(check(
        s,
        "certificate ThreeEquilibria",
        cert.verdict == Verdict::ThreeEquilibria,
        format!("{} -> {}", cert.rule, cert.verdict),
    ));
    Ok(checks)
}

/// A deterministic `c`-type economy at the uniqueness boundary `gamma = c/(c-1)`.
pub fn boundary_economy(c: usize) -> Result<Economy> {
    let gamma = Rational::new((c as i64).into(), (c as i64 - 1).into());
    let hara = HaraParams::crra(Value::new(gamma))?;
    let types = (1..=c as i64)
        .map(|i| {
            ConsumerType::with_sigma(
                Value::new(ratio(i, c as i64)),
                Value::new(ratio(c as i64 + 1 - i, 2)),
                Value::new(ratio(i * i, 3)),
                &hara,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Economy::new(hara, types)
}

pub fn reproduce_thm1_boundary(c: Option<usize>, scan_range: (f64, f64)) -> Result<Vec<Check>> {
    let s = "thm1-boundary";
    let cs: Vec<usize> = match c {
        Some(c) if c >= 2 => vec![c],
        Some(c) => return Err(Error::InvalidEconomy(format!("need c >= 2, got {c}"))),
        None => (2..=6).collect(),
    };
    let mut checks = Vec::new();
    for c in cs {
        let econ = boundary_economy(c)?;
        let cert = certify(&econ)?;
        let count = direct_count(&econ)?;
        let oracle = scan(&econ, scan_range.0, scan_range.1, DEFAULT_POINTS)?;
        let agreement = agree(&count.report, &oracle, AGREEMENT_RTOL);
        let pass = cert.verdict == Verdict::Unique
            && count.report.exact_count == Some(1)
            && oracle.prices.len() == 1
            && agreement.agree;
        checks.push(check(
            s,
            &format!("c = {c}, gamma = {c}/{}: single equilibrium", c - 1),
            pass,
            format!(
                "{} -> {}, sturm count {:?}, oracle {:?}",
                cert.rule, cert.verdict, count.report.exact_count, oracle.prices
            ),
        ));
    }
    Ok(checks)
}

/// Checks the printed classification on the lines `alpha = 3e` and `alpha = 1/2`.
pub fn reproduce_thm3_critical(alpha: &Rational, e: &Rational) -> Result<Vec<Check>> {
    let s = "thm3-critical";
    let spec = CrraSymmetricSpec::new(alpha.clone(), e.clone(), int(3))?;
    let class = classify_crra_symmetric(&spec)?;
    let count = direct_count(&spec.economy()?)?;
    let on_line = spec.sign_rule_value().is_zero();
    Ok(vec![
        check(
            s,
            "sign rule places the point on a critical line",
            on_line && class.sign_rule == Verdict::Critical,
            format!("(alpha-3e)(2alpha-1) = {}", fmt_rational(&spec.sign_rule_value())),
        ),
        check(
            s,
            "discriminant is exactly zero",
            class.discriminant.is_zero(),
            format!(
                "delta = {}, discriminant = {}",
                fmt_rational(&class.delta),
                fmt_rational(&class.discriminant)
            ),
        ),
        check(
            s,
            "Sturm isolation finds a multiple root",
            count.report.has_multiple_root(),
            format!(
                "{} roots, classification {}",
                count.report.roots.len(),
                count.report.classification
            ),
        ),
    ])
}

/// The locus where the cubic really has a triple root: `delta = 1/3`, i.e.
/// `e = alpha (4 alpha - 1) / (3 (2 alpha - 1))`.
pub fn reproduce_critical_locus(alpha: &Rational) -> Result<Vec<Check>> {
    let s = "critical-locus";
    let e = alpha * (alpha * int(4) - int(1)) / ((alpha * int(2) - int(1)) * int(3));
    let spec = CrraSymmetricSpec::new(alpha.clone(), e.clone(), int(3))?;
    let class = classify_crra_symmetric(&spec)?;
    let count = direct_count(&spec.economy()?)?;
    let triple = count.report.roots.len() == 1
        && count.report.roots[0].q_exact == Some(int(1))
        && count.report.has_multiple_root();
    Ok(vec![
        check(
            s,
            &format!("alpha = {}, e = {}: delta = 1/3", fmt_rational(alpha), fmt_rational(&e)),
            class.delta == ratio(1, 3),
            fmt_rational(&class.delta),
        ),
        check(
            s,
            "discriminant is exactly zero",
            class.discriminant.is_zero(),
            fmt_rational(&class.discriminant),
        ),
        check(
            s,
            "triple root at q = 1 flagged critical",
            triple,
            format!(
                "{} roots, classification {}",
                count.report.roots.len(),
                count.report.classification
            ),
        ),
    ])
}

pub fn reproduce(
    scenario: Scenario,
    c: Option<usize>,
    alpha: Option<&str>,
    e: Option<&str>,
    scan_range: (f64, f64),
) -> Result<Vec<Check>> {
    let alpha = alpha.map(parse_rational).transpose()?;
    let e = e.map(parse_rational).transpose()?;
    let thm3 = || {
        reproduce_thm3_critical(
            alpha.as_ref().unwrap_or(&ratio(1, 2)),
            e.as_ref().unwrap_or(&ratio(3, 10)),
        )
    };
    let locus = || reproduce_critical_locus(alpha.as_ref().unwrap_or(&ratio(1, 5)));
    match scenario {
        Scenario::TodaWalsh => reproduce_toda_walsh(scan_range),
        Scenario::Thm1Boundary => reproduce_thm1_boundary(c, scan_range),
        Scenario::Thm3Critical => thm3(),
        Scenario::CriticalLocus => locus(),
        Scenario::All => {
            let mut all = reproduce_toda_walsh(scan_range)?;
            all.extend(reproduce_thm1_boundary(c, scan_range)?);
            all.extend(thm3()?);
            all.extend(locus()?);
            Ok(all)
        }
    }
}

// ---------------------------------------------------------------- driver

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::ConfigParse(e.to_string()))?;
    std::fs::write(path, text + "\n").map_err(|e| Error::ConfigParse(format!("{}: {e}", path.display())))
}

/// Runs one command, writing human-readable output to `stdout`.
pub fn run<W: Write>(cli: &Cli, stdout: &mut W) -> Result<i32> {
    let io = |e: std::io::Error| Error::ConfigParse(e.to_string());
    match &cli.command {
        Command::Solve { file, mode, out } => {
            let loaded = load_economy(file)?;
            let report = solve(&loaded, *mode, scan_range_from_env()?)?;
            stdout.write_all(format_solve(&report).as_bytes()).map_err(io)?;
            if let Some(path) = out {
                write_json(path, &report)?;
            }
            Ok(report.exit_code())
        }
        Command::Certify { file, out } => {
            let loaded = load_economy(file)?;
            let cert = certify(&loaded.economy)?;
            let mut text = String::new();
            write_certificate(&mut text, &cert, 0);
            stdout.write_all(text.as_bytes()).map_err(io)?;
            if let Some(path) = out {
                write_json(path, &cert)?;
            }
            Ok(EXIT_OK)
        }
        Command::Sweep(args) => {
            let spec = SweepSpec::from_args(args)?;
            let rows = sweep(&spec)?;
            match &args.out {
                Some(path) => {
                    let file = std::fs::File::create(path)
                        .map_err(|e| Error::ConfigParse(format!("{}: {e}", path.display())))?;
                    write_sweep_csv(&spec, &rows, std::io::BufWriter::new(file))?;
                }
                None => write_sweep_csv(&spec, &rows, &mut *stdout)?,
            }
            Ok(EXIT_OK)
        }
        Command::Reproduce {
            scenario,
            c,
            alpha,
            e,
            out,
        } => {
            let checks = reproduce(*scenario, *c, alpha.as_deref(), e.as_deref(), scan_range_from_env()?)?;
            for ch in &checks {
                let tag = if ch.pass { "PASS" } else { "FAIL" };
                writeln!(stdout, "[{tag}] {}: {} ({})", ch.scenario, ch.name, ch.detail).map_err(io)?;
            }
            if let Some(path) = out {
                write_json(path, &checks)?;
            }
            Ok(if checks.iter().all(|c| c.pass) {
                EXIT_OK
            } else {
                EXIT_DISAGREE
            })
        }
    }
}

/// Parses arguments, runs the command and maps errors to exit code 1.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(&cli, &mut lock) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
