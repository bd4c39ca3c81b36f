//! Closed-form uniqueness certificates and the dispatcher that picks the
//! strongest one, always cross-checked against a direct Sturm count.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::model::{ConsumerType, Economy, HaraParams};
use crate::num::{fmt_rational, int, rational_to_f64, Rational, Scalar, Value};
use crate::polynomial::SparsePolynomial;
use crate::reduction::{build_reduced_z, epsilon_for, is_exact_exponent, RationalExponent, DEFAULT_MAX_DENOMINATOR};
use crate::roots::{isolate_positive_roots, Classification, RootReport, DEFAULT_ROOT_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Thm1GammaRange,
    Thm2HaraTwoType,
    LemmaCubicAdbc,
    Thm3CrraSymmetric,
    DescartesDirect,
    None,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Thm1GammaRange => "Thm1-GammaRange",
            Rule::Thm2HaraTwoType => "Thm2-HaraTwoType",
            Rule::LemmaCubicAdbc => "Lemma-CubicADBC",
            Rule::Thm3CrraSymmetric => "Thm3-CrraSymmetric",
            Rule::DescartesDirect => "DescartesDirect",
            Rule::None => "None",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Unique,
    AtMostThree,
    ThreeEquilibria,
    Critical,
    Inconclusive,
    /// Exactly `k` regular equilibria, `k` not 1 or 3.
    Multiple(usize),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Unique => f.write_str("Unique"),
            Verdict::AtMostThree => f.write_str("AtMostThree"),
            Verdict::ThreeEquilibria => f.write_str("ThreeEquilibria"),
            Verdict::Critical => f.write_str("Critical"),
            Verdict::Inconclusive => f.write_str("Inconclusive"),
            Verdict::Multiple(k) => write!(f, "Multiple({k})"),
        }
    }
}

fn as_display<T: fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl Serialize for Rule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        as_display(self, s)
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        as_display(self, s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub satisfied: bool,
    /// Signed slack; positive means strictly satisfied.
    pub margin: f64,
}

impl Hypothesis {
    /// `lhs - rhs >= 0` (or `> 0` when `strict`).
    fn slack(name: &str, slack: &Rational, strict: bool) -> Self {
        Hypothesis {
            name: name.to_string(),
            satisfied: if strict {
                slack.is_positive()
            } else {
                !slack.is_negative()
            },
            margin: rational_to_f64(slack),
        }
    }

    fn flag(name: &str, satisfied: bool) -> Self {
        Hypothesis {
            name: name.to_string(),
            satisfied,
            margin: if satisfied { 1.0 } else { -1.0 },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub rule: Rule,
    pub hypotheses: Vec<Hypothesis>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
    /// Other certificates evaluated along the way.
    pub supporting: Vec<Certificate>,
}

impl Certificate {
    fn new(rule: Rule, hypotheses: Vec<Hypothesis>, verdict: Verdict) -> Self {
        Certificate {
            rule,
            hypotheses,
            verdict,
            notes: Vec::new(),
            supporting: Vec::new(),
        }
    }

    pub fn all_satisfied(&self) -> bool {
        self.hypotheses.iter().all(|h| h.satisfied)
    }

    /// Smallest absolute margin over the hypotheses, if any.
    pub fn tightest_margin(&self) -> Option<&Hypothesis> {
        self.hypotheses
            .iter()
            .min_by(|a, b| a.margin.abs().total_cmp(&b.margin.abs()))
    }
}

/// Unique whenever `1 < gamma <= c/(c-1)`.
pub fn certify_thm1(econ: &Economy) -> Certificate {
    let gamma = &econ.hara.gamma.exact;
    let c = econ.c() as i64;
    let upper = Rational::new(c.into(), (c - 1).into());
    let hypotheses = vec![
        Hypothesis::slack("gamma > 1", &(gamma - int(1)), true),
        Hypothesis::slack("gamma <= c/(c-1)", &(&upper - gamma), false),
    ];
    let verdict = if hypotheses.iter().all(|h| h.satisfied) {
        Verdict::Unique
    } else {
        Verdict::Inconclusive
    };
    Certificate::new(Rule::Thm1GammaRange, hypotheses, verdict)
}

fn require_two_type_cubic(econ: &Economy) -> Result<()> {
    if econ.c() != 2 {
        return Err(Error::WrongArity(econ.c()));
    }
    if econ.hara.gamma.exact != int(3) {
        return Err(Error::UnsupportedGamma(fmt_rational(&econ.hara.gamma.exact)));
    }
    Ok(())
}

/// `[A, B, C, D]` of `P(q) = A q^3 + B q^2 + C q + D` for two types at `gamma = 3`.
pub fn cubic_coefficients<T: Scalar>(econ: &Economy) -> Result<[T; 4]> {
    require_two_type_cubic(econ)?;
    let v = |x: &Value| T::from_value(x);
    let (t1, t2) = (&econ.types[0], &econ.types[1]);
    let (s1, s2) = (v(&t1.sigma), v(&t2.sigma));
    let (e1, e2, f1, f2) = (v(&t1.e), v(&t2.e), v(&t1.f), v(&t2.f));
    let h = v(&econ.hara.b) / v(&econ.hara.a);
    let k = |n: i64| T::from_i64(n);
    let a = -(e1.clone() * s1.clone() + e2.clone() * s2.clone()) - k(3) * h.clone() * (s1.clone() + s2.clone());
    let b = f1.clone() + f2.clone() + k(6) * h.clone();
    let c = -(e1 + e2) * s1.clone() * s2.clone() - k(6) * h.clone() * s1.clone() * s2.clone();
    let d = f1 * s2.clone() + f2 * s1.clone() + k(3) * h * (s1 + s2);
    Ok([a, b, c, d])
}

pub fn ad_minus_bc<T: Scalar>(econ: &Economy) -> Result<T> {
    let [a, b, c, d] = cubic_coefficients::<T>(econ)?;
    Ok(a * d - b * c)
}

/// The two summands `(s2 - s1)(e1 f2 s1 - e2 f1 s2)` and `E` whose sum is `AD - BC`.
pub fn ad_minus_bc_decomposition<T: Scalar>(econ: &Economy) -> Result<(T, T)> {
    require_two_type_cubic(econ)?;
    let v = |x: &Value| T::from_value(x);
    let (t1, t2) = (&econ.types[0], &econ.types[1]);
    let (s1, s2) = (v(&t1.sigma), v(&t2.sigma));
    let (e1, e2, f1, f2) = (v(&t1.e), v(&t2.e), v(&t1.f), v(&t2.f));
    let h = v(&econ.hara.b) / v(&econ.hara.a);
    let first =
        (s2.clone() - s1.clone()) * (e1.clone() * f2.clone() * s1.clone() - e2.clone() * f1.clone() * s2.clone());
    let gap = s1.clone() - s2.clone();
    let bracket = (e1.clone() + e2.clone() + f1.clone() + f2.clone()) * s1.clone() * s2.clone()
        - (e1 + f2) * s1.clone() * s1
        - (e2 + f1) * s2.clone() * s2;
    let e_term = -T::from_i64(9) * h.clone() * h.clone() * gap.clone() * gap + T::from_i64(3) * h * bracket;
    Ok((first, e_term))
}

/// `(a/3) (beta2/beta1)^(2/3) (e2 + f1)`, written as `(a/3)(sigma2/sigma1)^2 (e2 + f1)`.
pub fn hara_threshold(econ: &Economy) -> Result<Rational> {
    require_two_type_cubic(econ)?;
    let (t1, t2) = (&econ.types[0], &econ.types[1]);
    let ratio = &t2.sigma.exact / &t1.sigma.exact;
    Ok(&econ.hara.a.exact / int(3) * &ratio * &ratio * (&t2.e.exact + &t1.f.exact))
}

fn adbc_hypotheses(econ: &Economy) -> Result<Vec<Hypothesis>> {
    let [a, b, c, d] = cubic_coefficients::<Rational>(econ)?;
    let alternating = a.is_negative() && b.is_positive() && c.is_negative() && d.is_positive();
    let nonzero = !(a.is_zero() || b.is_zero() || c.is_zero() || d.is_zero());
    let adbc = &a * &d - &b * &c;
    Ok(vec![
        Hypothesis::flag("three sign changes", alternating),
        Hypothesis::flag("ABCD != 0", nonzero),
        Hypothesis::slack("AD - BC < 0", &-adbc, true),
    ])
}

/// The cubic lemma alone: three sign changes and `AD - BC < 0` give one root.
pub fn certify_cubic_adbc(econ: &Economy) -> Result<Certificate> {
    let hypotheses = adbc_hypotheses(econ)?;
    let verdict = if hypotheses.iter().all(|h| h.satisfied) {
        Verdict::Unique
    } else {
        Verdict::AtMostThree
    };
    let mut cert = Certificate::new(Rule::LemmaCubicAdbc, hypotheses, verdict);
    if !econ.sigma_exact() {
        cert.notes
            .push("sigma is irrational; coefficients use its rounded value".into());
    }
    Ok(cert)
}

/// Two types, `gamma = 3`: ordering of patience and endowments plus a lower
/// bound on `b`. Falls back to the cubic lemma when only the ordering holds.
pub fn certify_thm2(econ: &Economy) -> Result<Certificate> {
    require_two_type_cubic(econ)?;
    let (t1, t2) = (&econ.types[0], &econ.types[1]);
    let threshold = hara_threshold(econ)?;
    let mut hypotheses = vec![
        Hypothesis::slack("beta1 < beta2", &(&t2.beta.exact - &t1.beta.exact), true),
        Hypothesis::slack("e1 <= e2", &(&t2.e.exact - &t1.e.exact), false),
        Hypothesis::slack("f1 >= f2", &(&t1.f.exact - &t2.f.exact), false),
        Hypothesis::slack(
            "b >= (a/3)(beta2/beta1)^(2/3)(e2+f1)",
            &(&econ.hara.b.exact - &threshold),
            false,
        ),
    ];
    let ordering = hypotheses[..3].iter().all(|h| h.satisfied);
    let bound = hypotheses[3].satisfied;
    let lemma = certify_cubic_adbc(econ)?;
    let adbc = lemma.hypotheses[2].clone();
    hypotheses.push(adbc);

    let mut cert = if !ordering {
        Certificate::new(Rule::Thm2HaraTwoType, hypotheses, Verdict::Inconclusive)
    } else if bound {
        Certificate::new(Rule::Thm2HaraTwoType, hypotheses, Verdict::Unique)
    } else if lemma.verdict == Verdict::Unique {
        let mut thm2 = Certificate::new(Rule::Thm2HaraTwoType, hypotheses, Verdict::AtMostThree);
        thm2.notes.push("b is below the closed-form bound".into());
        let mut cert = lemma;
        cert.supporting.push(thm2);
        return Ok(cert);
    } else {
        Certificate::new(Rule::Thm2HaraTwoType, hypotheses, Verdict::AtMostThree)
    };
    if cert.verdict == Verdict::Unique && !cert.all_satisfied() {
        cert.notes
            .push("AD - BC >= 0 although the closed-form bound holds".into());
        cert.verdict = Verdict::AtMostThree;
    }
    Ok(cert)
}

/// Two mirror-image CRRA types: `beta1 = ((1-alpha)/alpha)^gamma`,
/// `beta2 = 1/beta1`, endowments `(e, 1-e)` and `(1-e, e)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CrraSymmetricSpec {
    pub alpha: Rational,
    pub e: Rational,
    pub gamma: Rational,
}

impl CrraSymmetricSpec {
    pub fn new(alpha: Rational, e: Rational, gamma: Rational) -> Result<Self> {
        let unit = |x: &Rational| x.is_positive() && *x < int(1);
        if !unit(&alpha) {
            return Err(Error::ParameterOutOfRange(format!(
                "alpha = {} not in (0, 1)",
                fmt_rational(&alpha)
            )));
        }
        if !unit(&e) {
            return Err(Error::ParameterOutOfRange(format!(
                "e = {} not in (0, 1)",
                fmt_rational(&e)
            )));
        }
        if !gamma.is_positive() {
            return Err(Error::ParameterOutOfRange("gamma must be positive".into()));
        }
        Ok(CrraSymmetricSpec { alpha, e, gamma })
    }

    /// `sigma1 = (1-alpha)/alpha` exactly, whatever `gamma` is.
    pub fn economy(&self) -> Result<Economy> {
        let hara = HaraParams::crra(Value::new(self.gamma.clone()))?;
        let one = int(1);
        let s1 = (&one - &self.alpha) / &self.alpha;
        let s2 = s1.recip();
        let types = vec![
            ConsumerType::with_sigma(
                Value::new(self.e.clone()),
                Value::new(&one - &self.e),
                Value::new(s1),
                &hara,
            )?,
            ConsumerType::with_sigma(
                Value::new(&one - &self.e),
                Value::new(self.e.clone()),
                Value::new(s2),
                &hara,
            )?,
        ];
        Economy::new(hara, types)
    }

    /// `(alpha^2 - (2 alpha - 1) e) / (alpha - alpha^2)`.
    pub fn delta(&self) -> Rational {
        let (a, e) = (&self.alpha, &self.e);
        (a * a - (a * int(2) - int(1)) * e) / (a - a * a)
    }

    /// `(alpha - 3e)(2 alpha - 1)`.
    pub fn sign_rule_value(&self) -> Rational {
        (&self.alpha - &self.e * int(3)) * (&self.alpha * int(2) - int(1))
    }
}

/// Result of classifying a symmetric CRRA economy at `gamma = 3`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrraClassification {
    #[serde(serialize_with = "ser_rational")]
    pub delta: Rational,
    /// `-(3 delta - 1)^3 (delta + 1)`.
    #[serde(serialize_with = "ser_rational")]
    pub discriminant: Rational,
    /// Verdict read off the sign of `(alpha - 3e)(2 alpha - 1)`.
    pub sign_rule: Verdict,
    /// Verdict read off the sign of the discriminant.
    pub by_discriminant: Verdict,
    pub consistent: bool,
    pub certificate: Certificate,
}

fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&fmt_rational(r))
}

fn verdict_from_sign(s: i8, positive: Verdict, negative: Verdict) -> Verdict {
    match s {
        0 => Verdict::Critical,
        s if s > 0 => positive,
        _ => negative,
    }
}

/// Sign-rule classification of the symmetric CRRA economy together with the
/// discriminant of its cubic. The certificate only carries the sign-rule
/// verdict when the two agree.
pub fn classify_crra_symmetric(spec: &CrraSymmetricSpec) -> Result<CrraClassification> {
    if spec.gamma != int(3) {
        return Err(Error::UnsupportedGamma(fmt_rational(&spec.gamma)));
    }
    let delta = spec.delta();
    let three_delta = &delta * int(3) - int(1);
    let discriminant = -(&three_delta * &three_delta * &three_delta) * (&delta + int(1));
    let rule_value = spec.sign_rule_value();
    let sign_rule = verdict_from_sign(Scalar::sign(&rule_value), Verdict::Unique, Verdict::ThreeEquilibria);
    let by_discriminant = verdict_from_sign(Scalar::sign(&discriminant), Verdict::ThreeEquilibria, Verdict::Unique);
    let consistent = sign_rule == by_discriminant;

    let hypotheses = vec![
        Hypothesis::slack(
            "0 < alpha < 1",
            &(&spec.alpha).min(&(int(1) - &spec.alpha)).clone(),
            true,
        ),
        Hypothesis::slack("0 < e < 1", &(&spec.e).min(&(int(1) - &spec.e)).clone(), true),
        Hypothesis::flag("sign rule agrees with discriminant", consistent),
    ];
    let mut certificate = Certificate::new(
        Rule::Thm3CrraSymmetric,
        hypotheses,
        if consistent { sign_rule } else { Verdict::Inconclusive },
    );
    certificate.notes.push(format!(
        "(alpha-3e)(2alpha-1) = {}, delta = {}, discriminant = {}",
        fmt_rational(&rule_value),
        fmt_rational(&delta),
        fmt_rational(&discriminant)
    ));
    if !consistent {
        certificate.notes.push(format!(
            "sign rule says {sign_rule}, discriminant says {by_discriminant}"
        ));
    }
    Ok(CrraClassification {
        delta,
        discriminant,
        sign_rule,
        by_discriminant,
        consistent,
        certificate,
    })
}

/// Reduced polynomial of an economy and its certified positive roots.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectCount {
    pub epsilon: RationalExponent,
    /// `epsilon` equals `1/gamma`.
    pub epsilon_exact: bool,
    pub sigma_exact: bool,
    pub polynomial: SparsePolynomial<Rational>,
    /// Prices already carry the exponent `n`.
    pub report: RootReport,
}

impl DirectCount {
    pub fn exact(&self) -> bool {
        self.epsilon_exact && self.sigma_exact
    }
}

pub fn direct_count(econ: &Economy) -> Result<DirectCount> {
    if econ.hara.gamma.exact <= int(1) {
        return Err(Error::GammaOutOfRange(fmt_rational(&econ.hara.gamma.exact)));
    }
    let epsilon = epsilon_for(econ, DEFAULT_MAX_DENOMINATOR)?;
    let epsilon_exact = is_exact_exponent(econ, &epsilon);
    let polynomial = build_reduced_z::<Rational>(econ, &epsilon)?;
    let report = isolate_positive_roots(&polynomial, DEFAULT_ROOT_TOL)?.with_price_exponent(epsilon.n());
    Ok(DirectCount {
        epsilon,
        epsilon_exact,
        sigma_exact: econ.sigma_exact(),
        polynomial,
        report,
    })
}

pub fn verdict_from_report(report: &RootReport) -> Verdict {
    match report.classification {
        Classification::Unique => Verdict::Unique,
        Classification::Critical => Verdict::Critical,
        Classification::Multiple(3) => Verdict::ThreeEquilibria,
        Classification::Multiple(k) => Verdict::Multiple(k),
        Classification::Inconclusive => Verdict::Inconclusive,
    }
}

/// Sturm count of `P(q)`; a verdict only when the polynomial is exact.
pub fn certify_direct(count: &DirectCount) -> Certificate {
    let report = &count.report;
    let hypotheses = vec![
        Hypothesis::flag("epsilon = 1/gamma exactly", count.epsilon_exact),
        Hypothesis::flag("sigma exact", count.sigma_exact),
    ];
    let verdict = if count.exact() {
        verdict_from_report(report)
    } else if report.descartes_bound <= 3 {
        Verdict::AtMostThree
    } else {
        Verdict::Inconclusive
    };
    let mut cert = Certificate::new(Rule::DescartesDirect, hypotheses, verdict);
    cert.notes.push(format!(
        "epsilon = {}, {} sign changes, {} positive roots",
        count.epsilon,
        report.descartes_bound,
        report.roots.len()
    ));
    if !count.exact() {
        cert.notes
            .push("curvature or sigma approximated; root count is for the approximating polynomial".into());
    }
    cert
}

/// Tries the closed-form certificates in order and falls back to a direct
/// Sturm count. The direct count is always attached as supporting evidence
/// and overrides any closed-form verdict it contradicts.
pub fn certify(econ: &Economy) -> Result<Certificate> {
    if econ.hara.gamma.exact <= int(1) {
        return certify_with(econ, None);
    }
    certify_with(econ, Some(&direct_count(econ)?))
}

/// [`certify`] with a precomputed direct count (required when `gamma > 1`).
pub fn certify_with(econ: &Economy, direct: Option<&DirectCount>) -> Result<Certificate> {
    let gamma = &econ.hara.gamma.exact;
    if *gamma <= int(1) {
        let mut cert = Certificate::new(
            Rule::None,
            vec![Hypothesis::slack("gamma > 1", &(gamma - int(1)), true)],
            Verdict::Inconclusive,
        );
        cert.notes.push("the polynomial reduction needs gamma > 1".into());
        return Ok(cert);
    }
    let direct = direct.ok_or_else(|| Error::InvalidParameter("direct count required for gamma > 1".into()))?;
    let fallback = certify_direct(direct);

    let mut closed_form = vec![certify_thm1(econ)];
    if econ.c() == 2 && *gamma == int(3) {
        let thm2 = certify_thm2(econ)?;
        if thm2.verdict != Verdict::Unique {
            closed_form.push(thm2);
            closed_form.push(certify_cubic_adbc(econ)?);
        } else {
            closed_form.push(thm2);
        }
    }
    let winner = closed_form.iter().position(|c| c.verdict == Verdict::Unique);
    let Some(idx) = winner else {
        let mut cert = fallback;
        cert.supporting = closed_form;
        return Ok(cert);
    };
    let mut cert = closed_form.remove(idx);
    if direct.exact() && direct.report.exact_count != Some(1) {
        let mut overruled = fallback;
        overruled
            .notes
            .push(format!("{} claimed Unique but the exact count disagrees", cert.rule));
        overruled.supporting.push(cert);
        overruled.supporting.extend(closed_form);
        return Ok(overruled);
    }
    cert.supporting.push(fallback);
    Ok(cert)
}
