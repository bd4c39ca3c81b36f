//! Positive real roots of sparse polynomials.
//!
//! Rational polynomials with at most one coefficient sign change are settled by
//! the rule of signs; the rest are isolated with Sturm sequences. Roots are
//! refined by exact bisection, so the reported count is certified. Float
//! polynomials fall back to log-grid bracketing and are reported as not
//! certified.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::bracket::log_scan;
use crate::error::{Error, Result};
use crate::num::{fmt_rational, rational_to_f64, Rational, Scalar};
use crate::polynomial::SparsePolynomial;

pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
pub const RESIDUAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Multiplicity {
    Simple,
    SuspectedMultiple,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "count")]
pub enum Classification {
    Unique,
    Multiple(usize),
    Critical,
    Inconclusive,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Classification::Unique => write!(f, "unique"),
            Classification::Multiple(k) => write!(f, "multiple({k})"),
            Classification::Critical => write!(f, "critical"),
            Classification::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsolatedRoot {
    pub q: f64,
    /// Set when the root is rational and was identified exactly.
    #[serde(serialize_with = "ser_opt_rational")]
    pub q_exact: Option<Rational>,
    /// `q^n`; equals `q` until a price exponent is applied.
    pub p: f64,
    pub bracket: (f64, f64),
    pub multiplicity: Multiplicity,
}

fn ser_opt_rational<S: serde::Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_some(&fmt_rational(r)),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootReport {
    pub descartes_bound: usize,
    pub roots: Vec<IsolatedRoot>,
    /// Number of distinct positive roots; `None` when not certified.
    pub exact_count: Option<usize>,
    pub classification: Classification,
    pub certified: bool,
    pub price_exponent: u32,
}

impl RootReport {
    fn new(descartes_bound: usize, roots: Vec<IsolatedRoot>, certified: bool) -> Self {
        let classification = if roots.iter().any(|r| r.multiplicity == Multiplicity::SuspectedMultiple) {
            Classification::Critical
        } else {
            match roots.len() {
                0 => Classification::Inconclusive,
                1 => Classification::Unique,
                k => Classification::Multiple(k),
            }
        };
        RootReport {
            descartes_bound,
            exact_count: certified.then_some(roots.len()),
            roots,
            classification,
            certified,
            price_exponent: 1,
        }
    }

    /// Fills `p = q^n` for every root.
    pub fn with_price_exponent(mut self, n: u32) -> Self {
        let prices = prices_from_roots(&self, n);
        for (root, p) in self.roots.iter_mut().zip(prices) {
            root.p = p;
        }
        self.price_exponent = n;
        self
    }

    pub fn prices(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.p).collect()
    }

    pub fn has_multiple_root(&self) -> bool {
        self.classification == Classification::Critical
    }
}

/// Sign variations of the coefficient sequence in ascending exponent order.
pub fn descartes_sign_changes<T: Scalar>(poly: &SparsePolynomial<T>) -> usize {
    poly.terms()
        .windows(2)
        .filter(|w| w[0].1.sign() != w[1].1.sign())
        .count()
}

/// `B^2 C^2 - 4 A C^3 - 4 B^3 D - 27 A^2 D^2 + 18 A B C D`.
pub fn cubic_discriminant<T: Scalar>(a: &T, b: &T, c: &T, d: &T) -> Result<T> {
    if a.sign() == 0 {
        return Err(Error::DegenerateLeadingCoefficient);
    }
    let (a, b, c, d) = (a.clone(), b.clone(), c.clone(), d.clone());
    let k = |n: i64| T::from_i64(n);
    Ok(b.clone() * b.clone() * c.clone() * c.clone()
        - k(4) * a.clone() * c.clone().powu(3)
        - k(4) * b.clone().powu(3) * d.clone()
        - k(27) * a.clone() * a.clone() * d.clone() * d.clone()
        + k(18) * a * b * c * d)
}

/// Equilibrium prices `p = q^n` of the isolated roots.
pub fn prices_from_roots(report: &RootReport, n: u32) -> Vec<f64> {
    report
        .roots
        .iter()
        .map(|r| match &r.q_exact {
            Some(q) => rational_to_f64(&q.powu(n)),
            None => r.q.powi(n as i32),
        })
        .collect()
}

pub trait IsolatePositiveRoots {
    fn isolate_positive_roots(&self, tol: f64) -> Result<RootReport>;
}

pub fn isolate_positive_roots<P: IsolatePositiveRoots + ?Sized>(poly: &P, tol: f64) -> Result<RootReport> {
    poly.isolate_positive_roots(tol)
}

impl IsolatePositiveRoots for SparsePolynomial<Rational> {
    fn isolate_positive_roots(&self, tol: f64) -> Result<RootReport> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::InvalidParameter("tol must be positive".into()));
        }
        let bound = descartes_sign_changes(self);
        let roots = sturm::isolate(&self.to_dense(), tol);
        Ok(RootReport::new(bound, roots, true))
    }
}

impl IsolatePositiveRoots for SparsePolynomial<f64> {
    fn isolate_positive_roots(&self, tol: f64) -> Result<RootReport> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::InvalidParameter("tol must be positive".into()));
        }
        let bound = descartes_sign_changes(self);
        let (lo, hi) = float_root_bounds(self);
        let f = |q: f64| self.eval(&q);
        // bisect to machine precision; `tol` only bounds the Sturm refinement
        let scan = log_scan(&f, lo, hi, 4000, 4, 0.0);
        let roots = scan
            .roots
            .iter()
            .zip(&scan.brackets)
            .map(|(&q, &bracket)| IsolatedRoot {
                q,
                q_exact: None,
                p: q,
                bracket,
                multiplicity: Multiplicity::Simple,
            })
            .collect();
        Ok(RootReport::new(bound, roots, false))
    }
}

/// Cauchy-style bounds `lo < |root| < hi` for the nonzero roots.
fn float_root_bounds(poly: &SparsePolynomial<f64>) -> (f64, f64) {
    let terms = poly.terms();
    let (_, lead) = terms.last().expect("nonzero");
    let (_, low) = terms.first().expect("nonzero");
    let upper = 1.0 + terms.iter().map(|(_, c)| (c / lead).abs()).fold(0.0, f64::max);
    let lower = 1.0 / (1.0 + terms.iter().map(|(_, c)| (c / low).abs()).fold(0.0, f64::max));
    (0.5 * lower, 2.0 * upper)
}

mod sturm {
    //! Dense exact polynomials (ascending coefficients) and Sturm counting.

    use super::*;

    pub(super) type Dense = Vec<Rational>;

    fn trim(mut p: Dense) -> Dense {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }

    fn degree(p: &Dense) -> usize {
        p.len().saturating_sub(1)
    }

    pub(super) fn derivative(p: &Dense) -> Dense {
        trim(
            p.iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer((k as i64).into()))
                .collect(),
        )
    }

    /// Quotient and remainder of `a / b`.
    pub(super) fn div_rem(a: &Dense, b: &Dense) -> (Dense, Dense) {
        let mut rem = a.clone();
        let db = degree(b);
        let lead = b.last().expect("nonzero divisor");
        if rem.len() < b.len() {
            return (Vec::new(), rem);
        }
        let mut quot = vec![Rational::zero(); rem.len() - db];
        for k in (0..quot.len()).rev() {
            let coeff = &rem[k + db] / lead;
            if !coeff.is_zero() {
                for (j, bj) in b.iter().enumerate() {
                    rem[k + j] -= &coeff * bj;
                }
            }
            quot[k] = coeff;
        }
        rem.truncate(db);
        (trim(quot), trim(rem))
    }

    /// Rescales by a positive rational to a primitive integer polynomial.
    pub(super) fn normalize(p: Dense) -> Dense {
        if p.is_empty() {
            return p;
        }
        let lcm = p.iter().fold(num_bigint::BigInt::one(), |acc, c| {
            num_integer::lcm(acc, c.denom().clone())
        });
        let scaled: Vec<num_bigint::BigInt> = p
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = scaled
            .iter()
            .fold(num_bigint::BigInt::zero(), |acc, c| num_integer::gcd(acc, c.clone()));
        scaled.into_iter().map(|c| Rational::from_integer(c / &g)).collect()
    }

    pub(super) fn gcd(a: &Dense, b: &Dense) -> Dense {
        let (mut x, mut y) = (normalize(a.clone()), normalize(b.clone()));
        while !y.is_empty() {
            let (_, r) = div_rem(&x, &y);
            x = y;
            y = normalize(r);
        }
        x
    }

    pub(super) fn eval(p: &Dense, x: &Rational) -> Rational {
        p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    fn sign(r: &Rational) -> i8 {
        Scalar::sign(r)
    }

    /// Sign of `p(x)` for an integer-coefficient `p`, using only integer
    /// arithmetic: the sign of `sum c_i n^i d^(deg-i)` with `x = n/d`.
    pub(super) fn sign_at(p: &Dense, x: &Rational) -> i8 {
        if p.iter().any(|c| !c.is_integer()) {
            return sign(&eval(p, x));
        }
        let (n, d) = (x.numer(), x.denom());
        let mut acc = num_bigint::BigInt::zero();
        let mut dpow = num_bigint::BigInt::one();
        for c in p.iter().rev() {
            acc = acc * n + c.numer() * &dpow;
            dpow *= d;
        }
        match acc.sign() {
            num_bigint::Sign::Plus => 1,
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
        }
    }

    pub(super) fn sequence(p: &Dense) -> Vec<Dense> {
        let mut seq = vec![normalize(p.clone())];
        let d = normalize(derivative(p));
        if d.is_empty() {
            return seq;
        }
        seq.push(d);
        loop {
            let n = seq.len();
            let (_, r) = div_rem(&seq[n - 2], &seq[n - 1]);
            if r.is_empty() {
                break;
            }
            seq.push(normalize(r.into_iter().map(|c| -c).collect()));
        }
        seq
    }

    /// Sign variations at a point that is not a root of `seq[0]`.
    pub(super) fn variations(seq: &[Dense], x: &Rational) -> usize {
        let signs: Vec<i8> = seq.iter().map(|p| sign_at(p, x)).filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    fn pow2(k: i64) -> Rational {
        let two = Rational::from_integer(2.into());
        if k >= 0 {
            num_traits::Pow::pow(&two, k as u32)
        } else {
            num_traits::Pow::pow(&two.recip(), (-k) as u32)
        }
    }

    /// Smallest power of two strictly above `1 + max |c_i / c_lead|`.
    fn cauchy_pow2(p: &[Rational]) -> i64 {
        let lead = p.last().expect("nonzero").abs();
        let max = p.iter().map(|c| c.abs() / &lead).max().unwrap_or_else(Rational::zero);
        let bound = max + Rational::one();
        let mut k = 0i64;
        while pow2(k) <= bound {
            k += 1;
        }
        k
    }

    /// Distinct positive roots of `p` (not identically zero).
    pub(super) fn isolate(p: &Dense, tol: f64) -> Vec<IsolatedRoot> {
        let p = trim(p.clone());
        // strip the factor q^k so that zero is not a root
        let low = p.iter().position(|c| !c.is_zero()).expect("nonzero");
        let p: Dense = p[low..].to_vec();
        if p.len() < 2 {
            return Vec::new();
        }
        // at most one sign change: the count is exact and any root is simple
        let changes = p
            .iter()
            .filter(|c| !c.is_zero())
            .map(sign)
            .collect::<Vec<_>>()
            .windows(2)
            .filter(|w| w[0] != w[1])
            .count();
        if changes == 0 {
            return Vec::new();
        }
        if changes == 1 {
            let p = normalize(p);
            let hi = pow2(cauchy_pow2(&p));
            let reversed: Dense = p.iter().rev().cloned().collect();
            let lo = pow2(-cauchy_pow2(&reversed));
            return vec![refine(&p, None, lo, hi, tol)];
        }
        let dp = derivative(&p);
        let g = gcd(&p, &dp);
        let square_free = if degree(&g) > 0 {
            normalize(div_rem(&p, &g).0)
        } else {
            normalize(p.clone())
        };
        let g_seq = (degree(&g) > 0).then(|| sequence(&g));
        let seq = sequence(&square_free);

        let hi = pow2(cauchy_pow2(&square_free));
        let reversed: Dense = square_free.iter().rev().cloned().collect();
        let lo = pow2(-cauchy_pow2(&reversed));

        let mut isolated: Vec<(Rational, Rational)> = Vec::new();
        let mut exact: Vec<Rational> = Vec::new();
        let mut stack = vec![(lo, hi)];
        while let Some((a, b)) = stack.pop() {
            let count = variations(&seq, &a) - variations(&seq, &b);
            match count {
                0 => {}
                1 => isolated.push((a, b)),
                _ => {
                    let mid = (&a + &b) / Rational::from_integer(2.into());
                    if sign_at(&square_free, &mid) == 0 {
                        let mut h = (&b - &a) / Rational::from_integer(4.into());
                        loop {
                            let (l, r) = (&mid - &h, &mid + &h);
                            if sign_at(&square_free, &l) != 0
                                && sign_at(&square_free, &r) != 0
                                && variations(&seq, &l) - variations(&seq, &r) == 1
                            {
                                stack.push((a.clone(), l));
                                stack.push((r, b.clone()));
                                break;
                            }
                            h /= Rational::from_integer(2.into());
                        }
                        exact.push(mid);
                    } else {
                        stack.push((a, mid.clone()));
                        stack.push((mid, b));
                    }
                }
            }
        }

        let mut roots: Vec<IsolatedRoot> = exact
            .into_iter()
            .map(|r| {
                let q = rational_to_f64(&r);
                let multiple = g_seq.is_some() && sign_at(&g, &r) == 0;
                IsolatedRoot {
                    q,
                    p: q,
                    bracket: (q, q),
                    q_exact: Some(r),
                    multiplicity: if multiple {
                        Multiplicity::SuspectedMultiple
                    } else {
                        Multiplicity::Simple
                    },
                }
            })
            .collect();
        for (a, b) in isolated {
            roots.push(refine(&square_free, g_seq.as_deref(), a, b, tol));
        }
        roots.sort_by(|x, y| x.q.total_cmp(&y.q));
        roots
    }

    /// Bisects in floating point, then moves each endpoint only if its exact
    /// sign confirms the root still lies inside. `[a, b]` must isolate one
    /// simple root of `p` with `sign p(a) = sa`.
    fn shrink_with_floats(p: &Dense, sa: i8, a: &mut Rational, b: &mut Rational, tol: f64) {
        let coeffs: Vec<f64> = p.iter().map(rational_to_f64).collect();
        if coeffs.iter().any(|c| !c.is_finite()) {
            return;
        }
        let f = |x: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
        let (mut lo, mut hi) = (rational_to_f64(a), rational_to_f64(b));
        let sa_f = sa as f64;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi || hi - lo <= 0.25 * tol * lo.min(1.0) {
                break;
            }
            let v = f(mid) * sa_f;
            if v > 0.0 {
                lo = mid;
            } else if v < 0.0 {
                hi = mid;
            } else {
                break;
            }
        }
        for (x, is_lo) in [(lo, true), (hi, false)] {
            let Some(r) = Rational::from_float(x) else { continue };
            if r <= *a || r >= *b {
                continue;
            }
            match sign_at(p, &r) {
                0 => {
                    // an exact root; collapse the bracket around it
                    *a = r.clone();
                    *b = r;
                    return;
                }
                s if (s == sa) == is_lo => {
                    if is_lo {
                        *a = r;
                    } else {
                        *b = r;
                    }
                }
                _ => {}
            }
        }
    }

    /// The rational with the smallest denominator in `[a, b]`, `0 < a < b`.
    pub(super) fn simplest_between(a: &Rational, b: &Rational) -> Rational {
        let fa = a.floor();
        if fa == *a {
            return fa;
        }
        let next = &fa + Rational::one();
        if next <= *b {
            return next;
        }
        let inner = simplest_between(&(b - &fa).recip(), &(a - &fa).recip());
        fa + inner.recip()
    }

    fn refine(p: &Dense, g_seq: Option<&[Dense]>, mut a: Rational, mut b: Rational, tol: f64) -> IsolatedRoot {
        let half = Rational::new(1.into(), 2.into());
        let sa = sign_at(p, &a);
        let mut exact = None;
        shrink_with_floats(p, sa, &mut a, &mut b, tol);
        loop {
            let width = rational_to_f64(&(&b - &a));
            let scale = rational_to_f64(&a).min(1.0);
            if width <= tol * scale {
                break;
            }
            let mid = (&a + &b) * &half;
            let sm = sign_at(p, &mid);
            if sm == 0 {
                exact = Some(mid);
                break;
            }
            if sm == sa {
                a = mid;
            } else {
                b = mid;
            }
        }
        if exact.is_none() {
            let candidate = simplest_between(&a, &b);
            if sign_at(p, &candidate) == 0 {
                exact = Some(candidate);
            }
        }
        let multiple = match (&exact, g_seq) {
            (Some(r), Some(gs)) => sign_at(&gs[0], r) == 0,
            (None, Some(gs)) => variations(gs, &a) > variations(gs, &b),
            _ => false,
        };
        let multiplicity = if multiple {
            Multiplicity::SuspectedMultiple
        } else {
            Multiplicity::Simple
        };
        match exact {
            Some(r) => {
                let q = rational_to_f64(&r);
                IsolatedRoot {
                    q,
                    p: q,
                    bracket: (q, q),
                    q_exact: Some(r),
                    multiplicity,
                }
            }
            None => {
                let q = rational_to_f64(&((&a + &b) * &half));
                IsolatedRoot {
                    q,
                    p: q,
                    bracket: (rational_to_f64(&a), rational_to_f64(&b)),
                    q_exact: None,
                    multiplicity,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{int, ratio};
    use proptest::prelude::*;

    fn poly(text: &str) -> SparsePolynomial<Rational> {
        text.parse().unwrap()
    }

    #[test]
    fn sign_changes() {
        assert_eq!(descartes_sign_changes(&poly("0:2/7 1:-1 2:1 3:-2/7")), 3);
        assert_eq!(descartes_sign_changes(&poly("0:1 3:2 7:5")), 0);
        assert_eq!(descartes_sign_changes(&poly("0:1 1:3 2:4 5:-1 6:-2")), 1);
    }

    #[test]
    fn toda_walsh_cubic_roots_are_exact() {
        let report = poly("0:2/7 1:-1 2:1 3:-2/7")
            .isolate_positive_roots(DEFAULT_ROOT_TOL)
            .unwrap();
        assert_eq!(report.exact_count, Some(3));
        let exact: Vec<Rational> = report.roots.iter().map(|r| r.q_exact.clone().unwrap()).collect();
        assert_eq!(exact, vec![ratio(1, 2), int(1), int(2)]);
        let report = report.with_price_exponent(3);
        assert_eq!(report.prices(), vec![0.125, 1.0, 8.0]);
        assert_eq!(report.classification, Classification::Multiple(3));
    }

    #[test]
    fn linear_root() {
        let report = poly("0:-1 1:1").isolate_positive_roots(DEFAULT_ROOT_TOL).unwrap();
        assert_eq!(report.exact_count, Some(1));
        assert_eq!(report.roots[0].q, 1.0);
        assert_eq!(report.classification, Classification::Unique);
        assert_eq!(prices_from_roots(&report, 7), vec![1.0]);
    }

    #[test]
    fn single_sign_change_at_high_degree() {
        let report = poly("0:3 7:1 60:-2 90:-5")
            .isolate_positive_roots(DEFAULT_ROOT_TOL)
            .unwrap();
        assert_eq!(report.exact_count, Some(1));
        let q = report.roots[0].q;
        let value = 3.0 + q.powi(7) - 2.0 * q.powi(60) - 5.0 * q.powi(90);
        assert!(value.abs() < 1e-9, "{q} {value}");

        let report = poly("0:-1 100:1").isolate_positive_roots(DEFAULT_ROOT_TOL).unwrap();
        assert_eq!(report.roots[0].q_exact, Some(int(1)));
        assert!(poly("0:1 5:2 80:7")
            .isolate_positive_roots(DEFAULT_ROOT_TOL)
            .unwrap()
            .roots
            .is_empty());
    }

    #[test]
    fn irrational_roots_are_refined() {
        // q^2 - 2 and a root at 1/3 + a factor q^2 (zero root ignored)
        let report = poly("2:-2 4:1").isolate_positive_roots(1e-12).unwrap();
        assert_eq!(report.exact_count, Some(1));
        let r = &report.roots[0];
        assert!((r.q - 2f64.sqrt()).abs() < 1e-12);
        assert!(r.bracket.1 - r.bracket.0 <= 1e-12);
    }

    #[test]
    fn multiple_roots_are_flagged() {
        // -(1/3)(q - 1)^3
        let report = poly("0:1/3 1:-1 2:1 3:-1/3")
            .isolate_positive_roots(DEFAULT_ROOT_TOL)
            .unwrap();
        assert_eq!(report.exact_count, Some(1));
        assert_eq!(report.roots[0].multiplicity, Multiplicity::SuspectedMultiple);
        assert_eq!(report.classification, Classification::Critical);
        // (3 - q)(q^2 - 2)^2: irrational double root at sqrt 2
        let p = poly("0:-6 1:2 2:3 3:-1");
        let squared = SparsePolynomial::from_dense(&mul_dense(&p.to_dense(), &[int(-2), int(0), int(1)]));
        let report = squared.isolate_positive_roots(DEFAULT_ROOT_TOL).unwrap();
        assert_eq!(report.exact_count, Some(2));
        let flags: Vec<Multiplicity> = report.roots.iter().map(|r| r.multiplicity).collect();
        assert_eq!(flags, vec![Multiplicity::SuspectedMultiple, Multiplicity::Simple]);
    }

    #[test]
    fn no_positive_roots() {
        let report = poly("0:1 2:1").isolate_positive_roots(DEFAULT_ROOT_TOL).unwrap();
        assert_eq!(report.exact_count, Some(0));
        assert_eq!(report.classification, Classification::Inconclusive);
        let zero = SparsePolynomial::<Rational>::from_terms(vec![]);
        assert_eq!(zero.isolate_positive_roots(1e-12), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn float_fallback_is_not_certified() {
        let p: SparsePolynomial<f64> = "0:2/7 1:-1 2:1 3:-2/7".parse().unwrap();
        let report = p.isolate_positive_roots(DEFAULT_ROOT_TOL).unwrap();
        assert!(!report.certified);
        assert_eq!(report.exact_count, None);
        let got: Vec<f64> = report.roots.iter().map(|r| r.q).collect();
        for (g, w) in got.iter().zip([0.5, 1.0, 2.0]) {
            assert!((g - w).abs() < 1e-12);
        }
    }

    #[test]
    fn discriminants() {
        let d = cubic_discriminant(&ratio(-2, 7), &int(1), &int(-1), &ratio(2, 7)).unwrap();
        assert_eq!(d, ratio(9, 2401));
        let d = cubic_discriminant(&int(1), &int(0), &int(0), &int(-1)).unwrap();
        assert_eq!(d, int(-27));
        let third = ratio(1, 3);
        let d = cubic_discriminant(&-third.clone(), &int(1), &int(-1), &third).unwrap();
        assert_eq!(d, int(0));
        assert_eq!(
            cubic_discriminant(&0.0, &1.0, &1.0, &1.0),
            Err(Error::DegenerateLeadingCoefficient)
        );
    }

    fn mul_dense(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![int(0); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// Products of linear factors with known positive roots.
        #[test]
        fn recovers_planted_roots(
            planted in proptest::collection::btree_set((1i64..30, 1i64..8), 1..5),
            negative in proptest::collection::vec(1i64..9, 0..3),
        ) {
            let mut dense = vec![int(1)];
            let mut want: Vec<Rational> = planted.iter().map(|&(n, d)| ratio(n, d)).collect();
            want.sort();
            want.dedup();
            for r in &want {
                dense = mul_dense(&dense, &[-r.clone(), int(1)]);
            }
            for k in &negative {
                dense = mul_dense(&dense, &[int(*k), int(1)]);
            }
            let p = SparsePolynomial::from_dense(&dense);
            let report = p.isolate_positive_roots(1e-12).unwrap();
            prop_assert_eq!(report.exact_count, Some(want.len()));
            for (root, w) in report.roots.iter().zip(&want) {
                prop_assert!((root.q - rational_to_f64(w)).abs() < 1e-11 * rational_to_f64(w).max(1.0));
            }
            prop_assert!(report.exact_count.unwrap() <= report.descartes_bound);
            prop_assert_eq!(report.exact_count.unwrap() % 2, report.descartes_bound % 2);
        }

        #[test]
        fn squared_factors_are_flagged(n in 1i64..20, d in 1i64..6, other in 20i64..40) {
            let r = ratio(n, d);
            let mut dense = mul_dense(&[-r.clone(), int(1)], &[-r.clone(), int(1)]);
            dense = mul_dense(&dense, &[-int(other), int(1)]);
            let report = SparsePolynomial::from_dense(&dense).isolate_positive_roots(1e-12).unwrap();
            prop_assert_eq!(report.exact_count, Some(2));
            prop_assert_eq!(report.roots[0].multiplicity, Multiplicity::SuspectedMultiple);
            prop_assert_eq!(report.roots[1].multiplicity, Multiplicity::Simple);
        }
    }
}
