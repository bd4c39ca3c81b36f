//! Turns the excess demand into a sparse polynomial.
//!
//! With `epsilon = m/n` and `q = p^(1/n)`, multiplying `p Zx(p)` by the
//! positive factor `prod_i (1 + sigma_i p^(epsilon-1))` and then by
//! `q^((c-1)(n-m))` yields
//!
//! ```text
//! P(q) = v_{c-1} + v_{c-2} q^(n-m) + ... + v_1 q^((c-2)(n-m)) + v_0 q^((c-1)(n-m))
//!        - mu_c q^m - mu_{c-1} q^n - ... - mu_1 q^((c-2)(n-m)+n)
//! ```
//!
//! so `sign P(q) = sign Zx(q^n)` for every `q > 0`.

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::model::Economy;
use crate::num::{fmt_rational, Rational, Scalar};
use crate::polynomial::SparsePolynomial;
use crate::sympoly::{build_coefficients, build_sigma_tables, SigmaVector};

pub const DEFAULT_MAX_DENOMINATOR: u32 = 64;

/// `epsilon ~ m/n` with `0 < m < n` and `gcd(m, n) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct RationalExponent {
    m: u32,
    n: u32,
}

impl RationalExponent {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if m == 0 || m >= n {
            return Err(Error::InvalidParameter(format!("need 0 < m < n, got {m}/{n}")));
        }
        let g = num_integer::gcd(m, n);
        Ok(RationalExponent { m: m / g, n: n / g })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn as_rational(&self) -> Rational {
        Rational::new(self.m.into(), self.n.into())
    }

    pub fn as_f64(&self) -> f64 {
        self.m as f64 / self.n as f64
    }
}

impl std::fmt::Display for RationalExponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.m, self.n)
    }
}

/// Best continued-fraction convergent of `1/gamma` with denominator at most
/// `max_denominator`. Exact when `1/gamma` already has a small denominator.
pub fn approximate_epsilon(gamma: &Rational, max_denominator: u32) -> Result<RationalExponent> {
    if *gamma <= Rational::one() {
        return Err(Error::GammaOutOfRange(fmt_rational(gamma)));
    }
    if max_denominator < 2 {
        return Err(Error::InvalidParameter("max_denominator must be at least 2".into()));
    }
    let eps = gamma.recip();
    let limit = num_bigint::BigInt::from(max_denominator);
    if *eps.denom() <= limit {
        let m = eps.numer().to_u32().expect("numerator below denominator");
        let n = eps.denom().to_u32().expect("checked against limit");
        return RationalExponent::new(m, n);
    }

    // convergents h_k / k_k of the continued fraction of eps
    let (mut h_prev, mut h) = (num_bigint::BigInt::zero(), num_bigint::BigInt::one());
    let (mut k_prev, mut k) = (num_bigint::BigInt::one(), num_bigint::BigInt::zero());
    let mut x = eps.clone();
    let mut best = None;
    loop {
        let a = x.floor();
        let a_int = a.to_integer();
        let h_next = &a_int * &h + &h_prev;
        let k_next = &a_int * &k + &k_prev;
        if k_next > limit {
            break;
        }
        (h_prev, h) = (h, h_next);
        (k_prev, k) = (k, k_next);
        if let (Some(m), Some(n)) = (h.to_u32(), k.to_u32()) {
            if m > 0 && m < n {
                best = Some(RationalExponent::new(m, n)?);
            }
        }
        let frac = &x - a;
        if frac.is_zero() {
            break;
        }
        x = frac.recip();
    }
    match best {
        Some(r) => Ok(r),
        None => closest_proper_fraction(&eps, max_denominator),
    }
}

/// Fallback when no convergent lies strictly inside `(0, 1)`.
fn closest_proper_fraction(eps: &Rational, max_denominator: u32) -> Result<RationalExponent> {
    let target = crate::num::rational_to_f64(eps);
    (2..=max_denominator)
        .map(|n| {
            let m = ((target * n as f64).round() as u32).clamp(1, n - 1);
            (((m as f64 / n as f64) - target).abs(), m, n)
        })
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, m, n)| RationalExponent::new(m, n))
        .unwrap_or_else(|| Err(Error::EpsilonNotRepresentable(fmt_rational(eps))))
}

/// The exponent used for an economy, exact when `1/gamma` allows it.
pub fn epsilon_for(econ: &Economy, max_denominator: u32) -> Result<RationalExponent> {
    approximate_epsilon(&econ.hara.gamma.exact, max_denominator)
}

/// True when `eps` equals the economy's `1/gamma` exactly.
pub fn is_exact_exponent(econ: &Economy, eps: &RationalExponent) -> bool {
    eps.as_rational() == econ.hara.epsilon.exact
}

/// `(c-1)(n-m) <= m`, i.e. `m/n` lies in `[(c-1)/c, 1)`.
pub fn theorem1_exponent_check(eps: &RationalExponent, c: usize) -> bool {
    (c as u64 - 1) * (eps.n - eps.m) as u64 <= eps.m as u64
}

/// Builds `P(q)` for the economy with curvature replaced by `eps`.
pub fn build_reduced_z<T: Scalar>(econ: &Economy, eps: &RationalExponent) -> Result<SparsePolynomial<T>> {
    let c = econ.c();
    let table = build_sigma_tables(&SigmaVector::<T>::from_economy(econ));
    let table = build_coefficients(econ, &table, &eps.as_rational())?;
    let k = table.coefficients().expect("filled by build_coefficients");
    let (m, n) = (eps.m, eps.n);
    let d = n - m;
    let top = (c as u32 - 1) * d;
    let mut terms = Vec::with_capacity(2 * c);
    terms.push((top, k.v0.clone()));
    terms.push((m, -k.mu_c.clone()));
    for t in 1..c {
        let shift = (c - 1 - t) as u32 * d;
        terms.push((shift, k.v_t(t).clone()));
        terms.push((n + shift, -k.mu(t)));
    }
    Ok(SparsePolynomial::from_terms(terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{excess_demand_x, ConsumerType, HaraParams};
    use crate::num::{int, ratio, Value};

    fn toda_walsh() -> Economy {
        let h = HaraParams::crra(Value::from(3)).unwrap();
        let types = vec![
            ConsumerType::new(
                Value::new(ratio(1, 49)),
                Value::new(ratio(48, 49)),
                Value::from(216),
                &h,
            )
            .unwrap(),
            ConsumerType::new(
                Value::new(ratio(48, 49)),
                Value::new(ratio(1, 49)),
                Value::new(ratio(1, 216)),
                &h,
            )
            .unwrap(),
        ];
        Economy::new(h, types).unwrap()
    }

    #[test]
    fn exact_epsilons() {
        assert_eq!(
            approximate_epsilon(&int(3), 64).unwrap(),
            RationalExponent::new(1, 3).unwrap()
        );
        assert_eq!(
            approximate_epsilon(&ratio(3, 2), 100).unwrap(),
            RationalExponent::new(2, 3).unwrap()
        );
        let half = approximate_epsilon(&int(2), 64).unwrap();
        assert!(theorem1_exponent_check(&half, 2));
        assert!(approximate_epsilon(&int(1), 64).is_err());
        assert!(approximate_epsilon(&ratio(1, 2), 64).is_err());
    }

    #[test]
    fn convergent_approximation() {
        // 1/2.999 = 1000/2999 = [0; 2, 1, 998, ...]
        let e = approximate_epsilon(&ratio(2999, 1000), 4).unwrap();
        assert_eq!((e.m(), e.n()), (1, 3));
        let e = approximate_epsilon(&ratio(2999, 1000), 64).unwrap();
        assert_eq!((e.m(), e.n()), (1, 3));
        // 1/pi-ish
        let gamma = Rational::from_float(std::f64::consts::PI).unwrap();
        let e = approximate_epsilon(&gamma, 200).unwrap();
        assert_eq!((e.m(), e.n()), (7, 22));
        // eps close to 1: convergents 0/1, 1/1 are invalid, fall back
        let e = approximate_epsilon(&ratio(100, 99), 10).unwrap();
        assert_eq!((e.m(), e.n()), (9, 10));
    }

    #[test]
    fn exponent_check_boundaries() {
        assert!(theorem1_exponent_check(&RationalExponent::new(2, 3).unwrap(), 3));
        assert!(!theorem1_exponent_check(&RationalExponent::new(1, 2).unwrap(), 3));
        assert!(theorem1_exponent_check(&RationalExponent::new(4, 5).unwrap(), 5));
        assert!(!theorem1_exponent_check(&RationalExponent::new(3, 4).unwrap(), 5));
    }

    #[test]
    fn toda_walsh_polynomial() {
        let econ = toda_walsh();
        let eps = epsilon_for(&econ, DEFAULT_MAX_DENOMINATOR).unwrap();
        let p: SparsePolynomial<Rational> = build_reduced_z(&econ, &eps).unwrap();
        assert_eq!(p.to_string(), "0:2/7 1:-1 2:1 3:-2/7");
        assert!(is_exact_exponent(&econ, &eps));
    }

    #[test]
    fn two_type_cubic_matches_closed_form() {
        // c = 2, gamma = 3, b > 0
        let h = HaraParams::new(Value::from(2), Value::new(ratio(1, 3)), Value::from(3)).unwrap();
        let (e1, f1, s1) = (ratio(1, 2), int(2), ratio(2, 3));
        let (e2, f2, s2) = (int(3), ratio(1, 4), int(5));
        let types = vec![
            ConsumerType::with_sigma(
                Value::new(e1.clone()),
                Value::new(f1.clone()),
                Value::new(s1.clone()),
                &h,
            )
            .unwrap(),
            ConsumerType::with_sigma(
                Value::new(e2.clone()),
                Value::new(f2.clone()),
                Value::new(s2.clone()),
                &h,
            )
            .unwrap(),
        ];
        let econ = Economy::new(h, types).unwrap();
        let ba = ratio(1, 6); // b / a
        let three = int(3);
        let six = int(6);
        let a = -(&e1 * &s1 + &e2 * &s2) - &three * &ba * (&s1 + &s2);
        let b = &f1 + &f2 + &six * &ba;
        let c = -(&e1 + &e2) * &s1 * &s2 - &six * &ba * &s1 * &s2;
        let d = &f1 * &s2 + &f2 * &s1 + &three * &ba * (&s1 + &s2);
        let p: SparsePolynomial<Rational> = build_reduced_z(&econ, &RationalExponent::new(1, 3).unwrap()).unwrap();
        assert_eq!(p.to_dense(), vec![d, c, b, a]);
    }

    #[test]
    fn boundary_exponents_merge_and_keep_sign_equivalence() {
        // c = 3, gamma = 3/2: (c-1)(n-m) = 2 = m, so v0 and -mu_c share q^2
        let h = HaraParams::new(Value::from(1), Value::new(ratio(1, 2)), Value::new(ratio(3, 2))).unwrap();
        let types = [(1, 2, 1), (2, 1, 3), (3, 3, 7)]
            .iter()
            .map(|&(e, f, s)| ConsumerType::with_sigma(Value::from(e), Value::from(f), Value::new(int(s)), &h).unwrap())
            .collect();
        let econ = Economy::new(h, types).unwrap();
        let eps = epsilon_for(&econ, 64).unwrap();
        assert_eq!((eps.m(), eps.n()), (2, 3));
        let p: SparsePolynomial<Rational> = build_reduced_z(&econ, &eps).unwrap();
        assert_eq!(p.terms().len(), 5);
        let signs: Vec<i8> = p.terms().iter().map(|(_, c)| c.sign()).collect();
        let changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
        assert_eq!(changes, 1);
        for k in 0..200 {
            let q = 10f64.powf(-6.0 + 12.0 * k as f64 / 199.0);
            let z = excess_demand_x(&econ, q.powi(3)).unwrap();
            let pq = p.to_float().eval(&q);
            if z.abs() > 1e-9 {
                assert_eq!(z.signum(), pq.signum(), "q={q}");
            }
        }
    }
}
