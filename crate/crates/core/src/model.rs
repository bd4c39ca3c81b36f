//! Exchange economy with two goods and `c` impatience types sharing one HARA
//! Bernoulli utility `u(x) = (gamma/(1-gamma)) (b + (a/gamma) x)^(1-gamma)`.
//!
//! Type `i` maximises `u(x) + beta_i u(y)` subject to `p x + y = p e_i + f_i`.
//! Good `y` is the numeraire and `p` is the price of good `x`.

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::num::{rational_power_exact, Rational, Value};

#[derive(Debug, Clone, PartialEq)]
pub struct HaraParams {
    pub a: Value,
    pub b: Value,
    pub gamma: Value,
    /// Always `1 / gamma`.
    pub epsilon: Value,
}

impl HaraParams {
    pub fn new(a: Value, b: Value, gamma: Value) -> Result<Self> {
        if !a.exact.is_positive() {
            return Err(Error::InvalidParameter("a must be positive".into()));
        }
        if b.exact.is_negative() {
            return Err(Error::InvalidParameter("b must be nonnegative".into()));
        }
        if !gamma.exact.is_positive() {
            return Err(Error::InvalidParameter("gamma must be positive".into()));
        }
        if gamma.exact.is_one() {
            return Err(Error::GammaEqualsOne);
        }
        let epsilon = Value {
            exact: gamma.exact.recip(),
            float: 1.0 / gamma.float,
            is_exact: gamma.is_exact,
        };
        Ok(HaraParams { a, b, gamma, epsilon })
    }

    /// Constant-relative-risk-aversion special case (`b = 0`, `a = 1`).
    pub fn crra(gamma: Value) -> Result<Self> {
        Self::new(Value::from(1), Value::from(0), gamma)
    }

    /// `b / (a epsilon)`, the shift that recurs in every coefficient formula.
    pub fn tolerance_shift(&self) -> Rational {
        &self.b.exact / (&self.a.exact * &self.epsilon.exact)
    }

    /// Bernoulli utility `u(x)`.
    pub fn bernoulli(&self, x: f64) -> f64 {
        let g = self.gamma.float;
        g / (1.0 - g) * (self.b.float + self.a.float / g * x).powf(1.0 - g)
    }

    /// Marginal utility `u'(x) = a (b + (a/gamma) x)^(-gamma)`.
    pub fn marginal(&self, x: f64) -> f64 {
        let g = self.gamma.float;
        self.a.float * (self.b.float + self.a.float / g * x).powf(-g)
    }
}

/// One impatience type: endowment `(e, f)`, patience `beta` and the derived
/// weight `sigma = beta^epsilon`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConsumerType {
    pub e: Value,
    pub f: Value,
    pub beta: Value,
    pub sigma: Value,
}

impl ConsumerType {
    pub fn new(e: Value, f: Value, beta: Value, hara: &HaraParams) -> Result<Self> {
        if !beta.exact.is_positive() {
            return Err(Error::InvalidParameter("beta must be positive".into()));
        }
        let sigma = power_value(&beta, &hara.epsilon)?;
        Self::checked(e, f, beta, sigma)
    }

    /// Builds a type from `sigma` directly; `beta = sigma^gamma` is derived.
    pub fn with_sigma(e: Value, f: Value, sigma: Value, hara: &HaraParams) -> Result<Self> {
        if !sigma.exact.is_positive() {
            return Err(Error::InvalidParameter("sigma must be positive".into()));
        }
        let beta = power_value(&sigma, &hara.gamma)?;
        Self::checked(e, f, beta, sigma)
    }

    fn checked(e: Value, f: Value, beta: Value, sigma: Value) -> Result<Self> {
        if e.exact.is_negative() || f.exact.is_negative() {
            return Err(Error::InvalidParameter("endowments must be nonnegative".into()));
        }
        if (&e.exact + &f.exact).is_zero() {
            return Err(Error::InvalidParameter("each type needs a positive endowment".into()));
        }
        Ok(ConsumerType { e, f, beta, sigma })
    }

    fn wealth(&self, p: f64) -> f64 {
        p * self.e.float + self.f.float
    }
}

/// `base^exponent`, exact when the result is rational.
fn power_value(base: &Value, exponent: &Value) -> Result<Value> {
    if base.is_exact && exponent.is_exact {
        let m = exponent.exact.numer().to_u32();
        let n = exponent.exact.denom().to_u32();
        if let (Some(m), Some(n)) = (m, n) {
            if let Some(r) = rational_power_exact(&base.exact, m, n) {
                return Ok(Value::new(r));
            }
        }
    }
    Value::rounded(base.float.powf(exponent.float))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Economy {
    pub hara: HaraParams,
    /// Sorted by ascending `beta` (stable).
    pub types: Vec<ConsumerType>,
    pub rx: Value,
    pub ry: Value,
}

impl Economy {
    pub fn new(hara: HaraParams, mut types: Vec<ConsumerType>) -> Result<Self> {
        if types.len() < 2 {
            return Err(Error::InvalidEconomy(format!(
                "need at least two types, got {}",
                types.len()
            )));
        }
        types.sort_by(|l, r| l.beta.exact.cmp(&r.beta.exact));
        let rx = Value::new(types.iter().map(|t| &t.e.exact).sum());
        let ry = Value::new(types.iter().map(|t| &t.f.exact).sum());
        if !rx.exact.is_positive() || !ry.exact.is_positive() {
            return Err(Error::InvalidEconomy(
                "total endowments of both goods must be positive".into(),
            ));
        }
        Ok(Economy { hara, types, rx, ry })
    }

    pub fn c(&self) -> usize {
        self.types.len()
    }

    /// True when every sigma is known exactly.
    pub fn sigma_exact(&self) -> bool {
        self.types.iter().all(|t| t.sigma.is_exact)
    }

    /// Same endowments and patience, new curvature; sigma is re-derived.
    pub fn with_gamma(&self, gamma: Value) -> Result<Self> {
        let hara = HaraParams::new(self.hara.a.clone(), self.hara.b.clone(), gamma)?;
        let types = self
            .types
            .iter()
            .map(|t| ConsumerType::new(t.e.clone(), t.f.clone(), t.beta.clone(), &hara))
            .collect::<Result<Vec<_>>>()?;
        Economy::new(hara, types)
    }

    pub fn with_b(&self, b: Value) -> Result<Self> {
        let hara = HaraParams::new(self.hara.a.clone(), b, self.hara.gamma.clone())?;
        Economy::new(hara, self.types.clone())
    }
}

/// A demanded bundle. Not clamped: corner solutions show up as negative entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bundle {
    pub x: f64,
    pub y: f64,
}

impl Bundle {
    pub fn is_interior(&self) -> bool {
        self.x >= 0.0 && self.y >= 0.0
    }
}

fn check_price(p: f64) -> Result<()> {
    if p > 0.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositivePrice(p))
    }
}

/// x-demand of a single type from the first-order conditions.
fn x_demand(econ: &Economy, t: &ConsumerType, p: f64) -> f64 {
    let h = &econ.hara;
    let eps = h.epsilon.float;
    let a_eps = h.a.float * eps;
    let b = h.b.float;
    let sp = t.sigma.float * p.powf(eps);
    (b - b * sp + a_eps * t.wealth(p)) / (a_eps * (p + sp))
}

/// Utility-maximising bundle of type `i` at price `p`.
pub fn demand(econ: &Economy, i: usize, p: f64) -> Result<Bundle> {
    check_price(p)?;
    let t = econ.types.get(i).ok_or(Error::IndexOutOfRange {
        t: i,
        max: econ.c() - 1,
    })?;
    let x = x_demand(econ, t, p);
    Ok(Bundle {
        x,
        y: t.wealth(p) - p * x,
    })
}

/// Aggregate excess demand for good x.
pub fn excess_demand_x(econ: &Economy, p: f64) -> Result<f64> {
    check_price(p)?;
    Ok(econ.types.iter().map(|t| x_demand(econ, t, p)).sum::<f64>() - econ.rx.float)
}

/// Aggregate excess demand for the numeraire.
pub fn excess_demand_y(econ: &Economy, p: f64) -> Result<f64> {
    check_price(p)?;
    let y: f64 = econ.types.iter().map(|t| t.wealth(p) - p * x_demand(econ, t, p)).sum();
    Ok(y - econ.ry.float)
}

/// Exact `Zx(q^n)` when the curvature is taken to be `epsilon = m/n`, so that
/// `p^epsilon = q^m` is rational. Uses the exact (or rounded) sigmas.
pub fn excess_demand_x_exact(econ: &Economy, q: &Rational, m: u32, n: u32) -> Result<Rational> {
    if !q.is_positive() {
        return Err(Error::NonPositivePrice(crate::num::rational_to_f64(q)));
    }
    use num_traits::Pow;
    let eps = Rational::new(m.into(), n.into());
    let shift = &econ.hara.b.exact / (&econ.hara.a.exact * &eps);
    let p: Rational = Pow::pow(q, n);
    let p_eps: Rational = Pow::pow(q, m);
    let mut total = -econ.rx.exact.clone();
    for t in &econ.types {
        let sp = &t.sigma.exact * &p_eps;
        let wealth = &p * &t.e.exact + &t.f.exact;
        total += (&shift - &shift * &sp + wealth) / (&p + &sp);
    }
    Ok(total)
}
