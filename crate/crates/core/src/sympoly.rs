//! Elementary symmetric sums of the type weights and the coefficients of the
//! reduced excess-demand function built from them.
//!
//! `s(t)` is the sum of all `t`-fold products of `sigma_1..sigma_c` and
//! `s_omit(t, i)` the same sum with index `i` left out. Both tables are filled
//! by adding one weight at a time:
//!
//! ```text
//! s(t, k)       = s(t, k-1)    + sigma_k s(t-1, k-1)
//! s(t, k, i)    = s(t, k-1, i) + sigma_k s(t-1, k-1, i)    (i < k)
//! s(t, k, k)    = s(t, k-1)
//! ```

use crate::error::{Error, Result};
use crate::model::Economy;
use crate::num::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct SigmaVector<T> {
    values: Vec<T>,
}

impl<T: Scalar> SigmaVector<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidParameter("need at least two weights".into()));
        }
        if values.iter().any(|s| s.sign() <= 0) {
            return Err(Error::InvalidParameter("weights must be positive".into()));
        }
        Ok(SigmaVector { values })
    }

    pub fn from_economy(econ: &Economy) -> Self {
        SigmaVector {
            values: econ.types.iter().map(|t| T::from_value(&t.sigma)).collect(),
        }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Coefficients of the reduced function, indexed by `t = 1..c-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedCoefficients<T> {
    pub xi: Vec<T>,
    pub u: Vec<T>,
    pub v: Vec<T>,
    pub mu_c: T,
    pub v0: T,
}

impl<T: Scalar> ReducedCoefficients<T> {
    /// `mu_t = xi_t + u_t` for `t = 1..c-1`.
    pub fn mu(&self, t: usize) -> T {
        self.xi[t - 1].clone() + self.u[t - 1].clone()
    }

    pub fn xi_t(&self, t: usize) -> &T {
        &self.xi[t - 1]
    }

    pub fn u_t(&self, t: usize) -> &T {
        &self.u[t - 1]
    }

    pub fn v_t(&self, t: usize) -> &T {
        &self.v[t - 1]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable<T> {
    sigma: Vec<T>,
    s_full: Vec<T>,
    /// `s_reduced[i][t]`
    s_reduced: Vec<Vec<T>>,
    coefficients: Option<ReducedCoefficients<T>>,
}

impl<T: Scalar> CoefficientTable<T> {
    pub fn c(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[T] {
        &self.sigma
    }

    /// `s(t, c)`; zero outside `0..=c`.
    pub fn s(&self, t: usize) -> T {
        self.s_full.get(t).cloned().unwrap_or_else(T::zero)
    }

    /// `s(t, c, i)` with `i` zero-based; zero for `t >= c`.
    pub fn s_omit(&self, t: usize, i: usize) -> T {
        self.s_reduced[i].get(t).cloned().unwrap_or_else(T::zero)
    }

    /// `sigma_1 ... sigma_c`.
    pub fn sigma_product(&self) -> T {
        self.s(self.c())
    }

    pub fn coefficients(&self) -> Option<&ReducedCoefficients<T>> {
        self.coefficients.as_ref()
    }
}

/// Builds `s(t, c)` and `s(t, c, i)` by the one-weight-at-a-time recurrences.
pub fn build_sigma_tables<T: Scalar>(sigma: &SigmaVector<T>) -> CoefficientTable<T> {
    let c = sigma.len();
    let mut full = vec![T::one()];
    let mut reduced: Vec<Vec<T>> = Vec::with_capacity(c);
    for (k, sk) in sigma.values.iter().enumerate() {
        // the new type's reduced sums are the previous full sums
        let omit_new = full.clone();
        for row in reduced.iter_mut() {
            extend_by(row, sk, k);
        }
        reduced.push(omit_new);
        extend_by(&mut full, sk, k + 1);
    }
    // pad reduced rows to length c so that s(c, c, i) = 0 is explicit
    for row in reduced.iter_mut() {
        row.resize(c, T::zero());
    }
    CoefficientTable {
        sigma: sigma.values.clone(),
        s_full: full,
        s_reduced: reduced,
        coefficients: None,
    }
}

/// Applies `s'(t) = s(t) + sigma s(t-1)` in place; `len` is the new top degree.
fn extend_by<T: Scalar>(row: &mut Vec<T>, sigma: &T, len: usize) {
    row.resize(len + 1, T::zero());
    for t in (1..=len).rev() {
        let add = sigma.clone() * row[t - 1].clone();
        row[t] = row[t].clone() + add;
    }
}

/// `r_x s(t, c) - sum_i e_i s(t, c, i)` for any `0 <= t <= c`.
pub fn kernel_value<T: Scalar>(table: &CoefficientTable<T>, e: &[T], t: usize) -> T {
    let rx = e.iter().cloned().fold(T::zero(), |acc, x| acc + x);
    let mut value = rx * table.s(t);
    for (i, ei) in e.iter().enumerate() {
        value = value - ei.clone() * table.s_omit(t, i);
    }
    value
}

/// The positivity kernel `F(t, c)`, defined for `1 <= t <= c-1`.
pub fn f_kernel<T: Scalar>(table: &CoefficientTable<T>, e: &[T], t: usize) -> Result<T> {
    let c = table.c();
    if t == 0 || t >= c {
        return Err(Error::IndexOutOfRange { t, max: c - 1 });
    }
    if e.len() != c {
        return Err(Error::InvalidParameter(format!(
            "expected {c} endowments, got {}",
            e.len()
        )));
    }
    Ok(kernel_value(table, e, t))
}

/// Fills `xi`, `u`, `v`, `mu_c` and `v0` for curvature `epsilon`.
pub fn build_coefficients<T: Scalar>(
    econ: &Economy,
    table: &CoefficientTable<T>,
    epsilon: &Rational,
) -> Result<CoefficientTable<T>> {
    let c = table.c();
    if econ.c() != c {
        return Err(Error::InvalidParameter(format!(
            "table has {c} weights, economy has {} types",
            econ.c()
        )));
    }
    let h = &econ.hara;
    let shift = T::from_rational(&(&h.b.exact / (&h.a.exact * epsilon)));
    let c_shift = T::from_i64(c as i64) * shift.clone();
    let e: Vec<T> = econ.types.iter().map(|t| T::from_value(&t.e)).collect();
    let f: Vec<T> = econ.types.iter().map(|t| T::from_value(&t.f)).collect();

    let mut xi = Vec::with_capacity(c - 1);
    let mut u = Vec::with_capacity(c - 1);
    let mut v = Vec::with_capacity(c - 1);
    for t in 1..c {
        xi.push(kernel_value(table, &e, t));
        let mut ut = T::zero();
        let mut vt = T::zero();
        for i in 0..c {
            ut = ut + table.sigma[i].clone() * table.s_omit(t - 1, i);
            vt = vt + (f[i].clone() + shift.clone()) * table.s_omit(t, i);
        }
        u.push(shift.clone() * ut);
        v.push(vt);
    }
    let mu_c = table.sigma_product() * (T::from_value(&econ.rx) + c_shift.clone());
    let v0 = T::from_value(&econ.ry) + c_shift;
    let mut filled = table.clone();
    filled.coefficients = Some(ReducedCoefficients { xi, u, v, mu_c, v0 });
    Ok(filled)
}
