//! Sparse univariate polynomials with nonnegative integer exponents.
//!
//! Text form is a whitespace separated `exponent:coefficient` list in ascending
//! exponent order, for example `0:2/7 1:-1 2:1 3:-2/7`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::num::{fmt_rational, parse_rational, Rational, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct SparsePolynomial<T> {
    /// Strictly increasing exponents, no zero coefficients.
    terms: Vec<(u32, T)>,
}

impl<T: Scalar> SparsePolynomial<T> {
    /// Canonicalises: sorts, merges equal exponents and drops zero coefficients.
    pub fn from_terms<I: IntoIterator<Item = (u32, T)>>(terms: I) -> Self {
        let mut raw: Vec<(u32, T)> = terms.into_iter().collect();
        raw.sort_by_key(|(e, _)| *e);
        let mut merged: Vec<(u32, T)> = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            match merged.last_mut() {
                Some((last, acc)) if *last == e => *acc = acc.clone() + c,
                _ => merged.push((e, c)),
            }
        }
        merged.retain(|(_, c)| c.sign() != 0);
        SparsePolynomial { terms: merged }
    }

    /// Dense coefficients, lowest degree first.
    pub fn from_dense(coefficients: &[T]) -> Self {
        Self::from_terms(coefficients.iter().enumerate().map(|(e, c)| (e as u32, c.clone())))
    }

    pub fn terms(&self) -> &[(u32, T)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.last().map(|(e, _)| *e)
    }

    pub fn coefficient(&self, exponent: u32) -> T {
        self.terms
            .iter()
            .find(|(e, _)| *e == exponent)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(T::zero)
    }

    pub fn eval(&self, q: &T) -> T {
        let mut acc = T::zero();
        let mut power = T::one();
        let mut at = 0u32;
        for (e, c) in &self.terms {
            power = power * q.powu(e - at);
            at = *e;
            acc = acc + c.clone() * power.clone();
        }
        acc
    }

    pub fn to_dense(&self) -> Vec<T> {
        let mut dense = vec![T::zero(); self.degree().map_or(0, |d| d as usize + 1)];
        for (e, c) in &self.terms {
            dense[*e as usize] = c.clone();
        }
        dense
    }

    pub fn to_float(&self) -> SparsePolynomial<f64> {
        SparsePolynomial::from_terms(self.terms.iter().map(|(e, c)| (*e, c.to_f64())))
    }
}

impl fmt::Display for SparsePolynomial<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("{e}:{}", fmt_rational(c)))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Display for SparsePolynomial<f64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("{e}:{c:e}")).collect();
        f.write_str(&parts.join(" "))
    }
}

fn parse_terms(s: &str) -> Result<Vec<(u32, Rational)>> {
    s.split_whitespace()
        .map(|tok| {
            let (e, c) = tok
                .split_once(':')
                .ok_or_else(|| Error::ConfigParse(format!("bad term {tok:?}")))?;
            let e = e
                .parse::<u32>()
                .map_err(|_| Error::ConfigParse(format!("bad exponent in {tok:?}")))?;
            Ok((e, parse_rational(c)?))
        })
        .collect()
}

impl FromStr for SparsePolynomial<Rational> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(Self::from_terms(parse_terms(s)?))
    }
}

impl FromStr for SparsePolynomial<f64> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(SparsePolynomial::<Rational>::from_str(s)?.to_float())
    }
}
