//! Independent equilibrium finder working on `Zx(p)` directly, with no use of
//! the polynomial reduction. Exists to falsify the fast path.

use serde::Serialize;

use crate::bracket::log_scan;
use crate::error::{Error, Result};
use crate::model::{excess_demand_x, Economy};
use crate::roots::{Multiplicity, RootReport};

pub const DEFAULT_SCAN_RANGE: (f64, f64) = (1e-6, 1e6);
pub const DEFAULT_POINTS: usize = 1000;
pub const SCAN_RANGE_ENV: &str = "HARA_EQ_SCAN_RANGE";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    pub brackets: Vec<(f64, f64)>,
    pub prices: Vec<f64>,
    pub scan_range: (f64, f64),
    pub grid_points: usize,
    pub refinements: u32,
    /// Whether grid doubling changed the number of brackets.
    pub count_changed: bool,
    /// Every price satisfies `|Zx(p)| <= 1e-9 (1 + r_x)`.
    pub residuals_ok: bool,
}

/// Parses `"min:max"`.
pub fn parse_scan_range(s: &str) -> Result<(f64, f64)> {
    let bad = || Error::ConfigParse(format!("scan range must be \"min:max\", got {s:?}"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::RangeInvalid(lo, hi));
    }
    Ok((lo, hi))
}

/// The default range, overridden by `HARA_EQ_SCAN_RANGE` when set.
pub fn scan_range_from_env() -> Result<(f64, f64)> {
    match std::env::var(SCAN_RANGE_ENV) {
        Ok(s) => parse_scan_range(&s),
        Err(_) => Ok(DEFAULT_SCAN_RANGE),
    }
}

/// Log-grid sign scan of `Zx` on `[p_min, p_max]` plus bisection.
pub fn scan(econ: &Economy, p_min: f64, p_max: f64, points: usize) -> Result<OracleResult> {
    if !(p_min > 0.0 && p_max > p_min && p_max.is_finite()) {
        return Err(Error::RangeInvalid(p_min, p_max));
    }
    if points < 100 {
        return Err(Error::InvalidParameter(format!(
            "need at least 100 grid points, got {points}"
        )));
    }
    let z = |p: f64| excess_demand_x(econ, p).expect("grid prices are positive");
    let out = log_scan(&z, p_min, p_max, points, 4, 0.0);
    let limit = 1e-9 * (1.0 + econ.rx.float);
    let residuals_ok = out.roots.iter().all(|&p| z(p).abs() <= limit);
    Ok(OracleResult {
        brackets: out.brackets,
        prices: out.roots,
        scan_range: (p_min, p_max),
        grid_points: out.grid_points,
        refinements: out.refinements,
        count_changed: out.count_changed,
        residuals_ok,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Discrepancy {
    /// Found by the polynomial route only.
    ExtraRoot { p: f64 },
    /// Found by the oracle only.
    MissingRoot { p: f64 },
    ShiftedRoot {
        polynomial: f64,
        oracle: f64,
        rel_diff: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Agreement {
    pub agree: bool,
    pub discrepancies: Vec<Discrepancy>,
    /// Multiple roots the sign scan cannot see; not counted as discrepancies.
    pub tolerated_critical: Vec<f64>,
}

fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

/// Compares the polynomial-route prices (`report` must carry its price
/// exponent) with the oracle's.
pub fn agree(report: &RootReport, oracle: &OracleResult, rtol: f64) -> Agreement {
    let mut poly_used = vec![false; report.roots.len()];
    let mut unmatched_oracle = Vec::new();
    for &p in &oracle.prices {
        let best = report
            .roots
            .iter()
            .enumerate()
            .filter(|(i, _)| !poly_used[*i])
            .map(|(i, r)| (i, rel_diff(r.p, p)))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((i, d)) if d <= rtol => poly_used[i] = true,
            _ => unmatched_oracle.push(p),
        }
    }
    let mut tolerated_critical = Vec::new();
    let mut extra = Vec::new();
    for (root, used) in report.roots.iter().zip(&poly_used) {
        if *used {
            continue;
        }
        if root.multiplicity == Multiplicity::SuspectedMultiple {
            tolerated_critical.push(root.p);
        } else {
            extra.push(root.p);
        }
    }

    let discrepancies: Vec<Discrepancy> = if !extra.is_empty() && extra.len() == unmatched_oracle.len() {
        extra
            .iter()
            .zip(&unmatched_oracle)
            .map(|(&polynomial, &oracle)| Discrepancy::ShiftedRoot {
                polynomial,
                oracle,
                rel_diff: rel_diff(polynomial, oracle),
            })
            .collect()
    } else {
        extra
            .iter()
            .map(|&p| Discrepancy::ExtraRoot { p })
            .chain(unmatched_oracle.iter().map(|&p| Discrepancy::MissingRoot { p }))
            .collect()
    };
    Agreement {
        agree: discrepancies.is_empty(),
        discrepancies,
        tolerated_critical,
    }
}
