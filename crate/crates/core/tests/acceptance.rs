//! End-to-end acceptance checks. Each test prints one `[PASS]`/`[FAIL]` line
//! and then asserts, so a failing check is both reported and counted.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use hara_eq::certify::{
    ad_minus_bc, ad_minus_bc_decomposition, certify, certify_thm2, classify_crra_symmetric, direct_count,
    hara_threshold, CrraSymmetricSpec, Rule, Verdict,
};
use hara_eq::model::{excess_demand_x, excess_demand_x_exact, excess_demand_y, Economy};
use hara_eq::num::{int, ratio, Rational, Scalar};
use hara_eq::oracle::{scan, DEFAULT_POINTS, DEFAULT_SCAN_RANGE};
use hara_eq::polynomial::SparsePolynomial;
use hara_eq::reduction::{build_reduced_z, epsilon_for, DEFAULT_MAX_DENOMINATOR};
use hara_eq::roots::{descartes_sign_changes, isolate_positive_roots, Classification, Multiplicity, DEFAULT_ROOT_TOL};
use hara_eq::sympoly::{build_sigma_tables, kernel_value, CoefficientTable, SigmaVector};
use num_traits::{One, Signed, Zero};
use rand::Rng;

fn report(pass: bool, name: &str, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "[{tag}] {name}: {detail}");
}

fn first(items: &[String]) -> String {
    items.first().map(|s| format!(" (first: {s})")).unwrap_or_default()
}

fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

// ------------------------------------------------------------- generators

fn toda_walsh() -> Economy {
    CrraSymmetricSpec::new(ratio(1, 7), ratio(1, 49), int(3))
        .unwrap()
        .economy()
        .unwrap()
}

const GAMMA_RANGE_SEED: u64 = 0x5eed_0001;
const GAMMA_RANGE_DRAWS: usize = 1000;

fn gamma_range_economies(c: usize) -> Vec<Economy> {
    let mut rng = common::rng(GAMMA_RANGE_SEED + c as u64);
    (0..GAMMA_RANGE_DRAWS)
        .map(|_| {
            let gamma = common::random_thm1_gamma(&mut rng, c);
            common::random_economy(&mut rng, c, gamma)
        })
        .collect()
}

fn phase_grid() -> Vec<CrraSymmetricSpec> {
    let axis = common::grid(ratio(1, 100), ratio(99, 100), 101);
    let mut specs = Vec::with_capacity(101 * 101);
    for alpha in &axis {
        for e in &axis {
            specs.push(CrraSymmetricSpec::new(alpha.clone(), e.clone(), int(3)).unwrap());
        }
    }
    specs
}

const THRESHOLD_SEED: u64 = 0x5eed_0004;

/// Ordered two-type economies with `b` at 1.01 times the closed-form bound.
fn threshold_economies() -> Vec<Economy> {
    let mut rng = common::rng(THRESHOLD_SEED);
    (0..200)
        .map(|_| {
            let econ = common::random_ordered_pair(&mut rng);
            let b = hara_threshold(&econ).unwrap() * ratio(101, 100);
            econ.with_b(hara_eq::Value::new(b)).unwrap()
        })
        .collect()
}

fn reduced(econ: &Economy) -> SparsePolynomial<Rational> {
    let eps = epsilon_for(econ, DEFAULT_MAX_DENOMINATOR).unwrap();
    build_reduced_z(econ, &eps).unwrap()
}

// ------------------------------------------------------------- criteria

#[test]
fn toda_walsh_reproduction() {
    let start = Instant::now();
    let econ = toda_walsh();
    let count = direct_count(&econ).unwrap();
    let want: SparsePolynomial<Rational> = "0:2/7 1:-1 2:1 3:-2/7".parse().unwrap();
    let poly_ok = count.polynomial == want;
    let roots: Vec<Option<Rational>> = count.report.roots.iter().map(|r| r.q_exact.clone()).collect();
    let roots_ok = roots == vec![Some(ratio(1, 2)), Some(int(1)), Some(int(2))];
    let n = count.epsilon.n();
    let exact_prices: Vec<Option<Rational>> = roots.iter().map(|q| q.as_ref().map(|q| q.powu(n))).collect();
    let prices_ok = exact_prices == vec![Some(ratio(1, 8)), Some(int(1)), Some(int(8))];

    let float_poly: SparsePolynomial<f64> = build_reduced_z(&econ, &count.epsilon).unwrap();
    let float = isolate_positive_roots(&float_poly, DEFAULT_ROOT_TOL)
        .unwrap()
        .with_price_exponent(n);
    let fp = float.prices();
    let float_ok = fp.len() == 3 && fp.iter().zip([0.125, 1.0, 8.0]).all(|(p, w)| (p - w).abs() <= 1e-12);
    let elapsed = start.elapsed();
    let pass = poly_ok && roots_ok && prices_ok && float_ok && elapsed < Duration::from_secs(1);
    report(
        pass,
        "toda-walsh reproduction",
        &format!(
            "P = {}, exact roots {roots_ok}, exact prices {prices_ok}, float prices {fp:?}, {elapsed:?}",
            count.polynomial
        ),
    );
    assert!(pass);
}

#[test]
fn gamma_range_uniqueness() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut total = 0;
    for c in 2..=6 {
        for (k, econ) in gamma_range_economies(c).iter().enumerate() {
            total += 1;
            let cert = certify(econ).unwrap();
            let count = direct_count(econ).unwrap();
            let oracle = scan(econ, DEFAULT_SCAN_RANGE.0, DEFAULT_SCAN_RANGE.1, DEFAULT_POINTS).unwrap();
            let ok = cert.rule == Rule::Thm1GammaRange
                && cert.verdict == Verdict::Unique
                && count.epsilon_exact
                && count.report.exact_count == Some(1)
                && oracle.prices.len() == 1
                && rel_diff(oracle.prices[0], count.report.roots[0].p) <= 1e-9;
            if !ok {
                failures.push(format!(
                    "c={c} #{k}: gamma={} {}->{} sturm={:?} oracle={:?} poly={:?}",
                    econ.hara.gamma.exact,
                    cert.rule,
                    cert.verdict,
                    count.report.exact_count,
                    oracle.prices,
                    count.report.prices()
                ));
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed < Duration::from_secs(120);
    report(
        pass,
        "uniqueness for 1 < gamma <= c/(c-1)",
        &format!(
            "{total} economies, {} failures, {elapsed:?}{}",
            failures.len(),
            first(&failures)
        ),
    );
    assert!(pass, "{failures:#?}");
}

fn verdict_from_count(class: Classification) -> Verdict {
    match class {
        Classification::Unique => Verdict::Unique,
        Classification::Multiple(3) => Verdict::ThreeEquilibria,
        Classification::Critical => Verdict::Critical,
        Classification::Multiple(k) => Verdict::Multiple(k),
        Classification::Inconclusive => Verdict::Inconclusive,
    }
}

#[test]
fn symmetric_crra_phase_diagram() {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let mut on_half = (0, 0);
    for spec in phase_grid() {
        let class = classify_crra_symmetric(&spec).unwrap();
        if spec.sign_rule_value().is_zero() {
            // no grid point lies on alpha = 3e, so these are the alpha = 1/2 row
            on_half.0 += 1;
            if !class.discriminant.is_zero() {
                on_half.1 += 1;
            }
            continue;
        }
        let count = direct_count(&spec.economy().unwrap()).unwrap();
        let isolated = verdict_from_count(count.report.classification);
        if isolated != class.sign_rule {
            mismatches.push((spec.alpha.clone(), spec.e.clone(), class.sign_rule, isolated));
        }
    }
    // the alpha = 3e line, sampled exactly off the grid
    let mut on_third = (0, 0);
    for k in 1..=98 {
        let spec = CrraSymmetricSpec::new(ratio(k, 100), ratio(k, 300), int(3)).unwrap();
        assert!(spec.sign_rule_value().is_zero());
        on_third.0 += 1;
        if !classify_crra_symmetric(&spec).unwrap().discriminant.is_zero() {
            on_third.1 += 1;
        }
    }
    let elapsed = start.elapsed();
    let pass = mismatches.is_empty() && on_half.1 == 0 && on_third.1 == 0 && elapsed < Duration::from_secs(30);
    let show = |v: &(Rational, Rational, Verdict, Verdict)| {
        format!(
            " (first: alpha={} e={}: sign rule {} vs isolation {})",
            v.0, v.1, v.2, v.3
        )
    };
    report(
        pass,
        "symmetric CRRA phase diagram",
        &format!(
            "{} of {} off-boundary grid points disagree{}; discriminant nonzero at {}/{} points on alpha=1/2 and {}/{} on alpha=3e; {elapsed:?}",
            mismatches.len(),
            101 * 101 - on_half.0,
            mismatches.first().map(show).unwrap_or_default(),
            on_half.1,
            on_half.0,
            on_third.1,
            on_third.0
        ),
    );
    assert!(pass);
}

#[test]
fn two_type_hara_threshold() {
    let mut failures = Vec::new();
    let economies = threshold_economies();
    for (k, econ) in economies.iter().enumerate() {
        let cert = certify_thm2(econ).unwrap();
        let adbc: Rational = ad_minus_bc(econ).unwrap();
        let (first, rest) = ad_minus_bc_decomposition::<Rational>(econ).unwrap();
        let count = direct_count(econ).unwrap();
        let ok = cert.rule == Rule::Thm2HaraTwoType
            && cert.verdict == Verdict::Unique
            && adbc.is_negative()
            && count.report.exact_count == Some(1)
            && &first + &rest == adbc;
        if !ok {
            failures.push(format!(
                "#{k}: {}->{} adbc={adbc} count={:?}",
                cert.rule, cert.verdict, count.report.exact_count
            ));
        }
    }
    let pass = failures.is_empty();
    report(
        pass,
        "two-type HARA threshold",
        &format!(
            "{} economies at 1.01x the bound, {} failures{}",
            economies.len(),
            failures.len(),
            first(&failures)
        ),
    );
    assert!(pass, "{failures:#?}");
}

/// Subset enumeration: `(s(t), s(t, omit i))` for every `t` and `i`.
fn subset_tables(sigma: &[Rational]) -> (Vec<Rational>, Vec<Vec<Rational>>) {
    let c = sigma.len();
    let mut full = vec![Rational::zero(); c + 1];
    let mut omit = vec![vec![Rational::zero(); c]; c + 1];
    for mask in 0u32..(1 << c) {
        let t = mask.count_ones() as usize;
        let product = (0..c)
            .filter(|i| mask & (1 << i) != 0)
            .fold(Rational::one(), |acc, i| acc * &sigma[i]);
        full[t] += &product;
        for (i, row) in omit[t].iter_mut().enumerate() {
            if mask & (1 << i) == 0 {
                *row += &product;
            }
        }
    }
    (full, omit)
}

fn prefix_table(sigma: &[Rational]) -> Option<CoefficientTable<Rational>> {
    SigmaVector::new(sigma.to_vec()).ok().map(|v| build_sigma_tables(&v))
}

/// `s(t, k)` of the first `k` weights; handles the one-weight prefix directly.
fn prefix_s(sigma: &[Rational], table: &Option<CoefficientTable<Rational>>, t: usize) -> Rational {
    match table {
        Some(tab) => tab.s(t),
        None => match t {
            0 => Rational::one(),
            1 => sigma[0].clone(),
            _ => Rational::zero(),
        },
    }
}

fn prefix_s_omit(table: &Option<CoefficientTable<Rational>>, t: usize, i: usize) -> Rational {
    match table {
        Some(tab) => tab.s_omit(t, i),
        None => {
            if t == 0 {
                Rational::one()
            } else {
                Rational::zero()
            }
        }
    }
}

fn prefix_kernel(sigma: &[Rational], table: &Option<CoefficientTable<Rational>>, e: &[Rational], t: usize) -> Rational {
    match table {
        Some(tab) => kernel_value(tab, e, t),
        None => {
            let rx = e[0].clone();
            rx * prefix_s(sigma, table, t) - &e[0] * prefix_s_omit(table, t, 0)
        }
    }
}

#[test]
fn symmetric_function_identities() {
    let mut rng = common::rng(0x5eed_0005);
    let mut violations = Vec::new();
    let mut subset_checked = 0;
    for draw in 0..1000 {
        let c = if draw % 5 == 4 {
            rng.gen_range(9..=10)
        } else {
            rng.gen_range(2..=8)
        };
        let sigma: Vec<Rational> = (0..c).map(|_| common::random_sigma(&mut rng)).collect();
        let e: Vec<Rational> = (0..c).map(|_| common::random_endowment(&mut rng)).collect();
        let table = build_sigma_tables(&SigmaVector::new(sigma.clone()).unwrap());

        let (full, omit) = subset_tables(&sigma);
        subset_checked += 1;
        for t in 0..=c {
            if table.s(t) != full[t] {
                violations.push(format!("draw {draw}: s({t},{c}) differs from subsets"));
            }
            for i in 0..c {
                if table.s_omit(t, i) != omit[t][i] {
                    violations.push(format!("draw {draw}: s({t},{c},{i}) differs from subsets"));
                }
            }
        }
        let rx: Rational = e.iter().sum();
        for t in 1..c {
            let direct = &rx * &full[t] - (0..c).map(|i| &e[i] * &omit[t][i]).sum::<Rational>();
            if kernel_value(&table, &e, t) != direct {
                violations.push(format!("draw {draw}: F({t},{c}) differs from subsets"));
            }
        }
        if c > 8 {
            continue;
        }

        let last = &sigma[c - 1];
        let prefix = prefix_table(&sigma[..c - 1]);
        for t in 1..=c {
            let rec = prefix_s(&sigma[..c - 1], &prefix, t) + last * prefix_s(&sigma[..c - 1], &prefix, t - 1);
            if table.s(t) != rec {
                violations.push(format!("draw {draw}: full-sum recurrence at t={t}"));
            }
            for i in 0..c - 1 {
                let rec = prefix_s_omit(&prefix, t, i) + last * prefix_s_omit(&prefix, t - 1, i);
                if table.s_omit(t, i) != rec {
                    violations.push(format!("draw {draw}: omitted-sum recurrence at t={t}, i={i}"));
                }
            }
            if table.s_omit(t, c - 1) != prefix_s(&sigma[..c - 1], &prefix, t) {
                violations.push(format!("draw {draw}: last-index recurrence at t={t}"));
            }
        }
        let weighted: Rational = (0..c).map(|i| &sigma[i] * table.s_omit(c - 1, i)).sum();
        if weighted != table.sigma_product() * int(c as i64) {
            violations.push(format!("draw {draw}: sum sigma_i s(c-1,c,i) != c prod sigma"));
        }
        for t in 1..c {
            let f = kernel_value(&table, &e, t);
            if !f.is_positive() {
                violations.push(format!("draw {draw}: F({t},{c}) not positive"));
            }
            let rec = prefix_kernel(&sigma[..c - 1], &prefix, &e[..c - 1], t)
                + last * prefix_kernel(&sigma[..c - 1], &prefix, &e[..c - 1], t - 1)
                + last * &e[c - 1] * prefix_s(&sigma[..c - 1], &prefix, t - 1);
            if f != rec {
                violations.push(format!("draw {draw}: F recurrence at t={t}"));
            }
        }
    }
    let pass = violations.is_empty();
    report(
        pass,
        "symmetric-function identities",
        &format!(
            "1000 draws ({subset_checked} against subset enumeration), {} violations{}",
            violations.len(),
            first(&violations)
        ),
    );
    assert!(pass, "{violations:#?}");
}

#[test]
fn sign_equivalence_and_walras() {
    let mut rng = common::rng(0x5eed_0006);
    let mut sign_violations = Vec::new();
    let mut walras_violations = Vec::new();
    for k in 0..500 {
        let c = rng.gen_range(2..=6);
        let gamma = common::random_gamma(&mut rng);
        let econ = common::random_economy(&mut rng, c, gamma);
        let eps = epsilon_for(&econ, DEFAULT_MAX_DENOMINATOR).unwrap();
        assert_eq!(eps.as_rational(), econ.hara.epsilon.exact);
        let poly = build_reduced_z::<Rational>(&econ, &eps).unwrap();
        let (m, n) = (eps.m(), eps.n());
        for j in 0..200 {
            let log_p = -4.0 + 8.0 * j as f64 / 199.0;
            // dyadic probe near the log-spaced point keeps the exact arithmetic small
            let q = ratio((10f64.powf(log_p / n as f64) * 16_777_216.0).round() as i64, 1 << 24);
            let pq = Scalar::sign(&poly.eval(&q));
            let z = Scalar::sign(&excess_demand_x_exact(&econ, &q, m, n).unwrap());
            if pq != z {
                sign_violations.push(format!("economy {k}, q = {q}: sign P = {pq}, sign Zx = {z}"));
            }
        }
        for j in 0..100 {
            let p = 10f64.powf(-3.0 + 6.0 * j as f64 / 99.0);
            let zx = excess_demand_x(&econ, p).unwrap();
            let zy = excess_demand_y(&econ, p).unwrap();
            if (p * zx + zy).abs() > 1e-10 * (1.0 + (p * zx).abs()) {
                walras_violations.push(format!("economy {k}, p = {p}: p Zx + Zy = {}", p * zx + zy));
            }
        }
    }
    let pass = sign_violations.is_empty() && walras_violations.is_empty();
    report(
        pass,
        "sign equivalence and Walras' law",
        &format!(
            "500 economies, {} sign violations, {} Walras violations{}{}",
            sign_violations.len(),
            walras_violations.len(),
            first(&sign_violations),
            first(&walras_violations)
        ),
    );
    assert!(pass);
}

#[test]
fn descartes_bound_and_parity() {
    let mut polys: Vec<SparsePolynomial<Rational>> = vec![reduced(&toda_walsh())];
    for c in 2..=6 {
        polys.extend(gamma_range_economies(c).iter().map(reduced));
    }
    polys.extend(phase_grid().iter().map(|s| reduced(&s.economy().unwrap())));
    polys.extend(threshold_economies().iter().map(reduced));

    let mut checked = 0;
    let mut skipped = 0;
    let mut violations = Vec::new();
    for (k, poly) in polys.iter().enumerate() {
        let report = isolate_positive_roots(poly, DEFAULT_ROOT_TOL).unwrap();
        if report.roots.iter().any(|r| r.multiplicity != Multiplicity::Simple) {
            skipped += 1;
            continue;
        }
        checked += 1;
        let count = report.roots.len();
        let bound = descartes_sign_changes(poly);
        if count > bound || (bound - count) % 2 != 0 {
            violations.push(format!("polynomial {k}: {count} roots, {bound} sign changes"));
        }
    }
    let pass = violations.is_empty();
    report(
        pass,
        "Descartes bound and parity",
        &format!(
            "{checked} polynomials with simple roots ({skipped} with multiple roots skipped), {} violations",
            violations.len()
        ),
    );
    assert!(pass, "{violations:#?}");
}
