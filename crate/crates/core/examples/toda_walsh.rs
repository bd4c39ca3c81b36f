// Three equilibria in a two-type CRRA economy, found exactly and confirmed by
// the independent price scan.
//
//     cargo run --example toda_walsh

use hara_eq::certify::{direct_count, CrraSymmetricSpec};
use hara_eq::num::{fmt_rational, int, ratio, Scalar};
use hara_eq::oracle::{agree, scan, DEFAULT_POINTS, DEFAULT_SCAN_RANGE};

fn main() {
    let spec = CrraSymmetricSpec::new(ratio(1, 7), ratio(1, 49), int(3)).expect("valid parameters");
    let econ = spec.economy().expect("valid economy");
    for (i, t) in econ.types.iter().enumerate() {
        println!(
            "type {}: e = {}, f = {}, beta = {}, sigma = {}",
            i + 1,
            fmt_rational(&t.e.exact),
            fmt_rational(&t.f.exact),
            fmt_rational(&t.beta.exact),
            fmt_rational(&t.sigma.exact)
        );
    }

    let count = direct_count(&econ).expect("reduction applies");
    println!("P(q) = {}", count.polynomial);
    let n = count.epsilon.n();
    for root in &count.report.roots {
        let q = root.q_exact.as_ref().expect("rational root");
        println!("q = {:>3}  p = q^{n} = {}", fmt_rational(q), fmt_rational(&q.powu(n)));
    }

    let oracle = scan(&econ, DEFAULT_SCAN_RANGE.0, DEFAULT_SCAN_RANGE.1, DEFAULT_POINTS).expect("valid range");
    let agreement = agree(&count.report, &oracle, 1e-9);
    println!("oracle prices {:?}, agree = {}", oracle.prices, agreement.agree);
}
