// Uniqueness holds for every curvature 1 < gamma <= c/(c-1). Walks gamma
// across that window for a three-type economy and prints the certificate next
// to an exact root count.

use hara_eq::certify::{certify_thm1, direct_count};
use hara_eq::model::{ConsumerType, Economy, HaraParams};
use hara_eq::num::{fmt_rational, ratio, Value};
use hara_eq::reduction::{epsilon_for, theorem1_exponent_check, DEFAULT_MAX_DENOMINATOR};

fn economy(gamma: Value) -> Economy {
    let hara = HaraParams::new(Value::from(1), Value::new(ratio(1, 4)), gamma).unwrap();
    let types = [(1, 9, 1), (4, 4, 3), (8, 1, 9)]
        .into_iter()
        .map(|(e, f, sigma)| {
            ConsumerType::with_sigma(
                Value::new(ratio(e, 10)),
                Value::new(ratio(f, 10)),
                Value::from(sigma),
                &hara,
            )
            .unwrap()
        })
        .collect();
    Economy::new(hara, types).unwrap()
}

fn main() {
    println!("{:>6} {:>10} {:>12} {:>6}", "gamma", "ladder", "certificate", "roots");
    for (p, q) in [(11, 10), (5, 4), (7, 5), (3, 2), (8, 5), (2, 1), (3, 1)] {
        let econ = economy(Value::new(ratio(p, q)));
        let eps = epsilon_for(&econ, DEFAULT_MAX_DENOMINATOR).unwrap();
        let cert = certify_thm1(&econ);
        let count = direct_count(&econ).unwrap();
        println!(
            "{:>6} {:>10} {:>12} {:>6}",
            fmt_rational(&econ.hara.gamma.exact),
            theorem1_exponent_check(&eps, econ.c()),
            cert.verdict.to_string(),
            count.report.roots.len()
        );
    }
}
