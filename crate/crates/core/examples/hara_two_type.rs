// Two HARA types at gamma = 3 with patience and endowments ordered the same
// way. Raising the risk-tolerance intercept `b` past the closed-form bound
// switches the certificate; the AD - BC test certifies uniqueness below it.

use hara_eq::certify::{ad_minus_bc, certify_thm2, hara_threshold};
use hara_eq::model::{ConsumerType, Economy, HaraParams};
use hara_eq::num::{fmt_rational, ratio, rational_to_f64, Rational, Value};

fn main() {
    let hara = HaraParams::new(Value::from(1), Value::from(0), Value::from(3)).unwrap();
    let types = vec![
        ConsumerType::new(Value::from(1), Value::from(1), Value::from(1), &hara).unwrap(),
        ConsumerType::new(Value::from(1), Value::from(1), Value::from(8), &hara).unwrap(),
    ];
    let base = Economy::new(hara, types).unwrap();
    let bound = hara_threshold(&base).unwrap();
    println!("closed-form bound on b: {}", fmt_rational(&bound));

    for k in 0..=6 {
        let b = &bound * ratio(k, 4);
        let econ = base.with_b(Value::new(b.clone())).unwrap();
        let cert = certify_thm2(&econ).unwrap();
        let adbc: Rational = ad_minus_bc(&econ).unwrap();
        println!(
            "b = {:>6.3}  {:<18} {:<12} AD-BC = {:.4}",
            rational_to_f64(&b),
            cert.rule.to_string(),
            cert.verdict.to_string(),
            rational_to_f64(&adbc)
        );
    }
}
