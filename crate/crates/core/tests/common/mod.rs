//! Deterministic random economies shared by the integration tests.
#![allow(dead_code)]

use hara_eq::model::{ConsumerType, Economy, HaraParams};
use hara_eq::num::{int, ratio, Rational, Value};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational in `[lo, hi]` with denominator `den`.
pub fn rational_in(rng: &mut ChaCha8Rng, lo: f64, hi: f64, den: i64) -> Rational {
    let a = (lo * den as f64).ceil() as i64;
    let b = (hi * den as f64).floor() as i64;
    ratio(rng.gen_range(a..=b), den)
}

/// Weight `sigma` spread over roughly `[1/4, 4]` on a log scale.
pub fn random_sigma(rng: &mut ChaCha8Rng) -> Rational {
    let den = rng.gen_range(1..=8);
    let r = rational_in(rng, 1.0, 4.0, den);
    if rng.gen_bool(0.5) {
        r
    } else {
        r.recip()
    }
}

pub fn random_endowment(rng: &mut ChaCha8Rng) -> Rational {
    rational_in(rng, 0.1, 1.0, 10)
}

/// `gamma = p/q` uniform over the fractions in `(1, c/(c-1)]` with
/// `p <= 64`, so `1/gamma` is used exactly by the reduction.
pub fn random_thm1_gamma(rng: &mut ChaCha8Rng, c: usize) -> Rational {
    loop {
        let q: i64 = rng.gen_range(1..=53);
        let p_max = ((q * c as i64) / (c as i64 - 1)).min(64);
        if p_max <= q {
            continue;
        }
        return ratio(rng.gen_range(q + 1..=p_max), q);
    }
}

/// Types with exact rational sigma; `b` is zero with probability 1/2.
pub fn random_economy(rng: &mut ChaCha8Rng, c: usize, gamma: Rational) -> Economy {
    let b = if rng.gen_bool(0.5) {
        int(0)
    } else {
        rational_in(rng, 0.0, 2.0, 4)
    };
    let a = rational_in(rng, 0.5, 2.0, 4);
    let hara = HaraParams::new(Value::new(a), Value::new(b), Value::new(gamma)).unwrap();
    let types = (0..c)
        .map(|_| {
            ConsumerType::with_sigma(
                Value::new(random_endowment(rng)),
                Value::new(random_endowment(rng)),
                Value::new(random_sigma(rng)),
                &hara,
            )
            .unwrap()
        })
        .collect();
    Economy::new(hara, types).unwrap()
}

/// Any exactly-representable `gamma > 1` with numerator at most 12.
pub fn random_gamma(rng: &mut ChaCha8Rng) -> Rational {
    let q: i64 = rng.gen_range(1..=6);
    let p: i64 = rng.gen_range(q + 1..=12.max(q + 1));
    ratio(p, q)
}

/// Two types at `gamma = 3` with `beta1 < beta2`, `e1 <= e2`, `f1 >= f2`.
pub fn random_ordered_pair(rng: &mut ChaCha8Rng) -> Economy {
    let hara = HaraParams::new(
        Value::new(rational_in(rng, 0.5, 2.0, 4)),
        Value::from(0),
        Value::from(3),
    )
    .unwrap();
    let (mut s1, mut s2) = (random_sigma(rng), random_sigma(rng));
    while s1 == s2 {
        s2 = random_sigma(rng);
    }
    if s1 > s2 {
        std::mem::swap(&mut s1, &mut s2);
    }
    let (mut e1, mut e2) = (random_endowment(rng), random_endowment(rng));
    if e1 > e2 {
        std::mem::swap(&mut e1, &mut e2);
    }
    let (mut f1, mut f2) = (random_endowment(rng), random_endowment(rng));
    if f1 < f2 {
        std::mem::swap(&mut f1, &mut f2);
    }
    let types = vec![
        ConsumerType::with_sigma(Value::new(e1), Value::new(f1), Value::new(s1), &hara).unwrap(),
        ConsumerType::with_sigma(Value::new(e2), Value::new(f2), Value::new(s2), &hara).unwrap(),
    ];
    Economy::new(hara, types).unwrap()
}

/// `steps` equally spaced exact values in `[lo, hi]`.
pub fn grid(lo: Rational, hi: Rational, steps: usize) -> Vec<Rational> {
    let width = (&hi - &lo) / int(steps as i64 - 1);
    (0..steps).map(|k| &lo + &width * int(k as i64)).collect()
}
