// Elementary symmetric sums of the type weights, the leave-one-out sums, and
// the kernel F(t, c) that fixes the sign of every coefficient.

use hara_eq::num::{fmt_rational, int, ratio};
use hara_eq::sympoly::{build_sigma_tables, kernel_value, SigmaVector};

fn main() {
    let sigma = vec![int(1), ratio(1, 2), int(3), ratio(2, 3)];
    let e = vec![ratio(1, 4), int(1), ratio(1, 2), ratio(3, 4)];
    let table = build_sigma_tables(&SigmaVector::new(sigma).unwrap());
    let c = table.c();

    for t in 0..=c {
        let omitted: Vec<String> = (0..c).map(|i| fmt_rational(&table.s_omit(t, i))).collect();
        println!(
            "s({t}) = {:<8} omit-one = [{}]",
            fmt_rational(&table.s(t)),
            omitted.join(", ")
        );
    }
    let weighted = (0..c).fold(int(0), |acc, i| acc + &table.sigma()[i] * table.s_omit(c - 1, i));
    println!(
        "sum sigma_i s(c-1, c, i) = {}  c * prod sigma = {}",
        fmt_rational(&weighted),
        fmt_rational(&(table.sigma_product() * int(c as i64)))
    );
    for t in 1..c {
        println!("F({t}, {c}) = {}", fmt_rational(&kernel_value(&table, &e, t)));
    }
}
