// Reads an economy from its text form and prints the full solve report, as
// the `solve` subcommand does.

use hara_eq::cli::{format_solve, parse_economy, solve, Mode};
use hara_eq::oracle::DEFAULT_SCAN_RANGE;

const ECONOMY: &str = r#"
a = 1
b = "1/2"
gamma = "7/5"

[[types]]
e = "1/4"
f = 1
beta = 2

[[types]]
e = 1
f = "1/4"
sigma = "3/2"

[[types]]
e = "1/2"
f = "1/2"
beta = 1
"#;

fn main() {
    let loaded = parse_economy(ECONOMY).expect("well-formed economy");
    let report = solve(&loaded, Mode::Rational, DEFAULT_SCAN_RANGE).expect("solvable");
    print!("{}", format_solve(&report));
    println!("exit code would be {}", report.exit_code());
}
