// The sign-scan oracle works on excess demand directly. A scan range that is
// too narrow hides equilibria, and the comparison reports them.

use hara_eq::certify::{direct_count, CrraSymmetricSpec};
use hara_eq::num::{int, ratio};
use hara_eq::oracle::{agree, scan};

fn main() {
    let econ = CrraSymmetricSpec::new(ratio(1, 7), ratio(1, 49), int(3))
        .unwrap()
        .economy()
        .unwrap();
    let count = direct_count(&econ).unwrap();

    for (lo, hi) in [(1e-6, 1e6), (0.5, 2.0)] {
        let oracle = scan(&econ, lo, hi, 1000).unwrap();
        let agreement = agree(&count.report, &oracle, 1e-9);
        println!(
            "range [{lo:e}, {hi:e}]: {} brackets, {} grid points, agree = {}",
            oracle.brackets.len(),
            oracle.grid_points,
            agreement.agree
        );
        for d in &agreement.discrepancies {
            println!("  {d:?}");
        }
    }
}
