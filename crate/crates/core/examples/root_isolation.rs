// Exact positive-root isolation on sparse rational polynomials, including a
// rational triple root and an irrational pair.

use hara_eq::num::Rational;
use hara_eq::polynomial::SparsePolynomial;
use hara_eq::roots::{descartes_sign_changes, isolate_positive_roots, DEFAULT_ROOT_TOL};

fn main() {
    let cases = [
        ("Toda-Walsh cubic", "0:2/7 1:-1 2:1 3:-2/7"),
        ("(q-1)^3", "0:-1 1:3 2:-3 3:1"),
        ("(q^2 - 2)(q^3 + 1)", "0:-2 2:1 3:-2 5:1"),
        ("no positive roots", "0:1 4:3 9:2"),
    ];
    for (name, text) in cases {
        let poly: SparsePolynomial<Rational> = text.parse().unwrap();
        let report = isolate_positive_roots(&poly, DEFAULT_ROOT_TOL).unwrap();
        println!(
            "{name}: {} sign changes, {} ({} distinct)",
            descartes_sign_changes(&poly),
            report.classification,
            report.roots.len()
        );
        for r in &report.roots {
            let exact = r.q_exact.as_ref().map(|q| format!(" = {q}")).unwrap_or_default();
            println!("  q = {:.15}{exact}  {:?}", r.q, r.multiplicity);
        }
    }
}
