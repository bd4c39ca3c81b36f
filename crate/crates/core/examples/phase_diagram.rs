// Symmetric CRRA economies at gamma = 3 on a coarse (alpha, e) grid. Each cell
// shows the exact root count of the cubic; cells where the closed-form sign
// rule predicts something else are marked with `!`.

use hara_eq::certify::{classify_crra_symmetric, direct_count, CrraSymmetricSpec, Verdict};
use hara_eq::num::{int, ratio};

fn main() {
    let steps = 19;
    let mut disagreements = 0;
    println!("rows: alpha = 1/20 .. 19/20, columns: e = 1/20 .. 19/20");
    for i in 1..=steps {
        let mut line = String::new();
        for j in 1..=steps {
            let spec = CrraSymmetricSpec::new(ratio(i, 20), ratio(j, 20), int(3)).unwrap();
            let class = classify_crra_symmetric(&spec).unwrap();
            let count = direct_count(&spec.economy().unwrap()).unwrap();
            let cell = match count.report.roots.len() {
                1 if count.report.has_multiple_root() => 'c',
                k => char::from_digit(k as u32, 10).unwrap_or('?'),
            };
            let predicted_three = class.sign_rule == Verdict::ThreeEquilibria;
            let mark = if predicted_three != (count.report.roots.len() == 3) {
                disagreements += 1;
                '!'
            } else {
                ' '
            };
            line.push(cell);
            line.push(mark);
        }
        println!("{:>5}  {line}", format!("{i}/20"));
    }
    println!("{disagreements} cells where the sign rule and the root count differ");
}
