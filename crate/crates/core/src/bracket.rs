//! Log-grid sign scanning and bisection on real functions of a positive
//! variable. Shared by the equilibrium oracle and the float root fallback.

/// Result of scanning `f` over a log-spaced grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanOutcome {
    /// Sign-change brackets; a zero-width bracket marks an exact grid zero.
    pub brackets: Vec<(f64, f64)>,
    pub roots: Vec<f64>,
    /// Grid size of the final pass.
    pub grid_points: usize,
    /// Number of grid doublings performed.
    pub refinements: u32,
    /// Whether doubling the grid changed the bracket count.
    pub count_changed: bool,
}

pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let (llo, lhi) = (lo.ln(), hi.ln());
    let last = (points - 1) as f64;
    (0..points)
        .map(|k| match k {
            0 => lo,
            k if k + 1 == points => hi,
            k => (llo + (lhi - llo) * k as f64 / last).exp(),
        })
        .collect()
}

/// Bisection on a sign-change bracket down to relative width `rel_tol`
/// (or until the midpoint is no longer representable).
pub fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, rel_tol: f64) -> f64 {
    let mut flo = f(lo);
    if flo == 0.0 {
        return lo;
    }
    if f(hi) == 0.0 {
        return hi;
    }
    for _ in 0..2000 {
        if hi - lo <= rel_tol * lo.abs().max(hi.abs()) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn single_pass<F: Fn(f64) -> f64>(f: &F, grid: &[f64]) -> (Vec<(f64, f64)>, bool) {
    let values: Vec<f64> = grid.iter().map(|&x| f(x)).collect();
    let mut brackets = Vec::new();
    let mut last: Option<(f64, f64)> = None;
    for (&x, &v) in grid.iter().zip(&values) {
        if v == 0.0 {
            brackets.push((x, x));
            last = None;
            continue;
        }
        if let Some((xl, vl)) = last {
            if (vl > 0.0) != (v > 0.0) {
                brackets.push((xl, x));
            }
        }
        last = Some((x, v));
    }
    let suspicious = values.windows(3).any(|w| {
        let (a, b, c) = (w[0], w[1], w[2]);
        let same_sign = (a > 0.0 && b > 0.0 && c > 0.0) || (a < 0.0 && b < 0.0 && c < 0.0);
        let local_min = b.abs() <= a.abs() && b.abs() <= c.abs();
        same_sign && local_min && b.abs() < (c - 2.0 * b + a).abs()
    });
    (brackets, suspicious)
}

/// Scans `f` on `points` log-spaced nodes in `[lo, hi]`, doubling the grid
/// density up to `max_doublings` times while a near-touching local minimum of
/// `|f|` suggests a missed pair of crossings, then bisects every bracket.
pub fn log_scan<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    points: usize,
    max_doublings: u32,
    rel_tol: f64,
) -> ScanOutcome {
    let mut n = points.max(2);
    let (mut brackets, mut suspicious) = single_pass(f, &log_grid(lo, hi, n));
    let first_count = brackets.len();
    let mut refinements = 0;
    while suspicious && refinements < max_doublings {
        n = 2 * n - 1;
        refinements += 1;
        (brackets, suspicious) = single_pass(f, &log_grid(lo, hi, n));
    }
    let roots = brackets
        .iter()
        .map(|&(l, h)| if l == h { l } else { bisect(f, l, h, rel_tol) })
        .collect();
    ScanOutcome {
        count_changed: brackets.len() != first_count,
        brackets,
        roots,
        grid_points: n,
        refinements,
    }
}
