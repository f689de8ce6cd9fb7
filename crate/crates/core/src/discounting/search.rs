//! One-dimensional global search over discount factors.
//!
//! Two independent routes are kept on purpose:
//! - [`grid_golden`] samples the objective on a dense grid and polishes the
//!   best local minima by golden-section search (used for costs);
//! - [`slope_roots`] samples the exact derivative of `δ ↦ D_δ(x)` and bisects
//!   its sign changes (used for maxmin intervals).

/// Grid nodes per continuous piece.
pub const DEFAULT_GRID_NODES: usize = 2001;

/// Number of grid local minima polished by golden-section search.
const MAX_REFINED: usize = 8;

/// Golden-section search for a minimum of `f` on `[a, b]`.
///
/// Returns `(x_min, f_min)`.
pub fn golden_section(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if b - a <= 1e-14 {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

fn grid(a: f64, b: f64, nodes: usize) -> Vec<f64> {
    let nodes = nodes.max(2);
    let step = (b - a) / (nodes - 1) as f64;
    (0..nodes)
        .map(|i| if i == nodes - 1 { b } else { a + step * i as f64 })
        .collect()
}

/// Best-effort global minimum of `f` on `[a, b]`: grid scan followed by
/// golden-section refinement inside the brackets of the best local minima.
pub fn grid_golden(f: &impl Fn(f64) -> f64, a: f64, b: f64, nodes: usize) -> (f64, f64) {
    let xs = grid(a, b, nodes);
    let fs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let n = xs.len();

    let mut best = (xs[0], fs[0]);
    for (&x, &v) in xs.iter().zip(&fs) {
        if v < best.1 {
            best = (x, v);
        }
    }

    let mut minima: Vec<usize> = (0..n)
        .filter(|&i| {
            let left = if i > 0 { fs[i - 1] } else { f64::INFINITY };
            let right = if i + 1 < n { fs[i + 1] } else { f64::INFINITY };
            fs[i].is_finite() && fs[i] <= left && fs[i] <= right
        })
        .collect();
    minima.sort_by(|&i, &j| fs[i].total_cmp(&fs[j]).then(i.cmp(&j)));
    minima.dedup_by(|i, j| i.abs_diff(*j) == 1);

    for &i in minima.iter().take(MAX_REFINED) {
        let lo = xs[i.saturating_sub(1)];
        let hi = xs[(i + 1).min(n - 1)];
        let (x, v) = golden_section(f, lo, hi);
        if v < best.1 {
            best = (x, v);
        }
    }
    best
}

fn bisect_root(g: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    // g(lo) < 0 <= g(hi)
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Global minimum of a smooth `f` on `[a, b]` from its derivative `slope`:
/// candidates are the endpoints, every grid node, and every interior critical
/// point where the slope changes sign from negative to non-negative.
pub fn slope_roots(
    f: &impl Fn(f64) -> f64,
    slope: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    nodes: usize,
) -> (f64, f64) {
    let xs = grid(a, b, nodes);
    let gs: Vec<f64> = xs.iter().map(|&x| slope(x)).collect();
    let mut best = (a, f(a));
    let mut consider = |x: f64| {
        let v = f(x);
        if v < best.1 {
            best = (x, v);
        }
    };
    for &x in &xs[1..] {
        consider(x);
    }
    for i in 0..xs.len() - 1 {
        if gs[i] < 0.0 && gs[i + 1] >= 0.0 {
            consider(bisect_root(slope, xs[i], xs[i + 1]));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_vertex() {
        let (x, v) = golden_section(&|x: f64| (x - 0.3).powi(2) + 1.0, 0.0, 1.0);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((v - 1.0).abs() < 1e-14);
    }

    #[test]
    fn grid_golden_finds_global_of_two_wells() {
        let f = |x: f64| ((x - 0.2).powi(2) + 0.01).min((x - 0.8).powi(2));
        let (x, v) = grid_golden(&f, 0.0, 1.0, DEFAULT_GRID_NODES);
        assert!((x - 0.8).abs() < 1e-6);
        assert!(v.abs() < 1e-13);
    }

    #[test]
    fn slope_roots_matches_closed_form() {
        let f = |x: f64| (x - 0.37).powi(2) * 3.0 - 2.0;
        let g = |x: f64| 6.0 * (x - 0.37);
        let (x, v) = slope_roots(&f, &g, 0.0, 0.9, DEFAULT_GRID_NODES);
        assert!((x - 0.37).abs() < 1e-12);
        assert!((v + 2.0).abs() < 1e-15);
    }

    #[test]
    fn endpoints_are_candidates() {
        let f = |x: f64| -x;
        assert_eq!(grid_golden(&f, 0.1, 0.6, 11).0, 0.6);
        assert_eq!(slope_roots(&f, &|_| -1.0, 0.1, 0.6, 11).0, 0.6);
    }
}
