//! One-dimensional minimization: uniform grid scan, then golden-section
//! search in the best cell.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
    pub evaluations: usize,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Minimize `f` on `[lo, hi]` using `grid ≥ 3` equally spaced samples, then
/// golden-section refinement on the two cells around the best sample until
/// the bracket is narrower than `x_tol`.
pub fn grid_golden<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, grid: usize, x_tol: f64) -> Minimum {
    let grid = grid.max(3);
    let h = (hi - lo) / (grid - 1) as f64;
    let mut best = Minimum {
        x: lo,
        value: f(lo),
        evaluations: 1,
    };
    let mut best_i = 0;
    for i in 1..grid {
        let x = if i == grid - 1 { hi } else { lo + h * i as f64 };
        let v = f(x);
        best.evaluations += 1;
        if v < best.value {
            best.value = v;
            best.x = x;
            best_i = i;
        }
    }
    let mut a = if best_i == 0 { lo } else { lo + h * (best_i - 1) as f64 };
    let mut b = if best_i + 1 >= grid {
        hi
    } else {
        lo + h * (best_i + 1) as f64
    };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    best.evaluations += 2;
    while (b - a).abs() > x_tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        best.evaluations += 1;
        if best.evaluations > 10_000 {
            break;
        }
    }
    for (x, v) in [(c, fc), (d, fd)] {
        if v < best.value {
            best.value = v;
            best.x = x;
        }
    }
    best
}
