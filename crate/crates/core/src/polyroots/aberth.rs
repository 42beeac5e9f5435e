//! Simultaneous complex root iteration (Aberth–Ehrlich) with starting points
//! taken from the Newton polygon of the coefficient magnitudes.

use num_complex::Complex64;

use crate::{Error, Result};

const MAX_ITER: usize = 2000;

/// `p(z) / p'(z)` and a rounding bound on `|p(z)|` relative to its scale,
/// switching to the reversed polynomial outside the unit disk.
fn newton_ratio(c: &[f64], z: Complex64) -> (Complex64, bool) {
    let n = c.len() - 1;
    let eps = f64::EPSILON;
    if z.norm() <= 1.0 {
        let mut p = Complex64::new(c[n], 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        let mut scale = c[n].abs();
        for k in (0..n).rev() {
            dp = dp * z + p;
            p = p * z + c[k];
            scale = scale * z.norm() + c[k].abs();
        }
        (p / dp, p.norm() <= 4.0 * (n as f64 + 1.0) * eps * scale)
    } else {
        // p(z) = z^n R(y), y = 1/z, R(y) = Σ c_{n-k} y^k.
        let y = z.inv();
        let mut r = Complex64::new(c[0], 0.0);
        let mut dr = Complex64::new(0.0, 0.0);
        let mut scale = c[0].abs();
        for &ck in &c[1..=n] {
            dr = dr * y + r;
            r = r * y + ck;
            scale = scale * y.norm() + ck.abs();
        }
        let denom = r * n as f64 - dr * y;
        (z * r / denom, r.norm() <= 4.0 * (n as f64 + 1.0) * eps * scale)
    }
}

fn initial_guesses(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let pts: Vec<(usize, f64)> = c
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != 0.0)
        .map(|(i, v)| (i, v.abs().ln()))
        .collect();
    // Upper convex hull.
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (i1, y1) = hull[hull.len() - 2];
            let (i2, y2) = hull[hull.len() - 1];
            let cross = (i2 as f64 - i1 as f64) * (p.1 - y1) - (y2 - y1) * (p.0 as f64 - i1 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut z = Vec::with_capacity(n);
    for (e, w) in hull.windows(2).enumerate() {
        let (i, yi) = w[0];
        let (j, yj) = w[1];
        let m = j - i;
        let r = ((yi - yj) / m as f64).exp();
        for k in 0..m {
            let theta = std::f64::consts::TAU * k as f64 / m as f64 + 0.4 + 0.7 * e as f64;
            z.push(Complex64::from_polar(r, theta));
        }
    }
    z
}

/// All complex roots of the polynomial with ascending coefficients `c`
/// (leading coefficient nonzero), with multiplicity. Zero roots coming from
/// vanishing low-order coefficients are returned exactly.
pub(crate) fn roots(c: &[f64]) -> Result<Vec<Complex64>> {
    let lead_zero = c.iter().take_while(|v| **v == 0.0).count();
    let c = &c[lead_zero..];
    let n = c.len() - 1;
    let mut out = vec![Complex64::new(0.0, 0.0); lead_zero];
    if n == 0 {
        return Ok(out);
    }
    if n == 1 {
        out.push(Complex64::new(-c[0] / c[1], 0.0));
        return Ok(out);
    }
    let mut z = initial_guesses(c);
    let mut done = vec![false; n];
    for _ in 0..MAX_ITER {
        if done.iter().all(|&d| d) {
            break;
        }
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (ratio, small) = newton_ratio(c, z[i]);
            if small || !ratio.is_finite() {
                done[i] = true;
                continue;
            }
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    s += (z[i] - z[j]).inv();
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[i] -= w;
            if w.norm() <= 2.0 * f64::EPSILON * z[i].norm() {
                done[i] = true;
            }
        }
    }
    if !done.iter().all(|&d| d) {
        return Err(Error::Conditioning(format!(
            "complex root iteration did not converge in {MAX_ITER} sweeps"
        )));
    }
    out.extend(z);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_roots_of_unity() {
        let r = roots(&[-1.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(r.len(), 3);
        for z in r {
            assert!((z.powi(3) - 1.0).norm() < 1e-13);
        }
    }

    #[test]
    fn widely_scaled_roots() {
        // (x - 1)(x - 1e4)(x - 1e8)
        let (a, b, c) = (1.0, 1e4, 1e8);
        let coeffs = [-a * b * c, a * b + a * c + b * c, -(a + b + c), 1.0];
        let mut r: Vec<f64> = roots(&coeffs).unwrap().iter().map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        for (got, want) in r.iter().zip([a, b, c]) {
            assert!((got - want).abs() < 1e-9 * want);
        }
    }
}
