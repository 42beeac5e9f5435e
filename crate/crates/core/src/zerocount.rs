//! Zero counting in disks by the argument principle.
//!
//! Radii passed to [`count_zeros_in_disk`] and returned by [`rho_radius`]
//! live in the normalized variable `u = z / p_1`, in which the series reads
//! `Σ ±u^k / (q_2^(k-1) ⋯ q_k)`. [`min_modulus_on_circle`] works in the
//! family's own variable `z`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::optimize::grid_golden;
use crate::polyroots::{complex_roots, section_polynomial};
use crate::series::SeriesFamily;
use crate::{Error, Result};

/// Largest number of circle samples before giving up on certification.
pub const SAMPLE_CAP: usize = 1 << 20;
const REL_TOL: f64 = 1e-14;
const RETRIES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WindingResult {
    /// Radius in `u` actually used (after any perturbation).
    pub radius: f64,
    pub count: usize,
    /// Distance of the winding sum from the nearest integer, in turns.
    pub residual: f64,
    pub min_modulus_seen: f64,
    /// Largest evaluation error bound met on the circle.
    pub max_error_bound: f64,
    pub samples_used: usize,
    pub certified: bool,
}

/// `ρ_j = q_2 ⋯ q_j · √q_(j+1)`, with `ρ_1 = √q_2`.
pub fn rho_radius(family: &SeriesFamily, j: usize) -> Result<f64> {
    if j < 1 {
        return Err(Error::Domain("rho_j needs j >= 1".into()));
    }
    let q = family.quotients()?;
    if let Some(top) = q.max_index() {
        if j + 1 > top {
            return Err(Error::InsufficientData(format!(
                "rho_{j} needs q_{} but only {top} quotients exist",
                j + 1
            )));
        }
    }
    let log: f64 = (2..=j).map(|n| q.ln_q(n)).sum::<f64>() + 0.5 * q.ln_q(j + 1);
    Ok(log.exp())
}

struct Sample {
    value: Complex64,
    error: f64,
}

fn sample(family: &SeriesFamily, scale: f64, theta: f64) -> Result<Sample> {
    let r = family.evaluate(Complex64::from_polar(scale, theta), REL_TOL)?;
    Ok(Sample {
        value: r.value,
        error: r.abs_error_bound,
    })
}

fn winding_once(family: &SeriesFamily, r: f64, base: usize) -> Result<WindingResult> {
    let scale = r * family.normalizing_scale();
    let mut n = base.max(8);
    let mut pts: Vec<Sample> = (0..n)
        .map(|k| sample(family, scale, TAU * k as f64 / n as f64))
        .collect::<Result<_>>()?;
    loop {
        let mut total = 0.0;
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let d = (pts[(k + 1) % n].value / pts[k].value).arg();
            total += d;
            max_step = max_step.max(d.abs());
        }
        let turns = total / TAU;
        let count = turns.round();
        let residual = (turns - count).abs();
        let min_modulus_seen = pts.iter().map(|s| s.value.norm()).fold(f64::INFINITY, f64::min);
        let max_error_bound = pts.iter().map(|s| s.error).fold(0.0, f64::max);
        let separated = min_modulus_seen > 10.0 * max_error_bound;
        if !separated {
            return Err(Error::ZeroOnCircle {
                radius: r,
                min_modulus: min_modulus_seen,
                error_bound: max_error_bound,
            });
        }
        let smooth = max_step < PI / 2.0 && residual < 0.05;
        if smooth || 2 * n > SAMPLE_CAP {
            return Ok(WindingResult {
                radius: r,
                count: count.max(0.0) as usize,
                residual,
                min_modulus_seen,
                max_error_bound,
                samples_used: n,
                certified: smooth && count >= 0.0,
            });
        }
        let mut next = Vec::with_capacity(2 * n);
        for (k, s) in pts.into_iter().enumerate() {
            next.push(s);
            next.push(sample(family, scale, TAU * (2 * k + 1) as f64 / (2 * n) as f64)?);
        }
        pts = next;
        n *= 2;
    }
}

/// Zeros of the family inside `|u| < r`, by accumulating argument increments
/// on the circle with sample doubling from `base_samples` up to
/// [`SAMPLE_CAP`]. When `|f|` on the circle is not clearly above the
/// evaluation error, the radius is perturbed by `±1e-6` relative up to five
/// times before failing with [`Error::ZeroOnCircle`].
pub fn count_zeros_in_disk(family: &SeriesFamily, r: f64, base_samples: usize) -> Result<WindingResult> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("radius must be positive, got {r}")));
    }
    let mut last = None;
    for attempt in 0..=RETRIES {
        let factor = match attempt {
            0 => 1.0,
            k => 1.0 + 1e-6 * k.div_ceil(2) as f64 * if k % 2 == 1 { 1.0 } else { -1.0 },
        };
        match winding_once(family, r * factor, base_samples) {
            Err(e @ Error::ZeroOnCircle { .. }) => last = Some(e),
            other => return other,
        }
    }
    Err(last.expect("at least one attempt"))
}

/// Roots of the degree-`n` section (normalized variable) with `|u| < r`,
/// located numerically.
pub fn section_roots_inside(family: &SeriesFamily, n: usize, r: f64) -> Result<usize> {
    let s = section_polynomial(family, n)?;
    Ok(complex_roots(&s.poly)?.iter().filter(|u| u.norm() < r).count())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CircleMinimum {
    /// Radius in the family's variable `z`.
    pub radius: f64,
    /// Angle of the numerical minimizer in `[0, π]`.
    pub theta: f64,
    /// Grid-and-golden minimum of `|f|`.
    pub numeric: f64,
    /// Closed-form minimum for the second section on `|z| = q_2 p_1`.
    pub analytic: Option<f64>,
    pub error_bound: f64,
}

impl CircleMinimum {
    /// The analytic value when available, otherwise the numeric one.
    pub fn value(&self) -> f64 {
        self.analytic.unwrap_or(self.numeric)
    }
}

/// `ξ(t) = |S_2|²` on `|u| = q_2` at `t = cos θ`, for the alternating
/// normalized section `1 − u + u²/q_2`.
pub fn xi(q2: f64, t: f64) -> f64 {
    4.0 * q2 * t * t - 2.0 * q2 * (1.0 + q2) * t + 1.0 - 2.0 * q2 + 2.0 * q2 * q2
}

/// Minimum of `|f|` (or of the section `S_n`) on `|z| = r`.
pub fn min_modulus_on_circle(
    family: &SeriesFamily,
    n_section: Option<usize>,
    r: f64,
    grid: usize,
) -> Result<CircleMinimum> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("radius must be positive, got {r}")));
    }
    if grid < 64 {
        return Err(Error::Domain(format!("grid must be at least 64, got {grid}")));
    }
    let mut err: f64 = 0.0;
    let mut failure = None;
    let mut eval = |theta: f64| -> f64 {
        let z = Complex64::from_polar(r, theta);
        let res = match n_section {
            Some(n) => Ok(family.section_eval(n, z)),
            None => family.evaluate(z, REL_TOL),
        };
        match res {
            Ok(v) => {
                err = err.max(v.abs_error_bound);
                v.value.norm()
            }
            Err(e) => {
                failure.get_or_insert(e);
                f64::INFINITY
            }
        }
    };
    // Real coefficients: |f(z̄)| = |f(z)|, so [0, π] suffices.
    let m = grid_golden(&mut eval, 0.0, PI, grid, 1e-12);
    if let Some(e) = failure {
        return Err(e);
    }
    let mut analytic = None;
    if n_section == Some(2) && family.is_alternating() {
        if let Ok(q) = family.quotients() {
            let q2 = q.q(2);
            let natural = q2 * family.normalizing_scale();
            if ((r - natural) / natural).abs() < 1e-12 {
                let tv = (1.0 + q2) / 4.0;
                let t = tv.clamp(-1.0, 1.0);
                analytic = Some(xi(q2, t).min(xi(q2, -1.0)).sqrt());
            }
        }
    }
    Ok(CircleMinimum {
        radius: r,
        theta: m.x,
        numeric: m.value,
        analytic,
        error_bound: err,
    })
}

/// Common modulus `√((a+1)(a²+1))` of the complex zeros of `S_2` of the
/// alternating Euler-type function.
pub fn s2_root_modulus(a: f64) -> Result<f64> {
    if !(a > 1.0) {
        return Err(Error::Domain(format!("a must exceed 1, got {a}")));
    }
    let a2 = a * a + 1.0;
    let disc = a2 * (a * a - 4.0 * a - 3.0);
    if disc >= 0.0 {
        return Err(Error::RealRoots { discriminant: disc });
    }
    let m = ((a + 1.0) * a2).sqrt();
    if !(m < a2) {
        return Err(Error::InternalConsistency(format!(
            "root modulus {m} is not inside a^2+1 = {a2}"
        )));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rho_examples() {
        let f = SeriesFamily::euler_f(4.0).unwrap().alternating();
        assert_relative_eq!(
            rho_radius(&f, 2).unwrap(),
            3.4 * (65.0f64 / 17.0).sqrt(),
            max_relative = 1e-13
        );
        assert_relative_eq!(
            rho_radius(&f, 3).unwrap(),
            3.4 * (65.0 / 17.0) * (257.0f64 / 65.0).sqrt(),
            max_relative = 1e-13
        );
        let g = SeriesFamily::partial_theta(2.0).unwrap();
        assert_relative_eq!(rho_radius(&g, 2).unwrap(), 8.0, max_relative = 1e-14);
        assert_relative_eq!(rho_radius(&g, 1).unwrap(), 2.0, max_relative = 1e-14);
    }

    #[test]
    fn constant_has_no_zeros() {
        let one = SeriesFamily::custom(vec![0.0]).unwrap();
        let w = count_zeros_in_disk(&one, 5.0, 256).unwrap();
        assert_eq!(w.count, 0);
        assert!(w.certified);
        let m = min_modulus_on_circle(&one, None, 5.0, 64).unwrap();
        assert_eq!(m.value(), 1.0);
    }

    #[test]
    fn polynomial_zero_count() {
        // (u - 1)(u - 3) = 3 - 4u + u²
        let p = SeriesFamily::custom(vec![3f64.ln(), 4f64.ln(), 0.0])
            .unwrap()
            .alternating();
        assert_eq!(count_zeros_in_disk(&p, 2.0, 256).unwrap().count, 1);
        assert_eq!(count_zeros_in_disk(&p, 5.0, 256).unwrap().count, 2);
    }

    #[test]
    fn lemma_two_circle() {
        let f = SeriesFamily::euler_f(4.0).unwrap().alternating();
        let m = min_modulus_on_circle(&f, Some(2), 17.0, 256).unwrap();
        assert_relative_eq!(m.numeric, 1.0, epsilon = 1e-12);
        assert_relative_eq!(m.analytic.unwrap(), 1.0, epsilon = 1e-13);
    }

    #[test]
    fn root_modulus() {
        assert_relative_eq!(s2_root_modulus(4.0).unwrap(), 85f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(
            s2_root_modulus(3.6).unwrap(),
            (4.6f64 * 13.96).sqrt(),
            max_relative = 1e-15
        );
        assert!(matches!(s2_root_modulus(5.0), Err(Error::RealRoots { .. })));
    }
}
