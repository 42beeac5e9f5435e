//! Grid checks of the inequalities behind the zero-counting argument for
//! `f_a(z) = F_a(−z)`.
//!
//! Every check records one [`CheckPoint`] per inequality and parameter
//! point. The margin is the slack left after subtracting the rounding bound,
//! so a non-negative margin certifies the inequality at that point.
//! Parameters outside a check's hypotheses are listed as inapplicable, not
//! as failures.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::constants::septic_polynomial;
use crate::criteria::lemma4_point;
use crate::series::SeriesFamily;
use crate::zerocount::{min_modulus_on_circle, rho_radius};
use crate::{Error, Result};

const U: f64 = f64::EPSILON / 2.0;

/// Smallest `a` for which the cubic tail estimate beats `min |S_2| = 1`.
pub const ROUCHE_MIN_A: f64 = 3.16259;
/// Lower end of the parameter range assumed by the `ρ_j` zero-count argument.
pub const LEMMA3_MIN_A: f64 = 3.56;
pub const LEMMA6_MIN_A: f64 = 3.0;
pub const LEMMA6_MAX_K: usize = 30;
/// Sample points per interval in [`check_positivity_interval`].
pub const POSITIVITY_GRID: usize = 2048;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckPoint {
    pub check: String,
    pub params: BTreeMap<String, f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub error_bound: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Inapplicable {
    pub params: BTreeMap<String, f64>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaCheckResult {
    pub lemma: String,
    /// Parameter points that met the hypotheses and were checked.
    pub grid_points: usize,
    pub points: Vec<CheckPoint>,
    pub failures: Vec<CheckPoint>,
    /// Smallest margin over all points; `None` when nothing was checked.
    pub worst_margin: Option<f64>,
    pub inapplicable: Vec<Inapplicable>,
}

impl LemmaCheckResult {
    fn new(lemma: &str) -> Self {
        LemmaCheckResult {
            lemma: lemma.into(),
            grid_points: 0,
            points: Vec::new(),
            failures: Vec::new(),
            worst_margin: None,
            inapplicable: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// `lhs > rhs`, up to `err`.
    fn greater(&mut self, check: &str, params: &BTreeMap<String, f64>, lhs: f64, rhs: f64, err: f64) {
        self.push(check, params, lhs, rhs, err, lhs - rhs - err);
    }

    /// `lhs ≥ rhs`, failing only when `lhs` is certainly below `rhs`.
    fn at_least(&mut self, check: &str, params: &BTreeMap<String, f64>, lhs: f64, rhs: f64, err: f64) {
        self.push(check, params, lhs, rhs, err, lhs - rhs + err);
    }

    /// `lhs ≤ rhs`, up to `err`.
    fn at_most(&mut self, check: &str, params: &BTreeMap<String, f64>, lhs: f64, rhs: f64, err: f64) {
        self.push(check, params, lhs, rhs, err, rhs - lhs - err);
    }

    fn push(&mut self, check: &str, params: &BTreeMap<String, f64>, lhs: f64, rhs: f64, err: f64, margin: f64) {
        // NaN margins count as failures.
        let margin = if margin.is_nan() { f64::NEG_INFINITY } else { margin };
        let p = CheckPoint {
            check: check.into(),
            params: params.clone(),
            lhs,
            rhs,
            error_bound: err,
            margin,
        };
        if margin < 0.0 {
            self.failures.push(p.clone());
        }
        self.worst_margin = Some(self.worst_margin.map_or(margin, |w| w.min(margin)));
        self.points.push(p);
    }

    fn skip(&mut self, params: BTreeMap<String, f64>, reason: String) {
        self.inapplicable.push(Inapplicable { params, reason });
    }

    /// Concatenate results of the same check.
    pub fn merge(mut self, mut other: LemmaCheckResult) -> Self {
        self.grid_points += other.grid_points;
        self.inapplicable.append(&mut other.inapplicable);
        self.absorb(other);
        self
    }

    /// Take over the points of `other` without counting its parameters.
    fn absorb(&mut self, other: LemmaCheckResult) {
        self.failures.extend(other.failures);
        self.points.extend(other.points);
        self.worst_margin = match (self.worst_margin, other.worst_margin) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        };
    }
}

fn params(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// `lo, lo + h, …, hi` with `steps ≥ 1` intervals.
pub fn linear_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let steps = steps.max(1);
    (0..=steps)
        .map(|i| {
            if i == steps {
                hi
            } else {
                lo + (hi - lo) * i as f64 / steps as f64
            }
        })
        .collect()
}

fn f_a(a: f64) -> Result<SeriesFamily> {
    Ok(SeriesFamily::euler_f(a)?.alternating())
}

/// `min |S_2| = 1` on `|z| = a²+1` whenever `q_2 ∈ [3, 4)`, together with
/// the discriminant and vertex facts of the quadratic `ξ(t)`.
pub fn check_lemma2(a_grid: &[f64]) -> Result<LemmaCheckResult> {
    let mut out = LemmaCheckResult::new("lemma2");
    for &a in a_grid {
        let p = params(&[("a", a)]);
        if !(a > 1.0) {
            out.skip(p, "a must exceed 1".into());
            continue;
        }
        let f = f_a(a)?;
        let q2 = f.quotients()?.q(2);
        if !(3.0..4.0).contains(&q2) {
            out.skip(p, format!("q_2 = {q2} is outside [3, 4)"));
            continue;
        }
        out.grid_points += 1;
        let m = min_modulus_on_circle(&f, Some(2), a * a + 1.0, 512)?;
        out.at_most("min |S_2| - 1", &p, (m.numeric - 1.0).abs(), 1e-8, m.error_bound);
        let disc = q2 * (q2 - 1.0).powi(2) * (q2 - 4.0);
        out.greater("-discriminant", &p, -disc, 0.0, 16.0 * U * disc.abs());
        let tv = (1.0 + q2) / 4.0;
        out.at_least("vertex t_v", &p, tv, 1.0, 4.0 * U * tv);
    }
    Ok(out)
}

/// `(a²+1)²/((a+1)(a³+1)) · (a⁴+1)/(a⁴−a²)`.
pub fn rouche_bound_closed_form(a: f64) -> f64 {
    let a2 = a * a;
    let a4 = a2 * a2;
    (a2 + 1.0).powi(2) / ((a + 1.0) * (a2 * a + 1.0)) * (a4 + 1.0) / (a4 - a2)
}

/// The geometric bound on `|R_3|` over `|z| = a²+1` stays below 1.
pub fn check_rouche_gap(a_grid: &[f64]) -> Result<LemmaCheckResult> {
    let mut out = LemmaCheckResult::new("rouche");
    let septic = septic_polynomial();
    for &a in a_grid {
        let p = params(&[("a", a)]);
        if !(a > ROUCHE_MIN_A) {
            out.skip(p, format!("a must exceed {ROUCHE_MIN_A}"));
            continue;
        }
        out.grid_points += 1;
        let f = f_a(a)?;
        let r = a * a + 1.0;
        let bound = f.tail_bound(3, r)?;
        let err = 64.0 * U * bound;
        out.at_most("tail bound", &p, bound, 1.0, err);
        let closed = rouche_bound_closed_form(a);
        out.at_most(
            "tail bound vs closed form (rel)",
            &p,
            ((bound - closed) / closed).abs(),
            1e-9,
            0.0,
        );
        // The bound is below 1 exactly when the septic is positive.
        let s = septic.eval(a);
        out.greater("septic sign agrees", &p, s.signum() * (1.0 - bound).signum(), 0.0, 0.0);
        let mut worst: f64 = 0.0;
        for i in 0..256 {
            let z = Complex64::from_polar(r, std::f64::consts::PI * i as f64 / 255.0);
            let full = f.evaluate(z, 1e-15)?;
            let s2 = f.section_eval(2, z);
            worst = worst.max((full.value - s2.value).norm() - full.abs_error_bound - s2.abs_error_bound);
        }
        out.at_most("sampled max |R_3| <= bound", &p, worst, bound, err);
    }
    Ok(out)
}

/// The two sides of the sufficient inequality for `ρ_j`, built from the
/// quotients `q(n)`.
pub fn lemma3_sides(q: impl Fn(usize) -> f64, j: usize) -> (f64, f64) {
    let s1 = q(j + 1).sqrt();
    let lead = q(j - 1) * q(j) * s1;
    let lhs = lead * (2.0 - 2.0 * q(j) * s1 + q(j) * q(j + 1));
    let first = 1.0 / (1.0 - 1.0 / (q(j - 2) * q(j - 1) * q(j) * s1));
    let second =
        q(j - 1) * q(j) * q(j) / (q(j + 2) * q(j + 2) * q(j + 3)) / (1.0 - 1.0 / (s1 * q(j + 2) * q(j + 3) * q(j + 4)));
    let third = lead * (q(j) / q(j + 2) - 1.0);
    (lhs, first + second + third)
}

/// Lemma-3 estimates for `f_a` at one `a` and `j` in `j_range`.
pub fn check_lemma3_inequalities(a: f64, j_range: (usize, usize)) -> Result<LemmaCheckResult> {
    let (j_lo, j_hi) = j_range;
    if j_lo < 4 || j_hi > 40 || j_lo > j_hi {
        return Err(Error::Domain(format!(
            "j range must lie in [4, 40], got [{j_lo}, {j_hi}]"
        )));
    }
    let mut out = LemmaCheckResult::new("lemma3");
    if !(a > LEMMA3_MIN_A) {
        out.skip(params(&[("a", a)]), format!("a must exceed {LEMMA3_MIN_A}"));
        return Ok(out);
    }
    let qv = f_a(a)?.quotients()?;
    let q = |n: usize| qv.q(n);
    for j in j_lo..=j_hi {
        let p = params(&[("a", a), ("j", j as f64)]);
        out.grid_points += 1;
        let (lhs, rhs) = lemma3_sides(q, j);
        out.greater("estimate at rho_j", &p, lhs, rhs, 64.0 * U * (lhs.abs() + rhs.abs()));
        let s1 = q(j + 1).sqrt();
        let tj = q(j) * s1 / 4.0;
        out.greater("vertex t_j", &p, tj, 1.0, 8.0 * U * tj);
        let psi1 = 2.0 - 2.0 * q(j) * s1 + q(j) * q(j + 1);
        out.greater("psi_j(1)", &p, psi1, 0.0, 16.0 * U * q(j) * q(j + 1));
        let r1 = 1.0 / (q(j - 2) * q(j - 1) * q(j) * s1);
        out.at_most("inner majorant ratio", &p, r1, 1.0, 8.0 * U);
        let r2 = 1.0 / (s1 * q(j + 2) * q(j + 3) * q(j + 4));
        out.at_most("outer majorant ratio", &p, r2, 1.0, 8.0 * U);
    }
    Ok(out)
}

/// The `j → ∞` form of the Lemma-3 estimate with every `q_n` replaced by
/// `a`. It holds exactly for `a > 2.17…`, so `a = 2` fails.
pub fn check_lemma3_limit(a: f64) -> Result<LemmaCheckResult> {
    if !(a > 1.0) {
        return Err(Error::Domain(format!("a must exceed 1, got {a}")));
    }
    let mut out = LemmaCheckResult::new("lemma3_limit");
    out.grid_points = 1;
    let sa = a.sqrt();
    let lhs = a * a * sa * (2.0 - 2.0 * a * sa + a * a);
    let rhs = 2.0 / (1.0 - 1.0 / (a * a * a * sa));
    out.greater(
        "limiting estimate",
        &params(&[("a", a)]),
        lhs,
        rhs,
        64.0 * U * (lhs.abs() + rhs.abs()),
    );
    Ok(out)
}

/// Lemma-3 estimates over a grid of `a`, each with the limiting form.
pub fn check_lemma3_grid(a_grid: &[f64], j_range: (usize, usize)) -> Result<LemmaCheckResult> {
    let mut out = LemmaCheckResult::new("lemma3");
    for &a in a_grid {
        out = out.merge(check_lemma3_inequalities(a, j_range)?);
        if a > LEMMA3_MIN_A {
            out.absorb(check_lemma3_limit(a)?);
        }
    }
    Ok(out)
}

/// Logarithm of the term `ρ^j / (q_2^(j−1) ⋯ q_j)` in the normalized variable.
fn log_term(ln_q: &[f64], ln_rho: f64, j: usize) -> f64 {
    j as f64 * ln_rho - (2..=j).map(|i| (j + 1 - i) as f64 * ln_q[i]).sum::<f64>()
}

/// `(−1)^k f_a(ρ_k)` divided by the largest term, with its error bound, at
/// any `a > 1`. No hypothesis is enforced.
pub fn lemma6_sign_margin(a: f64, k: usize) -> Result<(f64, f64)> {
    if k < 2 {
        return Err(Error::Domain(format!("k must be at least 2, got {k}")));
    }
    let f = f_a(a)?;
    let qv = f.quotients()?;
    let ln_q: Vec<f64> = (0..=k + 1).map(|n| if n < 2 { 0.0 } else { qv.ln_q(n) }).collect();
    let rho = rho_radius(&f, k)?;
    let scale = log_term(&ln_q, rho.ln(), k);
    let r = f.evaluate_scaled(Complex64::new(rho * f.normalizing_scale(), 0.0), scale, 1e-15)?;
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok((sign * r.value.re, r.abs_error_bound))
}

/// `ν_k` exactly as displayed, for `k ≥ 3`.
pub fn nu_k(q: impl Fn(usize) -> f64, k: usize) -> f64 {
    let s = q(k + 1).sqrt();
    let (qm, qk) = (q(k - 1), q(k));
    -1.0 + qm * qk * s - 2.0 * qm * qk * qk * q(k + 1) + qm * qk * qk * q(k + 1) * s + qm * qk * qk * s / q(k + 2)
        - qm * qk * qk / (q(k + 2) * q(k + 2) * q(k + 3))
}

/// `μ_k`: the seven signed terms around index `k` at `ρ_k`, negative
/// indices dropped, divided by the `k`-th term.
pub fn mu_k(a: f64, k: usize) -> Result<f64> {
    let qv = f_a(a)?.quotients()?;
    let ln_q: Vec<f64> = (0..=k + 4).map(|n| if n < 2 { 0.0 } else { qv.ln_q(n) }).collect();
    let ln_rho: f64 = (2..=k).map(|n| ln_q[n]).sum::<f64>() + 0.5 * ln_q[k + 1];
    let top = log_term(&ln_q, ln_rho, k);
    let mut s = 0.0;
    for j in k.saturating_sub(3)..=k + 3 {
        let sign = if (j + k).is_multiple_of(2) { 1.0 } else { -1.0 };
        s += sign * (log_term(&ln_q, ln_rho, j) - top).exp();
    }
    Ok(s)
}

/// Sign alternation of `f_a` at the radii `ρ_k`, `k = 2..=k_max`, together
/// with the lower bound `μ_k`, its reduced form `ν_k` and the final quintic
/// step.
pub fn check_lemma6(a_grid: &[f64], k_max: usize) -> Result<LemmaCheckResult> {
    if !(2..=LEMMA6_MAX_K).contains(&k_max) {
        return Err(Error::Domain(format!(
            "k_max must lie in [2, {LEMMA6_MAX_K}], got {k_max}"
        )));
    }
    let mut out = LemmaCheckResult::new("lemma6");
    for &a in a_grid {
        if !(a >= LEMMA6_MIN_A) {
            out.skip(params(&[("a", a)]), format!("a must be at least {LEMMA6_MIN_A}"));
            continue;
        }
        let qv = f_a(a)?.quotients()?;
        let q = |n: usize| qv.q(n);
        for k in 2..=k_max {
            let p = params(&[("a", a), ("k", k as f64)]);
            out.grid_points += 1;
            let (v, err) = lemma6_sign_margin(a, k)?;
            out.greater("(-1)^k f(rho_k)", &p, v, 0.0, err);
            let mu = mu_k(a, k)?;
            let mu_err = 64.0 * U * (k as f64 + 8.0);
            out.greater("mu_k", &p, mu, 0.0, mu_err);
            out.greater("(-1)^k f(rho_k) >= mu_k", &p, v, mu, err + mu_err);
            if k >= 3 {
                let nu = nu_k(q, k);
                let nu_err = 64.0 * U * q(k - 1) * q(k).powi(2) * q(k + 1).powf(1.5);
                out.greater("nu_k", &p, nu, 0.0, nu_err);
                // μ_k reduced by the (k−3)-th term is ν_k.
                let ln_q: Vec<f64> = (0..=k + 1).map(|n| if n < 2 { 0.0 } else { qv.ln_q(n) }).collect();
                let ln_rho: f64 = (2..=k).map(|n| ln_q[n]).sum::<f64>() + 0.5 * ln_q[k + 1];
                let ratio = (log_term(&ln_q, ln_rho, k) - log_term(&ln_q, ln_rho, k - 3)).exp();
                let rel = (mu * ratio - nu).abs() / nu.abs().max(1.0);
                out.at_most("mu_k vs nu_k (rel)", &p, rel, 1e-9, 0.0);
            }
            out.greater("q_k / q_(k+2) >= 0.8", &p, q(k) / q(k + 2), 0.8, 4.0 * U);
            let t = q(k + 1).sqrt();
            let fin = q(k) * q(k + 1) * (t - 2.0) + 1.8 * t - 2.0 / 9.0;
            out.greater("final quintic step", &p, fin, 0.0, 32.0 * U * q(k) * q(k + 1) * t);
        }
    }
    Ok(out)
}

/// Positivity of `f_a` and its sections on `[0, a+1]`, on a
/// [`POSITIVITY_GRID`]-point grid, plus the term chain at `x = a+1`.
pub fn check_positivity_interval(a_grid: &[f64], n_list: &[usize]) -> Result<LemmaCheckResult> {
    let mut out = LemmaCheckResult::new("positivity");
    for &a in a_grid {
        if !(a > 1.0) {
            out.skip(params(&[("a", a)]), "a must exceed 1".into());
            continue;
        }
        out.grid_points += 1;
        let f = f_a(a)?;
        let xs = linear_grid(0.0, a + 1.0, POSITIVITY_GRID - 1);
        let mut worst = (f64::INFINITY, 0.0, 0.0);
        for &x in &xs {
            let r = f.evaluate(Complex64::new(x, 0.0), 1e-15)?;
            if r.value.re - r.abs_error_bound < worst.0 - worst.1 {
                worst = (r.value.re, r.abs_error_bound, x);
            }
        }
        out.greater(
            "f_a(x) > 0",
            &params(&[("a", a), ("x", worst.2)]),
            worst.0,
            0.0,
            worst.1,
        );
        for &n in n_list {
            let mut worst = (f64::INFINITY, 0.0, 0.0);
            for &x in &xs {
                let r = f.section_eval(n, Complex64::new(x, 0.0));
                if r.value.re - r.abs_error_bound < worst.0 - worst.1 {
                    worst = (r.value.re, r.abs_error_bound, x);
                }
            }
            let p = params(&[("a", a), ("n", n as f64), ("x", worst.2)]);
            out.greater("S_n(x) > 0", &p, worst.0, 0.0, worst.1);
        }
        // 1 ≥ x/(a+1) > x²/((a+1)(a²+1)) > … at x = a+1.
        let x = a + 1.0;
        let mut t = 1.0;
        for k in 1..=30 {
            let next = t * x / (a.powi(k) + 1.0);
            let p = params(&[("a", a), ("k", k as f64)]);
            if k == 1 {
                out.at_most("term chain t_1 <= t_0", &p, next, t, 0.0);
            } else {
                out.greater("term chain t_(k-1) > t_k", &p, t, next, 8.0 * U * k as f64 * t);
            }
            t = next;
        }
    }
    Ok(out)
}

/// Cubic-section algebra at `samples` random `a ∈ (3.6, 4.6)`: the sign of
/// `K(y_1)` against the reduced inequality, the auxiliary inequality, the
/// ordering of the critical points, and the octic factorization.
pub fn check_lemma4_algebra(samples: usize, seed: u64) -> Result<LemmaCheckResult> {
    if samples < 10 {
        return Err(Error::Domain(format!("need at least 10 samples, got {samples}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = LemmaCheckResult::new("lemma4_algebra");
    for _ in 0..samples {
        let a: f64 = rng.gen_range(3.6..4.6);
        out.grid_points += 1;
        let pt = lemma4_point(a)?;
        let p = params(&[("a", a)]);
        let scale = pt.b * pt.b * pt.c * pt.c;
        let err_r = 64.0 * U * scale;
        let err_k = 64.0 * U * (1.0 + pt.y1.powi(3));
        // K(y_1) ≤ 0 exactly when the reduced form is ≥ 0; near the common
        // zero both are rounding noise.
        let agree = if pt.reduced.abs() <= err_r || pt.k_at_y1.abs() <= err_k {
            0.0
        } else {
            -(pt.k_at_y1.signum() * pt.reduced.signum())
        };
        out.greater("sign K(y1) vs reduced", &p, agree, 0.0, 0.0);
        out.greater("auxiliary", &p, pt.auxiliary, 0.0, 64.0 * U * pt.b * pt.c * pt.c);
        out.greater("y1 > 1", &p, pt.y1, 1.0, 16.0 * U * pt.y1);
        out.greater("b > y1", &p, pt.b, pt.y1, 16.0 * U * pt.b);
        out.greater("y2 > b", &p, pt.y2, pt.b, 16.0 * U * pt.y2);
        let factor = (a + 1.0).powi(2) * (a * a + 1.0);
        let rel = (pt.reduced * factor - pt.octic).abs() / (pt.octic.abs() + err_r * factor).max(1e-300);
        out.at_most("octic = reduced (a+1)^2 (a^2+1) (rel)", &p, rel, 1e-9, 0.0);
    }
    Ok(out)
}
