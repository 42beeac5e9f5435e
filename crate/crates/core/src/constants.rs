//! Critical constants by bisection on monotone predicates.
//!
//! Every bisection first probes its predicate on a 32-point grid and refuses
//! to run if the probe shows more than one transition.

use serde::Serialize;

use crate::criteria::{
    self, degree20_polynomial, octic_polynomial, s6_numerator_polynomial, sign_test_fa, sign_test_theta, Verdict,
};
use crate::polyroots::{largest_real_root, RealPolynomial};
use crate::{Error, Result};

pub const PROBE_POINTS: usize = 32;
pub const MAX_BISECTIONS: usize = 60;
/// Largest section index handled by [`c_n`] unless a larger cap is passed.
pub const DEFAULT_CN_CAP: usize = 15;

/// Lower and upper bounds for the critical `a` of `F_a` derived from the
/// cubic and sixth sections.
pub const REFERENCE_LOWER: f64 = 3.90155;
pub const REFERENCE_UPPER: f64 = 3.91719;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub predicate: String,
    pub evaluations: usize,
    /// `true` when the predicate holds at `lo` and fails at `hi`.
    pub reversed: bool,
}

impl Bracket {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Bisection for the transition of a monotone boolean predicate on
/// `[lo, hi]`, to width `tol` or [`MAX_BISECTIONS`] halvings.
pub fn certified_bisection<P>(name: &str, lo: f64, hi: f64, tol: f64, mut pred: P) -> Result<Bracket>
where
    P: FnMut(f64) -> Result<bool>,
{
    if !(tol > 0.0) {
        return Err(Error::InvalidTolerance(tol));
    }
    let mut scan = Vec::with_capacity(PROBE_POINTS);
    for i in 0..PROBE_POINTS {
        let x = if i + 1 == PROBE_POINTS {
            hi
        } else {
            lo + (hi - lo) * i as f64 / (PROBE_POINTS - 1) as f64
        };
        scan.push((x, pred(x)?));
    }
    let changes = scan.windows(2).filter(|w| w[0].1 != w[1].1).count();
    if changes > 1 {
        return Err(Error::MonotonicityViolation {
            predicate: name.to_string(),
            scan,
        });
    }
    if changes == 0 {
        return Err(Error::Precondition(format!(
            "predicate `{name}` does not change on [{lo}, {hi}]"
        )));
    }
    let i = scan.windows(2).position(|w| w[0].1 != w[1].1).expect("one change");
    let at_lo = scan[i].1;
    let (mut a, mut b) = (scan[i].0, scan[i + 1].0);
    let mut evaluations = PROBE_POINTS;
    for _ in 0..MAX_BISECTIONS {
        if b - a <= tol {
            break;
        }
        let m = 0.5 * (a + b);
        evaluations += 1;
        if pred(m)? == at_lo {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(Bracket {
        lo: a,
        hi: b,
        predicate: name.to_string(),
        evaluations,
        reversed: at_lo,
    })
}

/// The minimum is negative beyond its rounding error. Near a tangency at the
/// end of the interval the unrounded minimum is positive but below the noise,
/// so a plain `<= 0` flickers.
fn certainly_nonpositive(r: &criteria::CriterionReport) -> bool {
    r.witness_value.expect("sign tests carry a witness") < -r.error_bound
}

fn theta_predicate(s: f64, n: Option<usize>) -> Result<bool> {
    let r = sign_test_theta(s.sqrt(), n, criteria::DEFAULT_GRID, 0.0)?;
    Ok(certainly_nonpositive(&r))
}

/// `q∞`: the least `s = a²` for which `g_a(−x)` takes a non-positive value
/// on `(a, a³)`.
pub fn q_infinity(tol: f64) -> Result<Bracket> {
    if !(tol >= 1e-10) {
        return Err(Error::InvalidTolerance(tol));
    }
    certified_bisection("min g_sqrt(s)(-x) <= 0", 3.0, 4.0, tol, |s| theta_predicate(s, None))
}

/// `c_n`: the least `s = a²` for which the `n`-th section of `g_a` is
/// real-rooted, for `2 ≤ n ≤ DEFAULT_CN_CAP`.
pub fn c_n(n: usize, tol: f64) -> Result<Bracket> {
    c_n_capped(n, tol, DEFAULT_CN_CAP)
}

pub fn c_n_capped(n: usize, tol: f64, cap: usize) -> Result<Bracket> {
    if n < 2 || n > cap {
        return Err(Error::Domain(format!("c_n needs 2 <= n <= {cap}, got {n}")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidTolerance(tol));
    }
    let name = format!("min S_{n}(-x, g_sqrt(s)) <= 0");
    certified_bisection(&name, 2.5, 4.5, tol, |s| theta_predicate(s, Some(n)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalEstimate {
    pub bracket: Bracket,
    /// Numerical estimate, not a proof.
    pub rigorous: bool,
    pub within_reference_interval: bool,
    pub reference_lower: f64,
    pub reference_upper: f64,
}

/// Transition of the `F_a` sign test in `a`, searched on `[3.85, 4.05]`.
pub fn critical_a(tol: f64) -> Result<CriticalEstimate> {
    critical_a_in(tol, 3.85, 4.05)
}

pub fn critical_a_in(tol: f64, lo: f64, hi: f64) -> Result<CriticalEstimate> {
    if !(tol >= 1e-8) {
        return Err(Error::InvalidTolerance(tol));
    }
    let bracket = certified_bisection("min F_a(-x) <= 0", lo, hi, tol, |a| {
        let r = sign_test_fa(a, criteria::DEFAULT_GRID, 0.0)?;
        Ok(certainly_nonpositive(&r))
    })?;
    let within = bracket.lo >= REFERENCE_LOWER - 1e-4 && bracket.hi <= REFERENCE_UPPER + 1e-4;
    Ok(CriticalEstimate {
        bracket,
        rigorous: false,
        within_reference_interval: within,
        reference_lower: REFERENCE_LOWER,
        reference_upper: REFERENCE_UPPER,
    })
}

/// `a⁷ − 3a⁶ − a⁴ − a³ − 3a² − 1`.
pub fn septic_polynomial() -> RealPolynomial {
    RealPolynomial::from_descending(&[1.0, -3.0, 0.0, -1.0, -1.0, -3.0, 0.0, -1.0]).expect("finite")
}

/// `b¹¹ − 2b¹⁰ + 2b⁷ − b⁴ + 2b³ − 2b² − 2`.
pub fn b_polynomial() -> RealPolynomial {
    RealPolynomial::from_descending(&[1.0, -2.0, 0.0, 0.0, 2.0, 0.0, 0.0, -1.0, 2.0, -2.0, 0.0, -2.0]).expect("finite")
}

/// `45 (t⁵ − 2t⁴ + 1.8t − 2/9)`, scaled to integer coefficients.
pub fn quintic_polynomial() -> RealPolynomial {
    RealPolynomial::from_descending(&[45.0, -90.0, 0.0, 0.0, 81.0, -10.0]).expect("finite")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdRow {
    pub name: String,
    pub polynomial: String,
    pub root: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deviation: Option<f64>,
    /// How the root is compared with the reference.
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub passes: Option<bool>,
}

fn row(name: &str, poly: &str, root: f64, reference: f64) -> ThresholdRow {
    let dev = (root - reference).abs();
    ThresholdRow {
        name: name.into(),
        polynomial: poly.into(),
        root,
        reference: Some(reference),
        deviation: Some(dev),
        check: "abs(root - reference) <= 1e-4".into(),
        passes: Some(dev <= 1e-4),
    }
}

/// Every explicit threshold recomputed as the largest real root of its
/// defining polynomial.
pub fn thresholds() -> Result<Vec<ThresholdRow>> {
    let tol = 1e-13;
    let largest = |p: &RealPolynomial| -> Result<f64> {
        largest_real_root(p, tol)?.ok_or_else(|| Error::InternalConsistency("no real root".into()))
    };
    let septic = largest(&septic_polynomial())?;
    let b_root = largest(&b_polynomial())?;
    let quintic = largest(&quintic_polynomial())?;
    let octic = largest(&octic_polynomial())?;
    let deg20 = largest(&degree20_polynomial())?;
    let numerator = largest(&s6_numerator_polynomial())?;
    Ok(vec![
        row("septic", "a^7 - 3a^6 - a^4 - a^3 - 3a^2 - 1", septic, 3.16258),
        ThresholdRow {
            name: "b_polynomial".into(),
            polynomial: "b^11 - 2b^10 + 2b^7 - b^4 + 2b^3 - 2b^2 - 2".into(),
            root: b_root,
            reference: Some(1.47),
            deviation: Some((b_root - 1.47).abs()),
            check: "largest root <= reference".into(),
            passes: Some(b_root <= 1.47),
        },
        row("quintic", "t^5 - 2t^4 + 1.8t - 2/9", quintic, 1.57685),
        row(
            "octic",
            "a^8 - 8a^7 + 15a^6 + 12a^5 - 21a^4 - 28a^3 - 43a^2 - 40a - 16",
            octic,
            REFERENCE_LOWER,
        ),
        row(
            "degree20",
            "-162a^20 + 513a^19 + ... + 729a + 463",
            deg20,
            REFERENCE_UPPER,
        ),
        ThresholdRow {
            name: "s6_numerator".into(),
            polynomial: "exact numerator of S_6(z_0), -162a^20 + 513a^19 + 567a^18 - 450a^17 + ...".into(),
            root: numerator,
            reference: None,
            deviation: None,
            check: "informational".into(),
            passes: None,
        },
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub a: f64,
    pub min_value: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureScan {
    pub rows: Vec<ScanRow>,
    /// Number of verdict changes, ignoring `Boundary` rows.
    pub transitions: usize,
    /// At most one change, from `NotInLP` to `InLP`.
    pub monotone: bool,
}

/// Sign-test minimum of `F_a` on `steps` equally spaced `a` in
/// `[a_lo, a_hi]`.
pub fn conjecture_scan(a_lo: f64, a_hi: f64, steps: usize) -> Result<ConjectureScan> {
    if !(a_lo > 1.0) || !(a_hi > a_lo) {
        return Err(Error::Domain(format!("need 1 < a_lo < a_hi, got [{a_lo}, {a_hi}]")));
    }
    if steps < 10 {
        return Err(Error::Domain(format!("steps must be at least 10, got {steps}")));
    }
    let mut rows = Vec::with_capacity(steps);
    for i in 0..steps {
        let a = a_lo + (a_hi - a_lo) * i as f64 / (steps - 1) as f64;
        let r = sign_test_fa(a, criteria::DEFAULT_GRID, 0.0)?;
        rows.push(ScanRow {
            a,
            min_value: r.witness_value.unwrap_or(f64::NAN),
            verdict: r.verdict,
        });
    }
    let decided: Vec<Verdict> = rows
        .iter()
        .map(|r| r.verdict)
        .filter(|v| matches!(v, Verdict::InLP | Verdict::NotInLP))
        .collect();
    let transitions = decided.windows(2).filter(|w| w[0] != w[1]).count();
    let backwards = decided
        .windows(2)
        .any(|w| w[0] == Verdict::InLP && w[1] == Verdict::NotInLP);
    Ok(ConjectureScan {
        rows,
        transitions,
        monotone: transitions <= 1 && !backwards,
    })
}

/// Section constants of the partial theta function to 256 bits.
///
/// A double-precision bracket seeds Newton's method on the double-root
/// system `S = ∂S/∂x = 0` in `(a, x)`. The value `s̃ = a²` is then confirmed
/// by showing that the local minimum of `S_n(−x)` near the double root is
/// positive at `s̃ − δ` and negative at `s̃ + δ`.
pub mod precise {
    use serde::Serialize;

    use super::c_n_capped;
    use crate::criteria::{sign_test_theta, DEFAULT_GRID};
    use crate::real::{Mp256, Real};
    use crate::{Error, Result};

    /// Half-width of the certified interval: `2^-196`.
    pub const CERT_EXP: i32 = -196;

    #[derive(Debug, Clone, Serialize)]
    pub struct PreciseConstant {
        pub n: usize,
        /// Decimal value to 60 significant digits.
        pub value: String,
        /// Location of the double root in `x`.
        pub x: String,
        #[serde(skip)]
        pub s: Mp256,
        /// Certified enclosure is `[s − radius, s + radius]`.
        pub radius: f64,
        pub certified: bool,
    }

    /// `Σ_k c_k (−x)^k a^(−k²)` with weights `c_k` given by `w(k)`.
    fn weighted(n: usize, a: &Mp256, x: &Mp256, w: impl Fn(i64) -> i64) -> Mp256 {
        let inv_a = Mp256::one() / a.clone();
        let mut sum = Mp256::zero();
        // t_k = (−x)^k a^(−k²), built from t_k = t_(k−1) · (−x) · a^(1−2k).
        let mut t = Mp256::one();
        let inv_a2 = inv_a.clone() * inv_a.clone();
        let mut step = inv_a.clone();
        for k in 0..=n as i64 {
            if k > 0 {
                t = t * (-x.clone()) * step.clone();
                step = step * inv_a2.clone();
            }
            let c = w(k);
            if c != 0 {
                sum = sum + t.clone() * Mp256::from_i64(c);
            }
        }
        sum
    }

    struct Jet {
        s: Mp256,
        sx: Mp256,
        sa: Mp256,
        sxx: Mp256,
        sxa: Mp256,
    }

    fn jet(n: usize, a: &Mp256, x: &Mp256) -> Jet {
        let s = weighted(n, a, x, |_| 1);
        let xs = weighted(n, a, x, |k| k);
        let x2s = weighted(n, a, x, |k| k * (k - 1));
        let as_ = weighted(n, a, x, |k| -k * k);
        let xas = weighted(n, a, x, |k| -k * k * k);
        Jet {
            s,
            sx: xs / x.clone(),
            sa: as_ / a.clone(),
            sxx: x2s / (x.clone() * x.clone()),
            sxa: xas / (a.clone() * x.clone()),
        }
    }

    /// Local minimum of `S_n(−x)` near `x0` at fixed `a`.
    fn local_min(n: usize, a: &Mp256, x0: &Mp256) -> (Mp256, Mp256) {
        let mut x = x0.clone();
        for _ in 0..40 {
            let j = jet(n, a, &x);
            let dx = j.sx / j.sxx;
            x = x - dx.clone();
            if dx.abs() < Mp256::from_f64(1e-70) * x.abs() {
                break;
            }
        }
        let v = weighted(n, a, &x, |_| 1);
        (x, v)
    }

    pub fn c_n_precise(n: usize) -> Result<PreciseConstant> {
        c_n_precise_capped(n, super::DEFAULT_CN_CAP)
    }

    pub fn c_n_precise_capped(n: usize, cap: usize) -> Result<PreciseConstant> {
        if n == 3 && cap >= 3 {
            return Ok(cubic());
        }
        let br = c_n_capped(n, 1e-12, cap)?;
        let s0 = br.midpoint();
        let seed = sign_test_theta(s0.sqrt(), Some(n), DEFAULT_GRID, 0.0)?;
        let mut a = Mp256::from_f64(s0).sqrt();
        let mut x = Mp256::from_f64(seed.witness_x.expect("witness"));
        for _ in 0..12 {
            let j = jet(n, &a, &x);
            // Solve [[S_a, S_x], [S_xa, S_xx]] (da, dx) = (S, S_x).
            let det = j.sa.clone() * j.sxx.clone() - j.sx.clone() * j.sxa.clone();
            let da = (j.s.clone() * j.sxx.clone() - j.sx.clone() * j.sx.clone()) / det.clone();
            let dx = (j.sa.clone() * j.sx.clone() - j.sxa.clone() * j.s.clone()) / det;
            a = a - da.clone();
            x = x - dx;
            if da.abs() < Mp256::from_f64(1e-72) {
                break;
            }
        }
        let s = a.clone() * a.clone();
        if (s.to_f64() - s0).abs() > 1e-9 {
            return Err(Error::InternalConsistency(format!(
                "Newton left the bracket for c_{n}: {} vs {s0}",
                s.to_f64()
            )));
        }
        let delta = Mp256::one().ldexp(CERT_EXP);
        let below = (s.clone() - delta.clone()).sqrt();
        let above = (s.clone() + delta.clone()).sqrt();
        let (_, v_below) = local_min(n, &below, &x);
        let (_, v_above) = local_min(n, &above, &x);
        let certified = !v_below.is_sign_negative() && v_below > Mp256::zero() && v_above.is_sign_negative();
        Ok(PreciseConstant {
            n,
            value: s.to_decimal(60),
            x: x.to_decimal(30),
            s,
            radius: delta.to_f64(),
            certified,
        })
    }

    /// `S_3(−a³t) = (1 − t)(t² − (a² − 1)t + 1)`, real-rooted exactly when
    /// `a² ≥ 3`. The three roots merge at `t = 1`, where the double-root
    /// system is singular, so the value is taken from the factorization.
    fn cubic() -> PreciseConstant {
        let s = Mp256::from_i64(3);
        PreciseConstant {
            n: 3,
            value: s.to_decimal(60),
            x: (s.clone() * s.clone().sqrt()).to_decimal(30),
            s,
            radius: 0.0,
            certified: true,
        }
    }

    /// `true` when the certified enclosures of `lo` and `hi` are disjoint
    /// with `lo` below `hi`.
    pub fn strictly_below(lo: &PreciseConstant, hi: &PreciseConstant) -> bool {
        let r = |c: &PreciseConstant| {
            if c.radius == 0.0 {
                Mp256::zero()
            } else {
                Mp256::one().ldexp(CERT_EXP)
            }
        };
        lo.certified && hi.certified && lo.s.clone() + r(lo) < hi.s.clone() - r(hi)
    }
}
