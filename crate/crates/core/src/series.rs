//! Taylor coefficients, evaluation and quotient sequences of the studied
//! families.
//!
//! Coefficients of `F_a` behave like `a^(-k²/2)` and overflow binary floating
//! point around `k ≈ 50`, so they are never formed directly. Evaluation runs
//! the term recurrence `t_{k+1} = t_k · z · (a_{k+1}/a_k)` and standalone
//! coefficients are only exposed as logarithms.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Hard cap on the number of terms summed by [`SeriesFamily::evaluate`].
pub const MAX_TERMS: usize = 10_000;

const U: f64 = f64::EPSILON / 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    /// `Σ z^k / Π_{j≤k} (a^j + 1)`
    EulerF,
    /// `Σ z^k a^(-k²)`
    PartialTheta,
    /// `Σ z^k / Π_{j≤k} (a^j - 1)`
    EulerH,
    /// Finite coefficient list given by logarithms.
    Custom,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::EulerF => "eulerF",
            FamilyKind::PartialTheta => "theta",
            FamilyKind::EulerH => "eulerH",
            FamilyKind::Custom => "custom",
        }
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eulerF" => Ok(FamilyKind::EulerF),
            "theta" => Ok(FamilyKind::PartialTheta),
            "eulerH" => Ok(FamilyKind::EulerH),
            other => Err(Error::Domain(format!("unknown family `{other}`"))),
        }
    }
}

/// A power series `Σ a_k z^k` with positive coefficients, optionally read
/// with the sign convention `f(-z)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesFamily {
    kind: FamilyKind,
    a: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    custom_log_coeffs: Option<Vec<f64>>,
    alternating: bool,
}

/// Value of a series together with a bound on everything that was not
/// summed exactly: the truncated tail plus accumulated rounding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: Complex64,
    pub abs_error_bound: f64,
    pub terms_used: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Monotonicity {
    Increasing,
    Constant,
    Decreasing,
    Unknown,
}

/// The quotient sequences `p_n = a_{n-1}/a_n` and `q_n = p_n / p_{n-1}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuotientView {
    pub family: SeriesFamily,
    /// `lim q_n`, when known in closed form.
    pub limit: Option<f64>,
    pub monotonicity: Monotonicity,
}

impl SeriesFamily {
    pub fn new(kind: FamilyKind, a: f64) -> Result<Self> {
        if kind == FamilyKind::Custom {
            return Err(Error::Domain(
                "custom families are built with SeriesFamily::custom".into(),
            ));
        }
        if !(a.is_finite() && a > 1.0) {
            return Err(Error::Domain(format!("{} needs a > 1, got {a}", kind.name())));
        }
        Ok(SeriesFamily {
            kind,
            a,
            custom_log_coeffs: None,
            alternating: false,
        })
    }

    pub fn euler_f(a: f64) -> Result<Self> {
        Self::new(FamilyKind::EulerF, a)
    }

    pub fn partial_theta(a: f64) -> Result<Self> {
        Self::new(FamilyKind::PartialTheta, a)
    }

    pub fn euler_h(a: f64) -> Result<Self> {
        Self::new(FamilyKind::EulerH, a)
    }

    /// A polynomial with coefficients `exp(log_coeffs[k])`.
    pub fn custom(log_coeffs: Vec<f64>) -> Result<Self> {
        if log_coeffs.is_empty() {
            return Err(Error::InsufficientData("no coefficients".into()));
        }
        if log_coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain("log-coefficients must be finite".into()));
        }
        Ok(SeriesFamily {
            kind: FamilyKind::Custom,
            a: f64::NAN,
            custom_log_coeffs: Some(log_coeffs),
            alternating: false,
        })
    }

    /// The same family read as `f(-z)`.
    pub fn alternating(mut self) -> Self {
        self.alternating = true;
        self
    }

    pub fn with_alternating(mut self, alternating: bool) -> Self {
        self.alternating = alternating;
        self
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn is_alternating(&self) -> bool {
        self.alternating
    }

    fn custom_len(&self) -> Option<usize> {
        self.custom_log_coeffs.as_ref().map(Vec::len)
    }

    /// `ln(a_k / a_{k-1})` for `k ≥ 1`.
    pub fn log_ratio(&self, k: usize) -> f64 {
        debug_assert!(k >= 1);
        let a = self.a;
        let kf = k as f64;
        match self.kind {
            FamilyKind::EulerF => -(kf * a.ln() + a.powf(-kf).ln_1p()),
            FamilyKind::PartialTheta => (1.0 - 2.0 * kf) * a.ln(),
            FamilyKind::EulerH => -(kf * a.ln() + (-a.powf(-kf)).ln_1p()),
            FamilyKind::Custom => {
                let c = self.custom_log_coeffs.as_ref().expect("custom");
                if k < c.len() {
                    c[k] - c[k - 1]
                } else {
                    f64::NEG_INFINITY
                }
            }
        }
    }

    /// `a_k / a_{k-1}` for `k ≥ 1`.
    pub fn ratio(&self, k: usize) -> f64 {
        let a = self.a;
        match self.kind {
            FamilyKind::EulerF => 1.0 / (pow_saturating(a, k) + 1.0),
            FamilyKind::EulerH => 1.0 / (pow_saturating(a, k) - 1.0),
            FamilyKind::PartialTheta => {
                let e = 2 * k as i64 - 1;
                if e > i32::MAX as i64 {
                    0.0
                } else {
                    a.powi(-(e as i32))
                }
            }
            FamilyKind::Custom => self.log_ratio(k).exp(),
        }
    }

    /// `ln a_k`, accumulated from log-ratios.
    pub fn coefficient_log(&self, k: usize) -> Result<f64> {
        if let Some(c) = &self.custom_log_coeffs {
            return Ok(c.get(k).copied().unwrap_or(f64::NEG_INFINITY));
        }
        // Neumaier summation keeps the running sum correctly rounded enough
        // that consecutive differences reproduce the ratios.
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for j in 1..=k {
            let x = self.log_ratio(j);
            let t = sum + x;
            if sum.abs() >= x.abs() {
                comp += (sum - t) + x;
            } else {
                comp += (x - t) + sum;
            }
            sum = t;
        }
        Ok(sum + comp)
    }

    fn a0(&self) -> f64 {
        match &self.custom_log_coeffs {
            Some(c) => c[0].exp(),
            None => 1.0,
        }
    }

    /// `p_1 = a_0 / a_1`: the scale taking the normalized variable `u` (with
    /// `a_0 = a_1 = 1`) to the natural variable, `z = u · p_1`.
    pub fn normalizing_scale(&self) -> f64 {
        match self.kind {
            FamilyKind::EulerF => self.a + 1.0,
            FamilyKind::PartialTheta => self.a,
            FamilyKind::EulerH => self.a - 1.0,
            FamilyKind::Custom => match self.custom_len() {
                Some(len) if len < 2 => 1.0,
                _ => (-self.log_ratio(1)).exp(),
            },
        }
    }

    fn signed(&self, z: Complex64) -> Complex64 {
        if self.alternating {
            -z
        } else {
            z
        }
    }

    /// Sum the series at `z` until the geometric majorant of the tail drops
    /// below `rel_tol · max(1, |partial sum|)`.
    pub fn evaluate(&self, z: Complex64, rel_tol: f64) -> Result<EvalResult> {
        if !(rel_tol > 0.0) {
            return Err(Error::InvalidTolerance(rel_tol));
        }
        let w = self.signed(z);
        let absz = z.norm();
        if let Some(len) = self.custom_len() {
            let mut r = self.section_eval(len - 1, z);
            r.terms_used = len;
            return Ok(r);
        }
        let mut t = Complex64::new(self.a0(), 0.0);
        let mut sum = t;
        let mut weighted = 0.0;
        let mut k = 0usize;
        loop {
            let next = t * w * self.ratio(k + 1);
            let rho = absz * self.ratio(k + 2);
            if rho < 1.0 {
                let tail = next.norm() / (1.0 - rho);
                if tail < rel_tol * sum.norm().max(1.0) {
                    let rounding = rounding_bound(weighted, k + 1);
                    return Ok(EvalResult {
                        value: sum,
                        abs_error_bound: tail * (1.0 + 8.0 * U) + rounding,
                        terms_used: k + 1,
                    });
                }
            }
            if k + 1 >= MAX_TERMS {
                let partial = EvalResult {
                    value: sum,
                    abs_error_bound: f64::INFINITY,
                    terms_used: k + 1,
                };
                return Err(Error::Truncation {
                    terms: MAX_TERMS,
                    partial,
                });
            }
            k += 1;
            sum += next;
            weighted += (8 * k) as f64 * next.norm() + sum.norm();
            t = next;
        }
    }

    /// The same sum with every term divided by `exp(log_scale)`. Terms are
    /// formed from their logarithms, so values far beyond the `f64` range can
    /// still be compared in sign.
    pub fn evaluate_scaled(&self, z: Complex64, log_scale: f64, rel_tol: f64) -> Result<EvalResult> {
        if !(rel_tol > 0.0) {
            return Err(Error::InvalidTolerance(rel_tol));
        }
        let w = self.signed(z);
        let absz = w.norm();
        let (ln_r, theta) = if absz > 0.0 {
            (absz.ln(), w.arg())
        } else {
            (f64::NEG_INFINITY, 0.0)
        };
        let last = self.custom_len().map(|l| l - 1).unwrap_or(MAX_TERMS);
        let mut log_coeff = self.coefficient_log(0)?;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut weighted = 0.0;
        for k in 0..=last {
            if k > 0 {
                log_coeff += self.log_ratio(k);
            }
            let lk = if k == 0 {
                log_coeff - log_scale
            } else {
                log_coeff + k as f64 * ln_r - log_scale
            };
            let term = Complex64::from_polar(lk.exp(), k as f64 * theta);
            sum += term;
            weighted += (4.0 + 4.0 * (lk.abs() + log_scale.abs() + log_coeff.abs())) * term.norm() + sum.norm();
            if k == last {
                return Ok(EvalResult {
                    value: sum,
                    abs_error_bound: rounding_bound(weighted, k + 1),
                    terms_used: k + 1,
                });
            }
            let next_mag = (lk + self.log_ratio(k + 1) + ln_r).exp();
            let rho = absz * self.ratio(k + 2);
            if rho < 1.0 {
                let tail = next_mag / (1.0 - rho);
                if tail < rel_tol * sum.norm().max(f64::MIN_POSITIVE) {
                    return Ok(EvalResult {
                        value: sum,
                        abs_error_bound: tail * (1.0 + 8.0 * U) + rounding_bound(weighted, k + 1),
                        terms_used: k + 1,
                    });
                }
            }
        }
        Err(Error::Truncation {
            terms: MAX_TERMS,
            partial: EvalResult {
                value: sum,
                abs_error_bound: f64::INFINITY,
                terms_used: MAX_TERMS,
            },
        })
    }

    /// `S_n(z)`: the first `n + 1` terms, with a rounding bound.
    pub fn section_eval(&self, n: usize, z: Complex64) -> EvalResult {
        let w = self.signed(z);
        let mut t = Complex64::new(self.a0(), 0.0);
        let mut sum = t;
        let mut weighted = 0.0;
        let mut used = 1;
        for k in 1..=n {
            let r = self.ratio(k);
            if r == 0.0 {
                break;
            }
            t = t * w * r;
            sum += t;
            weighted += (8 * k) as f64 * t.norm() + sum.norm();
            used += 1;
        }
        EvalResult {
            value: sum,
            abs_error_bound: rounding_bound(weighted, used),
            terms_used: used,
        }
    }

    /// `S_n(z)`: exact truncated sum of the first `n + 1` terms.
    pub fn evaluate_section(&self, n: usize, z: Complex64) -> Complex64 {
        self.section_eval(n, z).value
    }

    /// Upper bound on `Σ_{k ≥ start} a_k r^k` by the first term times a
    /// geometric series.
    pub fn tail_bound(&self, start: usize, r: f64) -> Result<f64> {
        if !(r >= 0.0) || !r.is_finite() {
            return Err(Error::Domain(format!("radius must be nonnegative, got {r}")));
        }
        if r == 0.0 {
            return Ok(if start == 0 { self.a0() } else { 0.0 });
        }
        if let Some(len) = self.custom_len() {
            let mut s = 0.0;
            for k in start..len {
                s += (self.coefficient_log(k)? + k as f64 * r.ln()).exp();
            }
            return Ok(s * (1.0 + 4.0 * len as f64 * U));
        }
        let rho = r * self.ratio(start + 1);
        if rho >= 1.0 {
            return Err(Error::DivergentMajorant { ratio: rho });
        }
        let first = (self.coefficient_log(start)? + start as f64 * r.ln()).exp();
        Ok(first / (1.0 - rho) * (1.0 + 32.0 * U * (start as f64 + 4.0)))
    }

    pub fn quotients(&self) -> Result<QuotientView> {
        let (limit, monotonicity) = match self.kind {
            FamilyKind::EulerF => (Some(self.a), Monotonicity::Increasing),
            FamilyKind::PartialTheta => (Some(self.a * self.a), Monotonicity::Constant),
            FamilyKind::EulerH => (Some(self.a), Monotonicity::Decreasing),
            FamilyKind::Custom => {
                let len = self.custom_len().unwrap_or(0);
                if len < 3 {
                    return Err(Error::InsufficientData(format!(
                        "q_n needs at least 3 coefficients, got {len}"
                    )));
                }
                (None, Monotonicity::Unknown)
            }
        };
        let mut view = QuotientView {
            family: self.clone(),
            limit,
            monotonicity,
        };
        if self.kind == FamilyKind::Custom {
            view.monotonicity = view.observed_monotonicity();
        }
        Ok(view)
    }
}

fn pow_saturating(a: f64, k: usize) -> f64 {
    if k > i32::MAX as usize {
        f64::INFINITY
    } else {
        a.powi(k as i32)
    }
}

/// Relative error bound for `powi(a, n − 1)` followed by two more rounded
/// operations.
fn pow_error(n: usize) -> f64 {
    (2.0 * (n as f64).log2() + 8.0) * U
}

fn rounding_bound(weighted: f64, terms: usize) -> f64 {
    if weighted == 0.0 {
        0.0
    } else {
        (weighted + terms as f64) * 4.0 * U
    }
}

impl QuotientView {
    /// `p_n = a_{n-1} / a_n` for `n ≥ 1`.
    pub fn p(&self, n: usize) -> f64 {
        assert!(n >= 1, "p_n is defined for n >= 1");
        let a = self.family.a;
        match self.family.kind {
            FamilyKind::EulerF => pow_saturating(a, n) + 1.0,
            FamilyKind::EulerH => pow_saturating(a, n) - 1.0,
            FamilyKind::PartialTheta => a.powf(2.0 * n as f64 - 1.0),
            FamilyKind::Custom => (-self.family.log_ratio(n)).exp(),
        }
    }

    /// `q_n = a_{n-1}² / (a_{n-2} a_n)` for `n ≥ 2`.
    pub fn q(&self, n: usize) -> f64 {
        self.q_with_error(n).0
    }

    /// `q_n` and a bound on its rounding error.
    pub fn q_with_error(&self, n: usize) -> (f64, f64) {
        assert!(n >= 2, "q_n is defined for n >= 2");
        let a = self.family.a;
        match self.family.kind {
            // q_n = a ∓ (a − 1)/(a^(n−1) ± 1). Each step is a monotone rounded
            // operation, so the computed q_n is monotone in n like the exact one.
            FamilyKind::EulerF => {
                let x = pow_saturating(a, n - 1);
                let y = (a - 1.0) / (x + 1.0);
                let q = a - y;
                (q, U * q + pow_error(n) * y)
            }
            FamilyKind::EulerH => {
                let x = pow_saturating(a, n - 1);
                let y = (a - 1.0) / (x - 1.0);
                let q = a + y;
                (q, U * q + pow_error(n) * y * x / (x - 1.0))
            }
            FamilyKind::PartialTheta => {
                let q = a * a;
                (q, a.mul_add(a, -q).abs())
            }
            FamilyKind::Custom => {
                let lq = self.family.log_ratio(n - 1) - self.family.log_ratio(n);
                let q = lq.exp();
                (q, 16.0 * U * q * (1.0 + lq.abs()))
            }
        }
    }

    /// `ln q_n`.
    pub fn ln_q(&self, n: usize) -> f64 {
        match self.family.kind {
            FamilyKind::PartialTheta => 2.0 * self.family.a.ln(),
            FamilyKind::Custom => self.family.log_ratio(n - 1) - self.family.log_ratio(n),
            _ => self.q(n).ln(),
        }
    }

    /// Largest `n` for which `q_n` is defined by the available data.
    pub fn max_index(&self) -> Option<usize> {
        self.family.custom_len().map(|l| l - 1)
    }

    fn observed_monotonicity(&self) -> Monotonicity {
        let top = self.max_index().unwrap_or(2);
        if top < 3 {
            return Monotonicity::Constant;
        }
        let qs: Vec<f64> = (2..=top).map(|n| self.q(n)).collect();
        let tol = 64.0 * U;
        let close = |x: f64, y: f64| (x - y).abs() <= tol * x.abs().max(y.abs());
        if qs.windows(2).all(|w| close(w[0], w[1])) {
            Monotonicity::Constant
        } else if qs.windows(2).all(|w| w[0] < w[1] || close(w[0], w[1])) {
            Monotonicity::Increasing
        } else if qs.windows(2).all(|w| w[0] > w[1] || close(w[0], w[1])) {
            Monotonicity::Decreasing
        } else {
            Monotonicity::Unknown
        }
    }

    /// `q_n` non-decreasing in `n`.
    pub fn is_nondecreasing(&self) -> bool {
        matches!(self.monotonicity, Monotonicity::Increasing | Monotonicity::Constant)
    }
}

/// Named-family formulas over any [`Real`]: the precision-extension hook.
pub mod generic {
    use super::FamilyKind;
    use crate::real::Real;
    use crate::{Error, Result};

    /// `a_k / a_{k-1}` for a named family.
    pub fn term_ratio<R: Real>(kind: FamilyKind, a: &R, k: u32) -> Result<R> {
        let one = R::one();
        let k = k as i32;
        match kind {
            FamilyKind::EulerF => Ok(one.clone() / (a.powi(k) + one)),
            FamilyKind::EulerH => Ok(one.clone() / (a.powi(k) - one)),
            FamilyKind::PartialTheta => Ok(a.powi(1 - 2 * k)),
            FamilyKind::Custom => Err(Error::Domain("generic formulas cover named families only".into())),
        }
    }

    /// `S_n(x)` at a real point.
    pub fn section_value<R: Real>(kind: FamilyKind, a: &R, n: u32, x: &R, alternating: bool) -> Result<R> {
        let w = if alternating { -x.clone() } else { x.clone() };
        let mut t = R::one();
        let mut sum = R::one();
        for k in 1..=n {
            t = t * w.clone() * term_ratio(kind, a, k)?;
            sum = sum + t.clone();
        }
        Ok(sum)
    }
}
