//! Membership tests for the Laguerre–Pólya class.
//!
//! Every test returns a [`CriterionReport`]. A decisive verdict is only given
//! when the decisive quantity clears its threshold by more than the combined
//! numerical error; otherwise the verdict is [`Verdict::Boundary`].

use num_complex::Complex64;
use serde::Serialize;

use crate::optimize::grid_golden;
use crate::polyroots::{unique_root_in, RealPolynomial};
use crate::series::{EvalResult, FamilyKind, Monotonicity, SeriesFamily};
use crate::{Error, Result};

/// Default number of grid points for the sign-test minimizations.
pub const DEFAULT_GRID: usize = 512;

/// Relative distance kept from the ends of the open sign-test intervals.
pub const OPEN_MARGIN: f64 = 1e-9;

/// Known approximation of the partial-theta constant, used only as a
/// consistency check on Euler-type verdicts.
pub const Q_INFINITY_APPROX: f64 = 3.233_636_66;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    InLP,
    NotInLP,
    Boundary,
    Inapplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub criterion: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_x: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_value: Option<f64>,
    /// Signed distance of the decisive quantity from its threshold.
    pub margin: f64,
    /// Numerical error the margin had to beat.
    pub error_bound: f64,
}

impl CriterionReport {
    fn plain(criterion: &str, verdict: Verdict, margin: f64, error_bound: f64) -> Self {
        CriterionReport {
            criterion: criterion.to_string(),
            verdict,
            witness_x: None,
            witness_value: None,
            margin,
            error_bound,
        }
    }
}

/// Hutchinson's sufficient condition `q_n ≥ 4` for every `n ≥ 2`. The check
/// on `2..=n_max` extends to all `n` through the family's closed-form
/// monotonicity (or its limit, for decreasing quotients).
pub fn hutchinson_test(family: &SeriesFamily, n_max: usize) -> Result<CriterionReport> {
    if n_max < 2 {
        return Err(Error::Domain(format!("n_max must be at least 2, got {n_max}")));
    }
    let q = family.quotients()?;
    let top = q.max_index().map_or(n_max, |m| m.min(n_max).max(2));
    let mut q_min = f64::INFINITY;
    let mut err: f64 = 0.0;
    for n in 2..=top {
        let (v, e) = q.q_with_error(n);
        if v < q_min {
            q_min = v;
            err = e;
        }
    }
    let extends = match (q.monotonicity, family.kind()) {
        (_, FamilyKind::Custom) => q.max_index().is_some_and(|m| m <= n_max),
        (Monotonicity::Increasing | Monotonicity::Constant, _) => true,
        (Monotonicity::Decreasing, _) => {
            if let Some(limit) = q.limit {
                q_min = q_min.min(limit);
            }
            q.limit.is_some()
        }
        (Monotonicity::Unknown, _) => false,
    };
    let margin = q_min - 4.0;
    if !extends {
        return Ok(CriterionReport::plain("hutchinson", Verdict::Inapplicable, margin, err));
    }
    let verdict = if margin >= 0.0 && margin >= err {
        Verdict::InLP
    } else if margin.abs() <= err {
        Verdict::Boundary
    } else {
        Verdict::Inapplicable
    };
    Ok(CriterionReport::plain("hutchinson", verdict, margin, err))
}

/// The necessary condition `q_2 ≥ 3` for families with non-decreasing
/// quotients.
pub fn necessary_q2(family: &SeriesFamily) -> Result<CriterionReport> {
    let q = family.quotients()?;
    if !q.is_nondecreasing() {
        return Err(Error::Precondition(
            "q_2 >= 3 is necessary only for non-decreasing q_n".into(),
        ));
    }
    let (q2, err) = q.q_with_error(2);
    let margin = q2 - 3.0;
    let verdict = if margin < -err {
        Verdict::NotInLP
    } else if margin.abs() <= err {
        Verdict::Boundary
    } else {
        Verdict::Inapplicable
    };
    Ok(CriterionReport::plain("necessary_q2", verdict, margin, err))
}

fn sign_verdict(
    name: &str,
    lo: f64,
    hi: f64,
    grid: usize,
    tol: f64,
    eval: impl Fn(f64) -> Result<EvalResult>,
) -> Result<CriterionReport> {
    if !(tol >= 0.0) {
        return Err(Error::InvalidTolerance(tol));
    }
    // The interval is open; for the partial theta cubic, S_3(−a³) = 0
    // identically, so the endpoints themselves must stay out.
    let (lo, hi) = (lo * (1.0 + OPEN_MARGIN), hi * (1.0 - OPEN_MARGIN));
    let mut failure = None;
    let m = grid_golden(
        |x| match eval(x) {
            Ok(r) => r.value.re,
            Err(e) => {
                failure.get_or_insert(e);
                f64::INFINITY
            }
        },
        lo,
        hi,
        grid,
        1e-13 * hi,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let at = eval(m.x)?;
    let err = at.abs_error_bound;
    let tol_eff = tol + err;
    let verdict = if m.value < -tol_eff {
        Verdict::InLP
    } else if m.value > tol_eff {
        Verdict::NotInLP
    } else {
        Verdict::Boundary
    };
    Ok(CriterionReport {
        criterion: name.to_string(),
        verdict,
        witness_x: Some(m.x),
        witness_value: Some(m.value),
        margin: m.value,
        error_bound: err,
    })
}

/// Minimum of `F_a(−x)` over `a+1 < x < a²+1`: a non-positive value is
/// equivalent to membership.
pub fn sign_test_fa(a: f64, grid: usize, tol: f64) -> Result<CriterionReport> {
    let f = SeriesFamily::euler_f(a)?.alternating();
    sign_verdict("sign_test_fa", a + 1.0, a * a + 1.0, grid, tol, |x| {
        f.evaluate(Complex64::new(x, 0.0), 1e-15)
    })
}

/// Minimum of `g_a(−x)`, or of its section `S_n(−x)`, over `a < x < a³`.
pub fn sign_test_theta(a: f64, n: Option<usize>, grid: usize, tol: f64) -> Result<CriterionReport> {
    if n.is_some_and(|n| n < 2) {
        return Err(Error::Domain("section index must be at least 2".into()));
    }
    let g = SeriesFamily::partial_theta(a)?.alternating();
    let name = if n.is_some() {
        "sign_test_theta_section"
    } else {
        "sign_test_theta"
    };
    sign_verdict(name, a, a * a * a, grid, tol, |x| {
        let z = Complex64::new(x, 0.0);
        match n {
            Some(n) => Ok(g.section_eval(n, z)),
            None => g.evaluate(z, 1e-15),
        }
    })
}

/// `K(y) = 1 − y + y²/b − y³/(b²c)`: the cubic section in `y = z/(a+1)`.
pub fn k_cubic(b: f64, c: f64, y: f64) -> f64 {
    1.0 - y + y * y / b - y * y * y / (b * b * c)
}

/// Critical points `y_(1,2) = (bc ∓ b√(c(c−3)))/3` of [`k_cubic`].
pub fn k_critical_points(b: f64, c: f64) -> Result<(f64, f64)> {
    if !(c > 3.0) {
        return Err(Error::Domain(format!("critical points need c > 3, got {c}")));
    }
    let s = b * (c * (c - 3.0)).sqrt();
    Ok(((b * c - s) / 3.0, (b * c + s) / 3.0))
}

/// `b²c² − 4b²c + 18bc − 4bc² − 27`; non-negative iff `K(y_1) ≤ 0`.
pub fn reduced_inequality(b: f64, c: f64) -> f64 {
    b * b * c * c - 4.0 * b * b * c + 18.0 * b * c - 4.0 * b * c * c - 27.0
}

/// `27 − 9bc + 2bc²`, required non-negative before squaring.
pub fn auxiliary_inequality(b: f64, c: f64) -> f64 {
    27.0 - 9.0 * b * c + 2.0 * b * c * c
}

/// `a⁸ − 8a⁷ + 15a⁶ + 12a⁵ − 21a⁴ − 28a³ − 43a² − 40a − 16`.
pub fn octic_polynomial() -> RealPolynomial {
    RealPolynomial::from_descending(&[1.0, -8.0, 15.0, 12.0, -21.0, -28.0, -43.0, -40.0, -16.0])
        .expect("finite coefficients")
}

/// Root of [`octic_polynomial`] in `[3, 5]`: below it no cubic section has
/// a non-positive value on `(a+1, a²+1)`.
pub fn lemma4_threshold() -> Result<f64> {
    unique_root_in(&octic_polynomial(), 3.0, 5.0, 1e-13)
}

/// All intermediate quantities of the cubic-section argument at one `a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lemma4Point {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub y1: f64,
    pub y2: f64,
    pub k_at_y1: f64,
    pub reduced: f64,
    pub auxiliary: f64,
    pub octic: f64,
}

pub fn lemma4_point(a: f64) -> Result<Lemma4Point> {
    let q = SeriesFamily::euler_f(a)?.quotients()?;
    let (b, c) = (q.q(2), q.q(3));
    let (y1, y2) = k_critical_points(b, c)?;
    Ok(Lemma4Point {
        a,
        b,
        c,
        y1,
        y2,
        k_at_y1: k_cubic(b, c, y1),
        reduced: reduced_inequality(b, c),
        auxiliary: auxiliary_inequality(b, c),
        octic: octic_polynomial().eval(a),
    })
}

/// Degree-20 polynomial whose sign was claimed to match `S_6(z_0)`, listed
/// from `a^20` down.
pub const DEGREE20_COEFFS: [f64; 21] = [
    -162.0, 513.0, 567.0, -594.0, 567.0, 1134.0, 918.0, 822.0, 846.0, 228.0, 1927.0, 1125.0, 1142.0, 750.0, 1030.0,
    966.0, 1360.0, 567.0, -226.0, 729.0, 463.0,
];

/// Exact numerator of `S_6(z_0)` over the positive denominator
/// `729 (a+1)³ (a²+1)(a⁴+1)(a²−a+1)(a⁴−a²+1)(a⁴−a³+a²−a+1)`, from `a^20` down.
pub const S6_NUMERATOR_COEFFS: [f64; 21] = [
    -162.0, 513.0, 567.0, -450.0, 567.0, 1134.0, 822.0, 918.0, 462.0, 612.0, 1351.0, 1701.0, 758.0, 1134.0, 934.0,
    1062.0, 1360.0, 567.0, -226.0, 729.0, 463.0,
];

pub fn degree20_polynomial() -> RealPolynomial {
    RealPolynomial::from_descending(&DEGREE20_COEFFS).expect("finite coefficients")
}

pub fn s6_numerator_polynomial() -> RealPolynomial {
    RealPolynomial::from_descending(&S6_NUMERATOR_COEFFS).expect("finite coefficients")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lemma5Detail {
    pub a: f64,
    /// `z_0 = (2/3)(a+1) q_2`.
    pub z0: f64,
    /// Six-term closed form in the quotients.
    pub closed_form: f64,
    /// Direct evaluation of the section.
    pub direct: f64,
    pub error_bound: f64,
    pub numerator_value: f64,
    pub degree20_value: f64,
    /// Whether the degree-20 polynomial has the sign of `S_6(z_0)`.
    pub degree20_agrees: bool,
}

fn sign_of(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

pub fn lemma5_detail(a: f64) -> Result<Lemma5Detail> {
    let f = SeriesFamily::euler_f(a)?.alternating();
    let q = f.quotients()?;
    let (q2, q3, q4, q5, q6) = (q.q(2), q.q(3), q.q(4), q.q(5), q.q(6));
    let closed_form = 1.0 - 2.0 / 9.0 * q2 - 8.0 / 27.0 * (q2 / q3) + 16.0 / 81.0 * (q2 / (q3 * q3 * q4))
        - 32.0 / 243.0 * (q2 / (q3.powi(3) * q4 * q4 * q5))
        + 64.0 / 729.0 * (q2 / (q3.powi(4) * q4.powi(3) * q5 * q5 * q6));
    let z0 = 2.0 / 3.0 * (a + 1.0) * q2;
    let r = f.section_eval(6, Complex64::new(z0, 0.0));
    let direct = r.value.re;
    let error_bound = r.abs_error_bound + 64.0 * f64::EPSILON * (1.0 + q2);
    if (closed_form - direct).abs() > 1e-9 * direct.abs().max(1.0) {
        return Err(Error::InternalConsistency(format!(
            "closed form {closed_form} and direct {direct} disagree at a = {a}"
        )));
    }
    let numerator_value = s6_numerator_polynomial().eval(a);
    let degree20_value = degree20_polynomial().eval(a);
    Ok(Lemma5Detail {
        a,
        z0,
        closed_form,
        direct,
        error_bound,
        numerator_value,
        degree20_value,
        degree20_agrees: sign_of(degree20_value) == sign_of(direct),
    })
}

/// Sufficient test: `S_6(z_0) ≤ 0` at `z_0 = (2/3)(a+1)q_2` implies
/// membership. A positive value gives no conclusion.
pub fn lemma5_test(a: f64) -> Result<CriterionReport> {
    let d = lemma5_detail(a)?;
    let v = d.direct;
    let verdict = if v < -d.error_bound {
        Verdict::InLP
    } else if v.abs() <= d.error_bound {
        Verdict::Boundary
    } else {
        Verdict::Inapplicable
    };
    Ok(CriterionReport {
        criterion: "lemma5".into(),
        verdict,
        witness_x: Some(d.z0),
        witness_value: Some(v),
        margin: v,
        error_bound: d.error_bound,
    })
}

/// Decision cascade for `F_a`: `q_2 ≥ 3`, Hutchinson, the `S_6` test, then
/// the sign test, which is authoritative.
pub fn classify_fa(a: f64) -> Result<CriterionReport> {
    classify_fa_with_tol(a, 0.0)
}

/// [`classify_fa`] with extra tolerance `tol` in the final sign test.
pub fn classify_fa_with_tol(a: f64, tol: f64) -> Result<CriterionReport> {
    let f = SeriesFamily::euler_f(a)?;
    let nec = necessary_q2(&f)?;
    let report = if nec.verdict == Verdict::NotInLP {
        nec
    } else {
        let hut = hutchinson_test(&f, 50)?;
        if hut.verdict == Verdict::InLP {
            hut
        } else {
            let l5 = lemma5_test(a)?;
            if l5.verdict == Verdict::InLP {
                l5
            } else {
                sign_test_fa(a, DEFAULT_GRID, tol)?
            }
        }
    };
    // Increasing quotients with limit a below q∞ exclude membership.
    if a < Q_INFINITY_APPROX - 1e-6 && report.verdict == Verdict::InLP {
        return Err(Error::InternalConsistency(format!(
            "a = {a} < q_inf yet {} reports membership",
            report.criterion
        )));
    }
    Ok(report)
}
