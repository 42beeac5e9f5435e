//! Real-root isolation, refinement and real-rootedness tests.
//!
//! Input polynomials have `f64` coefficients, which are dyadic rationals, so
//! all sign decisions are made exactly on an integer multiple of the
//! polynomial: Sturm chains use primitive pseudo-remainders and evaluation
//! points are themselves `f64`. Nothing here depends on floating-point
//! rounding except [`complex_roots`] and the convenience evaluators.

mod aberth;
pub(crate) mod exact;

use num_complex::Complex64;
use serde::Serialize;

use crate::series::{FamilyKind, SeriesFamily};
use crate::{Error, Result};
use exact::{Dyadic, IntPoly, Sturm};

const NUDGE_EPS: f64 = 16.0 * f64::EPSILON;

/// Polynomial with real coefficients in ascending degree order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

impl RealPolynomial {
    /// Trailing zeros are stripped; every coefficient must be finite.
    pub fn new(mut coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain("polynomial coefficients must be finite".into()));
        }
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Ok(RealPolynomial { coeffs })
    }

    /// Coefficients listed from the leading term down.
    pub fn from_descending(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().rev().copied().collect())
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> RealPolynomial {
        RealPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * i as f64)
                .collect(),
        }
    }

    /// Exact sign of `p(x)`.
    pub fn sign_at(&self, x: f64) -> i8 {
        IntPoly::from_f64(&self.coeffs).sign_at(&Dyadic::from_f64(x))
    }

    fn exact(&self) -> Result<IntPoly> {
        if self.is_zero() {
            return Err(Error::Domain("zero polynomial".into()));
        }
        Ok(IntPoly::from_f64(&self.coeffs))
    }
}

/// An interval holding exactly one distinct real root.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootBracket {
    pub lo: f64,
    pub hi: f64,
    /// Signs at the endpoints: those of the polynomial itself when it changes
    /// sign across the root, otherwise those of its square-free part.
    pub sign_lo: i8,
    pub sign_hi: i8,
}

impl RootBracket {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        self.lo + 0.5 * (self.hi - self.lo)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }
}

fn nudge_off_root(p: &IntPoly, mut x: f64, outward: f64) -> f64 {
    while p.sign_at(&Dyadic::from_f64(x)) == 0 {
        x += outward * NUDGE_EPS * x.abs().max(f64::MIN_POSITIVE.sqrt());
    }
    x
}

/// Pick a point strictly inside `(lo, hi)` that is not a root.
fn split_point(p: &IntPoly, lo: f64, hi: f64) -> Option<f64> {
    for frac in [0.5, 0.4375, 0.5625, 0.375, 0.625] {
        let m = lo + frac * (hi - lo);
        if m > lo && m < hi && p.sign_at(&Dyadic::from_f64(m)) != 0 {
            return Some(m);
        }
    }
    None
}

/// One bracket per distinct real root of `p` in `[lo, hi]`, sorted. Endpoints
/// that are roots are first nudged outward by 16 machine epsilons.
pub fn isolate_real_roots(p: &RealPolynomial, lo: f64, hi: f64) -> Result<Vec<RootBracket>> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Domain(format!("bad interval [{lo}, {hi}]")));
    }
    let full = p.exact()?;
    if full.degree() == 0 {
        return Ok(vec![]);
    }
    let sqf = full.square_free();
    let sturm = Sturm::new(&sqf);
    let lo = nudge_off_root(&sqf, lo, -1.0);
    let hi = nudge_off_root(&sqf, hi, 1.0);
    let mut out = Vec::new();
    let mut stack = vec![(lo, hi, sturm.count(&Dyadic::from_f64(lo), &Dyadic::from_f64(hi)))];
    while let Some((a, b, n)) = stack.pop() {
        match n {
            0 => {}
            1 => {
                let da = Dyadic::from_f64(a);
                let db = Dyadic::from_f64(b);
                let (fa, fb) = (full.sign_at(&da), full.sign_at(&db));
                let (sign_lo, sign_hi) = if fa * fb < 0 {
                    (fa, fb)
                } else {
                    (sqf.sign_at(&da), sqf.sign_at(&db))
                };
                out.push(RootBracket {
                    lo: a,
                    hi: b,
                    sign_lo,
                    sign_hi,
                });
            }
            _ => {
                let m = split_point(&sqf, a, b).ok_or_else(|| {
                    Error::Conditioning(format!(
                        "{n} roots in [{a}, {b}] are closer than floating-point spacing; use exact rational arithmetic"
                    ))
                })?;
                let dm = Dyadic::from_f64(m);
                let left = sturm.count(&Dyadic::from_f64(a), &dm);
                stack.push((m, b, n - left));
                stack.push((a, m, left));
            }
        }
    }
    out.sort_by(|x, y| x.lo.total_cmp(&y.lo));
    Ok(out)
}

/// Bisect a bracket down to width `tol` and return the midpoint.
pub fn refine(p: &RealPolynomial, b: &RootBracket, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidTolerance(tol));
    }
    let sqf = p.exact()?.square_free();
    let (mut lo, mut hi) = (b.lo, b.hi);
    let s_lo = sqf.sign_at(&Dyadic::from_f64(lo));
    let s_hi = sqf.sign_at(&Dyadic::from_f64(hi));
    if !(lo < hi) || s_lo * s_hi >= 0 {
        return Err(Error::Precondition(format!(
            "[{lo}, {hi}] is not a sign-change bracket"
        )));
    }
    while hi - lo > tol {
        let m = lo + 0.5 * (hi - lo);
        if m <= lo || m >= hi {
            break;
        }
        let s = sqf.sign_at(&Dyadic::from_f64(m));
        if s == 0 {
            return Ok(m);
        }
        if s == s_lo {
            lo = m;
        } else {
            hi = m;
        }
    }
    Ok(lo + 0.5 * (hi - lo))
}

/// The unique root of `p` in `[lo, hi]`, to width `tol`.
pub fn unique_root_in(p: &RealPolynomial, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let brackets = isolate_real_roots(p, lo, hi)?;
    match brackets.as_slice() {
        [b] => refine(p, b, tol),
        _ => Err(Error::Precondition(format!(
            "expected one root in [{lo}, {hi}], found {}",
            brackets.len()
        ))),
    }
}

/// Largest real root, if any.
pub fn largest_real_root(p: &RealPolynomial, tol: f64) -> Result<Option<f64>> {
    let b = cauchy_bound(p);
    match isolate_real_roots(p, -b, b)?.last() {
        Some(br) => Ok(Some(refine(p, br, tol)?)),
        None => Ok(None),
    }
}

/// Number of real roots counted with multiplicity.
pub fn real_root_count(p: &RealPolynomial) -> Result<usize> {
    let mut g = p.exact()?;
    let mut total = 0;
    // Roots of multiplicity ≥ k are the distinct roots of the (k-1)-th
    // iterated gcd with the derivative.
    while g.degree() > 0 {
        total += Sturm::new(&g.square_free()).count_all();
        g = g.gcd(&g.derivative());
    }
    Ok(total)
}

/// All roots real (with multiplicity).
pub fn is_real_rooted(p: &RealPolynomial) -> Result<bool> {
    Ok(real_root_count(p)? == p.degree())
}

/// All complex roots, with multiplicity. Floating-point iteration; not
/// certified.
pub fn complex_roots(p: &RealPolynomial) -> Result<Vec<Complex64>> {
    if p.is_zero() {
        return Err(Error::Domain("zero polynomial".into()));
    }
    aberth::roots(&p.coeffs)
}

/// Cauchy's bound: every root satisfies `|z| ≤ 1 + max |c_k / c_n|`.
pub fn cauchy_bound(p: &RealPolynomial) -> f64 {
    let n = p.degree();
    let lead = p.coeffs[n].abs();
    1.0 + p.coeffs[..n].iter().map(|c| c.abs() / lead).fold(0.0, f64::max)
}

/// A section written in the normalized variable `u`, where `z = u · z_scale`
/// is the argument of the family as configured (sign convention included).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectionPolynomial {
    pub poly: RealPolynomial,
    pub z_scale: f64,
    pub alternating: bool,
}

impl SectionPolynomial {
    pub fn roots_in_z(&self) -> Result<Vec<Complex64>> {
        Ok(complex_roots(&self.poly)?
            .into_iter()
            .map(|u| u * self.z_scale)
            .collect())
    }
}

/// `S_n(z_scale · u) / a_0` with `z_scale = p_1`: coefficients
/// `1, ±1, ±1/q_2, ±1/(q_2² q_3), …`, all of modulus at most one for
/// increasing `q_n ≥ 1`.
pub fn section_polynomial(family: &SeriesFamily, n: usize) -> Result<SectionPolynomial> {
    if n < 1 {
        return Err(Error::Domain("section degree must be at least 1".into()));
    }
    let p1 = family.normalizing_scale();
    let sign = if family.is_alternating() { -1.0 } else { 1.0 };
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(1.0);
    if family.kind() == FamilyKind::Custom {
        let l0 = family.coefficient_log(0)?;
        for k in 1..=n {
            let lk = family.coefficient_log(k)?;
            let v = (lk - l0 + k as f64 * p1.ln()).exp();
            coeffs.push(if k % 2 == 1 { sign * v } else { v });
        }
    } else {
        let mut c = 1.0;
        for k in 1..=n {
            c *= sign * p1 * family.ratio(k);
            coeffs.push(c);
        }
    }
    Ok(SectionPolynomial {
        poly: RealPolynomial::new(coeffs)?,
        z_scale: p1,
        alternating: family.is_alternating(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn poly(c: &[f64]) -> RealPolynomial {
        RealPolynomial::new(c.to_vec()).unwrap()
    }

    #[test]
    fn symmetric_pair() {
        let b = isolate_real_roots(&poly(&[-1.0, 0.0, 1.0]), -2.0, 2.0).unwrap();
        assert_eq!(b.len(), 2);
        assert!(b[0].contains(-1.0) && b[1].contains(1.0));
        assert!(isolate_real_roots(&poly(&[1.0, 0.0, 1.0]), -10.0, 10.0)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn endpoint_roots_are_nudged() {
        let b = isolate_real_roots(&poly(&[-1.0, 0.0, 1.0]), -1.0, 1.0).unwrap();
        assert_eq!(b.len(), 2);
        assert!(b[0].lo < -1.0 && b[1].hi > 1.0);
    }

    #[test]
    fn sqrt_two() {
        let p = poly(&[-2.0, 0.0, 1.0]);
        let b = RootBracket {
            lo: 1.0,
            hi: 2.0,
            sign_lo: -1,
            sign_hi: 1,
        };
        assert_relative_eq!(refine(&p, &b, 1e-12).unwrap(), 2f64.sqrt(), epsilon = 1e-12);
        assert!(matches!(refine(&p, &b, 0.0), Err(Error::InvalidTolerance(_))));
    }

    #[test]
    fn double_root_is_found_once() {
        // (x - 1)^2 (x + 2)
        let p = poly(&[2.0, -3.0, 0.0, 1.0]);
        let b = isolate_real_roots(&p, -5.0, 5.0).unwrap();
        assert_eq!(b.len(), 2);
        assert_relative_eq!(refine(&p, &b[1], 1e-13).unwrap(), 1.0, epsilon = 1e-12);
        assert_eq!(real_root_count(&p).unwrap(), 3);
        assert!(is_real_rooted(&p).unwrap());
    }

    #[test]
    fn real_rootedness_examples() {
        assert!(is_real_rooted(&poly(&[2.0, -3.0, 1.0])).unwrap());
        assert!(!is_real_rooted(&poly(&[1.0, 1.0, 1.0])).unwrap());
        assert!(!is_real_rooted(&poly(&[1.0, -3.4, 3.4])).unwrap());
        // (x^2 + 1)^2 has no real roots even with multiplicity.
        assert_eq!(real_root_count(&poly(&[1.0, 0.0, 2.0, 0.0, 1.0])).unwrap(), 0);
    }

    #[test]
    fn section_polynomial_examples() {
        let f = SeriesFamily::euler_f(4.0).unwrap().alternating();
        let s = section_polynomial(&f, 2).unwrap();
        assert_eq!(s.z_scale, 5.0);
        let c = s.poly.coeffs();
        assert_eq!(c[0], 1.0);
        assert_eq!(c[1], -1.0);
        assert_relative_eq!(c[2], 1.0 / 3.4, max_relative = 1e-15);

        let f5 = SeriesFamily::euler_f(5.0).unwrap().alternating();
        let c = section_polynomial(&f5, 3).unwrap().poly.coeffs().to_vec();
        let (q2, q3) = (26.0 / 6.0, 126.0 / 26.0);
        assert_relative_eq!(c[3], -1.0 / (q2 * q2 * q3), max_relative = 1e-14);

        let g = SeriesFamily::partial_theta(2.0).unwrap().alternating();
        let c = section_polynomial(&g, 2).unwrap().poly.coeffs().to_vec();
        assert_eq!(c, vec![1.0, -1.0, 0.25]);
    }

    #[test]
    fn complex_roots_of_quadratic() {
        let r = complex_roots(&poly(&[1.0, -3.4, 3.4])).unwrap();
        assert_eq!(r.len(), 2);
        for z in r {
            assert!(z.im.abs() > 0.1);
            assert!(poly(&[1.0, -3.4, 3.4]).eval_complex(z).norm() < 1e-14);
        }
    }
}
