//! Exact rational oracles shared by the integration tests.

#![allow(dead_code)]

use lplab::FamilyKind;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

pub fn powi(x: &BigRational, k: i64) -> BigRational {
    if k >= 0 {
        num_traits::pow(x.clone(), k as usize)
    } else {
        num_traits::pow(x.recip(), (-k) as usize)
    }
}

/// `a_k / a_(k−1)` in exact arithmetic.
pub fn ratio(kind: FamilyKind, a: &BigRational, k: i64) -> BigRational {
    match kind {
        FamilyKind::EulerF => (powi(a, k) + BigRational::one()).recip(),
        FamilyKind::EulerH => (powi(a, k) - BigRational::one()).recip(),
        FamilyKind::PartialTheta => powi(a, 1 - 2 * k),
        FamilyKind::Custom => unreachable!("named families only"),
    }
}

#[derive(Clone, Debug)]
pub struct RatComplex {
    pub re: BigRational,
    pub im: BigRational,
}

impl RatComplex {
    pub fn mul(&self, o: &RatComplex) -> RatComplex {
        RatComplex {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn scale(&self, s: &BigRational) -> RatComplex {
        RatComplex {
            re: &self.re * s,
            im: &self.im * s,
        }
    }
}

/// `a_k / a_(k−1)` as an unreduced integer fraction.
fn ratio_parts(kind: FamilyKind, p: &BigInt, q: &BigInt, k: u32) -> (BigInt, BigInt) {
    match kind {
        FamilyKind::EulerF => (q.pow(k), p.pow(k) + q.pow(k)),
        FamilyKind::EulerH => (q.pow(k), p.pow(k) - q.pow(k)),
        FamilyKind::PartialTheta => (q.pow(2 * k - 1), p.pow(2 * k - 1)),
        FamilyKind::Custom => unreachable!("named families only"),
    }
}

/// `Σ_{k<terms} a_k w^k` exactly. Terms share a growing common denominator,
/// so no gcd is taken until the end.
pub fn partial_sum(kind: FamilyKind, a: &BigRational, w: &RatComplex, terms: usize) -> RatComplex {
    let (p, q) = (a.numer().clone(), a.denom().clone());
    let wd = w.re.denom().lcm(w.im.denom());
    let wr = w.re.numer() * (&wd / w.re.denom());
    let wi = w.im.numer() * (&wd / w.im.denom());
    // Term k is (tr + i ti) / den; the sum is (sr + i si) / den.
    let (mut tr, mut ti, mut den) = (BigInt::one(), BigInt::zero(), BigInt::one());
    let (mut sr, mut si) = (BigInt::one(), BigInt::zero());
    for k in 1..terms as u32 {
        let (rn, rd) = ratio_parts(kind, &p, &q, k);
        let f = &rd * &wd;
        let nr = (&tr * &wr - &ti * &wi) * &rn;
        let ni = (&tr * &wi + &ti * &wr) * &rn;
        tr = nr;
        ti = ni;
        sr = sr * &f + &tr;
        si = si * &f + &ti;
        den *= &f;
    }
    // Left unreduced; `within` compares by cross-multiplication.
    RatComplex {
        re: BigRational::new_raw(sr, den.clone()),
        im: BigRational::new_raw(si, den),
    }
}

/// Exact partial sum stopped once the tail is below `1e-30`, with a bound on
/// that tail. Term ratios decrease in `k`, so once `|w| a_(k+1)/a_k ≤ 1/2` the
/// tail is at most twice the next term.
pub fn truncated_sum(kind: FamilyKind, a: &BigRational, w: &RatComplex, max_terms: usize) -> (RatComplex, f64) {
    let modulus = (to_f64(&w.re).powi(2) + to_f64(&w.im).powi(2)).sqrt() * (1.0 + 1e-12);
    let mut t = RatComplex {
        re: BigRational::one(),
        im: BigRational::zero(),
    };
    let mut s = t.clone();
    for k in 1..max_terms as i64 {
        let r = ratio(kind, a, k);
        let rho = modulus * to_f64(&r) * (1.0 + 1e-12);
        let size = (to_f64(&t.re).powi(2) + to_f64(&t.im).powi(2)).sqrt() * (1.0 + 1e-12);
        if rho <= 0.5 && size * rho * 2.0 < 1e-30 {
            return (s, size * rho * 2.0);
        }
        t = t.mul(w).scale(&r);
        s.re += &t.re;
        s.im += &t.im;
    }
    panic!("oracle did not converge in {max_terms} terms")
}

/// `|value − exact| ≤ bound`, decided exactly in integers.
pub fn within(value: Complex64, exact_value: &RatComplex, bound: f64) -> bool {
    // x − n/d over the common denominator xd·d, for x = xn/xd.
    let diff = |x: f64, e: &BigRational| -> (BigInt, BigInt) {
        let x = exact(x);
        (x.numer() * e.denom() - e.numer() * x.denom(), x.denom() * e.denom())
    };
    let (rn, rd) = diff(value.re, &exact_value.re);
    let (im_n, im_d) = diff(value.im, &exact_value.im);
    let b = exact(bound);
    // rn²/rd² + in²/id² ≤ bn²/bd², cleared of denominators.
    let lhs = (&rn * &rn * &im_d * &im_d + &im_n * &im_n * &rd * &rd) * b.denom() * b.denom();
    let rhs = b.numer() * b.numer() * &rd * &rd * &im_d * &im_d;
    lhs <= rhs
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().expect("representable")
}
