//! Integer polynomials and exact sign evaluation at dyadic points.
//!
//! Every finite `f64` is `m · 2^e` with integer `m`, so a polynomial with
//! `f64` coefficients is an exact integer polynomial after one common power
//! of two is factored out. Sturm sequences are then built with primitive
//! pseudo-remainders and never lose a sign.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::float::FloatCore;
use num_traits::{One, Signed, Zero};

/// Ascending coefficients without trailing zeros; the zero polynomial is
/// empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IntPoly(pub(crate) Vec<BigInt>);

/// A finite `f64` as `mant · 2^exp`.
pub(crate) fn decode(x: f64) -> (BigInt, i32) {
    if x == 0.0 {
        return (BigInt::zero(), 0);
    }
    let (m, e, s) = FloatCore::integer_decode(x);
    let mut mant = BigInt::from(m);
    if s < 0 {
        mant = -mant;
    }
    (mant, i32::from(e))
}

impl IntPoly {
    pub(crate) fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        IntPoly(c)
    }

    /// Exact integer multiple (by a positive power of two) of the `f64`
    /// polynomial.
    pub(crate) fn from_f64(coeffs: &[f64]) -> Self {
        let parts: Vec<(BigInt, i32)> = coeffs.iter().map(|&c| decode(c)).collect();
        let min_e = parts
            .iter()
            .filter(|(m, _)| !m.is_zero())
            .map(|&(_, e)| e)
            .min()
            .unwrap_or(0);
        IntPoly::new(
            parts
                .into_iter()
                .map(|(m, e)| if m.is_zero() { m } else { m << ((e - min_e) as usize) })
                .collect(),
        )
    }

    #[cfg(test)]
    pub(crate) fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub(crate) fn lc(&self) -> &BigInt {
        self.0.last().expect("nonzero polynomial")
    }

    pub(crate) fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the positive content; signs are kept.
    pub(crate) fn primitive(self) -> IntPoly {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self;
        }
        IntPoly(self.0.into_iter().map(|c| c / &g).collect())
    }

    pub(crate) fn neg(self) -> IntPoly {
        IntPoly(self.0.into_iter().map(|c| -c).collect())
    }

    /// Pseudo-division `lc(b)^(deg a - deg b + 1) · a = q · b + r`.
    fn pseudo_div(&self, b: &IntPoly) -> (IntPoly, IntPoly) {
        let n = b.degree();
        if self.is_zero() || self.degree() < n {
            return (IntPoly(vec![]), self.clone());
        }
        let delta = self.degree() - n + 1;
        let lb = b.lc().clone();
        let mut r = self.0.clone();
        let mut q = vec![BigInt::zero(); self.degree() - n + 1];
        let mut steps = 0;
        while r.len() > n && !r.is_empty() {
            let d = r.len() - 1;
            let lr = r[d].clone();
            let shift = d - n;
            for c in q.iter_mut() {
                *c *= &lb;
            }
            q[shift] += &lr;
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (i, bc) in b.0.iter().enumerate() {
                r[i + shift] -= &lr * bc;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
            steps += 1;
        }
        let pad = num_traits::pow(lb, delta - steps);
        let q = IntPoly::new(q.into_iter().map(|c| c * &pad).collect());
        let r = IntPoly::new(r.into_iter().map(|c| c * &pad).collect());
        (q, r)
    }

    /// Pseudo-remainder scaled by `|lc(b)|^δ`, so its sign matches the true
    /// remainder.
    pub(crate) fn prem(&self, b: &IntPoly) -> IntPoly {
        let delta = self.degree() + 1 - b.degree().min(self.degree() + 1);
        let (_, r) = self.pseudo_div(b);
        if b.lc().is_negative() && delta % 2 == 1 {
            r.neg()
        } else {
            r
        }
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    pub(crate) fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.clone().primitive(), other.clone().primitive())
        } else {
            (other.clone().primitive(), self.clone().primitive())
        };
        if a.is_zero() {
            return b.normalize_sign();
        }
        while !b.is_zero() {
            let r = a.prem(&b).primitive();
            a = b;
            b = r;
        }
        if a.degree() == 0 {
            return IntPoly(vec![BigInt::one()]);
        }
        a.normalize_sign()
    }

    fn normalize_sign(self) -> IntPoly {
        if !self.is_zero() && self.lc().is_negative() {
            self.neg()
        } else {
            self
        }
    }

    /// `self / g` up to a positive constant, for `g` dividing `self`.
    pub(crate) fn div_exact(&self, g: &IntPoly) -> IntPoly {
        let (q, r) = self.pseudo_div(g);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        let q = q.primitive();
        if q.lc().is_negative() != self.lc().is_negative() {
            q.neg()
        } else {
            q
        }
    }

    /// Square-free part with the sign of the leading coefficient preserved.
    pub(crate) fn square_free(&self) -> IntPoly {
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.clone().primitive();
        }
        self.div_exact(&g)
    }

    /// Sign of the polynomial at a finite `x`, computed exactly.
    pub(crate) fn sign_at(&self, x: &Dyadic) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let d = self.degree();
        // acc = Σ c_i m^i q^(d-i), a positive multiple of p(x) when x = m/q.
        let mut acc = self.0[d].clone();
        let mut qpow = BigInt::one();
        for i in (0..d).rev() {
            acc *= &x.num;
            qpow *= &x.den;
            acc += &self.0[i] * &qpow;
        }
        sign(&acc)
    }

    /// Sign as `x → +∞` (`positive`) or `x → −∞`.
    pub(crate) fn sign_at_infinity(&self, positive: bool) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let s = sign(self.lc());
        if positive || self.degree().is_multiple_of(2) {
            s
        } else {
            -s
        }
    }
}

fn sign(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_negative() {
        -1
    } else {
        1
    }
}

/// `num / den` with `den` a positive power of two.
pub(crate) struct Dyadic {
    num: BigInt,
    den: BigInt,
}

impl Dyadic {
    pub(crate) fn from_f64(x: f64) -> Dyadic {
        let (m, e) = decode(x);
        if e >= 0 {
            Dyadic {
                num: m << (e as usize),
                den: BigInt::one(),
            }
        } else {
            Dyadic {
                num: m,
                den: BigInt::one() << ((-e) as usize),
            }
        }
    }
}

/// Sturm chain of a square-free polynomial.
pub(crate) struct Sturm {
    chain: Vec<IntPoly>,
}

impl Sturm {
    pub(crate) fn new(p: &IntPoly) -> Sturm {
        let mut chain = vec![p.clone(), p.derivative().primitive()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() || chain[n - 1].degree() == 0 {
                break;
            }
            let r = chain[n - 2].prem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.primitive().neg());
        }
        chain.retain(|p| !p.is_zero());
        Sturm { chain }
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub(crate) fn variations_at(&self, x: &Dyadic) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    pub(crate) fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at_infinity(positive)))
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub(crate) fn count(&self, lo: &Dyadic, hi: &Dyadic) -> usize {
        self.variations_at(lo).saturating_sub(self.variations_at(hi))
    }

    /// Number of distinct real roots.
    pub(crate) fn count_all(&self) -> usize {
        self.variations_at_infinity(false)
            .saturating_sub(self.variations_at_infinity(true))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_of_shared_factor() {
        // (x-1)(x-2) and (x-1)(x+3)
        let a = IntPoly::from_i64(&[2, -3, 1]);
        let b = IntPoly::from_i64(&[-3, 2, 1]);
        assert_eq!(a.gcd(&b), IntPoly::from_i64(&[-1, 1]));
    }

    #[test]
    fn square_free_part_drops_repeats() {
        // (x-1)^2 (x+2)
        let p = IntPoly::from_i64(&[2, -3, 0, 1]);
        assert_eq!(p.square_free(), IntPoly::from_i64(&[-2, 1, 1]));
    }

    #[test]
    fn from_f64_is_exact_multiple() {
        let p = IntPoly::from_f64(&[0.5, -0.25, 3.0]).primitive();
        assert_eq!(p, IntPoly::from_i64(&[2, -1, 12]));
    }

    #[test]
    fn sturm_counts() {
        let p = IntPoly::from_i64(&[-1, 0, 1]);
        let s = Sturm::new(&p);
        assert_eq!(s.count_all(), 2);
        assert_eq!(s.count(&Dyadic::from_f64(0.0), &Dyadic::from_f64(2.0)), 1);
        let q = IntPoly::from_i64(&[1, 0, 1]);
        assert_eq!(Sturm::new(&q).count_all(), 0);
    }

    #[test]
    fn exact_sign_at_root() {
        let p = IntPoly::from_i64(&[-1, 0, 4]);
        assert_eq!(p.sign_at(&Dyadic::from_f64(0.5)), 0);
        assert_eq!(p.sign_at(&Dyadic::from_f64(0.5000000000000001)), 1);
    }
}
