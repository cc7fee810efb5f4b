//! Midpoint-radius ("ball") real arithmetic with outward rounding.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::dyadic::Dyadic;
use super::mag::Mag;

/// A certified real number: the exact value lies in `[mid - rad, mid + rad]`.
///
/// Every operation returns a ball containing the exact result whenever the
/// inputs contain their exact values. Midpoints carry at most `prec` bits;
/// the discarded part is folded into the radius.
#[derive(Clone, Debug)]
pub struct BoundedReal {
    mid: Dyadic,
    rad: Mag,
    prec: u32,
}

impl BoundedReal {
    pub fn from_parts(mid: Dyadic, rad: Mag, prec: u32) -> BoundedReal {
        let (mid, err) = mid.round_floor(prec);
        BoundedReal {
            mid,
            rad: rad.add(&err),
            prec,
        }
    }

    pub fn from_dyadic(mid: Dyadic, prec: u32) -> BoundedReal {
        Self::from_parts(mid, Mag::ZERO, prec)
    }

    pub fn zero(prec: u32) -> BoundedReal {
        BoundedReal {
            mid: Dyadic::zero(),
            rad: Mag::ZERO,
            prec,
        }
    }

    pub fn one(prec: u32) -> BoundedReal {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> BoundedReal {
        Self::from_dyadic(Dyadic::from_i64(v), prec)
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> BoundedReal {
        Self::from_dyadic(Dyadic::from_bigint(v.clone()), prec)
    }

    /// Promotes an exact rational; the radius only covers the single rounding
    /// of the quotient.
    pub fn from_rational(q: &BigRational, prec: u32) -> BoundedReal {
        let (mid, err) = Dyadic::from_ratio(q.numer(), q.denom(), prec);
        BoundedReal {
            mid,
            rad: err,
            prec,
        }
    }

    pub fn from_ratio(num: i64, den: i64, prec: u32) -> BoundedReal {
        Self::from_rational(&BigRational::new(num.into(), den.into()), prec)
    }

    /// Parses a plain decimal literal such as `"0.019525"` exactly.
    pub fn from_decimal_str(s: &str, prec: u32) -> Option<BoundedReal> {
        decimal_to_rational(s).map(|q| Self::from_rational(&q, prec))
    }

    /// The whole real line; all comparisons against it are undecided.
    pub fn indeterminate(prec: u32) -> BoundedReal {
        BoundedReal {
            mid: Dyadic::zero(),
            rad: Mag::INF,
            prec,
        }
    }

    pub fn mid(&self) -> &Dyadic {
        &self.mid
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn is_finite(&self) -> bool {
        !self.rad.is_inf()
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    /// Re-rounds the midpoint to a different working precision.
    pub fn with_prec(&self, prec: u32) -> BoundedReal {
        Self::from_parts(self.mid.clone(), self.rad, prec)
    }

    /// Widens the radius by `err`.
    pub fn add_error(&self, err: Mag) -> BoundedReal {
        BoundedReal {
            mid: self.mid.clone(),
            rad: self.rad.add(&err),
            prec: self.prec,
        }
    }

    pub fn lower(&self) -> Dyadic {
        debug_assert!(self.is_finite());
        self.mid.sub(&self.rad.to_dyadic())
    }

    pub fn upper(&self) -> Dyadic {
        debug_assert!(self.is_finite());
        self.mid.add(&self.rad.to_dyadic())
    }

    /// Ball enclosing `[lo, hi]`.
    pub fn from_endpoints(lo: &Dyadic, hi: &Dyadic, prec: u32) -> BoundedReal {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        let mid = lo.add(hi).mul_2exp(-1);
        let half = hi.sub(lo).mul_2exp(-1);
        Self::from_parts(mid, Mag::from_dyadic_up(&half), prec)
    }

    /// Smallest ball enclosing both.
    pub fn union(&self, other: &BoundedReal) -> BoundedReal {
        let prec = self.prec.max(other.prec);
        if !self.is_finite() || !other.is_finite() {
            return Self::indeterminate(prec);
        }
        let lo = self.lower().min(other.lower());
        let hi = self.upper().max(other.upper());
        Self::from_endpoints(&lo, &hi, prec)
    }

    pub fn definitely_less(&self, other: &BoundedReal) -> bool {
        self.is_finite() && other.is_finite() && self.upper() < other.lower()
    }

    pub fn definitely_greater(&self, other: &BoundedReal) -> bool {
        other.definitely_less(self)
    }

    pub fn definitely_positive(&self) -> bool {
        self.is_finite() && self.lower() > Dyadic::zero()
    }

    pub fn definitely_negative(&self) -> bool {
        self.is_finite() && self.upper() < Dyadic::zero()
    }

    pub fn contains_zero(&self) -> bool {
        !self.definitely_positive() && !self.definitely_negative()
    }

    /// Whether `other`'s interval lies inside this one.
    pub fn contains(&self, other: &BoundedReal) -> bool {
        if !self.is_finite() {
            return true;
        }
        other.is_finite() && self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    /// One unit in the last place of the midpoint at this precision.
    pub fn ulp(&self) -> Mag {
        if self.mid.is_zero() {
            Mag::ZERO
        } else {
            Mag::pow2(self.mid.top() - self.prec as i64)
        }
    }

    /// [`contains`](Self::contains) after widening `self` by `ulps` ulp.
    pub fn contains_up_to_ulps(&self, other: &BoundedReal, ulps: u64) -> bool {
        let slack = self.ulp().mul(&Mag::from_u64(ulps));
        self.add_error(slack).contains(other)
    }

    pub fn contains_dyadic(&self, x: &Dyadic) -> bool {
        !self.is_finite() || (&self.lower() <= x && x <= &self.upper())
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        if !self.is_finite() {
            return true;
        }
        let lo = dyadic_to_rational(&self.lower());
        let hi = dyadic_to_rational(&self.upper());
        &lo <= q && q <= &hi
    }

    pub fn overlaps(&self, other: &BoundedReal) -> bool {
        !self.definitely_less(other) && !other.definitely_less(self)
    }

    pub fn neg(&self) -> BoundedReal {
        BoundedReal {
            mid: self.mid.neg(),
            rad: self.rad,
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> BoundedReal {
        if self.mid.sign() != Sign::Minus {
            return self.clone();
        }
        self.neg()
    }

    pub fn mul_2exp(&self, e: i64) -> BoundedReal {
        BoundedReal {
            mid: self.mid.mul_2exp(e),
            rad: self.rad.mul_2exp(e),
            prec: self.prec,
        }
    }

    fn add_impl(&self, other: &BoundedReal) -> BoundedReal {
        let prec = self.prec.max(other.prec);
        if !self.is_finite() || !other.is_finite() {
            return Self::indeterminate(prec);
        }
        let rad = self.rad.add(&other.rad);
        if other.mid.is_zero() {
            return Self::from_parts(self.mid.clone(), rad, prec);
        }
        if self.mid.is_zero() {
            return Self::from_parts(other.mid.clone(), rad, prec);
        }
        // When one midpoint lies entirely below the other's last kept bit
        // the exact sum would only be truncated again; absorb it instead.
        let (ta, tb) = (self.mid.top(), other.mid.top());
        let gap = prec as i64 + 8;
        if ta - tb > gap {
            return Self::from_parts(
                self.mid.clone(),
                rad.add(&Mag::from_dyadic_up(&other.mid)),
                prec,
            );
        }
        if tb - ta > gap {
            return Self::from_parts(
                other.mid.clone(),
                rad.add(&Mag::from_dyadic_up(&self.mid)),
                prec,
            );
        }
        Self::from_parts(self.mid.add(&other.mid), rad, prec)
    }

    fn mul_impl(&self, other: &BoundedReal) -> BoundedReal {
        let prec = self.prec.max(other.prec);
        if !self.is_finite() || !other.is_finite() {
            return Self::indeterminate(prec);
        }
        let ma = Mag::from_dyadic_up(&self.mid);
        let mb = Mag::from_dyadic_up(&other.mid);
        let rad = ma
            .mul(&other.rad)
            .add(&mb.mul(&self.rad))
            .add(&self.rad.mul(&other.rad));
        Self::from_parts(self.mid.mul(&other.mid), rad, prec)
    }

    fn div_impl(&self, other: &BoundedReal) -> BoundedReal {
        let prec = self.prec.max(other.prec);
        if !self.is_finite() || !other.is_finite() || other.contains_zero() {
            return Self::indeterminate(prec);
        }
        let (q, qerr) = Dyadic::div_trunc(&self.mid, &other.mid, prec);
        if self.rad.is_zero() && other.rad.is_zero() {
            return BoundedReal {
                mid: q,
                rad: qerr,
                prec,
            };
        }
        // |x/y - a/b| <= (ra + |a/b| rb) / (|b| - rb)
        let den = Mag::from_dyadic_down(&other.mid.abs().sub(&other.rad.to_dyadic()));
        let qmag = Mag::from_dyadic_up(&q).add(&qerr);
        let prop = self.rad.add(&qmag.mul(&other.rad)).div(&den);
        BoundedReal {
            mid: q,
            rad: qerr.add(&prop),
            prec,
        }
    }

    pub fn sqr(&self) -> BoundedReal {
        self.mul_impl(self)
    }

    /// Integer power by repeated squaring.
    pub fn pow_u(&self, mut e: u64) -> BoundedReal {
        let mut base = self.clone();
        let mut acc = Self::one(self.prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    pub fn powi(&self, e: i64) -> BoundedReal {
        if e >= 0 {
            self.pow_u(e as u64)
        } else {
            Self::one(self.prec).div_impl(&self.pow_u(e.unsigned_abs()))
        }
    }

    pub fn recip(&self) -> BoundedReal {
        Self::one(self.prec).div_impl(self)
    }

    /// Square root; indeterminate unless the ball is non-negative.
    pub fn sqrt(&self) -> BoundedReal {
        let prec = self.prec;
        if !self.is_finite() || self.definitely_negative() {
            return Self::indeterminate(prec);
        }
        let lo = self.lower();
        if lo.sign() == Sign::Minus {
            return Self::indeterminate(prec);
        }
        if self.rad.is_zero() {
            let (s, err) = sqrt_floor(&self.mid, prec + 2);
            return Self::from_parts(s, err, prec);
        }
        let (slo, _) = sqrt_floor(&lo, prec + 2);
        let (shi, ehi) = sqrt_floor(&self.upper(), prec + 2);
        let shi = shi.add(&ehi.to_dyadic());
        Self::from_endpoints(&slo, &shi, prec)
    }

    /// Largest integer `k` with `k <= x` for every `x` in the ball, when that
    /// is the same integer for the whole ball.
    pub fn floor_certified(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        let a = self.lower().floor();
        let b = self.upper().floor();
        (a == b).then_some(a)
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    /// Midpoint in scientific notation with `digits` significant digits.
    pub fn mid_sci(&self, digits: usize) -> String {
        format_sci(&self.mid, digits)
    }

    /// Radius as a decimal string rounded up, 3 significant digits.
    pub fn rad_sci(&self) -> String {
        if self.rad.is_inf() {
            return "inf".to_string();
        }
        if self.rad.is_zero() {
            return "0".to_string();
        }
        format_sci_up(&self.rad.to_dyadic(), 3)
    }

    /// Number of significant digits of the midpoint that sit above the radius,
    /// plus a few guard digits.
    pub fn meaningful_digits(&self) -> usize {
        if self.mid.is_zero() {
            return 3;
        }
        if self.rad.is_zero() {
            return 40;
        }
        let m = self.mid.log10_abs_approx();
        let r = self.rad.log2_approx() * std::f64::consts::LOG10_2;
        ((m - r).ceil() as i64 + 3).clamp(3, 60) as usize
    }

    /// Midpoint with `decimals` digits after the decimal point.
    pub fn mid_fixed(&self, decimals: u32) -> String {
        format_fixed(&self.mid, decimals)
    }
}

pub(crate) fn sqrt_floor(x: &Dyadic, prec: u32) -> (Dyadic, Mag) {
    if x.is_zero() {
        return (Dyadic::zero(), Mag::ZERO);
    }
    let (mut man, mut exp) = (x.mantissa().clone(), x.exponent());
    if exp & 1 != 0 {
        man <<= 1u8;
        exp -= 1;
    }
    let want = 2 * prec as i64 + 4;
    let have = man.bits() as i64;
    let k = ((want - have).max(0) + 1) / 2;
    man <<= (2 * k) as u64;
    exp -= 2 * k;
    let s = man.sqrt();
    let e = exp / 2;
    (Dyadic::new(s, e), Mag::pow2(e))
}

pub fn dyadic_to_rational(d: &Dyadic) -> BigRational {
    let e = d.exponent();
    if e >= 0 {
        BigRational::from_integer(d.mantissa() << e as u64)
    } else {
        BigRational::new(d.mantissa().clone(), BigInt::one() << (-e) as u64)
    }
}

fn decimal_to_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((a, b)) => (a, b),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = digits.parse().ok()?;
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    let q = BigRational::new(num, den);
    Some(if neg { -q } else { q })
}

fn format_sci(x: &Dyadic, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let mut e10 = x.log10_abs_approx().floor() as i64;
    let lo = BigInt::from(10u32).pow(digits as u32 - 1);
    let hi = BigInt::from(10u32).pow(digits as u32);
    let mut n = x.scaled_round_decimal(digits as i64 - 1 - e10);
    for _ in 0..3 {
        if n.abs() >= hi {
            e10 += 1;
        } else if n.abs() < lo {
            e10 -= 1;
        } else {
            break;
        }
        n = x.scaled_round_decimal(digits as i64 - 1 - e10);
    }
    render_sci(&n, e10)
}

fn format_sci_up(x: &Dyadic, digits: usize) -> String {
    let mut e10 = x.log10_abs_approx().floor() as i64;
    let hi = BigInt::from(10u32).pow(digits as u32);
    let scale = |e: i64| {
        let shifted = dyadic_to_rational(x) * pow10_rational(digits as i64 - 1 - e);
        shifted.ceil().to_integer()
    };
    let mut n = scale(e10);
    if n >= hi {
        e10 += 1;
        n = scale(e10);
    }
    render_sci(&n, e10)
}

fn pow10_rational(k: i64) -> BigRational {
    let p = BigInt::from(10u32).pow(k.unsigned_abs() as u32);
    if k >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

fn render_sci(n: &BigInt, e10: i64) -> String {
    let neg = n.is_negative();
    let s = n.abs().to_string();
    let (head, tail) = s.split_at(1);
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(head);
    if !tail.is_empty() {
        out.push('.');
        out.push_str(tail);
    }
    out.push('e');
    out.push_str(&e10.to_string());
    out
}

fn format_fixed(x: &Dyadic, decimals: u32) -> String {
    let n = x.scaled_round_decimal(decimals as i64);
    let neg = n.is_negative();
    let s = n.abs().to_string();
    let d = decimals as usize;
    let s = if s.len() <= d {
        format!("{}{}", "0".repeat(d + 1 - s.len()), s)
    } else {
        s
    };
    let (int, frac) = s.split_at(s.len() - d);
    let mut out = String::new();
    if neg && !n.is_zero() {
        out.push('-');
    }
    out.push_str(int);
    if d > 0 {
        out.push('.');
        out.push_str(frac);
    }
    out
}

impl fmt::Display for BoundedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.is_finite() {
            return write!(f, "[+/- inf]");
        }
        write!(
            f,
            "[{} +/- {}]",
            self.mid_sci(self.meaningful_digits().min(25)),
            self.rad_sci()
        )
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $impl_fn:ident) => {
        impl $trait<&BoundedReal> for &BoundedReal {
            type Output = BoundedReal;
            fn $method(self, rhs: &BoundedReal) -> BoundedReal {
                self.$impl_fn(rhs)
            }
        }
        impl $trait<BoundedReal> for BoundedReal {
            type Output = BoundedReal;
            fn $method(self, rhs: BoundedReal) -> BoundedReal {
                (&self).$impl_fn(&rhs)
            }
        }
        impl $trait<&BoundedReal> for BoundedReal {
            type Output = BoundedReal;
            fn $method(self, rhs: &BoundedReal) -> BoundedReal {
                (&self).$impl_fn(rhs)
            }
        }
        impl $trait<BoundedReal> for &BoundedReal {
            type Output = BoundedReal;
            fn $method(self, rhs: BoundedReal) -> BoundedReal {
                self.$impl_fn(&rhs)
            }
        }
    };
}

impl BoundedReal {
    fn sub_impl(&self, other: &BoundedReal) -> BoundedReal {
        self.add_impl(&other.neg())
    }
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);
forward_binop!(Div, div, div_impl);

impl Neg for BoundedReal {
    type Output = BoundedReal;
    fn neg(self) -> BoundedReal {
        BoundedReal::neg(&self)
    }
}

impl Neg for &BoundedReal {
    type Output = BoundedReal;
    fn neg(self) -> BoundedReal {
        BoundedReal::neg(self)
    }
}

/// Decimal-string view of a ball used by every machine-readable output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecimalBall {
    pub mid: String,
    pub rad: String,
}

impl From<&BoundedReal> for DecimalBall {
    fn from(x: &BoundedReal) -> Self {
        DecimalBall {
            mid: x.mid_sci(x.meaningful_digits()),
            rad: x.rad_sci(),
        }
    }
}

impl Serialize for BoundedReal {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        DecimalBall::from(self).serialize(serializer)
    }
}

impl Zero for BoundedReal {
    fn zero() -> Self {
        BoundedReal::zero(super::DEFAULT_PRECISION)
    }
    fn is_zero(&self) -> bool {
        self.mid.is_zero() && self.rad.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_promotion_contains_value() {
        let x = BoundedReal::from_ratio(1, 3, 128);
        assert!(x.contains_rational(&q(1, 3)));
        assert!(x.rad() <= Mag::pow2(-127));
    }

    #[test]
    fn division_by_ball_with_zero_is_indeterminate() {
        let z = BoundedReal::from_ratio(1, 3, 64) - BoundedReal::from_ratio(1, 3, 64);
        let y = BoundedReal::one(64) / z;
        assert!(!y.is_finite());
        assert!(!y.definitely_positive());
    }

    #[test]
    fn arithmetic_contains_exact_rational_results() {
        let a = BoundedReal::from_ratio(2, 7, 80);
        let b = BoundedReal::from_ratio(-5, 11, 80);
        assert!((&a + &b).contains_rational(&(q(2, 7) + q(-5, 11))));
        assert!((&a - &b).contains_rational(&(q(2, 7) - q(-5, 11))));
        assert!((&a * &b).contains_rational(&(q(2, 7) * q(-5, 11))));
        assert!((&a / &b).contains_rational(&(q(2, 7) / q(-5, 11))));
        assert!(a.powi(-3).contains_rational(&q(343, 8)));
    }

    #[test]
    fn sqrt_brackets_irrational_value() {
        let two = BoundedReal::from_i64(2, 128);
        let s = two.sqrt();
        assert!(s.sqr().contains(&BoundedReal::from_i64(2, 128)) || s.sqr().overlaps(&two));
        assert!(s.definitely_greater(&BoundedReal::from_ratio(14142, 10000, 128)));
        assert!(s.definitely_less(&BoundedReal::from_ratio(14143, 10000, 128)));
    }

    #[test]
    fn comparisons_are_strict_about_overlap() {
        let a = BoundedReal::from_parts(Dyadic::from_i64(1), Mag::pow2(-4), 64);
        let b = BoundedReal::from_parts(Dyadic::from_i64(1), Mag::pow2(-8), 64);
        assert!(!a.definitely_less(&b));
        assert!(!a.definitely_greater(&b));
        assert!(a.contains(&b));
        assert!(!b.contains(&a));
    }

    #[test]
    fn decimal_formatting() {
        let x = BoundedReal::from_ratio(1792, 1, 64);
        assert_eq!(x.mid_fixed(2), "1792.00");
        assert_eq!(BoundedReal::from_ratio(-1, 8, 64).mid_fixed(2), "-0.13");
        assert_eq!(BoundedReal::from_ratio(12345, 1, 64).mid_sci(3), "1.23e4");
        let p = BoundedReal::from_decimal_str("0.019525", 64).unwrap();
        assert!(p.contains_rational(&q(19525, 1_000_000)));
    }

    #[test]
    fn floor_certified_needs_a_single_integer() {
        let x = BoundedReal::from_ratio(7, 2, 64);
        assert_eq!(x.floor_certified(), Some(BigInt::from(3)));
        let y = BoundedReal::from_parts(Dyadic::from_i64(3), Mag::pow2(-10), 64);
        assert_eq!(y.floor_certified(), None);
    }
}
