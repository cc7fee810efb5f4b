//! Exact dyadic rationals `man * 2^exp`, the midpoints of [`super::BoundedReal`].

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::mag::Mag;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

impl Dyadic {
    /// Builds `man * 2^exp` and strips trailing zero bits.
    pub fn new(man: BigInt, exp: i64) -> Dyadic {
        if man.is_zero() {
            return Dyadic { man, exp: 0 };
        }
        let tz = man.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            Dyadic {
                man: man >> tz,
                exp: exp + tz as i64,
            }
        } else {
            Dyadic { man, exp }
        }
    }

    pub fn zero() -> Dyadic {
        Dyadic {
            man: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn from_i64(v: i64) -> Dyadic {
        Dyadic::new(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: BigInt) -> Dyadic {
        Dyadic::new(v, 0)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn sign(&self) -> Sign {
        self.man.sign()
    }

    pub fn bits(&self) -> u64 {
        self.man.bits()
    }

    /// `2^(top-1) <= |self| < 2^top`; `i64::MIN` for zero.
    pub fn top(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.man.bits() as i64
        }
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            man: -&self.man,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            man: self.man.abs(),
            exp: self.exp,
        }
    }

    pub fn mul_2exp(&self, e: i64) -> Dyadic {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            man: self.man.clone(),
            exp: self.exp + e,
        }
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.man << (self.exp - e) as u64;
        let b = &other.man << (other.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.man * &other.man, self.exp + other.exp)
    }

    /// Truncates toward negative infinity to at most `prec` mantissa bits.
    /// Returns the rounded value and an upper bound on the discarded part.
    pub fn round_floor(&self, prec: u32) -> (Dyadic, Mag) {
        let bits = self.man.bits();
        if bits <= prec as u64 {
            return (self.clone(), Mag::ZERO);
        }
        let shift = bits - prec as u64;
        // `>>` on BigInt rounds toward negative infinity
        let kept = &self.man >> shift;
        let err_exp = self.exp + shift as i64;
        (Dyadic::new(kept, err_exp), Mag::pow2(err_exp))
    }

    /// Largest integer not exceeding `self`.
    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << self.exp as u64
        } else {
            &self.man >> (-self.exp) as u64
        }
    }

    /// Smallest integer not below `self`.
    pub fn ceil(&self) -> BigInt {
        -(self.neg().floor())
    }

    /// Exact conversion `num / den` is not dyadic in general; this computes a
    /// quotient with `prec` significant bits, truncated toward zero, and a
    /// bound on the truncation error.
    pub fn div_trunc(num: &Dyadic, den: &Dyadic, prec: u32) -> (Dyadic, Mag) {
        assert!(!den.is_zero(), "division by zero dyadic");
        if num.is_zero() {
            return (Dyadic::zero(), Mag::ZERO);
        }
        // shift numerator so that the integer quotient has >= prec + 2 bits
        let nb = num.man.bits() as i64;
        let db = den.man.bits() as i64;
        let shift = (prec as i64 + 2 + db - nb).max(0);
        let scaled = &num.man << shift as u64;
        let (q, r) = scaled.div_rem(&den.man);
        let exp = num.exp - den.exp - shift;
        let err = if r.is_zero() {
            Mag::ZERO
        } else {
            Mag::pow2(exp)
        };
        let (rounded, err2) = Dyadic::new(q, exp).round_floor(prec);
        (rounded, err.add(&err2))
    }

    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> (Dyadic, Mag) {
        Self::div_trunc(
            &Dyadic::from_bigint(num.clone()),
            &Dyadic::from_bigint(den.clone()),
            prec,
        )
    }

    /// Approximate value as `f64` (saturates outside the `f64` range).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.man.bits() as i64;
        let shift = (bits - 60).max(0);
        let top = (&self.man >> shift as u64).to_f64().unwrap_or(0.0);
        let e = self.exp + shift;
        if e > 2000 {
            return top.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        top * 2f64.powi(e as i32)
    }

    /// Approximate `log10(|self|)`, valid far outside the `f64` range.
    pub fn log10_abs_approx(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.man.bits() as i64;
        let shift = (bits - 60).max(0);
        let top = (&self.man.abs() >> shift as u64).to_f64().unwrap_or(1.0);
        top.log10() + (self.exp + shift) as f64 * std::f64::consts::LOG10_2
    }

    /// `round(self * 10^k)` rounded to nearest, ties away from zero.
    pub fn scaled_round_decimal(&self, k: i64) -> BigInt {
        let ten = BigInt::from(10u32);
        let (mut num, mut den) = (self.man.clone(), BigInt::one());
        if k >= 0 {
            num *= ten.pow(k as u32);
        } else {
            den *= ten.pow((-k) as u32);
        }
        if self.exp >= 0 {
            num <<= self.exp as u64;
        } else {
            den <<= (-self.exp) as u64;
        }
        let neg = num.is_negative();
        let num = num.abs();
        let (q, r) = num.div_rem(&den);
        let q = if (r << 1u8) >= den { q + 1 } else { q };
        if neg {
            -q
        } else {
            q
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.man.sign(), other.man.sign());
        let rank = |s: Sign| match s {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        };
        if rank(sa) != rank(sb) {
            return rank(sa).cmp(&rank(sb));
        }
        if sa == Sign::NoSign {
            return Ordering::Equal;
        }
        let (ta, tb) = (self.top(), other.top());
        if ta != tb {
            let mag = ta.cmp(&tb);
            return if sa == Sign::Plus { mag } else { mag.reverse() };
        }
        self.sub(other).man.sign().cmp(&Sign::NoSign)
    }
}
