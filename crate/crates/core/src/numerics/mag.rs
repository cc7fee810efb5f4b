//! Low-precision magnitudes used as error radii.
//!
//! A [`Mag`] stores `man * 2^exp` with a mantissa of at most [`MAG_BITS`]
//! bits. Every operation rounds *up*, so a `Mag` produced from exact inputs
//! is always an upper bound of the exact magnitude. The `*_lower` helpers
//! round down and are only used where a lower bound is needed (denominators).

use std::cmp::Ordering;

use num_bigint::BigInt;

use super::dyadic::Dyadic;

pub const MAG_BITS: u32 = 30;

const INF_EXP: i64 = i64::MAX / 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mag {
    man: u64,
    exp: i64,
}

impl Mag {
    pub const ZERO: Mag = Mag { man: 0, exp: 0 };
    pub const INF: Mag = Mag {
        man: 1,
        exp: INF_EXP,
    };

    pub fn is_zero(&self) -> bool {
        self.man == 0
    }

    pub fn is_inf(&self) -> bool {
        self.exp >= INF_EXP
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Mag {
        if e >= INF_EXP {
            return Mag::INF;
        }
        Mag { man: 1, exp: e }
    }

    pub fn from_u64(v: u64) -> Mag {
        Self::normalize_up(v as u128, 0)
    }

    fn saturate(man: u64, exp: i64) -> Mag {
        if exp >= INF_EXP {
            Mag::INF
        } else if exp <= -INF_EXP {
            // Far below anything we ever compare against; keep a tiny
            // positive bound instead of silently dropping to zero.
            Mag {
                man: 1,
                exp: -INF_EXP,
            }
        } else {
            Mag { man, exp }
        }
    }

    fn normalize_up(man: u128, exp: i64) -> Mag {
        if man == 0 {
            return Mag::ZERO;
        }
        let bits = 128 - man.leading_zeros();
        if bits <= MAG_BITS {
            return Self::saturate(man as u64, exp);
        }
        let shift = bits - MAG_BITS;
        let mut m = man >> shift;
        if man & ((1u128 << shift) - 1) != 0 {
            m += 1;
        }
        Self::saturate(m as u64, exp.saturating_add(shift as i64))
    }

    fn normalize_down(man: u128, exp: i64) -> Mag {
        if man == 0 {
            return Mag::ZERO;
        }
        let bits = 128 - man.leading_zeros();
        if bits <= MAG_BITS {
            return Self::saturate(man as u64, exp);
        }
        let shift = bits - MAG_BITS;
        Self::saturate((man >> shift) as u64, exp.saturating_add(shift as i64))
    }

    /// Upper bound for `|man| * 2^exp`.
    pub fn from_bigint_up(man: &BigInt, exp: i64) -> Mag {
        let bits = man.bits();
        if bits == 0 {
            return Mag::ZERO;
        }
        if bits <= 64 {
            let digits = man.magnitude().to_u64_digits();
            return Self::normalize_up(digits[0] as u128, exp);
        }
        let shift = bits - 64;
        let digits = (man.magnitude() >> shift).to_u64_digits();
        // truncated low bits contribute at most one unit of the kept part
        Self::normalize_up(digits[0] as u128 + 1, exp.saturating_add(shift as i64))
    }

    /// Lower bound for `|man| * 2^exp`.
    pub fn from_bigint_down(man: &BigInt, exp: i64) -> Mag {
        let bits = man.bits();
        if bits == 0 {
            return Mag::ZERO;
        }
        let (shift, top) = if bits <= 64 {
            (0, man.magnitude().clone())
        } else {
            let s = bits - 64;
            (s, man.magnitude() >> s)
        };
        let digits = top.to_u64_digits();
        Self::normalize_down(digits[0] as u128, exp.saturating_add(shift as i64))
    }

    pub fn from_dyadic_up(x: &Dyadic) -> Mag {
        Self::from_bigint_up(x.mantissa(), x.exponent())
    }

    pub fn from_dyadic_down(x: &Dyadic) -> Mag {
        Self::from_bigint_down(x.mantissa(), x.exponent())
    }

    /// Exact value as a dyadic number (infinite magnitudes are not representable).
    pub fn to_dyadic(&self) -> Dyadic {
        debug_assert!(!self.is_inf());
        Dyadic::new(BigInt::from(self.man), self.exp)
    }

    pub fn add(&self, other: &Mag) -> Mag {
        if self.is_inf() || other.is_inf() {
            return Mag::INF;
        }
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let (hi, lo) = if self.top() >= other.top() {
            (self, other)
        } else {
            (other, self)
        };
        let diff = hi.exp - lo.exp;
        if diff > 90 {
            // lo is below one unit of hi's mantissa
            return Self::normalize_up(hi.man as u128 + 1, hi.exp);
        }
        if diff >= 0 {
            let m = ((hi.man as u128) << diff) + lo.man as u128;
            Self::normalize_up(m, lo.exp)
        } else {
            let m = hi.man as u128 + ((lo.man as u128) << (-diff));
            Self::normalize_up(m, hi.exp)
        }
    }

    pub fn mul(&self, other: &Mag) -> Mag {
        if self.is_zero() || other.is_zero() {
            return Mag::ZERO;
        }
        if self.is_inf() || other.is_inf() {
            return Mag::INF;
        }
        Self::normalize_up(
            self.man as u128 * other.man as u128,
            self.exp.saturating_add(other.exp),
        )
    }

    pub fn mul_lower(&self, other: &Mag) -> Mag {
        if self.is_zero() || other.is_zero() {
            return Mag::ZERO;
        }
        Self::normalize_down(
            self.man as u128 * other.man as u128,
            self.exp.saturating_add(other.exp),
        )
    }

    /// Upper bound for `self / other`; `other` must be nonzero.
    pub fn div(&self, other: &Mag) -> Mag {
        if other.is_zero() || self.is_inf() {
            return Mag::INF;
        }
        if self.is_zero() {
            return Mag::ZERO;
        }
        if other.is_inf() {
            return Mag::ZERO;
        }
        let num = (self.man as u128) << 64;
        let q = num.div_ceil(other.man as u128);
        Self::normalize_up(q, self.exp - other.exp - 64)
    }

    pub fn mul_2exp(&self, e: i64) -> Mag {
        if self.is_zero() || self.is_inf() {
            return *self;
        }
        Self::saturate(self.man, self.exp.saturating_add(e))
    }

    /// Exponent of the leading bit plus one (`2^(top-1) <= self < 2^top`).
    pub fn top(&self) -> i64 {
        if self.is_zero() {
            return i64::MIN;
        }
        self.exp + (64 - self.man.leading_zeros()) as i64
    }

    /// Approximate `log2` (for formatting and heuristics only).
    pub fn log2_approx(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        if self.is_inf() {
            return f64::INFINITY;
        }
        (self.man as f64).log2() + self.exp as f64
    }

    pub fn max(&self, other: &Mag) -> Mag {
        if self >= other {
            *self
        } else {
            *other
        }
    }
}

impl PartialOrd for Mag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mag {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_inf(), other.is_inf()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Greater,
            (false, true) => return Ordering::Less,
            _ => {}
        }
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (ta, tb) = (self.top(), other.top());
        if ta != tb {
            return ta.cmp(&tb);
        }
        // same top bit; align mantissas
        let e = self.exp.min(other.exp);
        let a = (self.man as u128) << (self.exp - e);
        let b = (other.man as u128) << (other.exp - e);
        a.cmp(&b)
    }
}
