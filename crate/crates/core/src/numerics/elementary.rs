//! exp, log and π on balls.
//!
//! Point evaluations run at a raised working precision and the ball layer
//! tracks every rounding, so results need no separate error analysis beyond
//! the series tails added explicitly below.

use num_bigint::Sign;

use super::ball::BoundedReal;
use super::dyadic::Dyadic;
use super::mag::Mag;

const GUARD: u32 = 24;

/// π by Machin's formula `16 atan(1/5) - 4 atan(1/239)`.
pub fn pi(prec: u32) -> BoundedReal {
    let wp = prec + GUARD;
    let a = atan_inv(5, wp).mul_2exp(4);
    let b = atan_inv(239, wp).mul_2exp(2);
    (a - b).with_prec(prec)
}

/// `atan(1/k)` for an integer `k >= 2` by its alternating series.
fn atan_inv(k: i64, wp: u32) -> BoundedReal {
    let k2 = BoundedReal::from_i64(k * k, wp);
    let mut power = BoundedReal::from_ratio(1, k, wp); // k^-(2j+1)
    let mut sum = BoundedReal::zero(wp);
    let mut j: i64 = 0;
    loop {
        let term = &power / &BoundedReal::from_i64(2 * j + 1, wp);
        if term.mid().top() < -(wp as i64) - 4 {
            // alternating with decreasing terms: the tail is below this term
            return sum.add_error(Mag::from_dyadic_up(term.mid()).add(&term.rad()));
        }
        sum = if j % 2 == 0 { sum + term } else { sum - term };
        power = &power / &k2;
        j += 1;
    }
}

/// `ln 2 = 2 atanh(1/3)`.
pub fn ln2(prec: u32) -> BoundedReal {
    let wp = prec + GUARD;
    atanh_series(&BoundedReal::from_ratio(1, 3, wp), wp)
        .mul_2exp(1)
        .with_prec(prec)
}

/// `atanh(z)` for `|z| <= 1/3`.
fn atanh_series(z: &BoundedReal, wp: u32) -> BoundedReal {
    let z2 = z.sqr();
    let mut power = z.clone();
    let mut sum = BoundedReal::zero(wp);
    let mut j: i64 = 0;
    loop {
        let term = &power / &BoundedReal::from_i64(2 * j + 1, wp);
        sum = sum + &term;
        power = &power * &z2;
        j += 1;
        let p = Mag::from_dyadic_up(power.mid()).add(&power.rad());
        if p.is_zero() || p.top() < -(wp as i64) - 4 {
            // remaining terms are bounded by |z|^(2j+1) / (1 - z^2) <= 9/8 |z|^(2j+1)
            return sum.add_error(p.mul_2exp(1));
        }
    }
}

/// `exp(x)`.
pub fn exp(x: &BoundedReal, prec: u32) -> BoundedReal {
    if !x.is_finite() {
        return BoundedReal::indeterminate(prec);
    }
    if x.rad() > Mag::pow2(-4) {
        let lo = exp_point(&x.lower(), prec);
        let hi = exp_point(&x.upper(), prec);
        return lo.union(&hi);
    }
    let y = exp_point(x.mid(), prec);
    if x.rad().is_zero() {
        return y;
    }
    // |exp(m + t) - exp(m)| <= exp(m) (e^r - 1) <= 2 r exp(m) for r <= 1
    let ymag = Mag::from_dyadic_up(y.mid()).add(&y.rad());
    y.add_error(ymag.mul(&x.rad()).mul_2exp(1))
}

fn exp_point(d: &Dyadic, prec: u32) -> BoundedReal {
    if d.is_zero() {
        return BoundedReal::one(prec);
    }
    // argument reduction: exp(d) = exp(d / 2^k)^(2^k) with |d / 2^k| < 2^-12
    let k = (d.top() + 12).max(0);
    let wp = prec + GUARD + k as u32;
    let t = BoundedReal::from_dyadic(d.mul_2exp(-k), wp);
    let mut sum = BoundedReal::one(wp);
    let mut term = BoundedReal::one(wp);
    let mut j: i64 = 1;
    loop {
        term = &(&term * &t) / &BoundedReal::from_i64(j, wp);
        sum = sum + &term;
        j += 1;
        let tm = Mag::from_dyadic_up(term.mid()).add(&term.rad());
        if tm.is_zero() || tm.top() < -(wp as i64) - 4 {
            // |t| < 1/2, so the tail is at most twice the next term, which is below tm
            sum = sum.add_error(tm.mul_2exp(1));
            break;
        }
    }
    for _ in 0..k {
        sum = sum.sqr();
    }
    sum.with_prec(prec)
}

/// Natural logarithm; indeterminate unless the ball is strictly positive.
pub fn ln(x: &BoundedReal, ln2: &BoundedReal, prec: u32) -> BoundedReal {
    if !x.definitely_positive() {
        return BoundedReal::indeterminate(prec);
    }
    let y = ln_point(x.mid(), ln2, prec);
    if x.rad().is_zero() {
        return y;
    }
    // |log(m + t) - log(m)| <= r / (m - r)
    let lo = Mag::from_dyadic_down(&x.lower());
    y.add_error(x.rad().div(&lo))
}

fn ln_point(d: &Dyadic, ln2: &BoundedReal, prec: u32) -> BoundedReal {
    debug_assert_eq!(d.sign(), Sign::Plus);
    let wp = prec + GUARD;
    // d = m 2^e with m in [3/4, 3/2)
    let mut e = d.top() - 1;
    let mut m = d.mul_2exp(-e);
    if m >= Dyadic::new(3.into(), -1) {
        m = m.mul_2exp(-1);
        e += 1;
    }
    let mb = BoundedReal::from_dyadic(m, wp);
    let one = BoundedReal::one(wp);
    let z = &(&mb - &one) / &(&mb + &one);
    let log_m = atanh_series(&z, wp).mul_2exp(1);
    let ln2 = ln2.with_prec(wp);
    (log_m + BoundedReal::from_i64(e, wp) * ln2).with_prec(prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_digits() {
        let p = pi(128);
        let lo =
            BoundedReal::from_decimal_str("3.14159265358979323846264338327950288", 128).unwrap();
        let hi =
            BoundedReal::from_decimal_str("3.14159265358979323846264338327950289", 128).unwrap();
        assert!(p.definitely_greater(&lo));
        assert!(p.definitely_less(&hi));
        assert!(p.rad() < Mag::pow2(-120));
    }

    #[test]
    fn ln2_digits() {
        let l = ln2(128);
        let lo =
            BoundedReal::from_decimal_str("0.693147180559945309417232121458176568", 128).unwrap();
        let hi =
            BoundedReal::from_decimal_str("0.693147180559945309417232121458176569", 128).unwrap();
        assert!(l.definitely_greater(&lo) && l.definitely_less(&hi));
    }

    #[test]
    fn exp_log_roundtrip() {
        let l2 = ln2(128);
        for v in [1i64, 7, 1000, 123456789] {
            let x = BoundedReal::from_i64(v, 128);
            let back = exp(&ln(&x, &l2, 128), 128);
            assert!(back.contains(&x) || back.overlaps(&x), "{v}: {back}");
            assert!(back.rad() < Mag::pow2(-90 + 30));
        }
        let e = exp(&BoundedReal::one(128), 128);
        let lo =
            BoundedReal::from_decimal_str("2.718281828459045235360287471352662497", 128).unwrap();
        let hi =
            BoundedReal::from_decimal_str("2.718281828459045235360287471352662498", 128).unwrap();
        assert!(e.definitely_greater(&lo) && e.definitely_less(&hi));
    }

    #[test]
    fn exp_of_negative_and_wide_arguments() {
        let x = BoundedReal::from_i64(-50, 128);
        let y = exp(&x, 128);
        assert!(y.definitely_positive());
        let wide = BoundedReal::from_parts(Dyadic::from_i64(1), Mag::pow2(-1), 128);
        let w = exp(&wide, 128);
        assert!(w.contains(&exp(&BoundedReal::from_ratio(1, 2, 128), 128)));
        assert!(w.contains(&exp(&BoundedReal::from_ratio(3, 2, 128), 128)));
    }

    #[test]
    fn log_rejects_nonpositive() {
        let l2 = ln2(64);
        assert!(!ln(&BoundedReal::zero(64), &l2, 64).is_finite());
    }
}
