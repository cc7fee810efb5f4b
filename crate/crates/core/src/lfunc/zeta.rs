//! Riemann and Hurwitz zeta values at integers `s >= 2`.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::numerics::{bernoulli, factorial, BoundedReal, EvalContext, Mag, Rational};

/// Above this many terms the plain Dirichlet series gives way to
/// Euler-Maclaurin summation.
pub const PLAIN_SERIES_LIMIT: u64 = 4096;

/// `ζ(2i) = |B_{2i}| (2π)^{2i} / (2 (2i)!)`.
pub fn zeta_even(i: u32, ctx: &EvalContext) -> Result<BoundedReal> {
    if i == 0 {
        return Err(Error::InvalidArgument("zeta_even needs i >= 1".into()));
    }
    let m = 2 * i as u64;
    let b = bernoulli(m)?.abs();
    let coeff = b / Rational::from_integer(factorial(m) * 2);
    let c = BoundedReal::from_rational(&coeff, ctx.prec());
    Ok(c * ctx.two_pi().powi(m as i64))
}

/// `ζ(r)` for odd `r >= 3`.
///
/// Uses the plain series with an integral tail bound when that needs at most
/// [`PLAIN_SERIES_LIMIT`] terms, and Euler-Maclaurin otherwise.
pub fn zeta_odd(r: u32, ctx: &EvalContext) -> Result<BoundedReal> {
    if r < 3 || r.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "zeta_odd needs odd r >= 3, got {r}"
        )));
    }
    let terms = plain_series_terms(r, ctx.prec());
    match terms {
        Some(n) => Ok(zeta_series(r, n, ctx)),
        None => Ok(hurwitz_zeta(r, &Rational::from_integer(1.into()), ctx)),
    }
}

/// `ζ(s)` for any integer `s >= 2`.
pub fn zeta_int(s: u32, ctx: &EvalContext) -> Result<BoundedReal> {
    if s < 2 {
        return Err(Error::InvalidArgument(format!(
            "zeta needs s >= 2, got {s}"
        )));
    }
    if s.is_multiple_of(2) {
        zeta_even(s / 2, ctx)
    } else {
        zeta_odd(s, ctx)
    }
}

/// Number of terms `N` with `N^(1-s)/(s-1) < 2^-(prec+8)`, if it is small.
fn plain_series_terms(s: u32, prec: u32) -> Option<u64> {
    let bits = (prec + 8) as f64 / (s - 1) as f64;
    if bits > (PLAIN_SERIES_LIMIT as f64).log2() {
        return None;
    }
    Some((2f64.powf(bits).ceil() as u64).max(2))
}

/// `sum_{n <= N} n^-s` plus the tail bound `N^(1-s)/(s-1)` in the radius.
pub fn zeta_series(s: u32, n_terms: u64, ctx: &EvalContext) -> BoundedReal {
    let prec = ctx.prec();
    let mut sum = BoundedReal::zero(prec);
    for n in 1..=n_terms {
        let den = BigInt::from(n).pow(s);
        sum = sum + BoundedReal::from_rational(&Rational::new(1.into(), den), prec);
    }
    let tail = Mag::from_u64(n_terms)
        .pow_neg(s - 1)
        .div(&Mag::from_u64(s as u64 - 1));
    sum.add_error(tail)
}

/// Hurwitz zeta `ζ(s, a) = sum_{k >= 0} (a + k)^-s` for integer `s >= 2` and
/// rational `a > 0`, by Euler-Maclaurin summation.
///
/// With `f(x) = (a + x)^-s` every derivative has constant sign on `[N, ∞)`,
/// so the remainder after the `j < J` correction terms is at most twice the
/// size of term `J`.
pub fn hurwitz_zeta(s: u32, a: &Rational, ctx: &EvalContext) -> BoundedReal {
    assert!(s >= 2, "hurwitz_zeta needs s >= 2");
    assert!(a.is_positive(), "hurwitz_zeta needs a > 0");
    let prec = ctx.prec();
    let wp = prec + 16;
    let n_direct = (prec as u64 / 2 + 10).max(s as u64);
    let a_ball = BoundedReal::from_rational(a, wp);

    let mut sum = BoundedReal::zero(wp);
    for k in 0..n_direct {
        let x = &a_ball + &BoundedReal::from_i64(k as i64, wp);
        sum = sum + x.powi(-(s as i64));
    }
    let x = &a_ball + &BoundedReal::from_i64(n_direct as i64, wp);
    let x_inv = x.recip();
    let x_pow = x_inv.powi(s as i64); // x^-s
                                      // integral and midpoint terms
    sum = sum + &(&x_pow * &x) / &BoundedReal::from_i64(s as i64 - 1, wp);
    sum = sum + x_pow.mul_2exp(-1);

    // correction terms B_{2j}/(2j)! (s)_{2j-1} x^{-s-2j+1}
    let x_inv2 = x_inv.sqr();
    let mut pow = &x_pow * &x_inv; // x^{-s-1}
    let mut rising = BigInt::from(s); // (s)_1
    let target = Mag::pow2(-(wp as i64) - 4);
    let mut j: u64 = 1;
    loop {
        let coeff =
            bernoulli(2 * j).expect("even index") / Rational::from_integer(factorial(2 * j));
        let term =
            BoundedReal::from_rational(&(coeff * Rational::from_integer(rising.clone())), wp)
                * &pow;
        let size = Mag::from_dyadic_up(term.mid()).add(&term.rad());
        if size.mul_2exp(1) < target || j > 4 * n_direct {
            sum = sum.add_error(size.mul_2exp(1));
            break;
        }
        sum = sum + term;
        // advance (s)_{2j-1} -> (s)_{2j+1} and the power of x
        let s64 = s as u64;
        rising = rising * (s64 + 2 * j - 1) * (s64 + 2 * j);
        pow = &pow * &x_inv2;
        j += 1;
    }
    sum.with_prec(prec)
}

trait MagPow {
    fn pow_neg(&self, e: u32) -> Mag;
}

impl MagPow for Mag {
    /// Upper bound for `self^-e`.
    fn pow_neg(&self, e: u32) -> Mag {
        let mut acc = Mag::from_u64(1);
        for _ in 0..e {
            acc = acc.div(self);
        }
        acc
    }
}
