//! Quadratic Dirichlet L-values and Dedekind zeta of quadratic fields.

use num_bigint::BigInt;
use num_traits::Zero;

use super::character::QuadraticCharacter;
use super::zeta::{hurwitz_zeta, zeta_int};
use crate::error::{Error, Result};
use crate::numerics::{bernoulli_poly, factorial, BoundedReal, EvalContext, Rational};

/// `L(s, χ)` for integer `s >= 2`: the generalized-Bernoulli closed form when
/// `χ(-1) = (-1)^s`, the Hurwitz decomposition otherwise.
pub fn dirichlet_l(chi: &QuadraticCharacter, s: u32, ctx: &EvalContext) -> Result<BoundedReal> {
    check_s(s)?;
    if parity_matches(chi, s) {
        dirichlet_l_closed(chi, s, ctx)
    } else {
        dirichlet_l_series(chi, s, ctx)
    }
}

pub fn parity_matches(chi: &QuadraticCharacter, s: u32) -> bool {
    let sign = if s.is_multiple_of(2) { 1 } else { -1 };
    chi.parity() == sign
}

fn check_s(s: u32) -> Result<()> {
    if s < 2 {
        return Err(Error::InvalidArgument(format!(
            "L-values are only provided for s >= 2, got {s}"
        )));
    }
    Ok(())
}

/// Generalized Bernoulli number `B_{k,χ} = f^{k-1} sum_{a=1}^{f} χ(a) B_k(a/f)`.
pub fn generalized_bernoulli(chi: &QuadraticCharacter, k: u32) -> Rational {
    let f = chi.conductor();
    let mut acc = Rational::zero();
    for a in 1..=f {
        let c = chi.value(a);
        if c == 0 {
            continue;
        }
        let b = bernoulli_poly(k as u64, &Rational::new(BigInt::from(a), BigInt::from(f)));
        if c > 0 {
            acc += b;
        } else {
            acc -= b;
        }
    }
    acc * Rational::from_integer(BigInt::from(f).pow(k - 1))
}

/// Closed form for matching parity:
///
/// * `D > 0`, `k` even: `L = (-1)^(k/2+1) √f (2π/f)^k B_{k,χ} / (2 k!)`
/// * `D < 0`, `k` odd: `L = (-1)^((k+1)/2) √f (2π/f)^k B_{k,χ} / (2 k!)`
pub fn dirichlet_l_closed(
    chi: &QuadraticCharacter,
    s: u32,
    ctx: &EvalContext,
) -> Result<BoundedReal> {
    check_s(s)?;
    if !parity_matches(chi, s) {
        return Err(Error::InvalidArgument(format!(
            "closed form needs χ(-1) = (-1)^s; D = {}, s = {s}",
            chi.discriminant()
        )));
    }
    let prec = ctx.prec();
    let f = chi.conductor() as i64;
    let bk = generalized_bernoulli(chi, s);
    let mut coeff = bk / Rational::from_integer(factorial(s as u64) * 2);
    let negate = if s.is_multiple_of(2) {
        (s / 2).is_multiple_of(2)
    } else {
        s.div_ceil(2) % 2 == 1
    };
    if negate {
        coeff = -coeff;
    }
    let sqrt_f = ctx.int(f).sqrt();
    let angle = ctx.two_pi() / ctx.int(f);
    Ok(BoundedReal::from_rational(&coeff, prec) * sqrt_f * angle.powi(s as i64))
}

/// `L(s, χ) = f^-s sum_{a=1}^{f} χ(a) ζ(s, a/f)` with certified Hurwitz values.
pub fn dirichlet_l_series(
    chi: &QuadraticCharacter,
    s: u32,
    ctx: &EvalContext,
) -> Result<BoundedReal> {
    check_s(s)?;
    let f = chi.conductor();
    let mut acc = BoundedReal::zero(ctx.prec());
    for a in 1..=f {
        let c = chi.value(a);
        if c == 0 {
            continue;
        }
        let h = hurwitz_zeta(s, &Rational::new(BigInt::from(a), BigInt::from(f)), ctx);
        acc = if c > 0 { acc + h } else { acc - h };
    }
    Ok(acc / ctx.int(f as i64).powi(s as i64))
}

/// `ζ_k(s) = ζ(s) L(s, χ_D)` for the real quadratic field of discriminant `D`.
pub fn dedekind_zeta_quadratic(d: i64, s: u32, ctx: &EvalContext) -> Result<BoundedReal> {
    if d <= 0 {
        return Err(Error::InvalidArgument(format!(
            "real quadratic discriminant expected, got {d}"
        )));
    }
    let chi = QuadraticCharacter::new(d)?;
    Ok(zeta_int(s, ctx)? * dirichlet_l(&chi, s, ctx)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi(d: i64) -> QuadraticCharacter {
        QuadraticCharacter::new(d).unwrap()
    }

    #[test]
    fn catalan_constant() {
        let ctx = EvalContext::default();
        let g = dirichlet_l(&chi(-4), 2, &ctx).unwrap();
        let lo =
            BoundedReal::from_decimal_str("0.91596559417721901505460351493238411", 128).unwrap();
        let hi =
            BoundedReal::from_decimal_str("0.91596559417721901505460351493238412", 128).unwrap();
        assert!(g.definitely_greater(&lo) && g.definitely_less(&hi));
    }

    #[test]
    fn chi5_at_two() {
        let ctx = EvalContext::default();
        let expect = ctx.pi().sqr() * ctx.int(4) / (ctx.int(25) * ctx.int(5).sqrt());
        let closed = dirichlet_l_closed(&chi(5), 2, &ctx).unwrap();
        let series = dirichlet_l_series(&chi(5), 2, &ctx).unwrap();
        assert!(closed.overlaps(&expect));
        assert!(series.overlaps(&expect));
    }

    #[test]
    fn chi_minus4_at_three() {
        // L(3, χ_-4) = π^3/32
        let ctx = EvalContext::default();
        let l = dirichlet_l_closed(&chi(-4), 3, &ctx).unwrap();
        assert!(l.overlaps(&(ctx.pi().powi(3) / ctx.int(32))));
    }

    #[test]
    fn generalized_bernoulli_small() {
        assert_eq!(
            generalized_bernoulli(&chi(5), 2),
            Rational::new(4.into(), 5.into())
        );
        assert_eq!(
            generalized_bernoulli(&chi(-4), 3),
            Rational::new(3.into(), 2.into())
        );
    }

    #[test]
    fn wrong_parity_and_small_s_are_rejected() {
        let ctx = EvalContext::default();
        assert!(dirichlet_l_closed(&chi(5), 3, &ctx).is_err());
        assert!(dirichlet_l(&chi(5), 1, &ctx).is_err());
        assert!(dedekind_zeta_quadratic(20, 2, &ctx).is_err());
        assert!(dedekind_zeta_quadratic(-3, 2, &ctx).is_err());
    }
}
