//! Truncated Euler products with explicit tail bounds.

use num_bigint::BigInt;
use num_traits::One;

use super::character::QuadraticCharacter;
use super::quartic::SplittingPolynomial;
use crate::error::{Error, Result};
use crate::numerics::{primes_below, BoundedReal, EvalContext, Mag, PRIME_CACHE_LIMIT};

pub const DEFAULT_PRIME_CUTOFF: u64 = 100_000;

/// Prime cutoff scaled with the working precision (`DEFAULT_PRIME_CUTOFF`
/// at 128 bits), so that tails shrink when the precision goes up.
pub fn prime_cutoff_for(prec: u32) -> u64 {
    (DEFAULT_PRIME_CUTOFF * prec as u64 / 128).clamp(1_000, PRIME_CACHE_LIMIT - 1)
}

/// Upper bound for `sum_{p > P} -log(1 - p^-s)`, namely
/// `P^(1-s) / ((s-1)(1 - P^-s))`.
pub fn tail_bound(cutoff: u64, s: u32) -> Mag {
    let p = Mag::from_u64(cutoff);
    let mut p_pow = Mag::from_u64(1); // P^(s-1), rounded down so the quotient rounds up
    for _ in 0..s - 1 {
        p_pow = p_pow.mul_lower(&p);
    }
    // 1 - P^-s >= 1/2 for P >= 2, s >= 1
    Mag::from_u64(2)
        .div(&p_pow)
        .div(&Mag::from_u64(s as u64 - 1))
}

/// `prod_f (1 - p^(-f s))^-1`.
fn local_factor(p: u64, degrees: &[u32], s: u32, prec: u32) -> BoundedReal {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for &f in degrees {
        let q = BigInt::from(p).pow(f * s);
        den *= &q - 1;
        num *= q;
    }
    BoundedReal::from_bigint(&num, prec) / BoundedReal::from_bigint(&den, prec)
}

fn primes_up_to(cutoff: u64, ctx: &EvalContext) -> Vec<u64> {
    if cutoff < PRIME_CACHE_LIMIT {
        ctx.primes()
            .iter()
            .copied()
            .take_while(|&p| p <= cutoff)
            .collect()
    } else {
        primes_below(cutoff + 1)
    }
}

/// Runs a product over primes `p <= cutoff`, stopping early once the
/// remaining tail is negligible at the working precision. Returns the
/// product and the cutoff actually used.
fn truncated_product<F>(
    cutoff: u64,
    s: u32,
    deg: u32,
    ctx: &EvalContext,
    mut factor: F,
) -> Result<(BoundedReal, u64)>
where
    F: FnMut(u64) -> Result<BoundedReal>,
{
    let prec = ctx.prec();
    let negligible = Mag::pow2(-(prec as i64) - 20);
    let mut acc = BoundedReal::one(prec);
    let mut used = cutoff;
    for p in primes_up_to(cutoff, ctx) {
        acc = acc * factor(p)?;
        if p >= 11 && tail_bound(p, s).mul(&Mag::from_u64(8 * deg as u64)) < negligible {
            used = p;
            break;
        }
    }
    Ok((acc, used))
}

fn check_args(s: u32, cutoff: u64) -> Result<()> {
    if s < 2 {
        return Err(Error::InvalidArgument(format!(
            "Euler products need s >= 2, got {s}"
        )));
    }
    if cutoff < 11 {
        return Err(Error::InvalidArgument(format!(
            "prime cutoff must be >= 11, got {cutoff}"
        )));
    }
    Ok(())
}

/// A ball `[1, 1 + 2x]` (as `1 ± 2x`) covering `exp(±x)` for `x <= 1/4`.
fn tail_ball(x: Mag, prec: u32) -> BoundedReal {
    BoundedReal::one(prec).add_error(x.mul_2exp(1))
}

/// `ζ(s)` as an Euler product.
pub fn zeta_euler(s: u32, cutoff: u64, ctx: &EvalContext) -> Result<BoundedReal> {
    check_args(s, cutoff)?;
    let (prod, used) = truncated_product(cutoff, s, 1, ctx, |p| {
        Ok(local_factor(p, &[1], s, ctx.prec()))
    })?;
    Ok(prod * tail_ball(tail_bound(used, s), ctx.prec()))
}

/// `ζ_k(s)` for a real quadratic field as an Euler product.
pub fn dedekind_zeta_quadratic_euler(
    d: i64,
    s: u32,
    cutoff: u64,
    ctx: &EvalContext,
) -> Result<BoundedReal> {
    check_args(s, cutoff)?;
    let chi = QuadraticCharacter::new(d)?;
    let (prod, used) = truncated_product(cutoff, s, 2, ctx, |p| {
        let degs: &[u32] = match chi.value(p) {
            1 => &[1, 1],
            -1 => &[2],
            _ => &[1],
        };
        Ok(local_factor(p, degs, s, ctx.prec()))
    })?;
    Ok(prod * tail_ball(tail_bound(used, s).mul(&Mag::from_u64(2)), ctx.prec()))
}

/// `ζ_ℓ(s)` for the quartic field defined by `poly`.
pub fn dedekind_zeta_quartic(
    poly: &SplittingPolynomial,
    s: u32,
    cutoff: u64,
    ctx: &EvalContext,
) -> Result<BoundedReal> {
    check_args(s, cutoff)?;
    let (prod, used) = truncated_product(cutoff, s, 4, ctx, |p| {
        Ok(local_factor(p, &poly.residue_degrees(p)?, s, ctx.prec()))
    })?;
    Ok(prod * tail_ball(tail_bound(used, s).mul(&Mag::from_u64(4)), ctx.prec()))
}

/// `L_{ℓ|k}(r) = ζ_ℓ(r) / ζ_k(r)` for a quartic `ℓ` containing the real
/// quadratic field `k` of discriminant `base_d`.
///
/// Both products run over the same primes, so the quotient is taken prime
/// by prime. The tail of the quotient lies in `[exp(-2T), exp(4T)]`.
pub fn l_relative_quartic(
    poly: &SplittingPolynomial,
    base_d: i64,
    r: u32,
    cutoff: u64,
    ctx: &EvalContext,
) -> Result<BoundedReal> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!(
            "relative L-value needs r >= 2, got {r}"
        )));
    }
    check_args(r, cutoff)?;
    let chi = QuadraticCharacter::new(base_d)?;
    if base_d <= 0
        || !poly
            .field_discriminant()
            .is_multiple_of(base_d as u64 * base_d as u64)
    {
        return Err(Error::InvalidArgument(format!(
            "the quartic field (|D| = {}) cannot contain the quadratic field of discriminant {base_d}",
            poly.field_discriminant()
        )));
    }
    let (prod, used) = truncated_product(cutoff, r, 4, ctx, |p| {
        let top = local_factor(p, &poly.residue_degrees(p)?, r, ctx.prec());
        let base: &[u32] = match chi.value(p) {
            1 => &[1, 1],
            -1 => &[2],
            _ => &[1],
        };
        Ok(top / local_factor(p, base, r, ctx.prec()))
    })?;
    Ok(prod * tail_ball(tail_bound(used, r).mul(&Mag::from_u64(4)), ctx.prec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfunc::zeta::zeta_even;

    #[test]
    fn tail_bound_dominates_prime_sum() {
        // sum over primes in (100, 10^5] of p^-2 is below the bound at 100
        let ctx = EvalContext::default();
        let mut s = 0f64;
        for &p in ctx.primes().iter().filter(|&&p| p > 100 && p <= 100_000) {
            s += -(1.0 - (p as f64).powi(-2)).ln();
        }
        assert!(s < tail_bound(100, 2).log2_approx().exp2());
    }

    #[test]
    fn zeta_two_by_euler_product() {
        let ctx = EvalContext::default();
        let e = zeta_euler(2, 10_000, &ctx).unwrap();
        assert!(e.overlaps(&zeta_even(1, &ctx).unwrap()));
        assert!(e.rad() < Mag::pow2(-10));
    }

    #[test]
    fn relative_l_rejects_bad_input() {
        let ctx = EvalContext::default();
        let f = SplittingPolynomial::ell0();
        assert!(l_relative_quartic(&f, 5, 1, 100, &ctx).is_err());
        assert!(l_relative_quartic(&f, 5, 3, 7, &ctx).is_err());
        assert!(l_relative_quartic(&f, 8, 3, 100, &ctx).is_err());
    }

    #[test]
    fn relative_l_at_large_r_is_one() {
        let ctx = EvalContext::default();
        let l = l_relative_quartic(&SplittingPolynomial::ell0(), 5, 31, 100, &ctx).unwrap();
        // every local factor is 1 + O(p^-31); the value is within 1e-15 of 1
        let dist = (&l - &BoundedReal::one(128)).abs();
        assert!(dist.definitely_less(&BoundedReal::from_ratio(1, 1_000_000_000_000_000, 128)));
        assert!(l.rad() < Mag::pow2(-50));
    }
}
