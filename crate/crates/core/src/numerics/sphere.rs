use super::ball::BoundedReal;
use super::combinatorics::{double_factorial, factorial};
use super::context::EvalContext;
use crate::error::{Error, Result};

/// Euclidean volume of the unit sphere `S^n` in `R^(n+1)`.
///
/// Uses `2 (2π)^r / (2r-1)!!` for `n = 2r` and `2 π^r / (r-1)!` for `n = 2r - 1`.
pub fn sphere_volume(n: u32, ctx: &EvalContext) -> Result<BoundedReal> {
    check_dim(n)?;
    let prec = ctx.prec();
    if n.is_multiple_of(2) {
        let r = (n / 2) as i64;
        let num = ctx.two_pi().powi(r).mul_2exp(1);
        Ok(num / BoundedReal::from_bigint(&double_factorial(2 * r as u64 - 1), prec))
    } else {
        let r = n.div_ceil(2) as i64;
        let num = ctx.pi().powi(r).mul_2exp(1);
        Ok(num / BoundedReal::from_bigint(&factorial(r as u64 - 1), prec))
    }
}

/// Same quantity from `2 π^((n+1)/2) / Γ((n+1)/2)`, with Γ at half-integers
/// taken from `Γ(k + 1/2) = (2k)! √π / (4^k k!)`.
pub fn sphere_volume_gamma(n: u32, ctx: &EvalContext) -> Result<BoundedReal> {
    check_dim(n)?;
    let prec = ctx.prec();
    if n % 2 == 1 {
        let s = n.div_ceil(2) as i64;
        let gamma = BoundedReal::from_bigint(&factorial(s as u64 - 1), prec);
        return Ok(ctx.pi().powi(s).mul_2exp(1) / gamma);
    }
    let k = (n / 2) as u64;
    let gamma = half_integer_gamma(k, ctx);
    let pi_pow = ctx.pi().powi(k as i64) * ctx.sqrt_pi();
    Ok(pi_pow.mul_2exp(1) / gamma)
}

/// `Γ(k + 1/2)`.
pub fn half_integer_gamma(k: u64, ctx: &EvalContext) -> BoundedReal {
    let prec = ctx.prec();
    let num = BoundedReal::from_bigint(&factorial(2 * k), prec) * ctx.sqrt_pi();
    let den = BoundedReal::from_bigint(&factorial(k), prec).mul_2exp(2 * k as i64);
    num / den
}

fn check_dim(n: u32) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidArgument(
            "sphere dimension must be >= 1".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_values() {
        let ctx = EvalContext::default();
        let s2 = sphere_volume(2, &ctx).unwrap();
        assert!(s2.overlaps(&ctx.pi().mul_2exp(2)));
        let s3 = sphere_volume(3, &ctx).unwrap();
        assert!(s3.overlaps(&ctx.pi().sqr().mul_2exp(1)));
        let s1 = sphere_volume(1, &ctx).unwrap();
        assert!(s1.overlaps(&ctx.two_pi()));
        assert!(sphere_volume(0, &ctx).is_err());
    }

    #[test]
    fn gamma_half_is_sqrt_pi() {
        let ctx = EvalContext::default();
        assert!(half_integer_gamma(0, &ctx).overlaps(&ctx.sqrt_pi()));
        // Γ(5/2) = 3√π/4
        let g = half_integer_gamma(2, &ctx);
        assert!(g.overlaps(&(ctx.sqrt_pi() * ctx.ratio(3, 4))));
    }
}
