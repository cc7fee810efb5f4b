//! Covolume lower bound `ν` for a given field through the class-number route,
//! and the constants the field sieve is built from.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{double_factorial, factorial, BoundedReal, EvalContext};

/// Class number value fed into `ν`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassNumber {
    Exact(u64),
    /// `16 (π/12)^d D_k`, not rounded.
    BrauerSiegel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldBoundInput {
    pub n: u32,
    pub d: u32,
    pub d_k: u64,
    /// Absolute discriminant of the quadratic extension `ℓ/k` (odd `n`).
    pub d_l: Option<u64>,
    /// Class number of `k` (even `n`) or of `ℓ` (odd `n`).
    pub h: ClassNumber,
}

impl FieldBoundInput {
    pub fn even(n: u32, d: u32, d_k: u64, h: ClassNumber) -> Self {
        FieldBoundInput {
            n,
            d,
            d_k,
            d_l: None,
            h,
        }
    }

    pub fn odd(n: u32, d: u32, d_k: u64, d_l: u64, h: ClassNumber) -> Self {
        FieldBoundInput {
            n,
            d,
            d_k,
            d_l: Some(d_l),
            h,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 4 {
            return Err(Error::InvalidArgument(format!(
                "ν is defined for n >= 4, got {}",
                self.n
            )));
        }
        if self.d == 0 || self.d_k == 0 {
            return Err(Error::InvalidArgument(
                "degree and discriminant must be positive".into(),
            ));
        }
        if self.h == ClassNumber::Exact(0) {
            return Err(Error::InvalidArgument(
                "class number must be positive".into(),
            ));
        }
        if self.n % 2 == 1 {
            match self.d_l {
                None if self.d > 1 => {
                    return Err(Error::InvalidArgument(
                        "odd n needs the discriminant of the quadratic extension ℓ/k".into(),
                    ))
                }
                Some(dl) if (dl as u128) < (self.d_k as u128).pow(2) => {
                    return Err(Error::InvalidArgument(format!(
                        "D_l = {dl} is below D_k^2 = {}",
                        (self.d_k as u128).pow(2)
                    )))
                }
                _ => {}
            }
        }
        Ok(())
    }
}

fn fact(m: u64, ctx: &EvalContext) -> BoundedReal {
    BoundedReal::from_bigint(&factorial(m), ctx.prec())
}

/// `prod_{i=1}^{m} (2i-1)!/(2π)^{2i}`.
pub(crate) fn gamma_product(m: u32, ctx: &EvalContext) -> BoundedReal {
    let two_pi = ctx.two_pi();
    let mut acc = ctx.int(1);
    for i in 1..=m {
        acc = acc * fact(2 * i as u64 - 1, ctx) / two_pi.powi(2 * i as i64);
    }
    acc
}

/// `B_1(r) = (12/2π) prod_{i=1}^{r} (2i-1)!/(2π)^{2i}`.
pub fn b1(r: u32, ctx: &EvalContext) -> Result<BoundedReal> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!("B_1 needs r >= 2, got {r}")));
    }
    Ok(ctx.int(12) / ctx.two_pi() * gamma_product(r, ctx))
}

/// `B_2(r) = ((r-1)!/(2π)^r) prod_{i=1}^{r-1} (2i-1)!/(2π)^{2i}`.
pub fn b2(r: u32, ctx: &EvalContext) -> Result<BoundedReal> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!("B_2 needs r >= 2, got {r}")));
    }
    Ok(fact(r as u64 - 1, ctx) / ctx.two_pi().powi(r as i64) * gamma_product(r - 1, ctx))
}

/// `16 (π/12)^d D_k` as a ball.
pub fn class_number_bound(d: u32, d_k: u64, ctx: &EvalContext) -> Result<BoundedReal> {
    if d == 0 || d_k == 0 {
        return Err(Error::InvalidArgument(
            "degree and discriminant must be positive".into(),
        ));
    }
    Ok(ctx.int(16)
        * (ctx.pi() / ctx.int(12)).powi(d as i64)
        * BoundedReal::from_bigint(&BigInt::from(d_k), ctx.prec()))
}

/// `⌈16 (π/12)^d D_k⌉`, certified: escalates precision until the ceiling is
/// determined.
pub fn class_number_estimate(d: u32, d_k: u64, ctx: &EvalContext) -> Result<u64> {
    let mut prec = ctx.prec();
    loop {
        let c = ctx.at_precision(prec);
        let v = class_number_bound(d, d_k, &c)?;
        // ⌈x⌉ = -⌊-x⌋
        if let Some(f) = v.neg().floor_certified() {
            let ceil = -f;
            return u64::try_from(ceil)
                .map_err(|_| Error::InvalidArgument("class number bound overflows u64".into()));
        }
        if prec >= 4096 {
            return Err(Error::Undecided {
                what: format!("ceiling of the class-number bound for d={d}, D={d_k}"),
                prec,
            });
        }
        prec *= 2;
    }
}

/// Class number entering `ν`: of `k` for even `n`, of `ℓ` for odd `n`.
fn class_number_value(input: &FieldBoundInput, ctx: &EvalContext) -> Result<BoundedReal> {
    match input.h {
        ClassNumber::Exact(h) => Ok(BoundedReal::from_bigint(&BigInt::from(h), ctx.prec())),
        ClassNumber::BrauerSiegel if input.n.is_multiple_of(2) => {
            class_number_bound(input.d, input.d_k, ctx)
        }
        ClassNumber::BrauerSiegel => {
            let dl = match input.d_l {
                Some(dl) => dl,
                None => input.d_k.checked_mul(input.d_k).ok_or_else(|| {
                    Error::InvalidArgument(format!("D_k^2 overflows for D_k = {}", input.d_k))
                })?,
            };
            class_number_bound(2 * input.d, dl, ctx)
        }
    }
}

fn big(x: u64, ctx: &EvalContext) -> BoundedReal {
    BoundedReal::from_bigint(&BigInt::from(x), ctx.prec())
}

/// Lower bound for `ν(n, k, f)` with the zeta and `λ` factors dropped.
///
/// Even `n = 2r`: `C_1/(2^d h)`. Odd `n = 2r-1`:
/// `C_2 (D_l/D_k^2)^(r-1/2)/(2^(d+1) h)` for odd `r` and
/// `C_2 (D_l/D_k^2)^(r-3/2)/(2^(2d-1) h)` for even `r`.
pub fn nu_lower_bound(input: &FieldBoundInput, ctx: &EvalContext) -> Result<BoundedReal> {
    input.validate()?;
    let n = input.n;
    let d = input.d as i64;
    let h = class_number_value(input, ctx)?;
    let dk = big(input.d_k, ctx);
    if n.is_multiple_of(2) {
        let r = (n / 2) as i64;
        let vol_factor = ctx.int(2) * ctx.two_pi().powi(r)
            / BoundedReal::from_bigint(&double_factorial(2 * r as u64 - 1), ctx.prec());
        let c1 = ctx.pow_ratio(&dk, 2 * r * r + r, 2)
            * vol_factor
            * gamma_product(r as u32, ctx).powi(d);
        return Ok(c1 / (ctx.int(2).powi(d) * h));
    }
    let r = n.div_ceil(2) as i64;
    let c2 = ctx.pow_ratio(&dk, 2 * r * r - r, 2)
        * b2(r as u32, ctx)?.powi(d)
        * ctx.int(4)
        * ctx.pi().powi(r)
        / fact(r as u64 - 1, ctx);
    let rel = match input.d_l {
        Some(dl) => big(dl, ctx) / dk.sqr(),
        None => ctx.int(1),
    };
    let (rel_pow, den) = if r % 2 == 1 {
        (ctx.pow_ratio(&rel, 2 * r - 1, 2), ctx.int(2).powi(d + 1))
    } else {
        (
            ctx.pow_ratio(&rel, 2 * r - 3, 2),
            ctx.int(2).powi(2 * d - 1),
        )
    };
    Ok(c2 * rel_pow / (den * h))
}
