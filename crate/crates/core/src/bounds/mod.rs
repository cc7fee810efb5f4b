//! Lower bounds for covolumes of arithmetic subgroups of `PO(n,1)`.

mod field_bound;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lfunc::{
    dedekind_zeta_quadratic, dirichlet_l, l_relative_quartic, prime_cutoff_for, zeta_even,
    zeta_odd, QuadraticCharacter, SplittingPolynomial,
};
use crate::numerics::{double_factorial, factorial, sphere_volume, BoundedReal, EvalContext};

pub use field_bound::{
    b1, b2, class_number_bound, class_number_estimate, nu_lower_bound, ClassNumber, FieldBoundInput,
};

/// Which case of the volume formulas produced a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// Sharp constants for `n = 2, 3`.
    SmallDimension,
    /// Even `n = 2r`, cocompact, `r` even.
    EvenCocompactREven,
    /// Even `n = 2r`, cocompact, `r` odd.
    EvenCocompactROdd,
    /// Even `n = 2r`, non-cocompact, `r = 0, 1 mod 4`.
    EvenNoncompactR01,
    /// Even `n = 2r`, non-cocompact, `r = 2, 3 mod 4`.
    EvenNoncompactR23,
    /// Odd `n = 2r - 1`, cocompact.
    OddCocompact,
    /// Odd `n = 2r - 1`, non-cocompact, `r` even.
    OddNoncompactREven,
    /// Odd `n = 2r - 1`, non-cocompact, `r = 1 mod 4`.
    OddNoncompactR1,
    /// Odd `n = 2r - 1`, non-cocompact, `r = 3 mod 4`.
    OddNoncompactR3,
}

impl Branch {
    pub fn select(n: u32, cocompact: bool) -> Result<Branch> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "volume bounds need n >= 2, got {n}"
            )));
        }
        if n <= 3 {
            return Ok(Branch::SmallDimension);
        }
        Ok(if n.is_multiple_of(2) {
            let r = n / 2;
            match (cocompact, r % 2, r % 4) {
                (true, 0, _) => Branch::EvenCocompactREven,
                (true, _, _) => Branch::EvenCocompactROdd,
                (false, _, 0 | 1) => Branch::EvenNoncompactR01,
                (false, _, _) => Branch::EvenNoncompactR23,
            }
        } else {
            let r = n.div_ceil(2);
            match (cocompact, r % 2, r % 4) {
                (true, _, _) => Branch::OddCocompact,
                (false, 0, _) => Branch::OddNoncompactREven,
                (false, _, 1) => Branch::OddNoncompactR1,
                (false, _, _) => Branch::OddNoncompactR3,
            }
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VolumeBound {
    pub n: u32,
    pub cocompact: bool,
    pub value: BoundedReal,
    pub branch: Branch,
}

/// `ω_c(3)`, displayed truncated to six decimals.
pub const OMEGA_C3: &str = "0.019525";
/// `ω_nc(3)`, displayed truncated to four decimals.
pub const OMEGA_NC3: &str = "0.0423";

/// A displayed decimal with a radius of one unit in its last digit.
fn displayed_constant(text: &str, ctx: &EvalContext) -> BoundedReal {
    let decimals = text.split_once('.').map(|(_, f)| f.len()).unwrap_or(0);
    let mid = BoundedReal::from_decimal_str(text, ctx.prec()).expect("valid literal");
    let unit = BoundedReal::from_rational(
        &crate::numerics::Rational::new(
            1.into(),
            num_bigint::BigInt::from(10u32).pow(decimals as u32),
        ),
        ctx.prec(),
    );
    let unit_mag = crate::numerics::Mag::from_dyadic_up(unit.mid()).add(&unit.rad());
    mid.add_error(unit_mag)
}

/// Universal lower bound `ω_c(n)` or `ω_nc(n)` for the covolume.
pub fn omega(n: u32, cocompact: bool, ctx: &EvalContext) -> Result<VolumeBound> {
    let branch = Branch::select(n, cocompact)?;
    let value = match n {
        2 => {
            let den = if cocompact { 42 } else { 6 };
            ctx.pi() / ctx.int(den)
        }
        3 => displayed_constant(if cocompact { OMEGA_C3 } else { OMEGA_NC3 }, ctx),
        _ if n.is_multiple_of(2) => omega_even(n / 2, branch, ctx)?,
        _ => omega_odd(n.div_ceil(2), branch, ctx)?,
    };
    Ok(VolumeBound {
        n,
        cocompact,
        value,
        branch,
    })
}

fn fact(m: u64, ctx: &EvalContext) -> BoundedReal {
    BoundedReal::from_bigint(&factorial(m), ctx.prec())
}

/// `prod_{i=1}^{m} ((2i-1)!/(2π)^{2i})^e · Z(2i)` with `Z` the chosen zeta.
fn zeta_product<F>(m: u32, e: i64, ctx: &EvalContext, z: F) -> Result<BoundedReal>
where
    F: Fn(u32) -> Result<BoundedReal>,
{
    let two_pi = ctx.two_pi();
    let mut acc = ctx.int(1);
    for i in 1..=m {
        let f = fact(2 * i as u64 - 1, ctx) / two_pi.powi(2 * i as i64);
        acc = acc * f.powi(e) * z(2 * i)?;
    }
    Ok(acc)
}

fn zeta_k0(s: u32, ctx: &EvalContext) -> Result<BoundedReal> {
    dedekind_zeta_quadratic(5, s, ctx)
}

fn omega_even(r: u32, branch: Branch, ctx: &EvalContext) -> Result<BoundedReal> {
    let ri = r as i64;
    let lead = ctx.two_pi().powi(ri)
        / BoundedReal::from_bigint(&double_factorial(2 * r as u64 - 1), ctx.prec());
    match branch {
        Branch::EvenCocompactREven | Branch::EvenCocompactROdd => {
            let coef = if branch == Branch::EvenCocompactREven {
                ctx.int(2)
            } else {
                ctx.int(4).powi(ri) - ctx.int(1)
            };
            // 5^(r^2 + r/2)
            let five = ctx.pow_ratio(&ctx.int(5), 2 * ri * ri + ri, 2);
            let prod = zeta_product(r, 2, ctx, |s| zeta_k0(s, ctx))?;
            Ok(coef * five * lead * prod)
        }
        _ => {
            let coef = if branch == Branch::EvenNoncompactR01 {
                ctx.int(2)
            } else {
                ctx.int(2).powi(ri) - ctx.int(1)
            };
            let prod = zeta_product(r, 1, ctx, |s| zeta_even(s / 2, ctx))?;
            Ok(coef * lead * prod)
        }
    }
}

fn omega_odd(r: u32, branch: Branch, ctx: &EvalContext) -> Result<BoundedReal> {
    let ri = r as i64;
    match branch {
        Branch::OddCocompact => {
            let five = ctx.pow_ratio(&ctx.int(5), 2 * ri * ri - ri, 2);
            let eleven = ctx.pow_ratio(&ctx.int(11), 2 * ri - 1, 2);
            let den = ctx.int(2).powi(2 * ri) * ctx.pi().powi(ri);
            let l = ctx.memoized(&format!("L_ell0_k0({r})"), || {
                l_relative_quartic(
                    &SplittingPolynomial::ell0(),
                    5,
                    r,
                    prime_cutoff_for(ctx.prec()),
                    ctx,
                )
            })?;
            let prod = zeta_product(r - 1, 2, ctx, |s| zeta_k0(s, ctx))?;
            Ok(five * eleven * fact(r as u64 - 1, ctx) / den * l * prod)
        }
        _ => {
            let prod = zeta_product(r - 1, 1, ctx, |s| zeta_even(s / 2, ctx))?;
            let two_r = ctx.int(2).powi(ri);
            let head = match branch {
                Branch::OddNoncompactREven => {
                    let chi = QuadraticCharacter::new(-3)?;
                    ctx.pow_ratio(&ctx.int(3), 2 * ri - 1, 2) / two_r * dirichlet_l(&chi, r, ctx)?
                }
                Branch::OddNoncompactR1 => zeta_odd(r, ctx)? / ctx.int(2).powi(ri - 1),
                _ => {
                    let num = (two_r.clone() - ctx.int(1)) * (ctx.int(2).powi(ri - 1) - ctx.int(1));
                    num / (ctx.int(3) * two_r) * zeta_odd(r, ctx)?
                }
            };
            Ok(head * prod)
        }
    }
}

/// One row of the growth certificate: `ω(n)/Vol(S^n)` in both classes.
#[derive(Clone, Debug, Serialize)]
pub struct GrowthRow {
    pub n: u32,
    pub cocompact: BoundedReal,
    pub noncocompact: BoundedReal,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthCertificate {
    pub rows: Vec<GrowthRow>,
    /// Stride of the ratio test (the case split repeats with period 8 in `n`).
    pub stride: u32,
    /// First `n` from which the stride ratios are required to increase.
    pub from: u32,
    pub increasing_cocompact: bool,
    pub increasing_noncocompact: bool,
    /// Whether plain consecutive ratios also increase from `from` on.
    pub consecutive_increasing_cocompact: bool,
    pub consecutive_increasing_noncocompact: bool,
}

impl GrowthCertificate {
    pub fn holds(&self) -> bool {
        self.increasing_cocompact && self.increasing_noncocompact
    }
}

pub const GROWTH_FROM: u32 = 20;
pub const GROWTH_STRIDE: u32 = 8;

/// `ω(n)/Vol(S^n)` for `2 <= n <= n_max`, with a check that
/// `g(n + 8)/g(n)` increases strictly for `n >= 20`.
pub fn growth_certificate(n_max: u32, ctx: &EvalContext) -> Result<GrowthCertificate> {
    if !(2..=64).contains(&n_max) {
        return Err(Error::InvalidArgument(format!(
            "growth certificate needs 2 <= n_max <= 64, got {n_max}"
        )));
    }
    let mut rows = Vec::new();
    for n in 2..=n_max {
        let vol = sphere_volume(n, ctx)?;
        rows.push(GrowthRow {
            n,
            cocompact: omega(n, true, ctx)?.value / &vol,
            noncocompact: omega(n, false, ctx)?.value / &vol,
        });
    }
    let pick_c = |r: &GrowthRow| r.cocompact.clone();
    let pick_nc = |r: &GrowthRow| r.noncocompact.clone();
    Ok(GrowthCertificate {
        increasing_cocompact: ratios_increase(&rows, GROWTH_STRIDE, pick_c),
        increasing_noncocompact: ratios_increase(&rows, GROWTH_STRIDE, pick_nc),
        consecutive_increasing_cocompact: ratios_increase(&rows, 1, pick_c),
        consecutive_increasing_noncocompact: ratios_increase(&rows, 1, pick_nc),
        rows,
        stride: GROWTH_STRIDE,
        from: GROWTH_FROM,
    })
}

fn ratios_increase<F>(rows: &[GrowthRow], stride: u32, pick: F) -> bool
where
    F: Fn(&GrowthRow) -> BoundedReal,
{
    let idx = |n: u32| (n - 2) as usize;
    let last = rows.last().map(|r| r.n).unwrap_or(0);
    let mut prev: Option<BoundedReal> = None;
    let mut n = GROWTH_FROM;
    while n + stride <= last {
        let q = pick(&rows[idx(n + stride)]) / pick(&rows[idx(n)]);
        if let Some(p) = &prev {
            if !q.definitely_greater(p) {
                return false;
            }
        }
        prev = Some(q);
        n += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branch_selection_follows_case_split() {
        assert_eq!(Branch::select(8, true).unwrap(), Branch::EvenCocompactREven);
        assert_eq!(Branch::select(6, true).unwrap(), Branch::EvenCocompactROdd);
        assert_eq!(Branch::select(8, false).unwrap(), Branch::EvenNoncompactR01);
        assert_eq!(
            Branch::select(10, false).unwrap(),
            Branch::EvenNoncompactR01
        );
        assert_eq!(
            Branch::select(12, false).unwrap(),
            Branch::EvenNoncompactR23
        );
        assert_eq!(
            Branch::select(14, false).unwrap(),
            Branch::EvenNoncompactR23
        );
        assert_eq!(
            Branch::select(16, false).unwrap(),
            Branch::EvenNoncompactR01
        );
        assert_eq!(Branch::select(9, false).unwrap(), Branch::OddNoncompactR1);
        assert_eq!(Branch::select(13, false).unwrap(), Branch::OddNoncompactR3);
        assert_eq!(
            Branch::select(15, false).unwrap(),
            Branch::OddNoncompactREven
        );
        assert_eq!(
            Branch::select(7, false).unwrap(),
            Branch::OddNoncompactREven
        );
        assert_eq!(Branch::select(3, true).unwrap(), Branch::SmallDimension);
        assert!(Branch::select(1, true).is_err());
    }

    #[test]
    fn small_dimension_constants() {
        let ctx = EvalContext::default();
        let w = omega(2, true, &ctx).unwrap();
        assert!(w.value.overlaps(&(ctx.pi() / ctx.int(42))));
        let w3 = omega(3, false, &ctx).unwrap();
        assert!(w3.value.contains(&ctx.ratio(423, 10_000)));
        assert!(w3.value.contains(&ctx.ratio(4239, 100_000)));
        assert!(omega(1, true, &ctx).is_err());
    }

    #[test]
    fn omega_positive_through_table_range() {
        let ctx = EvalContext::default();
        for n in 4..=27 {
            for c in [true, false] {
                let w = omega(n, c, &ctx).unwrap();
                assert!(w.value.definitely_positive(), "n={n} c={c}");
            }
        }
    }
}
