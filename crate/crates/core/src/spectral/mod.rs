//! Spectral-gap side: `δ(n)`, `M(n)`, the ratios `R_c`, `R_nc` and the
//! dimension cutoffs they imply.

mod reference;
mod report;

use num_bigint::BigInt;
use serde::Serialize;

use crate::bounds::omega;
use crate::error::{Error, Result};
use crate::numerics::{sphere_volume, BoundedReal, DeltaMode, EvalContext, Rational};

pub use reference::{
    decimals, matches_to_printed_digits, parse_reference, reference_row, relative_error,
    ReferenceRow, REFERENCE_TABLE,
};
pub use report::{display_value, DimensionReport, DimensionRow, OutputFormat};

/// Default upper end of the dimension scan.
pub const DEFAULT_CEILING: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralGap {
    pub n: u32,
    #[serde(serialize_with = "ser_rational")]
    pub delta: Rational,
    pub mode: DeltaMode,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl SpectralGap {
    /// Proven: `δ(2) = 3/16`, `δ(n) = (2n-3)/4`. Conjectural: `δ(2) = 1/4`,
    /// `δ(n) = n - 1`.
    pub fn new(n: u32, mode: DeltaMode) -> Result<SpectralGap> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "spectral gap needs n >= 2, got {n}"
            )));
        }
        let r = |a: i64, b: i64| Rational::new(BigInt::from(a), BigInt::from(b));
        let n64 = n as i64;
        let delta = match (mode, n) {
            (DeltaMode::Proven, 2) => r(3, 16),
            (DeltaMode::Proven, _) => r(2 * n64 - 3, 4),
            (DeltaMode::Conjectural, 2) => r(1, 4),
            (DeltaMode::Conjectural, _) => r(n64 - 1, 1),
        };
        Ok(SpectralGap { n, delta, mode })
    }

    /// `n/δ(n)`, exact.
    pub fn quotient(&self) -> Rational {
        Rational::from_integer(BigInt::from(self.n)) / &self.delta
    }
}

/// `M(n)^2 = (n/δ(n))^n` as an exact rational.
pub fn m_bound_squared(n: u32, mode: DeltaMode) -> Result<Rational> {
    let q = SpectralGap::new(n, mode)?.quotient();
    Ok(num_traits::pow::pow(q, n as usize))
}

/// `M(n)` rounded up to `decimals` digits, exactly.
pub fn m_bound_rounded_up(n: u32, mode: DeltaMode, decimals: u32) -> Result<Rational> {
    let sq = m_bound_squared(n, mode)?;
    let scale = BigInt::from(10u32).pow(decimals);
    // smallest c with c^2 >= 10^(2 decimals) M^2
    let t = sq.numer() * &scale * &scale;
    let den = sq.denom();
    let mut c = (&t / den).sqrt();
    while &c * &c * den < t {
        c += 1;
    }
    while c > BigInt::from(0) && (&c - 1u32) * (&c - 1u32) * den >= t {
        c -= 1;
    }
    Ok(Rational::new(c, scale))
}

/// `M(n) = (n/δ(n))^(n/2)` for the context's δ mode.
pub fn m_bound(n: u32, ctx: &EvalContext) -> Result<BoundedReal> {
    let q = SpectralGap::new(n, ctx.delta_mode())?.quotient();
    let qb = BoundedReal::from_rational(&q, ctx.prec() + 16);
    let hi = ctx.at_precision(ctx.prec() + 16);
    Ok(hi.pow_ratio(&qb, n as i64, 2).with_prec(ctx.prec()))
}

/// `(n/λ_1)^(n/2) Vol(S^n)`.
pub fn conformal_volume_upper(
    n: u32,
    lambda1: &BoundedReal,
    ctx: &EvalContext,
) -> Result<BoundedReal> {
    if !lambda1.definitely_positive() {
        return Err(Error::InvalidArgument("λ_1 must be positive".into()));
    }
    let q = ctx.int(n as i64) / lambda1;
    Ok(ctx.pow_ratio(&q, n as i64, 2) * sphere_volume(n, ctx)?)
}

/// `(R_c(n), R_nc(n))` with `R = M(n) Vol(S^n) / ω(n)`.
pub fn r_ratios(n: u32, ctx: &EvalContext) -> Result<(BoundedReal, BoundedReal)> {
    let top = m_bound(n, ctx)? * sphere_volume(n, ctx)?;
    let rc = &top / &omega(n, true, ctx)?.value;
    let rnc = &top / &omega(n, false, ctx)?.value;
    Ok((rc, rnc))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Cutoffs {
    pub cocompact: u32,
    pub noncocompact: u32,
    pub ceiling: u32,
}

/// Largest `n <= ceiling` with `R_c(n) >= 1` and with `R_nc(n) >= 1`.
///
/// Every comparison with 1 over `2..=ceiling` must be definite; otherwise
/// the result is [`Error::Undecided`].
pub fn dimension_cutoffs(ceiling: u32, ctx: &EvalContext) -> Result<Cutoffs> {
    if !(4..=DEFAULT_CEILING).contains(&ceiling) {
        return Err(Error::InvalidArgument(format!(
            "ceiling must lie in 4..=64, got {ceiling}"
        )));
    }
    let one = ctx.int(1);
    let mut cut = (0u32, 0u32);
    for n in 2..=ceiling {
        let (rc, rnc) = r_ratios(n, ctx)?;
        for (r, slot, label) in [(&rc, &mut cut.0, "R_c"), (&rnc, &mut cut.1, "R_nc")] {
            if r.definitely_greater(&one) {
                *slot = n;
            } else if !r.definitely_less(&one) {
                return Err(Error::Undecided {
                    what: format!("{label}({n}) against 1"),
                    prec: ctx.prec(),
                });
            }
        }
    }
    Ok(Cutoffs {
        cocompact: cut.0,
        noncocompact: cut.1,
        ceiling,
    })
}

/// Rows `2..=n_max` of `M`, `R_c`, `R_nc` with feasibility flags.
pub fn table1(n_max: u32, ctx: &EvalContext) -> Result<DimensionReport> {
    if !(2..=DEFAULT_CEILING).contains(&n_max) {
        return Err(Error::InvalidArgument(format!(
            "n_max must lie in 2..=64, got {n_max}"
        )));
    }
    let one = ctx.int(1);
    let mut rows = Vec::new();
    for n in 2..=n_max {
        let m = m_bound(n, ctx)?;
        let (r_c, r_nc) = r_ratios(n, ctx)?;
        rows.push(DimensionRow {
            n,
            feasible_c: !r_c.definitely_less(&one),
            feasible_nc: !r_nc.definitely_less(&one),
            decided: (r_c.definitely_less(&one) || r_c.definitely_greater(&one))
                && (r_nc.definitely_less(&one) || r_nc.definitely_greater(&one)),
            m,
            r_c,
            r_nc,
        });
    }
    Ok(DimensionReport {
        precision: ctx.prec(),
        delta_mode: ctx.delta_mode(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_values() {
        let g = SpectralGap::new(2, DeltaMode::Proven).unwrap();
        assert_eq!(g.delta, Rational::new(3.into(), 16.into()));
        let g = SpectralGap::new(7, DeltaMode::Proven).unwrap();
        assert_eq!(g.delta, Rational::new(11.into(), 4.into()));
        let g = SpectralGap::new(7, DeltaMode::Conjectural).unwrap();
        assert_eq!(g.delta, Rational::from_integer(6.into()));
        assert!(SpectralGap::new(1, DeltaMode::Proven).is_err());
    }

    #[test]
    fn m_small_dimensions_exact() {
        let ctx = EvalContext::default();
        assert!(m_bound(2, &ctx)
            .unwrap()
            .contains_rational(&Rational::new(32.into(), 3.into())));
        assert!(m_bound(3, &ctx)
            .unwrap()
            .contains_rational(&Rational::from_integer(8.into())));
        assert!(m_bound(4, &ctx)
            .unwrap()
            .contains_rational(&Rational::new(256.into(), 25.into())));
        assert_eq!(
            m_bound_squared(4, DeltaMode::Proven).unwrap(),
            Rational::new(65536.into(), 625.into())
        );
        assert_eq!(
            m_bound_rounded_up(4, DeltaMode::Proven, 2).unwrap(),
            Rational::new(1024.into(), 100.into())
        );
        assert_eq!(
            m_bound_rounded_up(6, DeltaMode::Proven, 2).unwrap(),
            Rational::new(1897.into(), 100.into())
        );
        assert_eq!(
            m_bound_rounded_up(3, DeltaMode::Proven, 2).unwrap(),
            Rational::from_integer(8.into())
        );
    }

    #[test]
    fn conformal_volume_consistency() {
        let ctx = EvalContext::default();
        let v = conformal_volume_upper(3, &ctx.ratio(3, 4), &ctx).unwrap();
        assert!(v.overlaps(&(ctx.int(16) * ctx.pi().sqr())));
        let v6 = conformal_volume_upper(6, &ctx.ratio(9, 4), &ctx).unwrap();
        assert!(v6.overlaps(&(m_bound(6, &ctx).unwrap() * sphere_volume(6, &ctx).unwrap())));
        assert!(conformal_volume_upper(3, &ctx.int(0), &ctx).is_err());
    }

    #[test]
    fn r_ratios_in_dimension_two_are_integers() {
        let ctx = EvalContext::default();
        let (rc, rnc) = r_ratios(2, &ctx).unwrap();
        assert!(rc.contains_rational(&Rational::from_integer(1792.into())));
        assert!(rnc.contains_rational(&Rational::from_integer(256.into())));
        assert!(rc.rad() < crate::numerics::Mag::pow2(-90));
    }

    #[test]
    fn conjectural_mode_shrinks_m() {
        let p = EvalContext::default();
        let c = EvalContext::with_mode(128, DeltaMode::Conjectural);
        for n in 2..30 {
            assert!(
                m_bound(n, &c)
                    .unwrap()
                    .definitely_less(&m_bound(n, &p).unwrap()),
                "n={n}"
            );
        }
    }

    #[test]
    fn simplified_inequality_bound() {
        // (4n/(2n-3))^(n/2) <= 4^(n/2) for n >= 3
        let ctx = EvalContext::default();
        for n in 3..40u32 {
            let cap = ctx.pow_ratio(&ctx.int(4), n as i64, 2);
            assert!(!m_bound(n, &ctx).unwrap().definitely_greater(&cap), "n={n}");
        }
    }
}
