use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::numerics::{BoundedReal, EvalContext};

/// Doublings of the working precision tried before giving up.
pub const MAX_ESCALATIONS: u32 = 4;

/// Largest integer `c >= 0` with `c^(p/2) <= K`, where `k_of` evaluates `K`
/// at a given precision. `p > 0`.
pub fn integer_cap<F>(p: i64, ctx: &EvalContext, what: &str, k_of: F) -> Result<u64>
where
    F: Fn(&EvalContext) -> Result<BoundedReal>,
{
    assert!(p > 0);
    let mut prec = ctx.prec();
    for _ in 0..=MAX_ESCALATIONS {
        let c = ctx.at_precision(prec);
        let k = k_of(&c)?;
        if let Some(v) = cap_at(&k, p, &c) {
            return Ok(v);
        }
        prec *= 2;
    }
    Err(Error::Undecided {
        what: what.to_string(),
        prec: prec / 2,
    })
}

fn cap_at(k: &BoundedReal, p: i64, ctx: &EvalContext) -> Option<u64> {
    if !k.is_finite() {
        return None;
    }
    if !k.definitely_positive() {
        // K <= 0 admits nothing; an interval around 0 is undecided
        return k.definitely_negative().then_some(0);
    }
    let k2 = k.sqr();
    // `c^p <= K^2`, decided with certainty
    let le = |c: u64| -> Option<bool> {
        let lhs = BoundedReal::from_bigint(&BigInt::from(c).pow(p as u32), ctx.prec());
        if lhs.definitely_less(&k2) || (lhs.is_exact() && k2.is_exact() && lhs.mid() <= k2.mid()) {
            Some(true)
        } else if lhs.definitely_greater(&k2) {
            Some(false)
        } else {
            None
        }
    };
    let est = 10f64.powf(2.0 * k.mid().log10_abs_approx() / p as f64);
    let mut c = if est.is_finite() && est < 1e18 {
        est.floor() as u64
    } else {
        return None;
    };
    while c > 0 && !le(c)? {
        c -= 1;
    }
    while le(c + 1)? {
        c += 1;
    }
    Some(c)
}
