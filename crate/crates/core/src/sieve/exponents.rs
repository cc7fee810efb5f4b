//! Exponents of the sieve inequalities, stored doubled so that the
//! half-integers stay integral.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Chain {
    /// `n = 2r`.
    Even,
    /// `n = 2r - 1`, `r` odd.
    OddROdd,
    /// `n = 2r - 1`, `r` even.
    OddREven,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Exponents {
    pub r: u32,
    pub chain: Chain,
    /// `2 x` for the `D_k` power after the Brauer–Siegel substitution:
    /// `r^2 + r/2 - 1` (even) or `r^2 - r/2 - 2` (odd).
    pub dk_step1: i64,
    /// `2 x` for the `D_k` power with the exact class number:
    /// `r^2 + r/2` (even only).
    pub dk_exact: Option<i64>,
    /// `2 x` for the `D_ℓ` power in the relative ceiling:
    /// `r - 3/2` (`r` odd) or `r - 5/2` (`r` even).
    pub dl: Option<i64>,
    /// `2 x` for the `D_k` power divided out of the `D_ℓ` ceiling:
    /// `r^2 - 5r/2 + 1` (`r` odd) or `r^2 - 5r/2 + 3` (`r` even).
    pub dk_in_dl: Option<i64>,
}

/// Exponent table for dimension `n >= 4`.
pub fn exponents(n: u32) -> Exponents {
    assert!(n >= 4, "sieve exponents need n >= 4");
    if n.is_multiple_of(2) {
        let r = (n / 2) as i64;
        return Exponents {
            r: r as u32,
            chain: Chain::Even,
            dk_step1: 2 * r * r + r - 2,
            dk_exact: Some(2 * r * r + r),
            dl: None,
            dk_in_dl: None,
        };
    }
    let r = n.div_ceil(2) as i64;
    let odd_r = r % 2 == 1;
    Exponents {
        r: r as u32,
        chain: if odd_r {
            Chain::OddROdd
        } else {
            Chain::OddREven
        },
        dk_step1: 2 * r * r - r - 4,
        dk_exact: None,
        dl: Some(if odd_r { 2 * r - 3 } else { 2 * r - 5 }),
        dk_in_dl: Some(if odd_r {
            2 * r * r - 5 * r + 2
        } else {
            2 * r * r - 5 * r + 6
        }),
    }
}
