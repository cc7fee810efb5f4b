//! Hilbert symbols over `Q` and Hasse invariants of diagonal forms.

use serde::{Deserialize, Serialize};

use crate::lfunc::kronecker;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Place {
    Finite(u64),
    Infinite,
}

impl std::fmt::Display for Place {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinite => write!(f, "inf"),
        }
    }
}

/// `(v_p(a), a / p^v)`.
fn split_power(a: i64, p: u64) -> (u32, i64) {
    let mut a = a;
    let mut v = 0;
    while a % p as i64 == 0 {
        a /= p as i64;
        v += 1;
    }
    (v, a)
}

/// Hilbert symbol `(a, b)_v` for nonzero integers.
pub fn hilbert_symbol(a: i64, b: i64, place: Place) -> i8 {
    assert!(a != 0 && b != 0, "Hilbert symbol of zero");
    match place {
        Place::Infinite => {
            if a < 0 && b < 0 {
                -1
            } else {
                1
            }
        }
        Place::Finite(2) => {
            let (alpha, u) = split_power(a, 2);
            let (beta, v) = split_power(b, 2);
            let eps = |x: i64| (x.rem_euclid(4) == 3) as u32;
            let omega = |x: i64| {
                let r = x.rem_euclid(8);
                (r == 3 || r == 5) as u32
            };
            let e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Finite(p) => {
            let (alpha, u) = split_power(a, p);
            let (beta, v) = split_power(b, p);
            let mut s: i32 = if (alpha * beta) % 2 == 1 && p % 4 == 3 {
                -1
            } else {
                1
            };
            if beta % 2 == 1 {
                s *= kronecker(u, p);
            }
            if alpha % 2 == 1 {
                s *= kronecker(v, p);
            }
            s as i8
        }
    }
}

/// `prod_{i<j} (a_i, a_j)_v`.
pub fn hasse_invariant(diag: &[i64], place: Place) -> i8 {
    let mut s = 1i8;
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            s *= hilbert_symbol(diag[i], diag[j], place);
        }
    }
    s
}

/// Diagonal of the maximally split form of dimension `m` with determinant
/// `det`: hyperbolic planes `<1,-1>` plus `<(-1)^k det>` (odd `m = 2k+1`) or
/// `<1, -e>` with `e = (-1)^(k+1) det` (even `m = 2k+2`).
pub fn split_form(m: usize, det: i64) -> Vec<i64> {
    assert!(m >= 1);
    let planes = (m - 1) / 2;
    let mut v = Vec::with_capacity(m);
    for _ in 0..planes {
        v.push(1);
        v.push(-1);
    }
    let sign = if planes.is_multiple_of(2) { 1 } else { -1 };
    if m % 2 == 1 {
        v.push(sign * det);
    } else {
        v.push(1);
        v.push(sign * det);
    }
    v
}

/// Hasse invariant relative to the split form of the same dimension and
/// determinant, so the split form has `+1` everywhere.
pub fn normalized_hasse(diag: &[i64], place: Place) -> i8 {
    let det: i64 = diag.iter().product();
    hasse_invariant(diag, place) * hasse_invariant(&split_form(diag.len(), det), place)
}

/// Odd primes dividing `x`, plus 2.
pub fn bad_primes(x: i64) -> Vec<u64> {
    let mut out = vec![2u64];
    let mut n = x.unsigned_abs();
    while n.is_multiple_of(2) && n > 0 {
        n /= 2;
    }
    let mut p = 3u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 2;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Squarefree part of a nonzero integer, sign kept.
pub fn squarefree_part(x: i64) -> i64 {
    assert!(x != 0);
    let sign = x.signum();
    let mut n = x.unsigned_abs();
    let mut out = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    out *= n;
    sign * out as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn places() -> Vec<Place> {
        let mut v: Vec<Place> = [2u64, 3, 5, 7, 11, 13]
            .iter()
            .map(|&p| Place::Finite(p))
            .collect();
        v.push(Place::Infinite);
        v
    }

    /// `(a,b)_p = 1` iff `z^2 = a x^2 + b y^2` has a nonzero solution mod
    /// `p^k` with a unit coordinate, for `k` large enough.
    fn brute_force_symbol(a: i64, b: i64, p: u64) -> i8 {
        let k = if p == 2 { 5 } else { 3 };
        let m = (p as i64).pow(k);
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    let primitive = x % p as i64 != 0 || y % p as i64 != 0 || z % p as i64 != 0;
                    if primitive && (a * x * x + b * y * y - z * z).rem_euclid(m) == 0 {
                        return 1;
                    }
                }
            }
        }
        -1
    }

    #[test]
    fn matches_solvability_for_small_entries() {
        for p in [3u64, 5] {
            for a in [-6i64, -3, -1, 1, 2, 3, 5, 10] {
                for b in [-5i64, -2, -1, 3, 7] {
                    assert_eq!(
                        hilbert_symbol(a, b, Place::Finite(p)),
                        brute_force_symbol(a, b, p),
                        "a={a} b={b} p={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn two_adic_symbols_match_solvability() {
        for a in [-3i64, -2, -1, 2, 3, 5, 6] {
            for b in [-1i64, 2, 3, 5, -5] {
                assert_eq!(
                    hilbert_symbol(a, b, Place::Finite(2)),
                    brute_force_symbol(a, b, 2),
                    "a={a} b={b}"
                );
            }
        }
    }

    #[test]
    fn reciprocity() {
        for a in [-15i64, -7, -3, -2, -1, 2, 6, 10, 21] {
            for b in [-11i64, -5, -1, 3, 7, 13] {
                let mut prod = hilbert_symbol(a, b, Place::Infinite);
                for p in bad_primes(a * b) {
                    prod *= hilbert_symbol(a, b, Place::Finite(p));
                }
                assert_eq!(prod, 1, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn split_forms_are_normalized_to_one() {
        for m in 1..10 {
            for det in [-3i64, -2, -1, 1, 2, 5] {
                let g = split_form(m, det);
                assert_eq!(g.iter().product::<i64>(), det);
                for v in places() {
                    assert_eq!(normalized_hasse(&g, v), 1);
                }
            }
        }
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(-12), -3);
        assert_eq!(squarefree_part(50), 2);
        assert_eq!(squarefree_part(1), 1);
    }
}
