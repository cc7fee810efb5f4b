//! Kronecker symbol and fundamental discriminants.

/// Kronecker symbol `(a / n)` for `n >= 0`.
pub fn kronecker(a: i64, n: u64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut n = n;
    let mut result = 1i32;
    // factor out 2 from n: (a/2) = 0 if a even, else +1 for a = ±1 mod 8, -1 for ±3
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        n >>= twos;
        if twos % 2 == 1 {
            let r = a.rem_euclid(8);
            if r == 3 || r == 5 {
                result = -result;
            }
        }
    }
    // now n odd: Jacobi symbol (a mod n / n)
    let mut a = a.rem_euclid(n as i64) as u64;
    while a != 0 {
        let t = a.trailing_zeros();
        a >>= t;
        if t % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            result = -result;
        }
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

pub fn is_squarefree(m: u64) -> bool {
    if m == 0 {
        return false;
    }
    let mut m = m;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Discriminant of a quadratic field: `D = 1 mod 4` squarefree, or
/// `D = 4m` with `m = 2, 3 mod 4` squarefree. `D = 1` is excluded.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Euler's criterion for odd primes.
    fn legendre(a: i64, p: u64) -> i32 {
        let a = a.rem_euclid(p as i64) as u64;
        if a == 0 {
            return 0;
        }
        let mut r = 1u128;
        let mut b = a as u128;
        let mut e = (p - 1) / 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u128;
            }
            b = b * b % p as u128;
            e >>= 1;
        }
        if r == 1 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn matches_euler_criterion_at_odd_primes() {
        for p in [3u64, 5, 7, 11, 13, 97, 101] {
            for a in -30i64..30 {
                assert_eq!(kronecker(a, p), legendre(a, p), "a={a} p={p}");
            }
        }
    }

    #[test]
    fn multiplicative_in_n() {
        for a in [-7i64, -4, -3, 5, 8, 12, 13] {
            for m in 1u64..40 {
                for n in 1u64..40 {
                    assert_eq!(kronecker(a, m * n), kronecker(a, m) * kronecker(a, n));
                }
            }
        }
    }

    #[test]
    fn character_values_at_two() {
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(17, 2), 1);
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(8, 2), 0);
    }

    #[test]
    fn fundamental_discriminants() {
        let fund: Vec<i64> = (-20..=30)
            .filter(|&d| is_fundamental_discriminant(d))
            .collect();
        assert_eq!(
            fund,
            vec![-20, -19, -15, -11, -8, -7, -4, -3, 5, 8, 12, 13, 17, 21, 24, 28, 29]
        );
    }
}
