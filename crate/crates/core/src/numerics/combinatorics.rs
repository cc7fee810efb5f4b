use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rationals (always reduced, positive denominator).
pub type Rational = BigRational;

pub fn factorial(m: u64) -> BigInt {
    (2..=m).fold(BigInt::one(), |acc, k| acc * k)
}

/// `m!! = m (m-2) (m-4) ...`, with `0!! = 1!! = 1`.
pub fn double_factorial(m: u64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = m;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

const CACHED_BERNOULLI: usize = 160;

fn cached_table() -> &'static [Rational] {
    static TABLE: OnceLock<Vec<Rational>> = OnceLock::new();
    TABLE.get_or_init(|| even_bernoulli_table(CACHED_BERNOULLI))
}

/// `B_2, B_4, ..., B_{2n}` from tangent numbers.
fn even_bernoulli_table(n: usize) -> Vec<Rational> {
    let mut t = vec![BigInt::zero(); n + 1];
    if n == 0 {
        return Vec::new();
    }
    t[1] = BigInt::one();
    for k in 2..=n {
        t[k] = &t[k - 1] * (k - 1);
    }
    for k in 2..=n {
        for j in k..=n {
            t[j] = &t[j - 1] * (j - k) + &t[j] * (j - k + 2);
        }
    }
    (1..=n)
        .map(|k| {
            let four_k = BigInt::one() << (2 * k);
            let den = &four_k * (&four_k - 1u32);
            let num = &t[k] * (2 * k);
            let b = Rational::new(num, den);
            if k % 2 == 1 {
                b
            } else {
                -b
            }
        })
        .collect()
}

/// Exact Bernoulli number `B_m` for even `m >= 2`.
pub fn bernoulli(m: u64) -> Result<Rational> {
    if m < 2 || m % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "bernoulli index must be even and >= 2, got {m}"
        )));
    }
    let k = (m / 2) as usize;
    let table = cached_table();
    if k <= table.len() {
        return Ok(table[k - 1].clone());
    }
    Ok(even_bernoulli_table(k).pop().expect("nonempty table"))
}

/// `B_0, B_1, ..., B_m` with `B_1 = -1/2`, including the zero odd entries.
pub fn bernoulli_all(m: u64) -> Vec<Rational> {
    let mut out = vec![Rational::one()];
    if m >= 1 {
        out.push(Rational::new(BigInt::from(-1), BigInt::from(2)));
    }
    for j in 2..=m {
        if j % 2 == 1 {
            out.push(Rational::zero());
        } else {
            out.push(bernoulli(j).expect("even index"));
        }
    }
    out
}

/// Bernoulli polynomial `B_m(x)` at a rational point.
pub fn bernoulli_poly(m: u64, x: &Rational) -> Rational {
    let b = bernoulli_all(m);
    let mut acc = Rational::zero();
    let mut xp = Rational::one();
    // sum_k C(m, k) B_{m-k} x^k
    for k in 0..=m {
        let c = Rational::from_integer(binomial(m, k));
        acc += c * &b[(m - k) as usize] * &xp;
        xp *= x;
    }
    acc
}
