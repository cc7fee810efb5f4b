use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Parses `x^3+x^2-2x-1` style integer polynomials in `x` into coefficients,
/// lowest degree first.
pub fn parse_polynomial(text: &str) -> Result<Vec<i64>, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut coeffs: Vec<i64> = Vec::new();
    let mut i = 0;
    let b = s.as_bytes();
    while i < b.len() {
        let mut sign = 1i64;
        if b[i] == b'+' || b[i] == b'-' {
            if b[i] == b'-' {
                sign = -1;
            }
            i += 1;
        } else if i > 0 {
            return Err(format!("expected '+' or '-' at offset {i} in '{s}'"));
        }
        let start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        let num: Option<i64> = if i > start {
            Some(s[start..i].parse().map_err(|e| format!("{e}"))?)
        } else {
            None
        };
        if i < b.len() && b[i] == b'*' {
            i += 1;
        }
        let mut deg = 0usize;
        if i < b.len() && b[i] == b'x' {
            i += 1;
            deg = 1;
            if i < b.len() && b[i] == b'^' {
                i += 1;
                let st = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                deg = s[st..i]
                    .parse()
                    .map_err(|_| format!("bad exponent in '{s}'"))?;
            }
        } else if num.is_none() {
            return Err(format!("empty term in '{s}'"));
        }
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, 0);
        }
        coeffs[deg] += sign * num.unwrap_or(1);
    }
    while coeffs.len() > 1 && coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// Discriminant of a monic polynomial, `(-1)^(d(d-1)/2) Res(f, f')`, with
/// the resultant taken as a Sylvester determinant (fraction-free Bareiss).
pub fn polynomial_discriminant(coeffs: &[i64]) -> BigInt {
    let d = coeffs.len() - 1;
    assert!(
        d >= 1 && coeffs[d] == 1,
        "monic polynomial of positive degree"
    );
    if d == 1 {
        return BigInt::one();
    }
    let deriv: Vec<i64> = (1..=d).map(|i| coeffs[i] * i as i64).collect();
    let size = 2 * d - 1;
    let mut m = vec![vec![BigInt::zero(); size]; size];
    // rows hold coefficients highest degree first
    for row in 0..d - 1 {
        for (j, &c) in coeffs.iter().rev().enumerate() {
            m[row][row + j] = BigInt::from(c);
        }
    }
    for row in 0..d {
        for (j, &c) in deriv.iter().rev().enumerate() {
            m[d - 1 + row][row + j] = BigInt::from(c);
        }
    }
    let res = bareiss_determinant(m);
    if (d * (d - 1) / 2).is_multiple_of(2) {
        res
    } else {
        -res
    }
}

fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}
