//! Monic integer quartics defining the fields whose Dedekind zeta values the
//! bounds need, with explicit data at the ramified primes.

use serde::{Deserialize, Serialize};

use super::ffpoly::{distinct_degree_type, FpPoly};
use crate::error::{Error, Result};

/// Prime ideals above a ramified rational prime, as `(e, f)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamifiedPrime {
    pub p: u64,
    pub ideals: Vec<(u32, u32)>,
}

impl RamifiedPrime {
    /// Residue degrees, which is all the Euler factor needs.
    pub fn residue_degrees(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.ideals.iter().map(|&(_, f)| f).collect();
        v.sort_unstable();
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingPolynomial {
    /// `coefficients[i]` multiplies `x^i`; length 5, leading entry 1.
    coefficients: Vec<i64>,
    /// Absolute discriminant of the field (not of the polynomial).
    field_discriminant: u64,
    ramified: Vec<RamifiedPrime>,
}

impl SplittingPolynomial {
    pub fn new(
        coefficients: Vec<i64>,
        field_discriminant: u64,
        ramified: Vec<RamifiedPrime>,
    ) -> Result<Self> {
        if coefficients.len() != 5 || coefficients[4] != 1 {
            return Err(Error::InvalidArgument(
                "only monic quartics are supported".into(),
            ));
        }
        let sp = SplittingPolynomial {
            coefficients,
            field_discriminant,
            ramified,
        };
        if !sp.is_irreducible_over_q() {
            return Err(Error::InvalidArgument(format!(
                "{} is reducible over Q",
                sp.display()
            )));
        }
        let pd = sp.poly_discriminant().unsigned_abs();
        if field_discriminant == 0 || !pd.is_multiple_of(field_discriminant as u128) {
            return Err(Error::InvalidArgument(
                "field discriminant must divide the polynomial discriminant".into(),
            ));
        }
        let index_sq = pd / field_discriminant as u128;
        let index = (index_sq as f64).sqrt().round() as u128;
        if index * index != index_sq {
            return Err(Error::InvalidArgument(
                "discriminant quotient is not a square".into(),
            ));
        }
        let mut want = prime_divisors(field_discriminant);
        let mut have: Vec<u64> = sp.ramified.iter().map(|r| r.p).collect();
        want.sort_unstable();
        have.sort_unstable();
        if want != have {
            return Err(Error::InvalidArgument(format!(
                "ramified data covers {have:?} but the field discriminant has prime divisors {want:?}"
            )));
        }
        for r in &sp.ramified {
            let total: u32 = r.ideals.iter().map(|&(e, f)| e * f).sum();
            if total != 4 || r.ideals.iter().all(|&(e, _)| e == 1) {
                return Err(Error::InvalidArgument(format!(
                    "inconsistent ideal data at p = {}",
                    r.p
                )));
            }
        }
        Ok(sp)
    }

    /// `x^4 - x^3 + 2x - 1`.
    ///
    /// The polynomial discriminant is `-275 = -5^2 * 11`. The index of `Z[x]/(f)`
    /// divides 5, and index 5 would leave a quartic field of discriminant 11,
    /// below the Minkowski minimum 117, so the field discriminant is `-275`.
    /// With index 1 Dedekind-Kummer applies at both ramified primes:
    /// `f = (x^2 + 2x - 2)^2 mod 5`, `f = (x - 2)^2 (x^2 + 3x - 3) mod 11`.
    pub fn ell0() -> SplittingPolynomial {
        Self::new(
            vec![-1, 2, 0, -1, 1],
            275,
            vec![
                RamifiedPrime {
                    p: 5,
                    ideals: vec![(2, 2)],
                },
                RamifiedPrime {
                    p: 11,
                    ideals: vec![(2, 1), (1, 2)],
                },
            ],
        )
        .expect("built-in quartic data is consistent")
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn field_discriminant(&self) -> u64 {
        self.field_discriminant
    }

    pub fn ramified(&self) -> &[RamifiedPrime] {
        &self.ramified
    }

    pub fn ramified_primes(&self) -> Vec<u64> {
        self.ramified.iter().map(|r| r.p).collect()
    }

    pub fn display(&self) -> String {
        let mut parts = Vec::new();
        for (i, &c) in self.coefficients.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mon = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let coef = match (c, i) {
                (1, 0) | (-1, 0) => c.abs().to_string(),
                (1, _) | (-1, _) => String::new(),
                _ => c.abs().to_string(),
            };
            let sign = if c < 0 { "-" } else { "+" };
            parts.push((sign, format!("{coef}{mon}")));
        }
        let mut out = String::new();
        for (k, (sign, body)) in parts.into_iter().enumerate() {
            if k == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            out.push_str(&body);
        }
        out
    }

    /// Discriminant of the monic quartic `x^4 + b x^3 + c x^2 + d x + e`.
    pub fn poly_discriminant(&self) -> i128 {
        let [e, d, c, b, _] = [
            self.coefficients[0] as i128,
            self.coefficients[1] as i128,
            self.coefficients[2] as i128,
            self.coefficients[3] as i128,
            1,
        ];
        256 * e.pow(3) - 192 * b * d * e.pow(2) - 128 * c.pow(2) * e.pow(2) + 144 * c * d.pow(2) * e
            - 27 * d.pow(4)
            + 144 * b.pow(2) * c * e.pow(2)
            - 6 * b.pow(2) * d.pow(2) * e
            - 80 * b * c.pow(2) * d * e
            + 18 * b * c * d.pow(3)
            + 16 * c.pow(4) * e
            - 4 * c.pow(3) * d.pow(2)
            - 27 * b.pow(4) * e.pow(2)
            + 18 * b.pow(3) * c * d * e
            - 4 * b.pow(3) * d.pow(3)
            - 4 * b.pow(2) * c.pow(3) * e
            + b.pow(2) * c.pow(2) * d.pow(2)
    }

    fn eval(&self, x: i128) -> i128 {
        self.coefficients
            .iter()
            .rev()
            .fold(0i128, |acc, &c| acc * x + c as i128)
    }

    /// No integer root and no splitting into two monic integer quadratics.
    pub fn is_irreducible_over_q(&self) -> bool {
        let [e, d, c, b, _] = [
            self.coefficients[0],
            self.coefficients[1],
            self.coefficients[2],
            self.coefficients[3],
            1,
        ];
        if e == 0 {
            return false;
        }
        for q in divisors(e.unsigned_abs()) {
            let q = q as i128;
            if self.eval(q) == 0 || self.eval(-q) == 0 {
                return false;
            }
        }
        // (x^2 + a1 x + b1)(x^2 + a2 x + b2): b1 b2 = e, a1 + a2 = b,
        // b1 + b2 + a1 a2 = c, a1 b2 + a2 b1 = d
        for q in divisors(e.unsigned_abs()) {
            for sgn in [1i64, -1] {
                let b1 = sgn * q as i64;
                let b2 = e / b1;
                if b1 != b2 {
                    // a1 (b2 - b1) = d - b b1
                    let num = d - b * b1;
                    let den = b2 - b1;
                    if num % den == 0 {
                        let a1 = num / den;
                        let a2 = b - a1;
                        if b1 + b2 + a1 * a2 == c {
                            return false;
                        }
                    }
                } else if b * b1 == d {
                    // a1^2 - b a1 + (c - 2 b1) = 0
                    let disc = b * b - 4 * (c - 2 * b1);
                    if disc >= 0 {
                        let r = (disc as f64).sqrt().round() as i64;
                        if r * r == disc && (b + r) % 2 == 0 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Degrees of the irreducible factors of the polynomial mod an
    /// unramified prime `p`.
    pub fn factorization_type_mod_p(&self, p: u64) -> Result<Vec<u32>> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if self
            .poly_discriminant()
            .unsigned_abs()
            .is_multiple_of(p as u128)
        {
            return Err(Error::InvalidArgument(format!(
                "p = {p} divides the discriminant; use the ramified Euler factor data"
            )));
        }
        Ok(distinct_degree_type(&FpPoly::new(p, &self.coefficients)))
    }

    /// Residue degrees of the prime ideals above `p`.
    pub fn residue_degrees(&self, p: u64) -> Result<Vec<u32>> {
        if let Some(r) = self.ramified.iter().find(|r| r.p == p) {
            return Ok(r.residue_degrees());
        }
        self.factorization_type_mod_p(p)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ell0_discriminant_and_display() {
        let f = SplittingPolynomial::ell0();
        assert_eq!(f.poly_discriminant(), -275);
        assert_eq!(f.display(), "x^4 - x^3 + 2x - 1");
        assert_eq!(f.ramified_primes(), vec![5, 11]);
    }

    #[test]
    fn reducible_quartics_are_rejected() {
        // x^4 + 2x^2 + 1 = (x^2 + 1)^2
        assert!(SplittingPolynomial::new(vec![1, 0, 2, 0, 1], 1, vec![]).is_err());
        // (x^2 + x + 1)(x^2 - x + 2) = x^4 + 2x^2 + x + 2
        let f = SplittingPolynomial {
            coefficients: vec![2, 1, 2, 0, 1],
            field_discriminant: 1,
            ramified: vec![],
        };
        assert!(!f.is_irreducible_over_q());
        // x^4 - 2 is irreducible
        let g = SplittingPolynomial {
            coefficients: vec![-2, 0, 0, 0, 1],
            field_discriminant: 1,
            ramified: vec![],
        };
        assert!(g.is_irreducible_over_q());
    }

    #[test]
    fn ramified_primes_are_refused_by_the_mod_p_path() {
        let f = SplittingPolynomial::ell0();
        assert!(f.factorization_type_mod_p(5).is_err());
        assert!(f.factorization_type_mod_p(11).is_err());
        assert_eq!(f.residue_degrees(5).unwrap(), vec![2]);
        assert_eq!(f.residue_degrees(11).unwrap(), vec![1, 2]);
    }

    #[test]
    fn inconsistent_ramified_data_is_rejected() {
        let bad = SplittingPolynomial::new(
            vec![-1, 2, 0, -1, 1],
            275,
            vec![RamifiedPrime {
                p: 5,
                ideals: vec![(2, 2)],
            }],
        );
        assert!(bad.is_err());
    }
}
