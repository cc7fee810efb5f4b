use serde::{Deserialize, Serialize};

use super::kronecker::{is_fundamental_discriminant, kronecker};
use crate::error::{Error, Result};

/// Real primitive Dirichlet character `n -> (D / n)` of a fundamental
/// discriminant `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadraticCharacter {
    discriminant: i64,
}

impl QuadraticCharacter {
    pub fn new(discriminant: i64) -> Result<Self> {
        if !is_fundamental_discriminant(discriminant) {
            return Err(Error::InvalidArgument(format!(
                "{discriminant} is not a fundamental discriminant"
            )));
        }
        Ok(QuadraticCharacter { discriminant })
    }

    pub fn discriminant(&self) -> i64 {
        self.discriminant
    }

    pub fn conductor(&self) -> u64 {
        self.discriminant.unsigned_abs()
    }

    /// `χ(-1)`: `+1` for real quadratic fields, `-1` for imaginary ones.
    pub fn parity(&self) -> i32 {
        if self.discriminant > 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == 1
    }

    pub fn value(&self, n: u64) -> i32 {
        kronecker(self.discriminant, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_fundamental() {
        assert!(QuadraticCharacter::new(4).is_err());
        assert!(QuadraticCharacter::new(-1).is_err());
        assert!(QuadraticCharacter::new(1).is_err());
        assert!(QuadraticCharacter::new(5).is_ok());
    }

    #[test]
    fn periodic_and_vanishing_on_divisors() {
        for d in [5i64, 8, -3, -4, 12, -7] {
            let chi = QuadraticCharacter::new(d).unwrap();
            let f = chi.conductor();
            for n in 1..60 {
                assert_eq!(chi.value(n), chi.value(n + f));
                assert_eq!(chi.value(n) == 0, num_integer::gcd(n, f) != 1);
            }
            assert_eq!(chi.value(f - 1), chi.parity());
        }
    }
}
