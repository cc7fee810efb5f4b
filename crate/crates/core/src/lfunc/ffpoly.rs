//! Dense polynomials over a prime field `F_p` (`p < 2^31`), coefficients
//! stored lowest degree first.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: &[i64]) -> FpPoly {
        let c = coeffs
            .iter()
            .map(|&a| a.rem_euclid(p as i64) as u64)
            .collect();
        FpPoly { p, c }.trimmed()
    }

    fn from_raw(p: u64, c: Vec<u64>) -> FpPoly {
        FpPoly { p, c }.trimmed()
    }

    fn trimmed(mut self) -> FpPoly {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
        self
    }

    pub fn x(p: u64) -> FpPoly {
        FpPoly::from_raw(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        let n = self.c.len().max(other.c.len());
        let p = self.p;
        let c = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0);
                let b = other.c.get(i).copied().unwrap_or(0);
                (a + p - b) % p
            })
            .collect();
        FpPoly::from_raw(p, c)
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly::from_raw(self.p, Vec::new());
        }
        let p = self.p;
        let mut c = vec![0u64; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in other.c.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b % p) % p;
            }
        }
        FpPoly::from_raw(p, c)
    }

    /// `(quotient, remainder)`; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &FpPoly) -> (FpPoly, FpPoly) {
        let p = self.p;
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = self.inv(divisor.c[dd]);
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (FpPoly::from_raw(p, Vec::new()), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = r[k + dd] * lead_inv % p;
            q[k] = coef;
            if coef == 0 {
                continue;
            }
            for (j, &b) in divisor.c.iter().enumerate() {
                r[k + j] = (r[k + j] + p - coef * b % p) % p;
            }
        }
        r.truncate(dd);
        (FpPoly::from_raw(p, q), FpPoly::from_raw(p, r))
    }

    pub fn rem(&self, divisor: &FpPoly) -> FpPoly {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> FpPoly {
        match self.degree() {
            None => self.clone(),
            Some(d) => {
                let inv = self.inv(self.c[d]);
                FpPoly::from_raw(self.p, self.c.iter().map(|&a| a * inv % self.p).collect())
            }
        }
    }

    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &FpPoly) -> FpPoly {
        let mut base = self.rem(m);
        let mut acc = FpPoly::from_raw(self.p, vec![1]).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Degrees of the irreducible factors of a squarefree `f` (distinct-degree
/// factorization), sorted ascending.
pub fn distinct_degree_type(f: &FpPoly) -> Vec<u32> {
    let p = f.p;
    let mut rest = f.monic();
    let mut out = Vec::new();
    let x = FpPoly::x(p);
    let mut h = x.clone();
    let mut i = 1u32;
    while let Some(d) = rest.degree() {
        if d == 0 {
            break;
        }
        if (d as u32) < 2 * i {
            out.push(d as u32);
            break;
        }
        h = h.pow_mod(p, &rest);
        let g = rest.gcd(&h.sub(&x));
        let gd = g.degree().unwrap_or(0) as u32;
        for _ in 0..gd / i {
            out.push(i);
        }
        if gd > 0 {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let p = 7;
        let a = FpPoly::new(p, &[3, 0, 5, 1, 2]);
        let b = FpPoly::new(p, &[1, 4, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).sub(&a.sub(&r)), FpPoly::new(p, &[]));
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn ddf_on_known_products() {
        let p = 5;
        // (x - 1)(x - 2)(x^2 + 2) ; x^2 + 2 is irreducible mod 5 (-2 = 3 is a non-residue)
        let f = FpPoly::new(p, &[-1, 1])
            .mul(&FpPoly::new(p, &[-2, 1]))
            .mul(&FpPoly::new(p, &[2, 0, 1]));
        assert_eq!(distinct_degree_type(&f), vec![1, 1, 2]);
        // x^4 + x + 1 is irreducible over F_2
        assert_eq!(
            distinct_degree_type(&FpPoly::new(2, &[1, 1, 0, 0, 1])),
            vec![4]
        );
        // and so is x^4 + x^3 + 1
        assert_eq!(
            distinct_degree_type(&FpPoly::new(2, &[1, 0, 0, 1, 1])),
            vec![4]
        );
        // x (x^3 + x + 1) over F_2
        assert_eq!(
            distinct_degree_type(&FpPoly::new(2, &[0, 1, 1, 0, 1])),
            vec![1, 3]
        );
    }
}
