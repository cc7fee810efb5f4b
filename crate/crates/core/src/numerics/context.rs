use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::ball::BoundedReal;
use super::elementary;

pub const DEFAULT_PRECISION: u32 = 128;

/// Smallest precision accepted anywhere in the crate.
pub const MIN_PRECISION: u32 = 64;

/// Spectral-gap constants: proven values by default, the conjectural ones
/// only on request.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum DeltaMode {
    #[default]
    Proven,
    Conjectural,
}

/// Evaluation context: working precision plus lazily computed constants.
///
/// Contexts are cheap to create and never mutated after construction apart
/// from filling their caches, so they can be shared across threads.
#[derive(Debug)]
pub struct EvalContext {
    prec: u32,
    delta_mode: DeltaMode,
    pi: OnceLock<BoundedReal>,
    sqrt_pi: OnceLock<BoundedReal>,
    ln2: OnceLock<BoundedReal>,
    primes: OnceLock<Vec<u64>>,
    memo: Mutex<HashMap<String, BoundedReal>>,
}

/// Primes below this bound are sieved once per context.
pub const PRIME_CACHE_LIMIT: u64 = 1_000_000;

impl EvalContext {
    pub fn new(prec: u32) -> EvalContext {
        Self::with_mode(prec, DeltaMode::Proven)
    }

    pub fn with_mode(prec: u32, delta_mode: DeltaMode) -> EvalContext {
        EvalContext {
            prec: prec.max(MIN_PRECISION),
            delta_mode,
            pi: OnceLock::new(),
            sqrt_pi: OnceLock::new(),
            ln2: OnceLock::new(),
            primes: OnceLock::new(),
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn delta_mode(&self) -> DeltaMode {
        self.delta_mode
    }

    /// A fresh context at `prec` bits with the same mode (caches not shared).
    pub fn at_precision(&self, prec: u32) -> EvalContext {
        Self::with_mode(prec, self.delta_mode)
    }

    pub fn pi(&self) -> BoundedReal {
        self.pi.get_or_init(|| elementary::pi(self.prec)).clone()
    }

    pub fn sqrt_pi(&self) -> BoundedReal {
        self.sqrt_pi.get_or_init(|| self.pi().sqrt()).clone()
    }

    pub fn ln2(&self) -> BoundedReal {
        self.ln2.get_or_init(|| elementary::ln2(self.prec)).clone()
    }

    pub fn two_pi(&self) -> BoundedReal {
        self.pi().mul_2exp(1)
    }

    /// All primes below [`PRIME_CACHE_LIMIT`].
    /// Value stored under `key`, computed by `f` on first use.
    pub fn memoized<E, F>(&self, key: &str, f: F) -> Result<BoundedReal, E>
    where
        F: FnOnce() -> Result<BoundedReal, E>,
    {
        if let Some(v) = self.memo.lock().expect("memo lock").get(key) {
            return Ok(v.clone());
        }
        let v = f()?;
        self.memo
            .lock()
            .expect("memo lock")
            .insert(key.to_string(), v.clone());
        Ok(v)
    }

    pub fn primes(&self) -> &[u64] {
        self.primes.get_or_init(|| primes_below(PRIME_CACHE_LIMIT))
    }

    pub fn int(&self, v: i64) -> BoundedReal {
        BoundedReal::from_i64(v, self.prec)
    }

    pub fn ratio(&self, num: i64, den: i64) -> BoundedReal {
        BoundedReal::from_ratio(num, den, self.prec)
    }

    pub fn exp(&self, x: &BoundedReal) -> BoundedReal {
        elementary::exp(x, self.prec)
    }

    pub fn ln(&self, x: &BoundedReal) -> BoundedReal {
        elementary::ln(x, &self.ln2(), self.prec)
    }

    /// `x^y` for `x > 0`.
    pub fn pow(&self, x: &BoundedReal, y: &BoundedReal) -> BoundedReal {
        self.exp(&(y * self.ln(x)))
    }

    /// `x^(p/q)` for `x > 0`; exact integer and half-integer powers avoid
    /// the logarithm.
    pub fn pow_ratio(&self, x: &BoundedReal, p: i64, q: i64) -> BoundedReal {
        assert!(q > 0, "pow_ratio: q must be positive");
        let g = num_integer::gcd(p, q);
        let (p, q) = (p / g, q / g);
        match q {
            1 => x.powi(p),
            2 => x.sqrt().powi(p),
            _ => self.pow(x, &self.ratio(p, q)),
        }
    }

    /// `x^(1/q)`.
    pub fn root(&self, x: &BoundedReal, q: &BoundedReal) -> BoundedReal {
        self.exp(&(self.ln(x) / q))
    }
}

impl Default for EvalContext {
    fn default() -> Self {
        EvalContext::new(DEFAULT_PRECISION)
    }
}

/// Sieve of Eratosthenes.
pub fn primes_below(limit: u64) -> Vec<u64> {
    if limit < 3 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j < n {
            composite[j] = true;
            j += i;
        }
    }
    out
}
