//! Certified real arithmetic and exact combinatorial constants.

mod ball;
mod combinatorics;
mod context;
mod dyadic;
mod elementary;
mod mag;
mod sphere;

pub use ball::{dyadic_to_rational, BoundedReal, DecimalBall};
pub use combinatorics::{
    bernoulli, bernoulli_all, bernoulli_poly, binomial, double_factorial, factorial, Rational,
};
pub use context::{
    primes_below, DeltaMode, EvalContext, DEFAULT_PRECISION, MIN_PRECISION, PRIME_CACHE_LIMIT,
};
pub use dyadic::Dyadic;
pub use mag::Mag;
pub use sphere::{half_integer_gamma, sphere_volume, sphere_volume_gamma};
