//! Special values of ζ, quadratic Dirichlet L-functions and the Dedekind
//! zeta functions the volume bounds use.

mod character;
mod dirichlet;
mod euler;
mod ffpoly;
mod kronecker;
mod quartic;
mod zeta;

pub use character::QuadraticCharacter;
pub use dirichlet::{
    dedekind_zeta_quadratic, dirichlet_l, dirichlet_l_closed, dirichlet_l_series,
    generalized_bernoulli, parity_matches,
};
pub use euler::{
    dedekind_zeta_quadratic_euler, dedekind_zeta_quartic, l_relative_quartic, prime_cutoff_for,
    tail_bound, zeta_euler, DEFAULT_PRIME_CUTOFF,
};
pub use ffpoly::{distinct_degree_type, FpPoly};
pub use kronecker::{is_fundamental_discriminant, is_squarefree, kronecker};
pub use quartic::{RamifiedPrime, SplittingPolynomial};
pub use zeta::{hurwitz_zeta, zeta_even, zeta_int, zeta_odd, zeta_series, PLAIN_SERIES_LIMIT};
