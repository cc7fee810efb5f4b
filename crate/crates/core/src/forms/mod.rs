//! Local invariants of quadratic forms of signature `(n, 1)` over `Q`:
//! `λ` lower bounds, `T`-sets, local-global consistency and the enumeration
//! of admissible `T`-sets under a `λ`-product budget.

mod hilbert;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::bounds::{nu_lower_bound, ClassNumber, FieldBoundInput};
use crate::error::{Error, Result};
use crate::lfunc::is_fundamental_discriminant;
use crate::numerics::{
    dyadic_to_rational, primes_below, sphere_volume, BoundedReal, EvalContext, Rational,
};
use crate::spectral::m_bound;

pub use hilbert::{
    bad_primes, hasse_invariant, hilbert_symbol, normalized_hasse, split_form, squarefree_part,
    Place,
};

/// Largest prime the enumeration will consider.
pub const MAX_ENUMERATION_PRIME: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: u32) -> Parity {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// `r` with `n = 2r` or `n = 2r - 1`.
pub fn rank_parameter(n: u32) -> u32 {
    n.div_ceil(2)
}

/// Exact `λ` lower bound: `(q^r - 1)/2` for even dimension,
/// `(q^r - 1)(q^(r-1) - 1)/(2(q + 1))` for odd.
pub fn lambda_lower_exact(q: u64, r: u32, parity: Parity) -> Result<Rational> {
    if q < 2 || r < 2 {
        return Err(Error::InvalidArgument(format!(
            "λ bound needs q >= 2 and r >= 2, got q={q}, r={r}"
        )));
    }
    let qb = BigInt::from(q);
    let a = qb.pow(r) - 1;
    Ok(match parity {
        Parity::Even => Rational::new(a, BigInt::from(2)),
        Parity::Odd => Rational::new(a * (qb.pow(r - 1) - 1), BigInt::from(2) * (qb + 1)),
    })
}

pub fn lambda_lower(q: u64, r: u32, parity: Parity, prec: u32) -> Result<BoundedReal> {
    Ok(BoundedReal::from_rational(
        &lambda_lower_exact(q, r, parity)?,
        prec,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseField {
    Rationals,
    /// Totally real field given by degree and discriminant (bookkeeping only).
    TotallyReal {
        d: u32,
        d_k: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NamedForm {
    F1,
    F2,
    F3,
}

impl NamedForm {
    pub const ALL: [NamedForm; 3] = [NamedForm::F1, NamedForm::F2, NamedForm::F3];

    /// `a` in `-a x_0^2 + x_1^2 + ... + x_n^2`.
    pub fn a(self) -> i64 {
        match self {
            NamedForm::F1 => 1,
            NamedForm::F2 => 2,
            NamedForm::F3 => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            NamedForm::F1 => "f1",
            NamedForm::F2 => "f2",
            NamedForm::F3 => "f3",
        }
    }

    pub fn diagonal(self, n: u32) -> Vec<i64> {
        let mut v = vec![1i64; n as usize + 1];
        v[0] = -self.a();
        v
    }
}

impl std::str::FromStr for NamedForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<NamedForm> {
        match s {
            "f1" => Ok(NamedForm::F1),
            "f2" => Ok(NamedForm::F2),
            "f3" => Ok(NamedForm::F3),
            _ => Err(Error::InvalidArgument(format!(
                "unknown form {s:?}, expected f1, f2 or f3"
            ))),
        }
    }
}

/// Local data of a candidate form of signature `(n, 1)`.
#[derive(Clone, Debug, Serialize)]
pub struct LocalInvariantProfile {
    pub base_field: BaseField,
    pub n: u32,
    pub r: u32,
    /// Squarefree representative of the discriminant `(-1)^(m(m-1)/2) det`,
    /// `m = n + 1`.
    pub disc_class: i64,
    /// Places where the Hasse invariant differs from the split form's.
    pub hasse_minus_places: BTreeSet<Place>,
    #[serde(rename = "T")]
    pub t: Vec<u64>,
    /// `prod_{p in T} λ_lower(p)`.
    pub lambda_product_bound: BoundedReal,
}

impl LocalInvariantProfile {
    /// Builds a profile over `Q` and fills in `T` and its `λ` product.
    pub fn over_q(
        n: u32,
        disc_class: i64,
        hasse_minus_places: BTreeSet<Place>,
        prec: u32,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "dimension must be >= 2, got {n}"
            )));
        }
        if disc_class == 0 || squarefree_part(disc_class) != disc_class {
            return Err(Error::InvalidArgument(format!(
                "disc class {disc_class} is not a squarefree integer"
            )));
        }
        let r = rank_parameter(n);
        let t = derive_t(n, disc_class, &hasse_minus_places);
        let mut product = Rational::one();
        for &p in &t {
            product *= lambda_lower_exact(p, r.max(2), Parity::of(n))?;
        }
        Ok(LocalInvariantProfile {
            base_field: BaseField::Rationals,
            n,
            r,
            disc_class,
            hasse_minus_places,
            t,
            lambda_product_bound: BoundedReal::from_rational(&product, prec),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("profile serializes")
    }
}

/// `p` ramifies in `Q(sqrt(d))`.
fn ramified(p: u64, d: i64) -> bool {
    if p == 2 {
        matches!(d.rem_euclid(4), 2 | 3)
    } else {
        d % p as i64 == 0
    }
}

fn derive_t(n: u32, disc_class: i64, minus: &BTreeSet<Place>) -> Vec<u64> {
    let mut t = BTreeSet::new();
    let finite_minus = minus.iter().filter_map(|v| match v {
        Place::Finite(p) => Some(*p),
        Place::Infinite => None,
    });
    match Parity::of(n) {
        Parity::Even => {
            t.extend(
                bad_primes(disc_class)
                    .into_iter()
                    .filter(|&p| disc_class % p as i64 == 0),
            );
            t.extend(finite_minus);
        }
        Parity::Odd => t.extend(finite_minus.filter(|&p| !ramified(p, disc_class))),
    }
    t.into_iter().collect()
}

/// Squarefree class of `(-1)^(m(m-1)/2) det` for a form of dimension `m`.
pub fn disc_class(diag: &[i64]) -> i64 {
    let m = diag.len() as i64;
    let det: i64 = diag.iter().product();
    let sign = if (m * (m - 1) / 2) % 2 == 0 { 1 } else { -1 };
    squarefree_part(sign * det)
}

/// Determinant class `(-1)^(m(m-1)/2) disc` of a form of dimension `m`.
fn det_from_disc(m: u32, disc: i64) -> i64 {
    let k = m as i64 * (m as i64 - 1) / 2;
    if k % 2 == 0 {
        disc
    } else {
        -disc
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "snake_case")]
pub enum CheckOutcome {
    Accept,
    Reject(String),
}

impl CheckOutcome {
    pub fn accepted(&self) -> bool {
        matches!(self, CheckOutcome::Accept)
    }
}

/// Whether a form over `Q` with these invariants and signature `(n, 1)`
/// exists: even number of deviating places, and the data at infinity agree
/// with the real form `diag(-1, 1, ..., 1)` relative to the split form.
pub fn local_global_check(profile: &LocalInvariantProfile) -> CheckOutcome {
    if profile.base_field != BaseField::Rationals {
        return CheckOutcome::Reject("local-global check is only implemented over Q".into());
    }
    if profile.hasse_minus_places.len() % 2 == 1 {
        return CheckOutcome::Reject(format!(
            "reciprocity: odd number ({}) of places with Hasse invariant -1",
            profile.hasse_minus_places.len()
        ));
    }
    let m = profile.n + 1;
    let det = det_from_disc(m, profile.disc_class);
    if det >= 0 {
        return CheckOutcome::Reject(format!(
            "signature ({}, 1) needs a negative determinant, disc class gives {det}",
            profile.n
        ));
    }
    let mut real = vec![1i64; m as usize];
    real[0] = -1;
    let real_minus = hasse_invariant(&real, Place::Infinite)
        * hasse_invariant(&split_form(m as usize, det), Place::Infinite)
        == -1;
    if real_minus != profile.hasse_minus_places.contains(&Place::Infinite) {
        return CheckOutcome::Reject(format!(
            "archimedean Hasse invariant does not match signature ({}, 1)",
            profile.n
        ));
    }
    CheckOutcome::Accept
}

/// Profile of the diagonal form with entries `diag`, checked at 2, the odd
/// primes dividing the determinant and infinity.
pub fn diagonal_profile(diag: &[i64], prec: u32) -> Result<LocalInvariantProfile> {
    if diag.contains(&0) {
        return Err(Error::InvalidArgument("degenerate form".into()));
    }
    let det: i64 = diag.iter().product();
    let mut minus = BTreeSet::new();
    for p in bad_primes(det) {
        if normalized_hasse(diag, Place::Finite(p)) == -1 {
            minus.insert(Place::Finite(p));
        }
    }
    if normalized_hasse(diag, Place::Infinite) == -1 {
        minus.insert(Place::Infinite);
    }
    LocalInvariantProfile::over_q(diag.len() as u32 - 1, disc_class(diag), minus, prec)
}

pub fn named_form_invariants(form: NamedForm, n: u32, prec: u32) -> Result<LocalInvariantProfile> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "dimension must be >= 2, got {n}"
        )));
    }
    diagonal_profile(&form.diagonal(n), prec)
}

/// All sets `S` of primes with `prod_{p in S} λ_lower(p) <= budget`, each
/// sorted, in depth-first order. Products are exact; a product falling
/// inside the budget ball is reported as undecided.
pub fn enumerate_t_sets(n: u32, budget: &BoundedReal) -> Result<Vec<Vec<u64>>> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "T-set enumeration needs n >= 3, got {n}"
        )));
    }
    if !budget.is_finite() {
        return Err(Error::InvalidArgument("budget is not finite".into()));
    }
    let lo = dyadic_to_rational(&budget.lower());
    let hi = dyadic_to_rational(&budget.upper());
    if lo < Rational::one() {
        return Err(Error::InvalidArgument(format!(
            "budget must be >= 1, got {}",
            budget.mid_sci(6)
        )));
    }
    let r = rank_parameter(n);
    let parity = Parity::of(n);
    // λ grows with p; a prime can only occur if its factor times the
    // smallest possible cofactor fits
    let cheapest = lambda_lower_exact(2, r, parity)?.min(Rational::one());
    let mut limit = 64u64;
    let primes = loop {
        let primes = primes_below(limit);
        let last = *primes.last().expect("primes below 64");
        if lambda_lower_exact(last, r, parity)? * &cheapest > hi {
            break primes;
        }
        if limit >= MAX_ENUMERATION_PRIME {
            return Err(Error::InvalidArgument(format!(
                "budget admits primes beyond {MAX_ENUMERATION_PRIME}"
            )));
        }
        limit *= 4;
    };
    let lambdas = primes
        .iter()
        .map(|&p| lambda_lower_exact(p, r, parity))
        .collect::<Result<Vec<_>>>()?;
    let mut out = vec![Vec::new()];
    let mut stack = Vec::new();
    extend_sets(
        &primes,
        &lambdas,
        0,
        &Rational::one(),
        &lo,
        &hi,
        budget.prec(),
        &mut stack,
        &mut out,
    )?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn extend_sets(
    primes: &[u64],
    lambdas: &[Rational],
    start: usize,
    product: &Rational,
    lo: &Rational,
    hi: &Rational,
    prec: u32,
    stack: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) -> Result<()> {
    for i in start..primes.len() {
        let next = product * &lambdas[i];
        if &next > hi {
            break;
        }
        stack.push(primes[i]);
        if &next > lo {
            return Err(Error::Undecided {
                what: format!("λ product of {stack:?} against the budget"),
                prec,
            });
        }
        out.push(stack.clone());
        extend_sets(primes, lambdas, i + 1, &next, lo, hi, prec, stack, out)?;
        stack.pop();
    }
    Ok(())
}

/// `M(n) Vol(S^n) / ν` over `Q` with the zeta and `λ` factors dropped,
/// `h = 1` and `ℓ` of discriminant `d_l` (odd `n`).
pub fn rational_budget(n: u32, d_l: Option<u64>, ctx: &EvalContext) -> Result<BoundedReal> {
    let input = if n.is_multiple_of(2) {
        FieldBoundInput::even(n, 1, 1, ClassNumber::Exact(1))
    } else {
        FieldBoundInput {
            n,
            d: 1,
            d_k: 1,
            d_l,
            h: ClassNumber::Exact(1),
        }
    };
    let nu = nu_lower_bound(&input, ctx)?;
    Ok(m_bound(n, ctx)? * sphere_volume(n, ctx)? / nu)
}

/// Absolute discriminant of `Q(sqrt(d))` for squarefree `d`.
pub fn quadratic_field_discriminant(d: i64) -> u64 {
    if d == 1 {
        return 1;
    }
    let fd = if d.rem_euclid(4) == 1 { d } else { 4 * d };
    debug_assert!(is_fundamental_discriminant(fd));
    fd.unsigned_abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_lower_exact(2, 3, Parity::Even).unwrap(), q(7, 2));
        assert_eq!(lambda_lower_exact(3, 2, Parity::Odd).unwrap(), q(2, 1));
        assert_eq!(lambda_lower_exact(2, 2, Parity::Even).unwrap(), q(3, 2));
        assert_eq!(lambda_lower_exact(3, 2, Parity::Even).unwrap(), q(4, 1));
        assert!(lambda_lower_exact(2, 1, Parity::Even).is_err());
        assert!(lambda_lower_exact(1, 3, Parity::Odd).is_err());
    }

    #[test]
    fn budget_below_smallest_factor_gives_only_empty_set() {
        let b = BoundedReal::from_ratio(5, 4, 128);
        assert_eq!(enumerate_t_sets(4, &b).unwrap(), vec![Vec::<u64>::new()]);
    }

    #[test]
    fn boundary_budget_of_four() {
        let b = BoundedReal::from_i64(4, 128);
        let sets = enumerate_t_sets(4, &b).unwrap();
        assert_eq!(sets, vec![vec![], vec![2], vec![3]]);
    }

    #[test]
    fn fuzzy_budget_is_undecided() {
        let b = BoundedReal::from_ratio(4, 1, 128).add_error(crate::numerics::Mag::pow2(-20));
        let err = enumerate_t_sets(4, &b).unwrap_err();
        assert!(err.is_undecided());
        assert!(err.to_string().contains("[3]"));
    }

    #[test]
    fn f3_in_odd_dimension_splits_over_q_sqrt_minus_3() {
        for r in [2u32, 4, 6, 8] {
            let p = named_form_invariants(NamedForm::F3, 2 * r - 1, 128).unwrap();
            assert_eq!(p.disc_class, -3, "r={r}");
        }
        for r in [3u32, 5, 7] {
            let p = named_form_invariants(NamedForm::F3, 2 * r - 1, 128).unwrap();
            assert_eq!(p.disc_class, 3, "r={r}");
        }
    }

    #[test]
    fn unconstructible_profiles_are_rejected() {
        let one: BTreeSet<Place> = [Place::Finite(3)].into_iter().collect();
        let p = LocalInvariantProfile::over_q(5, -1, one, 128).unwrap();
        let CheckOutcome::Reject(reason) = local_global_check(&p) else {
            panic!("accepted")
        };
        assert!(reason.contains("reciprocity"));

        let f1 = named_form_invariants(NamedForm::F1, 5, 128).unwrap();
        let mut flipped = f1.clone();
        flipped.disc_class = -f1.disc_class;
        assert!(!local_global_check(&flipped).accepted());
    }

    #[test]
    fn f2_has_two_in_t_exactly_when_disc_is_even() {
        for n in 4..=20 {
            let p = named_form_invariants(NamedForm::F2, n, 128).unwrap();
            if n % 2 == 0 {
                assert!(p.t.contains(&2), "n={n}");
            }
            assert!(local_global_check(&p).accepted());
        }
    }

    #[test]
    fn rational_budget_is_positive() {
        let ctx = EvalContext::default();
        for n in 4..=9 {
            let dl = if n % 2 == 1 { Some(3) } else { None };
            assert!(rational_budget(n, dl, &ctx).unwrap().definitely_positive());
        }
    }

    #[test]
    fn quadratic_discriminants() {
        assert_eq!(quadratic_field_discriminant(-3), 3);
        assert_eq!(quadratic_field_discriminant(-1), 4);
        assert_eq!(quadratic_field_discriminant(2), 8);
        assert_eq!(quadratic_field_discriminant(5), 5);
        assert_eq!(quadratic_field_discriminant(1), 1);
    }
}
