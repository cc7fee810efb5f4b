//! Degree and discriminant sieve for the fields of definition of cocompact
//! congruence reflection groups.

mod cap;
mod exponents;

use num_bigint::BigInt;
use serde::Serialize;

use crate::bounds::{b1, b2};
use crate::error::{Error, Result};
use crate::fielddata::{odlyzko_min_disc, FieldTable, ODLYZKO_MAX_DEGREE, ROOT_DISCRIMINANT_FLOOR};
use crate::numerics::{factorial, BoundedReal, EvalContext, Rational};
use crate::spectral::{m_bound_rounded_up, r_ratios};

pub use cap::{integer_cap, MAX_ESCALATIONS};
pub use exponents::{exponents, Chain, Exponents};

/// Decimals kept when `M(n)` is rounded up before sieving.
pub const M_DECIMALS: u32 = 2;

/// Largest dimension the sieve scans; beyond it `R_c < 1`.
pub const MAX_SIEVE_DIMENSION: u32 = 27;

#[derive(Clone, Debug, Serialize)]
pub struct NamedValue {
    pub name: String,
    pub value: BoundedReal,
}

#[derive(Clone, Debug, Serialize)]
pub struct Step {
    pub name: String,
    pub degree: Option<u32>,
    pub inequality: String,
    pub constants: Vec<NamedValue>,
    pub result: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeCap {
    pub d: u32,
    /// Largest `D_k` allowed by the Brauer–Siegel inequality.
    pub cap: u64,
    pub min_discriminant: u64,
    pub admissible: bool,
    /// The field table lists every totally real field of this degree up to `cap`.
    pub table_complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldEntry {
    pub d: u32,
    pub d_k: u64,
    pub class_number: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Exclusion {
    pub d: u32,
    pub d_k: Option<u64>,
    pub rule: String,
    pub lhs: Option<BoundedReal>,
    pub rhs: Option<BoundedReal>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DlCeiling {
    pub d: u32,
    pub d_k: u64,
    /// `D_ℓ` must lie in `[d_k^2, ceiling]`.
    pub ceiling: u64,
    pub floor: u64,
    /// Fields of degree `2d`, any signature, with `D_k^2 | D` in that window;
    /// `None` when the table is not complete there.
    pub candidates: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SieveReport {
    pub n: u32,
    pub chain: Option<Chain>,
    /// `M(n)` rounded up to two decimals; the value every inequality uses.
    pub m_used: String,
    pub degree_caps: Vec<DegreeCap>,
    pub max_degree: Option<u32>,
    pub global_cap: Option<u64>,
    pub steps: Vec<Step>,
    /// Fields passing the Brauer–Siegel step.
    pub admissible: Vec<FieldEntry>,
    /// Fields surviving every available refinement.
    pub refined: Vec<FieldEntry>,
    /// Admissible degrees whose field list could not be enumerated.
    pub unrefined_degrees: Vec<u32>,
    pub excluded: Vec<Exclusion>,
    pub dl_ceilings: Vec<DlCeiling>,
    pub notes: Vec<String>,
}

impl SieveReport {
    pub fn refined_pairs(&self) -> Vec<(u32, u64)> {
        self.refined.iter().map(|e| (e.d, e.d_k)).collect()
    }

    pub fn admissible_pairs(&self) -> Vec<(u32, u64)> {
        self.admissible.iter().map(|e| (e.d, e.d_k)).collect()
    }

    pub fn cap(&self, d: u32) -> Option<u64> {
        self.degree_caps.iter().find(|c| c.d == d).map(|c| c.cap)
    }

    /// `(d, cap)` for the admissible degrees.
    pub fn admissible_caps(&self) -> Vec<(u32, u64)> {
        self.degree_caps
            .iter()
            .filter(|c| c.admissible)
            .map(|c| (c.d, c.cap))
            .collect()
    }

    /// Degrees that still carry at least one field, or an unenumerated cap.
    pub fn surviving_degrees(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self
            .refined
            .iter()
            .map(|e| e.d)
            .chain(self.unrefined_degrees.iter().copied())
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn is_empty(&self) -> bool {
        self.refined.is_empty() && self.unrefined_degrees.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("n = {}  (M rounded up: {})\n", self.n, self.m_used);
        for c in &self.degree_caps {
            out.push_str(&format!(
                "  d = {:>2}: D_k <= {:<10} min D = {:<12} {}\n",
                c.d,
                c.cap,
                c.min_discriminant,
                if !c.admissible {
                    "excluded"
                } else if c.table_complete {
                    "enumerated"
                } else {
                    "unrefined"
                }
            ));
        }
        let list = |v: &[FieldEntry]| {
            v.iter()
                .map(|e| format!("({},{})", e.d, e.d_k))
                .collect::<Vec<_>>()
                .join(" ")
        };
        out.push_str(&format!("  admissible: {}\n", list(&self.admissible)));
        out.push_str(&format!("  refined:    {}\n", list(&self.refined)));
        if !self.unrefined_degrees.is_empty() {
            out.push_str(&format!(
                "  unrefined degrees: {:?}\n",
                self.unrefined_degrees
            ));
        }
        for e in &self.excluded {
            let field = match e.d_k {
                Some(dk) => format!("d={} D={dk}", e.d),
                None => format!("d={}", e.d),
            };
            out.push_str(&format!("  excluded {field}: {} ({})\n", e.rule, e.detail));
        }
        for c in &self.dl_ceilings {
            out.push_str(&format!(
                "  D_l for (d={}, D_k={}): {} <= D_l <= {}{}\n",
                c.d,
                c.d_k,
                c.floor,
                c.ceiling,
                match c.candidates {
                    Some(k) => format!(", {k} candidate fields"),
                    None => String::new(),
                }
            ));
        }
        for note in &self.notes {
            out.push_str(&format!("  note: {note}\n"));
        }
        out
    }
}

fn int(v: u64, ctx: &EvalContext) -> BoundedReal {
    BoundedReal::from_bigint(&BigInt::from(v), ctx.prec())
}

/// Per-degree base `γ` with `D_k^(step1) <= c M γ^-d`, together with `c`.
fn step1_base(ex: &Exponents, ctx: &EvalContext) -> Result<(BoundedReal, i64)> {
    let r = ex.r;
    Ok(match ex.chain {
        Chain::Even => (b1(r, ctx)?, 16),
        Chain::OddROdd => (ctx.int(72) * b2(r, ctx)? / ctx.pi().sqr(), 16),
        Chain::OddREven => (ctx.int(36) * b2(r, ctx)? / ctx.pi().sqr(), 4),
    })
}

fn step1_bound(ex: &Exponents, m: &Rational, d: u32, ctx: &EvalContext) -> Result<BoundedReal> {
    let (gamma, c) = step1_base(ex, ctx)?;
    Ok(ctx.int(c) * BoundedReal::from_rational(m, ctx.prec()) / gamma.powi(d as i64))
}

fn step1_inequality(ex: &Exponents) -> String {
    let e = half(ex.dk_step1);
    match ex.chain {
        Chain::Even => format!("D_k^{e} <= 16 M B_1({})^-d", ex.r),
        Chain::OddROdd => format!("D_k^{e} <= 16 M (72 B_2({}) / pi^2)^-d", ex.r),
        Chain::OddREven => format!("D_k^{e} <= 4 M (36 B_2({}) / pi^2)^-d", ex.r),
    }
}

fn half(x: i64) -> String {
    if x % 2 == 0 {
        format!("{}", x / 2)
    } else {
        format!("{}.5", (x - 1) / 2)
    }
}

/// `(1/2) prod_{i=1}^{r} (2i-1)!/(2π)^{2i}`.
fn half_gamma_product(r: u32, ctx: &EvalContext) -> BoundedReal {
    let two_pi = ctx.two_pi();
    let mut acc = ctx.ratio(1, 2);
    for i in 1..=r {
        acc = acc * BoundedReal::from_bigint(&factorial(2 * i as u64 - 1), ctx.prec())
            / two_pi.powi(2 * i as i64);
    }
    acc
}

/// Left side of the exact-class-number test for even `n`:
/// `D^(r^2 + r/2) / h · ((1/2) prod (2i-1)!/(2π)^{2i})^d`.
pub fn exact_class_number_lhs(
    n: u32,
    d: u32,
    d_k: u64,
    h: u64,
    ctx: &EvalContext,
) -> Result<BoundedReal> {
    if !n.is_multiple_of(2) || n < 4 {
        return Err(Error::InvalidArgument(format!(
            "the exact class-number test is for even n >= 4, got {n}"
        )));
    }
    let ex = exponents(n);
    let dk = int(d_k, ctx);
    Ok(
        ctx.pow_ratio(&dk, ex.dk_exact.expect("even"), 2) / int(h, ctx)
            * half_gamma_product(ex.r, ctx).powi(d as i64),
    )
}

/// Ceiling on `D_ℓ` for the quadratic extension `ℓ/k` (odd `n`).
fn dl_bound(
    ex: &Exponents,
    m: &Rational,
    d: u32,
    d_k: u64,
    ctx: &EvalContext,
) -> Result<BoundedReal> {
    let k = step1_bound(ex, m, d, ctx)?;
    Ok(k / ctx.pow_ratio(&int(d_k, ctx), ex.dk_in_dl.expect("odd"), 2))
}

/// Runs the sieve for one dimension `4 <= n <= 27`.
pub fn sieve(n: u32, table: &FieldTable, ctx: &EvalContext) -> Result<SieveReport> {
    if !(4..=MAX_SIEVE_DIMENSION).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "the field sieve covers 4 <= n <= {MAX_SIEVE_DIMENSION}, got {n}"
        )));
    }
    let (rc, _) = r_ratios(n, ctx)?;
    if rc.definitely_less(&ctx.int(1)) {
        return Ok(empty_report(
            n,
            format!("R_c({n}) < 1: no cocompact congruence reflection groups"),
        ));
    }
    if !rc.definitely_greater(&ctx.int(1)) {
        return Err(Error::Undecided {
            what: format!("R_c({n}) against 1"),
            prec: ctx.prec(),
        });
    }
    if n.is_multiple_of(2) {
        even_sieve(n, table, ctx)
    } else {
        odd_sieve(n, table, ctx)
    }
}

fn empty_report(n: u32, note: String) -> SieveReport {
    SieveReport {
        n,
        chain: None,
        m_used: String::new(),
        degree_caps: Vec::new(),
        max_degree: None,
        global_cap: None,
        steps: Vec::new(),
        admissible: Vec::new(),
        refined: Vec::new(),
        unrefined_degrees: Vec::new(),
        excluded: Vec::new(),
        dl_ceilings: Vec::new(),
        notes: vec![note],
    }
}

fn rational_decimal(q: &Rational, decimals: u32) -> String {
    let scale = BigInt::from(10u32).pow(decimals);
    let v = (q * Rational::from_integer(scale)).to_integer();
    let s = v.to_string();
    let (int_part, frac) = s.split_at(s.len().saturating_sub(decimals as usize));
    format!(
        "{}.{frac:0>width$}",
        if int_part.is_empty() { "0" } else { int_part },
        width = decimals as usize
    )
}

/// Step 1 shared by both parities: per-degree caps, degree admissibility
/// and the field lists where the table is complete.
fn step1(n: u32, table: &FieldTable, ctx: &EvalContext) -> Result<SieveReport> {
    let ex = exponents(n);
    let m = m_bound_rounded_up(n, ctx.delta_mode(), M_DECIMALS)?;
    let mut rep = empty_report(n, String::new());
    rep.notes.clear();
    rep.chain = Some(ex.chain);
    rep.m_used = rational_decimal(&m, M_DECIMALS);
    rep.notes
        .push("d = 1 is not sieved: forms over Q of signature (n,1), n >= 4, are isotropic".into());

    for d in 2..=ODLYZKO_MAX_DEGREE {
        let what = format!("discriminant cap for n={n}, d={d}");
        let cap = integer_cap(ex.dk_step1, ctx, &what, |c| step1_bound(&ex, &m, d, c))?;
        let min = odlyzko_min_disc(d)?;
        let admissible = min <= cap;
        let table_complete = table
            .complete_up_to(d, crate::fielddata::SignatureScope::TotallyReal)
            .unwrap_or(0)
            >= cap;
        rep.steps.push(Step {
            name: "brauer_siegel_cap".into(),
            degree: Some(d),
            inequality: step1_inequality(&ex),
            constants: vec![NamedValue {
                name: "bound".into(),
                value: step1_bound(&ex, &m, d, ctx)?,
            }],
            result: format!("D_k <= {cap}"),
        });
        rep.degree_caps.push(DegreeCap {
            d,
            cap,
            min_discriminant: min,
            admissible,
            table_complete,
        });
        if !admissible {
            rep.excluded.push(Exclusion {
                d,
                d_k: None,
                rule: "minimal_discriminant".into(),
                lhs: Some(int(min, ctx)),
                rhs: Some(int(cap, ctx)),
                detail: format!("every totally real field of degree {d} has D >= {min} > {cap}"),
            });
            continue;
        }
        if !table_complete {
            rep.unrefined_degrees.push(d);
            continue;
        }
        let fields = table.fields_in_range(d, cap, false)?;
        rep.notes.push(format!(
            "degree {d}: {} totally real fields with D <= {cap}, class numbers {:?}",
            fields.len(),
            fields
                .iter()
                .map(|f| (f.discriminant, f.class_number))
                .collect::<Vec<_>>()
        ));
        for f in fields {
            rep.admissible.push(FieldEntry {
                d,
                d_k: f.discriminant,
                class_number: f.class_number,
            });
        }
    }
    tail_check(&ex, &m, ctx, &mut rep)?;
    let adm: Vec<&DegreeCap> = rep.degree_caps.iter().filter(|c| c.admissible).collect();
    rep.max_degree = adm.iter().map(|c| c.d).max();
    rep.global_cap = adm.iter().map(|c| c.cap).max();
    Ok(rep)
}

/// Degrees past the stored table: with `D >= 11^d` and a per-degree growth
/// factor of the cap below 11, checking `d = 11` covers every larger `d`.
fn tail_check(
    ex: &Exponents,
    m: &Rational,
    ctx: &EvalContext,
    rep: &mut SieveReport,
) -> Result<()> {
    let (gamma, _) = step1_base(ex, ctx)?;
    let p = ex.dk_step1;
    let floor = int(ROOT_DISCRIMINANT_FLOOR, ctx);
    // growth factor γ^(-2/p) < 11  <=>  γ^2 11^p > 1
    let growth_ok = (gamma.sqr() * floor.powi(p)).definitely_greater(&ctx.int(1));
    let d = ODLYZKO_MAX_DEGREE + 1;
    let k = step1_bound(ex, m, d, ctx)?;
    // K(d)^2 < 11^(d p)
    let first_ok = k.sqr().definitely_less(&floor.powi(d as i64 * p));
    if !(growth_ok && first_ok) {
        return Err(Error::Undecided {
            what: format!("degrees above {ODLYZKO_MAX_DEGREE} for n={}", rep.n),
            prec: ctx.prec(),
        });
    }
    rep.steps.push(Step {
        name: "degree_tail".into(),
        degree: None,
        inequality: format!("D >= {ROOT_DISCRIMINANT_FLOOR}^d for d >= 9 and the cap grows by less than {ROOT_DISCRIMINANT_FLOOR} per degree"),
        constants: vec![NamedValue { name: "gamma".into(), value: gamma }],
        result: format!("no admissible degree above {ODLYZKO_MAX_DEGREE}"),
    });
    Ok(())
}

/// Sieve for even `n = 2r`: Brauer–Siegel caps, then the exact class number.
pub fn even_sieve(n: u32, table: &FieldTable, ctx: &EvalContext) -> Result<SieveReport> {
    if !n.is_multiple_of(2) || !(4..=MAX_SIEVE_DIMENSION).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "even_sieve needs even 4 <= n <= {MAX_SIEVE_DIMENSION}, got {n}"
        )));
    }
    let mut rep = step1(n, table, ctx)?;
    let m = m_bound_rounded_up(n, ctx.delta_mode(), M_DECIMALS)?;
    let ex = exponents(n);
    for e in rep.admissible.clone() {
        let what = format!("class-number test for n={n}, d={}, D={}", e.d, e.d_k);
        let (lhs, rhs, keep) = decide(ctx, &what, |c| {
            let lhs = exact_class_number_lhs(n, e.d, e.d_k, e.class_number, c)?;
            Ok((lhs, BoundedReal::from_rational(&m, c.prec())))
        })?;
        if keep {
            rep.refined.push(e);
        } else {
            rep.excluded.push(Exclusion {
                d: e.d,
                d_k: Some(e.d_k),
                rule: "exact_class_number".into(),
                lhs: Some(lhs),
                rhs: Some(rhs),
                detail: format!(
                    "D^{} / h (prod/2)^d > M with h = {}",
                    half(ex.dk_exact.expect("even")),
                    e.class_number
                ),
            });
        }
    }
    rep.steps.push(Step {
        name: "exact_class_number".into(),
        degree: None,
        inequality: format!(
            "D_k^{} / h_k ((1/2) prod_(i<={}) (2i-1)!/(2 pi)^(2i))^d <= M",
            half(ex.dk_exact.expect("even")),
            ex.r
        ),
        constants: Vec::new(),
        result: format!(
            "{} of {} enumerated fields remain",
            rep.refined.len(),
            rep.admissible.len()
        ),
    });
    Ok(rep)
}

/// Decides `lhs <= rhs` with escalation; returns the last evaluated pair and
/// whether the inequality holds.
fn decide<F>(ctx: &EvalContext, what: &str, f: F) -> Result<(BoundedReal, BoundedReal, bool)>
where
    F: Fn(&EvalContext) -> Result<(BoundedReal, BoundedReal)>,
{
    let mut prec = ctx.prec();
    for _ in 0..=MAX_ESCALATIONS {
        let c = ctx.at_precision(prec);
        let (lhs, rhs) = f(&c)?;
        if lhs.definitely_less(&rhs) {
            return Ok((lhs.with_prec(ctx.prec()), rhs.with_prec(ctx.prec()), true));
        }
        if lhs.definitely_greater(&rhs) {
            return Ok((lhs.with_prec(ctx.prec()), rhs.with_prec(ctx.prec()), false));
        }
        prec *= 2;
    }
    Err(Error::Undecided {
        what: what.to_string(),
        prec: prec / 2,
    })
}

/// Sieve for odd `n = 2r - 1`: caps on `D_k`, then ceilings on `D_ℓ` and
/// exclusion of `k` when the table certifies that no candidate `ℓ` exists.
pub fn odd_sieve(n: u32, table: &FieldTable, ctx: &EvalContext) -> Result<SieveReport> {
    if n % 2 != 1 || !(5..=MAX_SIEVE_DIMENSION).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "odd_sieve needs odd 5 <= n <= {MAX_SIEVE_DIMENSION}, got {n}"
        )));
    }
    let mut rep = step1(n, table, ctx)?;
    let m = m_bound_rounded_up(n, ctx.delta_mode(), M_DECIMALS)?;
    let ex = exponents(n);
    let p = ex.dl.expect("odd");
    for e in rep.admissible.clone() {
        let what = format!("D_l ceiling for n={n}, d={}, D_k={}", e.d, e.d_k);
        let ceiling = integer_cap(p, ctx, &what, |c| dl_bound(&ex, &m, e.d, e.d_k, c))?;
        let floor = e.d_k * e.d_k;
        let deg_l = 2 * e.d;
        let candidates = if ceiling < floor {
            Some(0)
        } else {
            table
                .fields_any_signature(deg_l, ceiling, false)
                .ok()
                .map(|v| {
                    v.iter()
                        .filter(|f| f.discriminant >= floor && f.discriminant % floor == 0)
                        .count()
                })
        };
        rep.dl_ceilings.push(DlCeiling {
            d: e.d,
            d_k: e.d_k,
            ceiling,
            floor,
            candidates,
        });
        if candidates == Some(0) {
            rep.excluded.push(Exclusion {
                d: e.d,
                d_k: Some(e.d_k),
                rule: "no_quadratic_extension".into(),
                lhs: Some(int(floor, ctx)),
                rhs: Some(int(ceiling, ctx)),
                detail: format!(
                    "no field of degree {deg_l} with D_k^2 | D and {floor} <= |D| <= {ceiling}"
                ),
            });
        } else {
            rep.refined.push(e);
        }
    }
    rep.steps.push(Step {
        name: "relative_discriminant_ceiling".into(),
        degree: None,
        inequality: match ex.chain {
            Chain::OddROdd => format!(
                "D_l^{} <= 16 M (72 B_2({}) / pi^2)^-d D_k^-{}",
                half(p),
                ex.r,
                half(ex.dk_in_dl.expect("odd"))
            ),
            _ => format!(
                "D_l^{} <= 4 M (36 B_2({}) / pi^2)^-d D_k^-{}",
                half(p),
                ex.r,
                half(ex.dk_in_dl.expect("odd"))
            ),
        },
        constants: Vec::new(),
        result: format!(
            "{} of {} enumerated fields remain",
            rep.refined.len(),
            rep.admissible.len()
        ),
    });
    rep.notes
        .push("class numbers of l are not tabulated; no exact class-number step for odd n".into());
    Ok(rep)
}

/// One report per dimension in `n_min..=n_max`.
pub fn sieve_all(
    n_min: u32,
    n_max: u32,
    table: &FieldTable,
    ctx: &EvalContext,
) -> Result<Vec<SieveReport>> {
    (n_min..=n_max).map(|n| sieve(n, table, ctx)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_decimal_formatting() {
        assert_eq!(
            rational_decimal(&Rational::new(1897.into(), 100.into()), 2),
            "18.97"
        );
        assert_eq!(
            rational_decimal(&Rational::new(5.into(), 100.into()), 2),
            "0.05"
        );
        assert_eq!(
            rational_decimal(&Rational::from_integer(8.into()), 2),
            "8.00"
        );
    }

    #[test]
    fn dimension_twelve() {
        let ctx = EvalContext::default();
        let rep = sieve(12, &FieldTable::embedded(), &ctx).unwrap();
        assert_eq!(rep.refined_pairs(), vec![(2, 5)]);
        assert_eq!(rep.m_used, "142.61");
    }

    #[test]
    fn dimension_thirteen_is_empty() {
        let ctx = EvalContext::default();
        let rep = sieve(13, &FieldTable::embedded(), &ctx).unwrap();
        assert!(rep.is_empty());
        assert!(rep.notes[0].contains("R_c(13) < 1"));
        assert!(sieve(3, &FieldTable::embedded(), &ctx).is_err());
    }
}
