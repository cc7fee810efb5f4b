//! Number-field records, completeness directives and minimal-discriminant
//! data for the field sieve.

mod odlyzko;
mod poly;

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use odlyzko::{
    odlyzko_min_disc, ODLYZKO_MAX_DEGREE, ROOT_DISCRIMINANT_FLOOR, ROOT_FLOOR_FROM_DEGREE,
};
pub use poly::{parse_polynomial, polynomial_discriminant};

const EMBEDDED: &str = include_str!("../../data/fields.csv");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignatureScope {
    TotallyReal,
    Any,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberFieldRecord {
    pub degree: u32,
    /// Absolute discriminant.
    pub discriminant: u64,
    pub r1: u32,
    pub r2: u32,
    pub class_number: u64,
    pub polynomial: Option<String>,
    pub label: String,
}

impl NumberFieldRecord {
    pub fn is_totally_real(&self) -> bool {
        self.r2 == 0 && self.r1 == self.degree
    }

    fn key(&self) -> (u32, u64, String) {
        (
            self.degree,
            self.discriminant,
            self.polynomial.clone().unwrap_or_default(),
        )
    }

    fn to_line(&self) -> String {
        let mut s = format!(
            "{},{},{},{},{}",
            self.degree, self.discriminant, self.r1, self.r2, self.class_number
        );
        if let Some(p) = &self.polynomial {
            s.push(',');
            s.push_str(p);
        }
        s
    }
}

/// `#complete degree=<d> up_to=<D> [signature=any]`: every field of degree
/// `d` (totally real unless `any`) with discriminant at most `D` is listed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Completeness {
    pub degree: u32,
    pub up_to: u64,
    pub scope: SignatureScope,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldTable {
    records: Vec<NumberFieldRecord>,
    completeness: Vec<Completeness>,
}

fn parse_u64(field: &str, what: &str, line: usize) -> Result<u64> {
    field.trim().parse::<u64>().map_err(|_| Error::Parse {
        line,
        msg: format!("bad {what} '{}'", field.trim()),
    })
}

fn parse_directive(body: &str, line: usize) -> Result<Completeness> {
    let mut degree = None;
    let mut up_to = None;
    let mut scope = SignatureScope::TotallyReal;
    for tok in body.split_whitespace() {
        let (k, v) = tok.split_once('=').ok_or_else(|| Error::Parse {
            line,
            msg: format!("directive token '{tok}' is not key=value"),
        })?;
        match k {
            "degree" => degree = Some(parse_u64(v, "degree", line)? as u32),
            "up_to" => up_to = Some(parse_u64(v, "bound", line)?),
            "signature" => {
                scope = match v {
                    "any" => SignatureScope::Any,
                    "totally_real" => SignatureScope::TotallyReal,
                    _ => {
                        return Err(Error::Parse {
                            line,
                            msg: format!("unknown signature scope '{v}'"),
                        })
                    }
                }
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unknown directive key '{k}'"),
                })
            }
        }
    }
    match (degree, up_to) {
        (Some(degree), Some(up_to)) if degree >= 1 => Ok(Completeness {
            degree,
            up_to,
            scope,
        }),
        _ => Err(Error::Parse {
            line,
            msg: "#complete needs degree=<d> and up_to=<D>".into(),
        }),
    }
}

fn parse_record(text: &str, line: usize) -> Result<NumberFieldRecord> {
    let cols: Vec<&str> = text.split(',').map(str::trim).collect();
    if cols.len() != 5 && cols.len() != 6 {
        return Err(Error::Parse {
            line,
            msg: format!("expected 5 or 6 columns, found {}", cols.len()),
        });
    }
    let degree = parse_u64(cols[0], "degree", line)? as u32;
    let discriminant = parse_u64(cols[1], "discriminant", line)?;
    let r1 = parse_u64(cols[2], "r1", line)? as u32;
    let r2 = parse_u64(cols[3], "r2", line)? as u32;
    let class_number = parse_u64(cols[4], "class number", line)?;
    let polynomial = cols
        .get(5)
        .filter(|p| !p.is_empty())
        .map(|p| p.replace(' ', ""));
    let bad = |msg: String| Error::InvalidRecord(format!("line {line}: {msg}"));
    if degree == 0 || r1 + 2 * r2 != degree {
        return Err(bad(format!(
            "signature ({r1},{r2}) does not fit degree {degree}"
        )));
    }
    if discriminant == 0 || class_number == 0 {
        return Err(bad("discriminant and class number must be positive".into()));
    }
    if let Some(p) = &polynomial {
        let c = parse_polynomial(p).map_err(|m| Error::Parse { line, msg: m })?;
        if c.len() != degree as usize + 1 || c.last() != Some(&1) {
            return Err(bad(format!(
                "'{p}' is not a monic polynomial of degree {degree}"
            )));
        }
    }
    Ok(NumberFieldRecord {
        label: format!("{degree}.{r1}.{discriminant}"),
        degree,
        discriminant,
        r1,
        r2,
        class_number,
        polynomial,
    })
}

impl FieldTable {
    /// Parses and validates the line format.
    pub fn parse(text: &str) -> Result<FieldTable> {
        let mut t = FieldTable::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let s = raw.trim();
            if s.is_empty() {
                continue;
            }
            if let Some(body) = s.strip_prefix("#complete") {
                t.completeness.push(parse_directive(body, line)?);
                continue;
            }
            if s.starts_with('#') {
                continue;
            }
            let rec = parse_record(s, line)?;
            if t.records.iter().any(|r| r.key() == rec.key()) {
                return Err(Error::InvalidRecord(format!(
                    "line {line}: duplicate record {}",
                    rec.to_line()
                )));
            }
            t.records.push(rec);
        }
        t.records.sort_by_key(|r| r.key());
        t.completeness.sort();
        t.completeness.dedup();
        Ok(t)
    }

    /// The table shipped with the crate.
    pub fn embedded() -> FieldTable {
        FieldTable::parse(EMBEDDED).expect("embedded field table is valid")
    }

    pub fn from_path(path: &Path) -> Result<FieldTable> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::MissingData(format!("cannot read {}: {e}", path.display())))?;
        FieldTable::parse(&text)
    }

    pub fn records(&self) -> &[NumberFieldRecord] {
        &self.records
    }

    pub fn completeness(&self) -> &[Completeness] {
        &self.completeness
    }

    /// Largest `D` up to which degree `d` is certified complete in `scope`.
    /// A certificate for all signatures also covers the totally real ones.
    pub fn complete_up_to(&self, d: u32, scope: SignatureScope) -> Option<u64> {
        self.completeness
            .iter()
            .filter(|c| c.degree == d && (c.scope == scope || c.scope == SignatureScope::Any))
            .map(|c| c.up_to)
            .max()
    }

    /// Totally real fields of degree `d` with `D <= d_max`, sorted by `D`.
    ///
    /// Fails unless the range is certified complete or `best_effort` is set.
    pub fn fields_in_range(
        &self,
        d: u32,
        d_max: u64,
        best_effort: bool,
    ) -> Result<Vec<&NumberFieldRecord>> {
        self.range_in_scope(d, d_max, SignatureScope::TotallyReal, best_effort)
    }

    /// Fields of degree `d` and any signature with `|D| <= d_max`.
    pub fn fields_any_signature(
        &self,
        d: u32,
        d_max: u64,
        best_effort: bool,
    ) -> Result<Vec<&NumberFieldRecord>> {
        self.range_in_scope(d, d_max, SignatureScope::Any, best_effort)
    }

    fn range_in_scope(
        &self,
        d: u32,
        d_max: u64,
        scope: SignatureScope,
        best_effort: bool,
    ) -> Result<Vec<&NumberFieldRecord>> {
        // nothing exists below the minimal discriminant
        if let Ok(min) = odlyzko_min_disc(d) {
            if d_max < min && scope == SignatureScope::TotallyReal {
                return Ok(Vec::new());
            }
        }
        let complete = self.complete_up_to(d, scope).unwrap_or(0);
        if d_max > complete && !best_effort {
            return Err(Error::Incomplete {
                degree: d,
                complete_to: complete,
                requested: d_max,
            });
        }
        let mut out: Vec<&NumberFieldRecord> = self
            .records
            .iter()
            .filter(|r| r.degree == d && r.discriminant <= d_max)
            .filter(|r| scope == SignatureScope::Any || r.is_totally_real())
            .collect();
        out.sort_by_key(|r| r.discriminant);
        Ok(out)
    }

    pub fn find(&self, d: u32, disc: u64) -> Option<&NumberFieldRecord> {
        self.records
            .iter()
            .find(|r| r.degree == d && r.discriminant == disc && r.is_totally_real())
    }

    /// Canonical text form: directives, then records sorted by key.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("# degree,discriminant,r1,r2,class_number[,polynomial]\n");
        for c in &self.completeness {
            let _ = write!(out, "#complete degree={} up_to={}", c.degree, c.up_to);
            if c.scope == SignatureScope::Any {
                out.push_str(" signature=any");
            }
            out.push('\n');
        }
        for r in &self.records {
            out.push_str(&r.to_line());
            out.push('\n');
        }
        out
    }

    /// Every polynomial has discriminant `(-1)^r2 D f^2` for an integer
    /// index `f`, and the stored minimal-discriminant bounds hold.
    pub fn validate(&self) -> Result<()> {
        for r in &self.records {
            let Some(p) = &r.polynomial else { continue };
            let coeffs = parse_polynomial(p).map_err(Error::InvalidRecord)?;
            let disc = polynomial_discriminant(&coeffs);
            let signed = if r.r2 % 2 == 0 {
                BigInt::from(r.discriminant)
            } else {
                -BigInt::from(r.discriminant)
            };
            let (index_sq, rem) = disc.div_rem(&signed);
            let ok = rem.is_zero() && index_sq.sign() == Sign::Plus && {
                let f = index_sq.sqrt();
                &f * &f == index_sq
            };
            if !ok {
                return Err(Error::InvalidRecord(format!(
                    "{}: polynomial discriminant {disc} is not {signed} times a square",
                    r.to_line()
                )));
            }
        }
        self.check_against_odlyzko()
    }

    /// Per-degree minimum of the listed totally real discriminants is never
    /// below the stored minimal-discriminant bound.
    pub fn check_against_odlyzko(&self) -> Result<()> {
        for r in self.records.iter().filter(|r| r.is_totally_real()) {
            if let Ok(min) = odlyzko_min_disc(r.degree) {
                if r.discriminant < min {
                    return Err(Error::InvalidRecord(format!(
                        "{} lies below the degree-{} minimum {min}",
                        r.to_line(),
                        r.degree
                    )));
                }
            }
        }
        Ok(())
    }
}
