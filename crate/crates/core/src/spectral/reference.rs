//! Published reference values for `M(n)`, `R_c(n)`, `R_nc(n)`, `2 <= n <= 29`,
//! kept as the decimal strings they were printed with.

use crate::numerics::{BoundedReal, EvalContext};

#[derive(Clone, Copy, Debug)]
pub struct ReferenceRow {
    pub n: u32,
    pub m: &'static str,
    pub r_c: &'static str,
    pub r_nc: &'static str,
}

const fn row(n: u32, m: &'static str, r_c: &'static str, r_nc: &'static str) -> ReferenceRow {
    ReferenceRow { n, m, r_c, r_nc }
}

pub const REFERENCE_TABLE: [ReferenceRow; 28] = [
    row(2, "10.67", "1792", "256"),
    row(3, "8.00", "8087.73", "3733.19"),
    row(4, "10.24", "294912.00", "39321.60"),
    row(5, "13.80", "559265.56", "2344318.63"),
    row(6, "18.97", "652099.51", "15728640"),
    row(7, "26.32", "3135381.86", "904118049"),
    row(8, "36.72", "52878455.97", "5.12e10"),
    row(9, "51.40", "364096.25", "2.82e13"),
    row(10, "72.12", "3247.27", "2.66e13"),
    row(11, "101.36", "329.09", "9.23e13"),
    row(12, "142.61", "270.58", "1.58e14"),
    row(13, "200.82", "1.08e-3", "2.81e15"),
    row(14, "282.97", "1.39e-8", "3.74e15"),
    row(15, "398.94", "6.58e-12", "8.54e16"),
    row(16, "562.68", "6.73e-14", "2.13e18"),
    row(17, "793.88", "4.39e-23", "1.14e21"),
    row(18, "1120.4", "2.57e-31", "2.78e18"),
    row(19, "1581.6", "1.95e-37", "6.07e16"),
    row(20, "2232.3", "8.99e-42", "8.17e14"),
    row(21, "3153.3", "3.72e-55", "2.81e14"),
    row(22, "4453.4", "4.05e-67", "5.79e12"),
    row(23, "6290.4", "2.09e-76", "5.16e12"),
    row(24, "8886.0", "1.96e-83", "6.55e12"),
    row(25, "12553.9", "2.40e-101", "4.60e14"),
    row(26, "17737.2", "2.32e-117", "4.77e8"),
    row(27, "25062.5", "4.06e-130", "11748.74"),
    row(28, "35415.3", "3.93e-140", "0.24"),
    row(29, "50047.4", "7.49e-163", "3.33e-4"),
];

pub fn reference_row(n: u32) -> Option<&'static ReferenceRow> {
    REFERENCE_TABLE.iter().find(|r| r.n == n)
}

/// Parses `"12.5"` or `"2.40e-101"` exactly.
pub fn parse_reference(text: &str, ctx: &EvalContext) -> BoundedReal {
    let (mant, exp) = match text.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().expect("reference exponent")),
        None => (text, 0),
    };
    let m = BoundedReal::from_decimal_str(mant, ctx.prec()).expect("reference mantissa");
    m * ctx.int(10).powi(exp)
}

/// Digits printed after the decimal point.
pub fn decimals(text: &str) -> u32 {
    let mant = text.split('e').next().unwrap_or(text);
    mant.split_once('.')
        .map(|(_, f)| f.len() as u32)
        .unwrap_or(0)
}

/// Whether `value` is within one unit of the last printed digit of `text`,
/// decided with certainty. `None` when the ball straddles the threshold.
pub fn matches_to_printed_digits(
    value: &BoundedReal,
    text: &str,
    ctx: &EvalContext,
) -> Option<bool> {
    let unit = ctx.int(10).powi(-(decimals(text) as i64));
    let diff = (value - &parse_reference(text, ctx)).abs();
    if diff.definitely_less(&unit) {
        Some(true)
    } else if diff.definitely_greater(&unit) {
        Some(false)
    } else {
        None
    }
}

/// Relative error `|value/ref - 1|`.
pub fn relative_error(value: &BoundedReal, text: &str, ctx: &EvalContext) -> BoundedReal {
    (value / &parse_reference(text, ctx) - ctx.int(1)).abs()
}
