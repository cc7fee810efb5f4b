use serde::Serialize;

use crate::numerics::{BoundedReal, DeltaMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionRow {
    pub n: u32,
    #[serde(rename = "M")]
    pub m: BoundedReal,
    #[serde(rename = "R_c")]
    pub r_c: BoundedReal,
    #[serde(rename = "R_nc")]
    pub r_nc: BoundedReal,
    pub feasible_c: bool,
    pub feasible_nc: bool,
    /// Both comparisons with 1 were definite.
    pub decided: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionReport {
    pub precision: u32,
    pub delta_mode: DeltaMode,
    pub rows: Vec<DimensionRow>,
}

/// Two decimals in `[0.01, 10^8)`, otherwise three significant digits in
/// scientific notation.
pub fn display_value(x: &BoundedReal) -> String {
    let a = x.mid().log10_abs_approx();
    if (-2.0..8.0).contains(&a) {
        x.mid_fixed(2)
    } else {
        x.mid_sci(3)
    }
}

impl DimensionReport {
    pub fn all_decided(&self) -> bool {
        self.rows.iter().all(|r| r.decided)
    }

    pub fn row(&self, n: u32) -> Option<&DimensionRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{:>3}  {:>10}  {:>14}  {:>14}  {:>3}  {:>3}\n",
            "n", "M(n)", "R_c(n)", "R_nc(n)", "c", "nc"
        );
        for r in &self.rows {
            let flag = |b: bool| if b { "yes" } else { "no" };
            out.push_str(&format!(
                "{:>3}  {:>10}  {:>14}  {:>14}  {:>3}  {:>3}\n",
                r.n,
                r.m.mid_fixed(2),
                display_value(&r.r_c),
                display_value(&r.r_nc),
                flag(r.feasible_c),
                flag(r.feasible_nc)
            ));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,M,Rc,Rnc,feasible_c,feasible_nc\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.n,
                r.m.mid_fixed(2),
                display_value(&r.r_c),
                display_value(&r.r_nc),
                r.feasible_c,
                r.feasible_nc
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.to_text(),
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json() + "\n",
        }
    }
}
