//! Report emission: JSON lines and sweep CSV with lossless float text.
//!
//! Floats are printed with 17 significant digits, enough to round-trip any
//! double exactly, and field order is fixed, so identical inputs produce
//! byte-identical files.

use crate::families::SharpnessRow;
use crate::inequality::InequalityReport;

/// Render a double with 17 significant digits (scientific form).
pub fn float17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Fixed header of the sharpness sweep CSV.
pub const SWEEP_CSV_HEADER: &str =
    "N,M_lower,M_upper,sup_lower,sup_upper,product_upper,ratio_upper,ratio_lower";

/// One inequality report as a single JSON line with stable field order.
pub fn report_json(r: &InequalityReport) -> String {
    let parseval = match r.parseval_half_sum {
        Some(v) => float17(v),
        None => "null".to_string(),
    };
    format!(
        r#"{{"p":{},"m_lower":{},"sup_conj_upper":{},"pmean_conj":{},"pmean_error":{},"a_p":{},"rhs":{},"slack":{},"holds":{},"parseval_half_sum":{}}}"#,
        float17(r.p),
        float17(r.m_lower),
        float17(r.sup_conj_upper),
        float17(r.pmean_conj),
        float17(r.pmean_error),
        float17(r.a_p),
        float17(r.rhs),
        float17(r.slack),
        r.holds,
        parseval,
    )
}

/// Parse a report emitted by `report_json`.
pub fn parse_report(s: &str) -> crate::error::Result<InequalityReport> {
    Ok(serde_json::from_str(s)?)
}

/// Sweep rows as CSV, header always present.
pub fn sweep_csv(rows: &[SharpnessRow]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.n,
            float17(r.m_lower),
            float17(r.m_upper),
            float17(r.sup_lower),
            float17(r.sup_upper),
            float17(r.product_upper),
            float17(r.ratio_upper),
            float17(r.ratio_lower),
        ));
    }
    out
}
