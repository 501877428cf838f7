//! Verification harness for the sharp minimum inequalities.
//!
//! For `P = f + i f~` with `M = -min f`, the target inequality is
//!
//! ```text
//! M >= ||f~||_p^p / (A_p ||f~||_inf^(p-1)),
//! ```
//!
//! checked with every quantity taken on its conservative side: a certain
//! lower bound for M, a certain upper bound for the sup norm, and the p-mean
//! lowered by its quadrature error margin, so `holds = true` is a certified
//! verdict up to the stated tolerances. A false verdict writes the offending
//! polynomial and grid data to a reproduction file: the inequality is a
//! theorem, so false means an implementation bug to localize.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::constants::{self, ConstantResult};
use crate::error::{Error, Result};
use crate::trigpoly::{certified_min, certified_sup_abs, lp_power_mean, RealTrig, TrigPoly};

/// Absolute tolerance absorbed into the verdict to keep rounding from
/// flipping certified comparisons.
pub const VERDICT_TOLERANCE: f64 = 1e-9;

/// All quantities of one inequality check, on their conservative sides.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InequalityReport {
    pub p: f64,
    /// Certified lower bound for `M = -min f` (the grid minimum is an upper
    /// bound for the true minimum, so its negation bounds M from below).
    pub m_lower: f64,
    /// Certified upper bound for `||f~||_inf`.
    pub sup_conj_upper: f64,
    /// Trapezoid value of `int |f~|^p dm` (exact Parseval value when the
    /// report came from the p = 2 orthogonality route).
    pub pmean_conj: f64,
    /// Quadrature error margin subtracted before forming the right side.
    pub pmean_error: f64,
    pub a_p: f64,
    /// `pmean_lower / (A_p_upper * sup_conj_upper^(p-1))`.
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
    /// `(1/2) sum |a_k|^2`, recorded for p = 2 only.
    pub parseval_half_sum: Option<f64>,
}

/// Trapezoid p-mean with a Richardson error margin from comparing against
/// the half-size grid.
fn pmean_with_margin(f: &RealTrig, p: f64, k: usize) -> Result<(f64, f64)> {
    let pmean = lp_power_mean(f, p, k)?;
    let floor = 1e-13 * pmean.abs();
    let margin = if k / 2 > f.max_frequency() as usize {
        let coarse = lp_power_mean(f, p, k / 2)?;
        4.0 * (pmean - coarse).abs() + floor
    } else {
        floor
    };
    Ok((pmean, margin))
}

fn assemble_report(
    p: f64,
    m_lower: f64,
    sup_conj_upper: f64,
    pmean: f64,
    pmean_error: f64,
    ap: ConstantResult,
    parseval_half_sum: Option<f64>,
) -> InequalityReport {
    let ap_upper = ap.value + ap.abs_error_estimate;
    let pmean_lower = (pmean - pmean_error).max(0.0);
    let rhs = if sup_conj_upper > 0.0 {
        pmean_lower / (ap_upper * sup_conj_upper.powf(p - 1.0))
    } else {
        0.0
    };
    InequalityReport {
        p,
        m_lower,
        sup_conj_upper,
        pmean_conj: pmean,
        pmean_error,
        a_p: ap.value,
        rhs,
        slack: m_lower - rhs,
        holds: m_lower + VERDICT_TOLERANCE >= rhs,
        parseval_half_sum,
    }
}

/// Check `M >= ||f~||_p^p / (A_p ||f~||_inf^(p-1))` for `P = f + i f~`.
pub fn check_minimum_inequality(poly: &TrigPoly, p: f64, k: usize) -> Result<InequalityReport> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::ExponentOutOfRange { p });
    }
    let f = poly.real_part();
    let conj = poly.imag_part();
    let cm = certified_min(&f, k)?;
    let cs = certified_sup_abs(&conj, k)?;
    let (pmean, margin) = pmean_with_margin(&conj, p, k)?;
    let ap = constants::sharp_constant_ap(p)?;
    let parseval = (p == 2.0).then(|| poly.parseval_l2());
    Ok(assemble_report(
        p,
        -cm.grid_value,
        cs.upper(),
        pmean,
        margin,
        ap,
        parseval,
    ))
}

/// The p = 2 instance with the exact Parseval value
/// `||f~||_2^2 = (1/2) sum |a_k|^2` in place of the quadrature p-mean, so
/// the right side is `parseval_half_sum / (A_2 ||f~||_inf)`.
pub fn check_parseval_route(poly: &TrigPoly, k: usize) -> Result<InequalityReport> {
    let f = poly.real_part();
    let conj = poly.imag_part();
    let cm = certified_min(&f, k)?;
    let cs = certified_sup_abs(&conj, k)?;
    let half_sum = poly.parseval_l2();
    let ap = constants::sharp_constant_ap(2.0)?;
    Ok(assemble_report(
        2.0,
        -cm.grid_value,
        cs.upper(),
        half_sum,
        0.0,
        ap,
        Some(half_sum),
    ))
}

/// Check the underlying estimate as stated: for `v` bounded with mean zero
/// and `u >= 0` with mean `u_mean`, verify
/// `int |v|^p dm <= A_p B^(p-1) u_mean`.
///
/// `b = None` takes B as the certified upper bound for `sup |v|` (the
/// tightest admissible hypothesis); an explicit B must dominate the
/// certified lower bound for that sup, and larger B only relaxes the claim.
pub fn theorem_direct(u_mean: f64, v: &RealTrig, p: f64, b: Option<f64>, k: usize) -> Result<bool> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::ExponentOutOfRange { p });
    }
    if v.mean() != 0.0 {
        return Err(Error::NonzeroMean { mean: v.mean() });
    }
    if u_mean < 0.0 {
        return Err(Error::NegativeMean { u_mean });
    }
    let cs = certified_sup_abs(v, k)?;
    let b = b.unwrap_or_else(|| cs.upper());
    if b < cs.lower() {
        return Err(Error::SupBoundViolated {
            b,
            sup_lower: cs.lower(),
        });
    }
    let (pmean, margin) = pmean_with_margin(v, p, k)?;
    if u_mean == 0.0 {
        // u >= 0 with zero mean forces u = 0, hence v constant, hence v = 0
        if pmean <= margin + VERDICT_TOLERANCE {
            return Ok(true);
        }
        return Err(Error::DegenerateHypothesis {
            u_mean,
            pmean,
            margin,
        });
    }
    let ap = constants::sharp_constant_ap(p)?;
    let ap_lower = ap.value - ap.abs_error_estimate;
    let lhs_upper = pmean + margin;
    Ok(lhs_upper <= ap_lower * b.powf(p - 1.0) * u_mean + VERDICT_TOLERANCE)
}

/// Write a failure reproduction file: the polynomial, the grid size, and the
/// full report, in the interchange JSON formats.
pub fn write_reproduction(
    path: &Path,
    poly: &TrigPoly,
    report: &InequalityReport,
    k: usize,
) -> Result<()> {
    let body = format!(
        r#"{{"grid":{},"poly":{},"report":{}}}"#,
        k,
        poly.to_json(),
        crate::report::report_json(report)
    );
    std::fs::write(path, body)?;
    Ok(())
}
