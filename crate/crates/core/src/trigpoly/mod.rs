//! Trigonometric polynomials with positive frequencies: representation,
//! conjugation, norms, and certified extrema.
//!
//! An analytic polynomial `P(x) = sum_k a_k e^(i n_k x)` with distinct
//! frequencies `0 < n_1 < ... < n_N` splits into real and imaginary parts
//! `P = f + i f~`, where `f~` is the conjugate function of `f`. Everything
//! downstream (sharp-constant checks, sharpness sweeps) works with certified
//! enclosures of `min f` and `sup |f~|` produced here.

mod certify;

pub use certify::{
    certified_min, certified_sup_abs, certified_sup_modulus, default_grid, grid_eval, grid_values,
    lp_power_mean, CertifiedExtremum, ExtremumKind,
};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One term `a e^(i n x)` of an analytic polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigTerm {
    pub frequency: u32,
    pub coeff: Complex64,
}

/// Analytic trigonometric polynomial with strictly increasing positive
/// integer frequencies and no constant term.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    terms: Vec<TrigTerm>,
}

impl TrigPoly {
    /// Build from `(frequency, coefficient)` pairs. Frequencies must be
    /// distinct, at least 1, and strictly ascending.
    pub fn new(terms: Vec<(u32, Complex64)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        let mut prev = 0u32;
        for (index, &(n, _)) in terms.iter().enumerate() {
            if n < 1 {
                return Err(Error::InvalidTerm {
                    index,
                    reason: format!("frequency {n} must be at least 1 (no constant term)"),
                });
            }
            if n <= prev {
                return Err(Error::InvalidTerm {
                    index,
                    reason: format!(
                        "frequency {n} must strictly exceed the previous frequency {prev}"
                    ),
                });
            }
            prev = n;
        }
        Ok(Self {
            terms: terms
                .into_iter()
                .map(|(frequency, coeff)| TrigTerm { frequency, coeff })
                .collect(),
        })
    }

    pub fn terms(&self) -> &[TrigTerm] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn max_frequency(&self) -> u32 {
        self.terms.last().expect("nonempty").frequency
    }

    /// Direct evaluation `P(x) = sum a_k e^(i n_k x)`.
    pub fn eval(&self, x: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            let phase = t.frequency as f64 * x;
            acc += t.coeff * Complex64::new(phase.cos(), phase.sin());
        }
        acc
    }

    /// `f = Re P` as a real trigonometric polynomial (mean zero).
    pub fn real_part(&self) -> RealTrig {
        let terms = self
            .terms
            .iter()
            .map(|t| RealTrigTerm {
                frequency: t.frequency,
                cos_coeff: t.coeff.re,
                sin_coeff: -t.coeff.im,
            })
            .collect();
        RealTrig { terms, mean: 0.0 }
    }

    /// `f~ = Im P`, the conjugate of `Re P` (mean zero).
    pub fn imag_part(&self) -> RealTrig {
        let terms = self
            .terms
            .iter()
            .map(|t| RealTrigTerm {
                frequency: t.frequency,
                cos_coeff: t.coeff.im,
                sin_coeff: t.coeff.re,
            })
            .collect();
        RealTrig { terms, mean: 0.0 }
    }

    /// Exact squared L2 norm of `Im P`: since the frequencies are distinct,
    /// `int |Im P|^2 dm = (1/2) sum |a_k|^2`.
    pub fn parseval_l2(&self) -> f64 {
        0.5 * self.terms.iter().map(|t| t.coeff.norm_sqr()).sum::<f64>()
    }

    /// Coefficient rotation `a_k -> a_k e^(i n_k tau)`, i.e. translation
    /// `x -> x + tau`.
    pub fn translate(&self, tau: f64) -> TrigPoly {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let phase = t.frequency as f64 * tau;
                TrigTerm {
                    frequency: t.frequency,
                    coeff: t.coeff * Complex64::new(phase.cos(), phase.sin()),
                }
            })
            .collect();
        TrigPoly { terms }
    }

    /// Scale every coefficient by `c`.
    pub fn scale(&self, c: f64) -> TrigPoly {
        let terms = self
            .terms
            .iter()
            .map(|t| TrigTerm {
                frequency: t.frequency,
                coeff: t.coeff * c,
            })
            .collect();
        TrigPoly { terms }
    }

    /// Parse the interchange JSON `{"terms":[{"n":..,"re":..,"im":..},..]}`.
    pub fn from_json(s: &str) -> Result<Self> {
        let record: PolyRecord = serde_json::from_str(s)?;
        let mut terms = Vec::with_capacity(record.terms.len());
        for (index, t) in record.terms.iter().enumerate() {
            if t.n < 1 {
                return Err(Error::InvalidTerm {
                    index,
                    reason: format!("frequency {} must be at least 1", t.n),
                });
            }
            if t.n > u32::MAX as i64 {
                return Err(Error::InvalidTerm {
                    index,
                    reason: format!("frequency {} is out of range", t.n),
                });
            }
            if !t.re.is_finite() || !t.im.is_finite() {
                return Err(Error::InvalidTerm {
                    index,
                    reason: "coefficient must be finite".to_string(),
                });
            }
            terms.push((t.n as u32, Complex64::new(t.re, t.im)));
        }
        Self::new(terms)
    }

    /// Emit the interchange JSON with lossless float formatting.
    pub fn to_json(&self) -> String {
        let body: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                format!(
                    r#"{{"n":{},"re":{},"im":{}}}"#,
                    t.frequency,
                    crate::report::float17(t.coeff.re),
                    crate::report::float17(t.coeff.im)
                )
            })
            .collect();
        format!(r#"{{"terms":[{}]}}"#, body.join(","))
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    n: i64,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct PolyRecord {
    terms: Vec<TermRecord>,
}

/// One term `c cos(n x) + s sin(n x)` of a real trigonometric polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealTrigTerm {
    pub frequency: u32,
    pub cos_coeff: f64,
    pub sin_coeff: f64,
}

/// Real trigonometric polynomial `mean + sum_k (c_k cos(n_k x) + s_k sin(n_k x))`
/// with distinct ascending frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct RealTrig {
    terms: Vec<RealTrigTerm>,
    mean: f64,
}

impl RealTrig {
    pub fn new(terms: Vec<(u32, f64, f64)>, mean: f64) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        let mut prev = 0u32;
        for (index, &(n, c, s)) in terms.iter().enumerate() {
            if n < 1 {
                return Err(Error::InvalidTerm {
                    index,
                    reason: format!("frequency {n} must be at least 1"),
                });
            }
            if n <= prev {
                return Err(Error::InvalidTerm {
                    index,
                    reason: format!(
                        "frequency {n} must strictly exceed the previous frequency {prev}"
                    ),
                });
            }
            if !c.is_finite() || !s.is_finite() {
                return Err(Error::InvalidTerm {
                    index,
                    reason: "coefficient must be finite".to_string(),
                });
            }
            prev = n;
        }
        Ok(Self {
            terms: terms
                .into_iter()
                .map(|(frequency, cos_coeff, sin_coeff)| RealTrigTerm {
                    frequency,
                    cos_coeff,
                    sin_coeff,
                })
                .collect(),
            mean,
        })
    }

    pub fn terms(&self) -> &[RealTrigTerm] {
        &self.terms
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn max_frequency(&self) -> u32 {
        self.terms.last().expect("nonempty").frequency
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = self.mean;
        for t in &self.terms {
            let phase = t.frequency as f64 * x;
            acc += t.cos_coeff * phase.cos() + t.sin_coeff * phase.sin();
        }
        acc
    }

    /// Termwise derivative: `c cos(nx) + s sin(nx)` becomes
    /// `s n cos(nx) - c n sin(nx)`.
    pub fn derivative(&self) -> RealTrig {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let n = t.frequency as f64;
                RealTrigTerm {
                    frequency: t.frequency,
                    cos_coeff: t.sin_coeff * n,
                    sin_coeff: -t.cos_coeff * n,
                }
            })
            .collect();
        RealTrig { terms, mean: 0.0 }
    }

    pub fn scale(&self, c: f64) -> RealTrig {
        let terms = self
            .terms
            .iter()
            .map(|t| RealTrigTerm {
                frequency: t.frequency,
                cos_coeff: t.cos_coeff * c,
                sin_coeff: t.sin_coeff * c,
            })
            .collect();
        RealTrig {
            terms,
            mean: self.mean * c,
        }
    }
}

/// Conjugate function of a mean-zero real trigonometric polynomial:
/// `cos(nx) -> sin(nx)` and `sin(nx) -> -cos(nx)` termwise, so that
/// `f + i f~` is the analytic polynomial with the same spectrum.
pub fn conjugate(f: &RealTrig) -> Result<RealTrig> {
    if f.mean != 0.0 {
        return Err(Error::NonzeroMean { mean: f.mean });
    }
    let terms = f
        .terms
        .iter()
        .map(|t| RealTrigTerm {
            frequency: t.frequency,
            cos_coeff: -t.sin_coeff,
            sin_coeff: t.cos_coeff,
        })
        .collect();
    Ok(RealTrig { terms, mean: 0.0 })
}

/// Coefficient-sum bound on the derivative sup norm:
/// `sum n_k (|c_k| + |s_k|) >= ||f'||_inf`. This is the certificate behind
/// every grid enclosure.
pub fn lipschitz_bound(f: &RealTrig) -> f64 {
    f.terms
        .iter()
        .map(|t| t.frequency as f64 * (t.cos_coeff.abs() + t.sin_coeff.abs()))
        .sum()
}
