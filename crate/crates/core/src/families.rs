//! Polynomial families for sharpness and stress testing: flat sign
//! polynomials, equal-coefficient cosine sums over frequency sets, and
//! seeded random ensembles; plus the order-sharpness sweep.
//!
//! The flat family uses the classical sign sequence `eps_n = (-1)^(r(n))`
//! where `r(n)` counts occurrences of the bit pattern "11" in the binary
//! expansion of n. Partial sums `P_N = sum_(n=1)^N eps_n e^(inx)` stay
//! within a constant times sqrt(N) in sup norm, which makes the product
//! `M_N * ||f~_N||_inf` grow linearly in N and matches the lower bound
//! `pi^2/(32 G) * N` from the equal-coefficient inequality: together the
//! two sides pin the optimal order.

use num_complex::Complex64;
use rand::seq::index::sample as index_sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parallel;
use crate::trigpoly::{certified_min, certified_sup_abs, TrigPoly};

/// Which generator a `FamilySpec` names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    RudinShapiro,
    ChowlaSet,
    RandomPhase,
    RandomSign,
}

/// A reproducible family instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub size: u32,
    /// Seed for the random kinds; ignored by the deterministic ones.
    pub seed: u64,
    /// Explicit frequency set for `ChowlaSet`; defaults to `1..=size`.
    pub frequency_set: Option<Vec<u32>>,
    /// Range `[1, cap]` random frequencies are drawn from; defaults to
    /// `16 * size`, which keeps certification grids affordable.
    #[serde(default)]
    pub frequency_cap: Option<u32>,
}

/// The sign sequence `eps_1 .. eps_N`: `eps_n = +1` when the binary
/// expansion of n contains an even number of "11" bit pairs, else -1.
pub fn rudin_shapiro_signs(n: u32) -> Vec<i8> {
    (1..=n as u64)
        .map(|v| {
            let pairs = (v & (v >> 1)).count_ones();
            if pairs % 2 == 0 {
                1
            } else {
                -1
            }
        })
        .collect()
}

/// Partial sum polynomial `P_N = sum_(n=1)^N eps_n e^(inx)` of the flat
/// sign sequence.
pub fn flat_polynomial(n: u32) -> TrigPoly {
    assert!(n >= 1);
    let signs = rudin_shapiro_signs(n);
    TrigPoly::new(
        signs
            .iter()
            .enumerate()
            .map(|(i, &s)| (i as u32 + 1, Complex64::new(s as f64, 0.0)))
            .collect(),
    )
    .expect("flat polynomial terms are valid by construction")
}

/// Equal-coefficient polynomial over an explicit frequency set:
/// `P = sum_(a in A) e^(iax)`, so the real part is the cosine sum over A
/// and the conjugate is the sine sum.
pub fn chowla_family(freqs: &[u32]) -> Result<TrigPoly> {
    if freqs.is_empty() {
        return Err(Error::InvalidFamily {
            reason: "frequency set is empty".to_string(),
        });
    }
    TrigPoly::new(
        freqs
            .iter()
            .map(|&a| (a, Complex64::new(1.0, 0.0)))
            .collect(),
    )
}

/// Seeded random polynomial: `size` distinct frequencies drawn without
/// replacement from `[1, 16 * size]`, with unit-modulus coefficients
/// (random phases) or random signs. The same spec always produces the
/// same polynomial.
pub fn random_family(spec: &FamilySpec) -> Result<TrigPoly> {
    if spec.size < 1 {
        return Err(Error::InvalidFamily {
            reason: "size must be at least 1".to_string(),
        });
    }
    let unit_phase = match spec.kind {
        FamilyKind::RandomPhase => true,
        FamilyKind::RandomSign => false,
        other => {
            return Err(Error::InvalidFamily {
                reason: format!("{other:?} is not a random kind"),
            })
        }
    };
    let cap = spec.frequency_cap.unwrap_or(16 * spec.size) as usize;
    if cap < spec.size as usize {
        return Err(Error::InvalidFamily {
            reason: format!(
                "frequency cap {cap} cannot hold {} distinct frequencies",
                spec.size
            ),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut freqs: Vec<u32> = index_sample(&mut rng, cap, spec.size as usize)
        .iter()
        .map(|i| i as u32 + 1)
        .collect();
    freqs.sort_unstable();
    let terms = freqs
        .into_iter()
        .map(|n| {
            let coeff = if unit_phase {
                let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
                Complex64::new(theta.cos(), theta.sin())
            } else if rng.random::<bool>() {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(-1.0, 0.0)
            };
            (n, coeff)
        })
        .collect();
    TrigPoly::new(terms)
}

/// Dispatch a spec to its generator.
pub fn generate(spec: &FamilySpec) -> Result<TrigPoly> {
    match spec.kind {
        FamilyKind::RudinShapiro => {
            if spec.size < 1 {
                return Err(Error::InvalidFamily {
                    reason: "size must be at least 1".to_string(),
                });
            }
            Ok(flat_polynomial(spec.size))
        }
        FamilyKind::ChowlaSet => match &spec.frequency_set {
            Some(set) => chowla_family(set),
            None => chowla_family(&(1..=spec.size).collect::<Vec<_>>()),
        },
        FamilyKind::RandomPhase | FamilyKind::RandomSign => random_family(spec),
    }
}

/// Largest family size the sweep accepts by default.
pub const DEFAULT_SWEEP_CAP: u32 = 1 << 14;

/// One row of the order-sharpness sweep: certified two-sided bounds for
/// `M_N` and `||f~_N||_inf` and the resulting product window.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SharpnessRow {
    pub n: u32,
    pub m_lower: f64,
    pub m_upper: f64,
    pub sup_lower: f64,
    pub sup_upper: f64,
    /// `m_upper * sup_upper`, the conservative side for the `<= 25 N` bound.
    pub product_upper: f64,
    pub ratio_upper: f64,
    /// `m_lower * sup_lower / N`, the certain side for the linear lower bound.
    pub ratio_lower: f64,
}

/// Sweep the flat family over the given sizes (powers of two up to `cap`),
/// certifying each row on the grid `K = 16 N`.
pub fn sharpness_sweep(n_list: &[u32], cap: u32) -> Result<Vec<SharpnessRow>> {
    for &n in n_list {
        if n > cap {
            return Err(Error::SweepCapExceeded { n, cap });
        }
        if n == 0 || !n.is_power_of_two() {
            return Err(Error::SweepSizeNotPowerOfTwo { n });
        }
    }
    let rows = parallel::map_chunks(n_list.len(), |i| sharpness_row(n_list[i]));
    rows.into_iter().collect()
}

fn sharpness_row(n: u32) -> Result<SharpnessRow> {
    let poly = flat_polynomial(n);
    let k = 16 * n as usize;
    let cm = certified_min(&poly.real_part(), k)?;
    let cs = certified_sup_abs(&poly.imag_part(), k)?;
    let m_lower = -cm.grid_value;
    let m_upper = -cm.grid_value + cm.tight_radius;
    let sup_lower = cs.grid_value;
    let sup_upper = cs.upper();
    let product_upper = m_upper * sup_upper;
    Ok(SharpnessRow {
        n,
        m_lower,
        m_upper,
        sup_lower,
        sup_upper,
        product_upper,
        ratio_upper: product_upper / n as f64,
        ratio_lower: m_lower * sup_lower / n as f64,
    })
}
