//! Sharp conjugate-function inequalities for trigonometric polynomials.
//!
//! For an analytic polynomial `P = f + i f~` with positive frequencies, the
//! negative minimum `M = -min f` controls the conjugate function through
//!
//! ```text
//! M >= ||f~||_p^p / (A_p ||f~||_inf^(p-1)),
//! A_p = p int_0^1 t^(p-1) / sin(pi t / 2) dt,
//! ```
//!
//! with `A_2 = 16 G / pi^2` (G Catalan's constant), and the constant is
//! optimal: the half-strip majorant diagonal satisfies `g_p(x)/x -> A_p`.
//! This crate computes all of these quantities with certified error bounds
//! and checks the inequalities on polynomial families at desk scale:
//!
//! - [`trigpoly`]: polynomials, conjugation, FFT grid evaluation, and
//!   Lipschitz-certified enclosures of minima and sup norms;
//! - [`constants`]: `A_p` by singularity-split tanh-sinh quadrature and
//!   Catalan's constant by accelerated alternating series;
//! - [`halfstrip`]: the eigenfunction series for the majorant `U_p`, its
//!   diagonal, the kernel in series and closed form, and the sharpness
//!   ratios `g_p(x)/x`;
//! - [`inequality`]: conservative-side verification reports;
//! - [`families`]: flat sign polynomials, cosine-sum sets, random
//!   ensembles, and the order-sharpness sweep;
//! - [`report`] and [`cli`]: byte-stable JSON/CSV emission and the
//!   command-line interface.
//!
//! Grid reductions and table construction are data-parallel under the
//! default `parallel` feature (rayon) with fixed chunking, so results are
//! identical with or without it.
//!
//! ```
//! use conjugate_sharp::TrigPoly;
//! use num_complex::Complex64;
//!
//! // P = e^{ix}: f = cos x with M = 1, and the conjugate sin x
//! let p = TrigPoly::new(vec![(1, Complex64::new(1.0, 0.0))]).unwrap();
//! let report = conjugate_sharp::inequality::check_minimum_inequality(&p, 2.0, 4096).unwrap();
//! assert!(report.holds);
//! assert!((report.m_lower - 1.0).abs() < 1e-12);
//! ```

// Domain guards are written `!(p > 1.0)` on purpose: the negation is true
// for NaN, so non-finite inputs fall into the rejection branch. Reference
// constants in tests keep their full published digits.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::excessive_precision)]

pub mod cli;
pub mod constants;
pub mod error;
pub mod families;
pub mod halfstrip;
pub mod inequality;
mod parallel;
mod quad;
pub mod report;
pub mod trigpoly;

pub use error::{Error, Result};
pub use trigpoly::{RealTrig, TrigPoly};
