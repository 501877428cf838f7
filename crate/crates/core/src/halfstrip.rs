//! Half-strip harmonic majorant: eigenvalues, eigencoefficients, the series
//! for W_p and U_p, the diagonal g_p and its derivative, and the kernel K_x
//! in series and closed form.
//!
//! U_p is the bounded harmonic function on the half-strip
//! `{(x, y) : x > 0, |y| < 1}` with boundary values `|y|^p` on the segment
//! and 1 on the rays. Writing `W_p = 1 - U_p` and expanding the datum
//! `1 - |y|^p` in the even eigenfunctions `cos(lambda_j y)` with
//! `lambda_j = (j + 1/2) pi` gives
//!
//! ```text
//! W_p(x, y) = sum_j c_j e^(-lambda_j x) cos(lambda_j y),
//! c_j = 2 int_0^1 (1 - y^p) cos(lambda_j y) dy,
//! ```
//!
//! and termwise differentiation of the diagonal `g_p(x) = U_p(x, 0)` uses
//! `c_j lambda_j = 2p int_0^1 y^(p-1) sin(lambda_j y) dy`, which is bounded
//! by 2 in absolute value. Every truncated evaluation carries the geometric
//! tail bound derived from that coefficient bound.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::parallel;
use crate::quad;

/// Dirichlet eigenvalue `lambda_j = (j + 1/2) pi` of the even spectrum on
/// `(-1, 1)`, characterized by `cos(lambda_j) = 0`.
pub fn lambda(j: usize) -> f64 {
    (j as f64 + 0.5) * PI
}

/// Default series truncation for target point `x`: `max(50, ceil(12 / x))`,
/// which drives `e^(-lambda_J x)` below 1e-16 over the working range.
/// Capped at 200_000 to keep table construction affordable; the tail bound
/// reported with every evaluation stays honest regardless.
pub fn default_truncation(x: f64) -> usize {
    assert!(x > 0.0, "truncation heuristic needs x > 0");
    ((12.0 / x).ceil() as usize).clamp(50, 200_000)
}

/// Smallest truncation whose W/U/g tail bound at `x` is at most `eps`
/// (capped like `default_truncation`).
pub fn truncation_for_tail(x: f64, eps: f64) -> usize {
    assert!(x > 0.0 && eps > 0.0);
    let denom = 1.0 - (-PI * x).exp();
    let bound = |j: usize| {
        let lam = lambda(j + 1);
        2.0 / lam * (-lam * x).exp() / denom
    };
    let mut hi = 50usize;
    while bound(hi) > eps && hi < 200_000 {
        hi *= 2;
    }
    let mut lo = 0usize;
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        if bound(mid) <= eps {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi.clamp(50, 200_000)
}

/// A point of the closed half-strip.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripPoint {
    pub x: f64,
    pub y: f64,
}

impl StripPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(x >= 0.0) || !(-1.0..=1.0).contains(&y) {
            return Err(Error::OutsideStrip { x, y });
        }
        Ok(Self { x, y })
    }

    pub fn is_interior(&self) -> bool {
        self.x > 0.0 && self.y.abs() < 1.0
    }
}

/// Boundary datum of the majorant on the vertical segment: `|y|^p`.
pub fn boundary_datum(p: f64, y: f64) -> f64 {
    y.abs().powf(p)
}

/// A truncated series value together with a rigorous bound on the
/// discarded tail.
#[derive(Debug, Clone, Copy)]
pub struct Bounded {
    pub value: f64,
    pub tail_bound: f64,
}

fn check_p(p: f64) -> Result<()> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::ExponentOutOfRange { p });
    }
    Ok(())
}

fn check_x_positive(x: f64) -> Result<()> {
    if !(x > 0.0) {
        return Err(Error::NonpositiveX { x });
    }
    Ok(())
}

/// Eigencoefficient `c_j = 2 int_0^1 (1 - y^p) cos(lambda_j y) dy` by
/// oscillation-resolving panel quadrature (at least 8 nodes per period,
/// dyadically refined toward 0 for fractional p).
pub fn coeff_c(p: f64, j: usize) -> Result<f64> {
    check_p(p)?;
    let lam = lambda(j);
    let (nodes, weights) = quad::gl16();
    let mut sum = 0.0;
    for &(a, b) in &quad::graded_oscillatory_mesh(j) {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        for (&xi, &wi) in nodes.iter().zip(weights) {
            let y = mid + half * xi;
            sum += half * wi * (1.0 - y.powf(p)) * (lam * y).cos();
        }
    }
    Ok(2.0 * sum)
}

/// `c_j lambda_j` from the integrated-by-parts form
/// `2p int_0^1 y^(p-1) sin(lambda_j y) dy`; bounded by 2 in absolute value.
pub fn coeff_c_lambda(p: f64, j: usize) -> Result<f64> {
    check_p(p)?;
    let lam = lambda(j);
    let (nodes, weights) = quad::gl16();
    let mut sum = 0.0;
    for &(a, b) in &quad::graded_oscillatory_mesh(j) {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        for (&xi, &wi) in nodes.iter().zip(weights) {
            let y = mid + half * xi;
            sum += half * wi * y.powf(p - 1.0) * (lam * y).sin();
        }
    }
    Ok(2.0 * p * sum)
}

/// Truncated eigenfunction expansion of `W_p = 1 - U_p` with both
/// coefficient families tabulated once per `(p, J)`.
///
/// The table is immutable after construction and safe to share across
/// threads. Construction integrates all coefficients in a single pass over
/// a shared graded mesh, advancing `cos/sin(lambda_j y)` per node by phase
/// rotation (refreshed periodically against drift); the per-j quadratures
/// `coeff_c`/`coeff_c_lambda` provide an independent route for testing.
#[derive(Debug, Clone)]
pub struct MajorantSeries {
    p: f64,
    coeffs: Vec<f64>,
    coeffs_lambda: Vec<f64>,
}

const ROTATION_REFRESH: usize = 256;
const NODE_CHUNK: usize = 2048;

impl MajorantSeries {
    pub fn build(p: f64, j_max: usize) -> Result<Self> {
        check_p(p)?;
        let (gl_nodes, gl_weights) = quad::gl16();
        let mesh = quad::graded_oscillatory_mesh(j_max);

        // node positions and weighted integrand factors, shared by all j
        let mut coefs = Vec::with_capacity(mesh.len() * gl_nodes.len());
        for &(a, b) in &mesh {
            let mid = 0.5 * (a + b);
            let half = 0.5 * (b - a);
            for (&xi, &wi) in gl_nodes.iter().zip(gl_weights) {
                let yi = mid + half * xi;
                let w = half * wi;
                coefs.push(NodeCoef {
                    y: yi,
                    wfc: 2.0 * w * (1.0 - yi.powf(p)),
                    wfs: 2.0 * p * w * yi.powf(p - 1.0),
                    rot_c: (PI * yi).cos(),
                    rot_s: (PI * yi).sin(),
                });
            }
        }

        let n_nodes = coefs.len();
        let n_chunks = n_nodes.div_ceil(NODE_CHUNK).max(1);
        let partials = parallel::map_chunks(n_chunks, |ci| {
            let lo = ci * NODE_CHUNK;
            let hi = (lo + NODE_CHUNK).min(n_nodes);
            accumulate_chunk(j_max, &coefs[lo..hi])
        });

        let mut coeffs = vec![0.0; j_max + 1];
        let mut coeffs_lambda = vec![0.0; j_max + 1];
        for (pc, ps) in &partials {
            for j in 0..=j_max {
                coeffs[j] += pc[j];
                coeffs_lambda[j] += ps[j];
            }
        }
        Ok(Self {
            p,
            coeffs,
            coeffs_lambda,
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Truncation index J: coefficients 0..=J are tabulated.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, j: usize) -> f64 {
        self.coeffs[j]
    }

    pub fn coeff_lambda(&self, j: usize) -> f64 {
        self.coeffs_lambda[j]
    }

    /// Tail bound for the W/U/g series at `x > 0`:
    /// `(2 / lambda_(J+1)) e^(-lambda_(J+1) x) / (1 - e^(-pi x))`,
    /// from `|c_j| <= 2 / lambda_j` and the geometric decay of the weights.
    pub fn tail_bound(&self, x: f64) -> f64 {
        let lam_next = lambda(self.truncation() + 1);
        2.0 / lam_next * (-lam_next * x).exp() / (1.0 - (-PI * x).exp())
    }

    /// Tail bound for the g' series: `2 e^(-lambda_(J+1) x) / (1 - e^(-pi x))`.
    pub fn tail_bound_prime(&self, x: f64) -> f64 {
        let lam_next = lambda(self.truncation() + 1);
        2.0 * (-lam_next * x).exp() / (1.0 - (-PI * x).exp())
    }

    /// `W_p(x, y)`, truncated; every summand vanishes at y = +-1 exactly,
    /// tail included, so the rays return literal zero.
    pub fn w(&self, x: f64, y: f64) -> Result<Bounded> {
        check_x_positive(x)?;
        if !(-1.0..=1.0).contains(&y) {
            return Err(Error::OutsideStrip { x, y });
        }
        if y.abs() == 1.0 {
            return Ok(Bounded {
                value: 0.0,
                tail_bound: 0.0,
            });
        }
        let decay = (-PI * x).exp();
        let mut weight = (-lambda(0) * x).exp();
        let mut cs = (0.5 * PI * y).cos();
        let mut sn = (0.5 * PI * y).sin();
        let (rc, rs) = ((PI * y).cos(), (PI * y).sin());
        let mut sum = 0.0;
        for (j, &c) in self.coeffs.iter().enumerate() {
            sum += c * weight * cs;
            weight *= decay;
            if weight == 0.0 {
                break;
            }
            if (j + 1).is_multiple_of(ROTATION_REFRESH) {
                let phase = lambda(j + 1) * y;
                cs = phase.cos();
                sn = phase.sin();
            } else {
                let c_next = cs * rc - sn * rs;
                let s_next = sn * rc + cs * rs;
                cs = c_next;
                sn = s_next;
            }
        }
        Ok(Bounded {
            value: sum,
            tail_bound: self.tail_bound(x),
        })
    }

    /// `U_p(x, y) = 1 - W_p(x, y)`; equals 1 on the rays y = +-1.
    pub fn u(&self, x: f64, y: f64) -> Result<Bounded> {
        let w = self.w(x, y)?;
        Ok(Bounded {
            value: 1.0 - w.value,
            tail_bound: w.tail_bound,
        })
    }

    /// Diagonal `g_p(x) = U_p(x, 0)`, with the limit convention
    /// `g_p(0) = 0` on the boundary.
    pub fn g(&self, x: f64) -> Result<Bounded> {
        if x == 0.0 {
            return Ok(Bounded {
                value: 0.0,
                tail_bound: 0.0,
            });
        }
        check_x_positive(x)?;
        let decay = (-PI * x).exp();
        let mut weight = (-lambda(0) * x).exp();
        let mut sum = 0.0;
        for &c in &self.coeffs {
            sum += c * weight;
            weight *= decay;
            if weight == 0.0 {
                break;
            }
        }
        Ok(Bounded {
            value: 1.0 - sum,
            tail_bound: self.tail_bound(x),
        })
    }

    /// `g_p'(x) = sum_j c_j lambda_j e^(-lambda_j x)` for x > 0.
    pub fn g_prime(&self, x: f64) -> Result<Bounded> {
        check_x_positive(x)?;
        let decay = (-PI * x).exp();
        let mut weight = (-lambda(0) * x).exp();
        let mut sum = 0.0;
        for &cl in &self.coeffs_lambda {
            sum += cl * weight;
            weight *= decay;
            if weight == 0.0 {
                break;
            }
        }
        Ok(Bounded {
            value: sum,
            tail_bound: self.tail_bound_prime(x),
        })
    }
}

#[derive(Clone, Copy)]
struct NodeCoef {
    y: f64,
    wfc: f64,
    wfs: f64,
    rot_c: f64,
    rot_s: f64,
}

#[derive(Clone, Copy)]
struct NodeState {
    cs: f64,
    sn: f64,
}

/// Per-chunk coefficient accumulation: for every node keep the rotating pair
/// `(sin, cos)(lambda_j y)` and sweep j, so each (node, j) visit costs a few
/// multiplies instead of a sincos. Accumulation and rotation are fused into
/// one pass per j, four independent accumulators break the add latency
/// chain, and the summation order is fixed for determinism.
fn accumulate_chunk(j_max: usize, coefs: &[NodeCoef]) -> (Vec<f64>, Vec<f64>) {
    let mut states: Vec<NodeState> = coefs
        .iter()
        .map(|c| NodeState {
            cs: (0.5 * PI * c.y).cos(),
            sn: (0.5 * PI * c.y).sin(),
        })
        .collect();
    let mut acc_c = vec![0.0; j_max + 1];
    let mut acc_s = vec![0.0; j_max + 1];
    for j in 0..=j_max {
        let (mut a0, mut a1, mut a2, mut a3) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        let (mut b0, mut b1, mut b2, mut b3) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        let mut coef_blocks = coefs.chunks_exact(4);
        let mut state_blocks = states.chunks_exact_mut(4);
        for (c4, s4) in (&mut coef_blocks).zip(&mut state_blocks) {
            a0 += c4[0].wfc * s4[0].cs;
            b0 += c4[0].wfs * s4[0].sn;
            s4[0] = rotate(s4[0], c4[0]);
            a1 += c4[1].wfc * s4[1].cs;
            b1 += c4[1].wfs * s4[1].sn;
            s4[1] = rotate(s4[1], c4[1]);
            a2 += c4[2].wfc * s4[2].cs;
            b2 += c4[2].wfs * s4[2].sn;
            s4[2] = rotate(s4[2], c4[2]);
            a3 += c4[3].wfc * s4[3].cs;
            b3 += c4[3].wfs * s4[3].sn;
            s4[3] = rotate(s4[3], c4[3]);
        }
        for (c, s) in coef_blocks
            .remainder()
            .iter()
            .zip(state_blocks.into_remainder())
        {
            a0 += c.wfc * s.cs;
            b0 += c.wfs * s.sn;
            *s = rotate(*s, *c);
        }
        acc_c[j] = (a0 + a1) + (a2 + a3);
        acc_s[j] = (b0 + b1) + (b2 + b3);

        // periodic refresh against rotation drift
        if (j + 1).is_multiple_of(ROTATION_REFRESH) {
            let lam_next = lambda(j + 1);
            for (c, s) in coefs.iter().zip(states.iter_mut()) {
                let phase = lam_next * c.y;
                s.cs = phase.cos();
                s.sn = phase.sin();
            }
        }
    }
    (acc_c, acc_s)
}

#[inline(always)]
fn rotate(s: NodeState, c: NodeCoef) -> NodeState {
    NodeState {
        cs: s.cs * c.rot_c - s.sn * c.rot_s,
        sn: s.sn * c.rot_c + s.cs * c.rot_s,
    }
}

/// Convenience one-shot evaluations. Each builds a coefficient table; for
/// sweeps over many points build one `MajorantSeries` and reuse it.
pub fn w(p: f64, x: f64, y: f64, j_max: usize) -> Result<Bounded> {
    MajorantSeries::build(p, j_max)?.w(x, y)
}

pub fn u(p: f64, x: f64, y: f64, j_max: usize) -> Result<Bounded> {
    MajorantSeries::build(p, j_max)?.u(x, y)
}

pub fn g(p: f64, x: f64, j_max: usize) -> Result<Bounded> {
    MajorantSeries::build(p, j_max)?.g(x)
}

pub fn g_prime(p: f64, x: f64, j_max: usize) -> Result<Bounded> {
    MajorantSeries::build(p, j_max)?.g_prime(x)
}

/// Closed form of the kernel `K_x(y) = sum_j e^(-lambda_j x) sin(lambda_j y)`:
/// with `r = e^(-pi x)` and `theta = pi y`,
/// `K = r^(1/2) (1 + r) sin(theta/2) / (1 - 2 r cos(theta) + r^2)`.
pub fn kernel_closed(x: f64, y: f64) -> Result<f64> {
    check_x_positive(x)?;
    if !(0.0..=1.0).contains(&y) {
        return Err(Error::OutsideStrip { x, y });
    }
    let r = (-PI * x).exp();
    let theta = PI * y;
    Ok(r.sqrt() * (1.0 + r) * (0.5 * theta).sin() / (1.0 - 2.0 * r * theta.cos() + r * r))
}

/// Truncated kernel series with its geometric tail bound
/// `e^(-lambda_(J+1) x) / (1 - e^(-pi x))`.
pub fn kernel_series(x: f64, y: f64, j_max: usize) -> Result<Bounded> {
    check_x_positive(x)?;
    if !(0.0..=1.0).contains(&y) {
        return Err(Error::OutsideStrip { x, y });
    }
    let decay = (-PI * x).exp();
    let mut weight = (-lambda(0) * x).exp();
    let mut cs = (0.5 * PI * y).cos();
    let mut sn = (0.5 * PI * y).sin();
    let (rc, rs) = ((PI * y).cos(), (PI * y).sin());
    let mut sum = 0.0;
    for j in 0..=j_max {
        sum += weight * sn;
        weight *= decay;
        if weight == 0.0 {
            break;
        }
        if (j + 1).is_multiple_of(ROTATION_REFRESH) {
            let phase = lambda(j + 1) * y;
            cs = phase.cos();
            sn = phase.sin();
        } else {
            let c_next = cs * rc - sn * rs;
            let s_next = sn * rc + cs * rs;
            cs = c_next;
            sn = s_next;
        }
    }
    let lam_next = lambda(j_max + 1);
    Ok(Bounded {
        value: sum,
        tail_bound: (-lam_next * x).exp() / (1.0 - decay),
    })
}

/// Result of checking the elementary kernel bound
/// `K_x(y) <= 1 / (2 sin(pi y / 2))` at one point.
#[derive(Debug, Clone, Copy)]
pub struct KernelBoundCheck {
    /// `1/(2 sin(pi y/2)) - K_x(y)`; nonnegative when the bound holds.
    pub slack: f64,
    /// The algebraic certificate `(1-a)^2 ((1+a)^2 - 2 a s^2)` with
    /// `a = sqrt(r)`, `s = sin(pi y/2)`; equals the slack numerator.
    pub certificate: f64,
    /// The scaled form `2 s K_x(y)`, which stays at most 1 even as y -> 0
    /// where slack and bound both diverge.
    pub product_form: f64,
}

impl KernelBoundCheck {
    /// Denominator relating certificate and slack:
    /// `slack * denominator = certificate` exactly in real arithmetic.
    pub fn denominator(a: f64, s: f64) -> f64 {
        let d = (1.0 - a * a) * (1.0 - a * a) + 4.0 * a * a * s * s;
        2.0 * s * d
    }
}

/// Evaluate the kernel bound, its factorized certificate, and the product
/// form at `x > 0`, `0 < y <= 1`.
pub fn kernel_bound_check(x: f64, y: f64) -> Result<KernelBoundCheck> {
    check_x_positive(x)?;
    if !(y > 0.0 && y <= 1.0) {
        return Err(Error::OutsideStrip { x, y });
    }
    let k = kernel_closed(x, y)?;
    let s = (0.5 * PI * y).sin();
    let a = (-0.5 * PI * x).exp();
    let one_minus_a = 1.0 - a;
    let one_plus_a = 1.0 + a;
    Ok(KernelBoundCheck {
        slack: 0.5 / s - k,
        certificate: one_minus_a * one_minus_a * (one_plus_a * one_plus_a - 2.0 * a * s * s),
        product_form: 2.0 * s * k,
    })
}

/// The derivative of the diagonal through the kernel:
/// `g_p'(x) = 2p int_0^1 y^(p-1) K_x(y) dy`. Integrable for every p > 1 by
/// the kernel bound; preferred over the series for p in (1, 2) at small x.
pub fn g_prime_quadrature(p: f64, x: f64) -> Result<f64> {
    check_p(p)?;
    check_x_positive(x)?;
    let r = (-PI * x).exp();
    let sqrt_r = r.sqrt();
    let denom_const = 1.0 + r * r;
    let q = quad::tanh_sinh_01(
        |y| {
            let theta = PI * y;
            let k =
                sqrt_r * (1.0 + r) * (0.5 * theta).sin() / (denom_const - 2.0 * r * theta.cos());
            y.powf(p - 1.0) * k
        },
        1e-14,
        10,
    );
    Ok(2.0 * p * q.value)
}

/// Outcome of sampling the majorant inequality `|y|^p <= U_p(x, y)` on a
/// rectangular grid.
#[derive(Debug, Clone, Copy)]
pub struct MajorantCertificate {
    pub nx: usize,
    pub ny: usize,
    /// Smallest observed value of `U + tail + slack - |y|^p`; the
    /// inequality is witnessed on the sample when this is nonnegative.
    pub worst_margin: f64,
    pub holds: bool,
}

/// Sample the majorant inequality on an `nx` by `ny` grid over
/// `[x_lo, x_hi] x (-1, 1)` (y at cell midpoints), allowing the truncation
/// tail plus `slack` on the datum side. A sampled certificate, not a proof;
/// refine the grid through `nx`/`ny`. Rows are scanned in parallel.
pub fn majorant_certificate(
    series: &MajorantSeries,
    x_lo: f64,
    x_hi: f64,
    nx: usize,
    ny: usize,
    slack: f64,
) -> Result<MajorantCertificate> {
    check_x_positive(x_lo)?;
    if !(x_hi >= x_lo) || nx == 0 || ny == 0 {
        return Err(Error::InvalidRatioSequence);
    }
    let p = series.p;
    let margins = parallel::map_chunks(nx, |i| {
        let x = if nx == 1 {
            x_lo
        } else {
            x_lo + (x_hi - x_lo) * i as f64 / (nx - 1) as f64
        };
        let mut worst = f64::INFINITY;
        for j in 0..ny {
            let y = -1.0 + 2.0 * (j as f64 + 0.5) / ny as f64;
            let u = series.u(x, y).expect("grid point is interior");
            worst = worst.min(u.value + u.tail_bound + slack - boundary_datum(p, y));
        }
        worst
    });
    let worst_margin = margins.into_iter().fold(f64::INFINITY, f64::min);
    Ok(MajorantCertificate {
        nx,
        ny,
        worst_margin,
        holds: worst_margin >= 0.0,
    })
}

/// Ratios `g_p(x) / x` along a positive strictly decreasing sequence; they
/// increase toward A_p as x decreases to 0.
pub fn sharpness_ratios(series: &MajorantSeries, xs: &[f64]) -> Result<Vec<f64>> {
    if xs.is_empty() || xs[0] <= 0.0 {
        return Err(Error::InvalidRatioSequence);
    }
    for w in xs.windows(2) {
        if !(w[1] > 0.0 && w[1] < w[0]) {
            return Err(Error::InvalidRatioSequence);
        }
    }
    xs.iter()
        .map(|&x| series.g(x).map(|b| b.value / x))
        .collect()
}
