//! Quadrature building blocks: tanh-sinh for endpoint singularities and
//! Gauss-Legendre panels for oscillatory integrands.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

/// Outcome of an adaptive tanh-sinh integration.
#[derive(Debug, Clone, Copy)]
pub(crate) struct QuadResult {
    pub value: f64,
    /// Conservative absolute error estimate: ten times the difference
    /// between the last two refinement levels, floored at a few ulps.
    pub abs_error: f64,
    /// Refinement depth reached; exercised by stability tests.
    #[cfg_attr(not(test), allow(dead_code))]
    pub levels: usize,
}

/// Tanh-sinh quadrature of `f` over `(0, 1)`.
///
/// `f` receives the node position measured from the left endpoint, computed
/// without cancellation, so integrands with an algebraic singularity at 0
/// can be evaluated accurately arbitrarily close to it. The substitution is
/// t = (1 + tanh((pi/2) sinh u)) / 2 with the full trapezoid sum recomputed
/// at each halving of the step.
pub(crate) fn tanh_sinh_01<F>(f: F, rtol: f64, max_level: usize) -> QuadResult
where
    F: Fn(f64) -> f64,
{
    const U_MAX: f64 = 6.0;
    let mut prev = f64::NAN;
    let mut prev_diff = f64::INFINITY;
    let mut value = 0.0;
    let mut levels = 0;
    for level in 0..=max_level {
        let h = 0.5f64.powi(level as i32);
        let kmax = (U_MAX / h).ceil() as i64;
        let mut sum = 0.0;
        let mut comp = 0.0;
        for k in -kmax..=kmax {
            let u = k as f64 * h;
            let ex = FRAC_PI_2 * u.sinh();
            let ch = ex.cosh();
            let w = FRAC_PI_4 * u.cosh() / (ch * ch);
            if w < 1e-320 {
                continue;
            }
            // distance from the left endpoint, stable for ex << 0
            let t = 1.0 / (1.0 + (-2.0 * ex).exp());
            let fv = f(t);
            if !fv.is_finite() {
                continue;
            }
            let term = w * fv;
            let s = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - s) + term;
            } else {
                comp += (term - s) + sum;
            }
            sum = s;
        }
        let cur = (sum + comp) * h;
        levels = level;
        if level > 0 {
            let diff = (cur - prev).abs();
            value = cur;
            if diff <= rtol * cur.abs().max(1e-300) {
                let floor = 4.0 * f64::EPSILON * cur.abs();
                return QuadResult {
                    value: cur,
                    abs_error: (10.0 * diff).max(floor),
                    levels: level,
                };
            }
            prev_diff = diff;
        } else {
            value = cur;
        }
        prev = cur;
    }
    QuadResult {
        value,
        abs_error: (10.0 * prev_diff).max(4.0 * f64::EPSILON * value.abs()),
        levels,
    }
}

/// Tanh-sinh over `(a, b)` for integrands singular at most at `a`.
/// `f` receives the absolute position `a + (b - a) * t`.
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) fn tanh_sinh<F>(f: F, a: f64, b: f64, rtol: f64, max_level: usize) -> QuadResult
where
    F: Fn(f64) -> f64,
{
    let width = b - a;
    let mut r = tanh_sinh_01(|t| f(a + width * t), rtol, max_level);
    r.value *= width;
    r.abs_error *= width.abs();
    r
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, computed by Newton
/// iteration on the Legendre recurrence.
pub(crate) fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-like initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // evaluate P_n(x) and P_n'(x)
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                // one last polish step
                let mut q0 = 1.0;
                let mut q1 = x;
                for k in 2..=n {
                    let kf = k as f64;
                    let q2 = ((2.0 * kf - 1.0) * x * q1 - (kf - 1.0) * q0) / kf;
                    q0 = q1;
                    q1 = q2;
                }
                dp = n as f64 * (x * q1 - q0) / (x * x - 1.0);
                x -= q1 / dp;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Cached 16-point Gauss-Legendre rule, the workhorse for oscillatory panels.
pub(crate) fn gl16() -> &'static (Vec<f64>, Vec<f64>) {
    use std::sync::OnceLock;
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(16))
}

/// Panel mesh on `[0, 1]` for integrands with an algebraic singularity at 0
/// against oscillations up to frequency `(j_max + 1/2) * pi`: uniform panels
/// of at most one oscillation period, merged with dyadic refinement toward 0.
pub(crate) fn graded_oscillatory_mesh(j_max: usize) -> Vec<(f64, f64)> {
    let n_uniform = (j_max + 1).div_ceil(2).max(8);
    let mut pts: Vec<f64> = (0..=n_uniform)
        .map(|i| i as f64 / n_uniform as f64)
        .collect();
    let mut d = 0.5;
    while d > 1.0 / n_uniform as f64 {
        d *= 0.5; // dyadic points matter only below the uniform spacing
    }
    while d > 2.0f64.powi(-45) {
        pts.push(d);
        d *= 0.5;
    }
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    pts.windows(2).map(|w| (w[0], w[1])).collect()
}
