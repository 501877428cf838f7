//! Data-parallel reductions with thread-count-independent results.
//!
//! Work is split into chunks of a fixed size and the per-chunk partials are
//! merged in chunk order, so a reduction returns bit-identical results
//! whether it runs on one thread, many threads, or with the `parallel`
//! feature disabled entirely.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Fixed chunk length for grid reductions. Never derive this from the
/// runtime thread count: determinism of emitted reports depends on it.
pub(crate) const CHUNK: usize = 8192;

/// Map chunk indices `0..n_chunks` to partial results, in parallel when the
/// feature is enabled, and return them in chunk order.
pub(crate) fn map_chunks<T, F>(n_chunks: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n_chunks).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n_chunks).map(f).collect()
    }
}

/// Neumaier-compensated sum of a slice, sequential.
pub(crate) fn compensated_sum(xs: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for &x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Deterministic chunked sum of `f(i)` over `0..n`.
pub(crate) fn sum_indexed<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let n_chunks = n.div_ceil(CHUNK).max(1);
    let partials = map_chunks(n_chunks, |ci| {
        let lo = ci * CHUNK;
        let hi = (lo + CHUNK).min(n);
        let mut sum = 0.0;
        let mut comp = 0.0;
        for i in lo..hi {
            let x = f(i);
            let t = sum + x;
            if sum.abs() >= x.abs() {
                comp += (sum - t) + x;
            } else {
                comp += (x - t) + sum;
            }
            sum = t;
        }
        sum + comp
    });
    compensated_sum(&partials)
}

/// Minimum value and the first index attaining it.
pub(crate) fn min_with_index(xs: &[f64]) -> (f64, usize) {
    let n_chunks = xs.len().div_ceil(CHUNK).max(1);
    let partials = map_chunks(n_chunks, |ci| {
        let lo = ci * CHUNK;
        let hi = (lo + CHUNK).min(xs.len());
        let mut best = f64::INFINITY;
        let mut idx = lo;
        for (i, &x) in xs[lo..hi].iter().enumerate() {
            if x < best {
                best = x;
                idx = lo + i;
            }
        }
        (best, idx)
    });
    let mut best = f64::INFINITY;
    let mut idx = 0;
    for &(v, i) in &partials {
        if v < best {
            best = v;
            idx = i;
        }
    }
    (best, idx)
}

/// Maximum of `|x|` and the first index attaining it.
pub(crate) fn max_abs_with_index(xs: &[f64]) -> (f64, usize) {
    let n_chunks = xs.len().div_ceil(CHUNK).max(1);
    let partials = map_chunks(n_chunks, |ci| {
        let lo = ci * CHUNK;
        let hi = (lo + CHUNK).min(xs.len());
        let mut best = -1.0;
        let mut idx = lo;
        for (i, &x) in xs[lo..hi].iter().enumerate() {
            let a = x.abs();
            if a > best {
                best = a;
                idx = lo + i;
            }
        }
        (best, idx)
    });
    let mut best = -1.0;
    let mut idx = 0;
    for &(v, i) in &partials {
        if v > best {
            best = v;
            idx = i;
        }
    }
    (best.max(0.0), idx)
}
