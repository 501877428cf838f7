//! Acceptance suite: one test per criterion, each printing a PASS line
//! (run with `cargo test --test acceptance -- --nocapture` to see them).
//!
//! Criteria with a wall-clock budget take it on a dedicated lock so that
//! timings are not skewed by concurrently running tests.

use std::path::PathBuf;
use std::sync::{Mutex, MutexGuard, OnceLock};
use std::time::Instant;

use conjugate_sharp::constants::{catalan, equal_coefficient_constant, sharp_constant_ap};
use conjugate_sharp::families::{
    self, rudin_shapiro_signs, sharpness_sweep, FamilyKind, FamilySpec,
};
use conjugate_sharp::halfstrip::{
    coeff_c, coeff_c_lambda, kernel_bound_check, kernel_closed, kernel_series, lambda,
    majorant_certificate, MajorantSeries,
};
use conjugate_sharp::inequality::{check_minimum_inequality, write_reproduction};
use conjugate_sharp::trigpoly::{lp_power_mean, TrigPoly};

/// Serialize the criteria so wall-clock assertions see the whole machine.
fn serial() -> MutexGuard<'static, ()> {
    static LOCK: OnceLock<Mutex<()>> = OnceLock::new();
    LOCK.get_or_init(|| Mutex::new(()))
        .lock()
        .unwrap_or_else(|p| p.into_inner())
}

fn log_spaced(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let (llo, lhi) = (lo.ln(), hi.ln());
    (0..points)
        .map(|i| (llo + (lhi - llo) * i as f64 / (points - 1) as f64).exp())
        .collect()
}

/// The seeded regression ensemble shared by criteria 7 and 8:
/// 1000 polynomials, sizes up to 32, frequencies up to 16 * 32 = 512.
fn regression_ensemble() -> Vec<TrigPoly> {
    (0..1000u64)
        .map(|i| {
            let kind = if i % 2 == 0 {
                FamilyKind::RandomPhase
            } else {
                FamilyKind::RandomSign
            };
            let size = 1 + (i * 2_654_435_761 % 32) as u32;
            families::random_family(&FamilySpec {
                kind,
                size,
                seed: 0xC0FFEE + i,
                frequency_set: None,
                frequency_cap: None,
            })
            .expect("valid spec")
        })
        .collect()
}

#[test]
fn criterion_01_constant_identity() {
    let _guard = serial();
    let t0 = Instant::now();

    let a2 = sharp_constant_ap(2.0).expect("p = 2 is in range");
    let g = catalan();
    let identity = 16.0 * g.value / (std::f64::consts::PI * std::f64::consts::PI);
    let id_diff = (a2.value - identity).abs();
    assert!(
        id_diff <= 1e-10,
        "criterion 1: FAIL — quadrature A_2 = {} vs 16G/pi^2 = {} (diff {id_diff})",
        a2.value,
        identity
    );

    // brute oracle: paired alternating series, tail below 1/(16 M^2)
    let m_terms = 2_000_000u64;
    let mut brute = 0.0;
    for m in (0..m_terms).rev() {
        let a = (4 * m + 1) as f64;
        let b = (4 * m + 3) as f64;
        brute += 1.0 / (a * a) - 1.0 / (b * b);
    }
    let g_diff = (g.value - brute).abs();
    assert!(
        g_diff <= 1e-12,
        "criterion 1: FAIL — catalan() = {} vs brute series {} (diff {g_diff})",
        g.value,
        brute
    );
    assert!((g.value - 0.915_965_594_177).abs() < 1e-11);

    let elapsed = t0.elapsed().as_secs_f64();
    assert!(
        elapsed < 1.0,
        "criterion 1: FAIL — runtime {elapsed:.3}s >= 1s"
    );
    println!(
        "criterion 1: PASS — A_2 matches 16G/pi^2 within {id_diff:.2e}, catalan within {g_diff:.2e} of brute series ({elapsed:.3}s)"
    );
}

#[test]
fn criterion_02_sharpness_limit() {
    let _guard = serial();
    let t0 = Instant::now();

    // truncation chosen so the series tail at x = 1e-3 sits below 1e-9
    let j = conjugate_sharp::halfstrip::truncation_for_tail(1e-3, 1e-9);
    let series = MajorantSeries::build(2.0, j).expect("p = 2");
    let a2 = sharp_constant_ap(2.0).unwrap().value;
    let xs = [0.1, 0.01, 0.001];
    let mut ratios = Vec::new();
    for &x in &xs {
        let g = series.g(x).unwrap();
        assert!(g.tail_bound < 1e-9, "tail {} at x={x}", g.tail_bound);
        ratios.push(g.value / x);
    }
    assert!(
        ratios[0] < ratios[1] && ratios[1] < ratios[2],
        "criterion 2: FAIL — ratios not increasing: {ratios:?}"
    );
    let r = ratios[2];
    assert!(
        (r - a2).abs() <= 0.005 * a2,
        "criterion 2: FAIL — g(1e-3)/1e-3 = {r} not within 0.5% of A_2 = {a2}"
    );
    assert!(
        r <= a2 + 1e-9,
        "criterion 2: FAIL — ratio {r} exceeds A_2 + 1e-9"
    );

    let elapsed = t0.elapsed().as_secs_f64();
    assert!(
        elapsed < 1.0,
        "criterion 2: FAIL — runtime {elapsed:.3}s >= 1s"
    );
    println!(
        "criterion 2: PASS — ratios {ratios:.6?} increase to within {:.3}% of A_2 ({elapsed:.3}s)",
        100.0 * (a2 - r) / a2
    );
}

#[test]
fn criterion_03_derivative_ceiling() {
    let _guard = serial();
    let xs = log_spaced(1e-3, 5.0, 200);
    let mut worst_margin = f64::INFINITY;
    for p in [1.5, 2.0, 3.0] {
        let ap = sharp_constant_ap(p).unwrap().value;
        let series = MajorantSeries::build(p, 12_000).expect("table");
        for &x in &xs {
            let gp = series.g_prime(x).unwrap();
            let ceiling_excess = gp.value + gp.tail_bound - ap;
            assert!(
                ceiling_excess <= 1e-9,
                "criterion 3: FAIL — p={p}, x={x}: g' + tail = {} exceeds A_p = {ap}",
                gp.value + gp.tail_bound
            );
            worst_margin = worst_margin.min(-ceiling_excess);
        }
    }
    println!(
        "criterion 3: PASS — g' stays below A_p on 200 log-spaced x in [1e-3, 5] for p in {{1.5, 2, 3}} (smallest margin {worst_margin:.3e})"
    );
}

#[test]
fn criterion_04_kernel_equivalence_and_bound() {
    let _guard = serial();
    let mut worst_slack = f64::INFINITY;
    let mut worst_agreement = 0.0f64;
    for i in 0..200 {
        let x = 4.0 * (i + 1) as f64 / 200.0;
        for j in 0..200 {
            let y = (j + 1) as f64 / 200.0;
            let chk = kernel_bound_check(x, y).unwrap();
            worst_slack = worst_slack.min(chk.slack);
            assert!(
                chk.slack >= -1e-12,
                "criterion 4: FAIL — bound slack {} at ({x}, {y})",
                chk.slack
            );
            assert!(
                chk.certificate >= 0.0,
                "criterion 4: FAIL — certificate {} at ({x}, {y})",
                chk.certificate
            );
            assert!(chk.product_form <= 1.0 + 1e-12);
        }
    }
    // series vs closed form at J = 50: within the rigorous tail bound (plus
    // rounding); the tail itself drops below 1e-12 once x exceeds ~0.19
    for i in 0..200 {
        let x = 0.1 + (4.0 - 0.1) * i as f64 / 199.0;
        for j in 0..40 {
            let y = (j + 1) as f64 / 40.0;
            let series = kernel_series(x, y, 50).unwrap();
            let closed = kernel_closed(x, y).unwrap();
            let diff = (series.value - closed).abs();
            assert!(
                diff <= series.tail_bound + 1e-12,
                "criterion 4: FAIL — |series - closed| = {diff} above tail {} at ({x}, {y})",
                series.tail_bound
            );
            if series.tail_bound < 1e-12 {
                assert!(diff <= 1e-12, "x={x} y={y}: {diff}");
            }
            worst_agreement = worst_agreement.max(diff - series.tail_bound);
        }
    }
    println!(
        "criterion 4: PASS — kernel bound slack >= {worst_slack:.3e} on 200x200, series matches closed form within tail + {worst_agreement:.3e}"
    );
}

#[test]
fn criterion_05_coefficient_bound() {
    let _guard = serial();
    for p in [1.1, 1.5, 2.0, 3.0, 10.0] {
        for j in 0..=200 {
            let cl = coeff_c_lambda(p, j).unwrap();
            assert!(
                cl.abs() <= 2.0 + 1e-12,
                "criterion 5: FAIL — |c_j lambda_j| = {} at p={p}, j={j}",
                cl.abs()
            );
        }
    }
    let mut worst = 0.0f64;
    for j in 0..=200 {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let closed = 4.0 * sign / lambda(j).powi(3);
        let got = coeff_c(2.0, j).unwrap();
        let diff = (got - closed).abs();
        assert!(
            diff <= 1e-11,
            "criterion 5: FAIL — c_{j}(2) = {got} vs closed form {closed}"
        );
        worst = worst.max(diff);
    }
    println!(
        "criterion 5: PASS — |c_j lambda_j| <= 2 for five exponents up to j = 200; p = 2 closed form matched within {worst:.3e}"
    );
}

#[test]
fn criterion_06_majorant_property() {
    let _guard = serial();
    let t0 = Instant::now();
    let mut worst = f64::INFINITY;
    for p in [1.5, 2.0, 3.0] {
        let series = MajorantSeries::build(p, 1200).expect("table");
        let cert = majorant_certificate(&series, 0.01, 4.0, 200, 200, 1e-9).unwrap();
        assert!(
            cert.holds,
            "criterion 6: FAIL — p={p}: U_p dips {} below |y|^p on the 200x200 grid",
            -cert.worst_margin
        );
        worst = worst.min(cert.worst_margin);
    }
    let elapsed = t0.elapsed().as_secs_f64();
    assert!(
        elapsed < 10.0,
        "criterion 6: FAIL — runtime {elapsed:.2}s >= 10s"
    );
    println!(
        "criterion 6: PASS — majorant dominates |y|^p on 200x200 grids for p in {{1.5, 2, 3}} (worst margin {worst:.3e}, {elapsed:.2}s)"
    );
}

#[test]
fn criterion_07_theorem_regression() {
    let _guard = serial();
    let t0 = Instant::now();
    let ensemble = regression_ensemble();
    let k = 8192;
    let mut checked = 0usize;
    for (i, poly) in ensemble.iter().enumerate() {
        for p in [1.5, 2.0, 3.0] {
            let report = check_minimum_inequality(poly, p, k).expect("check runs");
            if !report.holds {
                let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR"))
                    .join(format!("acceptance_repro_{i}_{p}.json"));
                write_reproduction(&path, poly, &report, k).expect("write repro");
                panic!(
                    "criterion 7: FAIL — instance {i}, p={p} does not hold (slack {}); reproduction at {}",
                    report.slack,
                    path.display()
                );
            }
            checked += 1;
        }
    }
    let elapsed = t0.elapsed().as_secs_f64();
    assert!(
        elapsed < 60.0,
        "criterion 7: FAIL — runtime {elapsed:.1}s >= 60s"
    );
    println!(
        "criterion 7: PASS — {checked} seeded inequality checks hold (1000 polynomials x 3 exponents, {elapsed:.1}s)"
    );
}

#[test]
fn criterion_08_parseval() {
    let _guard = serial();
    let ensemble = regression_ensemble();
    let mut worst = 0.0f64;
    for poly in &ensemble {
        let pmean = lp_power_mean(&poly.imag_part(), 2.0, 8192).unwrap();
        let half_sum = poly.parseval_l2();
        let diff = (pmean - half_sum).abs();
        assert!(
            diff <= 1e-10,
            "criterion 8: FAIL — trapezoid {pmean} vs Parseval {half_sum} (diff {diff})"
        );
        worst = worst.max(diff);
    }
    println!(
        "criterion 8: PASS — trapezoid second moment matches (1/2) sum |a_k|^2 within {worst:.3e} across the ensemble"
    );
}

#[test]
fn criterion_09_order_sharpness() {
    let _guard = serial();
    let t0 = Instant::now();
    let sizes: Vec<u32> = (0..=14).map(|m| 1u32 << m).collect();
    let rows = sharpness_sweep(&sizes, families::DEFAULT_SWEEP_CAP).expect("sweep");
    let lower_const = equal_coefficient_constant().value;

    let mut worst_upper = 0.0f64;
    let mut worst_lower = f64::INFINITY;
    for row in &rows {
        assert!(
            row.product_upper <= 25.0 * row.n as f64,
            "criterion 9: FAIL — N={}: certified product {} exceeds 25N",
            row.n,
            row.product_upper
        );
        assert!(
            row.ratio_lower >= lower_const - 1e-6,
            "criterion 9: FAIL — N={}: ratio_lower {} below pi^2/(32G) - 1e-6",
            row.n,
            row.ratio_lower
        );
        worst_upper = worst_upper.max(row.ratio_upper);
        worst_lower = worst_lower.min(row.ratio_lower);
    }

    // observed flatness constant of the sign-sequence polynomials
    let mut observed = 0.0f64;
    for &n in &sizes {
        let poly = families::flat_polynomial(n);
        let sup = conjugate_sharp::trigpoly::certified_sup_modulus(&poly, 16 * n as usize)
            .unwrap()
            .upper();
        observed = observed.max(sup / (n as f64).sqrt());
    }
    if observed > 5.0 {
        println!(
            "criterion 9: NOTE — observed flatness constant {observed:.3} exceeds 5; the 25N product bound above is the binding check"
        );
    }

    let elapsed = t0.elapsed().as_secs_f64();
    assert!(
        elapsed < 300.0,
        "criterion 9: FAIL — runtime {elapsed:.1}s >= 300s"
    );
    println!(
        "criterion 9: PASS — product/N in [{worst_lower:.4}, {worst_upper:.4}] inside [{lower_const:.5}, 25] for N = 1..16384; observed flatness constant {observed:.3} ({elapsed:.1}s)"
    );
}

#[test]
fn criterion_10_finite_difference_consistency() {
    let _guard = serial();
    let series = MajorantSeries::build(2.0, 200).expect("table");
    let h = 1e-4;
    let mut worst = 0.0f64;
    for &x in &[0.3, 0.5, 1.0] {
        let fd = (series.g(x + h).unwrap().value - series.g(x - h).unwrap().value) / (2.0 * h);
        let gp = series.g_prime(x).unwrap().value;
        let diff = (fd - gp).abs();
        assert!(
            diff <= 1e-6,
            "criterion 10: FAIL — central difference {fd} vs g' {gp} at x={x}"
        );
        worst = worst.max(diff);
    }
    println!(
        "criterion 10: PASS — central differences of g match g' within {worst:.3e} at x in {{0.3, 0.5, 1.0}}"
    );
}

#[test]
fn criterion_signs_prefix_sanity() {
    // tiny guard on the deterministic sign sequence backing criterion 9
    let _guard = serial();
    assert_eq!(rudin_shapiro_signs(3), vec![1, 1, -1]);
    println!("criterion 9 precondition: sign sequence prefix verified");
}
