//! Property-based invariants: conjugation algebra, Parseval consistency,
//! enclosure nesting under grid refinement, translation invariance, scaling
//! covariance, and report homogeneity.

use num_complex::Complex64;
use proptest::prelude::*;

use conjugate_sharp::inequality::check_minimum_inequality;
use conjugate_sharp::trigpoly::{
    certified_min, certified_sup_abs, conjugate, lp_power_mean, RealTrig, TrigPoly,
};

const K: usize = 4096;

fn arb_poly() -> impl Strategy<Value = TrigPoly> {
    (
        proptest::collection::btree_set(1u32..=64, 1..=6),
        proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 6),
    )
        .prop_map(|(freqs, coeffs)| {
            let terms = freqs
                .into_iter()
                .zip(coeffs)
                .map(|(n, (re, im))| (n, Complex64::new(re, im)))
                .collect();
            TrigPoly::new(terms).expect("ascending distinct frequencies")
        })
}

fn arb_real_trig() -> impl Strategy<Value = RealTrig> {
    (
        proptest::collection::btree_set(1u32..=64, 1..=6),
        proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 6),
    )
        .prop_map(|(freqs, coeffs)| {
            let terms = freqs
                .into_iter()
                .zip(coeffs)
                .map(|(n, (c, s))| (n, c, s))
                .collect();
            RealTrig::new(terms, 0.0).expect("valid terms")
        })
}

fn intervals_overlap(a: (f64, f64), b: (f64, f64)) -> bool {
    a.0.max(b.0) <= a.1.min(b.1) + 1e-12
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_is_involution_up_to_sign(f in arb_real_trig()) {
        let ff = conjugate(&conjugate(&f).unwrap()).unwrap();
        for (a, b) in ff.terms().iter().zip(f.terms()) {
            prop_assert_eq!(a.cos_coeff, -b.cos_coeff);
            prop_assert_eq!(a.sin_coeff, -b.sin_coeff);
        }
    }

    #[test]
    fn conjugate_matches_imaginary_part(p in arb_poly()) {
        let from_real = conjugate(&p.real_part()).unwrap();
        let imag = p.imag_part();
        prop_assert_eq!(from_real.terms(), imag.terms());
    }

    #[test]
    fn parseval_consistency(p in arb_poly()) {
        let pmean = lp_power_mean(&p.imag_part(), 2.0, K).unwrap();
        prop_assert!((pmean - p.parseval_l2()).abs() <= 1e-10);
    }

    #[test]
    fn enclosures_nest_under_grid_refinement(p in arb_poly()) {
        // nesting is exact in real arithmetic; allow for FFT rounding, which
        // perturbs shared grid points between the two transforms by ~1e-16
        let f = p.real_part();
        let conj = p.imag_part();
        let scale = p.terms().iter().map(|t| t.coeff.norm()).sum::<f64>();
        let eps = 1e-12 * (1.0 + scale);
        let (cm_a, cm_b) = (certified_min(&f, K).unwrap(), certified_min(&f, 2 * K).unwrap());
        let (pa, pb) = (cm_a.padded_interval(), cm_b.padded_interval());
        prop_assert!(pa.0 <= pb.0 + eps && pb.1 <= pa.1 + eps, "min: {pa:?} vs {pb:?}");
        let (cs_a, cs_b) = (
            certified_sup_abs(&conj, K).unwrap(),
            certified_sup_abs(&conj, 2 * K).unwrap(),
        );
        let (sa, sb) = (cs_a.padded_interval(), cs_b.padded_interval());
        prop_assert!(sa.0 <= sb.0 + eps && sb.1 <= sa.1 + eps, "sup: {sa:?} vs {sb:?}");
    }

    #[test]
    fn translation_leaves_enclosures_overlapping(p in arb_poly(), tau in 0.0..std::f64::consts::TAU) {
        let q = p.translate(tau);
        let a = certified_min(&p.real_part(), K).unwrap();
        let b = certified_min(&q.real_part(), K).unwrap();
        prop_assert!(intervals_overlap(a.certified_interval(), b.certified_interval()));
        let sa = certified_sup_abs(&p.imag_part(), K).unwrap();
        let sb = certified_sup_abs(&q.imag_part(), K).unwrap();
        prop_assert!(intervals_overlap(sa.certified_interval(), sb.certified_interval()));
        // report-level fields agree within the certification radii
        let ra = check_minimum_inequality(&p, 2.0, K).unwrap();
        let rb = check_minimum_inequality(&q, 2.0, K).unwrap();
        prop_assert!((ra.m_lower - rb.m_lower).abs() <= a.tight_radius + b.tight_radius + 1e-9);
        prop_assert!(
            (ra.sup_conj_upper - rb.sup_conj_upper).abs()
                <= sa.tight_radius + sb.tight_radius + 1e-9
        );
        prop_assert_eq!(ra.holds, rb.holds);
    }

    #[test]
    fn scaling_covariance_exact_for_power_of_two(f in arb_real_trig()) {
        let g = f.scale(2.0);
        let cf = certified_min(&f, K).unwrap();
        let cg = certified_min(&g, K).unwrap();
        prop_assert_eq!(cg.grid_value, 2.0 * cf.grid_value);
        prop_assert_eq!(cg.refined_value, 2.0 * cf.refined_value);
        prop_assert_eq!(cg.error_radius, 2.0 * cf.error_radius);
        let sf = certified_sup_abs(&f, K).unwrap();
        let sg = certified_sup_abs(&g, K).unwrap();
        prop_assert_eq!(sg.grid_value, 2.0 * sf.grid_value);
        prop_assert_eq!(sg.error_radius, 2.0 * sf.error_radius);
    }

    #[test]
    fn report_homogeneity(p in arb_poly()) {
        let base = check_minimum_inequality(&p, 2.0, K).unwrap();
        let scaled = check_minimum_inequality(&p.scale(4.0), 2.0, K).unwrap();
        prop_assert_eq!(scaled.m_lower, 4.0 * base.m_lower);
        prop_assert_eq!(scaled.sup_conj_upper, 4.0 * base.sup_conj_upper);
        prop_assert_eq!(scaled.pmean_conj, 16.0 * base.pmean_conj);
        let rel = |a: f64, b: f64| (a - b).abs() <= 1e-12 * b.abs().max(1e-300);
        prop_assert!(rel(scaled.rhs, 4.0 * base.rhs));
        prop_assert!(rel(scaled.slack, 4.0 * base.slack) || (scaled.slack - 4.0 * base.slack).abs() < 1e-12);
        prop_assert_eq!(scaled.holds, base.holds);
        prop_assert!(base.holds);
    }

    #[test]
    fn conservative_directions(p in arb_poly()) {
        let f = p.real_part();
        let conj = p.imag_part();
        let cm = certified_min(&f, K).unwrap();
        // the refined value (a true sample of f) never undercuts the
        // certified lower bound, and never exceeds the grid minimum
        prop_assert!(cm.refined_value >= cm.lower() - 1e-12);
        prop_assert!(cm.refined_value <= cm.grid_value + 1e-12);
        let cs = certified_sup_abs(&conj, K).unwrap();
        prop_assert!(cs.refined_value >= cs.grid_value - 1e-12);
        prop_assert!(cs.refined_value <= cs.upper() + 1e-12);
        // a dense independent sampling stays inside the certified bounds
        for i in 0..2000 {
            let x = std::f64::consts::TAU * i as f64 / 2000.0 + 0.000_37;
            prop_assert!(f.eval(x) >= cm.lower() - 1e-12);
            prop_assert!(conj.eval(x).abs() <= cs.upper() + 1e-12);
        }
    }
}
