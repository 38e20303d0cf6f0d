mod common;

use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use qgraph::{
    asymptotic_values, fundamental_values, fundamental_values_at, sample_potential,
    PiecewisePotential,
};
use std::f64::consts::PI;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn wronskian_is_one(q in common::potential(), lambda in -10.0f64..2000.0) {
        let f = fundamental_values(&q, lambda).unwrap();
        prop_assert!((f.wronskian() - 1.0).abs() < 1e-10, "W = {}", f.wronskian());
    }

    /// Deep below the potential both products in `W` grow like `e^{2μ}`,
    /// and the rounding error grows with them.
    #[test]
    fn wronskian_far_below_the_potential(q in common::potential(), lambda in -200.0f64..-10.0) {
        let f = fundamental_values(&q, lambda).unwrap();
        let size = (f.c * f.ds).abs() + (f.dc * f.s).abs();
        prop_assert!((f.wronskian() - 1.0).abs() < 1e-14 * size.max(1.0), "W = {}", f.wronskian());
    }

    #[test]
    fn wronskian_at_segment_values(q in common::potential(), pick in 0usize..5) {
        let v = q.values()[pick % q.values().len()];
        let f = fundamental_values(&q, v).unwrap();
        prop_assert!((f.wronskian() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn wronskian_inside_the_edge(q in common::potential(), lambda in -20.0f64..500.0, x in 0.0f64..=1.0) {
        let f = fundamental_values_at(&q, lambda, x).unwrap();
        prop_assert!((f.wronskian() - 1.0).abs() < 1e-10);
    }

    /// Adding a constant `v` to `q` is the same as evaluating at `λ - v`.
    #[test]
    fn constant_shift_identity(q in common::potential(), v in -5.0f64..5.0, lambda in -10.0f64..500.0) {
        let a = fundamental_values(&q.shifted(v), lambda).unwrap();
        let b = fundamental_values(&q, lambda - v).unwrap();
        let scale = a.c.abs().max(a.dc.abs()).max(a.s.abs()).max(a.ds.abs()).max(1.0);
        for (x, y) in [(a.c, b.c), (a.dc, b.dc), (a.s, b.s), (a.ds, b.ds)] {
            prop_assert!((x - y).abs() <= 1e-9 * scale, "{x} vs {y}");
        }
    }

    /// Reversal: for q(1-x) the roles of c and s' swap at x = 1.
    #[test]
    fn reversal_swaps_c_and_ds(q in common::potential(), lambda in -10.0f64..500.0) {
        let f = fundamental_values(&q, lambda).unwrap();
        let r = fundamental_values(&q.reversed(), lambda).unwrap();
        let scale = f.c.abs().max(f.ds.abs()).max(f.s.abs()).max(1.0);
        prop_assert!((f.c - r.ds).abs() <= 1e-9 * scale);
        prop_assert!((f.ds - r.c).abs() <= 1e-9 * scale);
        prop_assert!((f.s - r.s).abs() <= 1e-9 * scale);
    }
}

/// Free solutions in closed form, on both sides of zero and across the
/// small-argument branch.
#[test]
fn free_closed_forms_are_continuous_near_zero() {
    let zero = PiecewisePotential::zero();
    for &lambda in &[-1e-3, -1e-7, -1e-9, -1e-12, 0.0, 1e-12, 1e-9, 1e-7, 1e-3] {
        let f = fundamental_values(&zero, lambda).unwrap();
        let (c, dc, s, ds) = if lambda > 0.0 {
            let k = f64::sqrt(lambda);
            (k.cos(), -k * k.sin(), k.sin() / k, k.cos())
        } else if lambda < 0.0 {
            let k = f64::sqrt(-lambda);
            (k.cosh(), k * k.sinh(), k.sinh() / k, k.cosh())
        } else {
            (1.0, 0.0, 1.0, 1.0)
        };
        assert_abs_diff_eq!(f.c, c, epsilon = 1e-12);
        assert_abs_diff_eq!(f.dc, dc, epsilon = 1e-12);
        assert_abs_diff_eq!(f.s, s, epsilon = 1e-12);
        assert_abs_diff_eq!(f.ds, ds, epsilon = 1e-12);
    }
}

#[test]
fn smooth_potential_deviation_decays() {
    let q = sample_potential(|x| 1.0 + (2.0 * PI * x).cos() + x * x, 256).unwrap();
    let d = 0.7;
    let mut previous = f64::INFINITY;
    for k in [8u32, 16, 32, 64] {
        let a = asymptotic_values(q.mean(), k, d);
        let f = fundamental_values(&q, a.lambda).unwrap();
        let root = a.lambda.sqrt();
        let deviation = [
            f.c - a.c,
            f.dc / root - a.dc_over_root,
            f.s * root - a.s_times_root,
            f.ds - a.ds,
        ]
        .iter()
        .map(|x| x.abs() * root)
        .fold(0.0, f64::max);
        assert!(
            deviation < previous,
            "k = {k}: {deviation} after {previous}"
        );
        previous = deviation;
    }
    assert!(previous < 1e-2, "{previous}");
}
