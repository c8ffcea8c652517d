//! Display regularization of the field.
//!
//! The raw field diverges to -infinity on the singular set. The monotone map
//!
//!   F = sign(f) ln( ln(|e^f - 1| + 1) + 1 ),   F(0) = 0
//!
//! removes the negative infinity (F -> -ln(ln 2 + 1) as f -> -inf) and
//! compresses large crests (F ~ ln f as f -> +inf) while staying close to
//! the identity for |f| << 1. For f > 0 the map reduces algebraically to
//! ln(f + 1), which is what is computed; the f < 0 branch uses expm1/ln_1p
//! so the full double range is overflow-free.

use crate::grid::ScalarField;

/// Lower bound of the regularized range: -ln(ln 2 + 1).
pub const REGULARIZATION_FLOOR: f64 = -0.526_589_034_139_044_6;

/// Regularized amplitude F(f).
pub fn regularize(f: f64) -> f64 {
    if f == 0.0 {
        0.0
    } else if f > 0.0 {
        // |e^f - 1| + 1 = e^f, so F = ln(ln(e^f) + 1) = ln(f + 1).
        f.ln_1p()
    } else {
        // |e^f - 1| + 1 = 2 - e^f = 1 - expm1(f).
        -(-f.exp_m1()).ln_1p().ln_1p()
    }
}

/// Elementwise regularization. Masked (singular) cells map to the floor
/// value, consistent with f -> -inf on the singular curve, and stay masked.
pub fn regularize_field(field: &ScalarField) -> ScalarField {
    let mut out = field.map(regularize);
    for idx in 0..field.len() {
        let (ix, iy) = field.grid().coords(idx);
        if field.is_masked(ix, iy) {
            out.set(ix, iy, REGULARIZATION_FLOOR, true);
        }
    }
    out
}

/// How `clip_display` treats positive values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClipMode {
    /// min(f, cap): saturate crests at the cap.
    #[default]
    Saturating,
    /// max(f, cap): the literal printed rule (caps act as a lower bound).
    Literal,
}

/// Display map used for time-evolution plates: regularize the troughs,
/// clip the crests at `cap`.
pub fn clip_display(f: f64, cap: f64, mode: ClipMode) -> f64 {
    if f <= 0.0 {
        regularize(f)
    } else {
        match mode {
            ClipMode::Saturating => f.min(cap),
            ClipMode::Literal => f.max(cap),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridSpec;
    use approx::assert_relative_eq;

    #[test]
    fn zero_maps_to_zero() {
        assert_eq!(regularize(0.0), 0.0);
    }

    #[test]
    fn unit_input_gives_ln_two() {
        assert_relative_eq!(regularize(1.0), std::f64::consts::LN_2, max_relative = 1e-15);
    }

    #[test]
    fn deep_troughs_approach_the_floor() {
        assert!((regularize(-50.0) - REGULARIZATION_FLOOR).abs() < 1e-12);
        assert!((regularize(-1e6) - REGULARIZATION_FLOOR).abs() < 1e-15);
        // The floor constant itself.
        assert_relative_eq!(
            REGULARIZATION_FLOOR,
            -(std::f64::consts::LN_2 + 1.0).ln(),
            max_relative = 1e-16
        );
    }

    #[test]
    fn negative_branch_matches_direct_formula() {
        // Direct evaluation of -ln(ln(2 - e^f) + 1) where it is safe.
        for f in [-0.5_f64, -1.0, -3.0, -10.0] {
            let direct = -(((2.0 - f.exp()).ln()) + 1.0).ln();
            assert_relative_eq!(regularize(f), direct, max_relative = 1e-14);
        }
        assert_relative_eq!(regularize(-1.0), -0.398_695_664_133_468_63, max_relative = 1e-12);
    }

    #[test]
    fn large_positive_matches_log() {
        // Exact by construction: F(f) = ln(f + 1) for f > 0.
        assert_eq!(regularize(1e6), 1e6_f64.ln_1p());
        assert!((regularize(1e6) - 1e6_f64.ln()).abs() < 1e-5);
    }

    #[test]
    fn near_identity_for_small_inputs() {
        // Dense sampling puts the worst deviation on [-0.1, 0.1] at
        // |F(-0.1) + 0.1| = 0.0129944; freeze 0.013 as the bound.
        for i in 1..=100 {
            let f = i as f64 * 1e-3;
            assert!((regularize(f) - f).abs() <= 0.013);
            assert!((regularize(-f) + f).abs() <= 0.013);
        }
        assert!((regularize(-0.1) + 0.1).abs() <= 0.013);
        assert!(regularize(1e-9).abs() < 1e-8);
        assert!(regularize(-1e-9).abs() < 1e-8);
    }

    #[test]
    fn strictly_increasing() {
        // The negative branch saturates at the floor in f64 once the
        // increment e^f drops below one ulp of it; [-25, 30] keeps every
        // sampled increment resolvable.
        let mut prev = regularize(-25.0);
        for i in 1..=10_000 {
            let f = -25.0 + i as f64 * (55.0 / 10_000.0);
            let cur = regularize(f);
            assert!(cur > prev, "not increasing at f = {f}");
            prev = cur;
        }
    }

    #[test]
    fn field_regularization_respects_mask() {
        let grid = GridSpec::new(0.0, 2.0, 0.0, 2.0, 2, 2).unwrap();
        let field = ScalarField::from_results(
            grid,
            0.0,
            vec![Some(0.0), Some(1.0), None, Some(-50.0)],
        );
        let reg = regularize_field(&field);
        assert_eq!(reg.value(0, 0), 0.0);
        assert_relative_eq!(reg.value(1, 0), std::f64::consts::LN_2);
        assert_eq!(reg.value(0, 1), REGULARIZATION_FLOOR);
        assert!(reg.is_masked(0, 1));
        assert!((reg.value(1, 1) - REGULARIZATION_FLOOR).abs() < 1e-12);
    }

    #[test]
    fn all_zero_field_stays_zero() {
        let grid = GridSpec::new(0.0, 1.0, 0.0, 1.0, 2, 2).unwrap();
        let field = ScalarField::from_values(grid, 0.0, vec![0.0; 4]);
        let reg = regularize_field(&field);
        assert!(reg.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn clip_modes() {
        assert_relative_eq!(clip_display(-1.0, 10.0, ClipMode::Saturating), regularize(-1.0));
        assert_eq!(clip_display(3.0, 10.0, ClipMode::Saturating), 3.0);
        assert_eq!(clip_display(30.0, 10.0, ClipMode::Saturating), 10.0);
        assert_eq!(clip_display(3.0, 10.0, ClipMode::Literal), 10.0);
        assert_eq!(clip_display(30.0, 10.0, ClipMode::Literal), 30.0);
    }
}
