//! Linear phases of the spectral families.
//!
//! Each mode carries two affine functions of (x, y, t): the oscillatory
//! phase `Gamma` and the secular factor `Upsilon`. The trigonometric and
//! hyperbolic families differ in the sign pattern of the y and t terms and
//! in whether the mixing angle enters through cos/sin or cosh/sinh.

use crate::solution::{EvalPoint, Family, SpectralMode};

/// Oscillatory phase of one mode.
pub fn phase_gamma(mode: &SpectralMode, pt: &EvalPoint, family: Family, alpha: f64) -> f64 {
    let SpectralMode { lambda, mu, gamma, .. } = *mode;
    let a2 = alpha * alpha;
    match family {
        Family::Trigonometric => {
            gamma + lambda * pt.x - 2.0 * lambda * mu * pt.y
                + 4.0 * lambda * (lambda * lambda - 3.0 * a2 * mu * mu) * pt.t
        }
        Family::Hyperbolic => {
            gamma + lambda * pt.x - 2.0 * lambda * mu * pt.y
                - 4.0 * lambda * (lambda * lambda + 3.0 * a2 * mu * mu) * pt.t
        }
        Family::Soliton => panic!("phase_gamma is defined for the spectral families only"),
    }
}

/// Secular factor of one mode.
pub fn phase_upsilon(mode: &SpectralMode, pt: &EvalPoint, family: Family, alpha: f64) -> f64 {
    let SpectralMode { lambda, mu, chi, rho, .. } = *mode;
    let a2 = alpha * alpha;
    match family {
        Family::Trigonometric => {
            let (s, c) = (alpha * chi).sin_cos();
            rho + pt.x * c
                + 2.0 * (lambda * s / alpha - mu * c) * pt.y
                + 12.0 * (lambda * lambda * c - a2 * mu * mu * c + 2.0 * alpha * lambda * mu * s)
                    * pt.t
        }
        Family::Hyperbolic => {
            let s = (alpha * chi).sinh();
            let c = (alpha * chi).cosh();
            rho + pt.x * c
                - 2.0 * (lambda * s / alpha + mu * c) * pt.y
                - 12.0 * (lambda * lambda * c + a2 * mu * mu * c + 2.0 * alpha * lambda * mu * s)
                    * pt.t
        }
        Family::Soliton => panic!("phase_upsilon is defined for the spectral families only"),
    }
}

/// d(Gamma)/dx; Gamma is affine in x.
pub fn gamma_x_slope(mode: &SpectralMode) -> f64 {
    mode.lambda
}

/// d(Upsilon)/dx; Upsilon is affine in x.
pub fn upsilon_x_slope(mode: &SpectralMode, family: Family, alpha: f64) -> f64 {
    match family {
        Family::Trigonometric => (alpha * mode.chi).cos(),
        Family::Hyperbolic => (alpha * mode.chi).cosh(),
        Family::Soliton => panic!("upsilon_x_slope is defined for the spectral families only"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn mode(lambda: f64, mu: f64, chi: f64, gamma: f64, rho: f64) -> SpectralMode {
        SpectralMode::new(lambda, mu, chi, gamma, rho)
    }

    // Independent re-evaluation used as the term-by-term oracle: accumulates
    // the printed formula one monomial at a time.
    fn gamma_oracle(m: &SpectralMode, pt: &EvalPoint, family: Family, alpha: f64) -> f64 {
        let sign = match family {
            Family::Trigonometric => 1.0,
            Family::Hyperbolic => -1.0,
            Family::Soliton => unreachable!(),
        };
        let mut acc = m.gamma;
        acc += m.lambda * pt.x;
        acc += -2.0 * m.lambda * m.mu * pt.y;
        let cubic = match family {
            Family::Trigonometric => m.lambda.powi(2) - 3.0 * alpha.powi(2) * m.mu.powi(2),
            _ => m.lambda.powi(2) + 3.0 * alpha.powi(2) * m.mu.powi(2),
        };
        acc + sign * 4.0 * m.lambda * cubic * pt.t
    }

    fn upsilon_oracle(m: &SpectralMode, pt: &EvalPoint, family: Family, alpha: f64) -> f64 {
        match family {
            Family::Trigonometric => {
                let c = (alpha * m.chi).cos();
                let s = (alpha * m.chi).sin();
                m.rho
                    + pt.x * c
                    + 2.0 * (m.lambda * s / alpha) * pt.y
                    - 2.0 * m.mu * c * pt.y
                    + 12.0 * m.lambda.powi(2) * c * pt.t
                    - 12.0 * alpha.powi(2) * m.mu.powi(2) * c * pt.t
                    + 24.0 * alpha * m.lambda * m.mu * s * pt.t
            }
            Family::Hyperbolic => {
                let c = (alpha * m.chi).cosh();
                let s = (alpha * m.chi).sinh();
                m.rho
                    + pt.x * c
                    - 2.0 * (m.lambda * s / alpha) * pt.y
                    - 2.0 * m.mu * c * pt.y
                    - 12.0 * m.lambda.powi(2) * c * pt.t
                    - 12.0 * alpha.powi(2) * m.mu.powi(2) * c * pt.t
                    - 24.0 * alpha * m.lambda * m.mu * s * pt.t
            }
            Family::Soliton => unreachable!(),
        }
    }

    #[test]
    fn gamma_linear_term_only() {
        let m = mode(0.5, -0.1, 0.0, 0.0, 0.0);
        let g = phase_gamma(&m, &EvalPoint::new(1.0, 0.0, 0.0), Family::Trigonometric, 1.0);
        assert_eq!(g, 0.5);
    }

    #[test]
    fn gamma_vanishes_at_origin() {
        let m = mode(0.5, -0.1, 0.0, 0.0, 0.0);
        let g = phase_gamma(&m, &EvalPoint::new(0.0, 0.0, 0.0), Family::Trigonometric, 1.0);
        assert_eq!(g, 0.0);
    }

    #[test]
    fn gamma_matches_term_by_term_oracle() {
        let m = mode(0.65, -0.1, 0.0, 0.0, 0.0);
        let pt = EvalPoint::new(1.0, 1.0, 1.0);
        let got = phase_gamma(&m, &pt, Family::Trigonometric, 1.0);
        let want = gamma_oracle(&m, &pt, Family::Trigonometric, 1.0);
        assert_relative_eq!(got, want, max_relative = 1e-15);
        // Also pin the hand-computed value.
        assert_relative_eq!(got, 1.8005, max_relative = 1e-12);
    }

    #[test]
    fn gamma_hyperbolic_matches_oracle() {
        let m = mode(1.0, 0.05, 0.6, 0.3, 0.0);
        let pt = EvalPoint::new(0.7, -1.2, 0.4);
        let got = phase_gamma(&m, &pt, Family::Hyperbolic, 1.0);
        let want = gamma_oracle(&m, &pt, Family::Hyperbolic, 1.0);
        assert_relative_eq!(got, want, max_relative = 1e-15);
    }

    #[test]
    fn upsilon_unit_x_coefficient() {
        let m = mode(0.5, -0.1, 0.0, 0.0, 0.0);
        let u = phase_upsilon(&m, &EvalPoint::new(1.0, 0.0, 0.0), Family::Trigonometric, 1.0);
        assert_eq!(u, 1.0);
    }

    #[test]
    fn upsilon_offset_only_at_origin() {
        let m = mode(0.7, 0.3, 1.1, 2.0, 5.0);
        let u = phase_upsilon(&m, &EvalPoint::new(0.0, 0.0, 0.0), Family::Trigonometric, 1.0);
        assert_eq!(u, 5.0);
        let u = phase_upsilon(&m, &EvalPoint::new(0.0, 0.0, 0.0), Family::Hyperbolic, 1.0);
        assert_eq!(u, 5.0);
    }

    #[test]
    fn upsilon_hyperbolic_matches_oracle() {
        let m = mode(1.0, 0.05, 0.6, 0.0, 0.0);
        let pt = EvalPoint::new(1.0, 1.0, 0.0);
        let got = phase_upsilon(&m, &pt, Family::Hyperbolic, 1.0);
        let want = upsilon_oracle(&m, &pt, Family::Hyperbolic, 1.0);
        assert_relative_eq!(got, want, max_relative = 1e-15);
        // cosh(0.6) - 2 sinh(0.6) - 0.1 cosh(0.6), hand-evaluated.
        assert_relative_eq!(got, -0.206_388_467_878_441_55, max_relative = 1e-13);
    }

    #[test]
    fn upsilon_trig_matches_oracle() {
        let m = mode(0.65, -0.1, 0.105 * std::f64::consts::PI, 0.0, 0.0);
        let pt = EvalPoint::new(-0.4, 2.3, 0.8);
        let got = phase_upsilon(&m, &pt, Family::Trigonometric, 1.0);
        let want = upsilon_oracle(&m, &pt, Family::Trigonometric, 1.0);
        assert_relative_eq!(got, want, max_relative = 1e-14);
    }

    #[test]
    fn x_slopes_match_phase_differences() {
        let m = mode(0.65, -0.1, 0.33, 0.2, -0.4);
        for family in [Family::Trigonometric, Family::Hyperbolic] {
            let p0 = EvalPoint::new(2.0, 1.0, 0.5);
            let p1 = EvalPoint::new(3.0, 1.0, 0.5);
            let dg = phase_gamma(&m, &p1, family, 1.0) - phase_gamma(&m, &p0, family, 1.0);
            let du = phase_upsilon(&m, &p1, family, 1.0) - phase_upsilon(&m, &p0, family, 1.0);
            assert_relative_eq!(dg, gamma_x_slope(&m), max_relative = 1e-12);
            assert_relative_eq!(du, upsilon_x_slope(&m, family, 1.0), max_relative = 1e-12);
        }
    }
}
