//! Generalized Marcum Q-function of real order >= 1/2.

use crate::error::{Error, Result};
use crate::quad::{integrate_semi_infinite, QuadConfig, QuadResult};

use super::bessel::bessel_i_scaled;
use super::erf::gaussian_q;
use super::gamma::gamma_regularized_pair;

/// Marcum Q-function
///
///   Q_nu(a, b) = int_b^inf t (t/a)^{nu-1} e^{-(t^2+a^2)/2} I_{nu-1}(a t) dt
///
/// by adaptive quadrature of the defining integral (the a -> 0 limit is the
/// regularized upper incomplete gamma at b^2/2). Monotone increasing in nu.
pub fn marcum_q(order: f64, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    if !(order >= 0.5) {
        return Err(Error::Domain(format!(
            "marcum_q requires order >= 1/2, got {order}"
        )));
    }
    if a < 0.0 || b < 0.0 {
        return Err(Error::Domain(format!(
            "marcum_q requires a, b >= 0, got a={a}, b={b}"
        )));
    }
    if b == 0.0 {
        // integral of the full (normalized) density
        return Ok(QuadResult {
            value: 1.0,
            est_error: 0.0,
            evaluations: 0,
        });
    }
    if a == 0.0 {
        let (_, q) = gamma_regularized_pair(order, b * b / 2.0)?;
        return Ok(QuadResult {
            value: q,
            est_error: 4.0 * f64::EPSILON * q,
            evaluations: 0,
        });
    }
    // e^{-(t^2+a^2)/2} I_{nu-1}(a t) = e^{-(t-a)^2/2} [e^{-a t} I_{nu-1}(a t)]
    let nu = order;
    let integrand = move |t: f64| {
        let gauss = (-(t - a) * (t - a) / 2.0).exp();
        if gauss == 0.0 {
            return 0.0;
        }
        t * (t / a).powf(nu - 1.0) * gauss * bessel_i_scaled(nu - 1.0, a * t)
    };
    let mut r = integrate_semi_infinite(integrand, b, cfg)?;
    // the true value lies in [0, 1]; clip rounding spill at the ends
    r.value = r.value.clamp(0.0, 1.0);
    Ok(r)
}

/// Half-order closed form Q_{1/2}(a, b) = Q(b + a) + Q(b - a).
pub fn marcum_q_half(a: f64, b: f64) -> f64 {
    gaussian_q(b + a) + gaussian_q(b - a)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    fn q(order: f64, a: f64, b: f64) -> f64 {
        marcum_q(order, a, b, &QuadConfig::default()).unwrap().value
    }

    #[test]
    fn full_support_is_one() {
        assert_eq!(q(1.0, 2.3, 0.0), 1.0);
        assert_eq!(q(0.5, 0.7, 0.0), 1.0);
    }

    #[test]
    fn half_order_matches_gaussian_form() {
        // Q_{1/2}(0, b) = 2 Q(b)
        for &b in &[0.5, 1.0, 3.0] {
            let direct = q(0.5, 0.0, b);
            assert!((direct - 2.0 * gaussian_q(b)).abs() < 1e-13);
        }
        // quadrature against the closed form at a > 0
        for &(a, b) in &[(1.0, 2.0), (2.0, 1.0), (0.3, 0.4), (3.0, 3.0)] {
            let by_quad = q(0.5, a, b);
            let closed = marcum_q_half(a, b);
            assert!(
                (by_quad - closed).abs() < 1e-10,
                "Q_1/2({a},{b}): quad={by_quad}, closed={closed}"
            );
        }
    }

    #[test]
    fn frozen_references() {
        // 22-digit quadrature references
        assert!((q(1.0, 1.0, 1.0) - 0.732_879_803_796_820_218_25).abs() < 1e-12);
        assert!((q(0.5, 1.0, 2.0) - 0.160_005_151_963_087_145_94).abs() < 1e-12);
        assert!((q(1.5, 1.0, 2.0) - 0.397_544_028_070_292_488_56).abs() < 1e-12);
        assert!((q(2.0, 2.0, 1.0) - 0.983_391_408_381_419_935_94).abs() < 1e-12);
        let want = 0.123_381_447_854_822_610_14; // Q_1(sqrt2, 2 sqrt2)
        assert!((q(1.0, std::f64::consts::SQRT_2, 2.0 * std::f64::consts::SQRT_2) - want).abs() < 1e-12);
    }

    #[test]
    fn marcum_q_half_trivial() {
        assert_eq!(marcum_q_half(0.0, 0.0), 1.0);
        for &a in &[0.5, 1.0, 2.0] {
            assert!((marcum_q_half(a, 0.0) - 1.0).abs() < 1e-15);
        }
        // 22-digit reference Q(3) + Q(1)
        assert!((marcum_q_half(1.0, 2.0) - 0.160_005_151_963_087_145_94).abs() < 1e-15);
    }

    #[test]
    fn strictly_increasing_in_order() {
        for &(a, b) in &[(1.0, 1.0), (2.0, 0.5), (0.5, 2.0)] {
            let mut prev = 0.0;
            for twice_nu in 1..=5 {
                let v = q(twice_nu as f64 / 2.0, a, b);
                assert!(v > prev, "order monotonicity failed at (a,b)=({a},{b})");
                prev = v;
            }
        }
    }

    #[test]
    fn values_stay_in_unit_interval() {
        for &(nu, a, b) in &[(0.5, 4.0, 0.1), (1.0, 0.1, 4.0), (2.5, 3.0, 3.0)] {
            let v = q(nu, a, b);
            assert!((0.0..=1.0).contains(&v));
        }
    }

    #[test]
    fn domain_errors() {
        assert!(marcum_q(0.4, 1.0, 1.0, &QuadConfig::default()).is_err());
        assert!(marcum_q(1.0, -1.0, 1.0, &QuadConfig::default()).is_err());
    }
}
