//! The Rice Ie-function
//!
//!   Ie(k, x) = int_0^x e^{-t} I_0(k t) dt,   0 <= k <= 1, x >= 0,
//!
//! in all its representations: the defining integral, the trigonometric
//! integral, two series, two first-order Marcum forms, the integration-by-
//! parts identity, and closed-form upper/lower bounds.

use crate::error::{Error, Result};
use crate::eval::{EvalResult, Method};
use crate::quad::{integrate, QuadConfig};
use crate::special::{bessel_i_scaled, erf, gamma, gaussian_q, marcum_q, struve_l};

/// Parameters (k, x) of Ie(k, x); 0 <= k <= 1 and x >= 0.
#[derive(Clone, Copy, Debug)]
pub struct RiceParams {
    k: f64,
    x: f64,
}

impl RiceParams {
    pub fn new(k: f64, x: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&k) || !k.is_finite() {
            return Err(Error::Domain(format!("rice: k must lie in [0, 1], got {k}")));
        }
        if !(x >= 0.0) || !x.is_finite() {
            return Err(Error::Domain(format!(
                "rice: x must be finite and >= 0, got {x}"
            )));
        }
        Ok(RiceParams { k, x })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    /// a = sqrt(x) sqrt(1 + sqrt(1 - k^2))
    pub fn a(&self) -> f64 {
        let s = (1.0 - self.k * self.k).sqrt();
        self.x.sqrt() * (1.0 + s).sqrt()
    }

    /// b = sqrt(x) sqrt(1 - sqrt(1 - k^2)), with a >= b >= 0
    pub fn b(&self) -> f64 {
        let s = (1.0 - self.k * self.k).sqrt();
        self.x.sqrt() * (1.0 - s).sqrt()
    }
}

/// e^{-x} I_0(k x) without overflow: e^{-x(1-k)} * [e^{-kx} I_0(kx)].
fn exp_neg_x_i0_kx(k: f64, x: f64) -> f64 {
    (-x * (1.0 - k)).exp() * bessel_i_scaled(0.0, k * x)
}

fn require_k_below_one(k: f64, what: &str) -> Result<()> {
    if k >= 1.0 {
        return Err(Error::Domain(format!(
            "{what} is singular at k = 1 (divides by sqrt(1 - k^2))"
        )));
    }
    Ok(())
}

/// Step `x` by `n` ulps away from the true value so the returned float is a
/// bound on the bound itself: the strict-inequality postconditions of
/// `ie_lower`/`ie_upper` must survive the few ulps of rounding in their own
/// evaluation. Outward rounding, interval-arithmetic style.
fn nudge_ulps(x: f64, n: i32) -> f64 {
    let mut v = x;
    for _ in 0..n.unsigned_abs() {
        let bits = v.to_bits();
        v = if v == 0.0 {
            f64::from_bits(1) * if n > 0 { 1.0 } else { -1.0 }
        } else if (v > 0.0) == (n > 0) {
            f64::from_bits(bits + 1) // away from zero
        } else {
            f64::from_bits(bits - 1) // toward zero
        };
    }
    v
}

/// Defining integral, evaluated by the adaptive oracle. Nonnegative and
/// nondecreasing in x.
pub fn ie_quad(p: RiceParams, cfg: &QuadConfig) -> Result<EvalResult> {
    let (k, x) = (p.k, p.x);
    let r = integrate(
        |t| (-t * (1.0 - k)).exp() * bessel_i_scaled(0.0, k * t),
        0.0,
        x,
        cfg,
    )?;
    Ok(EvalResult {
        value: r.value,
        method: Method::Quadrature,
        est_error: r.est_error,
    })
}

/// Trigonometric representation
///
///   Ie(k, x) = 1/sqrt(1-k^2) - (1/pi) int_0^pi e^{-x(1 - k cos h)} / (1 - k cos h) dh.
///
/// (The exponent must carry the k; dropping it breaks the identity already
/// at k = 0.) Singular at k = 1.
pub fn ie_alt_integral(p: RiceParams, cfg: &QuadConfig) -> Result<EvalResult> {
    require_k_below_one(p.k, "the trigonometric representation")?;
    let (k, x) = (p.k, p.x);
    let s = (1.0 - k * k).sqrt();
    let r = integrate(
        |th| {
            let d = 1.0 - k * th.cos();
            (-x * d).exp() / d
        },
        0.0,
        std::f64::consts::PI,
        cfg,
    )?;
    Ok(EvalResult {
        value: 1.0 / s - r.value / std::f64::consts::PI,
        method: Method::AltIntegral,
        est_error: r.est_error / std::f64::consts::PI + 2.0 * f64::EPSILON / s,
    })
}

/// Struve-function series
///
///   Ie(k, x) = sqrt(pi x / (2 sqrt(1-k^2))) e^{-x}
///              sum_n w_n [ L_{n+1/2}(y)/sqrt(1-k^2) + L_{n-1/2}(y) ],
///   w_n = (x k^2 / (2 sqrt(1-k^2)))^n / n!,  y = x sqrt(1-k^2),
///
/// truncated after `terms` terms; est_error is the magnitude of the last
/// added term. Converges quickly for large x sqrt(1-k^2) and small k x.
pub fn ie_series3(p: RiceParams, terms: usize) -> Result<EvalResult> {
    require_k_below_one(p.k, "the Struve series")?;
    if terms < 1 {
        return Err(Error::Domain("series3 requires terms >= 1".into()));
    }
    let (k, x) = (p.k, p.x);
    if x == 0.0 {
        return Ok(EvalResult {
            value: 0.0,
            method: Method::Series3,
            est_error: 0.0,
        });
    }
    let s = (1.0 - k * k).sqrt();
    let y = x * s;
    let pref = (x * std::f64::consts::PI / (2.0 * s)).sqrt() * (-x).exp();
    let ratio = x * k * k / (2.0 * s);
    let mut w = 1.0f64;
    let mut sum = 0.0f64;
    let mut last = 0.0f64;
    for n in 0..terms {
        if n > 0 {
            w *= ratio / n as f64;
        }
        let bracket = struve_l(n as f64 + 0.5, y)? / s + struve_l(n as f64 - 0.5, y)?;
        last = w * bracket;
        if !last.is_finite() {
            return Err(Error::NonConvergence {
                what: format!("series3 produced a non-finite term at n={n} (k={k}, x={x})"),
                terms: n,
            });
        }
        sum += last;
    }
    Ok(EvalResult {
        value: pref * sum,
        method: Method::Series3,
        est_error: (pref * last).abs(),
    })
}

/// Bessel-function series
///
///   Ie(k, x) = x e^{-x} (sqrt(pi)/2) sum_n rho^{n+1} I_{n+1}(kx)/Gamma(n+5/2)
///            + x e^{-x} [ I_0(kx) + (sqrt(pi)/(2k)) sum_n rho^n I_{n+1}(kx)/Gamma(n+3/2) ],
///   rho = x (1 - k^2) / (2k),
///
/// truncated after `terms` terms. Converges quickly for small x sqrt(1-k^2)
/// and large k x; at k = 1 only the n = 0 term of the second sum survives.
pub fn ie_series4(p: RiceParams, terms: usize) -> Result<EvalResult> {
    if p.k <= 0.0 {
        return Err(Error::Domain(
            "series4 divides by k; k must be positive".into(),
        ));
    }
    if terms < 1 {
        return Err(Error::Domain("series4 requires terms >= 1".into()));
    }
    let (k, x) = (p.k, p.x);
    if x == 0.0 {
        return Ok(EvalResult {
            value: 0.0,
            method: Method::Series4,
            est_error: 0.0,
        });
    }
    let rho = x * (1.0 - k * k) / (2.0 * k);
    // e^{-x} I_j(kx) = e^{-x(1-k)} * scaled; keep the common factor outside
    let damp = (-x * (1.0 - k)).exp();
    let sqrt_pi = crate::special::SQRT_PI;
    let mut sum1 = 0.0f64;
    let mut sum2 = 0.0f64;
    let mut rho_pow = 1.0f64; // rho^n
    let mut last = 0.0f64;
    for n in 0..terms {
        let nf = n as f64;
        let i_next = bessel_i_scaled(nf + 1.0, k * x);
        let t1 = rho_pow * rho * i_next / gamma(nf + 2.5);
        let t2 = rho_pow * i_next / gamma(nf + 1.5);
        if !(t1.is_finite() && t2.is_finite()) {
            return Err(Error::NonConvergence {
                what: format!("series4 produced a non-finite term at n={n} (k={k}, x={x})"),
                terms: n,
            });
        }
        sum1 += t1;
        sum2 += t2;
        last = x * damp * (sqrt_pi / 2.0 * t1 + sqrt_pi / (2.0 * k) * t2);
        rho_pow *= rho;
    }
    let value =
        x * damp * (sqrt_pi / 2.0 * sum1 + bessel_i_scaled(0.0, k * x) + sqrt_pi / (2.0 * k) * sum2);
    Ok(EvalResult {
        value,
        method: Method::Series4,
        est_error: last.abs(),
    })
}

/// First Marcum form: Ie = [2 Q_1(a, b) - e^{-x} I_0(kx) - 1] / sqrt(1-k^2).
pub fn ie_marcum5(p: RiceParams, cfg: &QuadConfig) -> Result<EvalResult> {
    require_k_below_one(p.k, "the Marcum representation")?;
    let s = (1.0 - p.k * p.k).sqrt();
    let q = marcum_q(1.0, p.a(), p.b(), cfg)?;
    let value = (2.0 * q.value - exp_neg_x_i0_kx(p.k, p.x) - 1.0) / s;
    Ok(EvalResult {
        value,
        method: Method::Marcum5,
        est_error: 2.0 * q.est_error / s + 4.0 * f64::EPSILON * value.abs(),
    })
}

/// Second Marcum form: Ie = [Q_1(a, b) - Q_1(b, a)] / sqrt(1-k^2).
pub fn ie_marcum6(p: RiceParams, cfg: &QuadConfig) -> Result<EvalResult> {
    require_k_below_one(p.k, "the Marcum representation")?;
    let s = (1.0 - p.k * p.k).sqrt();
    let q_ab = marcum_q(1.0, p.a(), p.b(), cfg)?;
    let q_ba = marcum_q(1.0, p.b(), p.a(), cfg)?;
    let value = (q_ab.value - q_ba.value) / s;
    Ok(EvalResult {
        value,
        method: Method::Marcum6,
        est_error: (q_ab.est_error + q_ba.est_error) / s + 4.0 * f64::EPSILON * value.abs(),
    })
}

/// Integration-by-parts identity
///
///   Ie(k, x) = 1 - e^{-x} I_0(kx) + k int_0^x e^{-t} I_1(kt) dt,
///
/// with the I_1 integral evaluated by quadrature. Must agree with `ie_quad`
/// to within the combined error estimates.
pub fn ie_lemma1_rhs(p: RiceParams, cfg: &QuadConfig) -> Result<EvalResult> {
    let (k, x) = (p.k, p.x);
    let r = integrate(
        |t| (-t * (1.0 - k)).exp() * bessel_i_scaled(1.0, k * t),
        0.0,
        x,
        cfg,
    )?;
    Ok(EvalResult {
        value: 1.0 - exp_neg_x_i0_kx(k, x) + k * r.value,
        method: Method::Lemma1Rhs,
        est_error: k * r.est_error + 4.0 * f64::EPSILON,
    })
}

/// Closed-form upper bound
///
///   Ie(k, x) < 1 - e^{-x} I_0(kx)
///            + sqrt(k/2) [ erf(sqrt(x) sqrt(1-k))/sqrt(1-k) - erf(sqrt(x) sqrt(1+k))/sqrt(1+k) ].
///
/// The k -> 0 limit degenerates to 1 - e^{-x} (the exact Ie(0, x)); the
/// k -> 1 limit replaces erf(sqrt(x(1-k)))/sqrt(1-k) by 2 sqrt(x/pi).
/// Strict for x > 0, 0 < k < 1; the returned float is rounded outward so
/// the strict inequality survives the rounding of its own evaluation.
pub fn ie_upper(p: RiceParams) -> Result<EvalResult> {
    let (k, x) = (p.k, p.x);
    if x == 0.0 {
        return Ok(EvalResult::exact(0.0, Method::BoundUpper));
    }
    let value = if k == 0.0 {
        1.0 - (-x).exp()
    } else {
        let first = if k == 1.0 {
            2.0 * (x / std::f64::consts::PI).sqrt()
        } else {
            erf((x * (1.0 - k)).sqrt()) / (1.0 - k).sqrt()
        };
        let second = erf((x * (1.0 + k)).sqrt()) / (1.0 + k).sqrt();
        1.0 - exp_neg_x_i0_kx(k, x) + (k / 2.0).sqrt() * (first - second)
    };
    Ok(EvalResult::exact(nudge_ulps(value, 4), Method::BoundUpper))
}

/// Closed-form lower bound
///
///   Ie(k, x) > [2 Q(b+a) + 2 Q(b-a) - e^{-x} I_0(kx) - 1] / sqrt(1-k^2),
///
/// with Q the Gaussian Q-function. Strict for x > 0, k > 0; for large x it
/// becomes a highly accurate approximation to Ie. Singular at k = 1. The
/// returned float is rounded outward so the strict inequality survives the
/// rounding of its own evaluation.
pub fn ie_lower(p: RiceParams) -> Result<EvalResult> {
    require_k_below_one(p.k, "the lower bound")?;
    let (k, x) = (p.k, p.x);
    if x == 0.0 {
        return Ok(EvalResult::exact(0.0, Method::BoundLower));
    }
    let s = (1.0 - k * k).sqrt();
    let (a, b) = (p.a(), p.b());
    let value = (2.0 * gaussian_q(b + a) + 2.0 * gaussian_q(b - a) - exp_neg_x_i0_kx(k, x) - 1.0) / s;
    Ok(EvalResult::exact(nudge_ulps(value, -4), Method::BoundLower))
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    const E: f64 = std::f64::consts::E;

    fn p(k: f64, x: f64) -> RiceParams {
        RiceParams::new(k, x).unwrap()
    }

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    // 22-digit quadrature references for Ie(k, x)
    const IE_05_5: f64 = 1.117_031_340_074_130_251_6;
    const IE_05_7: f64 = 1.142_768_166_385_401_242_0;
    const IE_09_10: f64 = 1.919_948_123_793_254_781_8;
    const IE_07_4: f64 = 1.206_193_988_118_892_584_9;
    const IE_03_20: f64 = 1.048_284_645_470_011_745_7;
    const IE_099_2: f64 = 1.043_471_998_197_502_035_4;
    const IE_1_2: f64 = 1.047_555_223_605_217_397_4;

    #[test]
    fn params_validation() {
        assert!(RiceParams::new(-0.1, 1.0).is_err());
        assert!(RiceParams::new(1.1, 1.0).is_err());
        assert!(RiceParams::new(0.5, -1.0).is_err());
        assert!(RiceParams::new(0.5, f64::NAN).is_err());
    }

    #[test]
    fn derived_a_b_ordering() {
        let pp = p(0.6, 3.0);
        assert!(pp.a() >= pp.b() && pp.b() >= 0.0);
        // a^2 + b^2 = 2x and a b = k x
        assert!((pp.a().powi(2) + pp.b().powi(2) - 6.0).abs() < 1e-12);
        assert!((pp.a() * pp.b() - 1.8).abs() < 1e-12);
    }

    #[test]
    fn quad_trivial_and_k0() {
        assert_eq!(ie_quad(p(0.7, 0.0), &cfg()).unwrap().value, 0.0);
        let v = ie_quad(p(0.0, 1.0), &cfg()).unwrap().value;
        assert!((v - (1.0 - 1.0 / E)).abs() < 1e-14);
    }

    #[test]
    fn quad_reference_value() {
        let r = ie_quad(p(0.5, 5.0), &cfg()).unwrap();
        assert!((r.value - IE_05_5).abs() <= r.est_error.max(1e-13));
    }

    #[test]
    fn quad_nondecreasing_in_x() {
        let mut prev = 0.0;
        for i in 0..12 {
            let v = ie_quad(p(0.8, i as f64 * 0.7), &cfg()).unwrap().value;
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn alt_integral_matches_quad() {
        for (k, x, want) in [
            (0.0, 1.0, 1.0 - 1.0 / E),
            (0.5, 5.0, IE_05_5),
            (0.9, 10.0, IE_09_10),
        ] {
            let r = ie_alt_integral(p(k, x), &cfg()).unwrap();
            assert!(
                (r.value - want).abs() < 1e-11,
                "alt-integral at k={k}, x={x}: {} vs {want}",
                r.value
            );
        }
        assert!(ie_alt_integral(p(1.0, 2.0), &cfg()).is_err());
    }

    #[test]
    fn series3_regime_and_contract() {
        // k = 0: every n >= 1 term vanishes
        let r = ie_series3(p(0.0, 1.0), 1).unwrap();
        assert!((r.value - (1.0 - 1.0 / E)).abs() <= r.est_error.max(1e-13));

        // convergent regime: x sqrt(1-k^2) large, k x small
        let r = ie_series3(p(0.3, 20.0), 30).unwrap();
        assert!((r.value - IE_03_20).abs() < 1e-8);

        // partial-sum contract: one term leaves a visible remainder estimate
        let r1 = ie_series3(p(0.3, 20.0), 1).unwrap();
        assert!(r1.est_error > 0.0);

        assert!(ie_series3(p(0.3, 20.0), 0).is_err());
        assert!(ie_series3(p(1.0, 2.0), 10).is_err());
    }

    #[test]
    fn series4_regime_and_limits() {
        let r = ie_series4(p(0.99, 2.0), 25).unwrap();
        assert!((r.value - IE_099_2).abs() < 1e-8);

        // k = 1: the (1-k^2) powers vanish and the surviving terms are exact
        let r = ie_series4(p(1.0, 2.0), 25).unwrap();
        assert!((r.value - IE_1_2).abs() < 1e-12);

        assert_eq!(ie_series4(p(0.5, 0.0), 5).unwrap().value, 0.0);
        assert!(ie_series4(p(0.0, 1.0), 5).is_err());
    }

    #[test]
    fn marcum_forms_match_quad_and_each_other() {
        // k = 0, x = 1: Q_1(a, 0) = 1 and I_0(0) = 1 collapse the formula
        let r = ie_marcum5(p(0.0, 1.0), &cfg()).unwrap();
        assert!((r.value - (1.0 - 1.0 / E)).abs() < 1e-12);

        let m5 = ie_marcum5(p(0.5, 7.0), &cfg()).unwrap();
        let m6 = ie_marcum6(p(0.5, 7.0), &cfg()).unwrap();
        assert!((m5.value - IE_05_7).abs() < 1e-10);
        assert!((m6.value - IE_05_7).abs() < 1e-10);
        assert!((m5.value - m6.value).abs() < 1e-10);

        assert!(ie_marcum5(p(1.0, 2.0), &cfg()).is_err());
        assert!(ie_marcum6(p(1.0, 2.0), &cfg()).is_err());
    }

    #[test]
    fn lemma1_residual() {
        assert_eq!(ie_lemma1_rhs(p(0.4, 0.0), &cfg()).unwrap().value, 0.0);
        let r = ie_lemma1_rhs(p(0.0, 3.0), &cfg()).unwrap();
        assert!((r.value - (1.0 - (-3.0f64).exp())).abs() < 1e-14);

        let lhs = ie_quad(p(0.7, 4.0), &cfg()).unwrap();
        let rhs = ie_lemma1_rhs(p(0.7, 4.0), &cfg()).unwrap();
        assert!((lhs.value - IE_07_4).abs() < 1e-12);
        assert!((lhs.value - rhs.value).abs() < 1e-10);
    }

    #[test]
    fn upper_bound_properties() {
        // vanishes identically at x = 0
        assert_eq!(ie_upper(p(0.3, 0.0)).unwrap().value, 0.0);
        // 22-digit reference at (0.5, 1)
        let u = ie_upper(p(0.5, 1.0)).unwrap().value;
        assert!((u - 0.717_245_007_331_825_014_61).abs() < 1e-14);
        // strict bound against the oracle
        for (k, x, ie) in [(0.5, 1.0, 0.642_244_418_777_686_361_0), (0.5, 10.0, 1.152_433_137_286_947_765_0)] {
            let u = ie_upper(p(k, x)).unwrap().value;
            assert!(u > ie, "upper({k},{x}) = {u} not above {ie}");
        }
        // k = 0 degenerates to Ie itself
        let u = ie_upper(p(0.0, 2.0)).unwrap().value;
        assert!((u - (1.0 - (-2.0f64).exp())).abs() < 1e-15);
        // k = 1 analytic limit stays a bound
        let u = ie_upper(p(1.0, 2.0)).unwrap().value;
        assert!((u - 1.322_209_712_032_365_167_3).abs() < 1e-13);
        assert!(u > IE_1_2);
    }

    #[test]
    fn series_regimes() {
        // fast regime for the Struve series: x sqrt(1-k^2) large, k x small
        for (k, x) in [(0.05, 30.0), (0.1, 20.0), (0.1, 15.0)] {
            let pp = p(k, x);
            let s = ie_series3(pp, 40).unwrap().value;
            let q = ie_quad(pp, &cfg()).unwrap().value;
            assert!((s - q).abs() < 1e-8, "series3 regime at k={k}, x={x}");
        }
        // fast regime for the Bessel series: x sqrt(1-k^2) small, k x large
        for (k, x) in [(0.99, 7.0), (0.995, 6.0), (0.95, 8.0)] {
            let pp = p(k, x);
            let s = ie_series4(pp, 40).unwrap().value;
            let q = ie_quad(pp, &cfg()).unwrap().value;
            assert!((s - q).abs() < 1e-8, "series4 regime at k={k}, x={x}");
        }
    }

    #[test]
    fn representations_inherit_monotonicity_in_x() {
        for k in [0.3, 0.8] {
            let mut prev_m6 = -1.0;
            let mut prev_s4 = -1.0;
            for i in 1..=10 {
                let pp = p(k, i as f64);
                let m6 = ie_marcum6(pp, &cfg()).unwrap().value;
                let s4 = ie_series4(pp, 60).unwrap().value;
                assert!(m6 >= prev_m6);
                assert!(s4 >= prev_s4 - 1e-12);
                prev_m6 = m6;
                prev_s4 = s4;
            }
        }
    }

    #[test]
    fn three_halves_order_route_stays_below() {
        // the abandoned alternative lower-bound route: replacing I_1 by the
        // smaller I_{3/2} in the parts identity must stay below Ie
        for (k, x) in [(0.4, 2.0), (0.7, 5.0), (0.9, 10.0)] {
            let pp = p(k, x);
            let ie = ie_quad(pp, &cfg()).unwrap().value;
            let tail = integrate(
                |t| (-t * (1.0 - k)).exp() * bessel_i_scaled(1.5, k * t),
                0.0,
                x,
                &cfg(),
            )
            .unwrap()
            .value;
            let rhs = 1.0 - exp_neg_x_i0_kx(k, x) + k * tail;
            assert!(rhs < ie, "I_3/2 route not below Ie at k={k}, x={x}");
        }
    }

    #[test]
    fn lower_bound_properties() {
        // tight at k = 0
        let l = ie_lower(p(0.0, 1.0)).unwrap().value;
        assert!((l - (1.0 - 1.0 / E)).abs() < 1e-14);
        // 22-digit reference at (0.5, 1)
        let l = ie_lower(p(0.5, 1.0)).unwrap().value;
        assert!((l - 0.432_689_779_121_615_217_0).abs() < 1e-14);
        // strict bound below the oracle
        let l = ie_lower(p(0.5, 7.0)).unwrap().value;
        assert!(l < IE_05_7);
        // tightness at large x
        let l = ie_lower(p(0.5, 80.0)).unwrap().value;
        let ie = 1.154_700_538_379_251_528_5;
        assert!(((ie - l) / ie).abs() < 1e-6);
        assert!(ie_lower(p(1.0, 2.0)).is_err());
    }
}
