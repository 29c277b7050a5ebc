//! Incomplete Lipschitz-Hankel integrals over the modified Bessel kernel:
//!
//!   Ie_{m,n}(z; a) = int_0^z x^m e^{-a x} I_n(x) dx,
//!
//! with a finite incomplete-gamma closed form at half-integer n and the
//! order-shift bounds at integer n.

use crate::error::{Error, Result};
use crate::eval::{EvalResult, Method};
use crate::quad::{integrate, QuadConfig};
use crate::special::{bessel_i_scaled, factorial, gamma_lower, SQRT_PI};

/// Parameters (m, n, a, z) of Ie_{m,n}(z; a); m, n, z >= 0, a real.
///
/// The argument order fixes one canonical signature for a function the
/// literature writes several ways around.
#[derive(Clone, Copy, Debug)]
pub struct IlhiParams {
    m: f64,
    n: f64,
    a: f64,
    z: f64,
}

impl IlhiParams {
    pub fn new(m: f64, n: f64, a: f64, z: f64) -> Result<Self> {
        for (name, v) in [("m", m), ("n", n), ("z", z)] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::Domain(format!(
                    "ilhi: {name} must be finite and >= 0, got {v}"
                )));
            }
        }
        if !a.is_finite() {
            return Err(Error::Domain(format!("ilhi: a must be finite, got {a}")));
        }
        Ok(IlhiParams { m, n, a, z })
    }

    pub fn m(&self) -> f64 {
        self.m
    }
    pub fn n(&self) -> f64 {
        self.n
    }
    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn with_n(&self, n: f64) -> Result<Self> {
        Self::new(self.m, n, self.a, self.z)
    }
}

/// Defining integral by the adaptive oracle. Zero at z = 0; nondecreasing
/// in z (the integrand is nonnegative for a >= 0).
///
/// For a < 1 the integrand grows like e^{(1-a)x}; the evaluation is refused
/// once that factor would overflow.
pub fn ilhi_quad(p: IlhiParams, cfg: &QuadConfig) -> Result<EvalResult> {
    let IlhiParams { m, n, a, z } = p;
    if (1.0 - a) * z > 700.0 {
        return Err(Error::Overflow(format!(
            "e^((1-a)x) overflows on [0, {z}] for a = {a}"
        )));
    }
    let r = integrate(
        |x| x.powf(m) * ((1.0 - a) * x).exp() * bessel_i_scaled(n, x),
        0.0,
        z,
        cfg,
    )?;
    Ok(EvalResult {
        value: r.value,
        method: Method::Quadrature,
        est_error: r.est_error,
    })
}

/// Finite closed form at half-integer n = N + 1/2:
///
///   Ie_{m,n}(z; a) = sum_{k=0}^{N} (N+k)! / (sqrt(pi) k! (N-k)! 2^{k+1/2})
///       [ (-1)^k gamma(P, (a-1)z)/(a-1)^P + (-1)^{N+1} gamma(P, (a+1)z)/(a+1)^P ],
///
/// with P = m - k + 1/2. Requires m >= n (so every P stays positive) and
/// a > 1 (the first gamma needs a positive scale; a <= 1 runs through the
/// quadrature path instead).
pub fn ilhi_closed(p: IlhiParams) -> Result<EvalResult> {
    let IlhiParams { m, n, a, z } = p;
    let twice_n = 2.0 * n;
    let twice_round = twice_n.round();
    if (twice_n - twice_round).abs() > 1e-9 || twice_round < 1.0 || (twice_round as i64) % 2 != 1 {
        return Err(Error::Domain(format!(
            "closed form requires n + 0.5 in N (half-integer n >= 1/2), got n = {n}"
        )));
    }
    if m < n - 1e-12 {
        return Err(Error::Domain(format!(
            "closed form requires m >= n, got m = {m}, n = {n}"
        )));
    }
    if a <= 1.0 {
        return Err(Error::Domain(format!(
            "closed form requires a > 1 (the gamma(P, (a-1)z) scale); \
             a = {a} is served by the quadrature path"
        )));
    }
    let n_cap = ((twice_round as i64) - 1) / 2;
    let sign_last = if (n_cap + 1) % 2 == 0 { 1.0 } else { -1.0 };
    let mut value = 0.0f64;
    let mut pow2 = std::f64::consts::SQRT_2; // 2^{k+1/2}
    for k in 0..=n_cap {
        let c = factorial((n_cap + k) as u32)
            / (SQRT_PI * factorial(k as u32) * factorial((n_cap - k) as u32) * pow2);
        let sign_k = if k % 2 == 0 { 1.0 } else { -1.0 };
        let p_exp = m - k as f64 + 0.5;
        let t_minus = gamma_lower(p_exp, (a - 1.0) * z)? / (a - 1.0).powf(p_exp);
        let t_plus = gamma_lower(p_exp, (a + 1.0) * z)? / (a + 1.0).powf(p_exp);
        value += c * (sign_k * t_minus + sign_last * t_plus);
        pow2 *= 2.0;
    }
    Ok(EvalResult::exact(value, Method::ClosedForm))
}

/// Lower bound at integer n: the closed form at order n + 1/2
/// (strict because the integrals are strictly decreasing in the order).
pub fn ilhi_lower(p: IlhiParams) -> Result<EvalResult> {
    if (p.n - p.n.round()).abs() > 1e-9 {
        return Err(Error::Domain(format!(
            "the lower bound applies at integer n, got {}",
            p.n
        )));
    }
    let mut r = ilhi_closed(p.with_n(p.n + 0.5)?)?;
    r.method = Method::BoundLower;
    Ok(r)
}

/// Upper bound at integer n >= 1: the closed form at order n - 1/2.
pub fn ilhi_upper(p: IlhiParams) -> Result<EvalResult> {
    if (p.n - p.n.round()).abs() > 1e-9 {
        return Err(Error::Domain(format!(
            "the upper bound applies at integer n, got {}",
            p.n
        )));
    }
    if p.n < 1.0 {
        return Err(Error::Domain(
            "the upper bound needs n >= 1 (n = 0 would require order -1/2)".into(),
        ));
    }
    let mut r = ilhi_closed(p.with_n(p.n - 0.5)?)?;
    r.method = Method::BoundUpper;
    Ok(r)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    fn p(m: f64, n: f64, a: f64, z: f64) -> IlhiParams {
        IlhiParams::new(m, n, a, z).unwrap()
    }

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    // 22-digit quadrature references
    const ZE_1_05_2_3: f64 = 0.246_081_763_320_321_240_60;
    const ZE_2_15_15_5: f64 = 1.067_256_075_394_156_808_2;
    const ZE_3_25_3_2: f64 = 0.006_740_334_863_310_115_426_9;

    #[test]
    fn quad_reference_values() {
        for (pp, want) in [
            (p(1.0, 0.5, 2.0, 3.0), ZE_1_05_2_3),
            (p(2.0, 1.5, 1.5, 5.0), ZE_2_15_15_5),
            (p(3.0, 2.5, 3.0, 2.0), ZE_3_25_3_2),
        ] {
            let r = ilhi_quad(pp, &cfg()).unwrap();
            assert!(
                (r.value - want).abs() <= r.est_error.max(1e-13),
                "Ze({},{};{},{}) = {}, want {want}",
                pp.m(),
                pp.n(),
                pp.a(),
                pp.z(),
                r.value
            );
        }
    }

    #[test]
    fn quad_empty_range_and_growth_guard() {
        assert_eq!(ilhi_quad(p(1.0, 0.5, 2.0, 0.0), &cfg()).unwrap().value, 0.0);
        assert!(matches!(
            ilhi_quad(p(1.0, 0.0, 0.0, 800.0), &cfg()),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn quad_nondecreasing_in_z() {
        let mut prev = 0.0;
        for i in 1..=10 {
            let v = ilhi_quad(p(2.0, 1.0, 1.5, i as f64 * 0.5), &cfg()).unwrap().value;
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn closed_form_matches_oracle() {
        // single k = 0 term with P = 3/2
        let c = ilhi_closed(p(1.0, 0.5, 2.0, 3.0)).unwrap();
        assert!(((c.value - ZE_1_05_2_3) / ZE_1_05_2_3).abs() < 1e-12);
        // three-term sum, k in {0, 1, 2}
        let c = ilhi_closed(p(3.0, 2.5, 3.0, 2.0)).unwrap();
        assert!(((c.value - ZE_3_25_3_2) / ZE_3_25_3_2).abs() < 1e-11);
        // z -> 0+: gamma(P, 0) = 0 in both terms
        assert_eq!(ilhi_closed(p(1.0, 0.5, 2.0, 0.0)).unwrap().value, 0.0);
    }

    #[test]
    fn closed_form_agreement_grid() {
        for (m, n) in [(1.0, 0.5), (2.0, 1.5), (3.0, 2.5)] {
            for a in [1.5, 2.0, 3.0, 5.0] {
                for z in [0.5, 1.0, 2.0, 5.0, 10.0] {
                    let pp = p(m, n, a, z);
                    let q = ilhi_quad(pp, &cfg()).unwrap();
                    let c = ilhi_closed(pp).unwrap();
                    let rel = ((c.value - q.value) / q.value).abs();
                    assert!(
                        rel < 1e-9,
                        "ilhi closed vs quad at (m={m}, n={n}, a={a}, z={z}): rel={rel:e}"
                    );
                }
            }
        }
    }

    #[test]
    fn closed_form_domain() {
        assert!(ilhi_closed(p(1.0, 1.0, 2.0, 1.0)).is_err()); // integer n
        assert!(ilhi_closed(p(0.4, 0.5, 2.0, 1.0)).is_err()); // m < n
        assert!(ilhi_closed(p(1.0, 0.5, 1.0, 1.0)).is_err()); // a <= 1
        assert!(ilhi_closed(p(1.0, 0.5, 0.5, 1.0)).is_err());
    }

    #[test]
    fn quad_continuous_across_unit_scale() {
        // no jump in the quadrature path where the closed form switches off
        let below = ilhi_quad(p(2.0, 1.5, 1.0 - 1e-6, 3.0), &cfg()).unwrap().value;
        let above = ilhi_quad(p(2.0, 1.5, 1.0 + 1e-6, 3.0), &cfg()).unwrap().value;
        let mid = ilhi_quad(p(2.0, 1.5, 1.0, 3.0), &cfg()).unwrap().value;
        assert!(below > mid && mid > above); // decreasing in a
        assert!((below - above) / mid < 1e-4);
    }

    #[test]
    fn order_monotonicity() {
        for (m, a, z) in [(2.0, 2.0, 3.0), (3.0, 1.5, 5.0), (2.0, 3.0, 1.0)] {
            let mut prev = f64::INFINITY;
            for twice_n in 0..=4 {
                let v = ilhi_quad(p(m, twice_n as f64 / 2.0, a, z), &cfg()).unwrap().value;
                assert!(v < prev, "order monotonicity at m={m}, a={a}, z={z}");
                prev = v;
            }
        }
    }

    #[test]
    fn sandwich_at_integer_orders() {
        for (m, n) in [(2.0, 1.0), (3.0, 2.0)] {
            for a in [1.5, 2.0, 3.0, 5.0] {
                for z in [0.5, 1.0, 2.0, 5.0, 10.0] {
                    let pp = p(m, n, a, z);
                    let q = ilhi_quad(pp, &cfg()).unwrap().value;
                    let lo = ilhi_lower(pp).unwrap().value;
                    let hi = ilhi_upper(pp).unwrap().value;
                    assert!(
                        lo < q && q < hi,
                        "ilhi sandwich at (m={m}, n={n}, a={a}, z={z}): {lo} / {q} / {hi}"
                    );
                }
            }
        }
    }

    #[test]
    fn bounds_domain_checks() {
        assert!(ilhi_lower(p(1.0, 0.7, 2.0, 1.0)).is_err());
        assert!(ilhi_upper(p(1.0, 0.0, 2.0, 1.0)).is_err());
        // z = 0: all three vanish
        let pp = p(2.0, 1.0, 2.0, 0.0);
        assert_eq!(ilhi_lower(pp).unwrap().value, 0.0);
        assert_eq!(ilhi_upper(pp).unwrap().value, 0.0);
        assert_eq!(ilhi_quad(pp, &cfg()).unwrap().value, 0.0);
    }
}
