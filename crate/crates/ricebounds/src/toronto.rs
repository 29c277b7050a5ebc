//! The incomplete Toronto function
//!
//!   T_B(m, n, r) = 2 r^{n-m+1} e^{-r^2} int_0^B t^{m-n} e^{-t^2} I_n(2rt) dt,
//!
//! with its Marcum special case, two series representations, a finite
//! closed form at half-integer n, and the order-shift bounds.

use crate::error::{Error, Result};
use crate::eval::{EvalResult, Method};
use crate::quad::{integrate, QuadConfig};
use crate::special::{
    bessel_i_scaled, factorial, gamma, gamma_lower, gamma_regularized_pair, ln_gamma, marcum_q,
    SQRT_PI,
};

/// Parameters (m, n, r, B) of T_B(m, n, r); all nonnegative, B is the upper
/// integration limit.
#[derive(Clone, Copy, Debug)]
pub struct TorontoParams {
    m: f64,
    n: f64,
    r: f64,
    b: f64,
}

impl TorontoParams {
    pub fn new(m: f64, n: f64, r: f64, b: f64) -> Result<Self> {
        for (name, v) in [("m", m), ("n", n), ("r", r), ("B", b)] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::Domain(format!(
                    "toronto: {name} must be finite and >= 0, got {v}"
                )));
            }
        }
        Ok(TorontoParams { m, n, r, b })
    }

    pub fn m(&self) -> f64 {
        self.m
    }
    pub fn n(&self) -> f64 {
        self.n
    }
    pub fn r(&self) -> f64 {
        self.r
    }
    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn with_n(&self, n: f64) -> Result<Self> {
        Self::new(self.m, n, self.r, self.b)
    }
}

/// Defining integral, evaluated by the adaptive oracle.
///
/// The exponentials are combined as e^{-r^2} e^{-t^2} I_n(2rt)
/// = e^{-(t-r)^2} [e^{-2rt} I_n(2rt)], which stays bounded for any r.
/// At r = 0 the analytic limit applies: 0 for m < 2n+1, a gamma ratio at
/// m = 2n+1, and a divergence (domain error) for m > 2n+1.
pub fn toronto_quad(p: TorontoParams, cfg: &QuadConfig) -> Result<EvalResult> {
    let TorontoParams { m, n, r, b } = p;
    if r == 0.0 {
        let excess = m - (2.0 * n + 1.0);
        return if excess < 0.0 {
            Ok(EvalResult {
                value: 0.0,
                method: Method::Quadrature,
                est_error: 0.0,
            })
        } else if excess == 0.0 {
            let v = gamma_lower((m + 1.0) / 2.0, b * b)? / gamma(n + 1.0);
            Ok(EvalResult {
                value: v,
                method: Method::Quadrature,
                est_error: 4.0 * f64::EPSILON * v,
            })
        } else {
            Err(Error::Domain(format!(
                "T_B(m, n, r -> 0) diverges for m > 2n + 1 (m={m}, n={n})"
            )))
        };
    }
    let quad = integrate(
        |t| t.powf(m - n) * (-(t - r) * (t - r)).exp() * bessel_i_scaled(n, 2.0 * r * t),
        0.0,
        b,
        cfg,
    )?;
    let pref = 2.0 * r.powf(n - m + 1.0);
    Ok(EvalResult {
        value: pref * quad.value,
        method: Method::Quadrature,
        est_error: pref * quad.est_error,
    })
}

/// Marcum special case at n = (m-1)/2:
///
///   T_B(m, (m-1)/2, r) = 1 - Q_{(m+1)/2}(r sqrt2, B sqrt2).
pub fn toronto_marcum_case(m: f64, r: f64, b: f64, cfg: &QuadConfig) -> Result<EvalResult> {
    if !(m >= 0.0) {
        return Err(Error::Domain(format!(
            "toronto marcum case requires m >= 0, got {m}"
        )));
    }
    let q = marcum_q(
        (m + 1.0) / 2.0,
        r * std::f64::consts::SQRT_2,
        b * std::f64::consts::SQRT_2,
        cfg,
    )?;
    Ok(EvalResult {
        value: 1.0 - q.value,
        method: Method::MarcumCase,
        est_error: q.est_error + 2.0 * f64::EPSILON,
    })
}

/// Power-series representation in B^2:
///
///   T_B(m, n, r) = (B^{2a} r^{2(n-a+1)} / Gamma(n+1)) e^{-B^2-r^2}
///                  sum_k B^{2k} Y_k / (a)_{k+1},
///   Y_k = sum_{i<=k} (a)_i r^{2i} / ((n+1)_i i!),  a = (m+1)/2.
///
/// Requires integer n (the Pochhammer structure of Y_k).
pub fn toronto_series9(p: TorontoParams, terms: usize) -> Result<EvalResult> {
    let TorontoParams { m, n, r, b } = p;
    if (n - n.round()).abs() > 1e-9 {
        return Err(Error::Domain(format!(
            "series9 requires integer n, got {n}"
        )));
    }
    if terms < 1 {
        return Err(Error::Domain("series9 requires terms >= 1".into()));
    }
    let a = (m + 1.0) / 2.0;
    if r == 0.0 {
        let expo = 2.0 * (n - a + 1.0);
        if expo < 0.0 {
            return Err(Error::Domain(format!(
                "series9 prefactor diverges at r = 0 with m > 2n + 1 (m={m}, n={n})"
            )));
        }
        if expo > 0.0 {
            return Ok(EvalResult {
                value: 0.0,
                method: Method::Series9,
                est_error: 0.0,
            });
        }
    }
    let pref = b.powf(2.0 * a) * r.powf(2.0 * (n - a + 1.0)) / gamma(n + 1.0)
        * (-b * b - r * r).exp();
    let mut y = 0.0f64; // Y_k, built incrementally
    let mut y_inc = 1.0f64; // (a)_i r^{2i}/((n+1)_i i!)
    let mut outer = 1.0 / a; // B^{2k}/(a)_{k+1}
    let mut sum = 0.0f64;
    let mut last = 0.0f64;
    for k in 0..terms {
        let kf = k as f64;
        if k > 0 {
            y_inc *= (a + kf - 1.0) * r * r / ((n + kf) * kf);
            outer *= b * b / (a + kf);
        }
        y += y_inc;
        last = outer * y;
        if !last.is_finite() {
            return Err(Error::NonConvergence {
                what: format!("series9 produced a non-finite term at k={k}"),
                terms: k,
            });
        }
        sum += last;
        if last.abs() < sum.abs() * 1e-18 {
            break;
        }
    }
    Ok(EvalResult {
        value: pref * sum,
        method: Method::Series9,
        est_error: (pref * last).abs(),
    })
}

/// Incomplete-gamma series:
///
///   T_B(m, n, r) = r^{2(n-a+1)} e^{-r^2} sum_k r^{2k} gamma(a+k, B^2) / (k! Gamma(n+k+1)),
///   a = (m+1)/2.
///
/// (The gamma argument is B^2: the defining integral carries e^{-t^2}.)
/// Valid for real n >= 0.
pub fn toronto_series10(p: TorontoParams, terms: usize) -> Result<EvalResult> {
    let TorontoParams { m, n, r, b } = p;
    if terms < 1 {
        return Err(Error::Domain("series10 requires terms >= 1".into()));
    }
    let a = (m + 1.0) / 2.0;
    if r == 0.0 {
        let expo = 2.0 * (n - a + 1.0);
        if expo < 0.0 {
            return Err(Error::Domain(format!(
                "series10 prefactor diverges at r = 0 with m > 2n + 1 (m={m}, n={n})"
            )));
        }
        let value = if expo > 0.0 {
            0.0
        } else {
            gamma_lower(a, b * b)? / gamma(n + 1.0)
        };
        return Ok(EvalResult {
            value,
            method: Method::Series10,
            est_error: 4.0 * f64::EPSILON * value,
        });
    }
    let pref = r.powf(2.0 * (n - a + 1.0)) * (-r * r).exp();
    let log_r2 = 2.0 * r.ln();
    let mut sum = 0.0f64;
    let mut last = 0.0f64;
    for k in 0..terms {
        let kf = k as f64;
        // gamma(a+k, B^2) = P(a+k, B^2) Gamma(a+k); keep the Gamma in logs so
        // large k cannot overflow
        let (p_reg, _) = gamma_regularized_pair(a + kf, b * b)?;
        let log_coeff = ln_gamma(a + kf) + kf * log_r2 - ln_gamma(kf + 1.0) - ln_gamma(n + kf + 1.0);
        last = p_reg * log_coeff.exp();
        if !last.is_finite() {
            return Err(Error::NonConvergence {
                what: format!("series10 produced a non-finite term at k={k}"),
                terms: k,
            });
        }
        sum += last;
        if last.abs() < sum.abs() * 1e-18 {
            break;
        }
    }
    Ok(EvalResult {
        value: pref * sum,
        method: Method::Series10,
        est_error: (pref * last).abs(),
    })
}

// ---------------------------------------------------------------------------
// closed form at half-integer n
// ---------------------------------------------------------------------------

/// int_lo^hi u^l e^{-u^2} du for integer l >= 0.
///
/// Split at zero with the parity sign; on a single side, use whichever of the
/// lower/upper incomplete-gamma differences keeps the subtraction between
/// same-scale small numbers.
fn seg_integral(l: u32, lo: f64, hi: f64) -> Result<f64> {
    debug_assert!(lo <= hi);
    if lo == hi {
        return Ok(0.0);
    }
    if hi <= 0.0 {
        let v = seg_integral(l, -hi, -lo)?;
        return Ok(if l % 2 == 0 { v } else { -v });
    }
    if lo < 0.0 {
        let neg = seg_integral(l, 0.0, -lo)?;
        let pos = seg_integral(l, 0.0, hi)?;
        return Ok(if l % 2 == 0 { neg + pos } else { pos - neg });
    }
    let a = (l as f64 + 1.0) / 2.0;
    let (p_lo, q_lo) = gamma_regularized_pair(a, lo * lo)?;
    let (p_hi, q_hi) = gamma_regularized_pair(a, hi * hi)?;
    let g = gamma(a);
    // prefer the difference of the pair member that is small on this segment
    if p_lo <= 0.5 {
        Ok(0.5 * g * (p_hi - p_lo))
    } else {
        Ok(0.5 * g * (q_lo - q_hi))
    }
}

/// G_s(L) = int_0^B t^L e^{-(t-s)^2} dt via the binomial shift u = t - s.
fn g_shift(s: f64, big_l: u32, b: f64) -> Result<f64> {
    let mut total = 0.0f64;
    let mut binom = 1.0f64;
    for l in 0..=big_l {
        if l > 0 {
            binom *= (big_l - l + 1) as f64 / l as f64;
        }
        let seg = seg_integral(l, -s, b - s)?;
        total += binom * s.powi((big_l - l) as i32) * seg;
    }
    Ok(total)
}

/// Base case of the closed form (valid when m >= 2n, every t-power
/// nonnegative):
///
///   e^{-r^2} int_0^B t^{m-n} e^{-t^2} I_n(2rt) dt
///     = sum_{k=0}^{N} C_k (4r)^{-k-1/2} [(-1)^k G_r(L_k) + (-1)^{N+1} G_{-r}(L_k)],
///
/// with n = N + 1/2, L_k = m - n - k - 1/2 and
/// C_k = (N+k)! / (sqrt(pi) k! (N-k)!).
fn ve_base(m: i64, n_cap: i64, r: f64, b: f64) -> Result<f64> {
    let big_m = m - n_cap - 1; // m - n - 1/2
    debug_assert!(big_m >= n_cap);
    let mut total = 0.0f64;
    let sign_last = if (n_cap + 1) % 2 == 0 { 1.0 } else { -1.0 };
    let mut pw = 1.0 / (4.0 * r).sqrt(); // (4r)^{-k-1/2}
    for k in 0..=n_cap {
        let c = factorial((n_cap + k) as u32)
            / (SQRT_PI * factorial(k as u32) * factorial((n_cap - k) as u32));
        let sign_k = if k % 2 == 0 { 1.0 } else { -1.0 };
        let l = (big_m - k) as u32;
        let bracket = sign_k * g_shift(r, l, b)? + sign_last * g_shift(-r, l, b)?;
        total += c * pw * bracket;
        pw /= 4.0 * r;
    }
    Ok(total)
}

/// e^{-r^2} int_0^B t^{m-nu} e^{-t^2} I_nu(2rt) dt for nu = N + 1/2.
///
/// Outside the base region the order is reduced with
///
///   VE(m, nu) = (1/2r) [ B^{m-nu} e^{-(B-r)^2} (e^{-2rB} I_{nu-1}(2rB))
///                        - bnd - (m-1) VE(m-2, nu-1) + 2 VE(m, nu-1) ],
///
/// where bnd = r^{nu-1} e^{-r^2}/Gamma(nu) when m = 1 and 0 for m > 1 (the
/// t -> 0 boundary term of the integration by parts). Odd m keeps every
/// branch valid: the (m-1) coefficient kills the child exactly when the
/// reduction would otherwise reach a divergent integral.
fn ve(m: i64, n_cap: i64, r: f64, b: f64) -> Result<f64> {
    let big_m = m - n_cap - 1;
    if big_m >= n_cap {
        return ve_base(m, n_cap, r, b);
    }
    debug_assert!(m >= 1 && m % 2 == 1);
    let nu = n_cap as f64 + 0.5;
    let bessel_term = b.powf(m as f64 - nu)
        * (-(b - r) * (b - r)).exp()
        * bessel_i_scaled(nu - 1.0, 2.0 * r * b);
    let bnd = if m == 1 {
        r.powf(nu - 1.0) * (-r * r).exp() / gamma(nu)
    } else {
        0.0
    };
    let child_a = if m > 1 { ve(m - 2, n_cap - 1, r, b)? } else { 0.0 };
    let child_b = ve(m, n_cap - 1, r, b)?;
    Ok((bessel_term - bnd - (m - 1) as f64 * child_a + 2.0 * child_b) / (2.0 * r))
}

/// Returns (integer m, N) when the finite closed form exists at (m, n):
/// n + 0.5 a natural number, m a positive integer, and either m >= 2n (the
/// direct double-sum region) or m odd (the reduction terminates).
fn closed_support(m: f64, n: f64) -> Result<(i64, i64)> {
    let twice_n = 2.0 * n;
    let twice_round = twice_n.round();
    if (twice_n - twice_round).abs() > 1e-9
        || twice_round < 1.0
        || (twice_round as i64) % 2 != 1
    {
        return Err(Error::Domain(format!(
            "closed form requires n + 0.5 in N (half-integer n >= 1/2), got n = {n}"
        )));
    }
    let n_cap = ((twice_round as i64) - 1) / 2;
    let m_round = m.round();
    if (m - m_round).abs() > 1e-9 || m_round < 1.0 {
        return Err(Error::Domain(format!(
            "closed form requires a positive integer m with m - n - 1/2 in Z, got m = {m}"
        )));
    }
    let mi = m_round as i64;
    if mi >= 2 * n_cap + 1 || mi % 2 == 1 {
        Ok((mi, n_cap))
    } else {
        Err(Error::Domain(format!(
            "no finite closed form at m = {m}, n = {n}: even m below 2n leaves \
             a non-elementary remainder integral"
        )))
    }
}

/// Finite closed form of T_B(m, n, r) for half-integer n.
///
/// Exists for positive integer m with m >= 2n or m odd (the latter covers
/// the m >= n + 1/2 cases the bounds need). r > 0; B >= 0.
pub fn toronto_closed(p: TorontoParams) -> Result<EvalResult> {
    let TorontoParams { m, n, r, b } = p;
    let (mi, n_cap) = closed_support(m, n)?;
    if r <= 0.0 {
        return Err(Error::Domain(
            "closed form requires r > 0 (r = 0 is the quadrature path's analytic limit)".into(),
        ));
    }
    if b == 0.0 {
        // empty integration range; the reduction's B^{m-nu} boundary power
        // is singular there, so return the exact limit directly
        return Ok(EvalResult::exact(0.0, Method::ClosedForm));
    }
    let value = 2.0 * r.powf(n - m + 1.0) * ve(mi, n_cap, r, b)?;
    Ok(EvalResult::exact(value, Method::ClosedForm))
}

/// Lower bound at integer n: the closed form at order n + 1/2.
pub fn toronto_lower(p: TorontoParams) -> Result<EvalResult> {
    if (p.n - p.n.round()).abs() > 1e-9 {
        return Err(Error::Domain(format!(
            "the lower bound applies at integer n, got {}",
            p.n
        )));
    }
    let mut r = toronto_closed(p.with_n(p.n + 0.5)?)?;
    r.method = Method::BoundLower;
    Ok(r)
}

/// Upper bound at integer n >= 1: the closed form at order n - 1/2.
pub fn toronto_upper(p: TorontoParams) -> Result<EvalResult> {
    if (p.n - p.n.round()).abs() > 1e-9 {
        return Err(Error::Domain(format!(
            "the upper bound applies at integer n, got {}",
            p.n
        )));
    }
    if p.n < 1.0 {
        return Err(Error::Domain(
            "the upper bound needs n >= 1 (n = 0 would require Bessel order -1/2)".into(),
        ));
    }
    let mut r = toronto_closed(p.with_n(p.n - 0.5)?)?;
    r.method = Method::BoundUpper;
    Ok(r)
}
