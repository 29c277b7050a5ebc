//! Modified Bessel function of the first kind: ascending series for real
//! order, and the finite closed form at half-integer order.

use crate::dd::{dd_cosh, dd_sinh, Dd, FRAC_1_SQRT_PI};
use crate::error::{Error, Result};

use super::gamma::{factorial, ln_gamma};

/// Largest x for which e^x is finite.
const EXP_OVERFLOW: f64 = 709.78;

/// Half-integer (or integer) Bessel order nu represented as 2*nu.
///
/// The closed forms of this crate exist exactly when 2*nu is odd, i.e.
/// nu + 0.5 is a natural number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HalfIntOrder {
    twice_order: i32,
}

impl HalfIntOrder {
    /// `twice_order` = 2*nu; must be >= -1 (nu >= -1/2).
    pub fn new(twice_order: i32) -> Result<Self> {
        if twice_order < -1 {
            return Err(Error::Domain(format!(
                "half-integer order must satisfy 2*nu >= -1, got {twice_order}"
            )));
        }
        Ok(HalfIntOrder { twice_order })
    }

    /// Construct from a float order, requiring nu + 0.5 to be a natural number.
    pub fn from_order(nu: f64) -> Result<Self> {
        let twice = 2.0 * nu;
        if (twice - twice.round()).abs() > 1e-9 || (twice.round() as i64) % 2 == 0 {
            return Err(Error::Domain(format!(
                "order {nu} is not an odd multiple of 0.5"
            )));
        }
        Self::new(twice.round() as i32)
    }

    pub fn twice_order(self) -> i32 {
        self.twice_order
    }

    pub fn order(self) -> f64 {
        self.twice_order as f64 / 2.0
    }

    /// True when 2*nu is odd (nu + 0.5 in N).
    pub fn is_half_integer(self) -> bool {
        self.twice_order.rem_euclid(2) == 1
    }
}

/// Exponentially scaled modified Bessel function e^{-x} I_nu(x).
///
/// Ascending series summed in scaled form (first term carries e^{-x}), so it
/// never overflows; for arguments too large for that scaling the standard
/// large-argument expansion takes over. Valid for nu > -1, x >= 0.
pub fn bessel_i_scaled(nu: f64, x: f64) -> f64 {
    debug_assert!(nu > -1.0, "series requires nu > -1");
    if x == 0.0 {
        return if nu == 0.0 {
            1.0
        } else if nu > 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
    }
    let log_t0 = nu * (x / 2.0).ln() - ln_gamma(nu + 1.0) - x;
    if log_t0 > -690.0 {
        // scaled ascending series: t_0 = (x/2)^nu e^{-x} / Gamma(nu+1),
        // t_{k+1} = t_k (x/2)^2 / ((k+1)(nu+k+1)); all terms positive
        let q = (x / 2.0) * (x / 2.0);
        let mut term = log_t0.exp();
        let mut sum = term;
        let mut comp = 0.0f64; // Neumaier compensation
        let mut k = 0.0f64;
        loop {
            term *= q / ((k + 1.0) * (nu + k + 1.0));
            let t = sum + term;
            comp += if sum.abs() >= term.abs() {
                (sum - t) + term
            } else {
                (term - t) + sum
            };
            sum = t;
            k += 1.0;
            if term < (sum.abs() + comp.abs()) * 1e-17 || k > 40_000.0 {
                break;
            }
        }
        sum + comp
    } else {
        // large-argument expansion of e^{-x} I_nu(x); terms alternate and
        // shrink fast for the x this branch sees
        let mu = 4.0 * nu * nu;
        let mut term = 1.0f64;
        let mut sum = 1.0f64;
        for k in 0..40u32 {
            let odd = (2 * k + 1) as f64;
            let next = term * (mu - odd * odd) / (8.0 * x * (k as f64 + 1.0));
            if next.abs() >= term.abs() {
                break; // asymptotic tail started to grow
            }
            term = next;
            sum += term;
            if term.abs() < sum.abs() * 1e-17 {
                break;
            }
        }
        sum / (2.0 * std::f64::consts::PI * x).sqrt()
    }
}

/// Modified Bessel function I_nu(x) by the ascending series.
///
/// nu > -1 (the crate only needs nu >= -1/2), x >= 0. Signals overflow once
/// e^x leaves the representable range, which is where I_nu itself overflows.
pub fn bessel_i(nu: f64, x: f64) -> Result<f64> {
    if !x.is_finite() || !nu.is_finite() {
        return Err(Error::Domain(format!(
            "bessel_i requires finite arguments, got nu={nu}, x={x}"
        )));
    }
    if x < 0.0 {
        return Err(Error::Domain(format!("bessel_i requires x >= 0, got {x}")));
    }
    if nu <= -1.0 {
        return Err(Error::Domain(format!(
            "bessel_i series requires nu > -1, got {nu}"
        )));
    }
    if x > EXP_OVERFLOW {
        return Err(Error::Overflow(format!(
            "e^x exceeds the representable range at x = {x}"
        )));
    }
    if x == 0.0 {
        return Ok(if nu == 0.0 {
            1.0
        } else if nu > 0.0 {
            0.0
        } else {
            return Err(Error::Domain(format!(
                "I_nu(0) is singular for nu = {nu} < 0"
            )));
        });
    }
    Ok(bessel_i_scaled(nu, x) * x.exp())
}

/// Finite closed form of I_{N+1/2}(x):
///
///   I_{N+1/2}(x) = sum_{k=0}^{N} (N+k)! [(-1)^k e^x + (-1)^{N+1} e^{-x}]
///                  / (sqrt(pi) k! (N-k)! (2x)^{k+1/2})
///
/// Requires order >= 1/2 (the k + 1/2 power is singular at x = 0, so x > 0).
/// The terms cancel violently for small x at higher orders, so the sum is
/// carried in double-double and rounded once at the end.
pub fn bessel_i_half(order: HalfIntOrder, x: f64) -> Result<f64> {
    if !order.is_half_integer() {
        return Err(Error::Domain(format!(
            "bessel_i_half requires a half-integer order, got nu = {}",
            order.order()
        )));
    }
    if order.twice_order() < 1 {
        return Err(Error::Domain(format!(
            "bessel_i_half requires order >= 1/2, got nu = {}",
            order.order()
        )));
    }
    if x <= 0.0 {
        return Err(Error::Domain(format!(
            "the (2x)^(k+1/2) factor is singular at x = {x} <= 0"
        )));
    }
    if x > EXP_OVERFLOW {
        return Err(Error::Overflow(format!(
            "e^x exceeds the representable range at x = {x}"
        )));
    }
    let n = (order.twice_order() - 1) / 2; // nu = n + 1/2
    let sign_last_pos = (n + 1) % 2 == 0; // sign of (-1)^{n+1}

    let cosh_x = dd_cosh(x);
    let sinh_x = dd_sinh(x);
    let inv_2x = Dd::from_f64(2.0 * x).recip();
    let mut pow = inv_2x.sqrt(); // (2x)^{-(k+1/2)}, starting at k = 0
    let mut sum = Dd::from_f64(0.0);
    for k in 0..=n {
        let c = factorial((n + k) as u32) / (factorial(k as u32) * factorial((n - k) as u32));
        let k_pos = k % 2 == 0; // sign of (-1)^k
        // (-1)^k e^x + (-1)^{n+1} e^{-x} = +-2 cosh(x) or +-2 sinh(x)
        let bracket = if k_pos == sign_last_pos {
            let v = cosh_x.mul_f64(2.0 * c);
            if k_pos {
                v
            } else {
                v.neg()
            }
        } else {
            let v = sinh_x.mul_f64(2.0 * c);
            if k_pos {
                v
            } else {
                v.neg()
            }
        };
        sum = sum.add(bracket.mul(pow));
        pow = pow.mul(inv_2x);
    }
    Ok(sum.mul(FRAC_1_SQRT_PI).to_f64())
}
