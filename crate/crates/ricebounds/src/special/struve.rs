//! Modified Struve function L_nu by its ascending power series.

use crate::error::{Error, Result};

use super::gamma::ln_gamma;

const MAX_TERMS: usize = 10_000;

/// Modified Struve function
///
///   L_nu(x) = sum_{k>=0} (x/2)^{nu+2k+1} / (Gamma(k+3/2) Gamma(k+nu+3/2))
///
/// for nu >= -1/2, x >= 0. Terms are all positive; the sum stops once a term
/// falls below 1e-16 of the partial sum.
pub fn struve_l(order: f64, x: f64) -> Result<f64> {
    if !(order >= -0.5) {
        return Err(Error::Domain(format!(
            "struve_l requires order >= -1/2, got {order}"
        )));
    }
    if x < 0.0 {
        return Err(Error::Domain(format!("struve_l requires x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x > 700.0 {
        return Err(Error::Overflow(format!(
            "L_nu grows like e^x; x = {x} overflows f64"
        )));
    }
    let h = x / 2.0;
    // t_0 = (x/2)^(nu+1) / (Gamma(3/2) Gamma(nu+3/2))
    let mut term = ((order + 1.0) * h.ln() - ln_gamma(1.5) - ln_gamma(order + 1.5)).exp();
    let mut sum = term;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= h * h / ((kf + 1.5) * (kf + order + 1.5));
        sum += term;
        if !term.is_finite() {
            return Err(Error::NonConvergence {
                what: format!("struve_l series diverged at order={order}, x={x}"),
                terms: k,
            });
        }
        if term < sum * 1e-16 {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        what: format!("struve_l series at order={order}, x={x}"),
        terms: MAX_TERMS,
    })
}
