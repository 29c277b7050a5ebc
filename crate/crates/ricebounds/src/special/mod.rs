//! Classical special functions backing the higher-level evaluators:
//! modified Bessel I (series and half-integer closed form), modified Struve L,
//! error function, incomplete gamma pair, Gaussian Q and Marcum Q.

mod bessel;
mod erf;
mod gamma;
mod marcum;
mod struve;

pub use bessel::{bessel_i, bessel_i_half, bessel_i_scaled, HalfIntOrder};
pub use erf::{erf, erfc, gaussian_q};
pub use gamma::{gamma, gamma_lower, gamma_regularized_pair, gamma_upper, ln_gamma};
pub use marcum::{marcum_q, marcum_q_half};
pub use struve::struve_l;

pub(crate) use gamma::{factorial, SQRT_PI};
