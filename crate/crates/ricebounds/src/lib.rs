//! Rice Ie-function, incomplete Toronto function and incomplete
//! Lipschitz-Hankel integrals.
//!
//! Three function families that are absent from the usual special-function
//! libraries, each available through several interchangeable evaluation
//! strategies: an adaptive-quadrature oracle of the defining integral,
//! alternative integral and series representations, finite closed forms at
//! half-integer order, and closed-form upper/lower bounds built on the
//! strict order-monotonicity of the modified Bessel function.
//!
//! Every closed form and bound in the crate is tested against the
//! quadrature oracle; the oracle itself is an adaptive Gauss-Kronrod
//! integrator with a certified error estimate.
//!
//! All evaluation routines are pure functions of their arguments and are
//! safe to call from any number of threads.

mod dd;
mod error;
mod eval;
mod methods;
mod quad;

pub mod ilhi;
pub mod rice;
pub mod special;
pub mod toronto;

pub use error::{Error, Result};
pub use eval::{EvalContext, EvalResult, Method};
pub use methods::{
    ilhi_method, ilhi_methods, rice_method, rice_methods, toronto_method, toronto_methods,
    IlhiMethod, RiceMethod, TorontoMethod,
};
pub use quad::{integrate, integrate_semi_infinite, QuadConfig, QuadResult};

pub use ilhi::IlhiParams;
pub use rice::RiceParams;
pub use toronto::TorontoParams;
