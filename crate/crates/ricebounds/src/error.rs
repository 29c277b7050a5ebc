//! Error type shared by every evaluation routine in the crate.

/// Errors reported by quadrature, series evaluation and closed forms.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// A precondition on the arguments was violated. The message names the
    /// offending parameter and the constraint.
    #[error("domain error: {0}")]
    Domain(String),

    /// The adaptive integrator exhausted its subdivision budget before
    /// reaching the requested tolerance. Carries the best estimate together
    /// with the error bound that was actually achieved.
    #[error("tolerance not met: best estimate {value:e} with est_error {est_error:e} after {evaluations} integrand evaluations")]
    ToleranceNotMet {
        value: f64,
        est_error: f64,
        evaluations: u64,
    },

    /// An intermediate quantity left the representable range of f64.
    #[error("overflow: {0}")]
    Overflow(String),

    /// A series failed to converge within its term budget, or produced a
    /// non-finite intermediate (divergence regime).
    #[error("no convergence after {terms} terms: {what}")]
    NonConvergence { what: String, terms: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
