use thiserror::Error;

/// Errors shared by every evaluation route in the crate.
///
/// Convergence failures always identify how much work was spent before
/// giving up, so callers can distinguish a too-tight tolerance from a
/// misused argument.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    /// The argument lies outside the mathematical domain of the requested
    /// function (e.g. Ei at 0, li at 1).
    #[error("domain error: {0}")]
    Domain(String),

    /// A series hit its term cap, or an adaptive integrator exhausted its
    /// subdivision budget, before the certified bound met the tolerance.
    #[error("failed to converge after {work} {unit}")]
    NonConvergence {
        /// Terms summed or integrand evaluations performed before giving up.
        work: usize,
        /// What `work` counts ("terms" or "evaluations").
        unit: &'static str,
    },

    /// The declared pole limit of a regularized integrand disagrees with a
    /// symmetric finite-difference probe of the integrand itself.
    #[error("inconsistent pole limit: declared {declared}, probed {probed}")]
    InconsistentPoleLimit { declared: f64, probed: f64 },
}

impl EvalError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        EvalError::Domain(msg.into())
    }

    pub(crate) fn no_convergence_terms(work: usize) -> Self {
        EvalError::NonConvergence {
            work,
            unit: "terms",
        }
    }

    pub(crate) fn no_convergence_evals(work: usize) -> Self {
        EvalError::NonConvergence {
            work,
            unit: "evaluations",
        }
    }
}
