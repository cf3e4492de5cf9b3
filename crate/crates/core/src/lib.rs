//! Numerical kit for the exponential integral Ei and its relatives.
//!
//! Everything here is computed by at least two independent routes so they
//! can certify each other:
//!
//! - [`series`] evaluates Ei through its Puiseux representation
//!   Ei(x) = γ + log|x| + Σ_{n≥1} xⁿ/(n·n!), through the
//!   iterated-integration-by-parts expansion of ∫₁ˣ eᵗ/t dt, and holds the
//!   exact-rational combinatorial identities underpinning both.
//! - [`quadrature`] evaluates Ei as the Cauchy principal value
//!   ∫_{−∞}^{x} eᵗ/t dt with adaptive Gauss–Kronrod integration, alongside
//!   the integral formulas for γ and γ − Ei(1).
//! - [`derived`] builds the logarithmic integral, the Ramanujan–Soldner
//!   constant, and both sides of the Goodwin–Staton identity on top.
//! - [`verify`] holds an independent γ oracle and the cross-check harness
//!   producing a machine-readable pass/fail report over all of the above.
//!
//! Every floating-point result carries a certified error bound (analytic
//! tail domination plus an accumulated round-off model), and all operations
//! are pure functions, safe to call concurrently.

pub mod derived;
mod error;
mod exact;
mod kahan;
pub mod quadrature;
pub mod series;
pub mod verify;

pub use derived::{
    erf_scaled_core, goodwin_staton_check, goodwin_staton_lhs, goodwin_staton_rhs, li,
    li_quadrature, soldner_constant, GoodwinStatonCheck, ERF_SCALED_MAX_X, GOODWIN_STATON_MAX_X,
};
pub use error::EvalError;
pub use kahan::KahanSum;
pub use quadrature::{
    cpv_integrate, ei_quadrature, gamma_integral, integrate_adaptive, lemma2_integral, QuadConfig,
    QuadResult, RegularizedPoleIntegrand,
};
pub use series::{
    alternating_harmonic_exp_sum, binomial_harmonic_lhs, convolution_coefficient_check, ei_one,
    ei_series, harmonic, iterated_antiderivative_log, lemma1_series, puiseux_tail, EvalMethod,
    EvalResult, Lemma1Series, SeriesPolicy, CANCELLATION_WARNING_THRESHOLD, EULER_GAMMA,
    LEMMA1_RECOMMENDED_MAX_X,
};
pub use verify::{
    gamma_reference, gamma_reference_bound, run_crosschecks, run_crosschecks_with, CheckRecord,
    VerificationReport,
};

/// Re-exported so downstream users of the exact identities share one
/// rational type.
pub use num_rational::BigRational;
