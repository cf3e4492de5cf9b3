//! Series evaluators for the exponential integral and the exact
//! combinatorial identities behind its Puiseux representation
//! Ei(x) = γ + log|x| + Σ_{n≥1} xⁿ/(n·n!).
//!
//! Floating-point series carry certified truncation bounds: summation stops
//! only once the next term is provably dominated by a geometric tail, and the
//! bound on everything discarded is reported in [`EvalResult::error_bound`].
//! The combinatorial identities are evaluated in exact rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::EvalError;
use crate::exact::{self, ratio_to_f64};
use crate::kahan::KahanSum;

/// Euler–Mascheroni constant, stored to full binary64 precision.
///
/// The series route must not depend on quadrature at call time, so this is a
/// compile-time constant. `verify::gamma_reference` reproduces it to 1e-14
/// (asserted in this crate's tests) before anything downstream trusts it.
#[allow(clippy::excessive_precision)] // decimal digits kept beyond f64 on purpose
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_60;

/// Amplification factor above which an alternating-series result is flagged
/// as cancellation-dominated.
pub const CANCELLATION_WARNING_THRESHOLD: f64 = 1e3;

/// Largest |x| at which `lemma1_series` keeps its cancellation amplification
/// comfortably below the warning threshold.
pub const LEMMA1_RECOMMENDED_MAX_X: f64 = 4.0;

/// Truncation policy for every series evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesPolicy {
    /// Absolute tolerance on the certified truncation bound. Must be > 0.
    pub abs_tol: f64,
    /// Relative tolerance (scaled by the running sum). May be 0.
    pub rel_tol: f64,
    /// Hard cap on summed terms; hitting it without meeting tolerance is a
    /// `NonConvergence` error, never a silent return.
    pub max_terms: usize,
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        SeriesPolicy {
            abs_tol: 1e-14,
            rel_tol: 0.0,
            max_terms: 1000,
        }
    }
}

impl SeriesPolicy {
    pub fn validate(&self) -> Result<(), EvalError> {
        if !self.abs_tol.is_finite() || self.abs_tol <= 0.0 {
            return Err(EvalError::domain(
                "SeriesPolicy.abs_tol must be finite and > 0",
            ));
        }
        if !self.rel_tol.is_finite() || self.rel_tol < 0.0 {
            return Err(EvalError::domain(
                "SeriesPolicy.rel_tol must be finite and >= 0",
            ));
        }
        if self.max_terms < 1 {
            return Err(EvalError::domain("SeriesPolicy.max_terms must be >= 1"));
        }
        Ok(())
    }

    /// Half the active tolerance: terms are accepted as "small enough" when
    /// they drop below this, leaving the other half for the discarded tail.
    fn half_threshold(&self, running_sum: f64) -> f64 {
        0.5 * self.abs_tol.max(self.rel_tol * running_sum.abs())
    }
}

/// Which of the three independent evaluation routes produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EvalMethod {
    PuiseuxSeries,
    Lemma1Series,
    CpvQuadrature,
}

impl std::fmt::Display for EvalMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            EvalMethod::PuiseuxSeries => "PuiseuxSeries",
            EvalMethod::Lemma1Series => "Lemma1Series",
            EvalMethod::CpvQuadrature => "CpvQuadrature",
        };
        f.write_str(s)
    }
}

/// A computed value together with its certified error bound, the route that
/// produced it, and a work counter (terms summed or integrand evaluations).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: f64,
    pub error_bound: f64,
    pub method: EvalMethod,
    pub work: usize,
}

/// H_n = Σ_{k=1}^{n} 1/k as an exact rational, with H_0 = 0 (empty sum).
pub fn harmonic(n: u64) -> BigRational {
    exact::harmonic_rational(n)
}

/// The power-series tail Σ_{n≥1} xⁿ/(n·n!) of the Puiseux representation.
///
/// Terms follow the stable recurrence t_{n+1} = t_n · x·n/(n+1)² and are
/// accumulated with compensated summation. Summation stops at the first N
/// where |t_N| is below half the tolerance *and* |x|/(N+1) ≤ 1/2, at which
/// point the discarded tail is geometrically dominated by 2|t_{N+1}|; that
/// bound, plus one unit round-off per addition, is reported.
pub fn puiseux_tail(x: f64, policy: &SeriesPolicy) -> Result<EvalResult, EvalError> {
    policy.validate()?;
    if !x.is_finite() {
        return Err(EvalError::domain("puiseux_tail requires finite x"));
    }
    let mut acc = KahanSum::new();
    let mut abs_acc = 0.0f64;
    let mut term = x; // t_1 = x
    let mut n: usize = 1;
    loop {
        acc.add(term);
        abs_acc += term.abs();
        let np1 = (n + 1) as f64;
        let next = term * x * n as f64 / (np1 * np1);
        if term.abs() <= policy.half_threshold(acc.value()) && x.abs() <= 0.5 * np1 {
            let tail_bound = 2.0 * next.abs();
            let roundoff = n as f64 * f64::EPSILON * abs_acc;
            return Ok(EvalResult {
                value: acc.value(),
                error_bound: tail_bound + roundoff,
                method: EvalMethod::PuiseuxSeries,
                work: n,
            });
        }
        if n >= policy.max_terms {
            return Err(EvalError::no_convergence_terms(n));
        }
        term = next;
        n += 1;
    }
}

/// Ei(x) through the Puiseux representation: γ + log|x| + Σ_{n≥1} xⁿ/(n·n!).
pub fn ei_series(x: f64, policy: &SeriesPolicy) -> Result<EvalResult, EvalError> {
    if x == 0.0 {
        return Err(EvalError::domain(
            "Ei is defined on the nonzero reals R\\{0}; x = 0 is excluded",
        ));
    }
    if !x.is_finite() {
        return Err(EvalError::domain("ei_series requires finite nonzero x"));
    }
    let tail = puiseux_tail(x, policy)?;
    let log_abs = x.abs().ln();
    let value = EULER_GAMMA + log_abs + tail.value;
    let roundoff = f64::EPSILON * (EULER_GAMMA + log_abs.abs() + tail.value.abs() + value.abs());
    Ok(EvalResult {
        value,
        error_bound: tail.error_bound + roundoff,
        method: EvalMethod::PuiseuxSeries,
        work: tail.work,
    })
}

/// Ei(1) = γ + Σ_{n≥1} 1/(n·n!).
pub fn ei_one(policy: &SeriesPolicy) -> Result<EvalResult, EvalError> {
    ei_series(1.0, policy)
}

/// The n-fold antiderivative of 1/x: xⁿ/n! · (log|x| − H_n).
///
/// Differentiating it once recovers the (n−1)-fold antiderivative, which the
/// finite-difference property tests check on a grid.
pub fn iterated_antiderivative_log(n: u32, x: f64) -> Result<f64, EvalError> {
    if x == 0.0 || !x.is_finite() {
        return Err(EvalError::domain(
            "iterated_antiderivative_log requires finite nonzero x",
        ));
    }
    let h = harmonic(n as u64);
    let h = ratio_to_f64(h.numer(), h.denom());
    let mut x_pow_over_fact = 1.0f64;
    for k in 1..=n {
        x_pow_over_fact *= x / k as f64;
    }
    Ok(x_pow_over_fact * (x.abs().ln() - h))
}

/// One truncated instance of S(x) = Σ_{n≥0} (−1)^{n+1} H_n xⁿ/n!, kept in
/// exact rationals until the caller converts.
struct AlternatingHarmonicSum {
    sum: BigRational,
    abs_sum: BigRational,
    /// Certified bound on everything discarded: 2 |τ_{N+1}|.
    tail_bound: f64,
    terms: usize,
}

fn alternating_harmonic_sum(
    x: f64,
    policy: &SeriesPolicy,
) -> Result<AlternatingHarmonicSum, EvalError> {
    let x_exact = BigRational::from_float(x).expect("finite x");
    let x_abs = x.abs();
    let mut h = BigRational::zero();
    let mut x_pow_over_fact = BigRational::one(); // xⁿ/n!
    let mut sum = BigRational::zero();
    let mut abs_sum = BigRational::zero();
    let mut n: usize = 0;
    loop {
        if n > 0 {
            h += BigRational::new(BigInt::one(), BigInt::from(n));
            x_pow_over_fact = x_pow_over_fact * &x_exact / BigInt::from(n);
        }
        let term = &h * &x_pow_over_fact;
        if n % 2 == 1 {
            sum += &term;
        } else {
            sum -= &term;
        }
        let term_abs = term.abs();
        abs_sum += &term_abs;

        // The term-magnitude ratio is bounded by |x|(n+2)/(n+1)², which is
        // decreasing, so once it is ≤ 1/2 the remaining tail is dominated by
        // a geometric series. τ_0 = 0 makes ratios from n = 0 meaningless.
        if n >= 1 {
            let term_mag = ratio_to_f64(term_abs.numer(), term_abs.denom());
            let sum_mag = ratio_to_f64(sum.numer(), sum.denom());
            let ratio_cap = x_abs * (n as f64 + 2.0) / ((n as f64 + 1.0) * (n as f64 + 1.0));
            if term_mag <= policy.half_threshold(sum_mag) && ratio_cap <= 0.5 {
                let next_h = &h + BigRational::new(BigInt::one(), BigInt::from(n + 1));
                let next_pow = (&x_pow_over_fact * &x_exact / BigInt::from(n + 1)).abs();
                let next_term = next_h * next_pow;
                let tail_bound = 2.0 * ratio_to_f64(next_term.numer(), next_term.denom());
                return Ok(AlternatingHarmonicSum {
                    sum,
                    abs_sum,
                    tail_bound,
                    terms: n + 1,
                });
            }
        }
        if n + 1 >= policy.max_terms {
            return Err(EvalError::no_convergence_terms(n + 1));
        }
        n += 1;
    }
}

/// Result of [`lemma1_series`]: the evaluation plus its cancellation
/// diagnostics. The two alternating series partially cancel, so the
/// amplification factor (Σ|term|)/|Σ term| is reported alongside the value.
#[derive(Debug, Clone, Copy)]
pub struct Lemma1Series {
    pub eval: EvalResult,
    /// max over the two series of (Σ|term|)/|Σ term|.
    pub amplification: f64,
}

impl Lemma1Series {
    /// True when the amplification factor exceeds
    /// [`CANCELLATION_WARNING_THRESHOLD`].
    pub fn cancellation_warning(&self) -> bool {
        self.amplification > CANCELLATION_WARNING_THRESHOLD
    }
}

/// ∫₁ˣ eᵗ/t dt through the iterated-integration-by-parts expansion:
///
/// log|x| + eˣ Σ_{n≥0} (−1)^{n+1} H_n xⁿ/n! + e Σ_{n≥0} (−1)ⁿ H_n/n!.
///
/// Both alternating series are truncated under the same policy and summed in
/// exact rationals, converted to f64 once. Cancellation amplification is
/// folded into the reported error bound through the absolute-value sums.
pub fn lemma1_series(x: f64, policy: &SeriesPolicy) -> Result<Lemma1Series, EvalError> {
    policy.validate()?;
    if x == 0.0 || !x.is_finite() {
        return Err(EvalError::domain("lemma1_series requires finite nonzero x"));
    }
    let at_x = alternating_harmonic_sum(x, policy)?;
    let at_one = alternating_harmonic_sum(1.0, policy)?;

    let s1 = ratio_to_f64(at_x.sum.numer(), at_x.sum.denom());
    let a1 = ratio_to_f64(at_x.abs_sum.numer(), at_x.abs_sum.denom());
    let s2 = ratio_to_f64(at_one.sum.numer(), at_one.sum.denom());
    let a2 = ratio_to_f64(at_one.abs_sum.numer(), at_one.abs_sum.denom());

    let e_x = x.exp();
    let e = std::f64::consts::E;
    let log_abs = x.abs().ln();
    // The second sum carries (−1)ⁿ, i.e. the negated kernel sum; at x = 1 the
    // two contributions cancel exactly and the integral is 0.
    let value = log_abs + e_x * s1 - e * s2;

    let amp = |abs: f64, signed: f64| {
        if signed == 0.0 {
            if abs == 0.0 {
                1.0
            } else {
                f64::INFINITY
            }
        } else {
            abs / signed.abs()
        }
    };
    let amplification = amp(a1, s1).max(amp(a2, s2)).max(1.0);

    let tail = e_x * at_x.tail_bound + e * at_one.tail_bound;
    let roundoff = 4.0 * f64::EPSILON * (log_abs.abs() + e_x * a1 + e * a2);
    Ok(Lemma1Series {
        eval: EvalResult {
            value,
            error_bound: tail + roundoff,
            method: EvalMethod::Lemma1Series,
            work: at_x.terms + at_one.terms,
        },
        amplification,
    })
}

/// e · Σ_{n≥0} (−1)ⁿ H_n/n!, which equals γ − Ei(1).
///
/// Terms stay in exact rationals until the single rounding step, so the
/// partial cancellation costs no accuracy.
pub fn alternating_harmonic_exp_sum(policy: &SeriesPolicy) -> Result<EvalResult, EvalError> {
    policy.validate()?;
    let at_one = alternating_harmonic_sum(1.0, policy)?;
    let s = ratio_to_f64(at_one.sum.numer(), at_one.sum.denom());
    let a = ratio_to_f64(at_one.abs_sum.numer(), at_one.abs_sum.denom());
    let e = std::f64::consts::E;
    let value = -(e * s);
    let roundoff = 2.0 * f64::EPSILON * e * a;
    Ok(EvalResult {
        value,
        error_bound: e * at_one.tail_bound + roundoff,
        method: EvalMethod::Lemma1Series,
        work: at_one.terms,
    })
}

/// Σ_{k=0}ⁿ C(n,k) H_k (−1)^{k+1} in exact rationals; equals 1/n for n ≥ 1.
///
/// Binomials come from Pascal-row accumulation in exact integers.
pub fn binomial_harmonic_lhs(n: u64) -> BigRational {
    assert!(n >= 1, "binomial_harmonic_lhs requires n >= 1");
    let len = n as usize + 1;
    let mut row: Vec<BigInt> = vec![BigInt::zero(); len];
    row[0] = BigInt::one();
    for _ in 1..=n {
        for k in (1..len).rev() {
            let left = row[k - 1].clone();
            row[k] += left;
        }
    }
    let mut h = BigRational::zero();
    let mut acc = BigRational::zero();
    for (k, binom) in row.iter().enumerate() {
        if k > 0 {
            h += BigRational::new(BigInt::one(), BigInt::from(k));
        }
        let term = BigRational::from(binom.clone()) * &h;
        if k % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Coefficient of xⁿ in the Cauchy product eˣ · Σ (−1)^{k+1} H_k xᵏ/k!,
/// namely Σ_{k=0}ⁿ (1/(n−k)!) · (−1)^{k+1} H_k/k!, in exact rationals.
/// Equals 1/(n·n!) for n ≥ 1.
pub fn convolution_coefficient_check(n: u64) -> BigRational {
    assert!(n >= 1, "convolution_coefficient_check requires n >= 1");
    let fact: Vec<BigInt> = (0..=n).map(exact::factorial).collect();
    let mut h = BigRational::zero();
    let mut acc = BigRational::zero();
    for k in 0..=n {
        if k > 0 {
            h += BigRational::new(BigInt::one(), BigInt::from(k));
        }
        let denom = &fact[k as usize] * &fact[(n - k) as usize];
        let term = &h * BigRational::new(BigInt::one(), denom);
        if k % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}
