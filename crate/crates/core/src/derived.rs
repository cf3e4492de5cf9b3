//! Functions derived from the exponential integral: the logarithmic integral
//! li(x) = Ei(log x), its positive root (the Ramanujan–Soldner constant),
//! and the Goodwin–Staton integral identity
//! ∫₀^∞ e^{−t²}/(t+x) dt = e^{−x²}√π ∫₀ˣ e^{t²} dt − ½ e^{−x²} Ei(x²),
//! with both sides computed by independent routes.

use crate::error::EvalError;
use crate::kahan::KahanSum;
use crate::quadrature::{integrate_adaptive, QuadConfig, QuadResult};
use crate::series::{ei_series, EvalMethod, EvalResult, SeriesPolicy};

/// Hard cap on |x| for the ∫₀ˣ e^{t²} dt series; beyond it the terms grow
/// past any useful f64 range before the factorial wins.
pub const ERF_SCALED_MAX_X: f64 = 6.0;

/// Largest x accepted by `goodwin_staton_rhs`: x² must stay inside the
/// range where the Ei series bound is tight.
pub const GOODWIN_STATON_MAX_X: f64 = 3.0;

fn li_domain_check(x: f64) -> Result<f64, EvalError> {
    if !x.is_finite() || x <= 0.0 {
        return Err(EvalError::domain("li requires finite x > 0"));
    }
    if x == 1.0 {
        return Err(EvalError::domain(
            "li is undefined at x = 1 (log 1 = 0 and Ei is undefined at 0)",
        ));
    }
    Ok(x.ln())
}

/// Logarithmic integral li(x) = Ei(log x), series route.
///
/// Defined for x in (0, 1) ∪ (1, ∞); for x < 1 the logarithm is negative and
/// Ei is evaluated on the negative half-line.
pub fn li(x: f64, policy: &SeriesPolicy) -> Result<EvalResult, EvalError> {
    let log_x = li_domain_check(x)?;
    ei_series(log_x, policy)
}

/// Logarithmic integral through the quadrature route, li(x) = Ei(log x).
/// Independent of the series path; used for cross-checks.
pub fn li_quadrature(x: f64, cfg: &QuadConfig) -> Result<EvalResult, EvalError> {
    let log_x = li_domain_check(x)?;
    crate::quadrature::ei_quadrature(log_x, cfg)
}

/// The Ramanujan–Soldner constant μ ≈ 1.451, the unique positive root of li.
///
/// Bracketing bisection on [1.1, 2] down to `tol`, then two safeguarded
/// Newton steps using li'(x) = 1/log x. Pure Newton from the middle of the
/// bracket can overshoot toward log x → 0, so steps leaving the bracket fall
/// back to its midpoint.
pub fn soldner_constant(tol: f64) -> Result<f64, EvalError> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(EvalError::domain("soldner_constant requires tol > 0"));
    }
    let policy = SeriesPolicy::default();
    let f = |x: f64| li(x, &policy).map(|r| r.value);

    let (mut lo, mut hi) = (1.1f64, 2.0f64);
    let f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if !(f_lo < 0.0 && f_hi > 0.0) {
        // li(1.1) < 0 < li(2) analytically; reaching this means the
        // evaluator itself is broken.
        return Err(EvalError::no_convergence_evals(2));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if !(lo < mid && mid < hi) {
            break; // f64 resolution reached
        }
        if f(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let mut root = 0.5 * (lo + hi);
    for _ in 0..2 {
        let fx = f(root)?;
        let candidate = root - fx * root.ln(); // Newton with li' = 1/log x
        root = if candidate > lo && candidate < hi {
            candidate
        } else {
            0.5 * (lo + hi)
        };
    }
    Ok(root)
}

/// ∫₀ˣ e^{t²} dt via the everywhere-convergent odd series
/// Σ_{n≥0} x^{2n+1}/(n!(2n+1)), with a geometric tail bound.
///
/// Odd in x exactly by construction: every term flips sign with x.
pub fn erf_scaled_core(x: f64, policy: &SeriesPolicy) -> Result<EvalResult, EvalError> {
    policy.validate()?;
    if !x.is_finite() || x.abs() > ERF_SCALED_MAX_X {
        return Err(EvalError::domain(format!(
            "erf_scaled_core requires |x| <= {ERF_SCALED_MAX_X}"
        )));
    }
    let x_sq = x * x;
    let mut acc = KahanSum::new();
    let mut abs_acc = 0.0f64;
    let mut term = x; // n = 0 term
    let mut n: usize = 0;
    loop {
        acc.add(term);
        abs_acc += term.abs();
        // u_{n+1}/u_n = x²(2n+1)/((n+1)(2n+3)), decreasing in n
        let nf = n as f64;
        let ratio = x_sq * (2.0 * nf + 1.0) / ((nf + 1.0) * (2.0 * nf + 3.0));
        let next = term * ratio;
        if term.abs() <= 0.5 * policy.abs_tol.max(policy.rel_tol * acc.value().abs())
            && ratio <= 0.5
        {
            let tail_bound = 2.0 * next.abs();
            let roundoff = (n + 1) as f64 * f64::EPSILON * abs_acc;
            return Ok(EvalResult {
                value: acc.value(),
                error_bound: tail_bound + roundoff,
                method: EvalMethod::PuiseuxSeries,
                work: n + 1,
            });
        }
        if n + 1 >= policy.max_terms {
            return Err(EvalError::no_convergence_terms(n + 1));
        }
        term = next;
        n += 1;
    }
}

/// Right-hand side of the Goodwin–Staton identity:
/// e^{−x²}√π ∫₀ˣ e^{t²} dt − ½ e^{−x²} Ei(x²), assembled from
/// `erf_scaled_core` and the Ei series.
pub fn goodwin_staton_rhs(x: f64, policy: &SeriesPolicy) -> Result<EvalResult, EvalError> {
    if !x.is_finite() || x <= 0.0 {
        return Err(EvalError::domain("goodwin_staton_rhs requires x > 0"));
    }
    if x > GOODWIN_STATON_MAX_X {
        return Err(EvalError::domain(format!(
            "goodwin_staton_rhs requires x <= {GOODWIN_STATON_MAX_X} (x² within the Ei series range)"
        )));
    }
    let core = erf_scaled_core(x, policy)?;
    let ei = ei_series(x * x, policy)?;
    let damp = (-x * x).exp();
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let value = damp * (sqrt_pi * core.value - 0.5 * ei.value);
    let propagated = damp * (sqrt_pi * core.error_bound + 0.5 * ei.error_bound);
    let roundoff = 4.0 * f64::EPSILON * damp * (sqrt_pi * core.value.abs() + 0.5 * ei.value.abs());
    Ok(EvalResult {
        value,
        error_bound: propagated + roundoff,
        method: EvalMethod::PuiseuxSeries,
        work: core.work + ei.work,
    })
}

/// Left-hand side of the Goodwin–Staton identity, the direct integral
/// ∫₀^∞ e^{−t²}/(t+x) dt, truncated where the Gaussian tail bound
/// e^{−T²}/(2T(T+x)) drops below `tail_cut_tol`.
pub fn goodwin_staton_lhs(x: f64, cfg: &QuadConfig) -> Result<QuadResult, EvalError> {
    if !x.is_finite() || x <= 0.0 {
        return Err(EvalError::domain("goodwin_staton_lhs requires x > 0"));
    }
    let mut cut = 2.0f64;
    while (-cut * cut).exp() / (2.0 * cut * (cut + x)) > cfg.tail_cut_tol && cut < 40.0 {
        cut += 0.5;
    }
    let tail_bound = (-cut * cut).exp() / (2.0 * cut * (cut + x));
    let quad = integrate_adaptive(|t: f64| (-t * t).exp() / (t + x), 0.0, cut, cfg)?;
    Ok(QuadResult {
        value: quad.value,
        error_estimate: quad.error_estimate + tail_bound,
        evaluations: quad.evaluations,
        converged: quad.converged,
    })
}

/// Both sides of the Goodwin–Staton identity at one abscissa, with the
/// absolute difference recomputed from the stored sides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoodwinStatonCheck {
    pub x: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_diff: f64,
}

/// Evaluates both routes of the identity at `x` and packages the comparison.
pub fn goodwin_staton_check(
    x: f64,
    policy: &SeriesPolicy,
    cfg: &QuadConfig,
) -> Result<GoodwinStatonCheck, EvalError> {
    let lhs = goodwin_staton_lhs(x, cfg)?.value;
    let rhs = goodwin_staton_rhs(x, policy)?.value;
    Ok(GoodwinStatonCheck {
        x,
        lhs,
        rhs,
        abs_diff: (lhs - rhs).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::ei_quadrature;

    fn policy() -> SeriesPolicy {
        SeriesPolicy::default()
    }

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    #[test]
    fn li_at_e_is_ei_at_one() {
        let r = li(std::f64::consts::E, &policy()).unwrap();
        assert_eq!((r.value * 1000.0).round(), 1895.0); // Ei(1) ≈ 1.895
    }

    #[test]
    fn li_domain_errors() {
        assert!(matches!(li(1.0, &policy()), Err(EvalError::Domain(_))));
        assert!(matches!(li(0.0, &policy()), Err(EvalError::Domain(_))));
        assert!(matches!(li(-2.0, &policy()), Err(EvalError::Domain(_))));
    }

    #[test]
    fn li_at_two_matches_quadrature_oracle() {
        let series = li(2.0, &policy()).unwrap();
        let oracle = li_quadrature(2.0, &cfg()).unwrap();
        assert!(
            (series.value - oracle.value).abs() <= series.error_bound + oracle.error_bound + 1e-12
        );
        assert!((series.value - 1.045_163_780_117_492_7).abs() <= 1e-12);
    }

    #[test]
    fn li_is_increasing_above_one() {
        let grid = [1.2, 1.5, 2.0, 3.0, 5.0, 10.0];
        let mut prev = f64::NEG_INFINITY;
        for &x in &grid {
            let v = li(x, &policy()).unwrap().value;
            assert!(v > prev, "li must increase at x = {x}");
            prev = v;
        }
    }

    #[test]
    fn soldner_constant_examples() {
        let mu = soldner_constant(1e-12).unwrap();
        assert_eq!((mu * 1000.0).round(), 1451.0); // μ ≈ 1.451
                                                   // root-finder residual contract
        let residual = li(mu, &policy()).unwrap().value;
        assert!(residual.abs() <= 10.0 * 1e-12 / mu.ln().abs());
        // fixed point under BOTH Ei routes
        let via_quad = li_quadrature(mu, &cfg()).unwrap().value;
        assert!(via_quad.abs() <= 1e-9);
    }

    #[test]
    fn soldner_constant_agrees_with_quadrature_route_bisection() {
        // independent oracle: bisection on the quadrature-route li only
        let f = |x: f64| li_quadrature(x, &cfg()).unwrap().value;
        let (mut lo, mut hi) = (1.1f64, 2.0f64);
        assert!(f(lo) < 0.0 && f(hi) > 0.0);
        while hi - lo > 1e-12 {
            let mid = 0.5 * (lo + hi);
            if f(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let oracle = 0.5 * (lo + hi);
        assert!((oracle - 1.451_369_234_883_381).abs() <= 1e-10);
        let mu = soldner_constant(1e-12).unwrap();
        assert!((mu - oracle).abs() <= 1e-10);
    }

    #[test]
    fn erf_scaled_core_basics() {
        let r = erf_scaled_core(0.0, &policy()).unwrap();
        assert_eq!(r.value, 0.0);
        // odd exactly by construction
        for x in [0.3, 1.0, 2.5, 5.5] {
            let plus = erf_scaled_core(x, &policy()).unwrap().value;
            let minus = erf_scaled_core(-x, &policy()).unwrap().value;
            assert_eq!(plus, -minus);
        }
        assert!(matches!(
            erf_scaled_core(6.5, &policy()),
            Err(EvalError::Domain(_))
        ));
    }

    #[test]
    fn erf_scaled_core_matches_quadrature_oracle_at_one() {
        let oracle = integrate_adaptive(|t: f64| (t * t).exp(), 0.0, 1.0, &cfg()).unwrap();
        assert!((oracle.value - 1.462_651_745_907_181_6).abs() <= 1e-12);
        let series = erf_scaled_core(1.0, &policy()).unwrap();
        assert!(
            (series.value - oracle.value).abs()
                <= series.error_bound + oracle.error_estimate + 1e-13
        );
    }

    #[test]
    fn erf_scaled_core_derivative_is_exp_x_squared() {
        let h = 1e-5;
        for x in [0.5f64, 1.0] {
            let plus = erf_scaled_core(x + h, &policy()).unwrap().value;
            let minus = erf_scaled_core(x - h, &policy()).unwrap().value;
            let fd = (plus - minus) / (2.0 * h);
            let truth = (x * x).exp();
            assert!(((fd - truth) / truth).abs() <= 1e-6, "x = {x}");
        }
    }

    #[test]
    fn goodwin_staton_lhs_bounds() {
        // 0 < ∫₀^∞ e^{−t²}/(t+x) dt < √π/(2x) by integrand domination
        for x in [0.5f64, 1.0, 2.0] {
            let r = goodwin_staton_lhs(x, &cfg()).unwrap();
            assert!(r.value > 0.0);
            assert!(r.value < std::f64::consts::PI.sqrt() / (2.0 * x));
        }
    }

    #[test]
    fn goodwin_staton_sides_agree() {
        for x in [0.5f64, 1.0, 2.0, 3.0] {
            let check = goodwin_staton_check(x, &policy(), &cfg()).unwrap();
            let lhs_err = goodwin_staton_lhs(x, &cfg()).unwrap().error_estimate;
            let rhs_err = goodwin_staton_rhs(x, &policy()).unwrap().error_bound;
            assert!(
                check.abs_diff <= lhs_err + rhs_err + 1e-9,
                "x = {x}: diff {}",
                check.abs_diff
            );
        }
    }

    #[test]
    fn goodwin_staton_rhs_diverges_like_lhs_for_small_x() {
        // Ei(x²) ~ log(x²) → −∞, so the RHS grows like the LHS's −log x
        let r01 = goodwin_staton_rhs(0.1, &policy()).unwrap().value;
        let r001 = goodwin_staton_rhs(0.01, &policy()).unwrap().value;
        let r0001 = goodwin_staton_rhs(0.001, &policy()).unwrap().value;
        assert!(r0001 > r001 && r001 > r01);
        assert!(r0001 > 5.0);
        // and it still matches the direct integral out there
        let lhs = goodwin_staton_lhs(0.01, &cfg()).unwrap();
        assert!((lhs.value - r001).abs() <= 1e-8);
    }

    #[test]
    fn goodwin_staton_domain_errors() {
        assert!(goodwin_staton_rhs(0.0, &policy()).is_err());
        assert!(goodwin_staton_rhs(-1.0, &policy()).is_err());
        assert!(goodwin_staton_rhs(3.5, &policy()).is_err());
        assert!(goodwin_staton_lhs(0.0, &cfg()).is_err());
        assert!(goodwin_staton_check(1.0, &policy(), &cfg()).is_ok());
    }

    #[test]
    fn ei_routes_agree_at_log_two() {
        // belt-and-braces: the value behind li(2) via both Ei routes
        let series = crate::series::ei_series(std::f64::consts::LN_2, &policy()).unwrap();
        let quad = ei_quadrature(std::f64::consts::LN_2, &cfg()).unwrap();
        assert!((series.value - quad.value).abs() <= series.error_bound + quad.error_bound + 1e-12);
    }
}
