//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Every tolerance is pinned here, in code.

use eikit_core::{
    alternating_harmonic_exp_sum, binomial_harmonic_lhs, convolution_coefficient_check,
    cpv_integrate, ei_one, ei_quadrature, ei_series, gamma_integral, gamma_reference, harmonic,
    integrate_adaptive, lemma1_series, lemma2_integral, li, li_quadrature, puiseux_tail,
    soldner_constant, BigRational, QuadConfig, RegularizedPoleIntegrand, SeriesPolicy,
};
use num_bigint::BigInt;
use num_traits::One;

fn policy() -> SeriesPolicy {
    SeriesPolicy::default()
}

fn cfg() -> QuadConfig {
    QuadConfig::default()
}

fn report(criterion: &str, detail: &str) {
    println!("acceptance {criterion}: PASS ({detail})");
}

#[test]
fn criterion_01_puiseux_representation_grid() {
    let grid = [-4.0f64, -2.0, -1.0, -0.5, -0.25, 0.25, 0.5, 1.0, 2.0, 4.0];
    let mut worst: f64 = 0.0;
    for &x in &grid {
        let s = ei_series(x, &policy()).unwrap();
        let q = ei_quadrature(x, &cfg()).unwrap();
        assert!(
            s.error_bound <= 1e-10,
            "series bound at x = {x} is {}",
            s.error_bound
        );
        assert!(
            q.error_bound <= 1e-10,
            "quadrature bound at x = {x} is {}",
            q.error_bound
        );
        let diff = (s.value - q.value).abs();
        assert!(
            diff <= s.error_bound + q.error_bound + 1e-12,
            "x = {x}: diff {diff} exceeds combined bounds"
        );
        worst = worst.max(diff);
    }
    report(
        "criterion 01 (series/quadrature agreement on the grid)",
        &format!("worst diff {worst:.3e}"),
    );
}

#[test]
fn criterion_02_gamma_three_ways() {
    let integral = gamma_integral(&cfg());
    assert!(integral.converged);
    let harmonic_oracle = gamma_reference(1_000_000);
    let ei_route = ei_quadrature(1.0, &cfg()).unwrap().value
        - 1.0f64.ln()
        - puiseux_tail(1.0, &policy()).unwrap().value;
    let pairs = [
        ("integral vs oracle", integral.value, harmonic_oracle),
        ("integral vs ei route", integral.value, ei_route),
        ("oracle vs ei route", harmonic_oracle, ei_route),
    ];
    for (label, a, b) in pairs {
        assert!((a - b).abs() <= 1e-10, "{label}: {a} vs {b}");
    }
    report(
        "criterion 02 (gamma by three independent routes)",
        &format!("values near {harmonic_oracle:.15}"),
    );
}

#[test]
fn criterion_03_ei_one_series_vs_quadrature() {
    let series = ei_one(&policy()).unwrap();
    let quad = ei_quadrature(1.0, &cfg()).unwrap();
    assert!((series.value - quad.value).abs() <= 1e-10);
    assert_eq!(
        (series.value * 1000.0).round(),
        1895.0,
        "Ei(1) must round to 1.895 at three decimals"
    );
    report(
        "criterion 03 (Ei(1) identity and stated 3-decimal value)",
        &format!("Ei(1) = {:.12}", series.value),
    );
}

#[test]
fn criterion_04_lemma2_integral() {
    let l2 = lemma2_integral(&cfg());
    assert!(l2.converged);
    let rhs = gamma_reference(1_000_000) - ei_quadrature(1.0, &cfg()).unwrap().value;
    let diff = (l2.value - rhs).abs();
    assert!(diff <= 1e-9, "diff = {diff}");
    report(
        "criterion 04 (integral of (1-e^(1-t))/(1-t) equals gamma - Ei(1))",
        &format!("diff {diff:.3e}"),
    );
}

#[test]
fn criterion_05_interchange_series() {
    let alt = alternating_harmonic_exp_sum(&policy()).unwrap();
    let rhs = gamma_reference(1_000_000) - ei_quadrature(1.0, &cfg()).unwrap().value;
    let diff = (alt.value - rhs).abs();
    assert!(diff <= 1e-9, "diff = {diff}");
    report(
        "criterion 05 (alternating harmonic exponential sum equals gamma - Ei(1))",
        &format!("diff {diff:.3e}"),
    );
}

#[test]
fn criterion_06_exact_identities() {
    for n in 1..=30u64 {
        assert_eq!(
            binomial_harmonic_lhs(n),
            BigRational::new(BigInt::one(), BigInt::from(n)),
            "binomial-harmonic identity at n = {n}"
        );
        let mut fact = BigInt::one();
        for k in 2..=n {
            fact *= k;
        }
        assert_eq!(
            convolution_coefficient_check(n),
            BigRational::new(BigInt::one(), BigInt::from(n) * fact),
            "convolution coefficient at n = {n}"
        );
    }
    report(
        "criterion 06 (exact identities, bit-exact rationals, n = 1..=30)",
        "60 identities",
    );
}

#[test]
fn criterion_07_lemma1_route() {
    for x in [0.5f64, 2.0] {
        let l = lemma1_series(x, &policy()).unwrap();
        let s = ei_series(x, &policy()).unwrap();
        let one = ei_one(&policy()).unwrap();
        let rhs = s.value - one.value;
        let combined = l.eval.error_bound + s.error_bound + one.error_bound;
        assert!(
            (l.eval.value - rhs).abs() <= combined,
            "x = {x}: {} vs {rhs}",
            l.eval.value
        );
    }
    report(
        "criterion 07 (integration-by-parts route matches Ei(x) - Ei(1))",
        "x in {0.5, 2}",
    );
}

#[test]
fn criterion_08_goodwin_staton_identity() {
    for x in [0.5f64, 1.0, 2.0] {
        let check = eikit_core::goodwin_staton_check(x, &policy(), &cfg()).unwrap();
        assert!(
            check.abs_diff <= 1e-8,
            "x = {x}: |lhs - rhs| = {}",
            check.abs_diff
        );
    }
    report(
        "criterion 08 (Goodwin-Staton integral vs Ei-based assembly)",
        "x in {0.5, 1, 2}",
    );
}

#[test]
fn criterion_09_soldner_constant() {
    let mu = soldner_constant(1e-12).unwrap();
    assert_eq!((mu * 1000.0).round(), 1451.0, "mu must round to 1.451");
    let via_series = li(mu, &policy()).unwrap().value;
    let via_quad = li_quadrature(mu, &cfg()).unwrap().value;
    assert!(via_series.abs() <= 1e-9, "series li(mu) = {via_series}");
    assert!(via_quad.abs() <= 1e-9, "quadrature li(mu) = {via_quad}");
    report(
        "criterion 09 (Soldner constant is the root of li under both routes)",
        &format!("mu = {mu:.15}"),
    );
}

#[test]
fn criterion_10_property_suites() {
    // harmonic recurrence, exact
    for n in 1..=100u64 {
        assert_eq!(
            harmonic(n) - harmonic(n - 1),
            BigRational::new(BigInt::one(), BigInt::from(n))
        );
    }

    // Ei monotone on both half-lines
    let mut prev = f64::NEG_INFINITY;
    for x in [-4.0f64, -2.0, -1.0, -0.5, -0.25] {
        let v = ei_quadrature(x, &cfg()).unwrap().value;
        if prev.is_finite() {
            assert!(v < prev, "Ei must decrease toward 0- (x = {x})");
        }
        prev = v;
    }
    let mut prev = f64::NEG_INFINITY;
    for x in [0.25f64, 0.5, 1.0, 2.0, 4.0] {
        let v = ei_quadrature(x, &cfg()).unwrap().value;
        assert!(v > prev, "Ei must increase on x > 0 (x = {x})");
        prev = v;
    }

    // derivative finite differences: Ei'(x) = e^x / x
    let h = 1e-4;
    for x in [0.5f64, -0.5, 2.0, -2.0] {
        let fd = (ei_quadrature(x + h, &cfg()).unwrap().value
            - ei_quadrature(x - h, &cfg()).unwrap().value)
            / (2.0 * h);
        let truth = x.exp() / x;
        assert!(((fd - truth) / truth).abs() <= 1e-5, "x = {x}");
    }

    // empirical validation of the exponential tail bound
    for t_cut in [-2.0f64, -5.0, -10.0] {
        let quad = integrate_adaptive(|t: f64| t.exp() / t, t_cut - 20.0, t_cut, &cfg()).unwrap();
        assert!(quad.value.abs() <= t_cut.exp() / t_cut.abs());
    }

    // CPV of an odd integrand over a symmetric interval is exactly zero
    let constant_numerator = RegularizedPoleIntegrand {
        numerator: |_| 1.0,
        pole_location: 0.0,
        limit_at_pole: 0.0,
    };
    let r = cpv_integrate(&constant_numerator, -1.0, 1.0, &cfg()).unwrap();
    assert_eq!(r.value, 0.0);

    report(
        "criterion 10 (property suites)",
        "recurrence, monotonicity, derivatives, tail bound, CPV zero",
    );
}
