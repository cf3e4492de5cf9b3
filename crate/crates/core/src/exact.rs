//! Exact big-integer kernels shared by the series evaluators and the
//! verification oracles: harmonic sums by binary splitting, factorials, and
//! correctly-rounded conversion of huge fractions to `f64`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact sum of 1/k for k in `lo..=hi` as an unreduced fraction.
///
/// Classic binary splitting; ranges of at most four terms are folded in
/// `u128` before touching heap integers, which keeps the leaf overhead low.
/// (Four factors below 2^31 cannot overflow the u128 product.)
pub(crate) fn harmonic_sum_frac(lo: u64, hi: u64) -> (BigInt, BigInt) {
    debug_assert!(1 <= lo && lo <= hi);
    if hi - lo < 4 && hi < 1 << 31 {
        let (mut p, mut q) = (0u128, 1u128);
        for k in lo..=hi {
            p = p * k as u128 + q;
            q *= k as u128;
        }
        (BigInt::from(p), BigInt::from(q))
    } else if lo == hi {
        (BigInt::one(), BigInt::from(lo))
    } else {
        let mid = lo + (hi - lo) / 2;
        let (p1, q1) = harmonic_sum_frac(lo, mid);
        let (p2, q2) = harmonic_sum_frac(mid + 1, hi);
        (&p1 * &q2 + &p2 * &q1, q1 * q2)
    }
}

/// H_n = sum of 1/k for k = 1..=n, in lowest terms. H_0 is the empty sum.
pub(crate) fn harmonic_rational(n: u64) -> BigRational {
    if n == 0 {
        return BigRational::zero();
    }
    let (p, q) = harmonic_sum_frac(1, n);
    BigRational::new(p, q)
}

pub(crate) fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::from(1u8);
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// 2^e as an f64, exact for any representable exponent.
fn pow2(e: i64) -> f64 {
    if (-1022..=1023).contains(&e) {
        f64::from_bits(((e + 1023) as u64) << 52)
    } else if e > 1023 {
        f64::INFINITY
    } else if e >= -1074 {
        // subnormal range
        f64::from_bits(1u64 << (e + 1074))
    } else {
        0.0
    }
}

/// Decomposes a finite nonzero f64 as m * 2^e with integer m (<= 53 bits).
fn split_f64(x: f64) -> (i64, i64) {
    debug_assert!(x.is_finite() && x != 0.0);
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1i64 } else { 1i64 };
    let biased = ((bits >> 52) & 0x7ff) as i64;
    let frac = (bits & ((1u64 << 52) - 1)) as i64;
    if biased == 0 {
        (sign * frac, -1074)
    } else {
        (sign * (frac | (1i64 << 52)), biased - 1075)
    }
}

/// Rounds the exact fraction `num/den` to the nearest f64 (error below one
/// ulp), without ever materializing the quotient at full precision.
///
/// Works for operands of any size: the quotient is formed with ~96
/// significant bits and then scaled by an exact power of two.
pub(crate) fn ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    assert!(!den.is_zero(), "ratio_to_f64: zero denominator");
    if num.is_zero() {
        return 0.0;
    }
    let negative = num.is_negative() != den.is_negative();
    let a: &BigUint = num.magnitude();
    let b: &BigUint = den.magnitude();
    let shift = 96 - (a.bits() as i64 - b.bits() as i64);
    let q = if shift >= 0 {
        (a << shift as u64) / b
    } else {
        a / (b << (-shift) as u64)
    };
    // 95..=97 significant bits by construction
    let q = q.to_u128().expect("quotient sized to fit u128");
    let value = (q as f64) * pow2(-shift);
    if negative {
        -value
    } else {
        value
    }
}

/// Rounds `num/den` to an unevaluated double-double pair `(hi, lo)` with
/// `hi + lo` within ~2^-104 relative of the true value.
pub(crate) fn ratio_to_dd(num: &BigInt, den: &BigInt) -> (f64, f64) {
    let hi = ratio_to_f64(num, den);
    if hi == 0.0 || !hi.is_finite() {
        return (hi, 0.0);
    }
    // Exact residual num/den - hi, with hi = m * 2^e.
    let (m, e) = split_f64(hi);
    let m = BigInt::from(m);
    let (r_num, r_den) = if e >= 0 {
        (num - (m << e as u64) * den, den.clone())
    } else {
        ((num << (-e) as u64) - m * den, den << (-e) as u64)
    };
    (hi, ratio_to_f64(&r_num, &r_den))
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// Double-double addition (Knuth two-sum with renormalization).
pub(crate) fn dd_add(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    let (s, e) = two_sum(a.0, b.0);
    let e = e + a.1 + b.1;
    let hi = s + e;
    let lo = e - (hi - s);
    (hi, lo)
}
