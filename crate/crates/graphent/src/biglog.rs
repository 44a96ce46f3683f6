//! High-precision natural logarithm of arbitrary-precision integers.
//!
//! The growth sequences produce integers with thousands of digits; converting
//! them to `f64` before taking a logarithm would overflow at a few hundred
//! digits. Instead `ln` is computed here in 192-bit fixed point (≈ 57 decimal
//! digits) directly on the integer, and rounded to `f64` exactly once at the
//! end:
//!
//! * split `q = m · 2^e` with the mantissa `m ∈ [1, 2)` held in fixed point,
//! * `ln m = 2·atanh((m−1)/(m+1))` by the odd series (the argument is ≤ 1/3,
//!   so terms shrink by ≥ 9× and the series needs ~62 terms),
//! * `ln 2 = 2·atanh(1/3)` by the same series, computed once,
//! * `ln q = ln m + e·ln 2`.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

/// Fixed-point fraction bits used throughout this module.
pub const FRAC_BITS: u64 = 192;

/// atanh(y) = y + y³/3 + y⁵/5 + … for a fixed-point `y` with `0 ≤ y ≤ 1/3`.
fn atanh_fixed(y: &BigInt) -> BigInt {
    let ysq = (y * y) >> FRAC_BITS;
    let mut term = y.clone();
    let mut sum = BigInt::zero();
    let mut k = 1u64;
    while !term.is_zero() {
        sum += &term / k;
        term = (&term * &ysq) >> FRAC_BITS;
        k += 2;
    }
    sum
}

/// `ln 2` in fixed point, computed once.
fn ln2_fixed() -> &'static BigInt {
    static LN2: OnceLock<BigInt> = OnceLock::new();
    LN2.get_or_init(|| {
        let one_third = (BigInt::from(1) << FRAC_BITS) / 3;
        2 * atanh_fixed(&one_third)
    })
}

/// `ln q` in fixed point (value · 2^FRAC_BITS). Returns `None` for `q = 0`.
pub fn ln_fixed(q: &BigUint) -> Option<BigInt> {
    if q.is_zero() {
        return None;
    }
    let e = q.bits() - 1; // q = m · 2^e, m ∈ [1, 2)
    let m: BigInt = if e >= FRAC_BITS {
        BigInt::from(q >> (e - FRAC_BITS))
    } else {
        BigInt::from(q << (FRAC_BITS - e))
    };
    let one = BigInt::from(1) << FRAC_BITS;
    let y = ((&m - &one) << FRAC_BITS) / (&m + &one);
    let ln_m = 2 * atanh_fixed(&y);
    Some(ln_m + BigInt::from(e) * ln2_fixed())
}

/// Converts a fixed-point value to `f64` (one rounding).
pub fn fixed_to_f64(x: &BigInt) -> f64 {
    // |x| can exceed f64's mantissa but not its exponent range for any value
    // this crate produces (ln of a million-bit number is still below 10^6).
    let approx = x.to_f64().unwrap_or(if x.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    });
    approx * 2f64.powi(-(FRAC_BITS as i32))
}

/// `ln q` rounded to `f64`, or `None` for `q = 0`.
pub fn ln_f64(q: &BigUint) -> Option<f64> {
    ln_fixed(q).map(|v| fixed_to_f64(&v))
}

/// `ln(num/den)` computed as a fixed-point difference (no precision loss from
/// cancellation), or `None` when either argument is 0.
pub fn ln_ratio_f64(num: &BigUint, den: &BigUint) -> Option<f64> {
    let a = ln_fixed(num)?;
    let b = ln_fixed(den)?;
    Some(fixed_to_f64(&(a - b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use num_traits::One;

    #[test]
    fn ln_of_zero_and_one() {
        assert_eq!(ln_f64(&BigUint::zero()), None);
        assert_eq!(ln_f64(&BigUint::one()), Some(0.0));
    }

    #[test]
    fn ln_of_power_of_two() {
        let q = BigUint::one() << 1000u32;
        let got = ln_f64(&q).unwrap();
        assert!((got - 1000.0 * std::f64::consts::LN_2).abs() < 1e-10);
    }

    #[test]
    fn ln_of_small_integers_matches_f64() {
        for n in 2u64..200 {
            let got = ln_f64(&BigUint::from(n)).unwrap();
            assert!(
                (got - (n as f64).ln()).abs() < 1e-13,
                "ln({n}): {got} vs {}",
                (n as f64).ln()
            );
        }
    }

    #[test]
    fn ln_ten_matches_reference_to_55_digits() {
        // ln 10 to 60 decimal places (reference value computed independently
        // with the decimal module at 80-digit precision).
        let digits = "2302585092994045684017991454684364207601101488628772976033327900967572609677";
        let scale = digits.len() as u32 - 1; // value = digits / 10^scale
        let num: BigInt = digits.parse().unwrap();
        let expected = (num << FRAC_BITS) / BigInt::from(10u32).pow(scale);
        let got = ln_fixed(&BigUint::from(10u32)).unwrap();
        let err = (&got - &expected).abs();
        // A slack of 2^10 ulps at 2^-192 still certifies ~55 decimal digits.
        assert!(err < BigInt::from(1u32) << 10u32, "error {err} ulps");
    }

    #[test]
    fn ln_is_additive_at_high_precision() {
        let a = BigUint::from(123456789u64).pow(13);
        let b = BigUint::from(987654321u64).pow(11);
        let lhs = ln_fixed(&(&a * &b)).unwrap();
        let rhs = ln_fixed(&a).unwrap() + ln_fixed(&b).unwrap();
        let err = (&lhs - &rhs).abs();
        assert!(err < BigInt::from(1u32) << 12u32, "error {err} ulps");
    }

    #[test]
    fn ln_ratio_avoids_cancellation() {
        let big = BigUint::from(3u32).pow(1000);
        let bigger = &big * 3u32;
        let got = ln_ratio_f64(&bigger, &big).unwrap();
        assert!((got - 3f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn ln_of_huge_composite() {
        // ln(1001 · 5^1000) = ln 1001 + 1000 ln 5
        let q = BigUint::from(1001u32) * BigUint::from(5u32).pow(1000);
        let got = ln_f64(&q).unwrap();
        let expected = 1001f64.ln() + 1000.0 * 5f64.ln();
        assert!((got - expected).abs() < 1e-9);
    }
}
