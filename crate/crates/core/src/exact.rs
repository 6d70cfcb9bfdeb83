//! Exact arithmetic primitives shared across the crate.
//!
//! Path counts are arbitrary-precision nonnegative integers and every
//! probability or moment is an arbitrary-precision rational, so nothing in
//! the counting pipeline ever rounds. Floats appear only at the very edge,
//! through the conversion helpers below.

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

/// Arbitrary-precision nonnegative integer (path counts, binomials).
pub type ExactInt = BigUint;

/// Arbitrary-precision rational. `Ratio` keeps values in lowest terms with a
/// positive denominator, which is exactly the invariant we want.
pub type ExactRatio = Ratio<BigInt>;

/// Rational from a pair of exact counts (`den` must be nonzero).
pub fn ratio_int(num: &ExactInt, den: &ExactInt) -> ExactRatio {
    Ratio::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

/// Rational from machine integers.
pub fn ratio_u64(num: u64, den: u64) -> ExactRatio {
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

/// Round-to-nearest conversion of an exact rational to `f64`.
///
/// The numerator is shifted so the integer quotient retains ~55 significant
/// bits, divided exactly, and rescaled; the result is accurate to about one
/// ulp for any operand size (values outside the `f64` exponent range come
/// back as `0`/`inf`).
pub fn ratio_to_f64(r: &ExactRatio) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    let shift = den.bits() as i64 + 55 - num.bits() as i64;
    let scaled = if shift >= 0 {
        num << shift as u64
    } else {
        num >> (-shift) as u64
    };
    let q = (scaled / den).to_f64().unwrap_or(f64::INFINITY);
    let v = q * pow2(-shift);
    if r.numer().is_negative() {
        -v
    } else {
        v
    }
}

/// `2^e` over the full (and beyond the) f64 exponent range.
fn pow2(e: i64) -> f64 {
    if e > 1023 {
        f64::INFINITY
    } else if e < -1100 {
        0.0
    } else if e < -1022 {
        // subnormal range: split to avoid premature underflow
        2f64.powi(-1022) * 2f64.powi((e + 1022) as i32)
    } else {
        2f64.powi(e as i32)
    }
}

/// Natural logarithm of a positive big integer, from its leading 53 bits.
pub fn ln_biguint(x: &ExactInt) -> f64 {
    assert!(!x.is_zero(), "ln of zero");
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_f64().expect("53-bit value");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Serializes a rational as `num/den`, always spelling the denominator so
/// machine-readable output stays uniform.
pub fn format_ratio(r: &ExactRatio) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use std::str::FromStr;

    #[test]
    fn ratio_to_f64_small_values() {
        assert_eq!(ratio_to_f64(&ratio_u64(1, 2)), 0.5);
        assert_eq!(ratio_to_f64(&ratio_u64(3, 4)), 0.75);
        assert_eq!(ratio_to_f64(&ExactRatio::zero()), 0.0);
        let neg = ratio_u64(1, 3) - ratio_u64(2, 3);
        assert!((ratio_to_f64(&neg) + 1.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn ratio_to_f64_huge_operands() {
        // (2^600 + 1) / 2^601 is within an ulp of 0.5 even though neither
        // side fits in a float.
        let num = (ExactInt::one() << 600u32) + 1u32;
        let den = ExactInt::one() << 601u32;
        let v = ratio_to_f64(&ratio_int(&num, &den));
        assert!((v - 0.5).abs() < 1e-15);
    }

    #[test]
    fn ln_biguint_matches_known_values() {
        let x = ExactInt::from(1_000_000u64);
        assert!((ln_biguint(&x) - 6.0 * 10f64.ln()).abs() < 1e-12);
        let big = ExactInt::one() << 1000u32;
        assert!((ln_biguint(&big) - 1000.0 * std::f64::consts::LN_2).abs() < 1e-9);
    }

    #[test]
    fn format_round_trips_through_fromstr() {
        let r = ratio_u64(4, 6);
        let s = format_ratio(&r);
        assert_eq!(s, "2/3");
        assert_eq!(ExactRatio::from_str(&s).unwrap(), r);
        // integers keep an explicit denominator
        assert_eq!(format_ratio(&ratio_u64(5, 1)), "5/1");
    }
}
