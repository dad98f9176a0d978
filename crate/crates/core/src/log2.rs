//! Base-2 logarithms of arbitrary-precision integers.
//!
//! `log2(x)` is recovered from the bit length plus the log of a 96-bit
//! mantissa taken from the top of `x`. Truncating to 96 bits perturbs the
//! log by less than `2^-95/ln 2`, far below anything a 64-bit float can
//! represent, so the returned value is accurate to a few ulps of the
//! result.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

const MANTISSA_BITS: u64 = 96;

/// Method error excluding final-result rounding: the 96-bit truncation,
/// the mantissa's f64 conversion, and one libm log2 rounding.
const METHOD_ERROR: f64 = 2e-14;

/// `log2(x)` for `x >= 1`, certified to an absolute error of
/// `10^-digits`.
///
/// Fails with [`Error::PrecisionUnattainable`] when the requested
/// tolerance is finer than f64 resolution at the result's magnitude, and
/// with [`Error::LogOfZero`] for `x = 0`.
pub fn log2_of(x: &BigUint, digits: u32) -> Result<f64> {
    let value = log2_lossy(x)?;
    let achievable = METHOD_ERROR + 2.0 * ulp(value);
    if 10f64.powi(-(digits as i32)) < achievable {
        return Err(Error::PrecisionUnattainable {
            digits,
            magnitude: value,
        });
    }
    Ok(value)
}

/// `log2(x)` with no tolerance certificate: accurate to `METHOD_ERROR`
/// plus rounding at the result's magnitude.
pub fn log2_lossy(x: &BigUint) -> Result<f64> {
    if x.is_zero() {
        return Err(Error::LogOfZero);
    }
    let bits = x.bits();
    let mantissa: u128 = if bits <= MANTISSA_BITS {
        x.to_u128().expect("<= 96 bits fits in u128")
    } else {
        (x >> (bits - MANTISSA_BITS))
            .to_u128()
            .expect("96 bits fits in u128")
    };
    let shift = bits.saturating_sub(MANTISSA_BITS) as f64;
    Ok(shift + (mantissa as f64).log2())
}

fn ulp(x: f64) -> f64 {
    let next = f64::from_bits(x.abs().to_bits() + 1);
    next - x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn log2_of_one_is_zero() {
        assert_eq!(log2_of(&big(1), 12).unwrap(), 0.0);
    }

    #[test]
    fn log2_of_zero_is_an_error() {
        assert!(matches!(log2_of(&big(0), 12), Err(Error::LogOfZero)));
    }

    #[test]
    fn powers_of_two_are_exact() {
        for k in [1u32, 10, 53, 96, 100, 500, 4000] {
            let x = BigUint::from(1u32) << k;
            assert_eq!(log2_of(&x, 12).unwrap(), k as f64, "k={k}");
        }
    }

    #[test]
    fn table_values() {
        // log2(10) and log2(117) to full f64 precision
        assert!((log2_of(&big(10), 12).unwrap() - 3.321928094887362).abs() < 1e-12);
        assert!((log2_of(&big(117), 12).unwrap() - 6.870364719583405).abs() < 1e-12);
    }

    #[test]
    fn unattainable_tolerance_is_reported() {
        // log2 of a ~2^40000 number is ~40000; 1e-12 absolute is below
        // f64 resolution there
        let x = BigUint::from(3u32).pow(25_000);
        assert!(matches!(
            log2_of(&x, 12),
            Err(Error::PrecisionUnattainable { .. })
        ));
        assert!(log2_of(&x, 9).is_ok());
    }

    #[test]
    fn matches_f64_log_on_small_inputs() {
        for n in 1..=10_000u64 {
            let mine = log2_lossy(&big(n)).unwrap();
            let reference = (n as f64).log2();
            assert!((mine - reference).abs() <= 1e-13, "n={n}");
        }
    }
}
