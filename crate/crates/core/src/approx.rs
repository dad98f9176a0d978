//! The limit `e * (N!)^2`, the sandwich bounds that pin `S(N)` against
//! it, the ratio analysis behind them, Stirling's formula, and error
//! reporting.
//!
//! Every inequality here is decided in exact rational arithmetic with
//! `e` (and `pi`) as certified brackets; nothing is trusted to float
//! rounding.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinatorics::{factorial, s_envelope, sum_ratio};
use crate::error::{Error, Result};
use crate::interval::{e_interval, e_interval_with_width, pi_interval, RationalInterval};
use crate::log2::log2_of;

/// `e * (n!)^2` bracketed to a relative width of at most 1e-30.
pub fn rps_envelope_limit(n: u32) -> RationalInterval {
    assert!(n >= 1, "rps_envelope_limit requires n >= 1");
    let fact = BigRational::from_integer(BigInt::from(factorial(n)));
    let square = &fact * &fact;
    // the e-bracket's relative width survives exact scaling unchanged
    e_interval_with_width(31).scale(&square)
}

/// `log2(e * (n!)^2) = log2(e) + 2 log2(n!)`.
pub fn h_lim_rps(n: u32) -> Result<f64> {
    assert!(n >= 1, "h_lim_rps requires n >= 1");
    Ok(std::f64::consts::LOG2_E + 2.0 * log2_of(&factorial(n), 12)?)
}

/// Largest `n` for which the Stirling value is produced directly; above
/// it only the log-domain form is offered.
pub const STIRLING_DIRECT_CAP: u32 = 170;

/// Stirling's approximation `sqrt(2 pi n) * (n/e)^n` as a high-precision
/// rational, certified to a relative error well below 1e-12.
///
/// Evaluated as directed integer bounds at a fixed decimal scale: `pi`
/// from its 50-digit literal, `e^n` from integer powers of the Taylor
/// bracket's endpoints, the square root by integer roots, divisions
/// floored or ceiled toward the bound they serve. Integer powers keep
/// the whole computation free of rational reductions. The midpoint is
/// returned after checking the enclosure width.
pub fn stirling(n: u32) -> Result<BigRational> {
    if !(1..=STIRLING_DIRECT_CAP).contains(&n) {
        return Err(Error::StirlingRange { n });
    }
    const GUARD: u32 = 40; // working scale 10^GUARD
    const E_TERMS: u32 = 25; // e-bracket width 1/(25! * 25), ~2.6e-27

    // sqrt(2 pi n) * 10^GUARD, bracketed by integer square roots; the
    // pi literal carries 49 decimal places, so fold the spare factor of
    // 10^(2 GUARD - 49) into the radicand.
    let pi_bounds = pi_interval();
    let spare = BigUint::from(10u32).pow(2 * GUARD - 49);
    let scale49 = BigInt::from(10u32).pow(49);
    let pi_lo_int = (pi_bounds.lo() * &scale49).to_integer().to_biguint().unwrap();
    let pi_hi_int = pi_lo_int.clone() + BigUint::one();
    let two_n = BigUint::from(2 * n);
    let root_lo = (&two_n * pi_lo_int * &spare).sqrt();
    let root_hi = (&two_n * pi_hi_int * spare).sqrt() + BigUint::one();

    // e^n in [sa^n / m!^n, (sa m + 1)^n / (m! m)^n]
    let sa_m = crate::combinatorics::sa(E_TERMS);
    let fact_m = factorial(E_TERMS);
    let e_lo_num = sa_m.pow(n);
    let e_lo_den = fact_m.pow(n);
    let e_hi_num = (&sa_m * BigUint::from(E_TERMS) + BigUint::one()).pow(n);
    let e_hi_den = (&fact_m * BigUint::from(E_TERMS)).pow(n);

    let n_pow = BigUint::from(n).pow(n);
    // lower bound: floor(root_lo * n^n / e_hi); upper: ceil with e_lo
    let lo = root_lo * &n_pow * e_hi_den / e_hi_num;
    let hi_num = root_hi * n_pow * e_lo_den;
    let hi = (&hi_num + &e_lo_num - BigUint::one()) / e_lo_num;

    // certify the enclosure: (hi - lo)/lo < 1e-14
    assert!(
        (&hi - &lo) * BigUint::from(10u64.pow(14)) < lo,
        "stirling enclosure unexpectedly loose at n = {n}"
    );
    let midpoint = BigRational::new(
        BigInt::from(lo + hi),
        BigInt::from(2u32) * BigInt::from(10u32).pow(GUARD),
    );
    Ok(midpoint)
}

/// `log2` of Stirling's approximation, valid for any `n >= 1`:
/// `0.5 log2(2 pi n) + n (log2 n - log2 e)`.
pub fn stirling_log2(n: u32) -> f64 {
    assert!(n >= 1);
    let n_f = n as f64;
    0.5 * (2.0 * std::f64::consts::PI * n_f).log2()
        + n_f * (n_f.log2() - std::f64::consts::LOG2_E)
}

/// Verdict of an interval comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated,
    Indeterminate,
}

/// One sandwich check: `sup(lower) <= S(n) <= inf(upper)` at the achieved
/// `e`-precision.
#[derive(Debug, Clone)]
pub struct BoundsCheck {
    pub n: u32,
    pub lower: RationalInterval,
    pub upper: RationalInterval,
    pub value: BigRational,
    pub verdict: Verdict,
}

/// Check `e n! (T(n) - 2) + 1 <= S(n) <= e n! (T(n) - 1) + 2` where
/// `T(n) = sum_{u=1}^{n} u!/(n-u)!`, refining the `e`-bracket until the
/// verdict is decided or the refinement cap is hit (then
/// `Indeterminate`, never a silent pass).
pub fn sandwich_bounds(n: u32) -> BoundsCheck {
    assert!(n >= 1, "sandwich_bounds requires n >= 1");
    let value = BigRational::from_integer(BigInt::from(s_envelope(n)));
    let fact = BigRational::from_integer(BigInt::from(factorial(n)));
    let ratio_sum = sum_ratio(n);
    let one = BigRational::one();
    let two = &one + &one;
    let lower_coeff = &fact * (&ratio_sum - &two);
    let upper_coeff = &fact * (&ratio_sum - &one);

    let mut terms = n + 10;
    for round in 0..=4 {
        let e_bracket = e_interval(terms);
        let lower = e_bracket.scale(&lower_coeff).shift(&one);
        let upper = e_bracket.scale(&upper_coeff).shift(&two);
        let verdict = if lower.hi() <= &value && &value <= upper.lo() {
            Verdict::Holds
        } else if &value < lower.lo() || upper.hi() < &value {
            Verdict::Violated
        } else if round == 4 {
            Verdict::Indeterminate
        } else {
            terms *= 2;
            continue;
        };
        return BoundsCheck {
            n,
            lower,
            upper,
            value,
            verdict,
        };
    }
    unreachable!("loop returns on the final round");
}

/// Exact ratio analysis: returns `T(n)/n! - 1` and the proof's bound
/// `(n-2)/(2n(n-1)) + 1/n`, both exact rationals. Requires `n >= 3`
/// (the split at `u = n-2, n-1, n` does).
pub fn ratio_bound(n: u32) -> Result<(BigRational, BigRational)> {
    if n < 3 {
        return Err(Error::NBelowMinimum { n, min: 3 });
    }
    let fact = BigRational::from_integer(BigInt::from(factorial(n)));
    let ratio_minus_one = sum_ratio(n) / fact - BigRational::one();
    let n_big = BigInt::from(n);
    let bound = BigRational::new(&n_big - 2, BigInt::from(2u32) * &n_big * (&n_big - 1))
        + BigRational::new(BigInt::one(), n_big);
    Ok((ratio_minus_one, bound))
}

/// Absolute and relative error of an approximation against an exact
/// reference. The relative error is `(approx - exact)/exact`, so an
/// under-approximation reports negative; it is `None` when `exact = 0`.
#[derive(Debug, Clone)]
pub struct ErrorReport {
    pub exact: BigRational,
    pub approx: BigRational,
    pub absolute_error: BigRational,
    pub relative_error: Option<BigRational>,
}

pub fn error_report(exact: BigRational, approx: BigRational) -> ErrorReport {
    let absolute_error = &approx - &exact;
    let relative_error = if exact.is_zero() {
        None
    } else {
        Some(&absolute_error / &exact)
    };
    ErrorReport {
        exact,
        approx,
        absolute_error,
        relative_error,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rational_from_decimal_str;
    use approx::assert_relative_eq;
    use num_traits::{Signed, ToPrimitive};

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn dec(s: &str) -> BigRational {
        rational_from_decimal_str(s).unwrap()
    }

    #[test]
    fn limit_brackets_small_cases() {
        let e_40 = dec("2.718281828459045235360287471352662497757");
        let itv = rps_envelope_limit(1);
        assert!(itv.contains(&e_40));

        let itv = rps_envelope_limit(2);
        let four_e = &e_40 * rat(4, 1);
        assert!(itv.contains(&four_e));

        let width_bound = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(30));
        for n in [1u32, 2, 10, 40] {
            assert!(rps_envelope_limit(n).relative_width() <= width_bound, "n={n}");
        }
    }

    #[test]
    fn limit_at_ten_matches_printed_magnitude() {
        // S_lim(10) = e * (10!)^2 = e * 13168189440000
        let mid = rps_envelope_limit(10).midpoint();
        let as_f64 = mid.to_f64().unwrap();
        assert_relative_eq!(as_f64, 3.579485006845829e13, max_relative = 1e-9);
    }

    #[test]
    fn h_lim_frozen_values() {
        assert_relative_eq!(h_lim_rps(1).unwrap(), 1.44269504088896, epsilon = 1e-11);
        assert_relative_eq!(h_lim_rps(2).unwrap(), 3.44269504088896, epsilon = 1e-11);
        assert_relative_eq!(h_lim_rps(10).unwrap(), 45.0248172703229, epsilon = 1e-10);
    }

    #[test]
    fn stirling_frozen_oracle_values() {
        // frozen from a 60-digit independent evaluation of
        // sqrt(2 pi n) (n/e)^n
        let cases = [
            (1u32, "0.92213700889578911688"),
            (2, "1.9190043514889831579"),
            (5, "118.01916795759007999"),
            (10, "3598695.6187410359216"),
        ];
        for (n, expected) in cases {
            let got = stirling(n).unwrap();
            let expected = dec(expected);
            let rel = ((&got - &expected) / &expected).abs();
            assert!(
                rel < BigRational::new(BigInt::one(), BigInt::from(10u64.pow(12))),
                "n={n}"
            );
        }
    }

    #[test]
    fn stirling_large_values_via_f64_checks() {
        let st100 = stirling(100).unwrap().to_f64().unwrap();
        assert_relative_eq!(st100, 9.3248476252693432e157, max_relative = 1e-12);
        let st170 = stirling(170).unwrap().to_f64().unwrap();
        assert_relative_eq!(st170, 7.2538589345427790e306, max_relative = 1e-12);
        assert!(stirling(171).is_err());
        assert!(stirling(0).is_err());
    }

    #[test]
    fn stirling_log2_agrees_with_rational_path() {
        for n in [1u32, 7, 50, 170] {
            let from_rational = {
                let st = stirling(n).unwrap();
                let num = st.numer().to_biguint().unwrap();
                let den = st.denom().to_biguint().unwrap();
                crate::log2::log2_lossy(&num).unwrap() - crate::log2::log2_lossy(&den).unwrap()
            };
            assert!((stirling_log2(n) - from_rational).abs() < 1e-9, "n={n}");
        }
    }

    #[test]
    fn sandwich_small_cases_hold() {
        // n=1: 1-e <= 1 <= 2 ; n=2: 2e+1 <= 10 <= 4e+2 ; n=3: 39e+1 <= 117 <= 45e+2
        for n in 1..=3u32 {
            let check = sandwich_bounds(n);
            assert_eq!(check.verdict, Verdict::Holds, "n={n}");
        }
        let check = sandwich_bounds(2);
        assert_eq!(check.value, rat(10, 1));
        // 2e+1 ~ 6.437
        assert!(check.lower.lo() > &rat(643, 100) && check.lower.hi() < &rat(644, 100));
        // 4e+2 ~ 12.873
        assert!(check.upper.lo() > &rat(1287, 100) && check.upper.hi() < &rat(1288, 100));
    }

    #[test]
    fn sandwich_holds_through_eighty() {
        for n in 1..=80u32 {
            assert_eq!(sandwich_bounds(n).verdict, Verdict::Holds, "n={n}");
        }
    }

    #[test]
    fn ratio_bound_equality_at_three() {
        let (ratio, bound) = ratio_bound(3).unwrap();
        assert_eq!(ratio, rat(5, 12));
        assert_eq!(bound, rat(5, 12));
        assert!(ratio_bound(2).is_err());
    }

    #[test]
    fn ratio_bound_at_four_against_brute_force() {
        // independent oracle: term-by-term rational sum with fresh factorials
        let brute: BigRational = (1..=4u32)
            .map(|u| {
                let mut num = BigInt::one();
                for i in 1..=u {
                    num *= BigInt::from(i);
                }
                let mut den = BigInt::one();
                for i in 1..=(4 - u) {
                    den *= BigInt::from(i);
                }
                BigRational::new(num, den)
            })
            .sum();
        let expected = brute / rat(24, 1) - BigRational::one();
        let (ratio, bound) = ratio_bound(4).unwrap();
        assert_eq!(ratio, expected);
        assert_eq!(ratio, rat(43, 144));
        assert!(ratio < bound);
    }

    #[test]
    fn ratio_monotone_decrease_to_two_hundred() {
        let (mut prev, _) = ratio_bound(3).unwrap();
        for n in 4..=200u32 {
            let (ratio, bound) = ratio_bound(n).unwrap();
            assert!(ratio < prev, "not decreasing at n={n}");
            assert!(ratio < bound, "bound violated at n={n}");
            prev = ratio;
        }
    }

    #[test]
    fn error_report_examples() {
        // exact S(10) against the bracket midpoint: rel ~ -9.57e-2
        let exact = BigRational::from_integer(BigInt::from(39_581_776_363_330i64));
        let approx = rps_envelope_limit(10).midpoint();
        let report = error_report(exact, approx);
        let rel = report.relative_error.unwrap().to_f64().unwrap();
        assert_relative_eq!(rel, -0.09567348, epsilon = 1e-7);

        let same = error_report(rat(7, 2), rat(7, 2));
        assert!(same.absolute_error.is_zero());
        assert!(same.relative_error.unwrap().is_zero());

        let undefined = error_report(rat(0, 1), dec("1.4427"));
        assert_eq!(undefined.absolute_error, dec("1.4427"));
        assert!(undefined.relative_error.is_none());
    }
}
