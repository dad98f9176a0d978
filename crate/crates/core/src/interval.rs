//! Rational interval arithmetic for bracketing irrational constants.
//!
//! The constant `e` is only ever handled as a pair of exact rationals
//! `[lo, hi]` with `lo < e < hi`, built from Taylor partial sums with the
//! tail bound `1/(m! * m)`. Floor decisions and inequality checks against
//! `e`-scaled quantities are made by refining the bracket until both
//! endpoints agree, so no transcendental library enters the trust base.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::{factorial, sa};
use crate::error::{Error, Result};

/// A closed interval `[lo, hi]` of exact rationals, `lo <= hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Self { lo, hi }
    }

    pub fn point(value: BigRational) -> Self {
        Self {
            lo: value.clone(),
            hi: value,
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, value: &BigRational) -> bool {
        &self.lo <= value && value <= &self.hi
    }

    /// Scale by an exact rational; a negative factor swaps the endpoints.
    pub fn scale(&self, factor: &BigRational) -> Self {
        let a = &self.lo * factor;
        let b = &self.hi * factor;
        if factor.is_negative() {
            Self { lo: b, hi: a }
        } else {
            Self { lo: a, hi: b }
        }
    }

    /// Translate by an exact rational.
    pub fn shift(&self, offset: &BigRational) -> Self {
        Self {
            lo: &self.lo + offset,
            hi: &self.hi + offset,
        }
    }

    /// Product of two intervals with nonnegative lower endpoints.
    pub fn mul_nonneg(&self, other: &Self) -> Self {
        assert!(!self.lo.is_negative() && !other.lo.is_negative());
        Self {
            lo: &self.lo * &other.lo,
            hi: &self.hi * &other.hi,
        }
    }

    /// `self^k` for an interval with nonnegative lower endpoint.
    pub fn pow_nonneg(&self, k: u32) -> Self {
        assert!(!self.lo.is_negative());
        Self {
            lo: pow_rational(&self.lo, k),
            hi: pow_rational(&self.hi, k),
        }
    }

    /// Relative width `(hi - lo) / lo`, defined for strictly positive
    /// intervals.
    pub fn relative_width(&self) -> BigRational {
        assert!(self.lo.is_positive());
        self.width() / &self.lo
    }
}

fn pow_rational(r: &BigRational, k: u32) -> BigRational {
    BigRational::new(r.numer().pow(k), r.denom().pow(k))
}

/// Bracket `e` between the Taylor partial sum `L = sum_{k=0}^{terms} 1/k!`
/// and `L + 1/(terms! * terms)`. The tail of the series is strictly
/// positive and strictly below the stated bound, so `lo < e < hi`.
pub fn e_interval(terms: u32) -> RationalInterval {
    assert!(terms >= 2, "e_interval requires terms >= 2");
    // sum_{k=0}^{m} 1/k! = S_A(m) / m!
    let m_fact: BigInt = factorial(terms).into();
    let lo = BigRational::new(sa(terms).into(), m_fact.clone());
    let tail = BigRational::new(BigInt::one(), m_fact * BigInt::from(terms));
    let hi = &lo + tail;
    RationalInterval::new(lo, hi)
}

/// Pick a `terms` value whose bracket has width at most `10^-decimal_digits`,
/// then build it.
pub fn e_interval_with_width(decimal_digits: u32) -> RationalInterval {
    let bound = BigUint::from(10u32).pow(decimal_digits);
    let mut terms = 2u32;
    // width = 1/(terms! * terms); grow until terms! * terms >= 10^digits
    while factorial(terms) * BigUint::from(terms) < bound {
        terms += 1;
    }
    e_interval(terms)
}

/// Decide `floor(e * n!)` rigorously: widen the `e`-bracket (starting at
/// `n + 10` terms, doubling) until both endpoints scaled by `n!` share a
/// floor, then return it.
///
/// The endpoints are the [`e_interval`] ones, but scaled and floored in
/// pure integer arithmetic: `floor(lo * n!) = (S_A(m) * n!) div m!` and
/// `floor(hi * n!) = ((S_A(m) * m + 1) * n!) div (m! * m)`.
pub fn floor_e_times_factorial(n: u32) -> Result<BigUint> {
    const REFINEMENTS: u32 = 6;
    let fact_n = factorial(n);
    let mut terms = n + 10;
    for _ in 0..=REFINEMENTS {
        let sa_m = sa(terms);
        let fact_m = factorial(terms);
        let lo_floor = &sa_m * &fact_n / &fact_m;
        let hi_floor =
            (sa_m * BigUint::from(terms) + BigUint::one()) * &fact_n / (fact_m * BigUint::from(terms));
        if lo_floor == hi_floor {
            return Ok(lo_floor);
        }
        terms = terms.saturating_mul(2).min(FLOOR_TERMS_CAP);
    }
    Err(Error::PrecisionExhausted { n, terms })
}

const FLOOR_TERMS_CAP: u32 = 9_000;

/// Check the identity `S_A(n) = floor(e * n!)` for `n >= 1`.
///
/// `S_A` comes from the integer sum, the floor from the rational bracket;
/// the two routes are independent, which is the point of the check.
/// (At `n = 0` the identity fails: `S_A(0) = 1` but `floor(e) = 2`.)
pub fn verify_floor_identity(n: u32) -> Result<bool> {
    assert!(n >= 1, "the floor identity needs n >= 1");
    Ok(floor_e_times_factorial(n)? == sa(n))
}

/// 50 significant digits of pi, truncated (so the true value lies within
/// `[literal, literal + 10^-49]`). Validated against a Machin-series
/// bracket in the test suite.
const PI_50: &str = "31415926535897932384626433832795028841971693993751";

/// Bracket pi from the 50-digit literal.
pub fn pi_interval() -> RationalInterval {
    let scale = BigInt::from(10u32).pow(49);
    let lo = BigRational::new(PI_50.parse::<BigInt>().unwrap(), scale.clone());
    let hi = &lo + BigRational::new(BigInt::one(), scale);
    RationalInterval::new(lo, hi)
}

/// Bracket pi via Machin's formula `pi/4 = 4 atan(1/5) - atan(1/239)`,
/// using alternating-series partial sums for both arctangents.
pub fn machin_pi_interval(series_terms: u32) -> RationalInterval {
    let atan_bracket = |x: i64| -> RationalInterval {
        let mut sum = BigRational::zero();
        let x_big = BigInt::from(x);
        for k in 0..series_terms {
            let denom = BigInt::from(2 * k + 1) * x_big.pow(2 * k + 1);
            let term = BigRational::new(BigInt::one(), denom);
            if k % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        // the next (omitted) term bounds the truncation error
        let next = BigRational::new(
            BigInt::one(),
            BigInt::from(2 * series_terms + 1) * x_big.pow(2 * series_terms + 1),
        );
        if series_terms % 2 == 0 {
            RationalInterval::new(sum.clone(), sum + next)
        } else {
            RationalInterval::new(&sum - next, sum)
        }
    };
    let a = atan_bracket(5);
    let b = atan_bracket(239);
    let four = BigRational::from_integer(4.into());
    // pi = 16 atan(1/5) - 4 atan(1/239); subtracting swaps the roles of
    // the endpoints of `b`.
    let lo = (&(a.lo() * &four) - b.hi()) * &four;
    let hi = (&(a.hi() * &four) - b.lo()) * &four;
    RationalInterval::new(lo, hi)
}

/// Bracket `sqrt(r)` for a nonnegative rational to `decimal_digits`
/// directed decimal digits, via integer square roots.
pub fn sqrt_interval(r: &BigRational, decimal_digits: u32) -> RationalInterval {
    assert!(!r.is_negative());
    let scale = BigUint::from(10u32).pow(decimal_digits);
    let p = r.numer().to_biguint().unwrap();
    let q = r.denom().to_biguint().unwrap();
    // sqrt(p/q) = sqrt(p*q)/q; floor(sqrt(p*q*10^2d)) gives a directed
    // lower bound at denominator q*10^d.
    let t = (&p * &q * &scale * &scale).sqrt();
    let denom = BigInt::from(q * scale);
    let lo = BigRational::new(t.clone().into(), denom.clone());
    let hi = BigRational::new(BigInt::from(t + BigUint::one()), denom);
    RationalInterval::new(lo, hi)
}

/// Exact rational from a plain decimal literal such as `-12.0625`.
pub fn rational_from_decimal_str(s: &str) -> Option<BigRational> {
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s),
    };
    let body = body.strip_prefix('+').unwrap_or(body);
    if body.is_empty() {
        return None;
    }
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().ok()?;
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    Some(BigRational::new(numer * BigInt::from(sign), denom))
}

/// Shared 1e-9 unit-sum tolerance as an exact rational.
pub fn decimal_tolerance() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u64.pow(9)))
}

/// Round a rational to `decimals` decimal places, half away from zero.
pub fn round_decimals(r: &BigRational, decimals: u32) -> BigRational {
    let scale = BigRational::from_integer(BigInt::from(10u32).pow(decimals));
    let scaled = r * &scale;
    let (num, den) = (scaled.numer().clone(), scaled.denom().clone());
    let two_num = BigInt::from(2) * num.abs();
    let rounded = (two_num + &den).div_floor(&(BigInt::from(2) * den));
    let signed = if scaled.is_negative() { -rounded } else { rounded };
    BigRational::from_integer(signed) / scale
}
