//! Operation-counted evaluations of the exact envelope and its limit.
//!
//! These mirror the definitional algorithms rather than the memoized
//! fast paths: `S(n)` is evaluated with fresh falling products and fresh
//! `S_A` sums per term, which is what makes its multiplication count
//! quadratic in `n`, against the linear count of `e * (n!)^2`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::interval::{e_interval_with_width, RationalInterval};
use num_rational::BigRational;

/// Big-integer multiplication tally for one evaluation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCount {
    pub multiplications: u64,
}

/// `S(n)` by the definitional double loop: for each `u`, a fresh falling
/// product for `A(n,u)` and a fresh falling-product sum for `S_A(u)`.
/// Returns the exact value with the multiplication count, `n(n+1)`
/// exactly (`2u` per term).
pub fn s_envelope_direct(n: u32) -> (BigUint, OpCount) {
    assert!(n >= 1);
    let mut count = OpCount::default();
    let mut total = BigUint::zero();
    for u in 1..=n {
        // A(n,u) = n (n-1) ... (n-u+1)
        let mut arrangements = BigUint::from(n);
        for i in 1..u {
            arrangements *= BigUint::from(n - i);
            count.multiplications += 1;
        }
        // S_A(u) = sum of falling products of length 0..=u
        let mut sa_u = BigUint::one(); // the empty product
        let mut falling = BigUint::one();
        for i in 0..u {
            falling *= BigUint::from(u - i);
            count.multiplications += 1;
            sa_u += &falling;
        }
        total += arrangements * (sa_u - BigUint::one());
        count.multiplications += 1;
    }
    (total, count)
}

/// `e * (n!)^2` by running product, squaring, and two endpoint scalings
/// of a fixed-precision `e`-bracket. The bracket itself is a constant of
/// the algorithm (its precision does not depend on `n`) and is not
/// counted; the count is `n + 2`.
pub fn envelope_limit_direct(n: u32) -> (RationalInterval, OpCount) {
    assert!(n >= 1);
    let mut count = OpCount::default();
    let mut fact = BigUint::one();
    for i in 2..=n {
        fact *= BigUint::from(i);
        count.multiplications += 1;
    }
    let square = &fact * &fact;
    count.multiplications += 1;
    let e_bracket = e_interval_with_width(31);
    let scaled = e_bracket.scale(&BigRational::from_integer(square.into()));
    count.multiplications += 2; // one per endpoint
    (scaled, count)
}
