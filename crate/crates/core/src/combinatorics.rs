//! Exact integer combinatorics: factorials, falling factorials, the
//! permutation-count sum `S_A`, and the envelope sum `S`.
//!
//! Everything here is computed by exact big-integer arithmetic. `S_A` in
//! particular is always evaluated as an integer sum; the floor identity
//! `S_A(n) = floor(e * n!)` lives in [`crate::interval`] as a verified
//! statement, never as a computation path.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest `n` for which factorial-family values may be requested.
/// Exceeding it is a configuration error, not a runtime condition.
pub const FACTORIAL_CAP: u32 = 10_000;

fn factorial_memo() -> &'static RwLock<Vec<BigUint>> {
    static MEMO: OnceLock<RwLock<Vec<BigUint>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(vec![BigUint::one()]))
}

/// `n!` as an exact integer. Memoized; concurrent reads share the table,
/// appends take the write lock.
pub fn factorial(n: u32) -> BigUint {
    assert!(
        n <= FACTORIAL_CAP,
        "factorial({n}) exceeds the configured cap {FACTORIAL_CAP}"
    );
    let n = n as usize;
    {
        let memo = factorial_memo().read().unwrap();
        if let Some(v) = memo.get(n) {
            return v.clone();
        }
    }
    let mut memo = factorial_memo().write().unwrap();
    while memo.len() <= n {
        let next = memo.last().unwrap() * BigUint::from(memo.len());
        memo.push(next);
    }
    memo[n].clone()
}

/// Falling factorial `n! / (n-k)!`: the number of ordered selections of
/// `k` items from `n`.
pub fn permutations(n: u32, k: u32) -> Result<BigUint> {
    if k > n {
        return Err(Error::KExceedsN { n, k });
    }
    Ok(factorial(n) / factorial(n - k))
}

/// `S_A(n) = sum_{u=0}^{n} n!/(n-u)!`, the number of permutation events
/// (orderings of subsets, the empty one included) over `n` elements.
///
/// Computed through the recurrence `S_A(n) = n * S_A(n-1) + 1`, which is
/// the integer sum telescoped; no floating constant is involved.
pub fn sa(n: u32) -> BigUint {
    assert!(
        n <= FACTORIAL_CAP,
        "sa({n}) exceeds the configured cap {FACTORIAL_CAP}"
    );
    static MEMO: OnceLock<RwLock<Vec<BigUint>>> = OnceLock::new();
    let memo_lock = MEMO.get_or_init(|| RwLock::new(vec![BigUint::one()]));
    let n = n as usize;
    {
        let memo = memo_lock.read().unwrap();
        if let Some(v) = memo.get(n) {
            return v.clone();
        }
    }
    let mut memo = memo_lock.write().unwrap();
    while memo.len() <= n {
        let next = memo.last().unwrap() * BigUint::from(memo.len()) + BigUint::one();
        memo.push(next);
    }
    memo[n].clone()
}

/// The envelope sum `S(n) = sum_{u=1}^{n} A(n,u) * (S_A(u) - 1)`.
pub fn s_envelope(n: u32) -> BigUint {
    assert!(n >= 1, "s_envelope requires n >= 1");
    let fact_n = factorial(n);
    let mut total = BigUint::zero();
    for u in 1..=n {
        let arrangements = &fact_n / factorial(n - u);
        total += arrangements * (sa(u) - BigUint::one());
    }
    total
}

/// `sum_{u=1}^{n} u!/(n-u)!` as an exact rational.
pub fn sum_ratio(n: u32) -> BigRational {
    assert!(n >= 1, "sum_ratio requires n >= 1");
    let mut total = BigRational::zero();
    for u in 1..=n {
        total += BigRational::new(factorial(u).into(), factorial(n - u).into());
    }
    total
}
