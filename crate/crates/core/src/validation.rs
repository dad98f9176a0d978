//! The full verification suite behind the `validate` command: the floor
//! identity, the sandwich bounds, the ratio analysis, the limit's
//! relative-error decrease, enumeration cross-checks, and the
//! maximality oracles, each reported with its failing inputs.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use crate::approx::{sandwich_bounds, ratio_bound, rps_envelope_limit, Verdict};
use crate::combinatorics::{s_envelope, sa};
use crate::entropy::EntropyKind;
use crate::error::Result;
use crate::interval::floor_e_times_factorial;
use crate::oracle::{
    ascent_matches_closed_form, enumeration_cross_check, perturb_and_compare, RNG_ALGORITHM,
};
use crate::par::map_collect;
use crate::ENUMERATION_CAP;

/// One suite check with the inputs that failed it.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub failures: Vec<String>,
}

impl CheckOutcome {
    fn from_failures(name: &'static str, failures: Vec<String>) -> Self {
        Self {
            name,
            passed: failures.is_empty(),
            failures,
        }
    }
}

/// Machine-readable result of a full run.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub n_max: u32,
    pub enumeration_cap: usize,
    pub oracle_cap: usize,
    pub seed: u64,
    pub rng: &'static str,
    pub checks: Vec<CheckOutcome>,
    pub all_passed: bool,
}

/// Floor-identity sweep against a caller-supplied `S_A` reference. The
/// reference parameter exists so fault-injection tests can verify that a
/// corrupted value is caught and named.
pub fn floor_identity_outcome<F>(ns: &[u32], reference: F) -> CheckOutcome
where
    F: Fn(u32) -> BigUint + Sync + Send,
{
    let results = map_collect(ns.to_vec(), |n| {
        let decided = floor_e_times_factorial(n);
        match decided {
            Ok(floor) if floor == reference(n) => None,
            Ok(floor) => Some(format!("n={n}: floor(e*n!)={floor} != S_A(n)={}", reference(n))),
            Err(e) => Some(format!("n={n}: {e}")),
        }
    });
    CheckOutcome::from_failures("floor-identity", results.into_iter().flatten().collect())
}

/// Failing `n` values of the floor-identity sweep (parallel when enabled).
pub fn floor_identity_failures(ns: &[u32]) -> Vec<u32> {
    map_collect(ns.to_vec(), |n| {
        match crate::interval::verify_floor_identity(n) {
            Ok(true) => None,
            _ => Some(n),
        }
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Sequential twin of [`floor_identity_failures`], kept for benchmarks
/// comparing the two scheduling modes.
pub fn floor_identity_failures_serial(ns: &[u32]) -> Vec<u32> {
    ns.iter()
        .copied()
        .filter(|&n| !matches!(crate::interval::verify_floor_identity(n), Ok(true)))
        .collect()
}

/// Failing `n` values of the sandwich sweep (parallel when enabled).
pub fn sandwich_failures(ns: &[u32]) -> Vec<u32> {
    map_collect(ns.to_vec(), |n| {
        (sandwich_bounds(n).verdict != Verdict::Holds).then_some(n)
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Sequential twin of [`sandwich_failures`].
pub fn sandwich_failures_serial(ns: &[u32]) -> Vec<u32> {
    ns.iter()
        .copied()
        .filter(|&n| sandwich_bounds(n).verdict != Verdict::Holds)
        .collect()
}

fn sandwich_outcome(n_max: u32) -> CheckOutcome {
    let ns: Vec<u32> = (1..=n_max).collect();
    let failures = sandwich_failures(&ns)
        .into_iter()
        .map(|n| format!("n={n}: verdict {:?}", sandwich_bounds(n).verdict))
        .collect();
    CheckOutcome::from_failures("envelope-sandwich", failures)
}

fn ratio_outcome(n_max: u32) -> CheckOutcome {
    let mut failures = Vec::new();
    let pairs = map_collect((3..=n_max.max(3)).collect(), |n| (n, ratio_bound(n)));
    let mut previous: Option<BigRational> = None;
    for (n, pair) in pairs {
        let (ratio, bound) = match pair {
            Ok(p) => p,
            Err(e) => {
                failures.push(format!("n={n}: {e}"));
                continue;
            }
        };
        if ratio > bound {
            failures.push(format!("n={n}: ratio exceeds the proof bound"));
        }
        if (ratio == bound) != (n == 3) {
            failures.push(format!("n={n}: equality with the bound only holds at n=3"));
        }
        if let Some(prev) = &previous {
            if &ratio >= prev {
                failures.push(format!("n={n}: ratio failed to decrease"));
            }
        }
        previous = Some(ratio);
    }
    CheckOutcome::from_failures("ratio-bound", failures)
}

/// `|S_lim(n)/S(n) - 1|` as an exact rational interval endpoint pair,
/// certified strictly decreasing over consecutive `n`.
fn limit_error_outcome(n_max: u32) -> CheckOutcome {
    let hi_n = n_max.min(100);
    if hi_n < 11 {
        return CheckOutcome::from_failures("limit-error-decrease", vec![]);
    }
    let bounds = map_collect((10..=hi_n).collect(), |n| {
        let s = BigRational::from_integer(s_envelope(n).into());
        let lim = rps_envelope_limit(n);
        // S_lim < S throughout this range, so |rel| = (S - lim)/S
        let lo = (&s - lim.hi()) / &s;
        let hi = (&s - lim.lo()) / &s;
        (n, lo, hi)
    });
    let mut failures = Vec::new();
    for window in bounds.windows(2) {
        let (n_prev, prev_inf, _) = &window[0];
        let (n, inf, sup) = &window[1];
        if prev_inf.is_negative() || inf.is_negative() {
            failures.push(format!("n={n}: sign assumption broken"));
        }
        if sup >= prev_inf {
            failures.push(format!(
                "n={n}: |rel| did not strictly decrease from n={n_prev}"
            ));
        }
    }
    CheckOutcome::from_failures("limit-error-decrease", failures)
}

fn enumeration_outcome(cap: usize) -> CheckOutcome {
    let failures = (1..=cap)
        .filter_map(|n| match enumeration_cross_check(n) {
            Ok(true) => None,
            Ok(false) => Some(format!("n={n}: enumeration disagrees with the closed forms")),
            Err(e) => Some(format!("n={n}: {e}")),
        })
        .collect();
    CheckOutcome::from_failures("enumeration-cross-check", failures)
}

fn maximality_outcomes(oracle_cap: usize, seed: u64) -> (CheckOutcome, CheckOutcome) {
    let mut perturb_failures = Vec::new();
    let mut ascent_failures = Vec::new();
    for kind in [EntropyKind::Deng, EntropyKind::Rps] {
        for n in 1..=oracle_cap {
            match perturb_and_compare(kind, n, 1_000, 0.05, seed) {
                Ok(report) if report.violations == 0 => {}
                Ok(report) => perturb_failures.push(format!(
                    "{} n={n}: {} violations",
                    kind.name(),
                    report.violations
                )),
                Err(e) => perturb_failures.push(format!("{} n={n}: {e}", kind.name())),
            }
            match ascent_matches_closed_form(kind, n) {
                Ok(true) => {}
                Ok(false) => ascent_failures.push(format!(
                    "{} n={n}: ascent missed the closed form",
                    kind.name()
                )),
                Err(e) => ascent_failures.push(format!("{} n={n}: {e}", kind.name())),
            }
        }
    }
    (
        CheckOutcome::from_failures("maximality-perturbation", perturb_failures),
        CheckOutcome::from_failures("maximality-ascent", ascent_failures),
    )
}

/// Run every check. `oracle_cap` bounds the frame sizes fed to the
/// perturbation and ascent oracles (enumeration always runs to the
/// enumeration cap).
pub fn run_all(n_max: u32, oracle_cap: usize, seed: u64) -> Result<ValidationReport> {
    assert!(n_max >= 3, "validate needs n_max >= 3");
    let oracle_cap = oracle_cap.min(ENUMERATION_CAP);

    let ns: Vec<u32> = (1..=n_max).collect();
    let mut checks = vec![floor_identity_outcome(&ns, sa)];
    checks.push(sandwich_outcome(n_max));
    checks.push(ratio_outcome(n_max));
    checks.push(limit_error_outcome(n_max));
    checks.push(enumeration_outcome(ENUMERATION_CAP));
    let (perturb, ascent) = maximality_outcomes(oracle_cap, seed);
    checks.push(perturb);
    checks.push(ascent);

    let all_passed = checks.iter().all(|c| c.passed);
    Ok(ValidationReport {
        n_max,
        enumeration_cap: ENUMERATION_CAP,
        oracle_cap,
        seed,
        rng: RNG_ALGORITHM,
        checks,
        all_passed,
    })
}
