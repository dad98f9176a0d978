//! The three entropy functionals, their maximizing distributions, and the
//! exact envelope counts behind the maxima.
//!
//! All entropies are base-2 (bits). Mass-zero terms contribute nothing
//! (the usual `0 log 0 = 0` convention). Maximizing distributions are
//! exact rationals; entropy values are floats.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use crate::belief::{
    enumerate_pes, enumerate_power_set, rational_to_f64, Bpa, Frame, Pmf, SumPolicy,
};
use crate::combinatorics::{s_envelope, sa};
use crate::error::{Error, Result};
use crate::log2::log2_of;

/// Which entropy functional is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntropyKind {
    Shannon,
    Deng,
    Rps,
}

impl EntropyKind {
    pub fn name(self) -> &'static str {
        match self {
            EntropyKind::Shannon => "shannon",
            EntropyKind::Deng => "deng",
            EntropyKind::Rps => "rps",
        }
    }
}

impl std::str::FromStr for EntropyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "shannon" => Ok(EntropyKind::Shannon),
            "deng" => Ok(EntropyKind::Deng),
            "rps" => Ok(EntropyKind::Rps),
            other => Err(Error::Parse(format!("unknown entropy kind {other:?}"))),
        }
    }
}

/// `-sum p_i log2 p_i` over a probability list.
pub fn shannon_entropy(dist: &[f64]) -> Result<f64> {
    if dist.iter().any(|&p| p < 0.0 || !p.is_finite()) {
        return Err(Error::InvalidDistribution(
            "entries must be finite and nonnegative".into(),
        ));
    }
    let sum: f64 = dist.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidDistribution(format!(
            "entries sum to {sum}, not 1"
        )));
    }
    Ok(dist
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum())
}

/// Deng entropy `-sum m(M) log2( m(M) / (2^|M| - 1) )` of a valid BPA.
pub fn deng_entropy(bpa: &Bpa) -> Result<f64> {
    let report = bpa.validate();
    if !report.is_valid() {
        return Err(Error::InvalidMasses(report.to_string()));
    }
    let mut bits = 0.0;
    for (event, mass) in &bpa.masses {
        let m = rational_to_f64(mass);
        if m > 0.0 {
            let alternatives = 2f64.powi(event.len() as i32) - 1.0;
            bits -= m * (m / alternatives).log2();
        }
    }
    Ok(bits)
}

/// RPS entropy `-sum m(M) log2( m(M) / (S_A(|M|) - 1) )` of a valid PMF.
/// The empty event is excluded by the zero-mass invariant.
pub fn rps_entropy(pmf: &Pmf) -> Result<f64> {
    let report = pmf.validate();
    if !report.is_valid() {
        return Err(Error::InvalidMasses(report.to_string()));
    }
    let mut bits = 0.0;
    for (event, mass) in &pmf.masses {
        let m = rational_to_f64(mass);
        if m > 0.0 {
            let alternatives = rational_to_f64(&BigRational::from_integer(BigInt::from(
                sa(event.len() as u32) - BigUint::one(),
            )));
            bits -= m * (m / alternatives).log2();
        }
    }
    Ok(bits)
}

/// The Deng-entropy maximizer: `m(M) = (2^|M| - 1) / (3^n - 2^n)` over
/// all nonempty subsets.
pub fn max_deng_bpa(n: usize) -> Result<Bpa> {
    let frame = Frame::with_size(n)?;
    let denominator: BigInt = deng_envelope(n as u32).into();
    let mut masses = BTreeMap::new();
    for event in enumerate_power_set(&frame)? {
        if event.is_empty() {
            continue;
        }
        let numer: BigInt = (BigUint::from(2u32).pow(event.len() as u32) - BigUint::one()).into();
        masses.insert(event, BigRational::new(numer, denominator.clone()));
    }
    Ok(Bpa::new(frame, masses, SumPolicy::Exact))
}

/// The RPS-entropy maximizer: `m(M) = (S_A(|M|) - 1) / S(n)` over all
/// nonempty permutation events; events of equal length share a mass.
pub fn max_rps_pmf(n: usize) -> Result<Pmf> {
    let frame = Frame::with_size(n)?;
    let denominator: BigInt = s_envelope(n as u32).into();
    let mut masses = BTreeMap::new();
    for event in enumerate_pes(&frame)? {
        if event.is_empty() {
            continue;
        }
        let numer: BigInt = (sa(event.len() as u32) - BigUint::one()).into();
        masses.insert(event, BigRational::new(numer, denominator.clone()));
    }
    Ok(Pmf::new(frame, masses, SumPolicy::Exact))
}

/// `3^n - 2^n`, the count inside the maximum Deng entropy.
pub fn deng_envelope(n: u32) -> BigUint {
    BigUint::from(3u32).pow(n) - BigUint::from(2u32).pow(n)
}

/// The exact count inside the logarithm at maximum entropy:
/// `N`, `3^N - 2^N`, or `S(N)`.
pub fn envelope(kind: EntropyKind, n: u32) -> BigUint {
    assert!(n >= 1, "envelope requires n >= 1");
    match kind {
        EntropyKind::Shannon => BigUint::from(n),
        EntropyKind::Deng => deng_envelope(n),
        EntropyKind::Rps => s_envelope(n),
    }
}

/// Maximum entropy in bits, from the closed-form envelope count; no
/// enumeration involved.
pub fn max_entropy_value(kind: EntropyKind, n: u32) -> Result<f64> {
    log2_of(&envelope(kind, n), 12)
}
