use thiserror::Error;

/// Errors surfaced by the exact-arithmetic and entropy layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("k = {k} exceeds n = {n} in permutation count")]
    KExceedsN { n: u32, k: u32 },

    #[error("logarithm of zero is undefined")]
    LogOfZero,

    #[error("requested {digits}-digit absolute tolerance is below what a 64-bit float can certify at magnitude {magnitude:.3e}")]
    PrecisionUnattainable { digits: u32, magnitude: f64 },

    #[error("could not decide floor(e * {n}!) after refining the e-bracket to {terms} terms")]
    PrecisionExhausted { n: u32, terms: u32 },

    #[error("frame size {n} exceeds the enumeration cap {cap}")]
    FrameTooLarge { n: usize, cap: usize },

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid mass assignment: {0}")]
    InvalidMasses(String),

    #[error("n = {n} is below the minimum {min} for this operation")]
    NBelowMinimum { n: u32, min: u32 },

    #[error("stirling value is produced directly only for 1 <= n <= 170, got {n}; use the log-domain form above that")]
    StirlingRange { n: u32 },

    #[error("ascent did not converge within {max_iters} iterations")]
    NonConvergence { max_iters: u32 },

    #[error("document parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
