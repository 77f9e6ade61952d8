//! Size caps for file inputs.

use std::env;

/// Environment variable overriding both the dimension cap and the prefix cap.
pub const NMAX_ENV: &str = "ORDCOPIES_NMAX";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest ambient dimension `n` accepted for subsets of `ω^n`.
    pub max_dim: usize,
    /// Largest explicit prefix accepted for layered sets.
    pub max_prefix: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_dim: 4,
            max_prefix: 4,
        }
    }
}

impl Limits {
    /// Defaults, overridden by `ORDCOPIES_NMAX` when it holds a number.
    pub fn from_env() -> Self {
        match env::var(NMAX_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            Some(n) => Limits {
                max_dim: n,
                max_prefix: n,
            },
            None => Limits::default(),
        }
    }
}
