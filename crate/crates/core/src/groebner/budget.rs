use std::time::{Duration, Instant};

use thiserror::Error;

pub const DEFAULT_TIMEOUT_SECS: u64 = 600;
pub const DEFAULT_MAX_PAIRS: u64 = 200_000;
pub const TIMEOUT_ENV: &str = "CONTAINLAB_TIMEOUT_SECS";
pub const MAX_PAIRS_ENV: &str = "CONTAINLAB_MAX_PAIRS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BudgetKind {
    Timeout,
    PairLimit,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("resource budget exceeded ({kind:?}) after {pairs} S-pairs")]
pub struct BudgetExceeded {
    pub kind: BudgetKind,
    pub pairs: u64,
}

/// Per-invocation resource limits: a wall-clock timeout and a cap on processed S-pairs.
///
/// The timeout is measured from the moment the budget is created, so one budget shared
/// by a chain of basis computations bounds the whole chain.
#[derive(Debug, Clone)]
pub struct Budget {
    timeout: Option<Duration>,
    max_pairs: Option<u64>,
    started: Instant,
}

impl Budget {
    pub fn new(timeout: Option<Duration>, max_pairs: Option<u64>) -> Self {
        Budget { timeout, max_pairs, started: Instant::now() }
    }

    pub fn unlimited() -> Self {
        Budget::new(None, None)
    }

    /// Defaults, overridden by `CONTAINLAB_TIMEOUT_SECS` and `CONTAINLAB_MAX_PAIRS` when set.
    pub fn from_env() -> Self {
        let read = |key: &str, default: u64| {
            std::env::var(key).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(default)
        };
        Budget::new(
            Some(Duration::from_secs(read(TIMEOUT_ENV, DEFAULT_TIMEOUT_SECS))),
            Some(read(MAX_PAIRS_ENV, DEFAULT_MAX_PAIRS)),
        )
    }

    pub fn timeout(&self) -> Option<Duration> {
        self.timeout
    }

    pub fn max_pairs(&self) -> Option<u64> {
        self.max_pairs
    }

    /// Same limits with the clock restarted.
    pub fn restart(&self) -> Self {
        Budget::new(self.timeout, self.max_pairs)
    }

    pub fn elapsed(&self) -> Duration {
        self.started.elapsed()
    }

    pub(crate) fn check(&self, pairs: u64) -> Result<(), BudgetExceeded> {
        if self.max_pairs.is_some_and(|cap| pairs > cap) {
            return Err(BudgetExceeded { kind: BudgetKind::PairLimit, pairs });
        }
        if self.timeout.is_some_and(|t| self.started.elapsed() > t) {
            return Err(BudgetExceeded { kind: BudgetKind::Timeout, pairs });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::from_env()
    }
}
