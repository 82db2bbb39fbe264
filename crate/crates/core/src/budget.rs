use core::time::Duration;

use crate::error::Error;

/// Elapsed-time source for searches. `no_std` builds use [`NoClock`], which
/// leaves only the count-based limits in force.
pub trait Clock {
    fn elapsed(&self) -> Duration;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct NoClock;

impl Clock for NoClock {
    fn elapsed(&self) -> Duration {
        Duration::ZERO
    }
}

#[cfg(feature = "std")]
#[derive(Clone, Copy, Debug)]
pub struct StdClock(std::time::Instant);

#[cfg(feature = "std")]
impl StdClock {
    pub fn start() -> Self {
        StdClock(std::time::Instant::now())
    }
}

#[cfg(feature = "std")]
impl Clock for StdClock {
    fn elapsed(&self) -> Duration {
        self.0.elapsed()
    }
}

/// The clock used by the convenience entry points.
#[cfg(feature = "std")]
pub fn default_clock() -> StdClock {
    StdClock::start()
}

#[cfg(not(feature = "std"))]
pub fn default_clock() -> NoClock {
    NoClock
}

/// Limits for the simplex finders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Longest ambient base row (side of the base grid for n > 2).
    pub max_base_len: usize,
    pub max_depth: usize,
    /// Distinct colouring-oracle evaluations.
    pub max_queries: u64,
    pub time_limit: Duration,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_base_len: 512,
            max_depth: 16,
            max_queries: 20_000_000,
            time_limit: Duration::from_secs(60),
        }
    }
}

impl SearchBudget {
    pub fn validate(&self) -> Result<(), Error> {
        if self.max_base_len < 2 {
            return Err(Error::Invalid(alloc::format!(
                "max base length must be at least 2, got {}",
                self.max_base_len
            )));
        }
        if self.max_depth == 0 || self.max_queries == 0 || self.time_limit.is_zero() {
            return Err(Error::Invalid("budget limits must be positive".into()));
        }
        Ok(())
    }
}
