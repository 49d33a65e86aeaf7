//! Size and time ceilings for the exhaustive parts of the engine.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};

pub const DEFAULT_MAX_ELEMENTS: u64 = 1 << 16;
pub const DEFAULT_MAX_IDEALS: usize = 100_000;
pub const DEFAULT_TIME_BUDGET: Duration = Duration::from_secs(300);
pub const DEFAULT_MAX_SEARCH_NODES: u64 = 50_000_000;

#[derive(Debug, Clone)]
pub struct Guards {
    pub max_elements: u64,
    pub max_ideals: usize,
    pub time_budget: Duration,
    /// Node ceiling shared by the backtracking searches (complement lifts, covers).
    pub max_search_nodes: u64,
    pub(crate) deadline: Option<Instant>,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            max_elements: DEFAULT_MAX_ELEMENTS,
            max_ideals: DEFAULT_MAX_IDEALS,
            time_budget: DEFAULT_TIME_BUDGET,
            max_search_nodes: DEFAULT_MAX_SEARCH_NODES,
            deadline: None,
        }
    }
}

impl Guards {
    /// Starts the clock: every `check_time` after this is measured against
    /// `time_budget` from now.
    pub fn armed(&self) -> Guards {
        Guards {
            deadline: Some(Instant::now() + self.time_budget),
            ..self.clone()
        }
    }

    pub fn check_time(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::TimeBudget(self.time_budget)),
            _ => Ok(()),
        }
    }

    /// Fails when `p^d` exceeds the element cap.
    pub fn check_elements(&self, p: u64, d: usize) -> Result<u64> {
        let size = (p as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
        if size > self.max_elements as u128 {
            return Err(Error::ElementGuard {
                size,
                cap: self.max_elements,
            });
        }
        Ok(size as u64)
    }
}
