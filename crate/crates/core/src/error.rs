use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A search or enumeration would exceed its configured budget. `partial`
    /// carries the amount of work completed (items yielded, nodes visited)
    /// before giving up.
    #[error("resource limit exceeded: {what} (completed {partial} before stopping)")]
    ResourceLimit { what: String, partial: u64 },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("undecided: {0}")]
    Undecided(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn limit(what: impl Into<String>, partial: u64) -> Self {
        Error::ResourceLimit {
            what: what.into(),
            partial,
        }
    }
}

/// Step counter for backtracking searches.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub const DEFAULT_STEPS: u64 = 50_000_000;

    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    #[inline]
    pub fn tick(&mut self, what: &str) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::limit(what, self.used - 1))
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_STEPS)
    }
}
