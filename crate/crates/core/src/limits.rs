//! Size caps for the exponential enumerations.
//!
//! Maximal-schedule enumeration and full subset sweeps are exponential in the
//! node count, so both are guarded by configurable caps. The process-wide
//! value starts at [`Limits::default`] and can be replaced with
//! [`Limits::install`]; the command-line front end does this once at startup
//! from its flags and environment.

use std::sync::RwLock;

use crate::error::{Error, Result};

/// Hard ceiling imposed by the 64-bit node-set representation.
pub const MAX_SUPPORTED_NODES: usize = 64;

pub const DEFAULT_MAX_NODES: usize = 24;
pub const DEFAULT_MAX_SUBSET_NODES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest graph for which maximal schedules or cliques are enumerated.
    pub max_nodes: usize,
    /// Largest graph for which all `2^n - 1` non-empty subsets are swept.
    pub max_subset_nodes: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_nodes: DEFAULT_MAX_NODES,
            max_subset_nodes: DEFAULT_MAX_SUBSET_NODES,
        }
    }
}

static CURRENT: RwLock<Limits> = RwLock::new(Limits {
    max_nodes: DEFAULT_MAX_NODES,
    max_subset_nodes: DEFAULT_MAX_SUBSET_NODES,
});

impl Limits {
    pub fn current() -> Limits {
        *CURRENT.read().unwrap_or_else(|e| e.into_inner())
    }

    /// Replaces the process-wide limits.
    pub fn install(self) -> Result<()> {
        self.validate()?;
        *CURRENT.write().unwrap_or_else(|e| e.into_inner()) = self;
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("max_nodes", self.max_nodes),
            ("max_subset_nodes", self.max_subset_nodes),
        ] {
            if v == 0 || v > MAX_SUPPORTED_NODES {
                return Err(Error::invalid(format!(
                    "{name} must be in 1..={MAX_SUPPORTED_NODES}, got {v}"
                )));
            }
        }
        Ok(())
    }

    pub(crate) fn check_nodes(&self, n: usize) -> Result<()> {
        if n > self.max_nodes {
            return Err(Error::ResourceLimit {
                what: "node count for schedule enumeration",
                actual: n,
                limit: self.max_nodes,
            });
        }
        Ok(())
    }

    pub(crate) fn check_subset_nodes(&self, n: usize) -> Result<()> {
        if n > self.max_subset_nodes {
            return Err(Error::ResourceLimit {
                what: "node count for subset sweep",
                actual: n,
                limit: self.max_subset_nodes,
            });
        }
        Ok(())
    }
}
