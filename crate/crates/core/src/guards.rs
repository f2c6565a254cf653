//! Size guards for the exponential enumerations.
//!
//! Every enumeration in this crate is exponential in some size parameter.
//! The limits below keep each call bounded. A process may install its own
//! limits once, before any enumeration runs.

use std::sync::OnceLock;


#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    /// Maximum number of items any single enumeration may produce.
    pub max_items: usize,
    /// Maximum arrow count for open-bisection enumeration.
    pub max_bisection_arrows: usize,
    /// Maximum arrow count for the triangle identities.
    pub max_adjunction_arrows: usize,
    /// Maximum order for the inverse semigroup enumerator.
    pub max_enumeration_order: usize,
    /// Maximum number of points for subset-quantified checks.
    pub max_subset_points: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Self {
            max_items: 100_000,
            max_bisection_arrows: 16,
            max_adjunction_arrows: 10,
            max_enumeration_order: 4,
            max_subset_points: 16,
        }
    }
}

static INSTALLED: OnceLock<Guards> = OnceLock::new();

impl Guards {
    /// The installed limits, or the defaults.
    pub fn current() -> Guards {
        INSTALLED.get().copied().unwrap_or_default()
    }

    /// Installs process-wide limits. Returns false if limits were already
    /// installed.
    pub fn install(g: Guards) -> bool {
        INSTALLED.set(g).is_ok()
    }
}
