use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Resource limits that make exponential enumerations fail fast.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Pure outcomes of a game, game cells, or candidate pairs in a search.
    pub max_outcomes: u128,
    /// Bundles (player, subset) in market computations.
    pub max_bundles: u128,
    /// Valuation profiles and Border subset choices in auction computations.
    pub max_profiles: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_outcomes: 1_000_000,
            max_bundles: 1 << 16,
            max_profiles: 100_000,
        }
    }
}

impl Budget {
    /// A budget large enough never to trigger at desk scale.
    pub fn unlimited() -> Self {
        Budget {
            max_outcomes: u128::MAX,
            max_bundles: u128::MAX,
            max_profiles: u128::MAX,
        }
    }

    pub fn check_outcomes(&self, what: &str, needed: u128) -> Result<()> {
        check(what, needed, self.max_outcomes)
    }

    pub fn check_bundles(&self, what: &str, needed: u128) -> Result<()> {
        check(what, needed, self.max_bundles)
    }

    pub fn check_profiles(&self, what: &str, needed: u128) -> Result<()> {
        check(what, needed, self.max_profiles)
    }
}

fn check(what: &str, needed: u128, limit: u128) -> Result<()> {
    if needed > limit {
        Err(Error::budget(what, needed, limit))
    } else {
        Ok(())
    }
}

/// Product of counts, saturating instead of overflowing.
pub fn saturating_product(counts: impl IntoIterator<Item = usize>) -> u128 {
    counts.into_iter().fold(1u128, |acc, c| acc.saturating_mul(c as u128))
}
