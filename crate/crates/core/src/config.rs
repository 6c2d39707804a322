use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Limits on the exhaustive searches. Every certificate reports the budget it
/// ran under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum number of maps `p^(dom*cod)` a single enumeration may visit.
    pub maps: u128,
    /// Maximum group order handed to the splitting engine.
    pub group_order: usize,
    /// Random splitting attempts before falling back (or failing).
    pub iterations: usize,
    /// Maximum number of (alpha, beta, s) triples checked exhaustively when
    /// validating a set functor; above it, validation samples.
    pub checks: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            maps: 1 << 20,
            group_order: 1000,
            iterations: 400,
            checks: 1 << 24,
        }
    }
}

impl Budget {
    pub fn check_maps(&self, needed: u128) -> Result<()> {
        if needed > self.maps {
            return Err(Error::BudgetExceeded {
                budget: "map enumeration",
                needed,
                limit: self.maps,
            });
        }
        Ok(())
    }

    pub fn check_group(&self, order: usize) -> Result<()> {
        if order > self.group_order {
            return Err(Error::BudgetExceeded {
                budget: "group order",
                needed: order as u128,
                limit: self.group_order as u128,
            });
        }
        Ok(())
    }
}

/// `base^exp` saturating at `u128::MAX`.
pub fn pow_count(base: u64, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = match acc.checked_mul(base as u128) {
            Some(v) => v,
            None => return u128::MAX,
        };
    }
    acc
}
