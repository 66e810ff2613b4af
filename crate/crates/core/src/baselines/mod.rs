//! Reference constructions to compare the linear-time engine against.
//!
//! * [`ba1`]: bottom-up histograms of length Δ, O(NΔ).
//! * [`ba2`]: one range-mode query per node over the in-order leaf colors,
//!   O(N√N).
//! * [`ba3`]: pairwise tournament over single-color trees, O(N log Δ).
//! * [`brute`]: independent per-node histograms, the test oracle.

pub mod ba1;
pub mod ba2;
pub mod ba3;
pub mod brute;
pub mod range_mode;

pub use ba1::{ba1_all_modes, ba1_all_modes_with_budget};
pub use ba2::{ba2_all_modes, ba2_all_modes_with_budget};
pub use ba3::ba3_all_modes;
pub use brute::{brute_all_modes, brute_anti_modes, brute_histograms, brute_top_k, HistogramTable};
pub use range_mode::RangeModeIndex;

use crate::error::{Error, Result};

/// Upper bound on the table cells a baseline may touch before it refuses to
/// run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MemoryBudget {
    pub cells: u64,
}

impl MemoryBudget {
    pub const DEFAULT_CELLS: u64 = 1 << 32;

    pub fn new(cells: u64) -> Self {
        MemoryBudget { cells }
    }

    pub(crate) fn check(&self, required: u64) -> Result<()> {
        if required > self.cells {
            Err(Error::MemoryGuard {
                required,
                budget: self.cells,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for MemoryBudget {
    fn default() -> Self {
        MemoryBudget::new(Self::DEFAULT_CELLS)
    }
}
