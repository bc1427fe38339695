//! Size caps for the desk-scale guarantees.

use crate::error::{Error, Result};
use alloc::string::String;

/// Hard cap on group order; the element type and bitsets assume it.
pub const MAX_GROUP_ORDER: usize = 256;

/// Configurable size caps. `Default` gives the documented desk-scale values;
/// the CLI can override the cell cap from the environment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of poset elements.
    pub max_poset_elements: usize,
    /// Maximum number of cells in a G-complex (all dimensions together).
    pub max_cells: usize,
    /// Maximum rows/columns for Smith normal form.
    pub max_snf_side: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_poset_elements: 10_000,
            max_cells: 200_000,
            max_snf_side: 2_000,
        }
    }
}

impl Limits {
    pub(crate) fn check(&self, what: &str, got: usize, limit: usize) -> Result<()> {
        if got > limit {
            return Err(Error::SizeCap {
                what: String::from(what),
                limit,
                got,
            });
        }
        Ok(())
    }

    pub(crate) fn check_poset(&self, got: usize) -> Result<()> {
        self.check("poset elements", got, self.max_poset_elements)
    }

    pub(crate) fn check_cells(&self, got: usize) -> Result<()> {
        self.check("complex cells", got, self.max_cells)
    }

    pub(crate) fn check_snf(&self, rows: usize, cols: usize) -> Result<()> {
        self.check("matrix rows", rows, self.max_snf_side)?;
        self.check("matrix columns", cols, self.max_snf_side)
    }
}
