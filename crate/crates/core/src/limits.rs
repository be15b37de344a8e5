use crate::error::{Error, Result};

/// Largest vertex count the exact subset-lattice search will ever accept,
/// whatever the configured cap. The memo tables are `2^n` bits.
pub const HARD_EXACT_CAP: usize = 28;

/// Size caps applied by the exact operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Cap for critical-set searches (memo over all `2^n` subsets).
    pub exact_vertices: usize,
    /// Cap for chromatic number and coloring enumeration.
    pub coloring_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { exact_vertices: 20, coloring_vertices: 256 }
    }
}

impl Limits {
    pub fn with_exact_vertices(mut self, cap: usize) -> Self {
        self.exact_vertices = cap;
        self
    }

    pub(crate) fn check_exact(&self, n: usize) -> Result<()> {
        let cap = self.exact_vertices.min(HARD_EXACT_CAP);
        if n > cap {
            return Err(Error::SizeLimit { what: "exact search vertex count", n, cap });
        }
        Ok(())
    }

    pub(crate) fn check_coloring(&self, n: usize) -> Result<()> {
        if n > self.coloring_vertices {
            return Err(Error::SizeLimit { what: "coloring vertex count", n, cap: self.coloring_vertices });
        }
        Ok(())
    }
}
