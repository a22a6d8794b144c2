//! Resource caps shared by the enumeration-heavy operations.

/// Caps guarding enumerations so that a bad parameter choice fails fast
/// instead of grinding. All caps are configurable; the defaults are sized
/// for desk-scale instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of vectors (q^k) a point/hyperplane enumeration may touch.
    pub enumeration: u64,
    /// Maximum number of vertices for which a spectrum is verified via the
    /// eigenvector identity and trace moments.
    pub moment_check: u64,
    /// Maximum number of vertices for a full-census clique search.
    pub census_vertices: u64,
    /// Maximum number of vertices for a size-only clique search.
    pub search_vertices: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enumeration: 2_000_000,
            moment_check: 200_000,
            census_vertices: 2_048,
            search_vertices: 10_000,
        }
    }
}

impl Caps {
    pub fn check_enumeration(&self, what: &'static str, needed: u64) -> crate::Result<()> {
        if needed > self.enumeration {
            return Err(crate::Error::TooLarge {
                what,
                limit: needed,
                cap: self.enumeration,
                unit: "vectors",
            });
        }
        Ok(())
    }
}
