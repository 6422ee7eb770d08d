//! Enumeration caps with environment-variable overrides.
//!
//! Precedence: explicit setters (CLI flags) > environment > defaults.

/// Caps keeping exhaustive runs at desk scale. An explicit failure is
/// preferred to a silent multi-hour enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Caps {
    /// Largest group order accepted for arithmetic and parsing.
    pub order: u64,
    /// Largest group order for exact maximal sum-free enumeration.
    pub fmax: u64,
    /// Largest group order for counting all sum-free subsets.
    pub subset_count: u64,
    /// Largest vertex count for exact MIS enumeration in census work.
    pub mis_vertices: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            order: crate::group::DEFAULT_ORDER_CAP,
            fmax: 30,
            subset_count: 20,
            mis_vertices: 40,
        }
    }
}

impl Caps {
    /// Defaults overridden by `SUMFREE_ORDER_CAP`, `SUMFREE_FMAX_CAP`,
    /// `SUMFREE_COUNT_CAP` and `SUMFREE_MIS_CAP` where set and parseable.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Some(v) = env_u64("SUMFREE_ORDER_CAP") {
            caps.order = v;
        }
        if let Some(v) = env_u64("SUMFREE_FMAX_CAP") {
            caps.fmax = v;
        }
        if let Some(v) = env_u64("SUMFREE_COUNT_CAP") {
            caps.subset_count = v;
        }
        if let Some(v) = env_u64("SUMFREE_MIS_CAP") {
            caps.mis_vertices = v as usize;
        }
        caps
    }
}

fn env_u64(name: &str) -> Option<u64> {
    std::env::var(name).ok()?.trim().parse().ok()
}
