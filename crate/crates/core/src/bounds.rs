use serde::{Deserialize, Serialize};

use crate::exec::Exec;

/// Resource limits shared by every computation on a group.
///
/// Exceeding a bound is always reported as a capability error; nothing is
/// silently truncated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, rename_all = "camelCase")]
pub struct Bounds {
    /// Largest group that closure-based fallbacks may enumerate.
    pub enumeration: u64,
    /// Largest conjugation orbit a breadth-first search may build.
    pub orbit: u64,
    /// Largest ambient symmetric-group centralizer that may be enumerated
    /// and filtered by membership.
    pub centralizer: u64,
    /// Largest group handled by the exhaustive automorphism backend.
    pub exhaustive: u64,
    /// Largest group `classify` will accept.
    pub classify: u64,
    /// Degree cap for the alternating and symmetric group constructors.
    pub max_degree: usize,
    #[serde(skip)]
    pub exec: Exec,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            enumeration: 1_000_000,
            orbit: 1 << 22,
            centralizer: 200_000,
            exhaustive: 2000,
            classify: 2000,
            max_degree: 32,
            exec: Exec::Parallel,
        }
    }
}

impl Bounds {
    pub fn sequential(self) -> Self {
        Bounds {
            exec: Exec::Sequential,
            ..self
        }
    }
}
