use serde::{Deserialize, Serialize};

/// Resource limits shared by every enumeration in the crate.
///
/// Exceeding any of these is reported as [`crate::Error::BoundExceeded`];
/// nothing is ever silently truncated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub max_field_size: u64,
    pub max_gl_candidates: u64,
    pub max_ring_size: usize,
    pub max_module_size: usize,
    pub max_hom_candidates: u64,
    pub max_lattice: usize,
    pub max_closure: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            max_field_size: 256,
            max_gl_candidates: 6561,
            max_ring_size: 512,
            max_module_size: 512,
            max_hom_candidates: 1_000_000,
            max_lattice: 20_000,
            max_closure: 512,
        }
    }
}
