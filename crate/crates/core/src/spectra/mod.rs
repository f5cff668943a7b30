//! Preimage and differential statistics.

mod differential;
mod preimage;

pub use differential::{
    differential_set, is_crooked, row_uniformity, subspace_type, uniformity_exceeds, DifferentialProfile,
    DifferentialSet, DifferentialSummary, SubspaceType,
};
pub use preimage::{ExceptionalSet, PreimageProfile, PreimageSummary};
