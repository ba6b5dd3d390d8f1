//! Norms and reproducing kernels of `H_w`, ordered factorizations, Pick and
//! Gram matrices, interpolating sequences, the realization formula for
//! contractive multipliers, and multiplier / Carleson estimators.

pub mod factorizations;
pub mod gram;
pub mod multiplier;
pub mod pick;
pub mod realization;
pub mod space;

pub use factorizations::{ordered_factorizations, verify_pick_identity, PickIdentityReport};
pub use gram::{
    build_interpolating_sequence, conjecture_report, gram_matrix, ConjectureReport, GramMatrix, InterpolatingSequence,
};
pub use multiplier::{carleson_ratio, multiplier_norm_estimate, sup_norm_estimate, MultiplierEstimate, SupGrid};
pub use pick::{pick_matrix, PickProblem};
pub use realization::{realization_evaluate, realization_random, RealizationModel};
pub use space::{KernelValue, SpaceHandle};
