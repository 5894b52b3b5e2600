//! The Beauville–Bogomolov–Fujiki form of a complex symplectic form: values,
//! polar form, Gram matrix, kernel, signatures, the orthogonal decomposition
//! of `H²` and the quadric predicates.

mod context;
mod report;

pub use context::BBFContext;
pub use report::{
    bbf_kernel, canonical_basis, conjugation_matrix, coordinate_signature, coordinate_signature_on, decomposition,
    kernel_coords, orthogonality_condition, quadric_report, real_signature, real_signature_on, restricted_gram,
    BBFReport, Block, BottChernBlocks, Decomposition, OrthogonalityWitness, QuadricPredicates, TheoremCheck,
};
