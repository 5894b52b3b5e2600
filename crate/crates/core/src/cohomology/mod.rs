//! de Rham, Dolbeault, Bott–Chern and Aeppli cohomology of invariant forms.

mod engine;
mod space;

pub use engine::{
    aeppli, bc_to_dolbeault, bott_chern, ddbar_verdict, de_rham, dolbeault, serre_pairing_check, CohomologyEngine,
    DdbarEntry, DdbarReport, DdbarVerdict, LinearMap, SerrePairing,
};
pub use space::{class_coordinates, ClassVector, CohomologySpace, Degree, Theory};
pub(crate) use space::{operator_matrix, Op};
