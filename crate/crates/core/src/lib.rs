//! Exact cohomology of invariant complex structures on nilmanifolds and
//! solvmanifolds, complex symplectic forms, and the Beauville–Bogomolov–Fujiki
//! quadratic form.

mod error;
pub mod exact;
pub mod exterior;
pub mod model;
pub mod cohomology;
pub mod symplectic;
pub mod bbf;
pub mod lefschetz;

pub use error::{Error, ErrorKind, Location, Result};
