//! Manifold models given by invariant structure equations.

mod builtin;
mod file;
mod manifold;

pub use builtin::{builtin_model, iwasawa4, nakamura4, parse_scalar, torus};
pub use file::{emit_model, parse_model_file, parse_model_spec};
pub use manifold::{build_model, ManifoldModel, ModelSpec};
