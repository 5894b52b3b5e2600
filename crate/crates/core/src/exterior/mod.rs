//! Bigraded exterior algebra on `φ₁…φ_m, ω̄₁…ω̄_m`.

mod form;
mod monomial;
mod syntax;

pub use form::{top_coefficient, Form};
pub use monomial::{enumerate_basis, enumerate_total_degree, BasisMonomial, MAX_DIM};
pub use syntax::{parse_form, parse_form_at, parse_form_bound, parse_form_exact};

/// Formal conjugate of a form (free-function spelling of [`Form::conjugate`]).
pub fn conjugate_form<T: crate::exact::Scalar>(f: &Form<T>) -> Form<T> {
    f.conjugate()
}

/// The `(p, q)` component of a form.
pub fn bidegree_component<T: crate::exact::Scalar>(f: &Form<T>, p: usize, q: usize) -> Form<T> {
    f.bidegree_component(p, q)
}

pub fn wedge<T: crate::exact::Scalar>(f: &Form<T>, g: &Form<T>) -> crate::Result<Form<T>> {
    f.wedge(g)
}
