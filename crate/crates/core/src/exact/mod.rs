//! Exact scalars and linear algebra: rationals, Gaussian rationals, parameter
//! polynomials with a conjugation involution, row reduction and inertia.

mod gauss;
mod matrix;
mod poly;
mod rational;
mod scalar;
mod signature;

pub use gauss::GaussRat;
pub use matrix::{inverse, kernel_basis, rank, rref, solve_in_span, Matrix, Rref, SpanSolver};
pub use poly::{Binding, Monomial, ParamPoly, Var};
pub use rational::{ParseScalarError, Rational};
pub use scalar::{Field, Scalar};
pub use signature::{characteristic_polynomial, symmetric_signature, Signature};

/// Complex conjugate of a Gaussian rational.
pub fn conjugate(x: &GaussRat) -> GaussRat {
    x.conjugate()
}

/// Evaluates a parameter polynomial; formal conjugates default to the
/// conjugate of their partner's value.
pub fn poly_eval(p: &ParamPoly, binding: &Binding) -> crate::Result<GaussRat> {
    p.eval(binding)
}

pub fn poly_conjugate(p: &ParamPoly) -> ParamPoly {
    p.conj()
}

/// Converts a matrix of Gaussian rationals with vanishing imaginary parts.
pub fn real_part_if_real(m: &Matrix<GaussRat>) -> Option<Matrix<Rational>> {
    m.entries().all(GaussRat::is_real).then(|| m.map(|x| x.re.clone()))
}
