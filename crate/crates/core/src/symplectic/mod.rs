//! Complex symplectic forms: detection, normalization, the space of d-closed
//! `(2,0)`-forms and the polynomial whose non-vanishing cuts out the
//! invariant symplectic cone.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::cohomology::{operator_matrix, Op};
use crate::error::{Error, Result};
use crate::exact::{kernel_basis, GaussRat, ParamPoly};
use crate::exterior::{enumerate_basis, BasisMonomial, Form};
use crate::model::ManifoldModel;

/// A d-closed, non-degenerate `(2,0)`-form on a model of dimension `m = 2n`.
#[derive(Clone, Debug)]
pub struct SymplecticForm {
    model: Arc<ManifoldModel>,
    sigma: Form<GaussRat>,
    n: usize,
    normalization: GaussRat,
}

impl SymplecticForm {
    pub fn model(&self) -> &Arc<ManifoldModel> {
        &self.model
    }

    pub fn sigma(&self) -> &Form<GaussRat> {
        &self.sigma
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `∫ (σσ̄)ⁿ`.
    pub fn normalization(&self) -> &GaussRat {
        &self.normalization
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NotSymplecticReason {
    NotClosed,
    Degenerate,
}

impl fmt::Display for NotSymplecticReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NotSymplecticReason::NotClosed => "not d-closed",
            NotSymplecticReason::Degenerate => "degenerate: sigma^n vanishes",
        })
    }
}

#[derive(Clone, Debug)]
pub enum SymplecticVerdict {
    Yes(SymplecticForm),
    No(NotSymplecticReason),
}

impl SymplecticVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, SymplecticVerdict::Yes(_))
    }

    /// The form, or `NotSymplectic` with the reason.
    pub fn into_form(self) -> Result<SymplecticForm> {
        match self {
            SymplecticVerdict::Yes(s) => Ok(s),
            SymplecticVerdict::No(r) => Err(Error::NotSymplectic(r.to_string())),
        }
    }
}

fn half_dim(model: &ManifoldModel) -> Result<usize> {
    let m = model.dim();
    if m % 2 == 1 {
        return Err(Error::OddDimension(m));
    }
    Ok(m / 2)
}

/// Coefficient of `φ_{1..m}` in a `(m,0)`-form.
fn holomorphic_volume_coefficient<T: crate::exact::Scalar>(f: &Form<T>) -> T {
    let m = f.dim();
    let all: Vec<usize> = (1..=m).collect();
    f.coefficient(&BasisMonomial::new(&all, &[]).expect("valid"))
}

pub fn is_symplectic(model: &ManifoldModel, sigma: &Form<GaussRat>) -> Result<SymplecticVerdict> {
    let n = half_dim(model)?;
    model.check_form(sigma)?;
    if !sigma.is_of_bidegree(2, 0) {
        return Err(Error::WrongBidegree { p: 2, q: 0 });
    }
    if !model.differential(sigma)?.is_zero() {
        return Ok(SymplecticVerdict::No(NotSymplecticReason::NotClosed));
    }
    if holomorphic_volume_coefficient(&sigma.power(n as u32)).is_zero() {
        return Ok(SymplecticVerdict::No(NotSymplecticReason::Degenerate));
    }
    let ss = sigma.wedge(&sigma.conjugate())?;
    let normalization = model.integrate(&ss.power(n as u32));
    Ok(SymplecticVerdict::Yes(SymplecticForm {
        model: Arc::new(model.clone()),
        sigma: sigma.clone(),
        n,
        normalization,
    }))
}

#[derive(Clone, Debug, PartialEq)]
pub enum Normalization {
    Normalized,
    Unnormalized(GaussRat),
}

/// Whether `∫ (σσ̄)ⁿ = 1` exactly.
pub fn normalization_check(s: &SymplecticForm) -> Normalization {
    if s.normalization.is_one() {
        Normalization::Normalized
    } else {
        Normalization::Unnormalized(s.normalization.clone())
    }
}

/// Basis of the d-closed invariant `(2,0)`-forms, from the kernel of `d` in
/// monomial order.
pub fn closed_20_space(model: &ManifoldModel) -> Result<Vec<Form<GaussRat>>> {
    closed_space(model, Op::D)
}

/// Basis of the `∂̄`-closed invariant `(2,0)`-forms.
pub fn delbar_closed_20_space(model: &ManifoldModel) -> Result<Vec<Form<GaussRat>>> {
    closed_space(model, Op::Delbar)
}

fn closed_space(model: &ManifoldModel, op: Op) -> Result<Vec<Form<GaussRat>>> {
    let m = model.dim();
    if m < 2 {
        return Ok(Vec::new());
    }
    let source = enumerate_basis(m, 2, 0)?;
    let target: Vec<BasisMonomial> = [(3, 0), (2, 1)]
        .iter()
        .filter(|&&(p, q)| p <= m && q <= m)
        .map(|&(p, q)| enumerate_basis(m, p, q))
        .collect::<Result<Vec<_>>>()?
        .concat();
    let d = operator_matrix(model, op, &source, &target);
    Ok(kernel_basis(&d).iter().map(|v| Form::from_coordinates(m, &source, v)).collect())
}

/// `dim Z^{2,0}_∂̄ − dim(d-closed (2,0)-forms)`: the ∂̄-closed `(2,0)`-forms that
/// are not d-closed.
pub fn closedness_discrepancy(model: &ManifoldModel) -> Result<usize> {
    Ok(delbar_closed_20_space(model)?.len() - closed_20_space(model)?.len())
}

/// The polynomial `P(a) = coefficient of φ_{1..2n} in (Σ aᵢ eᵢ)ⁿ` over the
/// closed `(2,0)` basis `eᵢ`; `Σ aᵢ eᵢ` is symplectic exactly where `P ≠ 0`.
#[derive(Clone, Debug)]
pub struct SymplecticLocus {
    pub basis: Vec<Form<GaussRat>>,
    pub variables: Vec<String>,
    pub polynomial: ParamPoly,
    pub degree: usize,
}

impl SymplecticLocus {
    pub fn form_at(&self, coeffs: &[GaussRat]) -> Result<Form<GaussRat>> {
        if coeffs.len() != self.basis.len() {
            return Err(Error::DimensionMismatch { left: coeffs.len(), right: self.basis.len() });
        }
        let dim = self.basis.first().map_or(0, Form::dim);
        Ok(Form::combination(dim, coeffs.iter().cloned().zip(&self.basis)))
    }

    pub fn eval(&self, coeffs: &[GaussRat]) -> Result<GaussRat> {
        if coeffs.len() != self.variables.len() {
            return Err(Error::DimensionMismatch { left: coeffs.len(), right: self.variables.len() });
        }
        let binding = self.variables.iter().cloned().zip(coeffs.iter().cloned()).collect();
        self.polynomial.eval(&binding)
    }
}

pub fn symplectic_locus(model: &ManifoldModel) -> Result<SymplecticLocus> {
    symplectic_locus_named(model, |i| format!("a{}", i + 1))
}

/// As [`symplectic_locus`], with caller-chosen coordinate names.
pub fn symplectic_locus_named(model: &ManifoldModel, name: impl Fn(usize) -> String) -> Result<SymplecticLocus> {
    let n = half_dim(model)?;
    let basis = closed_20_space(model)?;
    let variables: Vec<String> = (0..basis.len()).map(name).collect();
    let m = model.dim();
    let generic = basis.iter().zip(&variables).fold(Form::<ParamPoly>::zero(m), |acc, (e, v)| {
        acc + e.map(|c| ParamPoly::constant(c.clone())).scale(&ParamPoly::var(v))
    });
    let polynomial = holomorphic_volume_coefficient(&generic.power(n as u32));
    Ok(SymplecticLocus { basis, variables, polynomial, degree: n })
}
