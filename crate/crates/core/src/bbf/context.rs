use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;

use crate::cohomology::{class_coordinates, ClassVector, CohomologyEngine, CohomologySpace};
use crate::error::{Error, Result};
use crate::exact::{inverse, GaussRat, Matrix};
use crate::exterior::Form;
use crate::symplectic::{is_symplectic, normalization_check, Normalization, SymplecticForm};

/// The data of the quadratic form
/// `q(α) = (n/2)∫(σσ̄)^{n−1}α² + (1−n)(∫σ^{n−1}σ̄ⁿα)(∫σⁿσ̄^{n−1}α)`
/// on `H²` together with an ordered basis of d-closed representatives.
///
/// Context coordinates refer to `basis`; class vectors refer to the engine's
/// de Rham basis of `H²`.
#[derive(Clone, Debug)]
pub struct BBFContext {
    engine: Arc<CohomologyEngine>,
    sigma: SymplecticForm,
    h2: Arc<CohomologySpace>,
    basis: Vec<Form<GaussRat>>,
    /// Columns are the `h2` coordinates of `basis`.
    basis_matrix: Matrix<GaussRat>,
    /// Inverse of `basis_matrix`.
    to_ctx: Matrix<GaussRat>,
    /// `(σσ̄)^{n−1}`.
    s_power: Form<GaussRat>,
    /// `σ^{n−1}σ̄ⁿ`.
    a_form: Form<GaussRat>,
    /// `σⁿσ̄^{n−1}`.
    b_form: Form<GaussRat>,
    unnormalized: Option<GaussRat>,
}

impl BBFContext {
    /// Builds a context; `basis = None` selects the engine's de Rham basis.
    ///
    /// An unnormalized `σ` is refused unless `allow_unnormalized` is set, in
    /// which case [`Self::unnormalized`] carries `∫(σσ̄)ⁿ`.
    pub fn new(
        engine: Arc<CohomologyEngine>,
        sigma: &Form<GaussRat>,
        basis: Option<Vec<Form<GaussRat>>>,
        allow_unnormalized: bool,
    ) -> Result<Self> {
        let model = engine.model().clone();
        let sigma = is_symplectic(&model, sigma)?.into_form()?;
        let unnormalized = match normalization_check(&sigma) {
            Normalization::Normalized => None,
            Normalization::Unnormalized(v) if allow_unnormalized => Some(v),
            Normalization::Unnormalized(v) => return Err(Error::UnnormalizedSigma(v.to_string())),
        };
        let h2 = engine.de_rham(2)?;
        let basis = basis.unwrap_or_else(|| h2.basis().to_vec());
        let mut columns = Vec::with_capacity(basis.len());
        for f in &basis {
            check_representative(&model, f)?;
            columns.push(h2.coordinates(f)?);
        }
        if basis.len() != h2.dim() {
            return Err(Error::InvalidBasis(format!("{} classes given, b2 = {}", basis.len(), h2.dim())));
        }
        let basis_matrix = Matrix::from_columns(h2.dim(), &columns);
        let to_ctx = inverse(&basis_matrix)
            .ok_or_else(|| Error::InvalidBasis("classes are linearly dependent in H^2".into()))?;
        let n = sigma.n() as u32;
        let s = sigma.sigma().clone();
        let sb = s.conjugate();
        let s_power = s.wedge(&sb)?.power(n - 1);
        let a_form = s.power(n - 1).wedge(&sb.power(n))?;
        let b_form = s.power(n).wedge(&sb.power(n - 1))?;
        Ok(BBFContext { engine, sigma, h2, basis, basis_matrix, to_ctx, s_power, a_form, b_form, unnormalized })
    }

    pub fn engine(&self) -> &Arc<CohomologyEngine> {
        &self.engine
    }

    pub fn symplectic(&self) -> &SymplecticForm {
        &self.sigma
    }

    pub fn sigma(&self) -> &Form<GaussRat> {
        self.sigma.sigma()
    }

    pub fn n(&self) -> usize {
        self.sigma.n()
    }

    pub fn h2(&self) -> &Arc<CohomologySpace> {
        &self.h2
    }

    pub fn basis(&self) -> &[Form<GaussRat>] {
        &self.basis
    }

    pub fn b2(&self) -> usize {
        self.basis.len()
    }

    /// `∫(σσ̄)ⁿ` when it differs from 1 (only with the override).
    pub fn unnormalized(&self) -> Option<&GaussRat> {
        self.unnormalized.as_ref()
    }

    /// The class of a d-closed 2-form.
    pub fn class_of(&self, f: &Form<GaussRat>) -> Result<ClassVector> {
        check_representative(self.engine.model(), f)?;
        class_coordinates(&self.h2, f)
    }

    /// Context coordinates of a class of `H²`.
    pub fn coords(&self, v: &ClassVector) -> Result<Vec<GaussRat>> {
        if !Arc::ptr_eq(&v.space, &self.h2) {
            return Err(Error::WrongDegree { expected: "a class of this context's H^2_dR".into() });
        }
        Ok(self.to_ctx.mul_vec(&v.coords))
    }

    /// Context coordinates of the class of a d-closed 2-form.
    pub fn form_coords(&self, f: &Form<GaussRat>) -> Result<Vec<GaussRat>> {
        self.coords(&self.class_of(f)?)
    }

    /// The class with the given context coordinates.
    pub fn class_from_coords(&self, coords: &[GaussRat]) -> Result<ClassVector> {
        if coords.len() != self.b2() {
            return Err(Error::DimensionMismatch { left: coords.len(), right: self.b2() });
        }
        ClassVector::new(self.h2.clone(), self.basis_matrix.mul_vec(coords))
    }

    /// `Σ cᵢ·basisᵢ`.
    pub fn form_from_coords(&self, coords: &[GaussRat]) -> Result<Form<GaussRat>> {
        if coords.len() != self.b2() {
            return Err(Error::DimensionMismatch { left: coords.len(), right: self.b2() });
        }
        Ok(Form::combination(self.engine.model().dim(), coords.iter().cloned().zip(&self.basis)))
    }

    /// `σ^{n−1}σ̄ⁿ`.
    pub fn a_form(&self) -> &Form<GaussRat> {
        &self.a_form
    }

    /// `σⁿσ̄^{n−1}`.
    pub fn b_form(&self) -> &Form<GaussRat> {
        &self.b_form
    }

    fn half_n(&self) -> GaussRat {
        GaussRat::from_ratios(self.n() as i64, 2, 0, 1)
    }

    fn one_minus_n(&self) -> GaussRat {
        GaussRat::from(1 - self.n() as i64)
    }

    fn integrate(&self, f: &Form<GaussRat>) -> GaussRat {
        self.engine.model().integrate(f)
    }

    pub(crate) fn wedge_integral(&self, a: &Form<GaussRat>, b: &Form<GaussRat>) -> GaussRat {
        self.integrate(&a.wedge(b).expect("dimensions checked"))
    }

    /// `q` evaluated on a d-closed 2-form.
    pub fn q_form(&self, alpha: &Form<GaussRat>) -> Result<GaussRat> {
        check_representative(self.engine.model(), alpha)?;
        let square = self.wedge_integral(&self.s_power, &alpha.wedge(alpha)?);
        let cross = self.wedge_integral(&self.a_form, alpha) * self.wedge_integral(&self.b_form, alpha);
        Ok(self.half_n() * square + self.one_minus_n() * cross)
    }

    /// `q` on a class, through its representative.
    pub fn q_sigma(&self, a: &ClassVector) -> Result<GaussRat> {
        self.coords(a)?;
        self.q_form(&a.representative())
    }

    /// `⟨a,b⟩ = ½(q(a+b) − q(a) − q(b))`.
    pub fn polar(&self, a: &ClassVector, b: &ClassVector) -> Result<GaussRat> {
        let (ca, cb) = (self.coords(a)?, self.coords(b)?);
        let sum: Vec<GaussRat> = ca.iter().zip(&cb).map(|(x, y)| x.clone() + y.clone()).collect();
        let q = |c: &[GaussRat]| self.q_form(&self.form_from_coords(c)?);
        let half = GaussRat::from_ratios(1, 2, 0, 1);
        Ok(half * (q(&sum)? - q(&ca)? - q(&cb)?))
    }

    /// The bilinear expansion
    /// `(n/2)∫(σσ̄)^{n−1}αβ + ((1−n)/2)[(∫Aα)(∫Bβ) + (∫Aβ)(∫Bα)]`
    /// with `A = σ^{n−1}σ̄ⁿ`, `B = σⁿσ̄^{n−1}`.
    pub fn polar_forms(&self, alpha: &Form<GaussRat>, beta: &Form<GaussRat>) -> Result<GaussRat> {
        check_representative(self.engine.model(), alpha)?;
        check_representative(self.engine.model(), beta)?;
        let square = self.wedge_integral(&self.s_power.wedge(alpha)?, beta);
        let (aa, ba) = (self.wedge_integral(&self.a_form, alpha), self.wedge_integral(&self.b_form, alpha));
        let (ab, bb) = (self.wedge_integral(&self.a_form, beta), self.wedge_integral(&self.b_form, beta));
        let half = GaussRat::from_ratios(1, 2, 0, 1);
        Ok(self.half_n() * square + self.one_minus_n() * half * (aa * bb + ab * ba))
    }

    /// Entry `(i,j)` is `⟨basisᵢ, basisⱼ⟩`, from the bilinear expansion.
    pub fn gram_matrix(&self) -> Matrix<GaussRat> {
        let k = self.b2();
        let half = GaussRat::from_ratios(1, 2, 0, 1);
        let a: Vec<GaussRat> = self.basis.iter().map(|f| self.wedge_integral(&self.a_form, f)).collect();
        let b: Vec<GaussRat> = self.basis.iter().map(|f| self.wedge_integral(&self.b_form, f)).collect();
        let rows: Vec<Vec<GaussRat>> = (0..k)
            .into_par_iter()
            .map(|i| {
                let si = self.s_power.wedge(&self.basis[i]).expect("dimensions checked");
                (0..k)
                    .map(|j| {
                        let cross = a[i].clone() * b[j].clone() + a[j].clone() * b[i].clone();
                        self.half_n() * self.wedge_integral(&si, &self.basis[j])
                            + self.one_minus_n() * half.clone() * cross
                    })
                    .collect()
            })
            .collect();
        Matrix::from_rows(rows)
    }

    /// `⟨·,·⟩` on context coordinate vectors, via the Gram matrix.
    pub fn pair(gram: &Matrix<GaussRat>, u: &[GaussRat], v: &[GaussRat]) -> GaussRat {
        u.iter().zip(gram.mul_vec(v)).fold(GaussRat::zero(), |acc, (x, y)| acc + x.clone() * y)
    }
}

/// A representative must be a d-closed form of degree 2.
fn check_representative(model: &crate::model::ManifoldModel, f: &Form<GaussRat>) -> Result<()> {
    model.check_form(f)?;
    if !f.is_of_degree(2) {
        return Err(Error::WrongDegree { expected: "2".into() });
    }
    if !model.differential(f)?.is_zero() {
        return Err(Error::NotClosedRepresentative);
    }
    Ok(())
}
