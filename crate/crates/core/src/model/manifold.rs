use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{Binding, GaussRat, ParamPoly, Rational};
use crate::exterior::{enumerate_total_degree, BasisMonomial, Form, MAX_DIM};

/// Structure equations before parameter binding.
///
/// `d_wbar[i] = None` means `dω̄ᵢ` is the formal conjugate of `dφᵢ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpec {
    pub dim: usize,
    pub d_phi: Vec<Form<ParamPoly>>,
    pub d_wbar: Vec<Option<Form<ParamPoly>>>,
    pub params: BTreeMap<String, GaussRat>,
    pub mu: Rational,
}

impl ModelSpec {
    /// All generators closed.
    pub fn closed(dim: usize) -> Self {
        ModelSpec {
            dim,
            d_phi: vec![Form::zero(dim); dim],
            d_wbar: vec![None; dim],
            params: BTreeMap::new(),
            mu: Rational::from(1),
        }
    }

    pub fn binding(&self) -> Binding {
        self.params.clone()
    }
}

/// A validated model: differentials of all `2m` generators with bound parameters.
///
/// Invariants checked at construction: every `dφᵢ` is a 2-form without
/// `(0,2)` part, every `dω̄ᵢ` a 2-form without `(2,0)` part, `d² = 0` on
/// generators, `∫ d(·) = 0` on all `(2m−1)`-forms, and `mu > 0`.
#[derive(Clone)]
pub struct ManifoldModel {
    spec: ModelSpec,
    label: String,
    d_phi: Vec<Form<GaussRat>>,
    d_wbar: Vec<Form<GaussRat>>,
}

impl PartialEq for ManifoldModel {
    /// Models are equal when their bound structure equations and volume agree.
    fn eq(&self, other: &Self) -> bool {
        self.spec.dim == other.spec.dim
            && self.spec.mu == other.spec.mu
            && self.d_phi == other.d_phi
            && self.d_wbar == other.d_wbar
    }
}

impl fmt::Debug for ManifoldModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ManifoldModel")
            .field("label", &self.label)
            .field("dim", &self.spec.dim)
            .field("d_phi", &self.d_phi)
            .field("d_wbar", &self.d_wbar)
            .field("mu", &self.spec.mu)
            .finish()
    }
}

fn generator(holo: bool, i: usize) -> BasisMonomial {
    let idx = [i];
    if holo {
        BasisMonomial::new(&idx, &[]).expect("valid index")
    } else {
        BasisMonomial::new(&[], &idx).expect("valid index")
    }
}

fn check_declared(f: &Form<ParamPoly>, params: &BTreeMap<String, GaussRat>) -> Result<()> {
    for (_, c) in f.terms() {
        for v in c.variables() {
            if !params.contains_key(&v) {
                return Err(Error::UnknownParameter(v));
            }
        }
    }
    Ok(())
}

impl ManifoldModel {
    pub fn build(spec: ModelSpec) -> Result<Self> {
        Self::build_labeled(spec, "custom")
    }

    pub fn build_labeled(spec: ModelSpec, label: impl Into<String>) -> Result<Self> {
        let m = spec.dim;
        if m == 0 || m > MAX_DIM {
            return Err(Error::IndexOutOfRange { index: m, dim: MAX_DIM });
        }
        if spec.d_phi.len() != m || spec.d_wbar.len() != m {
            return Err(Error::DimensionMismatch { left: spec.d_phi.len().max(spec.d_wbar.len()), right: m });
        }
        if !spec.mu.is_positive() {
            return Err(Error::NonPositiveVolume(spec.mu.to_string()));
        }
        let binding = spec.binding();
        let mut d_phi = Vec::with_capacity(m);
        let mut d_wbar = Vec::with_capacity(m);
        for i in 0..m {
            let name = format!("f{}", i + 1);
            let f = &spec.d_phi[i];
            if f.dim() != m {
                return Err(Error::DimensionMismatch { left: f.dim(), right: m });
            }
            check_declared(f, &spec.params)?;
            let f = f.try_map(|c| c.eval(&binding))?;
            if !f.is_of_degree(2) {
                return Err(Error::NotTwoForm { generator: name });
            }
            if !f.bidegree_component(0, 2).is_zero() {
                return Err(Error::NotIntegrable { generator: name });
            }
            d_phi.push(f);
        }
        for (i, given) in spec.d_wbar.iter().enumerate() {
            let name = format!("w{}", i + 1);
            let f = match given {
                Some(f) => {
                    if f.dim() != m {
                        return Err(Error::DimensionMismatch { left: f.dim(), right: m });
                    }
                    check_declared(f, &spec.params)?;
                    f.try_map(|c| c.eval(&binding))?
                }
                None => d_phi[i].conjugate(),
            };
            if !f.is_of_degree(2) {
                return Err(Error::NotTwoForm { generator: name });
            }
            if !f.bidegree_component(2, 0).is_zero() {
                return Err(Error::NotIntegrable { generator: name });
            }
            d_wbar.push(f);
        }
        let model = ManifoldModel { spec, label: label.into(), d_phi, d_wbar };
        model.check_d_squared()?;
        model.check_stokes()?;
        Ok(model)
    }

    fn check_d_squared(&self) -> Result<()> {
        for (holo, forms) in [(true, &self.d_phi), (false, &self.d_wbar)] {
            for (i, f) in forms.iter().enumerate() {
                let dd = self.d(f);
                if !dd.is_zero() {
                    let generator = generator(holo, i + 1).to_string();
                    return Err(Error::NotClosedSquare { generator, residue: dd.to_string() });
                }
            }
        }
        Ok(())
    }

    fn check_stokes(&self) -> Result<()> {
        let top = BasisMonomial::top(self.dim());
        for mono in enumerate_total_degree(self.dim(), 2 * self.dim() - 1) {
            let value = self.differential_monomial(&mono).coefficient(&top);
            if !value.is_zero() {
                return Err(Error::StokesViolation { monomial: mono.to_string(), value: value.to_string() });
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.spec.dim
    }

    pub fn mu(&self) -> &Rational {
        &self.spec.mu
    }

    pub fn spec(&self) -> &ModelSpec {
        &self.spec
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn params(&self) -> &BTreeMap<String, GaussRat> {
        &self.spec.params
    }

    /// `dφᵢ` for `i = 1..m` (index 0 is `φ₁`).
    pub fn d_phi(&self) -> &[Form<GaussRat>] {
        &self.d_phi
    }

    pub fn d_wbar(&self) -> &[Form<GaussRat>] {
        &self.d_wbar
    }

    /// Whether `dω̄ᵢ` is the formal conjugate of `dφᵢ` for every `i`.
    pub fn is_self_conjugate(&self) -> bool {
        self.d_phi.iter().zip(&self.d_wbar).all(|(p, w)| p.conjugate() == *w)
    }

    /// The model of the conjugate structure: `d'φᵢ = conj(dω̄ᵢ)`, `d'ω̄ᵢ = conj(dφᵢ)`,
    /// so that `d'(conj f) = conj(d f)`.
    pub fn conjugate_model(&self) -> Result<ManifoldModel> {
        let conj = |f: &Form<GaussRat>| f.conjugate().map(|c| ParamPoly::constant(c.clone()));
        let spec = ModelSpec {
            dim: self.dim(),
            d_phi: self.d_wbar.iter().map(conj).collect(),
            d_wbar: self.d_phi.iter().map(|f| Some(conj(f))).collect(),
            params: BTreeMap::new(),
            mu: self.spec.mu.clone(),
        };
        ManifoldModel::build_labeled(spec, format!("conj({})", self.label))
    }

    /// Same structure equations with a different volume normalization.
    pub fn with_mu(&self, mu: Rational) -> Result<ManifoldModel> {
        let mut spec = self.spec.clone();
        spec.mu = mu;
        ManifoldModel::build_labeled(spec, self.label.clone())
    }

    /// Rebinds declared parameters.
    pub fn with_params(&self, params: &BTreeMap<String, GaussRat>) -> Result<ManifoldModel> {
        let mut spec = self.spec.clone();
        for (k, v) in params {
            if !spec.params.contains_key(k) {
                return Err(Error::UnknownParameter(k.clone()));
            }
            spec.params.insert(k.clone(), v.clone());
        }
        ManifoldModel::build_labeled(spec, self.label.clone())
    }

    /// `d` of one basis monomial by the Leibniz rule over its factors in canonical order.
    pub fn differential_monomial(&self, mono: &BasisMonomial) -> Form<GaussRat> {
        let m = self.dim();
        let mut out = Form::zero(m);
        let holo = mono.holo();
        let anti = mono.anti();
        let factors = holo.iter().map(|&i| (true, i)).chain(anti.iter().map(|&i| (false, i)));
        for (j, (is_holo, i)) in factors.enumerate() {
            let (prefix, suffix) = if is_holo {
                let before: Vec<usize> = holo.iter().copied().filter(|&x| x < i).collect();
                let after: Vec<usize> = holo.iter().copied().filter(|&x| x > i).collect();
                (BasisMonomial::new(&before, &[]), BasisMonomial::new(&after, &anti))
            } else {
                let before: Vec<usize> = anti.iter().copied().filter(|&x| x < i).collect();
                let after: Vec<usize> = anti.iter().copied().filter(|&x| x > i).collect();
                (BasisMonomial::new(&holo, &before), BasisMonomial::new(&[], &after))
            };
            let (prefix, suffix) = (prefix.expect("valid"), suffix.expect("valid"));
            let dx = if is_holo { &self.d_phi[i - 1] } else { &self.d_wbar[i - 1] };
            for (t, c) in dx.terms() {
                let Some((pt, odd1)) = prefix.wedge(t) else { continue };
                let Some((full, odd2)) = pt.wedge(&suffix) else { continue };
                let negative = odd1 ^ odd2 ^ (j % 2 == 1);
                out.add_term(full, if negative { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    /// Exterior derivative, extended from generators by the Leibniz rule.
    pub fn differential(&self, f: &Form<GaussRat>) -> Result<Form<GaussRat>> {
        self.check_form(f)?;
        Ok(self.d(f))
    }

    /// `∂`: the part of `d` raising the holomorphic degree.
    pub fn del(&self, f: &Form<GaussRat>) -> Result<Form<GaussRat>> {
        self.check_form(f)?;
        Ok(self.graded_part(f, 1, 0))
    }

    /// `∂̄`: the part of `d` raising the antiholomorphic degree.
    pub fn delbar(&self, f: &Form<GaussRat>) -> Result<Form<GaussRat>> {
        self.check_form(f)?;
        Ok(self.graded_part(f, 0, 1))
    }

    pub(crate) fn d(&self, f: &Form<GaussRat>) -> Form<GaussRat> {
        let mut out = Form::zero(self.dim());
        for (mono, c) in f.terms() {
            for (t, x) in self.differential_monomial(mono).terms() {
                out.add_term(*t, c.clone() * x.clone());
            }
        }
        out
    }

    pub(crate) fn del_unchecked(&self, f: &Form<GaussRat>) -> Form<GaussRat> {
        self.graded_part(f, 1, 0)
    }

    pub(crate) fn delbar_unchecked(&self, f: &Form<GaussRat>) -> Form<GaussRat> {
        self.graded_part(f, 0, 1)
    }

    fn graded_part(&self, f: &Form<GaussRat>, dp: usize, dq: usize) -> Form<GaussRat> {
        let mut out = Form::zero(self.dim());
        for (mono, c) in f.terms() {
            let (p, q) = mono.bidegree();
            for (t, x) in self.differential_monomial(mono).terms() {
                if t.bidegree() == (p + dp, q + dq) {
                    out.add_term(*t, c.clone() * x.clone());
                }
            }
        }
        out
    }

    /// `mu` times the top coefficient of the `(m,m)` component; lower degrees integrate to 0.
    pub fn integrate(&self, f: &Form<GaussRat>) -> GaussRat {
        let top = BasisMonomial::top(self.dim());
        f.coefficient(&top) * GaussRat::real(self.spec.mu.clone())
    }

    /// Checks that a form lives in this model's dimension.
    pub fn check_form<T: crate::exact::Scalar>(&self, f: &Form<T>) -> Result<()> {
        if f.dim() != self.dim() {
            return Err(Error::DimensionMismatch { left: f.dim(), right: self.dim() });
        }
        Ok(())
    }
}

/// Free-function spelling of [`ManifoldModel::build`].
pub fn build_model(spec: ModelSpec) -> Result<ManifoldModel> {
    ManifoldModel::build(spec)
}
