use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;

use super::space::{class_coordinates, ClassVector, CohomologySpace, Degree, Theory};
use crate::error::{Error, Result};
use crate::exact::{inverse, rank, GaussRat, Matrix};
use crate::model::ManifoldModel;

/// Matrix of a linear map between cohomology spaces, columns indexed by source basis.
#[derive(Clone, Debug)]
pub struct LinearMap {
    pub source: Arc<CohomologySpace>,
    pub target: Arc<CohomologySpace>,
    pub matrix: Matrix<GaussRat>,
    pub rank: usize,
}

impl LinearMap {
    pub fn is_injective(&self) -> bool {
        self.rank == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank == self.target.dim()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// Outcome of the ∂∂̄-lemma test over all bidegrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DdbarVerdict {
    Holds,
    /// First bidegree where `H_BC → H_∂̄` is not bijective, scanning by total
    /// degree and then by decreasing `p`.
    Fails { p: usize, q: usize },
}

impl DdbarVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, DdbarVerdict::Holds)
    }
}

/// Per-bidegree data of the natural map `H_BC → H_∂̄`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DdbarEntry {
    pub p: usize,
    pub q: usize,
    pub bott_chern: usize,
    pub dolbeault: usize,
    pub rank: usize,
}

impl DdbarEntry {
    pub fn bijective(&self) -> bool {
        self.rank == self.bott_chern && self.rank == self.dolbeault
    }
}

#[derive(Clone, Debug)]
pub struct DdbarReport {
    pub verdict: DdbarVerdict,
    pub entries: Vec<DdbarEntry>,
}

/// The Serre pairing `H^{p,q}_∂̄ × H^{m−p,m−q}_∂̄ → ℂ`, `([α],[β]) ↦ ∫ α∧β`.
#[derive(Clone, Debug)]
pub struct SerrePairing {
    pub p: usize,
    pub q: usize,
    pub matrix: Matrix<GaussRat>,
    pub rank: usize,
    pub nondegenerate: bool,
}

type Key = (Theory, Degree);

/// Computes and caches the cohomology spaces of one model.
///
/// The cache is safe under concurrent reads; concurrent computation of the
/// same space is idempotent and the first inserted value wins.
pub struct CohomologyEngine {
    model: Arc<ManifoldModel>,
    cache: RwLock<HashMap<Key, Arc<CohomologySpace>>>,
}

impl fmt::Debug for CohomologyEngine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CohomologyEngine").field("model", &self.model.label()).finish_non_exhaustive()
    }
}

impl CohomologyEngine {
    pub fn new(model: ManifoldModel) -> Self {
        Self::from_arc(Arc::new(model))
    }

    pub fn from_arc(model: Arc<ManifoldModel>) -> Self {
        CohomologyEngine { model, cache: RwLock::new(HashMap::new()) }
    }

    pub fn model(&self) -> &Arc<ManifoldModel> {
        &self.model
    }

    pub fn space(&self, theory: Theory, degree: Degree) -> Result<Arc<CohomologySpace>> {
        let key = (theory, degree);
        if let Some(s) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(s.clone());
        }
        let computed = Arc::new(CohomologySpace::compute(self.model.clone(), theory, degree)?);
        let mut cache = self.cache.write().expect("cache lock");
        Ok(cache.entry(key).or_insert(computed).clone())
    }

    pub fn dolbeault(&self, p: usize, q: usize) -> Result<Arc<CohomologySpace>> {
        self.space(Theory::Dolbeault, Degree::Bi(p, q))
    }

    pub fn bott_chern(&self, p: usize, q: usize) -> Result<Arc<CohomologySpace>> {
        self.space(Theory::BottChern, Degree::Bi(p, q))
    }

    pub fn aeppli(&self, p: usize, q: usize) -> Result<Arc<CohomologySpace>> {
        self.space(Theory::Aeppli, Degree::Bi(p, q))
    }

    pub fn de_rham(&self, k: usize) -> Result<Arc<CohomologySpace>> {
        self.space(Theory::DeRham, Degree::Total(k))
    }

    /// Matrix of the map induced by the identity on representatives.
    ///
    /// Every source representative must be closed in the target theory.
    pub fn natural_map(&self, source: &Arc<CohomologySpace>, target: &Arc<CohomologySpace>) -> Result<LinearMap> {
        let columns: Vec<Vec<GaussRat>> =
            source.basis().iter().map(|f| target.coordinates(f)).collect::<Result<_>>()?;
        let matrix = Matrix::from_columns(target.dim(), &columns);
        let rank = rank(&matrix);
        Ok(LinearMap { source: source.clone(), target: target.clone(), matrix, rank })
    }

    /// `[α]_BC ↦ [α]_∂̄`.
    pub fn bc_to_dolbeault(&self, p: usize, q: usize) -> Result<LinearMap> {
        self.natural_map(&self.bott_chern(p, q)?, &self.dolbeault(p, q)?)
    }

    /// All bidegrees `0 ≤ p, q ≤ m` in scan order: total degree, then decreasing `p`.
    pub fn bidegrees(&self) -> Vec<(usize, usize)> {
        let m = self.model.dim();
        (0..=2 * m)
            .flat_map(|k| (0..=m).rev().filter(move |&p| k >= p && k - p <= m).map(move |p| (p, k - p)))
            .collect()
    }

    pub fn ddbar_report(&self) -> Result<DdbarReport> {
        let entries: Vec<DdbarEntry> = self
            .bidegrees()
            .into_par_iter()
            .map(|(p, q)| {
                let map = self.bc_to_dolbeault(p, q)?;
                Ok(DdbarEntry { p, q, bott_chern: map.source.dim(), dolbeault: map.target.dim(), rank: map.rank })
            })
            .collect::<Result<_>>()?;
        let verdict = entries
            .iter()
            .find(|e| !e.bijective())
            .map_or(DdbarVerdict::Holds, |e| DdbarVerdict::Fails { p: e.p, q: e.q });
        Ok(DdbarReport { verdict, entries })
    }

    pub fn ddbar_verdict(&self) -> Result<DdbarVerdict> {
        Ok(self.ddbar_report()?.verdict)
    }

    /// The space holding conjugates of classes in `space`.
    pub fn conjugate_space(&self, space: &CohomologySpace) -> Result<Arc<CohomologySpace>> {
        let degree = match space.degree() {
            Degree::Bi(p, q) => Degree::Bi(q, p),
            d => d,
        };
        self.space(space.theory(), degree)
    }

    /// Class of the conjugate of the representative.
    ///
    /// Fails with `NotClosed` when the conjugated representative is not
    /// closed; no projection is attempted.
    pub fn conjugate_class(&self, v: &ClassVector) -> Result<ClassVector> {
        let target = self.conjugate_space(&v.space)?;
        class_coordinates(&target, &v.representative().conjugate())
    }

    pub fn serre_pairing_check(&self, p: usize, q: usize) -> Result<SerrePairing> {
        let m = self.model.dim();
        if p > m || q > m {
            return Err(Error::OutOfRange { p, q, dim: m });
        }
        let left = self.dolbeault(p, q)?;
        let right = self.dolbeault(m - p, m - q)?;
        let mut matrix = Matrix::zeros(left.dim(), right.dim());
        for (i, a) in left.basis().iter().enumerate() {
            for (j, b) in right.basis().iter().enumerate() {
                matrix[(i, j)] = self.model.integrate(&a.wedge(b)?);
            }
        }
        let rank = rank(&matrix);
        let nondegenerate = left.dim() == right.dim() && inverse(&matrix).is_some();
        Ok(SerrePairing { p, q, matrix, rank, nondegenerate })
    }
}

/// One-shot helpers that do not retain a cache.
pub fn dolbeault(model: &ManifoldModel, p: usize, q: usize) -> Result<Arc<CohomologySpace>> {
    CohomologyEngine::new(model.clone()).dolbeault(p, q)
}

pub fn bott_chern(model: &ManifoldModel, p: usize, q: usize) -> Result<Arc<CohomologySpace>> {
    CohomologyEngine::new(model.clone()).bott_chern(p, q)
}

pub fn aeppli(model: &ManifoldModel, p: usize, q: usize) -> Result<Arc<CohomologySpace>> {
    CohomologyEngine::new(model.clone()).aeppli(p, q)
}

pub fn de_rham(model: &ManifoldModel, k: usize) -> Result<Arc<CohomologySpace>> {
    CohomologyEngine::new(model.clone()).de_rham(k)
}

pub fn ddbar_verdict(model: &ManifoldModel) -> Result<DdbarVerdict> {
    CohomologyEngine::new(model.clone()).ddbar_verdict()
}

pub fn bc_to_dolbeault(model: &ManifoldModel, p: usize, q: usize) -> Result<LinearMap> {
    CohomologyEngine::new(model.clone()).bc_to_dolbeault(p, q)
}

pub fn serre_pairing_check(model: &ManifoldModel, p: usize, q: usize) -> Result<SerrePairing> {
    CohomologyEngine::new(model.clone()).serre_pairing_check(p, q)
}
