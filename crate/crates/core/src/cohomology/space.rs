use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{rref, GaussRat, Matrix, SpanSolver};
use crate::exterior::{enumerate_basis, enumerate_total_degree, BasisMonomial, Form};
use crate::model::ManifoldModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theory {
    DeRham,
    Dolbeault,
    BottChern,
    Aeppli,
}

impl Theory {
    /// Stable lowercase key used in reports.
    pub fn key(&self) -> &'static str {
        match self {
            Theory::DeRham => "de_rham",
            Theory::Dolbeault => "dolbeault",
            Theory::BottChern => "bott_chern",
            Theory::Aeppli => "aeppli",
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    Total(usize),
    Bi(usize, usize),
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Total(k) => write!(f, "{k}"),
            Degree::Bi(p, q) => write!(f, "({p},{q})"),
        }
    }
}

/// Differential operators on invariant forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Op {
    D,
    Del,
    Delbar,
    DelDelbar,
}

pub(crate) fn apply(model: &ManifoldModel, op: Op, f: &Form<GaussRat>) -> Form<GaussRat> {
    match op {
        Op::D => model.d(f),
        Op::Del => model.del_unchecked(f),
        Op::Delbar => model.delbar_unchecked(f),
        Op::DelDelbar => model.del_unchecked(&model.delbar_unchecked(f)),
    }
}

/// Matrix of `op` from the span of `source` to the span of `target`.
///
/// Components of the image outside `target` are discarded; callers pick
/// `target` to contain the full image.
pub(crate) fn operator_matrix(
    model: &ManifoldModel,
    op: Op,
    source: &[BasisMonomial],
    target: &[BasisMonomial],
) -> Matrix<GaussRat> {
    let index: HashMap<BasisMonomial, usize> = target.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut out = Matrix::zeros(target.len(), source.len());
    for (j, mono) in source.iter().enumerate() {
        let image = apply(model, op, &Form::monomial(model.dim(), *mono, GaussRat::from(1)));
        for (t, c) in image.terms() {
            if let Some(&i) = index.get(t) {
                out[(i, j)] = c.clone();
            }
        }
    }
    out
}

fn hstack(rows: usize, blocks: &[Matrix<GaussRat>]) -> Matrix<GaussRat> {
    let columns: Vec<Vec<GaussRat>> = blocks.iter().flat_map(Matrix::columns).collect();
    Matrix::from_columns(rows, &columns)
}

fn vstack(cols: usize, blocks: &[Matrix<GaussRat>]) -> Matrix<GaussRat> {
    blocks.iter().fold(Matrix::zeros(0, cols), |acc, b| acc.vstack(b))
}

fn bi(m: usize, p: isize, q: isize) -> Vec<BasisMonomial> {
    if p < 0 || q < 0 || p as usize > m || q as usize > m {
        return Vec::new();
    }
    enumerate_basis(m, p as usize, q as usize).expect("in range")
}

fn total(m: usize, k: isize) -> Vec<BasisMonomial> {
    if k < 0 || k as usize > 2 * m {
        return Vec::new();
    }
    enumerate_total_degree(m, k as usize)
}

/// A cohomology group of a model, with closed representatives and a
/// coordinate map for closed forms modulo exact forms.
pub struct CohomologySpace {
    theory: Theory,
    degree: Degree,
    model: Arc<ManifoldModel>,
    ambient: Vec<BasisMonomial>,
    closedness: Matrix<GaussRat>,
    basis: Vec<Form<GaussRat>>,
    /// Columns: representatives, then an independent spanning set of exact forms.
    solver: SpanSolver<GaussRat>,
    /// Ambient coordinates of an independent spanning set of exact forms.
    exact: Vec<Vec<GaussRat>>,
    exact_rank: usize,
    closed_dim: usize,
}

impl fmt::Debug for CohomologySpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CohomologySpace")
            .field("theory", &self.theory)
            .field("degree", &self.degree)
            .field("basis", &self.basis)
            .finish()
    }
}

impl CohomologySpace {
    pub(crate) fn compute(model: Arc<ManifoldModel>, theory: Theory, degree: Degree) -> Result<Self> {
        let m = model.dim();
        let (ambient, closed_ops, exact_ops) = match (theory, degree) {
            (Theory::DeRham, Degree::Total(k)) => {
                if k > 2 * m {
                    return Err(Error::OutOfRange { p: k, q: 0, dim: m });
                }
                let k = k as isize;
                (total(m, k), vec![(Op::D, total(m, k + 1))], vec![(Op::D, total(m, k - 1))])
            }
            (Theory::DeRham, Degree::Bi(..)) | (_, Degree::Total(_)) => {
                return Err(Error::WrongDegree { expected: format!("{degree} is not a valid degree for {theory}") });
            }
            (_, Degree::Bi(p, q)) => {
                if p > m || q > m {
                    return Err(Error::OutOfRange { p, q, dim: m });
                }
                let (p, q) = (p as isize, q as isize);
                let amb = bi(m, p, q);
                match theory {
                    Theory::Dolbeault => {
                        (amb, vec![(Op::Delbar, bi(m, p, q + 1))], vec![(Op::Delbar, bi(m, p, q - 1))])
                    }
                    Theory::BottChern => (
                        amb,
                        vec![(Op::Del, bi(m, p + 1, q)), (Op::Delbar, bi(m, p, q + 1))],
                        vec![(Op::DelDelbar, bi(m, p - 1, q - 1))],
                    ),
                    Theory::Aeppli => (
                        amb,
                        vec![(Op::DelDelbar, bi(m, p + 1, q + 1))],
                        vec![(Op::Del, bi(m, p - 1, q)), (Op::Delbar, bi(m, p, q - 1))],
                    ),
                    Theory::DeRham => unreachable!(),
                }
            }
        };
        let n = ambient.len();
        let closed_blocks: Vec<Matrix<GaussRat>> =
            closed_ops.iter().map(|(op, target)| operator_matrix(&model, *op, &ambient, target)).collect();
        let closedness = vstack(n, &closed_blocks);
        let exact_blocks: Vec<Matrix<GaussRat>> =
            exact_ops.iter().map(|(op, source)| operator_matrix(&model, *op, source, &ambient)).collect();
        let exact = hstack(n, &exact_blocks);

        let kernel = crate::exact::kernel_basis(&closedness);
        let closed_dim = kernel.len();
        let exact_cols = exact.columns();
        let combined = Matrix::from_columns(n, &[exact_cols.clone(), kernel.clone()].concat());
        let pivots = rref(&combined).pivot_columns;
        let exact_indep: Vec<Vec<GaussRat>> =
            pivots.iter().filter(|&&c| c < exact_cols.len()).map(|&c| exact_cols[c].clone()).collect();
        let reps: Vec<Vec<GaussRat>> = pivots
            .iter()
            .filter(|&&c| c >= exact_cols.len())
            .map(|&c| kernel[c - exact_cols.len()].clone())
            .collect();
        if reps.len() + exact_indep.len() != pivots.len() || exact_indep.len() > closed_dim {
            return Err(Error::NotInCohomology);
        }
        let basis = reps.iter().map(|v| Form::from_coordinates(m, &ambient, v)).collect();
        let solver = SpanSolver::new(&Matrix::from_columns(n, &[reps, exact_indep.clone()].concat()));
        Ok(CohomologySpace {
            theory,
            degree,
            model,
            ambient,
            closedness,
            basis,
            solver,
            exact_rank: exact_indep.len(),
            exact: exact_indep,
            closed_dim,
        })
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn model(&self) -> &Arc<ManifoldModel> {
        &self.model
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Closed representatives of the basis classes.
    pub fn basis(&self) -> &[Form<GaussRat>] {
        &self.basis
    }

    /// Monomials spanning the ambient form space.
    pub fn ambient(&self) -> &[BasisMonomial] {
        &self.ambient
    }

    /// Dimension of the space of closed forms.
    pub fn closed_dim(&self) -> usize {
        self.closed_dim
    }

    /// Dimension of the space of exact forms.
    pub fn exact_dim(&self) -> usize {
        self.exact_rank
    }

    /// An independent spanning set of the exact forms.
    pub fn exact_forms(&self) -> Vec<Form<GaussRat>> {
        self.exact.iter().map(|v| Form::from_coordinates(self.model.dim(), &self.ambient, v)).collect()
    }

    fn in_degree(&self, f: &Form<GaussRat>) -> Result<()> {
        self.model.check_form(f)?;
        let ok = match self.degree {
            Degree::Total(k) => f.is_of_degree(k),
            Degree::Bi(p, q) => f.is_of_bidegree(p, q),
        };
        if !ok {
            return Err(Error::WrongDegree { expected: self.degree.to_string() });
        }
        Ok(())
    }

    fn ambient_coords(&self, f: &Form<GaussRat>) -> Vec<GaussRat> {
        f.coordinates(&self.ambient)
    }

    /// Whether `f` satisfies this theory's closedness condition (and has the right degree).
    pub fn is_closed(&self, f: &Form<GaussRat>) -> bool {
        self.in_degree(f).is_ok() && self.closedness.mul_vec(&self.ambient_coords(f)).iter().all(Zero::is_zero)
    }

    /// Coordinates of the class of a closed form in [`Self::basis`].
    pub fn coordinates(&self, f: &Form<GaussRat>) -> Result<Vec<GaussRat>> {
        self.in_degree(f)?;
        if !self.is_closed(f) {
            return Err(Error::NotClosed { theory: self.theory.to_string() });
        }
        let x = self.solver.solve(&self.ambient_coords(f)).map_err(|_| Error::NotInCohomology)?;
        Ok(x[..self.dim()].to_vec())
    }

    /// Whether a closed form is exact in this theory.
    pub fn is_exact(&self, f: &Form<GaussRat>) -> Result<bool> {
        Ok(self.coordinates(f)?.iter().all(Zero::is_zero))
    }

    /// The representative `Σ cᵢ·basisᵢ`.
    pub fn representative(&self, coords: &[GaussRat]) -> Result<Form<GaussRat>> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch { left: coords.len(), right: self.dim() });
        }
        Ok(Form::combination(self.model.dim(), coords.iter().cloned().zip(&self.basis)))
    }
}

/// A cohomology class given by coordinates in a space's basis.
#[derive(Clone)]
pub struct ClassVector {
    pub space: Arc<CohomologySpace>,
    pub coords: Vec<GaussRat>,
}

impl fmt::Debug for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClassVector({} {}, {:?})", self.space.theory, self.space.degree, self.coords)
    }
}

impl PartialEq for ClassVector {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.space, &other.space) && self.coords == other.coords
    }
}

impl ClassVector {
    pub fn new(space: Arc<CohomologySpace>, coords: Vec<GaussRat>) -> Result<Self> {
        if coords.len() != space.dim() {
            return Err(Error::DimensionMismatch { left: coords.len(), right: space.dim() });
        }
        Ok(ClassVector { space, coords })
    }

    pub fn zero(space: Arc<CohomologySpace>) -> Self {
        let coords = vec![GaussRat::zero(); space.dim()];
        ClassVector { space, coords }
    }

    /// The `i`-th basis class.
    pub fn unit(space: Arc<CohomologySpace>, i: usize) -> Self {
        let mut v = Self::zero(space);
        v.coords[i] = GaussRat::from(1);
        v
    }

    pub fn representative(&self) -> Form<GaussRat> {
        self.space.representative(&self.coords).expect("length checked at construction")
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

/// Coordinates of the class of `f` in `space`.
pub fn class_coordinates(space: &Arc<CohomologySpace>, f: &Form<GaussRat>) -> Result<ClassVector> {
    Ok(ClassVector { space: space.clone(), coords: space.coordinates(f)? })
}
