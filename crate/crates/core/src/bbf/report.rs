use num_traits::Zero;

use super::context::BBFContext;
use crate::cohomology::{ClassVector, Degree, DdbarVerdict, Theory};
use crate::error::{Error, Result};
use crate::exact::{kernel_basis, rank, real_part_if_real, rref, symmetric_signature, GaussRat, Matrix, Signature};
use crate::exterior::Form;

type Vector = Vec<GaussRat>;

/// Basis of the Gram kernel in context coordinates, one vector per free column.
pub fn kernel_coords(gram: &Matrix<GaussRat>) -> Vec<Vector> {
    kernel_basis(gram)
}

/// Classes spanning the kernel of `⟨·,·⟩`.
pub fn bbf_kernel(ctx: &BBFContext) -> Result<Vec<ClassVector>> {
    kernel_coords(&ctx.gram_matrix()).iter().map(|v| ctx.class_from_coords(v)).collect()
}

/// Canonical basis (nonzero rows of the rref) of the span of `vectors`.
pub fn canonical_basis(vectors: &[Vector]) -> Vec<Vector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let r = rref(&Matrix::from_rows(vectors.to_vec()));
    (0..r.rank()).map(|i| r.reduced.row(i).to_vec()).collect()
}

/// Gram matrix of the restriction of `⟨·,·⟩` to `basis` (context coordinates).
pub fn restricted_gram(gram: &Matrix<GaussRat>, basis: &[Vector]) -> Matrix<GaussRat> {
    let rows = basis.iter().map(|u| basis.iter().map(|v| BBFContext::pair(gram, u, v)).collect()).collect();
    Matrix::from_rows(rows)
}

/// Inertia of a Gram matrix with real entries, read in the given coordinates.
pub fn coordinate_signature(gram: &Matrix<GaussRat>) -> Result<Signature> {
    let real = real_part_if_real(gram)
        .ok_or_else(|| Error::NonRealEntry("the Gram matrix has non-real entries in these coordinates".into()))?;
    symmetric_signature(&real)
}

/// Coordinate signature on the canonical basis of a subspace.
pub fn coordinate_signature_on(gram: &Matrix<GaussRat>, span: &[Vector]) -> Result<Signature> {
    coordinate_signature(&restricted_gram(gram, &canonical_basis(span)))
}

/// Matrix of complex conjugation on `H²` in context coordinates: column `j`
/// holds the coordinates of the class of `conj(basisⱼ)`.
pub fn conjugation_matrix(ctx: &BBFContext) -> Result<Matrix<GaussRat>> {
    let columns: Vec<Vector> = ctx.basis().iter().map(|f| ctx.form_coords(&f.conjugate())).collect::<Result<_>>()?;
    Ok(Matrix::from_columns(ctx.b2(), &columns))
}

fn conj_vector(conj: &Matrix<GaussRat>, v: &[GaussRat]) -> Vector {
    let bar: Vector = v.iter().map(GaussRat::conjugate).collect();
    conj.mul_vec(&bar)
}

/// Inertia of `⟨·,·⟩` restricted to the real points of a conjugation-stable
/// subspace, on the real basis `{w + w̄, i(w − w̄)}` (independent vectors kept).
pub fn real_signature_on(gram: &Matrix<GaussRat>, conj: &Matrix<GaussRat>, span: &[Vector]) -> Result<Signature> {
    let len = gram.rows();
    let basis = canonical_basis(span);
    let k = basis.len();
    for v in &basis {
        let w = conj_vector(conj, v);
        let mut stacked = basis.clone();
        stacked.push(w);
        if rank(&Matrix::from_rows(stacked)) != k {
            return Err(Error::BasisNotConjugationStable("the conjugate of a spanning class leaves the subspace".into()));
        }
    }
    let i = GaussRat::i();
    let mut candidates = Vec::with_capacity(2 * k);
    for v in &basis {
        let w = conj_vector(conj, v);
        candidates.push(v.iter().zip(&w).map(|(a, b)| a.clone() + b.clone()).collect::<Vector>());
        candidates.push(v.iter().zip(&w).map(|(a, b)| i.clone() * (a.clone() - b.clone())).collect::<Vector>());
    }
    let pivots = rref(&Matrix::from_columns(len, &candidates)).pivot_columns;
    let real_basis: Vec<Vector> = pivots.iter().map(|&c| candidates[c].clone()).collect();
    if real_basis.len() != k {
        return Err(Error::DecompositionFailure("real points do not span the subspace".into()));
    }
    let g = restricted_gram(gram, &real_basis);
    let real = real_part_if_real(&g)
        .ok_or_else(|| Error::NonRealEntry("the form is not real on conjugation-fixed classes".into()))?;
    symmetric_signature(&real)
}

/// Real-structure signature on all of `H²`.
pub fn real_signature(ctx: &BBFContext) -> Result<Signature> {
    let gram = ctx.gram_matrix();
    real_signature_on(&gram, &conjugation_matrix(ctx)?, &unit_vectors(ctx.b2()))
}

fn unit_vectors(k: usize) -> Vec<Vector> {
    (0..k)
        .map(|i| (0..k).map(|j| if i == j { GaussRat::from(1) } else { GaussRat::zero() }).collect())
        .collect()
}

fn require_ddbar(ctx: &BBFContext) -> Result<()> {
    match ctx.engine().ddbar_verdict()? {
        DdbarVerdict::Holds => Ok(()),
        DdbarVerdict::Fails { p, q } => Err(Error::DdbarRequired { p, q }),
    }
}

/// One block of a decomposition of `H²`, in context coordinates.
#[derive(Clone, Debug)]
pub struct Block {
    pub name: &'static str,
    pub span: Vec<Vector>,
    pub dim: usize,
    /// Rank of `⟨·,·⟩` restricted to the block.
    pub rank: usize,
    /// Coordinate signature on the block's canonical basis, when real.
    pub signature: Option<Signature>,
    pub real_signature: Signature,
}

impl Block {
    fn new(name: &'static str, span: Vec<Vector>, gram: &Matrix<GaussRat>, conj: &Matrix<GaussRat>) -> Result<Self> {
        let basis = canonical_basis(&span);
        let restricted = restricted_gram(gram, &basis);
        Ok(Block {
            name,
            dim: basis.len(),
            rank: rank(&restricted),
            signature: coordinate_signature(&restricted).ok(),
            real_signature: real_signature_on(gram, conj, &span)?,
            span,
        })
    }
}

/// `H² = V ⊕ W ⊕ H^{1,1}` with `V = span{[σ],[σ̄]}` and `W` the kernel.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub v: Block,
    pub w: Block,
    pub h11: Block,
}

fn orthogonal(gram: &Matrix<GaussRat>, a: &[Vector], b: &[Vector]) -> bool {
    a.iter().all(|u| b.iter().all(|v| BBFContext::pair(gram, u, v).is_zero()))
}

/// Context coordinates of the images in `H²` of the Bott–Chern classes of
/// bidegree `(p,q)`.
fn bott_chern_image(ctx: &BBFContext, p: usize, q: usize) -> Result<Vec<Vector>> {
    let space = ctx.engine().bott_chern(p, q)?;
    space.basis().iter().map(|f| ctx.form_coords(f)).collect()
}

pub fn decomposition(ctx: &BBFContext) -> Result<Decomposition> {
    require_ddbar(ctx)?;
    let gram = ctx.gram_matrix();
    decomposition_with(ctx, &gram, &conjugation_matrix(ctx)?)
}

fn decomposition_with(ctx: &BBFContext, gram: &Matrix<GaussRat>, conj: &Matrix<GaussRat>) -> Result<Decomposition> {
    let fail = |what: &str| Err(Error::DecompositionFailure(what.to_string()));
    let sigma = ctx.sigma();
    let v_span = vec![ctx.form_coords(sigma)?, ctx.form_coords(&sigma.conjugate())?];
    let w_span = kernel_coords(gram);
    let h11_span = bott_chern_image(ctx, 1, 1)?;
    let v = Block::new("V", v_span, gram, conj)?;
    let w = Block::new("W", w_span, gram, conj)?;
    let h11 = Block::new("H11", h11_span, gram, conj)?;
    if v.dim + w.dim + h11.dim != ctx.b2() {
        return fail("block dimensions do not sum to b2");
    }
    let all: Vec<Vector> = [v.span.clone(), w.span.clone(), h11.span.clone()].concat();
    if rank(&Matrix::from_rows(all)) != ctx.b2() {
        return fail("blocks do not span H^2");
    }
    if !orthogonal(gram, &v.span, &h11.span) || !orthogonal(gram, &v.span, &w.span) || !orthogonal(gram, &w.span, &h11.span) {
        return fail("blocks are not pairwise orthogonal");
    }
    Ok(Decomposition { v, w, h11 })
}

/// Witnesses of the criterion for `[τ₂₀] + [τ₀₂]` to be orthogonal to
/// `span{[σ],[σ̄]}`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalityWitness {
    /// `∫σⁿσ̄^{n−1}τ₀₂`.
    pub i1: GaussRat,
    /// `∫σ^{n−1}σ̄ⁿτ₂₀`.
    pub i2: GaussRat,
    pub polar_sigma: GaussRat,
    pub polar_sigma_bar: GaussRat,
    pub in_v_perp: bool,
}

/// Requires the ∂∂̄-lemma; `τ₂₀ ∈ H^{2,0}_∂̄` and `τ₀₂ ∈ H^{0,2}_∂̄`.
///
/// Cross-check: `⟨τ,σ⟩ = c·I₁` and `⟨τ,σ̄⟩ = c·I₂` with
/// `c = (n + (1−n)∫(σσ̄)ⁿ)/2`, which is `1/2` for normalized `σ`.
pub fn orthogonality_condition(ctx: &BBFContext, tau20: &ClassVector, tau02: &ClassVector) -> Result<OrthogonalityWitness> {
    require_ddbar(ctx)?;
    for (v, p, q) in [(tau20, 2, 0), (tau02, 0, 2)] {
        if v.space.theory() != Theory::Dolbeault || v.space.degree() != Degree::Bi(p, q) {
            return Err(Error::WrongDegree { expected: format!("a Dolbeault class of bidegree ({p},{q})") });
        }
    }
    let (t20, t02) = (tau20.representative(), tau02.representative());
    let i1 = ctx.wedge_integral(ctx.b_form(), &t02);
    let i2 = ctx.wedge_integral(ctx.a_form(), &t20);
    let tau: Form<GaussRat> = t20 + t02;
    let sigma = ctx.sigma();
    let polar_sigma = ctx.polar_forms(&tau, sigma)?;
    let polar_sigma_bar = ctx.polar_forms(&tau, &sigma.conjugate())?;
    let n = ctx.n() as i64;
    let c = (GaussRat::from(n) + GaussRat::from(1 - n) * ctx.symplectic().normalization().clone())
        * GaussRat::from_ratios(1, 2, 0, 1);
    if polar_sigma != c.clone() * i1.clone() || polar_sigma_bar != c * i2.clone() {
        return Err(Error::DecompositionFailure("orthogonality witnesses disagree with the polar form".into()));
    }
    let in_v_perp = i1.is_zero() && i2.is_zero();
    Ok(OrthogonalityWitness { i1, i2, polar_sigma, polar_sigma_bar, in_v_perp })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadricPredicates {
    /// The Gram matrix is nondegenerate.
    pub smooth: bool,
    /// The Gram matrix has rank at least 3.
    pub irreducible: bool,
}

/// Both sides of the biconditionals `smooth ⇔ h^{2,0} = 1` and
/// `irreducible ⇔ h^{1,1} > 0`, computed independently.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TheoremCheck {
    pub h20: usize,
    pub h11: usize,
    pub smooth_expected: bool,
    pub irreducible_expected: bool,
}

/// Restriction of the form to the images of `H^{2,0}_BC ⊕ H^{0,2}_BC` and of
/// `H^{1,1}_BC` in `H²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BottChernBlocks {
    pub dim_20_02: usize,
    pub rank_20_02: usize,
    pub dim_11: usize,
    pub rank_11: usize,
    pub orthogonal: bool,
}

impl BottChernBlocks {
    pub fn degenerate_on_both(&self) -> bool {
        self.rank_20_02 < self.dim_20_02 && self.rank_11 < self.dim_11
    }
}

#[derive(Clone, Debug)]
pub struct BBFReport {
    pub basis: Vec<Form<GaussRat>>,
    pub gram: Matrix<GaussRat>,
    pub rank: usize,
    /// Context coordinates of a kernel basis.
    pub kernel: Vec<Vector>,
    pub kernel_forms: Vec<Form<GaussRat>>,
    /// Coordinate signature of the Gram matrix, present when its entries are real.
    pub signature: Option<Signature>,
    pub real_signature: Signature,
    pub predicates: QuadricPredicates,
    pub ddbar_applicable: bool,
    pub blocks: Option<Decomposition>,
    pub theorems: Option<TheoremCheck>,
    pub bott_chern_blocks: Option<BottChernBlocks>,
    /// `∫(σσ̄)ⁿ` when `σ` is not normalized; the values then depend on scaling.
    pub unnormalized: Option<GaussRat>,
}

pub fn quadric_report(ctx: &BBFContext) -> Result<BBFReport> {
    let gram = ctx.gram_matrix();
    if !gram.is_symmetric() {
        return Err(Error::NonSymmetric);
    }
    let conj = conjugation_matrix(ctx)?;
    let b2 = ctx.b2();
    let rank = rank(&gram);
    let kernel = kernel_coords(&gram);
    let kernel_forms = kernel.iter().map(|v| ctx.form_from_coords(v)).collect::<Result<_>>()?;
    let predicates = QuadricPredicates { smooth: rank == b2, irreducible: rank >= 3 };
    let ddbar_applicable = ctx.engine().ddbar_verdict()?.holds();
    let (blocks, theorems, bott_chern_blocks) = if ddbar_applicable {
        let engine = ctx.engine();
        let h20 = engine.dolbeault(2, 0)?.dim();
        let h11 = engine.dolbeault(1, 1)?.dim();
        let check = TheoremCheck { h20, h11, smooth_expected: h20 == 1, irreducible_expected: h11 > 0 };
        if check.smooth_expected != predicates.smooth || check.irreducible_expected != predicates.irreducible {
            return Err(Error::TheoremMismatch(format!(
                "rank {rank} of {b2} with h20 = {h20}, h11 = {h11}"
            )));
        }
        (Some(decomposition_with(ctx, &gram, &conj)?), Some(check), None)
    } else {
        (None, None, Some(bott_chern_blocks(ctx, &gram)?))
    };
    Ok(BBFReport {
        basis: ctx.basis().to_vec(),
        rank,
        kernel,
        kernel_forms,
        signature: coordinate_signature(&gram).ok(),
        real_signature: real_signature_on(&gram, &conj, &unit_vectors(b2))?,
        predicates,
        ddbar_applicable,
        blocks,
        theorems,
        bott_chern_blocks,
        unnormalized: ctx.unnormalized().cloned(),
        gram,
    })
}

fn bott_chern_blocks(ctx: &BBFContext, gram: &Matrix<GaussRat>) -> Result<BottChernBlocks> {
    let outer = [bott_chern_image(ctx, 2, 0)?, bott_chern_image(ctx, 0, 2)?].concat();
    let middle = bott_chern_image(ctx, 1, 1)?;
    let outer_basis = canonical_basis(&outer);
    let middle_basis = canonical_basis(&middle);
    Ok(BottChernBlocks {
        dim_20_02: outer_basis.len(),
        rank_20_02: rank(&restricted_gram(gram, &outer_basis)),
        dim_11: middle_basis.len(),
        rank_11: rank(&restricted_gram(gram, &middle_basis)),
        orthogonal: orthogonal(gram, &outer, &middle),
    })
}
