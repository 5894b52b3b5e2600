//! Lefschetz-type operators `[α] ↦ [τᵏ∧α]` between Dolbeault, Bott–Chern or
//! Aeppli spaces.

use std::sync::Arc;

use crate::cohomology::{ClassVector, CohomologyEngine, CohomologySpace, Degree, Theory};
use crate::error::{Error, Result};
use crate::exact::{kernel_basis, rank, GaussRat, Matrix};
use crate::exterior::Form;

/// Matrix of `[α] ↦ [τᵏ∧α]`; column `j` holds the target coordinates of the
/// image of the `j`-th source basis class.
#[derive(Clone, Debug)]
pub struct LefschetzMap {
    pub tau: Form<GaussRat>,
    pub power: u32,
    pub source: Arc<CohomologySpace>,
    pub target: Arc<CohomologySpace>,
    pub matrix: Matrix<GaussRat>,
    pub rank: usize,
}

impl LefschetzMap {
    pub fn is_injective(&self) -> bool {
        self.rank == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank == self.target.dim()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LefschetzVerdict {
    Isomorphism,
    InjectiveOnly { cokernel: usize },
    /// A basis of the kernel, as source classes.
    Kernel(Vec<ClassVector>),
}

/// The map induced by `τᵏ∧` from the `(p,q)` space of `theory` to the space
/// of bidegree `(p,q) + k·bidegree(τ)`.
///
/// `τ` must be d-closed and of pure bidegree. Well-definedness is verified:
/// images of source representatives must be closed in the target and images
/// of source exact forms must be exact there.
pub fn lefschetz_matrix(
    engine: &CohomologyEngine,
    theory: Theory,
    tau: &Form<GaussRat>,
    power: u32,
    source: (usize, usize),
) -> Result<LefschetzMap> {
    let model = engine.model();
    if theory == Theory::DeRham {
        return Err(Error::WrongDegree { expected: "a bigraded theory".into() });
    }
    model.check_form(tau)?;
    let (a, b) = tau.bidegree().ok_or(Error::InhomogeneousTau)?;
    if !model.differential(tau)?.is_zero() {
        return Err(Error::NotClosedTau);
    }
    let m = model.dim();
    let (p, q) = source;
    if p > m || q > m {
        return Err(Error::OutOfRange { p, q, dim: m });
    }
    let k = power as usize;
    let (tp, tq) = (p + k * a, q + k * b);
    if tp > m || tq > m {
        return Err(Error::TargetOutOfRange { p: tp as isize, q: tq as isize });
    }
    let src = engine.space(theory, Degree::Bi(p, q))?;
    let tgt = engine.space(theory, Degree::Bi(tp, tq))?;
    let tk = tau.power(power);
    let image = |f: &Form<GaussRat>| tk.wedge(f);
    let mut columns = Vec::with_capacity(src.dim());
    for f in src.basis() {
        let g = image(f)?;
        let coords = tgt.coordinates(&g).map_err(|e| match e {
            Error::NotClosed { .. } => Error::NotWellDefined(format!("image of [{f}] is not closed")),
            other => other,
        })?;
        columns.push(coords);
    }
    for e in src.exact_forms() {
        if !tgt.is_exact(&image(&e)?)? {
            return Err(Error::NotWellDefined(format!("image of the exact form {e} is not exact")));
        }
    }
    let matrix = Matrix::from_columns(tgt.dim(), &columns);
    let rank = rank(&matrix);
    Ok(LefschetzMap { tau: tau.clone(), power, source: src, target: tgt, matrix, rank })
}

pub fn lefschetz_check(map: &LefschetzMap) -> LefschetzVerdict {
    if !map.is_injective() {
        let kernel = kernel_basis(&map.matrix)
            .into_iter()
            .map(|v| ClassVector::new(map.source.clone(), v).expect("kernel vectors have source length"))
            .collect();
        return LefschetzVerdict::Kernel(kernel);
    }
    if map.is_surjective() {
        LefschetzVerdict::Isomorphism
    } else {
        LefschetzVerdict::InjectiveOnly { cokernel: map.target.dim() - map.rank }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::class_coordinates;
    use crate::exterior::parse_form_exact;
    use crate::model::{builtin_model, iwasawa4, torus};

    fn form(s: &str, m: usize) -> Form<GaussRat> {
        parse_form_exact(s, m).unwrap()
    }

    #[test]
    fn identity_at_power_zero() {
        let e = CohomologyEngine::new(torus(2).unwrap());
        let map = lefschetz_matrix(&e, Theory::Dolbeault, &form("f12", 2), 0, (1, 0)).unwrap();
        assert_eq!(map.matrix, Matrix::identity(2));
        assert_eq!(lefschetz_check(&map), LefschetzVerdict::Isomorphism);
    }

    #[test]
    fn iwasawa_suite() {
        let e = CohomologyEngine::new(iwasawa4());
        let sigma = form("f13 + f24", 4);
        let dol = lefschetz_matrix(&e, Theory::Dolbeault, &sigma, 1, (1, 1)).unwrap();
        assert_eq!((dol.matrix.rows(), dol.matrix.cols()), (12, 12));
        assert_eq!(lefschetz_check(&dol), LefschetzVerdict::Isomorphism);
        let bc = lefschetz_matrix(&e, Theory::BottChern, &sigma, 1, (1, 1)).unwrap();
        assert_eq!((bc.source.dim(), bc.target.dim()), (9, 12));
        assert_eq!(lefschetz_check(&bc), LefschetzVerdict::InjectiveOnly { cokernel: 3 });

        let bar = lefschetz_matrix(&e, Theory::Dolbeault, &sigma.conjugate(), 1, (1, 1)).unwrap();
        let LefschetzVerdict::Kernel(kernel) = lefschetz_check(&bar) else { panic!("expected a kernel") };
        assert_eq!(kernel.len(), 4);
        let listed: Vec<Vec<GaussRat>> = (1..=4)
            .map(|i| class_coordinates(&bar.source, &form(&format!("f{i}w1"), 4)).unwrap().coords)
            .collect();
        let union = [listed, kernel.iter().map(|v| v.coords.clone()).collect()].concat();
        assert_eq!(rank(&Matrix::from_rows(union)), 4);
    }

    #[test]
    fn nakamura_mixed_operator() {
        let e = CohomologyEngine::new(builtin_model("nakamura4:t=1/2").unwrap());
        let s = form("1/2*f14 + f23", 4);
        let ss = s.wedge(&s.conjugate()).unwrap();
        let map = lefschetz_matrix(&e, Theory::Dolbeault, &ss, 1, (1, 1)).unwrap();
        assert_eq!(lefschetz_check(&map), LefschetzVerdict::Isomorphism);
    }

    #[test]
    fn errors() {
        let e = CohomologyEngine::new(iwasawa4());
        let r = lefschetz_matrix(&e, Theory::Dolbeault, &form("f34", 4), 1, (1, 1));
        assert!(matches!(r, Err(Error::NotClosedTau)));
        let r = lefschetz_matrix(&e, Theory::Dolbeault, &form("f13 + f1w1", 4), 1, (1, 1));
        assert!(matches!(r, Err(Error::InhomogeneousTau)));
        let r = lefschetz_matrix(&e, Theory::Dolbeault, &form("f13", 4), 2, (1, 1));
        assert!(matches!(r, Err(Error::TargetOutOfRange { p: 5, q: 1 })));
        let r = lefschetz_matrix(&e, Theory::DeRham, &form("f13", 4), 1, (1, 1));
        assert!(matches!(r, Err(Error::WrongDegree { .. })));
    }
}
