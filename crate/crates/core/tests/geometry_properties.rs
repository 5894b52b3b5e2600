mod common;

use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::models::{random_model, random_normalized_sigma, small_gauss, small_rational_gauss, suite, symplectic_suite};
use holsym::bbf::{conjugation_matrix, decomposition, quadric_report, restricted_gram, BBFContext};
use holsym::cohomology::{class_coordinates, ClassVector, CohomologyEngine, Degree, Theory};
use holsym::exact::{rank, GaussRat, Matrix, ParamPoly, Scalar, Var};
use holsym::exterior::Form;
use holsym::lefschetz::{lefschetz_check, lefschetz_matrix, LefschetzVerdict};
use holsym::symplectic::{is_symplectic, symplectic_locus};

const CASES: usize = 100;

#[test]
fn exactness_quotient_is_respected() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..CASES {
        let model = random_model(&mut rng);
        let m = model.dim();
        let engine = CohomologyEngine::new(model.clone());
        let k = rng.gen_range(1..=2 * m - 1);
        let h = engine.de_rham(k).unwrap();
        if h.dim() == 0 {
            continue;
        }
        let i = rng.gen_range(0..h.dim());
        let noise = model.differential(&common::models::random_form(&mut rng, m, k - 1)).unwrap();
        let v = class_coordinates(&h, &(h.basis()[i].clone() + noise)).unwrap();
        assert_eq!(v, ClassVector::unit(h.clone(), i));

        let (p, q) = (rng.gen_range(0..=m), rng.gen_range(1..=m));
        let dol = engine.dolbeault(p, q).unwrap();
        if dol.dim() > 0 {
            let j = rng.gen_range(0..dol.dim());
            let noise = model.delbar(&common::models::random_biform(&mut rng, m, p, q - 1)).unwrap();
            assert_eq!(class_coordinates(&dol, &(dol.basis()[j].clone() + noise)).unwrap(), ClassVector::unit(dol.clone(), j));
        }
    }
}

#[test]
fn dimension_symmetries_and_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut models: Vec<_> = suite().into_iter().map(|(_, m, _)| m).collect();
    models.extend((0..20).map(|_| random_model(&mut rng)));
    for model in models {
        let m = model.dim();
        let e = CohomologyEngine::new(model.clone());
        let conj = CohomologyEngine::new(model.conjugate_model().unwrap());
        let ddbar = e.ddbar_verdict().unwrap().holds();
        for p in 0..=m {
            for q in 0..=m {
                let h = e.dolbeault(p, q).unwrap().dim();
                assert_eq!(h, conj.dolbeault(p, q).unwrap().dim());
                if ddbar {
                    assert_eq!(h, e.dolbeault(q, p).unwrap().dim());
                }
                let bc = e.bott_chern(p, q).unwrap();
                assert_eq!(bc.dim(), e.bott_chern(q, p).unwrap().dim());
                assert_eq!(bc.dim(), conj.bott_chern(p, q).unwrap().dim());
                assert!(bc.dim() <= bc.closed_dim());
                let map = e.bc_to_dolbeault(p, q).unwrap();
                assert!(map.rank <= map.source.dim().min(map.target.dim()));
            }
        }
        if ddbar {
            for k in 0..=2 * m {
                let sum: usize = (0..=k.min(m)).filter(|&p| k - p <= m).map(|p| e.dolbeault(p, k - p).unwrap().dim()).sum();
                assert_eq!(sum, e.de_rham(k).unwrap().dim());
            }
        }
    }
}

#[test]
fn serre_pairing_and_conjugation_involution() {
    for (label, model, _) in suite() {
        let e = CohomologyEngine::new(model.clone());
        let m = model.dim();
        for p in 0..=m {
            for q in 0..=m {
                assert!(e.serre_pairing_check(p, q).unwrap().nondegenerate, "{label} ({p},{q})");
            }
        }
        let h2 = e.de_rham(2).unwrap();
        for i in 0..h2.dim() {
            let v = ClassVector::unit(h2.clone(), i);
            assert_eq!(e.conjugate_class(&e.conjugate_class(&v).unwrap()).unwrap(), v, "{label}");
        }
    }
}

#[test]
fn locus_is_homogeneous_and_detects_symplectic_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for (label, model, _) in symplectic_suite() {
        let locus = symplectic_locus(&model).unwrap();
        let n = model.dim() / 2;
        assert!(locus.polynomial.is_homogeneous(n as u32), "{label}");
        let lam = ParamPoly::var("lam");
        let scaled = locus.polynomial.substitute(&|v: &Var| {
            let x = ParamPoly::from_var(v.clone());
            if v.conj { x * lam.conj() } else { x * lam.clone() }
        });
        assert_eq!(scaled, locus.polynomial.clone() * lam.pow(n as u32), "{label}");
        let mut nonzero_seen = false;
        for _ in 0..CASES {
            let coeffs: Vec<GaussRat> = (0..locus.basis.len()).map(|_| small_gauss(&mut rng, 1)).collect();
            let p = locus.eval(&coeffs).unwrap();
            let sigma = locus.form_at(&coeffs).unwrap();
            let verdict = is_symplectic(&model, &sigma).unwrap();
            assert_eq!(verdict.is_yes(), !p.is_zero(), "{label}: {sigma}");
            if let Ok(s) = verdict.into_form() {
                assert!(model.differential(s.sigma()).unwrap().is_zero());
                assert!(model.delbar(s.sigma()).unwrap().is_zero());
            }
            nonzero_seen |= !p.is_zero();
        }
        assert!(nonzero_seen, "{label}: locus polynomial vanished on the whole grid");
    }
}

fn contexts(rng: &mut ChaCha8Rng) -> Vec<(String, BBFContext)> {
    symplectic_suite()
        .into_iter()
        .map(|(label, model, _)| {
            let m = model.dim();
            let engine = Arc::new(CohomologyEngine::new(model));
            let sigma = random_normalized_sigma(rng, m);
            (label, BBFContext::new(engine, &sigma, None, false).unwrap())
        })
        .collect()
}

#[test]
fn q_is_independent_of_representatives_and_real() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for (label, ctx) in contexts(&mut rng) {
        let model = ctx.engine().model().clone();
        let m = model.dim();
        let gram = ctx.gram_matrix();
        assert!(gram.is_symmetric());
        let conj = conjugation_matrix(&ctx).unwrap();
        for _ in 0..CASES {
            let coords: Vec<GaussRat> = (0..ctx.b2()).map(|_| if rng.gen_bool(0.4) { small_rational_gauss(&mut rng) } else { GaussRat::zero() }).collect();
            let alpha = ctx.form_from_coords(&coords).unwrap();
            let exact = model.differential(&common::models::random_form(&mut rng, m, 1)).unwrap();
            let q = ctx.q_form(&alpha).unwrap();
            assert_eq!(ctx.q_form(&(alpha.clone() + exact)).unwrap(), q, "{label}");
            assert_eq!(BBFContext::pair(&gram, &coords, &coords), q, "{label}");
            let bar: Vec<GaussRat> = coords.iter().map(GaussRat::conjugate).collect();
            let conj_coords = conj.mul_vec(&bar);
            assert_eq!(ctx.q_form(&ctx.form_from_coords(&conj_coords).unwrap()).unwrap(), q.conjugate(), "{label}");
            let other: Vec<GaussRat> = (0..ctx.b2()).map(|_| small_gauss(&mut rng, 2)).collect();
            let (a, b) = (ctx.class_from_coords(&coords).unwrap(), ctx.class_from_coords(&other).unwrap());
            let beta = ctx.form_from_coords(&other).unwrap();
            assert_eq!(ctx.polar(&a, &b).unwrap(), ctx.polar_forms(&alpha, &beta).unwrap(), "{label}");
        }
    }
}

#[test]
fn sigma_identities_and_decomposition_on_ddbar_models() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for (label, ctx) in contexts(&mut rng) {
        let s = ctx.sigma().clone();
        let sb = s.conjugate();
        assert!(ctx.q_form(&s).unwrap().is_zero(), "{label}");
        assert_eq!(ctx.q_form(&(s.clone() + sb.clone())).unwrap(), GaussRat::one(), "{label}");
        assert_eq!(ctx.q_form(&(s.clone() - sb.clone())).unwrap(), -GaussRat::one(), "{label}");
        let gram = ctx.gram_matrix();
        assert!(gram.mul_vec(&ctx.form_coords(&s).unwrap()).iter().any(|x| !x.is_zero()), "{label}");
        let engine = ctx.engine();
        if !engine.ddbar_verdict().unwrap().holds() {
            continue;
        }
        let report = quadric_report(&ctx).unwrap();
        let th = report.theorems.unwrap();
        assert_eq!(report.predicates.smooth, th.h20 == 1, "{label}");
        assert_eq!(report.predicates.irreducible, th.h11 > 0, "{label}");
        let d = decomposition(&ctx).unwrap();
        assert_eq!(d.v.dim + d.w.dim + d.h11.dim, ctx.b2());
        assert_eq!(d.h11.rank, d.h11.dim, "{label}: H11 block degenerate");
        let perp = perp_dim(&gram, &d.h11.span);
        let h20 = engine.dolbeault(2, 0).unwrap().dim();
        let h02 = engine.dolbeault(0, 2).unwrap().dim();
        assert_eq!(perp, h20 + h02, "{label}");
        let n = ctx.n() as u32;
        let ss = s.wedge(&sb).unwrap();
        let l = lefschetz_matrix(engine, Theory::Dolbeault, &ss, n - 1, (1, 1)).unwrap();
        assert!(l.is_injective(), "{label}");
    }
}

/// Dimension of the orthogonal complement of a span.
fn perp_dim(gram: &Matrix<GaussRat>, span: &[Vec<GaussRat>]) -> usize {
    let rows: Vec<Vec<GaussRat>> = span.iter().map(|u| gram.transpose().mul_vec(u)).collect();
    gram.rows() - rank(&Matrix::from_rows(rows))
}

#[test]
fn restricted_gram_is_congruence() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for (_, ctx) in contexts(&mut rng) {
        let gram = ctx.gram_matrix();
        let k = ctx.b2();
        let id: Vec<Vec<GaussRat>> = (0..k).map(|i| (0..k).map(|j| if i == j { GaussRat::one() } else { GaussRat::zero() }).collect()).collect();
        assert_eq!(restricted_gram(&gram, &id), gram);
    }
}

#[test]
fn lefschetz_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (label, model, ddbar) in symplectic_suite() {
        let m = model.dim();
        let n = m / 2;
        let e = CohomologyEngine::new(model);
        let sigma = random_normalized_sigma(&mut rng, m);
        let sb = sigma.conjugate();
        let k = (n - 1) as u32;
        if ddbar {
            for q in 0..=m {
                let map = lefschetz_matrix(&e, Theory::Dolbeault, &sigma, k, (1, q)).unwrap();
                assert_eq!(lefschetz_check(&map), LefschetzVerdict::Isomorphism, "{label} q = {q}");
            }
        }
        if n < 2 {
            continue;
        }
        // Functoriality: two single steps compose to the square.
        for q in 0..=m {
            let two = lefschetz_matrix(&e, Theory::Dolbeault, &sigma, 2, (0, q)).unwrap();
            let a = lefschetz_matrix(&e, Theory::Dolbeault, &sigma, 1, (0, q)).unwrap();
            let b = lefschetz_matrix(&e, Theory::Dolbeault, &sigma, 1, (2, q)).unwrap();
            assert_eq!(b.matrix.mul(&a.matrix).unwrap(), two.matrix, "{label} q = {q}");
        }
        // The commuting square on H^{1,1}.
        let l = |t: &Form<GaussRat>, s| lefschetz_matrix(&e, Theory::Dolbeault, t, 1, s).unwrap().matrix;
        let ss = sigma.wedge(&sb).unwrap();
        let diagonal = l(&ss, (1, 1));
        assert_eq!(l(&sb, (3, 1)).mul(&l(&sigma, (1, 1))).unwrap(), diagonal, "{label}");
        assert_eq!(l(&sigma, (1, 3)).mul(&l(&sb, (1, 1))).unwrap(), diagonal, "{label}");
        // Conjugation intertwines L_σ on H^{1,q} and L_σ̄ on H^{q,1}.
        if ddbar {
            for q in 0..=m {
                let ls = lefschetz_matrix(&e, Theory::Dolbeault, &sigma, 1, (1, q)).unwrap();
                if ls.target.dim() == 0 && ls.source.dim() == 0 {
                    continue;
                }
                let lb = lefschetz_matrix(&e, Theory::Dolbeault, &sb, 1, (q, 1)).unwrap();
                let cs = conj_matrix(&e, &ls.source, &lb.source);
                let ct = conj_matrix(&e, &ls.target, &lb.target);
                assert_eq!(ct.mul(&ls.matrix.conj()).unwrap(), lb.matrix.mul(&cs).unwrap(), "{label} q = {q}");
            }
        }
    }
}

fn conj_matrix(
    e: &CohomologyEngine,
    from: &Arc<holsym::cohomology::CohomologySpace>,
    to: &Arc<holsym::cohomology::CohomologySpace>,
) -> Matrix<GaussRat> {
    let cols: Vec<Vec<GaussRat>> = (0..from.dim())
        .map(|i| {
            let v = e.conjugate_class(&ClassVector::unit(from.clone(), i)).unwrap();
            assert!(Arc::ptr_eq(&v.space, to));
            v.coords
        })
        .collect();
    Matrix::from_columns(to.dim(), &cols)
}

#[test]
fn bidegree_spaces_are_cached() {
    let e = CohomologyEngine::new(holsym::model::iwasawa4());
    let a = e.space(Theory::Dolbeault, Degree::Bi(1, 1)).unwrap();
    let b = e.dolbeault(1, 1).unwrap();
    assert!(Arc::ptr_eq(&a, &b));
}
