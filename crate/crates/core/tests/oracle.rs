mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::models::{random_model, suite};
use common::oracle::Oracle;
use holsym::cohomology::{CohomologyEngine, Theory};
use holsym::model::ManifoldModel;

/// Every dimension of every theory agrees with the brute-force oracle, and
/// the ∂∂̄ verdict agrees with the equality case of the Bott–Chern/Aeppli
/// inequality.
fn compare(label: &str, model: &ManifoldModel) {
    let oracle = Oracle::new(model);
    assert!(oracle.d_squared_vanishes(), "{label}: d^2 != 0");
    let engine = CohomologyEngine::new(model.clone());
    let m = model.dim();
    for k in 0..=2 * m {
        assert_eq!(engine.de_rham(k).unwrap().dim(), oracle.de_rham(k), "{label}: b_{k}");
    }
    for p in 0..=m {
        for q in 0..=m {
            let got = |t| engine.space(t, holsym::cohomology::Degree::Bi(p, q)).unwrap().dim();
            assert_eq!(got(Theory::Dolbeault), oracle.dolbeault(p, q), "{label}: dolbeault ({p},{q})");
            assert_eq!(got(Theory::BottChern), oracle.bott_chern(p, q), "{label}: bott-chern ({p},{q})");
            assert_eq!(got(Theory::Aeppli), oracle.aeppli(p, q), "{label}: aeppli ({p},{q})");
        }
    }
    assert_eq!(engine.ddbar_verdict().unwrap().holds(), oracle.ddbar_by_inequality(), "{label}: ddbar verdict");
}

#[test]
fn suite_models_match_oracle() {
    for (label, model, ddbar) in suite() {
        compare(&label, &model);
        assert_eq!(Oracle::new(&model).ddbar_by_inequality(), ddbar, "{label}");
    }
}

#[test]
fn random_models_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for case in 0..100 {
        let model = random_model(&mut rng);
        compare(&format!("case {case}"), &model);
    }
}

#[test]
fn iwasawa_reference_values() {
    let o = Oracle::new(&holsym::model::iwasawa4());
    assert_eq!([o.dolbeault(2, 0), o.dolbeault(1, 1), o.dolbeault(0, 2)], [6, 12, 4]);
    assert_eq!([o.bott_chern(2, 0), o.bott_chern(1, 1), o.bott_chern(0, 2)], [5, 9, 5]);
    assert_eq!([o.dolbeault(3, 1), o.bott_chern(3, 1), o.dolbeault(1, 3)], [12, 12, 12]);
    assert_eq!(o.de_rham(2), 17);
}
