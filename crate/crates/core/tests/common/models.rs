//! Suite models and seeded random generators of valid models.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use holsym::exact::{GaussRat, ParamPoly, Rational};
use holsym::exterior::{BasisMonomial, Form};
use holsym::model::{builtin_model, iwasawa4, nakamura4, torus, ManifoldModel, ModelSpec};

pub const NAKAMURA_PARAMS: [&str; 3] = ["1/2", "1/3", "1/2i"];

/// The models every suite runs on, with their expected ∂∂̄ verdicts.
pub fn suite() -> Vec<(String, ManifoldModel, bool)> {
    let mut out = vec![("iwasawa4".to_string(), iwasawa4(), false)];
    for t in NAKAMURA_PARAMS {
        let spec = format!("nakamura4:t={t}");
        out.push((spec.clone(), builtin_model(&spec).unwrap(), true));
    }
    for m in [2, 4] {
        out.push((format!("torus:m={m}"), torus(m).unwrap(), true));
    }
    out
}

pub fn small_gauss(rng: &mut ChaCha8Rng, bound: i64) -> GaussRat {
    let re = rng.gen_range(-bound..=bound);
    let im = if rng.gen_bool(0.3) { rng.gen_range(-bound..=bound) } else { 0 };
    GaussRat::from_ratios(re, 1, im, 1)
}

pub fn small_rational_gauss(rng: &mut ChaCha8Rng) -> GaussRat {
    let den = rng.gen_range(1..=4);
    GaussRat::new(
        Rational::new(rng.gen_range(-4..=4), den),
        Rational::new(rng.gen_range(-4..=4), rng.gen_range(1..=4)),
    )
}

/// A Nakamura model at a random nonsingular parameter.
pub fn random_nakamura(rng: &mut ChaCha8Rng) -> ManifoldModel {
    loop {
        let t = GaussRat::new(Rational::new(rng.gen_range(-3..=3), rng.gen_range(2..=5)), Rational::new(rng.gen_range(-3..=3), rng.gen_range(2..=5)));
        if let Ok(model) = nakamura4(&t) {
            return model;
        }
    }
}

/// A random nilpotent model: `φ₁` is closed and `dφ_k` is a sparse
/// combination of `(2,0)` and `(1,1)` products of earlier generators.
/// Candidates failing validation are redrawn.
pub fn random_nilpotent(rng: &mut ChaCha8Rng, m: usize) -> ManifoldModel {
    loop {
        let mut spec = ModelSpec::closed(m);
        for k in 2..=m {
            if rng.gen_bool(0.25) {
                continue;
            }
            let mut f = Form::<ParamPoly>::zero(m);
            for _ in 0..rng.gen_range(1..=3) {
                let i = rng.gen_range(1..k);
                let j = rng.gen_range(1..k);
                let mono = if rng.gen_bool(0.5) && i != j {
                    let (a, b) = (i.min(j), i.max(j));
                    BasisMonomial::new(&[a, b], &[]).unwrap()
                } else {
                    BasisMonomial::new(&[i], &[j]).unwrap()
                };
                f = f + Form::monomial(m, mono, ParamPoly::constant(small_gauss(rng, 2)));
            }
            spec.d_phi[k - 1] = f;
        }
        if let Ok(model) = ManifoldModel::build_labeled(spec, "random") {
            return model;
        }
    }
}

/// A random element of the suite or a random model of dimension 2 to 4.
pub fn random_model(rng: &mut ChaCha8Rng) -> ManifoldModel {
    match rng.gen_range(0..6) {
        0 => random_nakamura(rng),
        1 | 2 => random_nilpotent(rng, 2),
        3 | 4 => random_nilpotent(rng, 3),
        _ => random_nilpotent(rng, 4),
    }
}

/// A random form of degree `k` with sparse small coefficients.
pub fn random_form(rng: &mut ChaCha8Rng, m: usize, k: usize) -> Form<GaussRat> {
    let basis = holsym::exterior::enumerate_total_degree(m, k);
    let mut f = Form::zero(m);
    if basis.is_empty() {
        return f;
    }
    for _ in 0..rng.gen_range(0..=4) {
        let mono = basis[rng.gen_range(0..basis.len())];
        f = f + Form::monomial(m, mono, small_gauss(rng, 3));
    }
    f
}

/// A random form of bidegree `(p,q)`.
pub fn random_biform(rng: &mut ChaCha8Rng, m: usize, p: usize, q: usize) -> Form<GaussRat> {
    let basis = holsym::exterior::enumerate_basis(m, p, q).unwrap();
    let mut f = Form::zero(m);
    for _ in 0..rng.gen_range(0..=4) {
        let mono = basis[rng.gen_range(0..basis.len())];
        f = f + Form::monomial(m, mono, small_gauss(rng, 3));
    }
    f
}

pub fn params(pairs: &[(&str, GaussRat)]) -> BTreeMap<String, GaussRat> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// A Gaussian rational of modulus 1.
pub fn unit(rng: &mut ChaCha8Rng) -> GaussRat {
    const UNITS: [(i64, i64, i64, i64); 8] =
        [(1, 1, 0, 1), (0, 1, 1, 1), (-1, 1, 0, 1), (0, 1, -1, 1), (3, 5, 4, 5), (4, 5, -3, 5), (-5, 13, 12, 13), (8, 17, 15, 17)];
    let (a, b, c, d) = UNITS[rng.gen_range(0..UNITS.len())];
    GaussRat::from_ratios(a, b, c, d)
}

/// A random normalized symplectic form: `u·φ₁₂` for `m = 2`, otherwise
/// `αφ₁₄ + βφ₂₃` with `4|α|²|β|² = 1`.
pub fn random_normalized_sigma(rng: &mut ChaCha8Rng, m: usize) -> Form<GaussRat> {
    let mono = |h: &[usize]| BasisMonomial::new(h, &[]).unwrap();
    if m == 2 {
        return Form::monomial(2, mono(&[1, 2]), unit(rng));
    }
    let r = Rational::new(rng.gen_range(1..=5), rng.gen_range(1..=5));
    let alpha = GaussRat::real(r.clone()) * unit(rng);
    let beta = GaussRat::real(Rational::from(1) / (Rational::from(2) * r)) * unit(rng);
    Form::monomial(m, mono(&[1, 4]), alpha) + Form::monomial(m, mono(&[2, 3]), beta)
}

/// Suite models carrying symplectic forms (even dimension).
pub fn symplectic_suite() -> Vec<(String, ManifoldModel, bool)> {
    suite().into_iter().filter(|(_, m, _)| m.dim() % 2 == 0).collect()
}
