use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::manifold::{ManifoldModel, ModelSpec};
use crate::error::{Error, Result};
use crate::exact::{GaussRat, ParamPoly, Rational};
use crate::exterior::{parse_form, parse_form_exact, Form, MAX_DIM};

fn eq(dim: usize, text: &str) -> Form<ParamPoly> {
    parse_form(text, dim).expect("builtin equation")
}

/// Iwasawa manifold times a complex torus: `dφ₃ = −φ₁∧φ₂`, all others closed.
pub fn iwasawa4() -> ManifoldModel {
    let mut spec = ModelSpec::closed(4);
    spec.d_phi[2] = eq(4, "-1*f12");
    ManifoldModel::build_labeled(spec, "iwasawa4").expect("iwasawa4 is valid")
}

/// Deformation `X_t` of the Nakamura threefold times an elliptic curve.
///
/// With `c = 1/(1−|t|²)`:
/// `dφ₂ = −c φ₁₂ + ct φ₂∧ω̄₁`, `dφ₃ = c φ₁₃ − ct φ₃∧ω̄₁`,
/// `dω̄₂ = −c φ₁∧ω̄₂ − ct ω̄₁₂`, `dω̄₃ = c φ₁∧ω̄₃ + ct ω̄₁₃`.
/// The `ω̄` equations are part of the presentation; they are not the formal
/// conjugates of the `φ` equations. `c` is not polynomial in `t`, so the
/// equations are stored already bound and `t` survives only in the label.
pub fn nakamura4(t: &GaussRat) -> Result<ManifoldModel> {
    let norm = t.norm_sqr();
    let denom = Rational::one() - norm;
    if denom.is_zero() {
        return Err(Error::SingularParameter(format!("1 - |t|^2 = 0 at t = {t}")));
    }
    let c = GaussRat::real(Rational::one() / denom);
    let ct = c.clone() * t.clone();
    let lin = |terms: &[(GaussRat, &str)]| {
        let parts = terms.iter().map(|(x, s)| parse_form_exact(s, 4).expect("monomial").scale(x));
        parts.fold(Form::zero(4), |a, b| a + b).map(|x| ParamPoly::constant(x.clone()))
    };
    let mut spec = ModelSpec::closed(4);
    spec.d_phi[1] = lin(&[(-c.clone(), "f12"), (ct.clone(), "f2w1")]);
    spec.d_phi[2] = lin(&[(c.clone(), "f13"), (-ct.clone(), "f3w1")]);
    spec.d_wbar = vec![
        None,
        Some(lin(&[(-c.clone(), "f1w2"), (-ct.clone(), "w12")])),
        Some(lin(&[(c.clone(), "f1w3"), (ct.clone(), "w13")])),
        None,
    ];
    ManifoldModel::build_labeled(spec, format!("nakamura4:t={t}"))
}

/// The flat complex torus of dimension `m`.
pub fn torus(m: usize) -> Result<ManifoldModel> {
    if m == 0 || m > MAX_DIM {
        return Err(Error::IndexOutOfRange { index: m, dim: MAX_DIM });
    }
    ManifoldModel::build_labeled(ModelSpec::closed(m), format!("torus:m={m}"))
}

/// Parses a scalar such as `1/2`, `1/2i`, `(1/3+1/2i)` or `-i`.
pub fn parse_scalar(text: &str) -> Result<GaussRat> {
    let f = parse_form_exact(text, 1)?;
    if f.is_zero() {
        return Ok(GaussRat::zero());
    }
    let constant = f.terms().next().filter(|(m, _)| f.len() == 1 && m.degree() == 0).map(|(_, c)| c.clone());
    constant.ok_or_else(|| Error::syntax(1, 1, format!("`{text}` is not a scalar")))
}

/// Resolves `iwasawa4`, `nakamura4:t=<scalar>` or `torus:m=<n>`.
///
/// A leading `builtin:` is accepted and ignored.
pub fn builtin_model(spec: &str) -> Result<ManifoldModel> {
    let spec = spec.trim();
    let spec = spec.strip_prefix("builtin:").unwrap_or(spec);
    let (name, args) = match spec.split_once(':') {
        Some((n, a)) => (n, a),
        None => (spec, ""),
    };
    let mut kv = BTreeMap::new();
    for part in args.split(',').filter(|s| !s.trim().is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::syntax(1, 1, format!("expected key=value in `{part}`")))?;
        kv.insert(k.trim().to_string(), v.trim().to_string());
    }
    let take = |kv: &mut BTreeMap<String, String>, key: &str| kv.remove(key);
    let model = match name {
        "iwasawa4" => iwasawa4(),
        "nakamura4" => {
            let t = take(&mut kv, "t").ok_or_else(|| Error::UnboundParameter("t".into()))?;
            nakamura4(&parse_scalar(&t)?)?
        }
        "torus" => {
            let m = take(&mut kv, "m").ok_or_else(|| Error::UnboundParameter("m".into()))?;
            let m: usize = m.parse().map_err(|_| Error::syntax(1, 1, format!("invalid dimension `{m}`")))?;
            torus(m)?
        }
        other => return Err(Error::UnknownModel(other.to_string())),
    };
    if let Some(k) = kv.keys().next() {
        return Err(Error::UnknownParameter(k.clone()));
    }
    Ok(model)
}
