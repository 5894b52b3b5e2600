//! Line-oriented model files.
//!
//! ```text
//! # Iwasawa manifold times a torus
//! dim 4
//! param t = 1/2
//! mu = 1
//! d f3 = -1*f12
//! d w3 = -1*w12
//! ```
//!
//! `dim` must precede the structure equations. Omitted `d fI` lines mean
//! `dφᵢ = 0`; omitted `d wI` lines mean `dω̄ᵢ` is the conjugate of `dφᵢ`.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::builtin::parse_scalar;
use super::manifold::{ManifoldModel, ModelSpec};
use crate::error::{Error, Result};
use crate::exterior::{parse_form_at, MAX_DIM};

fn shift(err: Error, line: usize, column: usize) -> Error {
    match err {
        Error::Syntax { location, message } => {
            Error::syntax(line, column + location.column - 1, message)
        }
        other => other,
    }
}

/// Column (1-based) of `part` inside `line`; `part` must be a subslice.
fn column_of(line: &str, part: &str) -> usize {
    let offset = part.as_ptr() as usize - line.as_ptr() as usize;
    line[..offset].chars().count() + 1
}

pub fn parse_model_file(text: &str) -> Result<ManifoldModel> {
    ManifoldModel::build_labeled(parse_model_spec(text)?, "file")
}

/// Parses without validating the structure equations.
pub fn parse_model_spec(text: &str) -> Result<ModelSpec> {
    let mut spec: Option<ModelSpec> = None;
    let mut params = BTreeMap::new();
    let mut mu = None;
    let mut seen = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("");
        let body = line.trim();
        if body.is_empty() {
            continue;
        }
        let col = column_of(raw, body);
        if let Some(rest) = body.strip_prefix("dim") {
            if spec.is_some() {
                return Err(Error::syntax(line_no, col, "duplicate `dim`"));
            }
            let m: usize = rest
                .trim()
                .parse()
                .map_err(|_| Error::syntax(line_no, col + 3, "expected a dimension after `dim`"))?;
            if m == 0 || m > MAX_DIM {
                return Err(Error::IndexOutOfRange { index: m, dim: MAX_DIM });
            }
            spec = Some(ModelSpec::closed(m));
        } else if let Some(rest) = body.strip_prefix("param") {
            let (name, value) = rest
                .split_once('=')
                .ok_or_else(|| Error::syntax(line_no, col, "expected `param NAME = VALUE`"))?;
            let name = name.trim();
            let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                && name != "i"
                && !is_monomial_token(name);
            if !valid {
                return Err(Error::syntax(line_no, column_of(raw, name), format!("invalid parameter name `{name}`")));
            }
            let v = parse_scalar(value.trim()).map_err(|e| shift(e, line_no, column_of(raw, value.trim())))?;
            if params.insert(name.to_string(), v).is_some() {
                return Err(Error::syntax(line_no, col, format!("duplicate parameter `{name}`")));
            }
        } else if let Some(rest) = body.strip_prefix("mu") {
            let value = rest
                .trim()
                .strip_prefix('=')
                .ok_or_else(|| Error::syntax(line_no, col, "expected `mu = VALUE`"))?
                .trim();
            let v = parse_scalar(value).map_err(|e| shift(e, line_no, column_of(raw, value)))?;
            if !v.is_real() {
                return Err(Error::syntax(line_no, column_of(raw, value), "mu must be real"));
            }
            if mu.replace(v.re).is_some() {
                return Err(Error::syntax(line_no, col, "duplicate `mu`"));
            }
        } else if let Some(rest) = body.strip_prefix('d').filter(|r| r.starts_with(char::is_whitespace)) {
            let spec = spec.as_mut().ok_or_else(|| Error::syntax(line_no, col, "`dim` must come first"))?;
            let (lhs, rhs) = rest
                .split_once('=')
                .ok_or_else(|| Error::syntax(line_no, col, "expected `d fI = EXPR`"))?;
            let lhs = lhs.trim();
            let lhs_col = column_of(raw, lhs);
            let (holo, idx) = match (lhs.strip_prefix('f'), lhs.strip_prefix('w')) {
                (Some(i), _) => (true, i),
                (_, Some(i)) => (false, i),
                _ => return Err(Error::syntax(line_no, lhs_col, format!("expected a generator, found `{lhs}`"))),
            };
            let i: usize = idx
                .parse()
                .map_err(|_| Error::syntax(line_no, lhs_col, format!("expected a generator, found `{lhs}`")))?;
            if i == 0 || i > spec.dim {
                return Err(Error::IndexOutOfRange { index: i, dim: spec.dim });
            }
            if seen.insert((holo, i), line_no).is_some() {
                return Err(Error::syntax(line_no, lhs_col, format!("duplicate equation for `{lhs}`")));
            }
            let expr = rhs.trim();
            if expr.is_empty() {
                return Err(Error::syntax(line_no, column_of(raw, rhs) , "empty expression"));
            }
            let f = parse_form_at(expr, spec.dim, line_no, column_of(raw, expr))?;
            if holo {
                spec.d_phi[i - 1] = f;
            } else {
                spec.d_wbar[i - 1] = Some(f);
            }
        } else {
            let word = body.split_whitespace().next().unwrap_or(body);
            return Err(Error::syntax(line_no, col, format!("unknown directive `{word}`")));
        }
    }
    let mut spec = spec.ok_or_else(|| Error::syntax(1, 1, "missing `dim` line"))?;
    spec.params = params;
    if let Some(mu) = mu {
        spec.mu = mu;
    }
    Ok(spec)
}

fn is_monomial_token(name: &str) -> bool {
    let rest = name.strip_prefix('f').or_else(|| name.strip_prefix('w'));
    rest.is_some_and(|r| r.chars().next().is_some_and(|c| c.is_ascii_digit()))
}

/// Writes a model file that parses back to an equal model.
pub fn emit_model(model: &ManifoldModel) -> String {
    let spec = model.spec();
    let mut out = String::new();
    writeln!(out, "dim {}", spec.dim).expect("string write");
    for (k, v) in &spec.params {
        writeln!(out, "param {k} = {v}").expect("string write");
    }
    writeln!(out, "mu = {}", spec.mu).expect("string write");
    for (i, f) in spec.d_phi.iter().enumerate() {
        if !f.is_zero() {
            writeln!(out, "d f{} = {f}", i + 1).expect("string write");
        }
    }
    for (i, f) in spec.d_wbar.iter().enumerate() {
        if let Some(f) = f {
            writeln!(out, "d w{} = {f}", i + 1).expect("string write");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::GaussRat;
    use crate::model::{builtin_model, iwasawa4};

    #[test]
    fn dim_alone_is_a_torus() {
        let x = parse_model_file("dim 2").unwrap();
        assert_eq!(x, builtin_model("torus:m=2").unwrap());
    }

    #[test]
    fn iwasawa_file_matches_builtin() {
        let x = parse_model_file("# Iwasawa x torus\ndim 4\nd f3 = -1*f12   # the only equation\n").unwrap();
        assert_eq!(x, iwasawa4());
    }

    #[test]
    fn round_trips() {
        for name in ["iwasawa4", "nakamura4:t=1/2", "nakamura4:t=1/3i", "torus:m=3"] {
            let x = builtin_model(name).unwrap();
            let text = emit_model(&x);
            let y = parse_model_file(&text).unwrap();
            assert_eq!(x, y, "{name}");
            assert_eq!(emit_model(&y), text);
        }
    }

    #[test]
    fn symbolic_parameters() {
        let text = "dim 2\nparam s = 1/2+1i\nmu = 2\nd f2 = s*f12\nd w2 = s~*f1w2\n";
        let err = parse_model_file(text).unwrap_err();
        // d(ω̄₂) = s̄ φ₁∧ω̄₂ makes d² vanish but φ equations alone must close too.
        assert!(matches!(err, Error::NotIntegrable { .. } | Error::NotClosedSquare { .. } | Error::StokesViolation { .. }), "{err:?}");
        let ok = "dim 2\nparam s = 1/2+1i\nd f2 = s*f1w1\n";
        let x = parse_model_file(ok).unwrap();
        assert_eq!(x.d_phi()[1].to_string(), "(1/2+1i)*f1w1");
        assert_eq!(x.params()["s"], GaussRat::from_ratios(1, 2, 1, 1));
        let y = parse_model_file(&emit_model(&x)).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(parse_model_file("dim 4\nd f2 = 1*w12"), Err(Error::NotIntegrable { .. })));
        assert!(matches!(parse_model_file("dim 4\nd f2 = 1*f1"), Err(Error::NotTwoForm { .. })));
        assert!(matches!(parse_model_file("dim 4\nd f2 = t*f13"), Err(Error::UnknownParameter(_))));
        assert!(matches!(parse_model_file("dim 2\nmu = -1"), Err(Error::NonPositiveVolume(_))));
        assert!(matches!(parse_model_file("dim 4\nd f5 = 1*f12"), Err(Error::IndexOutOfRange { .. })));
        // d(dφ₂) = d(φ₁₄) = −φ₁∧φ₂₃ ≠ 0.
        let e = parse_model_file("dim 4\nd f2 = 1*f14\nd f3 = 1*f12\nd f4 = 1*f23").unwrap_err();
        assert_eq!(e, Error::NotClosedSquare { generator: "f2".into(), residue: "-1*f123".into() });
        // The non-unimodular algebra dφ₂ = φ₁₂: ∫ d(φ₂∧ω̄₁₂) ≠ 0.
        let e = parse_model_file("dim 2\nd f2 = 1*f12").unwrap_err();
        assert!(matches!(e, Error::StokesViolation { .. }), "{e:?}");
    }

    #[test]
    fn syntax_errors_carry_locations() {
        let e = parse_model_file("dim 4\nd f3 = -1*f12 +").unwrap_err();
        assert_eq!(e.code(), "SyntaxError");
        assert_eq!(e.location().unwrap().line, 2);
        let e = parse_model_file("dim 4\n  d f3 = -1 ** f12").unwrap_err();
        let loc = e.location().unwrap();
        assert_eq!((loc.line, loc.column), (2, 14));
        assert_eq!(parse_model_file("d f1 = 0").unwrap_err().code(), "SyntaxError");
        assert_eq!(parse_model_file("dim 2\nfoo 3").unwrap_err().code(), "SyntaxError");
        assert_eq!(parse_model_file("").unwrap_err().code(), "SyntaxError");
    }
}
