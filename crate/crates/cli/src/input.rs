use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use holsym::exact::GaussRat;
use holsym::exterior::{parse_form_bound, Form};
use holsym::model::{builtin_model, parse_model_file, ManifoldModel};
use holsym::{Error, ErrorKind};
use serde_json::{json, Value};

use crate::args::Common;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io { path: String, message: String },
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io { path, message } => write!(f, "{path}: {message}"),
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl CliError {
    /// 1 usage, 2 validation, 3 computation inconsistency.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io { .. } => 2,
            CliError::Core(e) => match e.kind() {
                ErrorKind::Validation => 2,
                ErrorKind::Inconsistency => 3,
            },
        }
    }

    pub fn to_json(&self) -> Value {
        let (code, location) = match self {
            CliError::Core(e) => (e.code(), e.location().map(|l| json!({"line": l.line, "column": l.column}))),
            CliError::Io { .. } => ("Io", None),
            CliError::Usage(_) => ("Usage", None),
        };
        json!({"code": code, "message": self.to_string(), "location": location})
    }
}

/// Where a model came from; user files get a caveat on the ∂∂̄ verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Builtin,
    File,
}

impl Source {
    pub fn key(self) -> &'static str {
        match self {
            Source::Builtin => "builtin",
            Source::File => "file",
        }
    }
}

pub struct Loaded {
    pub model: ManifoldModel,
    pub source: Source,
    /// `--param` bindings that are not model parameters.
    pub extra: BTreeMap<String, GaussRat>,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
}

/// Resolves `--model`: an explicit `builtin:` prefix, then an existing file,
/// then a bare builtin name. Applies `--param` and `--mu`.
pub fn load(common: &Common) -> Result<Loaded, CliError> {
    let spec = common.model.trim();
    let mut bound = BTreeMap::new();
    for (k, v) in &common.params {
        if bound.insert(k.clone(), v.clone()).is_some() {
            return Err(CliError::Usage(format!("parameter `{k}` bound twice")));
        }
    }
    let (model, source) = if spec.starts_with("builtin:") || !Path::new(spec).exists() {
        (builtin_with_args(spec, &mut bound)?, Source::Builtin)
    } else {
        (parse_model_file(&read(Path::new(spec))?)?, Source::File)
    };
    let (rebind, extra): (BTreeMap<_, _>, BTreeMap<_, _>) =
        bound.into_iter().partition(|(k, _)| model.params().contains_key(k));
    let mut model = if rebind.is_empty() { model } else { model.with_params(&rebind)? };
    if let Some(mu) = &common.mu {
        if !mu.is_real() {
            return Err(Error::NonPositiveVolume(mu.to_string()).into());
        }
        model = model.with_mu(mu.re.clone())?;
    }
    Ok(Loaded { model, source, extra })
}

/// Builtin arguments are inline (`nakamura4:t=1/2`); a `--param` naming one
/// of them overrides the inline value and is consumed.
fn builtin_with_args(spec: &str, params: &mut BTreeMap<String, GaussRat>) -> Result<ManifoldModel, CliError> {
    let body = spec.strip_prefix("builtin:").unwrap_or(spec);
    let (name, inline) = body.split_once(':').unwrap_or((body, ""));
    let accepted: &[&str] = match name {
        "nakamura4" => &["t"],
        "torus" => &["m"],
        _ => &[],
    };
    // Malformed inline arguments are kept verbatim for the core parser to reject.
    let mut args: Vec<(String, String)> = inline
        .split(',')
        .filter(|a| !a.trim().is_empty())
        .map(|a| match a.split_once('=') {
            Some((k, v)) => (k.trim().to_string(), v.trim().to_string()),
            None => (a.trim().to_string(), String::new()),
        })
        .collect();
    for key in accepted {
        if let Some(v) = params.remove(*key) {
            let text = if v.is_real() { v.re.to_string() } else { v.to_string() };
            args.retain(|(k, _)| k != key);
            args.push((key.to_string(), text));
        }
    }
    let args: Vec<String> =
        args.into_iter().map(|(k, v)| if v.is_empty() { k } else { format!("{k}={v}") }).collect();
    let full = if args.is_empty() { name.to_string() } else { format!("{name}:{}", args.join(",")) };
    Ok(builtin_model(&full)?)
}

/// Fails on `--param` names that are neither model parameters nor consumed
/// by the subcommand.
pub fn reject_extra(loaded: &Loaded) -> Result<(), CliError> {
    match loaded.extra.keys().next() {
        Some(k) => Err(Error::UnknownParameter(k.clone()).into()),
        None => Ok(()),
    }
}

/// A class expression in the model's form syntax; model parameters may
/// appear in coefficients.
pub fn parse_class(model: &ManifoldModel, text: &str) -> Result<Form<GaussRat>, CliError> {
    Ok(parse_form_bound(text, model.dim(), &model.spec().binding())?)
}

/// One class expression per line; blank lines and `#` comments are skipped.
/// Syntax errors report the line in the file.
pub fn read_basis(model: &ManifoldModel, path: &Path) -> Result<Vec<Form<GaussRat>>, CliError> {
    let text = read(path)?;
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let form = parse_class(model, body).map_err(|e| match e {
            CliError::Core(Error::Syntax { location, message }) => {
                let column = raw.find(body).unwrap_or(0) + location.column;
                CliError::Core(Error::Syntax { location: holsym::Location { line: n + 1, column }, message })
            }
            other => other,
        })?;
        out.push(form);
    }
    Ok(out)
}
