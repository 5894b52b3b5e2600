use std::fmt::Write;
use std::sync::Arc;

use holsym::bbf::{quadric_report, BBFContext, BBFReport, Block};
use holsym::cohomology::{CohomologyEngine, CohomologySpace, DdbarVerdict, Degree, Theory};
use holsym::exact::{GaussRat, Matrix, Signature};
use holsym::exterior::Form;
use holsym::lefschetz::{lefschetz_check, lefschetz_matrix, LefschetzVerdict};
use holsym::model::{emit_model, ManifoldModel};
use holsym::symplectic::{closedness_discrepancy, is_symplectic, normalization_check, symplectic_locus, Normalization, SymplecticVerdict};
use serde_json::{json, Value};

use crate::args::{BbfArgs, Command, TheoryArg};
use crate::input::{load, parse_class, read_basis, reject_extra, CliError, Loaded, Source};

pub struct Output {
    pub json: Value,
    pub text: String,
}

type Run = Result<Output, CliError>;

fn scalar(x: &GaussRat) -> Value {
    Value::String(x.to_string())
}

fn form(f: &Form<GaussRat>) -> Value {
    Value::String(f.to_string())
}

fn forms(fs: &[Form<GaussRat>]) -> Value {
    Value::Array(fs.iter().map(form).collect())
}

fn matrix(m: &Matrix<GaussRat>) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array((0..m.cols()).map(|j| scalar(&m[(i, j)])).collect())).collect())
}

fn signature(s: &Signature) -> Value {
    json!({"plus": s.plus, "minus": s.minus, "zero": s.zero})
}

fn text_matrix(out: &mut String, m: &Matrix<GaussRat>) {
    let cells: Vec<Vec<String>> = (0..m.rows()).map(|i| (0..m.cols()).map(|j| short(&m[(i, j)])).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    for row in cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        writeln!(out, "  [{}]", line.join(" ")).expect("string write");
    }
}

/// Real scalars without the `+0i` suffix, for tables only.
fn short(x: &GaussRat) -> String {
    if x.is_real() {
        x.re.to_string()
    } else {
        x.to_string()
    }
}

pub fn run(command: &Command) -> Run {
    match command {
        Command::Validate(common) => {
            let loaded = load(common)?;
            reject_extra(&loaded)?;
            Ok(validate(&loaded))
        }
        Command::Cohomology { common, theory, bidegree } => {
            let loaded = load(common)?;
            reject_extra(&loaded)?;
            cohomology(&loaded, *theory, *bidegree)
        }
        Command::Ddbar(common) => {
            let loaded = load(common)?;
            reject_extra(&loaded)?;
            ddbar(&loaded, &CohomologyEngine::new(loaded.model.clone()))
        }
        Command::SymplecticScan { common, sigma } => {
            let loaded = load(common)?;
            symplectic_scan(&loaded, sigma.as_deref())
        }
        Command::Bbf { common, bbf: args } => {
            let loaded = load(common)?;
            reject_extra(&loaded)?;
            bbf(&loaded, Arc::new(CohomologyEngine::new(loaded.model.clone())), args)
        }
        Command::Lefschetz { common, tau, power, theory, source } => {
            let loaded = load(common)?;
            reject_extra(&loaded)?;
            lefschetz(&loaded, tau, *power, *theory, *source)
        }
        Command::Report { common, bbf: args } => {
            let loaded = load(common)?;
            let args = args.sigma.as_ref().map(|s| BbfArgs {
                sigma: s.clone(),
                basis: args.basis.clone(),
                allow_unnormalized: args.allow_unnormalized,
            });
            report(&loaded, args.as_ref())
        }
    }
}

fn validate(loaded: &Loaded) -> Output {
    let m = &loaded.model;
    let params: serde_json::Map<String, Value> = m.params().iter().map(|(k, v)| (k.clone(), scalar(v))).collect();
    let json = json!({
        "model": {
            "label": m.label(),
            "source": loaded.source.key(),
            "dim": m.dim(),
            "mu": m.mu().to_string(),
            "params": params,
            "d_phi": forms(m.d_phi()),
            "d_wbar": forms(m.d_wbar()),
            "self_conjugate": m.is_self_conjugate(),
        },
        "valid": true,
    });
    let mut text = format!("model {} ({}): valid\n", m.label(), loaded.source.key());
    for (i, f) in m.d_phi().iter().enumerate() {
        writeln!(text, "  d f{} = {f}", i + 1).expect("string write");
    }
    for (i, f) in m.d_wbar().iter().enumerate() {
        writeln!(text, "  d w{} = {f}", i + 1).expect("string write");
    }
    text.push_str("model file:\n");
    for line in emit_model(m).lines() {
        writeln!(text, "  {line}").expect("string write");
    }
    Output { json, text }
}

fn space_json(s: &CohomologySpace) -> Value {
    match s.degree() {
        Degree::Bi(p, q) => json!({"theory": s.theory().key(), "p": p, "q": q, "dim": s.dim(), "basis": forms(s.basis())}),
        Degree::Total(k) => json!({"theory": s.theory().key(), "k": k, "dim": s.dim(), "basis": forms(s.basis())}),
    }
}

fn cohomology_spaces(
    engine: &CohomologyEngine,
    theory: Option<TheoryArg>,
    bidegree: Option<(usize, usize)>,
) -> Result<Vec<Arc<CohomologySpace>>, CliError> {
    let m = engine.model().dim();
    let theories: Vec<Theory> = match theory {
        Some(t) => vec![t.into()],
        None if bidegree.is_some() => vec![Theory::Dolbeault, Theory::BottChern, Theory::Aeppli],
        None => vec![Theory::DeRham, Theory::Dolbeault, Theory::BottChern, Theory::Aeppli],
    };
    let mut out = Vec::new();
    for t in theories {
        match (t, bidegree) {
            (Theory::DeRham, Some(_)) => {
                return Err(CliError::Usage("de Rham cohomology is graded by total degree; omit --bidegree".into()))
            }
            (Theory::DeRham, None) => {
                for k in 0..=2 * m {
                    out.push(engine.de_rham(k)?);
                }
            }
            (t, Some((p, q))) => out.push(engine.space(t, Degree::Bi(p, q))?),
            (t, None) => {
                for (p, q) in engine.bidegrees() {
                    out.push(engine.space(t, Degree::Bi(p, q))?);
                }
            }
        }
    }
    Ok(out)
}

fn cohomology_tables(engine: &CohomologyEngine, spaces: &[Arc<CohomologySpace>], full: bool) -> String {
    let m = engine.model().dim();
    let mut text = String::new();
    if full {
        let betti: Vec<String> = spaces.iter().filter(|s| s.theory() == Theory::DeRham).map(|s| s.dim().to_string()).collect();
        writeln!(text, "de_rham b_k, k = 0..{}: {}", 2 * m, betti.join(" ")).expect("string write");
        for theory in [Theory::Dolbeault, Theory::BottChern, Theory::Aeppli] {
            writeln!(text, "{} h^(p,q), rows p = 0..{m}, columns q = 0..{m}:", theory.key()).expect("string write");
            for p in 0..=m {
                let row: Vec<String> = (0..=m)
                    .map(|q| {
                        let s = spaces.iter().find(|s| s.theory() == theory && s.degree() == Degree::Bi(p, q));
                        format!("{:>3}", s.map_or(0, |s| s.dim()))
                    })
                    .collect();
                writeln!(text, "  {}", row.join("")).expect("string write");
            }
        }
    } else {
        for s in spaces {
            writeln!(text, "{} {}: dim {}", s.theory().key(), s.degree(), s.dim()).expect("string write");
            for f in s.basis() {
                writeln!(text, "  {f}").expect("string write");
            }
        }
    }
    text
}

fn cohomology(loaded: &Loaded, theory: Option<TheoryArg>, bidegree: Option<(usize, usize)>) -> Run {
    let engine = CohomologyEngine::new(loaded.model.clone());
    let spaces = cohomology_spaces(&engine, theory, bidegree)?;
    let full = theory.is_none() && bidegree.is_none();
    let json = json!({"model": loaded.model.label(), "spaces": spaces.iter().map(|s| space_json(s)).collect::<Vec<_>>()});
    Ok(Output { json, text: cohomology_tables(&engine, &spaces, full) })
}

const CAVEAT: &str = "verdict computed on the invariant complex; equality with the manifold-level answer is not certified for user models";

fn ddbar(loaded: &Loaded, engine: &CohomologyEngine) -> Run {
    let report = engine.ddbar_report()?;
    let (verdict, witness) = match report.verdict {
        DdbarVerdict::Holds => ("holds", Value::Null),
        DdbarVerdict::Fails { p, q } => ("fails", json!({"p": p, "q": q})),
    };
    let entries: Vec<Value> = report
        .entries
        .iter()
        .map(|e| json!({"p": e.p, "q": e.q, "bott_chern": e.bott_chern, "dolbeault": e.dolbeault, "rank": e.rank, "bijective": e.bijective()}))
        .collect();
    let caveat = (loaded.source == Source::File).then_some(CAVEAT);
    let json = json!({"model": loaded.model.label(), "verdict": verdict, "witness": witness, "entries": entries, "caveat": caveat});
    let mut text = match report.verdict {
        DdbarVerdict::Holds => "ddbar-lemma: holds\n".to_string(),
        DdbarVerdict::Fails { p, q } => format!("ddbar-lemma: fails at ({p},{q})\n"),
    };
    for e in report.entries.iter().filter(|e| !e.bijective()) {
        writeln!(text, "  ({},{}): h_BC = {}, h_dbar = {}, rank = {}", e.p, e.q, e.bott_chern, e.dolbeault, e.rank).expect("string write");
    }
    if let Some(c) = caveat {
        writeln!(text, "note: {c}").expect("string write");
    }
    Ok(Output { json, text })
}

fn sigma_json(model: &ManifoldModel, sigma: &Form<GaussRat>) -> Result<(Value, String), CliError> {
    let verdict = is_symplectic(model, sigma)?;
    Ok(match verdict {
        SymplecticVerdict::Yes(s) => {
            let normalized = normalization_check(&s) == Normalization::Normalized;
            let text = format!(
                "sigma = {sigma}: symplectic, integral of (sigma sigmabar)^n = {}{}\n",
                short(s.normalization()),
                if normalized { " (normalized)" } else { " (not normalized)" }
            );
            (
                json!({"form": form(sigma), "symplectic": true, "reason": null, "normalization": scalar(s.normalization()), "normalized": normalized}),
                text,
            )
        }
        SymplecticVerdict::No(r) => (
            json!({"form": form(sigma), "symplectic": false, "reason": r.to_string(), "normalization": null, "normalized": false}),
            format!("sigma = {sigma}: not symplectic ({r})\n"),
        ),
    })
}

fn symplectic_scan(loaded: &Loaded, sigma: Option<&str>) -> Run {
    let model = &loaded.model;
    let locus = symplectic_locus(model)?;
    for k in loaded.extra.keys() {
        if !locus.variables.contains(k) {
            return Err(holsym::Error::UnknownParameter(k.clone()).into());
        }
    }
    let discrepancy = closedness_discrepancy(model)?;
    let mut text = format!("closed (2,0)-forms ({}):\n", locus.basis.len());
    for (v, f) in locus.variables.iter().zip(&locus.basis) {
        writeln!(text, "  {v}: {f}").expect("string write");
    }
    writeln!(text, "symplectic locus: P = {} != 0 (degree {})", locus.polynomial, locus.degree).expect("string write");
    writeln!(text, "dbar-closed but not d-closed (2,0)-forms: {discrepancy}").expect("string write");
    let evaluation = if loaded.extra.is_empty() {
        Value::Null
    } else {
        let coeffs: Vec<GaussRat> = locus
            .variables
            .iter()
            .map(|v| loaded.extra.get(v).cloned().ok_or_else(|| holsym::Error::UnboundParameter(v.clone())))
            .collect::<Result<_, _>>()?;
        let value = locus.eval(&coeffs)?;
        let at = locus.form_at(&coeffs)?;
        let symplectic = is_symplectic(model, &at)?.is_yes();
        writeln!(text, "P at {at} = {}: {}", short(&value), if symplectic { "symplectic" } else { "not symplectic" }).expect("string write");
        let binding: serde_json::Map<String, Value> = loaded.extra.iter().map(|(k, v)| (k.clone(), scalar(v))).collect();
        json!({"binding": binding, "form": form(&at), "value": scalar(&value), "symplectic": symplectic})
    };
    let sigma = match sigma {
        Some(s) => {
            let (j, t) = sigma_json(model, &parse_class(model, s)?)?;
            text.push_str(&t);
            j
        }
        None => Value::Null,
    };
    let json = json!({
        "model": model.label(),
        "closed_20_basis": forms(&locus.basis),
        "variables": locus.variables,
        "polynomial": locus.polynomial.to_string(),
        "degree": locus.degree,
        "discrepancy": discrepancy,
        "evaluation": evaluation,
        "sigma": sigma,
    });
    Ok(Output { json, text })
}

fn block_json(ctx: &BBFContext, b: &Block) -> Result<Value, CliError> {
    let span: Vec<Form<GaussRat>> = b.span.iter().map(|c| ctx.form_from_coords(c)).collect::<Result<_, _>>()?;
    Ok(json!({
        "dim": b.dim,
        "rank": b.rank,
        "signature": b.signature.as_ref().map(signature),
        "real_signature": signature(&b.real_signature),
        "span": forms(&span),
    }))
}

fn bbf_json(ctx: &BBFContext, r: &BBFReport) -> Result<Value, CliError> {
    let kernel: Vec<Value> = r
        .kernel
        .iter()
        .zip(&r.kernel_forms)
        .map(|(c, f)| json!({"form": form(f), "coordinates": c.iter().map(scalar).collect::<Vec<_>>()}))
        .collect();
    let blocks = match &r.blocks {
        Some(d) => json!({"V": block_json(ctx, &d.v)?, "W": block_json(ctx, &d.w)?, "H11": block_json(ctx, &d.h11)?}),
        None => Value::Null,
    };
    let theorems = r.theorems.as_ref().map(|t| {
        json!({"h20": t.h20, "h11": t.h11, "smooth_expected": t.smooth_expected, "irreducible_expected": t.irreducible_expected})
    });
    let bc = r.bott_chern_blocks.as_ref().map(|b| {
        json!({
            "dim_20_02": b.dim_20_02, "rank_20_02": b.rank_20_02,
            "dim_11": b.dim_11, "rank_11": b.rank_11,
            "orthogonal": b.orthogonal, "degenerate_on_both": b.degenerate_on_both(),
        })
    });
    Ok(json!({
        "sigma": form(ctx.sigma()),
        "n": ctx.n(),
        "basis": forms(&r.basis),
        "gram": matrix(&r.gram),
        "rank": r.rank,
        "kernel": kernel,
        "signature": r.signature.as_ref().map(signature),
        "real_signature": signature(&r.real_signature),
        "predicates": {"smooth": r.predicates.smooth, "irreducible": r.predicates.irreducible},
        "ddbar_applicable": r.ddbar_applicable,
        "blocks": blocks,
        "theorems": theorems,
        "bott_chern_blocks": bc,
        "unnormalized": r.unnormalized.as_ref().map(scalar),
    }))
}

fn bbf_text(ctx: &BBFContext, r: &BBFReport) -> String {
    let mut t = String::new();
    let w = &mut t;
    let yn = |b: bool| if b { "yes" } else { "no" };
    writeln!(w, "BBF form of sigma = {} (n = {})", ctx.sigma(), ctx.n()).expect("string write");
    if let Some(v) = &r.unnormalized {
        writeln!(w, "WARNING: sigma is not normalized (integral of (sigma sigmabar)^n = {}); values depend on scaling", short(v)).expect("string write");
    }
    writeln!(w, "basis:").expect("string write");
    for (i, f) in r.basis.iter().enumerate() {
        writeln!(w, "  e{} = {f}", i + 1).expect("string write");
    }
    writeln!(w, "gram:").expect("string write");
    text_matrix(w, &r.gram);
    writeln!(w, "rank: {}", r.rank).expect("string write");
    writeln!(w, "kernel:").expect("string write");
    for f in &r.kernel_forms {
        writeln!(w, "  [{f}]").expect("string write");
    }
    match &r.signature {
        Some(s) => writeln!(w, "signature (coordinates): {s}").expect("string write"),
        None => writeln!(w, "signature (coordinates): not real").expect("string write"),
    }
    writeln!(w, "signature (real structure): {}", r.real_signature).expect("string write");
    writeln!(w, "smooth: {}, irreducible: {}", yn(r.predicates.smooth), yn(r.predicates.irreducible)).expect("string write");
    writeln!(w, "ddbar-lemma applies: {}", yn(r.ddbar_applicable)).expect("string write");
    if let Some(d) = &r.blocks {
        for b in [&d.v, &d.w, &d.h11] {
            let sig = b.signature.map_or("not real".to_string(), |s| s.to_string());
            writeln!(w, "  block {}: dim {}, rank {}, signature {sig}, real signature {}", b.name, b.dim, b.rank, b.real_signature)
                .expect("string write");
        }
    }
    if let Some(th) = &r.theorems {
        writeln!(w, "theorems: h20 = {}, h11 = {}; smooth <=> h20 = 1, irreducible <=> h11 > 0: consistent", th.h20, th.h11)
            .expect("string write");
    }
    if let Some(b) = &r.bott_chern_blocks {
        writeln!(
            w,
            "Bott-Chern images: (2,0)+(0,2) dim {} rank {}, (1,1) dim {} rank {}, orthogonal: {}",
            b.dim_20_02, b.rank_20_02, b.dim_11, b.rank_11, yn(b.orthogonal)
        )
        .expect("string write");
    }
    t
}

fn bbf(loaded: &Loaded, engine: Arc<CohomologyEngine>, args: &BbfArgs) -> Run {
    let model = &loaded.model;
    let sigma = parse_class(model, &args.sigma)?;
    let basis = args.basis.as_ref().map(|p| read_basis(model, p)).transpose()?;
    let ctx = BBFContext::new(engine, &sigma, basis, args.allow_unnormalized)?;
    let report = quadric_report(&ctx)?;
    let mut json = bbf_json(&ctx, &report)?;
    json["model"] = Value::String(model.label().to_string());
    Ok(Output { json, text: bbf_text(&ctx, &report) })
}

fn lefschetz(loaded: &Loaded, tau: &str, power: u32, theory: TheoryArg, source: (usize, usize)) -> Run {
    let engine = CohomologyEngine::new(loaded.model.clone());
    let tau = parse_class(&loaded.model, tau)?;
    let map = lefschetz_matrix(&engine, theory.into(), &tau, power, source)?;
    let bi = |s: &CohomologySpace| match s.degree() {
        Degree::Bi(p, q) => json!({"p": p, "q": q, "dim": s.dim()}),
        Degree::Total(k) => json!({"k": k, "dim": s.dim()}),
    };
    let verdict = lefschetz_check(&map);
    let (kind, cokernel, kernel) = match &verdict {
        LefschetzVerdict::Isomorphism => ("isomorphism", 0, Vec::new()),
        LefschetzVerdict::InjectiveOnly { cokernel } => ("injective_only", *cokernel, Vec::new()),
        LefschetzVerdict::Kernel(k) => ("kernel", map.target.dim() - map.rank, k.iter().map(|c| c.representative()).collect()),
    };
    let json = json!({
        "model": loaded.model.label(),
        "theory": map.source.theory().key(),
        "tau": form(&tau),
        "power": power,
        "source": bi(&map.source),
        "target": bi(&map.target),
        "matrix": matrix(&map.matrix),
        "rank": map.rank,
        "verdict": kind,
        "cokernel_dim": cokernel,
        "kernel": forms(&kernel),
    });
    let mut text = format!(
        "L = ({tau})^{power} on {}: {} -> {}, dims {} -> {}, rank {}\n",
        map.source.theory().key(),
        map.source.degree(),
        map.target.degree(),
        map.source.dim(),
        map.target.dim(),
        map.rank
    );
    text_matrix(&mut text, &map.matrix);
    match verdict {
        LefschetzVerdict::Isomorphism => text.push_str("verdict: isomorphism\n"),
        LefschetzVerdict::InjectiveOnly { cokernel } => writeln!(text, "verdict: injective, cokernel of dimension {cokernel}").expect("string write"),
        LefschetzVerdict::Kernel(_) => {
            writeln!(text, "verdict: kernel of dimension {}", kernel.len()).expect("string write");
            for f in &kernel {
                writeln!(text, "  [{f}]").expect("string write");
            }
        }
    }
    Ok(Output { json, text })
}

fn report(loaded: &Loaded, bbf_args: Option<&BbfArgs>) -> Run {
    let engine = Arc::new(CohomologyEngine::new(loaded.model.clone()));
    let model_out = validate(loaded);
    let spaces = cohomology_spaces(&engine, None, None)?;
    let ddbar_out = ddbar(loaded, &engine)?;
    let even = loaded.model.dim().is_multiple_of(2);
    let symplectic_out = if even { Some(symplectic_scan(loaded, None)?) } else { None };
    if !even {
        reject_extra(loaded)?;
    }
    let bbf_out = bbf_args.map(|a| bbf(loaded, engine.clone(), a)).transpose()?;
    let json = json!({
        "model": model_out.json["model"],
        "cohomology": spaces.iter().map(|s| space_json(s)).collect::<Vec<_>>(),
        "ddbar": ddbar_out.json,
        "symplectic": symplectic_out.as_ref().map(|o| o.json.clone()),
        "bbf": bbf_out.as_ref().map(|o| o.json.clone()),
    });
    let mut text = model_out.text;
    for part in [cohomology_tables(&engine, &spaces, true), ddbar_out.text] {
        text.push('\n');
        text.push_str(&part);
    }
    text.push('\n');
    match &symplectic_out {
        Some(o) => text.push_str(&o.text),
        None => text.push_str("symplectic scan: odd complex dimension, no complex symplectic forms\n"),
    }
    if let Some(o) = bbf_out {
        text.push('\n');
        text.push_str(&o.text);
    }
    Ok(Output { json, text })
}
