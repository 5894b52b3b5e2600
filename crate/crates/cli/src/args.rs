use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use holsym::cohomology::Theory;
use holsym::exact::GaussRat;
use holsym::model::parse_scalar;

#[derive(Debug, Parser)]
#[command(
    name = "holsym",
    version,
    about = "Exact cohomology, complex symplectic forms and BBF quadrics of invariant complex structures"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a model, then print its structure equations.
    Validate(Common),
    /// Dimensions and bases of cohomology spaces.
    Cohomology {
        #[command(flatten)]
        common: Common,
        /// Restrict to one theory.
        #[arg(long, value_enum)]
        theory: Option<TheoryArg>,
        /// Restrict to one bidegree.
        #[arg(long, value_name = "P,Q", value_parser = parse_bidegree)]
        bidegree: Option<(usize, usize)>,
    },
    /// Verdict on the ddbar-lemma with the Bott-Chern to Dolbeault table.
    Ddbar(Common),
    /// Closed (2,0)-forms and the polynomial cutting out the symplectic cone.
    ///
    /// `--param` bindings for the locus coordinates a1, a2, ... evaluate
    /// the polynomial.
    SymplecticScan {
        #[command(flatten)]
        common: Common,
        /// A (2,0)-form to test.
        #[arg(long, allow_hyphen_values = true)]
        sigma: Option<String>,
    },
    /// The BBF quadratic form of a normalized complex symplectic form.
    Bbf {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        bbf: BbfArgs,
    },
    /// The map induced on cohomology by wedging with a power of a form.
    Lefschetz {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long, default_value_t = 1)]
        power: u32,
        #[arg(long, value_enum, default_value_t = TheoryArg::Dolbeault)]
        theory: TheoryArg,
        #[arg(long, value_name = "P,Q", value_parser = parse_bidegree)]
        source: (usize, usize),
    },
    /// Full pipeline: model, cohomology, ddbar, symplectic scan and, with
    /// `--sigma`, the BBF report.
    Report {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        bbf: OptionalBbfArgs,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// Model file path, or a builtin such as `builtin:nakamura4:t=1/2`.
    #[arg(long)]
    pub model: String,
    /// Rebind a declared model parameter (or, for `symplectic-scan`, a
    /// locus coordinate).
    #[arg(long = "param", value_name = "NAME=VALUE", value_parser = parse_binding)]
    pub params: Vec<(String, GaussRat)>,
    /// Volume normalization: the integral of the top monomial.
    #[arg(long, value_parser = parse_value, allow_hyphen_values = true)]
    pub mu: Option<GaussRat>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BbfArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: String,
    /// File with one class expression per line, in the desired order.
    #[arg(long)]
    pub basis: Option<PathBuf>,
    #[arg(long)]
    pub allow_unnormalized: bool,
}

#[derive(Debug, Args)]
pub struct OptionalBbfArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<String>,
    #[arg(long, requires = "sigma")]
    pub basis: Option<PathBuf>,
    #[arg(long, requires = "sigma")]
    pub allow_unnormalized: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoryArg {
    Dolbeault,
    #[value(alias = "bott-chern")]
    Bc,
    Aeppli,
    #[value(alias = "derham")]
    DeRham,
}

impl From<TheoryArg> for Theory {
    fn from(t: TheoryArg) -> Theory {
        match t {
            TheoryArg::Dolbeault => Theory::Dolbeault,
            TheoryArg::Bc => Theory::BottChern,
            TheoryArg::Aeppli => Theory::Aeppli,
            TheoryArg::DeRham => Theory::DeRham,
        }
    }
}

fn parse_bidegree(s: &str) -> Result<(usize, usize), String> {
    let (p, q) = s.split_once(',').ok_or_else(|| format!("expected P,Q, found `{s}`"))?;
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("`{}` is not a nonnegative integer", t.trim()));
    Ok((num(p)?, num(q)?))
}

fn parse_value(s: &str) -> Result<GaussRat, String> {
    parse_scalar(s).map_err(|e| e.to_string())
}

fn parse_binding(s: &str) -> Result<(String, GaussRat), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected NAME=VALUE, found `{s}`"))?;
    let k = k.trim();
    if k.is_empty() {
        return Err(format!("empty name in `{s}`"));
    }
    Ok((k.to_string(), parse_value(v)?))
}
