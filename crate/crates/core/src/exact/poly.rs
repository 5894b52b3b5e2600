//! Multivariate polynomials in named parameters and their formal conjugates.
//!
//! Every parameter `t` comes with an independent partner variable `t~` standing
//! for `t̄`; conjugation swaps the two and conjugates coefficients. This keeps
//! quantities such as `|t|² = t·t~` polynomial.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gauss::GaussRat;
use super::scalar::{forward_ref_binop, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub name: String,
    pub conj: bool,
}

impl Var {
    pub fn new(name: impl Into<String>) -> Self {
        Var { name: name.into(), conj: false }
    }

    pub fn conjugate(&self) -> Self {
        Var { name: self.name.clone(), conj: !self.conj }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conj {
            write!(f, "{}~", self.name)
        } else {
            f.write_str(&self.name)
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Power product of variables, sorted by variable with positive exponents.
///
/// Ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.0.iter().find(|(w, _)| w == v).map_or(0, |(_, e)| *e)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut merged: BTreeMap<Var, u32> = self.0.iter().cloned().collect();
        for (v, e) in &other.0 {
            *merged.entry(v.clone()).or_insert(0) += e;
        }
        Monomial(merged.into_iter().collect())
    }

    fn conjugate(&self) -> Monomial {
        let swapped: BTreeMap<Var, u32> =
            self.0.iter().map(|(v, e)| (v.conjugate(), *e)).collect();
        Monomial(swapped.into_iter().collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                match (self.0.get(i), other.0.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => {
                            if ea != eb {
                                return ea.cmp(eb);
                            }
                            i += 1;
                            j += 1;
                        }
                    },
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Values for parameters. Keys are parameter names (`t`) or formal
/// conjugates (`t~`); a missing conjugate is derived from its partner.
pub type Binding = BTreeMap<String, GaussRat>;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl ParamPoly {
    pub fn constant(c: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        ParamPoly { terms }
    }

    pub fn var(name: &str) -> Self {
        Self::from_var(Var::new(name))
    }

    /// The formal conjugate `name~`.
    pub fn conj_var(name: &str) -> Self {
        Self::from_var(Var { name: name.to_string(), conj: true })
    }

    pub fn from_var(v: Var) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), GaussRat::one());
        ParamPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, GaussRat)>) -> Self {
        let mut p = ParamPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get().clone() + c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussRat {
        self.terms.get(m).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self, degree: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == degree)
    }

    /// The constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// Parameter names occurring (directly or through their conjugate), sorted.
    pub fn variables(&self) -> Vec<String> {
        let mut names: Vec<String> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(v, _)| v.name.clone()))
            .collect();
        names.sort();
        names.dedup();
        names
    }

    pub fn eval(&self, binding: &Binding) -> Result<GaussRat> {
        let mut cache: BTreeMap<Var, GaussRat> = BTreeMap::new();
        let mut acc = GaussRat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in &m.0 {
                let value = match cache.get(v) {
                    Some(x) => x.clone(),
                    None => {
                        let x = lookup(binding, v)?;
                        cache.insert(v.clone(), x.clone());
                        x
                    }
                };
                term = term * value.pow(*e);
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Replaces every variable by a polynomial.
    pub fn substitute(&self, image: &impl Fn(&Var) -> ParamPoly) -> ParamPoly {
        let mut acc = ParamPoly::zero();
        for (m, c) in &self.terms {
            let mut term = ParamPoly::constant(c.clone());
            for (v, e) in &m.0 {
                term = term * image(v).pow(*e);
            }
            acc = acc + term;
        }
        acc
    }

    pub fn scale(&self, c: &GaussRat) -> ParamPoly {
        ParamPoly::from_terms(self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())))
    }
}

fn lookup(binding: &Binding, v: &Var) -> Result<GaussRat> {
    let direct = binding.get(&v.to_string());
    let partner = binding.get(&v.conjugate().to_string()).map(GaussRat::conjugate);
    match (direct, partner) {
        (Some(d), Some(p)) if *d != p => Err(Error::InconsistentConjugateBinding(v.name.clone())),
        (Some(d), _) => Ok(d.clone()),
        (None, Some(p)) => Ok(p),
        (None, None) => Err(Error::UnboundParameter(v.to_string())),
    }
}

impl Zero for ParamPoly {
    fn zero() -> Self {
        ParamPoly { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for ParamPoly {
    fn one() -> Self {
        ParamPoly::constant(GaussRat::one())
    }
}

impl Add for ParamPoly {
    type Output = ParamPoly;
    fn add(mut self, rhs: ParamPoly) -> ParamPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: ParamPoly) -> ParamPoly {
        self + (-rhs)
    }
}

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Mul for ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

forward_ref_binop!(ParamPoly, Add, add);
forward_ref_binop!(ParamPoly, Sub, sub);
forward_ref_binop!(ParamPoly, Mul, mul);

impl Scalar for ParamPoly {
    fn conj(&self) -> Self {
        ParamPoly::from_terms(self.terms.iter().map(|(m, c)| (m.conjugate(), c.conjugate())))
    }

    fn coefficient_text(&self) -> String {
        match self.as_constant() {
            Some(c) => c.coefficient_text(),
            None if self.terms.len() == 1 => self.to_string(),
            None => format!("({self})"),
        }
    }
}

impl fmt::Display for ParamPoly {
    /// Terms in descending graded-lexicographic order, e.g. `2*a2*a5 - 2*a3*a4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let (negative, mag) = if c.is_real() && c.re.is_negative() {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_unit = mag.is_one();
            if m.0.is_empty() {
                f.write_str(&mag.coefficient_text())?;
            } else if is_unit {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", mag.coefficient_text())?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
