use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::monomial::BasisMonomial;
use crate::error::{Error, Result};
use crate::exact::Scalar;

/// Sparse linear combination of basis monomials in complex dimension `dim`.
///
/// Zero coefficients are never stored. Forms may mix bidegrees.
#[derive(Clone, PartialEq)]
pub struct Form<T> {
    dim: usize,
    terms: BTreeMap<BasisMonomial, T>,
}

impl<T: Scalar> Form<T> {
    pub fn zero(dim: usize) -> Self {
        Form { dim, terms: BTreeMap::new() }
    }

    pub fn monomial(dim: usize, mono: BasisMonomial, coeff: T) -> Self {
        let mut f = Self::zero(dim);
        f.add_term(mono, coeff);
        f
    }

    /// The constant 0-form `c`.
    pub fn constant(dim: usize, c: T) -> Self {
        Self::monomial(dim, BasisMonomial::ONE, c)
    }

    /// `1` as a 0-form.
    pub fn one(dim: usize) -> Self {
        Self::constant(dim, T::one())
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (BasisMonomial, T)>) -> Self {
        let mut f = Self::zero(dim);
        for (m, c) in terms {
            f.add_term(m, c);
        }
        f
    }

    /// Linear combination `Σ cᵢ·fᵢ`.
    pub fn combination<'a>(dim: usize, parts: impl IntoIterator<Item = (T, &'a Form<T>)>) -> Self {
        let mut f = Self::zero(dim);
        for (c, g) in parts {
            if c.is_zero() {
                continue;
            }
            for (m, x) in &g.terms {
                f.add_term(*m, c.clone() * x.clone());
            }
        }
        f
    }

    pub fn add_term(&mut self, mono: BasisMonomial, coeff: T) {
        debug_assert!(mono.max_index() <= self.dim, "monomial {mono} outside dimension {}", self.dim);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&BasisMonomial, &T)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &BasisMonomial) -> T {
        self.terms.get(mono).cloned().unwrap_or_else(T::zero)
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Self::from_terms(self.dim, self.terms.iter().map(|(m, x)| (*m, c.clone() * x.clone())))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Form<U> {
        Form::from_terms(self.dim, self.terms.iter().map(|(m, x)| (*m, f(x))))
    }

    pub fn try_map<U: Scalar>(&self, f: impl Fn(&T) -> Result<U>) -> Result<Form<U>> {
        let mut out = Form::zero(self.dim);
        for (m, x) in &self.terms {
            out.add_term(*m, f(x)?);
        }
        Ok(out)
    }

    fn check_dim(&self, other: &Form<T>) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    /// Exterior product with canonical-order sign bookkeeping.
    pub fn wedge(&self, other: &Form<T>) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.dim);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some((m, odd)) = a.wedge(b) {
                    let c = x.clone() * y.clone();
                    out.add_term(m, if odd { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// `self^k`, with `self^0 = 1`.
    pub fn power(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.dim, T::one());
        for _ in 0..k {
            acc = acc.wedge(self).expect("same dimension");
        }
        acc
    }

    /// Formal conjugate: swaps `φ` and `ω̄` index sets with sign `(−1)^{|S||T|}`
    /// and conjugates every coefficient.
    pub fn conjugate(&self) -> Self {
        Self::from_terms(
            self.dim,
            self.terms.iter().map(|(m, x)| {
                let (c, odd) = m.conjugate();
                let v = x.conj();
                (c, if odd { -v } else { v })
            }),
        )
    }

    pub fn bidegree_component(&self, p: usize, q: usize) -> Self {
        Self::from_terms(
            self.dim,
            self.terms.iter().filter(|(m, _)| m.bidegree() == (p, q)).map(|(m, x)| (*m, x.clone())),
        )
    }

    pub fn degree_component(&self, k: usize) -> Self {
        Self::from_terms(
            self.dim,
            self.terms.iter().filter(|(m, _)| m.degree() == k).map(|(m, x)| (*m, x.clone())),
        )
    }

    /// Nonzero bidegree components keyed by `(p, q)`.
    pub fn components(&self) -> BTreeMap<(usize, usize), Self> {
        let mut out: BTreeMap<(usize, usize), Self> = BTreeMap::new();
        for (m, x) in &self.terms {
            out.entry(m.bidegree()).or_insert_with(|| Self::zero(self.dim)).add_term(*m, x.clone());
        }
        out
    }

    /// The bidegree shared by all terms, if any (`None` for zero or mixed forms).
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys().map(BasisMonomial::bidegree);
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    /// The total degree shared by all terms, if any.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(BasisMonomial::degree);
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    /// Whether every term has bidegree `(p, q)`; true for the zero form.
    pub fn is_of_bidegree(&self, p: usize, q: usize) -> bool {
        self.terms.keys().all(|m| m.bidegree() == (p, q))
    }

    pub fn is_of_degree(&self, k: usize) -> bool {
        self.terms.keys().all(|m| m.degree() == k)
    }

    /// Coefficient of `φ_{1..m} ∧ ω̄_{1..m}`; the form must have no other terms.
    pub fn top_coefficient(&self) -> Result<T> {
        let top = BasisMonomial::top(self.dim);
        if self.terms.keys().any(|m| *m != top) {
            return Err(Error::NotTopDegree { dim: self.dim });
        }
        Ok(self.coefficient(&top))
    }

    /// Coordinates against an ordered monomial list; terms outside it are dropped.
    pub fn coordinates(&self, basis: &[BasisMonomial]) -> Vec<T> {
        basis.iter().map(|m| self.coefficient(m)).collect()
    }

    pub fn from_coordinates(dim: usize, basis: &[BasisMonomial], coords: &[T]) -> Self {
        Self::from_terms(dim, basis.iter().copied().zip(coords.iter().cloned()))
    }
}

/// Free-function form of [`Form::top_coefficient`] that also checks the dimension.
pub fn top_coefficient<T: Scalar>(f: &Form<T>, m: usize) -> Result<T> {
    if f.dim() != m {
        return Err(Error::DimensionMismatch { left: f.dim(), right: m });
    }
    f.top_coefficient()
}

impl<T: Scalar> Add for Form<T> {
    type Output = Form<T>;
    fn add(mut self, rhs: Form<T>) -> Form<T> {
        assert_eq!(self.dim, rhs.dim, "adding forms of different dimensions");
        for (m, x) in rhs.terms {
            self.add_term(m, x);
        }
        self
    }
}

impl<'a, T: Scalar> Add<&'a Form<T>> for &'a Form<T> {
    type Output = Form<T>;
    fn add(self, rhs: &'a Form<T>) -> Form<T> {
        self.clone() + rhs.clone()
    }
}

impl<T: Scalar> Neg for Form<T> {
    type Output = Form<T>;
    fn neg(self) -> Form<T> {
        Form { dim: self.dim, terms: self.terms.into_iter().map(|(m, x)| (m, -x)).collect() }
    }
}

impl<T: Scalar> Sub for Form<T> {
    type Output = Form<T>;
    fn sub(self, rhs: Form<T>) -> Form<T> {
        self + (-rhs)
    }
}

impl<'a, T: Scalar> Sub<&'a Form<T>> for &'a Form<T> {
    type Output = Form<T>;
    fn sub(self, rhs: &'a Form<T>) -> Form<T> {
        self.clone() - rhs.clone()
    }
}

impl<T: Scalar> fmt::Display for Form<T> {
    /// Form syntax, e.g. `1/2*f14 + 1*f23` or `-1*f4w1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, x)) in self.terms.iter().enumerate() {
            let text = x.coefficient_text();
            let (negative, body) = match text.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, text.as_str()),
            };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if *m == BasisMonomial::ONE {
                f.write_str(body)?;
            } else {
                write!(f, "{body}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Debug for Form<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
