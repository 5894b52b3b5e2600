//! Text syntax for forms.
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor ('*' factor)*
//! factor  := atom ['^' digits]
//! atom    := rational ['i'] | 'i' | name ['~'] | monomial | '(' expr ')'
//! monomial:= 'f' digits ['w' digits] | 'w' digits
//! ```
//!
//! Products are wedge products, so `f3*f1` and `f31` both equal `−f13`.
//! Scalars are 0-forms; whitespace is insignificant.

use num_bigint::BigInt;
use num_traits::One;

use super::form::Form;
use super::monomial::BasisMonomial;
use crate::error::{Error, Result};
use crate::exact::{Binding, GaussRat, ParamPoly, Rational};

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    /// Column of `chars[0]` in the original line.
    offset: usize,
    dim: usize,
}

impl Parser {
    fn error(&self, at: usize, message: impl Into<String>) -> Error {
        Error::syntax(self.line, self.offset + at + 1, message)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(self.error(self.pos, format!("expected `{c}`, found `{x}`"))),
            None => Err(self.error(self.pos, format!("expected `{c}`, found end of input"))),
        }
    }

    fn expr(&mut self) -> Result<Form<ParamPoly>> {
        let mut acc = Form::zero(self.dim);
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    false
                }
                Some('-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if negative { acc - t } else { acc + t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Form<ParamPoly>> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.wedge(&f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Form<ParamPoly>> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            let exp: u32 = digits.parse().map_err(|_| self.error(start, "expected an exponent"))?;
            return Ok(base.power(exp));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn word(&mut self) -> String {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn scalar(&self, c: GaussRat) -> Form<ParamPoly> {
        Form::constant(self.dim, ParamPoly::constant(c))
    }

    fn atom(&mut self) -> Result<Form<ParamPoly>> {
        match self.peek() {
            None => Err(self.error(self.pos, "unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let value = self.rational()?;
                self.skip_ws();
                let next = self.chars.get(self.pos).copied();
                let after = self.chars.get(self.pos + 1).copied();
                if next == Some('i') && !after.is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                    return Ok(self.scalar(GaussRat::new(Rational::from(0), value)));
                }
                Ok(self.scalar(GaussRat::real(value)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let w = self.word();
                if w == "i" {
                    return Ok(self.scalar(GaussRat::i()));
                }
                if let Some(m) = self.monomial(&w)? {
                    return Ok(m);
                }
                let conj = if self.chars.get(self.pos) == Some(&'~') {
                    self.pos += 1;
                    true
                } else {
                    false
                };
                let p = if conj { ParamPoly::conj_var(&w) } else { ParamPoly::var(&w) };
                Ok(Form::constant(self.dim, p))
            }
            Some(c) => Err(self.error(self.pos, format!("unexpected character `{c}`"))),
        }
    }

    fn rational(&mut self) -> Result<Rational> {
        let start = self.pos;
        let num = self.digits();
        let mut den = String::from("1");
        if self.peek() == Some('/') {
            self.pos += 1;
            self.skip_ws();
            den = self.digits();
            if den.is_empty() {
                return Err(self.error(self.pos, "expected a denominator"));
            }
        }
        let n: BigInt = num.parse().map_err(|_| self.error(start, "malformed number"))?;
        let d: BigInt = den.parse().map_err(|_| self.error(start, "malformed number"))?;
        if d == BigInt::from(0) {
            return Err(self.error(start, "zero denominator"));
        }
        Ok(Rational::new(n, d))
    }

    /// Recognizes `f<digits>[w<digits>]` and `w<digits>` tokens.
    fn monomial(&self, w: &str) -> Result<Option<Form<ParamPoly>>> {
        let split_digits = |s: &str| -> Option<(Vec<usize>, usize)> {
            let n = s.chars().take_while(char::is_ascii_digit).count();
            (n > 0).then(|| (s[..n].chars().map(|c| c as usize - '0' as usize).collect(), n))
        };
        let (holo, rest) = match w.strip_prefix('f') {
            Some(r) => match split_digits(r) {
                Some((h, n)) => (h, &r[n..]),
                None => return Ok(None),
            },
            None => (Vec::new(), w),
        };
        let anti = match rest.strip_prefix('w') {
            Some(r) => match split_digits(r) {
                Some((a, n)) if n == r.len() => a,
                _ => return Ok(None),
            },
            None if rest.is_empty() && !holo.is_empty() => Vec::new(),
            None => return Ok(None),
        };
        for &i in holo.iter().chain(&anti) {
            if i == 0 || i > self.dim {
                return Err(Error::IndexOutOfRange { index: i, dim: self.dim });
            }
        }
        Ok(Some(match BasisMonomial::from_sequence(self.dim, &holo, &anti)? {
            None => Form::zero(self.dim),
            Some((m, odd)) => {
                let c = if odd { -ParamPoly::one() } else { ParamPoly::one() };
                Form::monomial(self.dim, m, c)
            }
        }))
    }
}

/// Parses a form with symbolic parameters. `line` and `column` locate the
/// text inside a larger input for error reporting (both 1-based).
pub fn parse_form_at(text: &str, dim: usize, line: usize, column: usize) -> Result<Form<ParamPoly>> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, line, offset: column - 1, dim };
    if p.peek().is_none() {
        return Err(p.error(p.pos, "empty expression"));
    }
    let f = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(p.error(p.pos, format!("unexpected `{c}`")));
    }
    Ok(f)
}

pub fn parse_form(text: &str, dim: usize) -> Result<Form<ParamPoly>> {
    parse_form_at(text, dim, 1, 1)
}

/// Parses a form and evaluates every parameter under `binding`.
pub fn parse_form_bound(text: &str, dim: usize, binding: &Binding) -> Result<Form<GaussRat>> {
    parse_form(text, dim)?.try_map(|c| c.eval(binding))
}

/// Parses a parameter-free form.
pub fn parse_form_exact(text: &str, dim: usize) -> Result<Form<GaussRat>> {
    parse_form_bound(text, dim, &Binding::new())
}
