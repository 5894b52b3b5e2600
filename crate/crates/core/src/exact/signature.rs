use std::fmt;

use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Inertia `(p₊, p₋, p₀)` of a real symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

impl Signature {
    pub fn new(plus: usize, minus: usize, zero: usize) -> Self {
        Signature { plus, minus, zero }
    }

    pub fn size(&self) -> usize {
        self.plus + self.minus + self.zero
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.plus, self.minus, self.zero)
    }
}

/// Coefficients `c₀, …, cₙ` of `det(x·I − A)` (so `cₙ = 1`), by Faddeev–LeVerrier.
pub fn characteristic_polynomial(a: &Matrix<Rational>) -> Vec<Rational> {
    let n = a.rows();
    assert!(a.is_square(), "characteristic polynomial of a non-square matrix");
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m = Matrix::<Rational>::zeros(n, n);
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        let mut next = a.mul(&m).expect("square");
        for i in 0..n {
            next[(i, i)] = next[(i, i)].clone() + coeffs[n - k + 1].clone();
        }
        let am = a.mul(&next).expect("square");
        let trace = (0..n).fold(Rational::zero(), |acc, i| acc + am[(i, i)].clone());
        coeffs[n - k] = -(trace / Rational::from(k as i64));
        m = next;
    }
    coeffs
}

fn sign_variations<'a>(coeffs: impl Iterator<Item = &'a Rational>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for c in coeffs {
        let s = c.signum();
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Exact inertia of a real symmetric matrix.
///
/// The spectrum is real, so Descartes' rule of signs on the characteristic
/// polynomial (and on its reflection `x ↦ −x`) counts roots exactly.
pub fn symmetric_signature(a: &Matrix<Rational>) -> Result<Signature> {
    if !a.is_symmetric() {
        return Err(Error::NonSymmetric);
    }
    let coeffs = characteristic_polynomial(a);
    let zero = coeffs.iter().take_while(|c| c.is_zero()).count();
    let reduced = &coeffs[zero..];
    let plus = sign_variations(reduced.iter());
    let reflected: Vec<Rational> = reduced
        .iter()
        .enumerate()
        .map(|(j, c)| if j % 2 == 1 { -c } else { c.clone() })
        .collect();
    let minus = sign_variations(reflected.iter());
    debug_assert_eq!(plus + minus + zero, a.rows());
    Ok(Signature { plus, minus, zero })
}
