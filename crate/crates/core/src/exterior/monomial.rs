use std::cmp::{Ordering, Reverse};
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported complex dimension; form syntax uses one digit per index.
pub const MAX_DIM: usize = 9;

/// `φ_S ∧ ω̄_T` with `S` (holomorphic) and `T` (antiholomorphic) subsets of `{1..m}`.
///
/// Written order is all `φ` factors ascending, then all `ω̄` factors ascending.
/// Bit `i − 1` of each mask stands for index `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisMonomial {
    holo: u16,
    anti: u16,
}

fn mask_indices(mask: u16) -> impl Iterator<Item = usize> {
    (0..16).filter(move |b| mask & (1 << b) != 0).map(|b| b + 1)
}

/// Lexicographic order of the ascending index lists of two equal-size sets:
/// decided by the smallest element of the symmetric difference.
fn lex_cmp(a: u16, b: u16) -> Ordering {
    let diff = a ^ b;
    if diff == 0 {
        return Ordering::Equal;
    }
    let lowest = diff & diff.wrapping_neg();
    if a & lowest != 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Number of pairs `(x, y)` with `x ∈ a`, `y ∈ b`, `x > y`.
fn inversions(a: u16, b: u16) -> u32 {
    mask_indices(b).map(|y| (a >> y).count_ones()).sum()
}

fn to_mask(indices: &[usize], dim: usize) -> Result<(u16, u32)> {
    let mut mask = 0u16;
    let mut swaps = 0u32;
    for &i in indices {
        if i == 0 || i > dim {
            return Err(Error::IndexOutOfRange { index: i, dim });
        }
        let bit = 1u16 << (i - 1);
        if mask & bit != 0 {
            // Repeated factor: the product vanishes; report as no monomial.
            return Ok((u16::MAX, 0));
        }
        swaps += (mask >> i).count_ones();
        mask |= bit;
    }
    Ok((mask, swaps))
}

impl BasisMonomial {
    /// The empty product (the constant function 1).
    pub const ONE: BasisMonomial = BasisMonomial { holo: 0, anti: 0 };

    /// Builds the monomial of strictly increasing index sets.
    pub fn new(holo: &[usize], anti: &[usize]) -> Result<Self> {
        let dim = MAX_DIM;
        match Self::from_sequence(dim, holo, anti)? {
            Some((m, false)) => Ok(m),
            _ => Err(Error::syntax(1, 1, "monomial indices must be strictly increasing")),
        }
    }

    /// Sorts arbitrary factor sequences `φ_{i₁}∧…∧ω̄_{j₁}∧…` into canonical
    /// order. Returns the monomial and whether the permutation was odd, or
    /// `None` when a factor repeats.
    pub fn from_sequence(dim: usize, holo: &[usize], anti: &[usize]) -> Result<Option<(Self, bool)>> {
        let (h, sh) = to_mask(holo, dim)?;
        let (a, sa) = to_mask(anti, dim)?;
        if h == u16::MAX || a == u16::MAX {
            return Ok(None);
        }
        Ok(Some((BasisMonomial { holo: h, anti: a }, (sh + sa) % 2 == 1)))
    }

    /// `φ_1 ∧ … ∧ φ_m ∧ ω̄_1 ∧ … ∧ ω̄_m`.
    pub fn top(dim: usize) -> Self {
        let full = ((1u32 << dim) - 1) as u16;
        BasisMonomial { holo: full, anti: full }
    }

    pub fn holo(&self) -> Vec<usize> {
        mask_indices(self.holo).collect()
    }

    pub fn anti(&self) -> Vec<usize> {
        mask_indices(self.anti).collect()
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.holo.count_ones() as usize, self.anti.count_ones() as usize)
    }

    pub fn degree(&self) -> usize {
        (self.holo.count_ones() + self.anti.count_ones()) as usize
    }

    /// Largest index used, 0 for the constant monomial.
    pub fn max_index(&self) -> usize {
        16 - (self.holo | self.anti).leading_zeros() as usize
    }

    /// Product in canonical order: `Some((monomial, odd))` or `None` if it vanishes.
    pub fn wedge(&self, other: &BasisMonomial) -> Option<(BasisMonomial, bool)> {
        if self.holo & other.holo != 0 || self.anti & other.anti != 0 {
            return None;
        }
        // Sequence is holo(a) anti(a) holo(b) anti(b); move holo(b) past anti(a).
        let swaps = inversions(self.holo, other.holo)
            + self.anti.count_ones() * other.holo.count_ones()
            + inversions(self.anti, other.anti);
        Some((
            BasisMonomial { holo: self.holo | other.holo, anti: self.anti | other.anti },
            swaps % 2 == 1,
        ))
    }

    /// Formal conjugate `φ_T ∧ ω̄_S` and whether the sign `(−1)^{|S||T|}` is negative.
    pub fn conjugate(&self) -> (BasisMonomial, bool) {
        let odd = (self.holo.count_ones() * self.anti.count_ones()) % 2 == 1;
        (BasisMonomial { holo: self.anti, anti: self.holo }, odd)
    }
}

impl Ord for BasisMonomial {
    /// Total degree, then larger holomorphic degree first, then lexicographic
    /// on the `φ` indices and on the `ω̄` indices.
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |m: &Self| (m.degree(), Reverse(m.holo.count_ones()), m.anti.count_ones());
        key(self)
            .cmp(&key(other))
            .then_with(|| lex_cmp(self.holo, other.holo))
            .then_with(|| lex_cmp(self.anti, other.anti))
    }
}

impl PartialOrd for BasisMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BasisMonomial {
    /// `f13w24` for `φ₁∧φ₃∧ω̄₂∧ω̄₄`; `1` for the constant monomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holo == 0 && self.anti == 0 {
            return f.write_str("1");
        }
        if self.holo != 0 {
            f.write_str("f")?;
            for i in mask_indices(self.holo) {
                write!(f, "{i}")?;
            }
        }
        if self.anti != 0 {
            f.write_str("w")?;
            for i in mask_indices(self.anti) {
                write!(f, "{i}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BasisMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn subsets(m: usize, k: usize) -> Vec<u16> {
    fn rec(start: usize, m: usize, k: usize, acc: u16, out: &mut Vec<u16>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..m {
            if m - i < k {
                break;
            }
            rec(i + 1, m, k - 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, 0, &mut out);
    out
}

/// All `(p,q)` monomials in dimension `m`, lexicographic in `(φ indices, ω̄ indices)`.
pub fn enumerate_basis(m: usize, p: usize, q: usize) -> Result<Vec<BasisMonomial>> {
    if m > MAX_DIM {
        return Err(Error::IndexOutOfRange { index: m, dim: MAX_DIM });
    }
    if p > m || q > m {
        return Err(Error::OutOfRange { p, q, dim: m });
    }
    let holo = subsets(m, p);
    let anti = subsets(m, q);
    Ok(holo
        .iter()
        .flat_map(|&h| anti.iter().map(move |&a| BasisMonomial { holo: h, anti: a }))
        .collect())
}

/// All monomials of total degree `k`, ordered `(k,0), (k−1,1), …, (0,k)`.
pub fn enumerate_total_degree(m: usize, k: usize) -> Vec<BasisMonomial> {
    (0..=k.min(m))
        .rev()
        .filter(|&p| k - p <= m)
        .flat_map(|p| enumerate_basis(m, p, k - p).expect("in range"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn enumerate_examples() {
        let b = enumerate_basis(2, 2, 0).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].to_string(), "f12");

        let b = enumerate_basis(4, 1, 1).unwrap();
        assert_eq!(b.len(), 16);
        assert_eq!(b[0].to_string(), "f1w1");
        assert_eq!(b[1].to_string(), "f1w2");
        assert_eq!(b[15].to_string(), "f4w4");

        let b: Vec<String> = enumerate_basis(4, 2, 0).unwrap().iter().map(|m| m.to_string()).collect();
        assert_eq!(b, ["f12", "f13", "f14", "f23", "f24", "f34"]);

        assert!(matches!(enumerate_basis(2, 3, 0), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn enumeration_matches_sorted_order_and_counts() {
        for m in 0..=4 {
            for p in 0..=m {
                for q in 0..=m {
                    let b = enumerate_basis(m, p, q).unwrap();
                    assert_eq!(b.len(), binom(m, p) * binom(m, q));
                    assert!(b.windows(2).all(|w| w[0] < w[1]), "order m={m} p={p} q={q}");
                }
            }
            let total: usize = (0..=2 * m).map(|k| enumerate_total_degree(m, k).len()).sum();
            assert_eq!(total, 1 << (2 * m));
        }
    }

    #[test]
    fn wedge_signs() {
        let f1 = BasisMonomial::new(&[1], &[]).unwrap();
        let f2 = BasisMonomial::new(&[2], &[]).unwrap();
        let w1 = BasisMonomial::new(&[], &[1]).unwrap();
        assert_eq!(f2.wedge(&f1), Some((BasisMonomial::new(&[1, 2], &[]).unwrap(), true)));
        assert_eq!(f1.wedge(&f2), Some((BasisMonomial::new(&[1, 2], &[]).unwrap(), false)));
        assert_eq!(f1.wedge(&f1), None);
        // ω̄₁ ∧ φ₂ = −φ₂ ∧ ω̄₁
        assert_eq!(w1.wedge(&f2), Some((BasisMonomial::new(&[2], &[1]).unwrap(), true)));
        // φ₁₄ ∧ φ₂₃: permutation (1,4,2,3) is even
        let f14 = BasisMonomial::new(&[1, 4], &[]).unwrap();
        let f23 = BasisMonomial::new(&[2, 3], &[]).unwrap();
        assert!(!f14.wedge(&f23).unwrap().1);
    }

    #[test]
    fn sequence_sorting() {
        let (m, odd) = BasisMonomial::from_sequence(4, &[3, 1], &[]).unwrap().unwrap();
        assert_eq!(m.to_string(), "f13");
        assert!(odd);
        assert!(BasisMonomial::from_sequence(4, &[1, 1], &[]).unwrap().is_none());
        assert!(BasisMonomial::from_sequence(4, &[5], &[]).is_err());
    }

    #[test]
    fn conjugate_monomial_sign() {
        let m = BasisMonomial::new(&[1], &[4]).unwrap();
        let (c, odd) = m.conjugate();
        assert_eq!(c.to_string(), "f4w1");
        assert!(odd);
        let (c, odd) = BasisMonomial::new(&[1, 4], &[]).unwrap().conjugate();
        assert_eq!(c.to_string(), "w14");
        assert!(!odd);
    }
}
