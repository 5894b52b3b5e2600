//! Brute-force cohomology dimensions from dense operator matrices over the
//! full invariant complex. Shares no code with the library beyond reading
//! the structure equations: its own complex rationals, wedge signs,
//! differential and rank.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use holsym::model::ManifoldModel;

#[derive(Clone, Debug, PartialEq)]
pub struct C {
    re: BigRational,
    im: BigRational,
}

impl C {
    fn zero() -> Self {
        C { re: BigRational::zero(), im: BigRational::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add(&self, o: &C) -> C {
        C { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    fn sub(&self, o: &C) -> C {
        C { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn mul(&self, o: &C) -> C {
        C { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    fn neg(&self) -> C {
        C { re: -&self.re, im: -&self.im }
    }

    fn inv(&self) -> C {
        let n = &self.re * &self.re + &self.im * &self.im;
        C { re: &self.re / &n, im: -&self.im / &n }
    }
}

/// Sparse form: bitmask of generators (bit `i` is `φ_{i+1}`, bit `m+i` is
/// `ω̄_{i+1}`) to coefficient; generators are ordered by bit index.
type Sparse = HashMap<u32, C>;

fn add_into(f: &mut Sparse, mask: u32, c: C) {
    let e = f.entry(mask).or_insert_with(C::zero);
    *e = e.add(&c);
    if e.is_zero() {
        f.remove(&mask);
    }
}

/// Sign and product of two monomials.
fn wedge_masks(a: u32, b: u32) -> Option<(u32, bool)> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    for x in 0..32 {
        if a >> x & 1 == 1 {
            swaps += (b & ((1u32 << x) - 1)).count_ones();
        }
    }
    Some((a | b, swaps % 2 == 1))
}

pub struct Oracle {
    m: usize,
    /// `d` of each monomial of the full complex.
    d_full: Vec<Sparse>,
}

impl Oracle {
    pub fn new(model: &ManifoldModel) -> Self {
        let m = model.dim();
        let convert = |f: &holsym::exterior::Form<holsym::exact::GaussRat>| -> Sparse {
            let mut out = Sparse::new();
            for (mono, c) in f.terms() {
                let mut mask = 0u32;
                for i in mono.holo() {
                    mask |= 1 << (i - 1);
                }
                for i in mono.anti() {
                    mask |= 1 << (m + i - 1);
                }
                let r = |x: &holsym::exact::Rational| {
                    BigRational::new(x.numer().clone(), x.denom().clone())
                };
                out.insert(mask, C { re: r(&c.re), im: r(&c.im) });
            }
            out
        };
        let gens: Vec<Sparse> = model.d_phi().iter().chain(model.d_wbar()).map(convert).collect();
        let d_full = (0..1u32 << (2 * m))
            .map(|mask| {
                let mut out = Sparse::new();
                let bits: Vec<u32> = (0..2 * m as u32).filter(|b| mask >> b & 1 == 1).collect();
                for (j, &b) in bits.iter().enumerate() {
                    let prefix = mask & ((1u32 << b) - 1);
                    let suffix = mask & !((1u32 << (b + 1)) - 1);
                    for (&t, c) in &gens[b as usize] {
                        let Some((pt, s1)) = wedge_masks(prefix, t) else { continue };
                        let Some((full, s2)) = wedge_masks(pt, suffix) else { continue };
                        let negative = s1 ^ s2 ^ (j % 2 == 1);
                        add_into(&mut out, full, if negative { c.neg() } else { c.clone() });
                    }
                }
                out
            })
            .collect();
        Oracle { m, d_full }
    }

    fn bidegree(&self, mask: u32) -> (usize, usize) {
        let low = (1u32 << self.m) - 1;
        ((mask & low).count_ones() as usize, (mask >> self.m).count_ones() as usize)
    }

    fn block(&self, p: isize, q: isize) -> Vec<u32> {
        if p < 0 || q < 0 {
            return Vec::new();
        }
        (0..1u32 << (2 * self.m)).filter(|&x| self.bidegree(x) == (p as usize, q as usize)).collect()
    }

    fn degree_block(&self, k: isize) -> Vec<u32> {
        if k < 0 {
            return Vec::new();
        }
        (0..1u32 << (2 * self.m)).filter(|x| x.count_ones() as isize == k).collect()
    }

    /// Component of `d(mask)` shifted by `(dp,dq)`; `None` keeps all of `d`.
    fn apply(&self, f: &Sparse, shift: Option<(usize, usize)>) -> Sparse {
        let mut out = Sparse::new();
        for (&mask, c) in f {
            let (p, q) = self.bidegree(mask);
            for (&t, x) in &self.d_full[mask as usize] {
                if shift.is_none_or(|(dp, dq)| self.bidegree(t) == (p + dp, q + dq)) {
                    add_into(&mut out, t, c.mul(x));
                }
            }
        }
        out
    }

    /// Dense matrix of a composite operator from `source` into `target`.
    fn matrix(&self, ops: &[Option<(usize, usize)>], source: &[u32], target: &[u32]) -> Vec<Vec<C>> {
        let index: HashMap<u32, usize> = target.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let mut rows = vec![vec![C::zero(); source.len()]; target.len()];
        for (j, &s) in source.iter().enumerate() {
            let mut f = Sparse::from([(s, C { re: BigRational::one(), im: BigRational::zero() })]);
            for op in ops.iter().rev() {
                f = self.apply(&f, *op);
            }
            for (t, c) in f {
                rows[index[&t]][j] = c;
            }
        }
        rows
    }

    const DEL: Option<(usize, usize)> = Some((1, 0));
    const DELBAR: Option<(usize, usize)> = Some((0, 1));
    const D: Option<(usize, usize)> = None;

    fn op_rank(&self, ops: &[Option<(usize, usize)>], source: &[u32], target: &[u32]) -> usize {
        rank(self.matrix(ops, source, target))
    }

    pub fn dolbeault(&self, p: usize, q: usize) -> usize {
        let (p, q) = (p as isize, q as isize);
        let a = self.block(p, q);
        let closed = a.len() - self.op_rank(&[Self::DELBAR], &a, &self.block(p, q + 1));
        closed - self.op_rank(&[Self::DELBAR], &self.block(p, q - 1), &a)
    }

    pub fn bott_chern(&self, p: usize, q: usize) -> usize {
        let (p, q) = (p as isize, q as isize);
        let a = self.block(p, q);
        let mut stacked = self.matrix(&[Self::DEL], &a, &self.block(p + 1, q));
        stacked.extend(self.matrix(&[Self::DELBAR], &a, &self.block(p, q + 1)));
        let closed = a.len() - rank(stacked);
        closed - self.op_rank(&[Self::DEL, Self::DELBAR], &self.block(p - 1, q - 1), &a)
    }

    pub fn aeppli(&self, p: usize, q: usize) -> usize {
        let (p, q) = (p as isize, q as isize);
        let a = self.block(p, q);
        let closed = a.len() - self.op_rank(&[Self::DEL, Self::DELBAR], &a, &self.block(p + 1, q + 1));
        let left = self.matrix(&[Self::DEL], &self.block(p - 1, q), &a);
        let right = self.matrix(&[Self::DELBAR], &self.block(p, q - 1), &a);
        let joined: Vec<Vec<C>> = left.into_iter().zip(right).map(|(mut l, r)| {
            l.extend(r);
            l
        }).collect();
        closed - rank(joined)
    }

    pub fn de_rham(&self, k: usize) -> usize {
        let k = k as isize;
        let a = self.degree_block(k);
        let closed = a.len() - self.op_rank(&[Self::D], &a, &self.degree_block(k + 1));
        closed - self.op_rank(&[Self::D], &self.degree_block(k - 1), &a)
    }

    /// `d² = 0` on the full complex.
    pub fn d_squared_vanishes(&self) -> bool {
        (0..1u32 << (2 * self.m)).all(|mask| {
            let f = Sparse::from([(mask, C { re: BigRational::one(), im: BigRational::zero() })]);
            self.apply(&self.apply(&f, Self::D), Self::D).is_empty()
        })
    }

    /// The ∂∂̄-lemma through the equality case of
    /// `Σ_{p+q=k} (h_BC + h_A) ≥ 2 b_k` for every `k`.
    pub fn ddbar_by_inequality(&self) -> bool {
        (0..=2 * self.m).all(|k| {
            let sum: usize = (0..=k)
                .filter(|&p| p <= self.m && k - p <= self.m)
                .map(|p| self.bott_chern(p, k - p) + self.aeppli(p, k - p))
                .sum();
            let b = self.de_rham(k);
            assert!(sum >= 2 * b, "inequality violated at k = {k}");
            sum == 2 * b
        })
    }
}

fn rank(mut a: Vec<Vec<C>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv();
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].mul(&inv);
            let pivot = a[r].clone();
            for (x, y) in a[i][c..cols].iter_mut().zip(&pivot[c..cols]) {
                *x = x.sub(&f.mul(y));
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}
