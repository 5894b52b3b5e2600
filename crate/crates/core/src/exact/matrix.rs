use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::Zero;

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over a [`Scalar`].
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a `rows × columns.len()` matrix; `rows` is needed when there are no columns.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn conj(&self) -> Self {
        self.map(T::conj)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn mul(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { left: self.cols, right: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn vstack(&self, other: &Matrix<T>) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column count");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> =
                self.data[i * self.cols..(i + 1) * self.cols].iter().map(|x| format!("{x:?}")).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row-echelon form with the invertible transform that produced it.
#[derive(Clone, Debug)]
pub struct Rref<T> {
    pub reduced: Matrix<T>,
    pub pivot_columns: Vec<usize>,
    /// `row_transform · M = reduced`.
    pub row_transform: Matrix<T>,
}

impl<T> Rref<T> {
    pub fn rank(&self) -> usize {
        self.pivot_columns.len()
    }
}

fn eliminate<T: Field>(m: &Matrix<T>, track: bool) -> Rref<T> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<T>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut t: Vec<Vec<T>> = if track {
        (0..rows).map(|i| (0..rows).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect()
    } else {
        Vec::new()
    };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        if track {
            t.swap(r, p);
        }
        if a[r][c] != T::one() {
            let inv = a[r][c].inv();
            scale_row(&mut a[r], &inv);
            if track {
                scale_row(&mut t[r], &inv);
            }
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let factor = a[i][c].clone();
            let (src, dst) = pick_rows(&mut a, r, i);
            sub_scaled(dst, src, &factor);
            if track {
                let (src, dst) = pick_rows(&mut t, r, i);
                sub_scaled(dst, src, &factor);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let reduced = Matrix { rows, cols, data: a.into_iter().flatten().collect() };
    let row_transform = if track {
        Matrix { rows, cols: rows, data: t.into_iter().flatten().collect() }
    } else {
        Matrix::zeros(0, 0)
    };
    Rref { reduced, pivot_columns: pivots, row_transform }
}

fn scale_row<T: Scalar>(row: &mut [T], by: &T) {
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x = x.clone() * by.clone();
        }
    }
}

fn sub_scaled<T: Scalar>(dst: &mut [T], src: &[T], factor: &T) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = d.clone() - factor.clone() * s.clone();
        }
    }
}

fn pick_rows<T>(rows: &mut [Vec<T>], src: usize, dst: usize) -> (&[T], &mut [T]) {
    if src < dst {
        let (lo, hi) = rows.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    }
}

pub fn rref<T: Field>(m: &Matrix<T>) -> Rref<T> {
    eliminate(m, true)
}

pub fn rank<T: Field>(m: &Matrix<T>) -> usize {
    eliminate(m, false).rank()
}

/// Basis of `{v : M v = 0}`, one vector per free column, in column order.
pub fn kernel_basis<T: Field>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let e = eliminate(m, false);
    let mut is_pivot = vec![false; m.cols];
    for &p in &e.pivot_columns {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![T::zero(); m.cols];
            v[free] = T::one();
            for (row, &p) in e.pivot_columns.iter().enumerate() {
                v[p] = -e.reduced[(row, free)].clone();
            }
            v
        })
        .collect()
}

/// Precomputed elimination of a column matrix, for repeated span solves.
#[derive(Clone, Debug)]
pub struct SpanSolver<T> {
    rows: usize,
    cols: usize,
    transform: Matrix<T>,
    pivots: Vec<usize>,
}

impl<T: Field> SpanSolver<T> {
    pub fn new(columns: &Matrix<T>) -> Self {
        let e = rref(columns);
        SpanSolver { rows: columns.rows, cols: columns.cols, transform: e.row_transform, pivots: e.pivot_columns }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Coefficients `x` with `columns · x = target`; free variables are set to zero.
    pub fn solve(&self, target: &[T]) -> Result<Vec<T>> {
        if target.len() != self.rows {
            return Err(Error::DimensionMismatch { left: target.len(), right: self.rows });
        }
        let y = if self.rows == 0 { Vec::new() } else { self.transform.mul_vec(target) };
        if y[self.rank()..].iter().any(|x| !x.is_zero()) {
            return Err(Error::NotInSpan);
        }
        let mut x = vec![T::zero(); self.cols];
        for (row, &p) in self.pivots.iter().enumerate() {
            x[p] = y[row].clone();
        }
        Ok(x)
    }

    pub fn contains(&self, target: &[T]) -> bool {
        self.solve(target).is_ok()
    }
}

pub fn solve_in_span<T: Field>(columns: &Matrix<T>, target: &[T]) -> Result<Vec<T>> {
    SpanSolver::new(columns).solve(target)
}

pub fn inverse<T: Field>(m: &Matrix<T>) -> Option<Matrix<T>> {
    if !m.is_square() {
        return None;
    }
    let e = rref(m);
    (e.rank() == m.rows).then_some(e.row_transform)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::GaussRat;

    fn g(s: &str) -> GaussRat {
        s.parse().unwrap()
    }

    fn mat(rows: &[&[&str]]) -> Matrix<GaussRat> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| g(s)).collect()).collect())
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::<GaussRat>::identity(3);
        let e = rref(&id);
        assert_eq!(e.reduced, id);
        assert_eq!(e.pivot_columns, vec![0, 1, 2]);

        let z = Matrix::<GaussRat>::zeros(2, 4);
        let e = rref(&z);
        assert!(e.reduced.is_zero());
        assert!(e.pivot_columns.is_empty());
    }

    #[test]
    fn rref_dependent_complex_rows() {
        let m = mat(&[&["1", "i"], &["i", "-1"]]);
        let e = rref(&m);
        assert_eq!(e.pivot_columns, vec![0]);
        assert_eq!(e.row_transform.mul(&m).unwrap(), e.reduced);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Matrix::<GaussRat>::identity(3)).is_empty());
        let k = kernel_basis(&Matrix::<GaussRat>::zeros(2, 3));
        assert_eq!(k.len(), 3);
        for (j, v) in k.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                assert_eq!(*x, if i == j { GaussRat::from(1) } else { GaussRat::from(0) });
            }
        }
        let k = kernel_basis(&mat(&[&["1", "i"]]));
        assert_eq!(k, vec![vec![g("-i"), g("1")]]);
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::<GaussRat>::identity(2);
        assert_eq!(solve_in_span(&id, &[g("0"), g("0")]).unwrap(), vec![g("0"), g("0")]);
        assert_eq!(solve_in_span(&id, &[g("3"), g("1/2i")]).unwrap(), vec![g("3"), g("1/2i")]);
        let col = Matrix::from_columns(2, &[vec![g("1"), g("i")]]);
        assert_eq!(solve_in_span(&col, &[g("i"), g("-1")]).unwrap(), vec![g("i")]);
        assert_eq!(solve_in_span(&col, &[g("1"), g("1")]), Err(Error::NotInSpan));
    }

    #[test]
    fn solve_with_zero_rows() {
        let empty = Matrix::<GaussRat>::zeros(0, 0);
        assert_eq!(solve_in_span(&empty, &[]).unwrap(), Vec::<GaussRat>::new());
        let no_cols = Matrix::<GaussRat>::zeros(2, 0);
        assert!(solve_in_span(&no_cols, &[g("0"), g("0")]).unwrap().is_empty());
        assert_eq!(solve_in_span(&no_cols, &[g("1"), g("0")]), Err(Error::NotInSpan));
    }

    #[test]
    fn inverse_round_trip() {
        let m = mat(&[&["1", "2+i"], &["0", "3"]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        assert!(inverse(&mat(&[&["1", "i"], &["i", "-1"]])).is_none());
    }
}
