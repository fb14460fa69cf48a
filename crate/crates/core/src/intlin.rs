//! Exact linear algebra over the integers (Smith and Hermite normal forms,
//! kernels, congruence solving, lattice membership) and over fields
//! (row reduction for rational computations).
//!
//! Everything is generic over the scalar. The integer routines need a
//! Euclidean [`IntScalar`] (`i64`, `i128`, `BigInt`); the field routines only
//! need exact division, which `BigRational` provides.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_integer::Integer;
use num_traits::{Num, Signed};

use crate::{Error, Result};

/// Exact scalar usable in [`Matrix`].
pub trait Scalar: Clone + PartialEq + fmt::Debug + Num + Signed {}
impl<T: Clone + PartialEq + fmt::Debug + Num + Signed> Scalar for T {}

/// Scalar with Euclidean division.
pub trait IntScalar: Scalar + Integer {}
impl<T: Scalar + Integer> IntScalar for T {}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            f.debug_list()
                .entries(&self.data[r * self.cols..(r + 1) * self.cols])
                .finish()?;
        }
        write!(f, "]")
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::input(format!(
                "matrix data has {} entries, expected {}x{}",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from its rows; `cols` is needed when there are none.
    pub fn from_rows(rows: &[Vec<T>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::input("ragged matrix rows"));
            }
            data.extend(r.iter().cloned());
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are `columns`, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, r: usize) -> Vec<T> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
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
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (k, x) in v.iter().enumerate() {
                    let a = &self[(i, k)];
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc + a.clone() * x.clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.rows == other.rows && self.cols == other.cols);
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a.clone()).collect(),
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..other.cols {
                out[(r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        out
    }

    /// Vertical concatenation.
    pub fn vcat(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let cols: Vec<Vec<T>> = idx.iter().map(|&c| self.col(c)).collect();
        Self::from_columns(self.rows, &cols)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let rows: Vec<Vec<T>> = idx.iter().map(|&r| self.row(r)).collect();
        Self::from_rows(&rows, self.cols).expect("rows have equal length")
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &T) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let s = self[(src, c)].clone();
            if !s.is_zero() {
                self[(dst, c)] = self[(dst, c)].clone() + k.clone() * s;
            }
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &T) {
        if k.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let s = self[(r, src)].clone();
            if !s.is_zero() {
                self[(r, dst)] = self[(r, dst)].clone() + k.clone() * s;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            self[(r, c)] = -self[(r, c)].clone();
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            self[(r, c)] = -self[(r, c)].clone();
        }
    }
}

// ---------------------------------------------------------------------------
// Smith normal form

/// `u * a * v = s` with `u`, `v` unimodular and `s` diagonal with
/// non-negative entries forming a divisibility chain.
#[derive(Clone, Debug)]
pub struct SnfResult<T> {
    pub u: Matrix<T>,
    pub s: Matrix<T>,
    pub v: Matrix<T>,
    /// Inverse of `u`.
    pub u_inv: Matrix<T>,
}

impl<T: IntScalar> SnfResult<T> {
    /// Diagonal entries of `s` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<T> {
        let k = self.s.rows().min(self.s.cols());
        (0..k).map(|i| self.s[(i, i)].clone()).collect()
    }

    /// Number of non-zero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form with transforms. Pivots are chosen by smallest absolute
/// value, then lowest row, then lowest column.
pub fn snf<T: IntScalar>(a: &Matrix<T>) -> SnfResult<T> {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = Matrix::identity(m);
    let mut v = Matrix::identity(n);
    let mut u_inv = Matrix::identity(m);

    'outer: for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = &s[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if s[(bi, bj)].abs() <= x.abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'outer;
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = s[(i, t)].div_floor(&s[(t, t)]);
                let k = -q;
                s.add_row(i, t, &k);
                u.add_row(i, t, &k);
                u_inv.add_col(t, i, &-k.clone());
                if !s[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = s[(t, j)].div_floor(&s[(t, t)]);
                let k = -q;
                s.add_col(j, t, &k);
                v.add_col(j, t, &k);
                if !s[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // The pivot must divide the rest of the block.
            let p = s[(t, t)].clone();
            let mut offender = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if !s[(i, j)].is_multiple_of(&p) {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = T::one();
                    s.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                    u_inv.add_col(i, t, &-one.clone());
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }
    SnfResult { u, s, v, u_inv }
}

/// Basis of the integer kernel `{x : a x = 0}` as the columns of a matrix,
/// in canonical Hermite form.
pub fn kernel<T: IntScalar>(a: &Matrix<T>) -> Matrix<T> {
    let res = snf(a);
    let r = res.rank();
    let idx: Vec<usize> = (r..a.cols()).collect();
    let basis = res.v.select_columns(&idx);
    hnf(&basis).basis
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det<T: IntScalar>(a: &Matrix<T>) -> T {
    assert_eq!(a.rows(), a.cols(), "determinant of non-square matrix");
    let n = a.rows();
    if n == 0 {
        return T::one();
    }
    let mut m = a.clone();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                return T::zero();
            };
            m.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = m[(i, j)].clone() * m[(k, k)].clone() - m[(i, k)].clone() * m[(k, j)].clone();
                m[(i, j)] = val / prev.clone();
            }
        }
        prev = m[(k, k)].clone();
    }
    sign * m[(n - 1, n - 1)].clone()
}

// ---------------------------------------------------------------------------
// Hermite normal form

/// A lattice in `Z^ambient_rank`, stored as the columns of a matrix in
/// canonical column Hermite form: pivot rows strictly increase from left to
/// right, pivots are positive, and in each pivot row the entries of the
/// earlier columns lie in `[0, pivot)`. Equal lattices have identical bases.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HnfBasis<T> {
    pub ambient_rank: usize,
    pub basis: Matrix<T>,
}

impl<T: IntScalar> HnfBasis<T> {
    pub fn zero(ambient_rank: usize) -> Self {
        HnfBasis {
            ambient_rank,
            basis: Matrix::zeros(ambient_rank, 0),
        }
    }

    pub fn full(ambient_rank: usize) -> Self {
        HnfBasis {
            ambient_rank,
            basis: Matrix::identity(ambient_rank),
        }
    }

    /// Canonical basis of the lattice spanned by `vectors`.
    pub fn span(ambient_rank: usize, vectors: &[Vec<T>]) -> Self {
        hnf(&Matrix::from_columns(ambient_rank, vectors))
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn vectors(&self) -> Vec<Vec<T>> {
        self.basis.columns()
    }

    pub fn contains(&self, v: &[T]) -> bool {
        lattice_member(self, v)
    }

    /// Coefficients of `v` in this basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[T]) -> Option<Vec<T>> {
        assert_eq!(v.len(), self.ambient_rank, "vector length mismatch");
        let mut rest = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rank());
        let mut row = 0;
        for j in 0..self.rank() {
            while self.basis[(row, j)].is_zero() {
                if !rest[row].is_zero() {
                    return None;
                }
                row += 1;
            }
            let p = &self.basis[(row, j)];
            if !rest[row].is_multiple_of(p) {
                return None;
            }
            let c = rest[row].clone() / p.clone();
            if !c.is_zero() {
                for (i, r) in rest.iter_mut().enumerate().skip(row) {
                    let b = &self.basis[(i, j)];
                    if !b.is_zero() {
                        *r = r.clone() - c.clone() * b.clone();
                    }
                }
            }
            coeffs.push(c);
            row += 1;
        }
        if rest.iter().all(|x| x.is_zero()) {
            Some(coeffs)
        } else {
            None
        }
    }

    pub fn contains_lattice(&self, other: &Self) -> bool {
        other.vectors().iter().all(|v| self.contains(v))
    }

    /// Sum of two lattices.
    pub fn join(&self, other: &Self) -> Self {
        assert_eq!(self.ambient_rank, other.ambient_rank);
        hnf(&self.basis.hcat(&other.basis))
    }

    /// Index in the ambient lattice for a full-rank lattice, `None` otherwise.
    pub fn index(&self) -> Option<T> {
        if self.rank() != self.ambient_rank {
            return None;
        }
        Some(det(&self.basis).abs())
    }
}

/// Canonical column Hermite form of the lattice spanned by the columns of
/// `vectors`.
pub fn hnf<T: IntScalar>(vectors: &Matrix<T>) -> HnfBasis<T> {
    let n = vectors.rows();
    let mut cols: Vec<Vec<T>> = vectors
        .columns()
        .into_iter()
        .filter(|c| c.iter().any(|x| !x.is_zero()))
        .collect();
    let mut k = 0;
    for r in 0..n {
        if k >= cols.len() {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for j in k..cols.len() {
                if cols[j][r].is_zero() {
                    continue;
                }
                match best {
                    Some(b) if cols[b][r].abs() <= cols[j][r].abs() => {}
                    _ => best = Some(j),
                }
            }
            let Some(b) = best else { break };
            cols.swap(k, b);
            let mut done = true;
            for j in k + 1..cols.len() {
                if cols[j][r].is_zero() {
                    continue;
                }
                let q = cols[j][r].div_floor(&cols[k][r]);
                let (head, tail) = cols.split_at_mut(j);
                axpy(&mut tail[0], &-q, &head[k]);
                if !cols[j][r].is_zero() {
                    done = false;
                }
            }
            if done {
                if cols[k][r].is_negative() {
                    for x in cols[k].iter_mut() {
                        *x = -x.clone();
                    }
                }
                for i in 0..k {
                    let q = cols[i][r].div_floor(&cols[k][r]);
                    if !q.is_zero() {
                        let (head, tail) = cols.split_at_mut(k);
                        axpy(&mut head[i], &-q, &tail[0]);
                    }
                }
                k += 1;
                cols.retain(|c| c.iter().any(|x| !x.is_zero()));
                break;
            }
        }
    }
    cols.truncate(k);
    HnfBasis {
        ambient_rank: n,
        basis: Matrix::from_columns(n, &cols),
    }
}

fn axpy<T: Scalar>(y: &mut [T], a: &T, x: &[T]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = yi.clone() + a.clone() * xi.clone();
        }
    }
}

/// True iff `v` is an integer combination of the basis columns.
pub fn lattice_member<T: IntScalar>(l: &HnfBasis<T>, v: &[T]) -> bool {
    l.coordinates(v).is_some()
}

// ---------------------------------------------------------------------------
// Linear systems over the integers

/// Solves `a x = b`, or `a x ≡ b` row-wise modulo `moduli` (a zero modulus
/// means exact equality). Returns `Ok(None)` when there is no integer
/// solution.
pub fn solve<T: IntScalar>(a: &Matrix<T>, b: &[T], moduli: Option<&[T]>) -> Result<Option<Vec<T>>> {
    if b.len() != a.rows() {
        return Err(Error::input(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    let mut system = a.clone();
    if let Some(m) = moduli {
        if m.len() != a.rows() {
            return Err(Error::input("moduli length does not match row count"));
        }
        let extra: Vec<usize> = (0..m.len()).filter(|&i| !m[i].is_zero()).collect();
        let mut aug = Matrix::zeros(a.rows(), extra.len());
        for (c, &i) in extra.iter().enumerate() {
            aug[(i, c)] = m[i].clone();
        }
        system = system.hcat(&aug);
    }
    let res = snf(&system);
    let ub = res.u.mul_vec(b);
    let diag = res.diagonal();
    let mut y = vec![T::zero(); system.cols()];
    for (i, val) in ub.iter().enumerate() {
        let d = diag.get(i).cloned().unwrap_or_else(T::zero);
        if d.is_zero() {
            if !val.is_zero() {
                return Ok(None);
            }
        } else if val.is_multiple_of(&d) {
            y[i] = val.clone() / d;
        } else {
            return Ok(None);
        }
    }
    let x = res.v.mul_vec(&y);
    Ok(Some(x[..a.cols()].to_vec()))
}

// ---------------------------------------------------------------------------
// Linear algebra over a field

/// Reduced row echelon form in place; returns pivot columns. `T` must be a
/// field (exact division).
pub fn rref<T: Scalar>(m: &mut Matrix<T>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols() {
        if r >= m.rows() {
            break;
        }
        let Some(p) = (r..m.rows()).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = T::one() / m[(r, c)].clone();
        for j in 0..m.cols() {
            m[(r, j)] = m[(r, j)].clone() * inv.clone();
        }
        for i in 0..m.rows() {
            if i != r && !m[(i, c)].is_zero() {
                let k = -m[(i, c)].clone();
                m.add_row(i, r, &k);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_field<T: Scalar>(m: &Matrix<T>) -> usize {
    let mut w = m.clone();
    rref(&mut w).len()
}

/// Some solution of `a x = b` over a field.
pub fn solve_field<T: Scalar>(a: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    assert_eq!(a.rows(), b.len());
    let bcol = Matrix::from_columns(b.len(), &[b.to_vec()]);
    let mut aug = a.hcat(&bcol);
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&a.cols()) {
        return None;
    }
    let mut x = vec![T::zero(); a.cols()];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[(r, a.cols())].clone();
    }
    Some(x)
}

/// Inverse of a square matrix over a field.
pub fn inverse_field<T: Scalar>(a: &Matrix<T>) -> Option<Matrix<T>> {
    let n = a.rows();
    assert_eq!(n, a.cols());
    let mut aug = a.hcat(&Matrix::identity(n));
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let idx: Vec<usize> = (n..2 * n).collect();
    Some(aug.select_columns(&idx))
}

/// Indices of a maximal linearly independent subset of the columns,
/// scanning left to right.
pub fn independent_columns<T: Scalar>(m: &Matrix<T>) -> Vec<usize> {
    let mut w = m.clone();
    rref(&mut w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, Int};

    fn im(rows: &[&[i64]]) -> Matrix<Int> {
        let cols = rows.first().map_or(0, |r| r.len());
        let v: Vec<Vec<Int>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        Matrix::from_rows(&v, cols).unwrap()
    }

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn snf_examples() {
        let r = snf(&im(&[&[2, 4], &[6, 8]]));
        assert_eq!(r.diagonal(), iv(&[2, 4]));
        let r = snf(&Matrix::<Int>::identity(3));
        assert_eq!(r.diagonal(), iv(&[1, 1, 1]));
        let r = snf(&Matrix::<Int>::zeros(2, 2));
        assert_eq!(r.diagonal(), iv(&[0, 0]));
    }

    #[test]
    fn snf_transforms_reproduce_diagonal() {
        let a = im(&[&[3, 5, 7], &[2, -4, 6], &[0, 9, 12]]);
        let r = snf(&a);
        assert_eq!(r.u.mul(&a).mul(&r.v), r.s);
        assert_eq!(r.u.mul(&r.u_inv), Matrix::identity(3));
        assert_eq!(det(&r.u).abs(), int(1));
        assert_eq!(det(&r.v).abs(), int(1));
    }

    #[test]
    fn snf_works_for_machine_integers() {
        let a: Matrix<i64> = Matrix::from_rows(&[vec![2, 4], vec![6, 8]], 2).unwrap();
        assert_eq!(snf(&a).diagonal(), vec![2, 4]);
    }

    #[test]
    fn hnf_examples() {
        let l = HnfBasis::span(2, &[iv(&[2, 0]), iv(&[0, 2]), iv(&[1, 1])]);
        assert_eq!(l.vectors(), vec![iv(&[1, 1]), iv(&[0, 2])]);
        assert_eq!(HnfBasis::<Int>::span(3, &[]).rank(), 0);
        let std: Vec<Vec<Int>> = Matrix::<Int>::identity(3).columns();
        assert_eq!(HnfBasis::span(3, &std).vectors(), std);
    }

    #[test]
    fn hnf_is_idempotent() {
        let l = HnfBasis::span(3, &[iv(&[4, 6, 2]), iv(&[-2, 3, 5]), iv(&[0, 7, 1])]);
        assert_eq!(hnf(&l.basis), l);
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve(&im(&[&[2]]), &iv(&[1]), None).unwrap(), None);
        assert_eq!(solve(&im(&[&[2]]), &iv(&[4]), None).unwrap(), Some(iv(&[2])));
        let a = im(&[&[1, 0], &[0, 2]]);
        assert_eq!(solve(&a, &iv(&[1, 1]), Some(&iv(&[0, 4]))).unwrap(), None);
        assert!(solve(&a, &iv(&[1]), None).is_err());
    }

    #[test]
    fn membership_examples() {
        let l = HnfBasis::span(2, &[iv(&[1, 1]), iv(&[0, 2])]);
        assert!(lattice_member(&l, &iv(&[1, 3])));
        assert!(!lattice_member(&l, &iv(&[1, 0])));
        assert!(lattice_member(&l, &iv(&[0, 0])));
        assert!(lattice_member(&HnfBasis::zero(2), &iv(&[0, 0])));
    }

    #[test]
    fn kernel_and_det() {
        let a = im(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel(&a);
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).is_zero());
        assert_eq!(det(&im(&[&[2, 1], &[1, 3]])), int(5));
        assert_eq!(det(&im(&[&[0, 1], &[1, 0]])), int(-1));
    }

    #[test]
    fn field_routines() {
        use crate::Rat;
        let a: Matrix<Rat> = im(&[&[1, 2], &[3, 4]]).map(|x| Rat::from_integer(x.clone()));
        let inv = inverse_field(&a).unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        let b = vec![Rat::from_integer(int(5)), Rat::from_integer(int(6))];
        let x = solve_field(&a, &b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
    }
}
