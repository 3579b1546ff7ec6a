//! Exact dense integer linear algebra.
//!
//! Vectors are rows and matrices act on them from the right: a matrix with
//! `r` rows and `c` columns is the map `Z^r -> Z^c`, `x -> x * A`. Kernels
//! and cokernels below are taken with respect to that convention.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from a list of rows. An empty list gives a `0 x 0` matrix.
    pub fn from_rows<T: Clone + Into<BigInt>>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    /// Convenience constructor from a flat row-major slice of machine integers.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
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

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[BigInt]> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.row_iter().map(<[BigInt]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let e = &self[(r, c)];
                    if r == c {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
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

    pub fn checked_mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("subtraction of differently shaped matrices".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn checked_add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("addition of differently shaped matrices".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|e| e * k).collect() }
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows, "vector length must match row count");
        let mut out = vec![BigInt::zero(); self.cols];
        for (r, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                let e = &self[(r, c)];
                if !e.is_zero() {
                    *o += x * e;
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        self.row_iter()
            .map(|row| row.iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Stacks matrices with the same column count on top of each other.
    pub fn vstack(cols: usize, parts: &[&IntMatrix]) -> Result<IntMatrix> {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            if p.cols != cols {
                return Err(Error::DimensionMismatch("vstack column mismatch".into()));
            }
            rows += p.rows;
            data.extend(p.data.iter().cloned());
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Places matrices with the same row count side by side.
    pub fn hstack(rows: usize, parts: &[&IntMatrix]) -> Result<IntMatrix> {
        if parts.iter().any(|p| p.rows != rows) {
            return Err(Error::DimensionMismatch("hstack row mismatch".into()));
        }
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut offset = 0;
        for p in parts {
            for r in 0..rows {
                for c in 0..p.cols {
                    out[(r, offset + c)] = p[(r, c)].clone();
                }
            }
            offset += p.cols;
        }
        Ok(out)
    }

    pub fn block_diag(parts: &[&IntMatrix]) -> IntMatrix {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            for r in 0..p.rows {
                for c in 0..p.cols {
                    out[(r0 + r, c0 + c)] = p[(r, c)].clone();
                }
            }
            r0 += p.rows;
            c0 += p.cols;
        }
        out
    }

    pub fn kronecker(&self, other: &IntMatrix) -> IntMatrix {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = &self[(r, c)];
                if a.is_zero() {
                    continue;
                }
                for i in 0..other.rows {
                    for j in 0..other.cols {
                        out[(r * other.rows + i, c * other.cols + j)] = a * &other[(i, j)];
                    }
                }
            }
        }
        out
    }

    pub fn select_rows(&self, range: std::ops::Range<usize>) -> IntMatrix {
        let data = self.data[range.start * self.cols..range.end * self.cols].to_vec();
        IntMatrix { rows: range.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, range: std::ops::Range<usize>) -> IntMatrix {
        let mut out = Self::zeros(self.rows, range.len());
        for r in 0..self.rows {
            for (j, c) in range.clone().enumerate() {
                out[(r, j)] = self[(r, c)].clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[target] -= q * row[source]
    fn row_axpy(&mut self, target: usize, source: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let s = &self.data[source * self.cols + c];
            if !s.is_zero() {
                let delta = q * s;
                self.data[target * self.cols + c] -= delta;
            }
        }
    }

    /// col[target] -= q * col[source]
    fn col_axpy(&mut self, target: usize, source: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let s = &self.data[r * self.cols + source];
            if !s.is_zero() {
                let delta = q * s;
                self.data[r * self.cols + target] -= delta;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let e = &mut self.data[r * self.cols + c];
            *e = -std::mem::take(e);
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix dimensions must agree")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.row_iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Row-style Hermite normal form: returns `(h, u)` with `u` unimodular and
/// `u * a = h`. Pivots are positive, entries above a pivot lie in
/// `[0, pivot)`, and zero rows come last.
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut pivot_row = 0;
    for col in 0..a.cols {
        if pivot_row == a.rows {
            break;
        }
        let mut have_pivot = false;
        loop {
            let best = (pivot_row..a.rows)
                .filter(|&r| !h[(r, col)].is_zero())
                .min_by(|&x, &y| h[(x, col)].magnitude().cmp(h[(y, col)].magnitude()));
            let Some(best) = best else { break };
            have_pivot = true;
            h.swap_rows(pivot_row, best);
            u.swap_rows(pivot_row, best);
            let pivot = h[(pivot_row, col)].clone();
            let mut clean = true;
            for r in pivot_row + 1..a.rows {
                if h[(r, col)].is_zero() {
                    continue;
                }
                let q = h[(r, col)].div_floor(&pivot);
                h.row_axpy(r, pivot_row, &q);
                u.row_axpy(r, pivot_row, &q);
                if !h[(r, col)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !have_pivot {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        let pivot = h[(pivot_row, col)].clone();
        for r in 0..pivot_row {
            let q = h[(r, col)].div_floor(&pivot);
            h.row_axpy(r, pivot_row, &q);
            u.row_axpy(r, pivot_row, &q);
        }
        pivot_row += 1;
    }
    (h, u)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// `min(rows, cols)` invariant factors, each dividing the next, zeros last.
    pub divisors: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.divisors.iter().take_while(|d| !d.is_zero()).count()
    }
}

/// Smith normal form with transforms: `left * a * right` is diagonal with the
/// returned divisors. Pivoting always moves the smallest nonzero entry into
/// place to limit coefficient growth.
pub fn snf(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut left = IntMatrix::identity(m);
    let mut right = IntMatrix::identity(n);
    let k = m.min(n);
    for t in 0..k {
        let smallest = (t..m)
            .flat_map(|r| (t..n).map(move |c| (r, c)))
            .filter(|&(r, c)| !d[(r, c)].is_zero())
            .min_by(|&x, &y| d[x].magnitude().cmp(d[y].magnitude()));
        let Some((r0, c0)) = smallest else { break };
        d.swap_rows(t, r0);
        left.swap_rows(t, r0);
        d.swap_cols(t, c0);
        right.swap_cols(t, c0);
        loop {
            // bring the smallest entry of row t / column t into the pivot
            let mut best = (t, t);
            for r in t + 1..m {
                if !d[(r, t)].is_zero() && d[(r, t)].magnitude() < d[best].magnitude() {
                    best = (r, t);
                }
            }
            for c in t + 1..n {
                if !d[(t, c)].is_zero() && d[(t, c)].magnitude() < d[best].magnitude() {
                    best = (t, c);
                }
            }
            if best.0 != t {
                d.swap_rows(t, best.0);
                left.swap_rows(t, best.0);
            } else if best.1 != t {
                d.swap_cols(t, best.1);
                right.swap_cols(t, best.1);
            }
            let pivot = d[(t, t)].clone();
            let mut clean = true;
            for r in t + 1..m {
                if d[(r, t)].is_zero() {
                    continue;
                }
                let q = d[(r, t)].div_floor(&pivot);
                d.row_axpy(r, t, &q);
                left.row_axpy(r, t, &q);
                clean &= d[(r, t)].is_zero();
            }
            for c in t + 1..n {
                if d[(t, c)].is_zero() {
                    continue;
                }
                let q = d[(t, c)].div_floor(&pivot);
                d.col_axpy(c, t, &q);
                right.col_axpy(c, t, &q);
                clean &= d[(t, c)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..m).find(|&r| (t + 1..n).any(|c| !d[(r, c)].is_multiple_of(&pivot)));
            match offender {
                Some(r) => {
                    // row t += row r, then clear again
                    let minus_one = -BigInt::one();
                    d.row_axpy(t, r, &minus_one);
                    left.row_axpy(t, r, &minus_one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            left.negate_row(t);
        }
    }
    let divisors = (0..k).map(|i| d[(i, i)].clone()).collect();
    SnfResult { divisors, left, right }
}

/// Saturated basis (as rows) of the left kernel `{x : x * a = 0}`.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let (h, u) = hnf(a);
    let rank = (0..h.rows).take_while(|&r| h.row(r).iter().any(|e| !e.is_zero())).count();
    u.select_rows(rank..a.rows)
}

pub fn rank(a: &IntMatrix) -> usize {
    let (h, _) = hnf(a);
    (0..h.rows).filter(|&r| h.row(r).iter().any(|e| !e.is_zero())).count()
}

/// Fraction-free (Bareiss) determinant. Panics on non-square input.
pub fn det(a: &IntMatrix) -> BigInt {
    assert!(a.is_square(), "determinant of a non-square matrix");
    let n = a.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                Some(i) => {
                    m.swap_rows(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                m[(i, j)] = v;
            }
        }
        prev = m[(k, k)].clone();
    }
    let d = m[(n - 1, n - 1)].clone();
    if negate {
        -d
    } else {
        d
    }
}

pub fn rank_and_det(a: &IntMatrix) -> (usize, Option<BigInt>) {
    (rank(a), a.is_square().then(|| det(a)))
}

pub fn is_unimodular(a: &IntMatrix) -> bool {
    a.is_square() && det(a).magnitude().is_one()
}

/// Order of a cokernel `Z^cols / (row span)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CokernelOrder {
    Finite(BigInt),
    Infinite,
}

impl CokernelOrder {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            CokernelOrder::Finite(n) => Some(n),
            CokernelOrder::Infinite => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, CokernelOrder::Finite(_))
    }
}

impl fmt::Display for CokernelOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CokernelOrder::Finite(n) => write!(f, "{n}"),
            CokernelOrder::Infinite => write!(f, "infinite"),
        }
    }
}

pub fn cokernel_order(a: &IntMatrix) -> CokernelOrder {
    if a.cols == 0 {
        return CokernelOrder::Finite(BigInt::one());
    }
    let s = snf(a);
    if s.rank() < a.cols {
        return CokernelOrder::Infinite;
    }
    CokernelOrder::Finite(s.divisors.iter().take(a.cols).product())
}

/// Inverse of a unimodular matrix, `None` if the matrix is not unimodular.
pub fn unimodular_inverse(a: &IntMatrix) -> Option<IntMatrix> {
    if !a.is_square() {
        return None;
    }
    let (h, u) = hnf(a);
    h.is_identity().then_some(u)
}

/// Solves `y * basis = w` for integral `y`, reusing one Smith form of the basis.
#[derive(Clone, Debug)]
pub struct RowSolver {
    snf: SnfResult,
    rows: usize,
    cols: usize,
}

impl RowSolver {
    pub fn new(basis: &IntMatrix) -> Self {
        RowSolver { snf: snf(basis), rows: basis.rows, cols: basis.cols }
    }

    pub fn rank(&self) -> usize {
        self.snf.rank()
    }

    /// True when every invariant factor is 1, i.e. the rows span a pure
    /// sublattice and are independent.
    pub fn is_saturated(&self) -> bool {
        self.rank() == self.rows && self.snf.divisors.iter().take(self.rows).all(One::is_one)
    }

    /// One integral solution, or `None` if `w` is outside the row span.
    pub fn solve(&self, w: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(w.len(), self.cols);
        // left * B * right = D, so y * B = w  <=>  (y * left^-1) * D = w * right
        let wr = self.snf.right.vec_mul(w);
        let rank = self.rank();
        let mut z = vec![BigInt::zero(); self.rows];
        for (j, x) in wr.iter().enumerate() {
            if j < rank {
                let (q, r) = x.div_rem(&self.snf.divisors[j]);
                if !r.is_zero() {
                    return None;
                }
                z[j] = q;
            } else if !x.is_zero() {
                return None;
            }
        }
        Some(self.snf.left.vec_mul(&z))
    }
}
