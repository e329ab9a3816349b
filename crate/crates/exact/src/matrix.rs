use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use crate::scalar::{Scalar, Q};

/// Raised when an operation receives matrices of incompatible shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeError(pub String);

impl fmt::Display for ShapeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "shape error: {}", self.0)
    }
}

impl std::error::Error for ShapeError {}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Scalar> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = R::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from explicit rows. `cols` is needed for the zero-row case.
    pub fn from_rows(rows: Vec<Vec<R>>, cols: usize) -> Result<Self, ShapeError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(ShapeError(format!("row {i} has length {} instead of {cols}", r.len())));
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn data(&self) -> &[R] {
        &self.data
    }

    pub fn map<S: Scalar>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (i..self.cols).all(|j| (self[(i, j)].clone() + self[(j, i)].clone()).is_zero())
            })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (i..self.cols).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ShapeError> {
        if self.cols != other.rows {
            return Err(ShapeError(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
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

    /// Matrix product. Panics on a shape mismatch; use [`Matrix::try_mul`] when
    /// shapes come from user input.
    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("matrix product shape mismatch")
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ShapeError> {
        if self.shape() != other.shape() {
            return Err(ShapeError(format!("cannot add {:?} and {:?}", self.shape(), other.shape())));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("matrix sum shape mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn scale(&self, c: &Q) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn scale_by(&self, c: &R) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Places `blocks[i][j]` in a grid. Row heights and column widths must agree.
    pub fn from_blocks(row_sizes: &[usize], col_sizes: &[usize], block: impl Fn(usize, usize) -> Option<Self>) -> Self {
        let total_r: usize = row_sizes.iter().sum();
        let total_c: usize = col_sizes.iter().sum();
        let mut out = Self::zeros(total_r, total_c);
        let mut r0 = 0;
        for (bi, &h) in row_sizes.iter().enumerate() {
            let mut c0 = 0;
            for (bj, &w) in col_sizes.iter().enumerate() {
                if let Some(b) = block(bi, bj) {
                    assert_eq!(b.shape(), (h, w), "block ({bi},{bj}) has the wrong shape");
                    for i in 0..h {
                        for j in 0..w {
                            out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                        }
                    }
                }
                c0 += w;
            }
            r0 += h;
        }
        out
    }

    pub fn block_diag(blocks: &[Self]) -> Self {
        let rs: Vec<usize> = blocks.iter().map(|b| b.rows).collect();
        let cs: Vec<usize> = blocks.iter().map(|b| b.cols).collect();
        Self::from_blocks(&rs, &cs, |i, j| (i == j).then(|| blocks[i].clone()))
    }

    pub fn try_det(&self) -> Result<R, ShapeError> {
        if !self.is_square() {
            return Err(ShapeError(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        Ok(R::det_of(self.rows, &self.data))
    }

    pub fn det(&self) -> R {
        self.try_det().expect("determinant of a non-square matrix")
    }

    /// Pfaffian. Fails unless the matrix is square and skew-symmetric.
    pub fn try_pf(&self) -> Result<R, ShapeError> {
        if !self.is_skew() {
            return Err(ShapeError("Pfaffian of a matrix that is not skew-symmetric".into()));
        }
        Ok(R::pf_of(self.rows, &self.data))
    }

    pub fn pf(&self) -> R {
        self.try_pf().expect("Pfaffian of a non-skew matrix")
    }

    /// Determinant by Berkowitz's division-free algorithm; valid over any
    /// commutative ring.
    pub fn det_division_free(&self) -> R {
        assert!(self.is_square());
        berkowitz_det(self.rows, &self.data)
    }

    /// Pfaffian by expansion along the first row; valid over any commutative
    /// ring. Cost grows like `(n-1)!!`.
    pub fn pf_expansion(&self) -> R {
        assert!(self.is_square());
        pf_expand(self.rows, &self.data)
    }
}

impl<R> Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

pub(crate) fn berkowitz_det<R: Scalar>(n: usize, a: &[R]) -> R {
    if n == 0 {
        return R::one();
    }
    let at = |i: usize, j: usize| &a[i * n + j];
    // Coefficients of det(xI - A_r), highest degree first.
    let mut v: Vec<R> = vec![R::one()];
    for r in 0..n {
        let mut t: Vec<R> = Vec::with_capacity(r + 2);
        t.push(R::one());
        t.push(-at(r, r).clone());
        let mut mc: Vec<R> = (0..r).map(|i| at(i, r).clone()).collect();
        for _ in 0..r {
            let s = (0..r).fold(R::zero(), |acc, j| acc + at(r, j).clone() * mc[j].clone());
            t.push(-s);
            mc = (0..r)
                .map(|i| (0..r).fold(R::zero(), |acc, j| acc + at(i, j).clone() * mc[j].clone()))
                .collect();
        }
        let mut next = Vec::with_capacity(r + 2);
        for i in 0..r + 2 {
            let mut s = R::zero();
            for (j, vj) in v.iter().enumerate().take(i + 1) {
                s = s + t[i - j].clone() * vj.clone();
            }
            next.push(s);
        }
        v = next;
    }
    let c = v.pop().unwrap();
    if n.is_multiple_of(2) {
        c
    } else {
        -c
    }
}

fn pf_expand<R: Scalar>(n: usize, a: &[R]) -> R {
    if n % 2 == 1 {
        return R::zero();
    }
    let idx: Vec<usize> = (0..n).collect();
    pf_rec(n, a, &idx)
}

fn pf_rec<R: Scalar>(n: usize, a: &[R], idx: &[usize]) -> R {
    if idx.is_empty() {
        return R::one();
    }
    let i0 = idx[0];
    let mut total = R::zero();
    for pos in 1..idx.len() {
        let j = idx[pos];
        let entry = &a[i0 * n + j];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&k| k != j).collect();
        let term = entry.clone() * pf_rec(n, a, &rest);
        total = if pos % 2 == 1 { total + term } else { total - term };
    }
    total
}

pub(crate) fn det_field(n: usize, mut a: Vec<Q>) -> Q {
    let mut det = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            for j in 0..n {
                a.swap(p * n + j, col * n + j);
            }
            det = -det;
        }
        let pivot = a[col * n + col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if a[r * n + col].is_zero() {
                continue;
            }
            let f = &a[r * n + col] / &pivot;
            for j in col..n {
                let v = &a[col * n + j] * &f;
                a[r * n + j] -= v;
            }
        }
    }
    det
}

pub(crate) fn pf_field(n: usize, mut a: Vec<Q>) -> Q {
    if n % 2 == 1 {
        return Q::zero();
    }
    let mut result = Q::one();
    let mut k = 0;
    while k < n {
        let Some(j) = (k + 1..n).find(|&j| !a[k * n + j].is_zero()) else {
            return Q::zero();
        };
        if j != k + 1 {
            for c in 0..n {
                a.swap((k + 1) * n + c, j * n + c);
            }
            for r in 0..n {
                a.swap(r * n + k + 1, r * n + j);
            }
            result = -result;
        }
        let p = a[k * n + k + 1].clone();
        result *= &p;
        for i in k + 2..n {
            for jj in k + 2..n {
                let upd = (&a[(k + 1) * n + i] * &a[k * n + jj] - &a[k * n + i] * &a[(k + 1) * n + jj]) / &p;
                a[i * n + jj] += upd;
            }
        }
        k += 2;
    }
    result
}

impl Matrix<Q> {
    /// Returns the reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix<Q>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, row * m.cols + j);
                }
            }
            let inv = m[(row, col)].recip();
            for j in col..m.cols {
                m[(row, j)] = &m[(row, j)] * &inv;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone();
                for j in col..m.cols {
                    let v = &m[(row, j)] * &f;
                    m[(r, j)] -= v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        for i in 0..self.rows {
            e.insert(self.row(i).to_vec());
        }
        e.rank()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    /// One solution of `A x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows);
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r[(i, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix<Q>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                Q::one()
            } else {
                Q::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if n > 0 && (pivots.len() < n || pivots[n - 1] != n - 1) {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }
}

/// Incrementally maintained row echelon basis.
///
/// Rows are reduced against the stored basis in insertion order, so each
/// stored row has a distinct pivot and is zero at the pivots of earlier rows.
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    rows: Vec<(usize, Vec<Q>)>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon { width, rows: Vec::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the basis and returns the remainder.
    pub fn reduce(&self, mut row: Vec<Q>) -> Vec<Q> {
        assert_eq!(row.len(), self.width);
        for (p, b) in &self.rows {
            if row[*p].is_zero() {
                continue;
            }
            let f = row[*p].clone();
            for (x, y) in row.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        row
    }

    /// Adds `row` to the span. Returns `true` if the rank went up.
    pub fn insert(&mut self, row: Vec<Q>) -> bool {
        let mut r = self.reduce(row);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        self.rows.push((p, r));
        true
    }

    pub fn contains(&self, row: Vec<Q>) -> bool {
        self.reduce(row).iter().all(|x| x.is_zero())
    }
}
