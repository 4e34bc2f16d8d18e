//! Exact linear algebra over prime fields.
//!
//! Matrices are dense and row-major with entries stored as residues in `[0, p)`.
//! Every routine is plain Gaussian elimination with first-nonzero pivoting; the
//! matrices handled by this crate are tiny (a few dozen rows at most), so no
//! attempt is made at asymptotically fast methods.

use std::fmt;

use thiserror::Error;

/// Soft limit on matrix dimensions accepted by the parsers.
pub const SOFT_DIM_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{0} is not a prime modulus")]
    NotPrime(u32),
    #[error("matrix data has {found} entries, expected {rows}x{cols}")]
    Shape { rows: usize, cols: usize, found: usize },
    #[error("entry {value} at ({row}, {col}) is not reduced mod {p}")]
    Unreduced { row: usize, col: usize, value: u32, p: u32 },
    #[error("row count mismatch: {left} vs {right}")]
    RowMismatch { left: usize, right: usize },
    #[error("inner dimensions do not agree: {left_cols} vs {right_rows}")]
    InnerMismatch { left_cols: usize, right_rows: usize },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
}

/// A prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    p: u32,
}

impl FieldSpec {
    pub fn new(p: u32) -> Result<Self, LinalgError> {
        if is_prime(p) {
            Ok(Self { p })
        } else {
            Err(LinalgError::NotPrime(p))
        }
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    /// Number of field elements, as a `u64` for size computations.
    #[inline]
    pub fn order(self) -> u64 {
        self.p as u64
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Multiplicative inverse of a nonzero element (Fermat).
    pub fn inv(self, a: u32) -> u32 {
        assert!(a % self.p != 0, "zero has no inverse");
        let mut base = a as u64 % self.p as u64;
        let mut exp = self.p as u64 - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            exp >>= 1;
        }
        acc as u32
    }

    /// `dst[i] -= c * src[i]` for all `i`.
    #[inline]
    fn sub_scaled(self, dst: &mut [u32], src: &[u32], c: u32) {
        if c == 0 {
            return;
        }
        let p = self.p as u64;
        let nc = (p - c as u64) % p;
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = ((*d as u64 + nc * s as u64) % p) as u32;
        }
    }

    #[inline]
    fn scale(self, v: &mut [u32], c: u32) {
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense matrix over a prime field, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FqMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl FqMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<u32>) -> Result<Self, LinalgError> {
        if rows * cols != data.len() {
            return Err(LinalgError::Shape { rows, cols, found: data.len() });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from row vectors, reducing every entry into `[0, p)`.
    pub fn from_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::Shape { rows: rows.len(), cols, found: row.len() });
            }
            data.extend(row.iter().map(|&x| field.reduce(x)));
        }
        Ok(Self { rows: rows.len(), cols, data })
    }

    /// Builds a `rows x columns.len()` matrix from its columns.
    pub fn from_columns(rows: usize, columns: &[Vec<u32>]) -> Result<Self, LinalgError> {
        let cols = columns.len();
        let mut data = vec![0; rows * cols];
        for (c, column) in columns.iter().enumerate() {
            if column.len() != rows {
                return Err(LinalgError::Shape { rows, cols, found: column.len() });
            }
            for (r, &x) in column.iter().enumerate() {
                data[r * cols + c] = x;
            }
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Columns `block*width .. (block+1)*width` of the `rows x rows` identity.
    pub fn identity_block_column(rows: usize, block: usize, width: usize) -> Self {
        let mut m = Self::zeros(rows, width);
        for j in 0..width {
            let r = block * width + j;
            if r < rows {
                m.set(r, j, 1);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        (0..self.cols).map(move |c| self.column(c))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Checks that every entry lies in `[0, p)`.
    pub fn check_reduced(&self, field: FieldSpec) -> Result<(), LinalgError> {
        for r in 0..self.rows {
            for c in 0..self.cols {
                let value = self.get(r, c);
                if value >= field.p() {
                    return Err(LinalgError::Unreduced { row: r, col: c, value, p: field.p() });
                }
            }
        }
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Self, field: FieldSpec) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::InnerMismatch {
                left_cols: self.cols,
                right_rows: other.rows,
            });
        }
        let p = field.p() as u64;
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = 0u64;
                for k in 0..self.cols {
                    acc = (acc + self.get(r, k) as u64 * other.get(k, c) as u64) % p;
                }
                out.set(r, c, acc as u32);
            }
        }
        Ok(out)
    }

    /// Horizontal concatenation. All blocks must share a row count; an empty
    /// list yields a `rows x 0` matrix.
    pub fn hcat(rows: usize, blocks: &[&FqMatrix]) -> Result<Self, LinalgError> {
        let mut cols = 0;
        for b in blocks {
            if b.rows != rows {
                return Err(LinalgError::RowMismatch { left: rows, right: b.rows });
            }
            cols += b.cols;
        }
        let mut out = Self::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            for r in 0..rows {
                for c in 0..b.cols {
                    out.set(r, offset + c, b.get(r, c));
                }
            }
            offset += b.cols;
        }
        Ok(out)
    }

    /// Matrix with the first `width` columns of `self`, padded with zero
    /// columns on the right when `width > cols`.
    pub fn resized_columns(&self, width: usize) -> Self {
        let mut out = Self::zeros(self.rows, width);
        for r in 0..self.rows {
            for c in 0..width.min(self.cols) {
                out.set(r, c, self.get(r, c));
            }
        }
        out
    }

    /// The independent columns picked left to right, forming a basis of the
    /// column span.
    pub fn column_basis(&self, field: FieldSpec) -> Self {
        let mut span = EchelonBasis::new(self.rows, field);
        let mut keep = Vec::new();
        for col in self.columns() {
            if span.insert(&col) {
                keep.push(col);
            }
        }
        Self::from_columns(self.rows, &keep).expect("columns share the row count")
    }
}

/// Rank by row reduction.
pub fn mat_rank(m: &FqMatrix, field: FieldSpec) -> usize {
    let mut work = m.clone();
    row_reduce(&mut work, field, m.cols).len()
}

/// Reduces `m` in place to reduced row echelon form, considering only the
/// first `pivot_cols` columns as pivot candidates. Returns the pivot columns.
fn row_reduce(m: &mut FqMatrix, field: FieldSpec, pivot_cols: usize) -> Vec<usize> {
    let cols = m.cols;
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..pivot_cols {
        if row == m.rows {
            break;
        }
        let Some(found) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
            continue;
        };
        if found != row {
            for c in 0..cols {
                m.data.swap(found * cols + c, row * cols + c);
            }
        }
        let inv = field.inv(m.get(row, col));
        field.scale(&mut m.data[row * cols..(row + 1) * cols], inv);
        let pivot_row: Vec<u32> = m.row(row).to_vec();
        for r in 0..m.rows {
            if r != row {
                let c = m.get(r, col);
                field.sub_scaled(&mut m.data[r * cols..(r + 1) * cols], &pivot_row, c);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Dimension of the sum of the column spans of `mats`.
pub fn subspace_sum_dim(mats: &[&FqMatrix], field: FieldSpec) -> Result<usize, LinalgError> {
    let Some(first) = mats.first() else {
        return Ok(0);
    };
    let joined = FqMatrix::hcat(first.rows, mats)?;
    Ok(mat_rank(&joined, field))
}

/// Finds some `X` with `a * X == b`, or `None` when a column of `b` is outside
/// the column span of `a`.
pub fn solve_right(
    a: &FqMatrix,
    b: &FqMatrix,
    field: FieldSpec,
) -> Result<Option<FqMatrix>, LinalgError> {
    if a.rows != b.rows {
        return Err(LinalgError::RowMismatch { left: a.rows, right: b.rows });
    }
    let mut aug = FqMatrix::hcat(a.rows, &[a, b])?;
    let pivots = row_reduce(&mut aug, field, a.cols);
    // Rows below the pivot block must be zero on the right-hand side.
    for r in pivots.len()..aug.rows {
        if (a.cols..aug.cols).any(|c| aug.get(r, c) != 0) {
            return Ok(None);
        }
    }
    let mut x = FqMatrix::zeros(a.cols, b.cols);
    for (r, &pc) in pivots.iter().enumerate() {
        for c in 0..b.cols {
            x.set(pc, c, aug.get(r, a.cols + c));
        }
    }
    Ok(Some(x))
}

pub fn invert(b: &FqMatrix, field: FieldSpec) -> Result<Option<FqMatrix>, LinalgError> {
    if b.rows != b.cols {
        return Err(LinalgError::NotSquare { rows: b.rows, cols: b.cols });
    }
    if mat_rank(b, field) < b.rows {
        return Ok(None);
    }
    solve_right(b, &FqMatrix::identity(b.rows), field)
}

/// Incrementally maintained basis of a subspace of `F_p^dim`, kept in fully
/// reduced echelon form so membership is a single reduction pass.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    field: FieldSpec,
    dim: usize,
    vectors: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(dim: usize, field: FieldSpec) -> Self {
        Self { field, dim, vectors: Vec::new(), pivots: Vec::new() }
    }

    /// Dimension of the spanned subspace.
    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[Vec<u32>] {
        &self.vectors
    }

    fn reduce(&self, v: &mut [u32]) {
        for (b, &p) in self.vectors.iter().zip(&self.pivots) {
            let c = v[p];
            self.field.sub_scaled(v, b, c);
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span. Returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(w[p]);
        self.field.scale(&mut w, inv);
        for b in self.vectors.iter_mut() {
            let c = b[p];
            self.field.sub_scaled(b, &w, c);
        }
        self.vectors.push(w);
        self.pivots.push(p);
        true
    }

    /// Inserts every column of `m`; returns the number of new dimensions.
    pub fn insert_columns(&mut self, m: &FqMatrix) -> usize {
        m.columns().filter(|c| self.insert(c)).count()
    }

    pub fn contains_columns(&self, m: &FqMatrix) -> bool {
        m.columns().all(|c| self.contains(&c))
    }
}
