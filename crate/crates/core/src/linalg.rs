//! Dense exact matrices: echelon forms, rank, determinant, kernel, inverse and
//! the rank normal form `A = Pᵀ·B_r·Q`.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::fields::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Output of [`Matrix::rref`]: `reduced = transform · m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
    pub transform: Matrix,
}

/// `a = pᵀ · B_rank · q` with `p`, `q` invertible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankNormalForm {
    pub p: Matrix,
    pub q: Matrix,
    pub rank: usize,
}

impl Matrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(field, bad.field()));
        }
        Ok(Self {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from small integers (reduced into the field).
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| field.from_i64(x)))
            .collect();
        Self::new(field, rows.len(), cols, data)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: FieldSpec, len: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Self::zeros(field, len, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != len {
                return Err(Error::DimensionMismatch(format!(
                    "column of length {} != {len}",
                    c.len()
                )));
            }
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        if let Some(bad) = m.data.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(field, bad.field()));
        }
        Ok(m)
    }

    pub fn from_rows(field: FieldSpec, len: usize, rows: &[Vec<Scalar>]) -> Result<Self> {
        let data: Vec<Scalar> = rows.iter().flat_map(|r| r.iter().cloned()).collect();
        if rows.iter().any(|r| r.len() != len) {
            return Err(Error::DimensionMismatch(format!("row length != {len}")));
        }
        Self::new(field, rows.len(), len, data)
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    /// `B_r`: ones at `(0,0), …, (r−1,r−1)`, zeros elsewhere.
    pub fn rank_normal(field: FieldSpec, rows: usize, cols: usize, r: usize) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for i in 0..r.min(rows).min(cols) {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
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

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Scalar> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{} columns vs vector of length {}",
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Self::zeros(self.field, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * &other[(k, l)];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Gauss–Jordan elimination. The pivot of each column is the first
    /// nonzero entry at or below the current row.
    pub fn rref(&self) -> Rref {
        let mut r = self.clone();
        let mut t = Matrix::identity(self.field, self.rows);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&i| !r[(i, col)].is_zero()) else {
                continue;
            };
            r.swap_rows(row, pr);
            t.swap_rows(row, pr);
            let inv = r[(row, col)].inv().expect("pivot is nonzero");
            r.scale_row(row, &inv);
            t.scale_row(row, &inv);
            for i in 0..self.rows {
                if i != row && !r[(i, col)].is_zero() {
                    let f = r[(i, col)].clone();
                    r.sub_row_multiple(i, row, &f);
                    t.sub_row_multiple(i, row, &f);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref {
            reduced: r,
            pivots,
            transform: t,
        }
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.field, self.cols);
        (0..self.rows).filter(|&i| ech.insert(self.row(i))).count()
    }

    pub fn det(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "det of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = self.field.one();
        for col in 0..n {
            let Some(pr) = (col..n).find(|&i| !m[(i, col)].is_zero()) else {
                return Ok(self.field.zero());
            };
            if pr != col {
                m.swap_rows(pr, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det = &det * &pivot;
            let inv = pivot.inv()?;
            for i in col + 1..n {
                if !m[(i, col)].is_zero() {
                    let f = &m[(i, col)] * &inv;
                    m.sub_row_multiple(i, col, &f);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "inverse of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let rr = self.rref();
        if rr.pivots.len() < self.rows {
            return Err(Error::SingularMatrix);
        }
        Ok(rr.transform)
    }

    /// Basis of `{x : self · x = 0}`, one vector per non-pivot column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let rr = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &rr.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&j| !is_pivot[j])
            .map(|free| {
                let mut x = vec![self.field.zero(); self.cols];
                x[free] = self.field.one();
                for (i, &p) in rr.pivots.iter().enumerate() {
                    x[p] = -&rr.reduced[(i, free)];
                }
                x
            })
            .collect()
    }

    /// Factors `self = pᵀ · B_r · q` by row reduction followed by column
    /// clearing and a column permutation bringing the pivots to the front.
    pub fn rank_normal_form(&self) -> RankNormalForm {
        let rr = self.rref();
        let rank = rr.pivots.len();
        // Column operations: clear non-pivot entries of each pivot row, then
        // permute pivot columns to positions 0..rank. `cols_op` accumulates
        // them so that rr.transform · self · cols_op = B_r.
        let mut cols_op = Matrix::identity(self.field, self.cols);
        let mut reduced = rr.reduced;
        for (i, &p) in rr.pivots.iter().enumerate() {
            for j in 0..self.cols {
                if j != p && !reduced[(i, j)].is_zero() {
                    let f = reduced[(i, j)].clone();
                    reduced.sub_col_multiple(j, p, &f);
                    cols_op.sub_col_multiple(j, p, &f);
                }
            }
        }
        let mut order: Vec<usize> = rr.pivots.clone();
        order.extend((0..self.cols).filter(|j| !rr.pivots.contains(j)));
        let mut perm = Matrix::zeros(self.field, self.cols, self.cols);
        for (new, &old) in order.iter().enumerate() {
            perm[(old, new)] = self.field.one();
        }
        let cols_op = cols_op.mul(&perm).expect("square");
        let row_inv = rr.transform.inverse().expect("row transform is invertible");
        let q = cols_op.inverse().expect("column transform is invertible");
        RankNormalForm {
            p: row_inv.transpose(),
            q,
            rank,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, i: usize, f: &Scalar) {
        for j in 0..self.cols {
            self[(i, j)] = &self[(i, j)] * f;
        }
    }

    // row[target] -= f * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, f: &Scalar) {
        for j in 0..self.cols {
            let s = &self[(source, j)];
            if !s.is_zero() {
                self[(target, j)] = &self[(target, j)] - &(f * s);
            }
        }
    }

    // col[target] -= f * col[source]
    fn sub_col_multiple(&mut self, target: usize, source: usize, f: &Scalar) {
        for i in 0..self.rows {
            let s = &self[(i, source)];
            if !s.is_zero() {
                self[(i, target)] = &self[(i, target)] - &(f * s);
            }
        }
    }

    /// Parses the `rows cols field` header followed by row-major tokens.
    pub fn parse(text: &str) -> Result<Matrix> {
        let mut tokens = text.split_whitespace();
        let mut next = |what: &str| {
            tokens
                .next()
                .ok_or_else(|| Error::Parse(format!("missing {what}")))
        };
        let rows: usize = next("rows")?
            .parse()
            .map_err(|_| Error::Parse("bad row count".into()))?;
        let cols: usize = next("cols")?
            .parse()
            .map_err(|_| Error::Parse("bad column count".into()))?;
        let field: FieldSpec = next("field")?.parse()?;
        let data = (0..rows * cols)
            .map(|_| field.parse_scalar(next("entry")?))
            .collect::<Result<Vec<_>>>()?;
        if tokens.next().is_some() {
            return Err(Error::Parse("trailing tokens after matrix entries".into()));
        }
        Matrix::new(field, rows, cols, data)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    let mut it = a.iter().zip(b);
    let Some((x, y)) = it.next() else {
        panic!("dot product of empty vectors has no field");
    };
    let mut acc = x * y;
    for (x, y) in it {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// Incrementally maintained row-echelon basis of a span; supports exact
/// membership tests and rank growth checks.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: FieldSpec,
    len: usize,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    pub fn new(field: FieldSpec, len: usize) -> Self {
        Self {
            field,
            len,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x = &*x - &(&f * r);
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v` to the span; returns `false` (and leaves the span unchanged)
    /// when `v` is already in it.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero");
        for x in r.iter_mut() {
            *x = &*x * &inv;
        }
        self.rows.push((p, r));
        true
    }
}

/// Rank of a family of equal-length vectors.
pub fn rank_of(field: FieldSpec, len: usize, vectors: &[Vec<Scalar>]) -> usize {
    let mut ech = Echelon::new(field, len);
    vectors.iter().filter(|v| ech.insert(v)).count()
}
