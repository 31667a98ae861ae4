//! Dense exact linear algebra over any [`Field`].
//!
//! Elimination always pivots on the first nonzero entry of the column, which
//! keeps pivot choices (and therefore quotient bases) deterministic.

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(f: &F, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![f.zero(); rows * cols] }
    }

    pub fn identity(f: &F, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Input("ragged matrix rows".into()));
        }
        let n = rows.len();
        Ok(Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Like [`Matrix::from_rows`] but with an explicit column count, so that
    /// matrices with zero rows keep their width.
    pub fn from_rows_with_cols(cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Input("ragged matrix rows".into()));
        }
        let n = rows.len();
        Ok(Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [F::Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.rows, cols: cols.len(), data }
    }

    pub fn stack(f: &F, blocks: &[Matrix<F>], cols: usize) -> Self {
        let mut m = Matrix::zeros(f, 0, cols);
        for b in blocks {
            assert_eq!(b.cols, cols);
            m.data.extend(b.data.iter().cloned());
            m.rows += b.rows;
        }
        m
    }

    pub fn mul(&self, f: &F, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != other.rows {
            return Err(Error::Degree(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !f.is_zero(b) {
                        let idx = i * out.cols + j;
                        f.mul_add_assign(&mut out.data[idx], a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, f: &F, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        f.mul_add_assign(&mut acc, a, b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self, f: &F) -> bool {
        self.data.iter().all(|x| f.is_zero(x))
    }

    pub fn equal(&self, f: &F, other: &Matrix<F>) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| f.equal(a, b))
    }
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

pub fn rref<F: Field>(f: &F, m: &Matrix<F>) -> Rref<F> {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !f.is_zero(a.get(i, c))) else {
            continue;
        };
        if p != r {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = f.inv(a.get(r, c)).expect("pivot is nonzero");
        for j in c..a.cols {
            let v = f.mul(a.get(r, j), &inv);
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r || f.is_zero(a.get(i, c)) {
                continue;
            }
            let factor = f.neg(a.get(i, c));
            for j in c..a.cols {
                if f.is_zero(a.get(r, j)) {
                    continue;
                }
                let idx = i * a.cols + j;
                let rv = a.data[r * a.cols + j].clone();
                f.mul_add_assign(&mut a.data[idx], &factor, &rv);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { matrix: a, pivots }
}

/// Forward elimination only; the generic rank used by [`Field::matrix_rank`].
pub fn gauss_rank<F: Field>(f: &F, m: &Matrix<F>) -> usize {
    let mut a = m.clone();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !f.is_zero(a.get(i, c))) else {
            continue;
        };
        if p != r {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = f.inv(a.get(r, c)).expect("pivot is nonzero");
        for i in r + 1..a.rows {
            if f.is_zero(a.get(i, c)) {
                continue;
            }
            let factor = f.neg(&f.mul(a.get(i, c), &inv));
            for j in c..a.cols {
                if f.is_zero(a.get(r, j)) {
                    continue;
                }
                let idx = i * a.cols + j;
                let rv = a.data[r * a.cols + j].clone();
                f.mul_add_assign(&mut a.data[idx], &factor, &rv);
            }
        }
        r += 1;
    }
    r
}

pub fn gauss_det<F: Field>(f: &F, m: &Matrix<F>) -> F::Elem {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    let mut a = m.clone();
    let mut det = f.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !f.is_zero(a.get(i, c))) else {
            return f.zero();
        };
        if p != c {
            for j in 0..n {
                a.data.swap(p * n + j, c * n + j);
            }
            det = f.neg(&det);
        }
        let piv = a.get(c, c).clone();
        det = f.mul(&det, &piv);
        let inv = f.inv(&piv).expect("pivot is nonzero");
        for i in c + 1..n {
            if f.is_zero(a.get(i, c)) {
                continue;
            }
            let factor = f.neg(&f.mul(a.get(i, c), &inv));
            for j in c..n {
                let idx = i * n + j;
                let rv = a.data[c * n + j].clone();
                f.mul_add_assign(&mut a.data[idx], &factor, &rv);
            }
        }
    }
    det
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F>) -> usize {
    f.matrix_rank(m)
}

pub fn determinant<F: Field>(f: &F, m: &Matrix<F>) -> Result<F::Elem> {
    if m.rows != m.cols {
        return Err(Error::Input(format!("determinant of a {}x{} matrix", m.rows, m.cols)));
    }
    Ok(f.matrix_det(m))
}

/// Scales `v` so that its first nonzero entry is 1.
pub fn normalize_leading<F: Field>(f: &F, v: &mut [F::Elem]) {
    if let Some(lead) = v.iter().find(|x| !f.is_zero(x)).cloned() {
        let inv = f.inv(&lead).expect("nonzero");
        for x in v.iter_mut() {
            if !f.is_zero(x) {
                *x = f.mul(x, &inv);
            }
        }
    }
}

/// Right kernel basis, one vector per free column, each with leading
/// coefficient 1.
pub fn kernel<F: Field>(f: &F, m: &Matrix<F>) -> Vec<Vec<F::Elem>> {
    let r = rref(f, m);
    let mut is_pivot = vec![None; m.cols];
    for (i, &c) in r.pivots.iter().enumerate() {
        is_pivot[c] = Some(i);
    }
    let mut basis = Vec::new();
    for free in 0..m.cols {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut v = vec![f.zero(); m.cols];
        v[free] = f.one();
        for (i, &c) in r.pivots.iter().enumerate() {
            v[c] = f.neg(r.matrix.get(i, free));
        }
        normalize_leading(f, &mut v);
        basis.push(v);
    }
    basis
}

pub fn rank_kernel<F: Field>(f: &F, m: &Matrix<F>) -> (usize, Vec<Vec<F::Elem>>) {
    let k = kernel(f, m);
    (m.cols - k.len(), k)
}

/// One solution of `m x = b` (free variables set to zero), or `None` when the
/// system is inconsistent.
pub fn solve<F: Field>(f: &F, m: &Matrix<F>, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
    if b.len() != m.rows {
        return Err(Error::Input("right-hand side length mismatch".into()));
    }
    let mut rows = m.to_rows();
    for (row, rhs) in rows.iter_mut().zip(b) {
        row.push(rhs.clone());
    }
    let aug = Matrix::<F>::from_rows_with_cols(m.cols + 1, rows)?;
    let r = rref(f, &aug);
    if r.pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![f.zero(); m.cols];
    for (i, &c) in r.pivots.iter().enumerate() {
        x[c] = r.matrix.get(i, m.cols).clone();
    }
    Ok(Some(x))
}

/// Incrementally maintained reduced row echelon basis of a row space.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    cols: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
    row_of_col: Vec<Option<usize>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(cols: usize) -> Self {
        Echelon { cols, rows: Vec::new(), pivots: Vec::new(), row_of_col: vec![None; cols] }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.row_of_col[col].is_some()
    }

    /// Echelon row whose pivot is `col`, if any.
    pub fn pivot_row(&self, col: usize) -> Option<&[F::Elem]> {
        self.row_of_col[col].map(|i| self.rows[i].as_slice())
    }

    /// Subtracts the span so that `v` is zero on every pivot column.
    pub fn reduce(&self, f: &F, v: &mut [F::Elem]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = f.neg(&v[p]);
            for (x, r) in v.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    f.mul_add_assign(x, &c, r);
                }
            }
        }
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, f: &F, mut v: Vec<F::Elem>) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        if self.is_full() {
            return false;
        }
        self.reduce(f, &mut v);
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[p]).expect("nonzero");
        for x in v.iter_mut() {
            if !f.is_zero(x) {
                *x = f.mul(x, &inv);
            }
        }
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[p]) {
                continue;
            }
            let c = f.neg(&row[p]);
            for (x, r) in row.iter_mut().zip(&v) {
                if !f.is_zero(r) {
                    f.mul_add_assign(x, &c, r);
                }
            }
        }
        self.row_of_col[p] = Some(self.rows.len());
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn insert_sparse(&mut self, f: &F, entries: &[(usize, F::Elem)]) -> bool {
        if self.is_full() {
            return false;
        }
        let mut v = vec![f.zero(); self.cols];
        for (c, x) in entries {
            v[*c] = f.add(&v[*c], x);
        }
        self.insert(f, v)
    }

    /// Columns that are not pivots, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.cols).filter(|&c| self.row_of_col[c].is_none()).collect()
    }
}
