//! Dense exact matrices with zero-skipping Gauss-Jordan elimination.

use std::fmt;

use crate::scalar::{Field, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Vec<Scalar>>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in &self.data {
            let s: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {}", s.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![vec![field.zero(); cols]; rows],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i][i] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Matrix {
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        Matrix {
            field,
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    /// Builds a matrix from a row-major integer table.
    pub fn from_i64(field: Field, rows: &[Vec<i64>]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Matrix::from_rows(field, cols, data)
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn nrows(&self) -> usize {
        self.rows
    }
    pub fn ncols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r][c]
    }
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r][c] = v;
    }
    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r]
    }
    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.data
    }
    pub fn into_rows(self) -> Vec<Vec<Scalar>> {
        self.data
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        self.data.iter().map(|r| r[c].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for (i, r) in self.data.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                if !x.is_zero() {
                    t.data[j][i] = x.clone();
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] = &out.data[i][j] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !other.data[i][j].is_zero() {
                    out.data[i][j] = &out.data[i][j] + &other.data[i][j];
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let mut out = self.clone();
        for r in out.data.iter_mut() {
            for x in r.iter_mut() {
                if !x.is_zero() {
                    *x = &*x * s;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in r.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix::from_rows(self.field, self.cols, data)
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().chain(b.iter()).cloned().collect())
            .collect();
        Matrix::from_rows(self.field, self.cols + other.cols, data)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let data = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| self.data[r][c].clone()).collect())
            .collect();
        Matrix::from_rows(self.field, cols.len(), data)
    }

    /// Reduces in place to reduced row echelon form; returns pivot columns.
    /// Zero rows are dropped.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.data.len() {
                break;
            }
            let Some(p) = (r..self.data.len()).find(|&i| !self.data[i][c].is_zero()) else {
                continue;
            };
            self.data.swap(r, p);
            let inv = self.data[r][c].inv();
            if !inv.is_one() {
                for x in self.data[r][c..].iter_mut() {
                    if !x.is_zero() {
                        *x = &*x * &inv;
                    }
                }
            }
            let nz: Vec<usize> = (c..self.cols)
                .filter(|&j| !self.data[r][j].is_zero())
                .collect();
            let pivot_row = std::mem::take(&mut self.data[r]);
            for (i, row) in self.data.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for &j in &nz {
                    row[j] = &row[j] - &(&f * &pivot_row[j]);
                }
            }
            self.data[r] = pivot_row;
            pivots.push(c);
            r += 1;
        }
        self.data.truncate(r);
        self.rows = r;
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel `{v : A v = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[f] = self.field.one();
            for (k, &p) in pivots.iter().enumerate() {
                if !m.data[k][f].is_zero() {
                    v[p] = -&m.data[k][f];
                }
            }
            out.push(v);
        }
        out
    }

    /// Solves `A x = b`; returns one solution if consistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::from_rows(
            self.field,
            1,
            b.iter().map(|x| vec![x.clone()]).collect(),
        ));
        let mut m = aug;
        let pivots = m.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            x[p] = m.data[k][self.cols].clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.hstack(&Matrix::identity(self.field, n));
        let pivots = m.rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return None;
        }
        Some(m.submatrix(&(0..n).collect::<Vec<_>>(), &(n..2 * n).collect::<Vec<_>>()))
    }
}

/// Canonical basis (nonzero rows of the reduced echelon form) of the span of `vectors`.
pub fn canonical_basis(field: Field, dim: usize, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut m = Matrix::from_rows(field, dim, vectors.to_vec());
    m.rref();
    m.into_rows()
}

pub fn span_rank(field: Field, dim: usize, vectors: &[Vec<Scalar>]) -> usize {
    canonical_basis(field, dim, vectors).len()
}

/// Basis of the orthogonal complement of `span(vectors)` for the standard pairing.
pub fn orthogonal_complement(
    field: Field,
    dim: usize,
    vectors: &[Vec<Scalar>],
) -> Vec<Vec<Scalar>> {
    let m = Matrix::from_rows(field, dim, vectors.to_vec());
    canonical_basis(field, dim, &m.kernel())
}

/// Coordinates of `v` in the (linearly independent) `basis`, if it lies in the span.
pub fn express_in_basis(field: Field, basis: &[Vec<Scalar>], v: &[Scalar]) -> Option<Vec<Scalar>> {
    if basis.is_empty() {
        return if v.iter().all(|x| x.is_zero()) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let m = Matrix::from_rows(
        field,
        basis.len(),
        (0..v.len())
            .map(|i| basis.iter().map(|b| b[i].clone()).collect())
            .collect(),
    );
    m.solve(v)
}

/// Incrementally maintained subspace in reduced echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: Field, dim: usize) -> Echelon {
        Echelon {
            field,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors(field: Field, dim: usize, vectors: Vec<Vec<Scalar>>) -> Echelon {
        if vectors.is_empty() {
            return Echelon::new(field, dim);
        }
        let mut m = Matrix::from_rows(field, dim, vectors);
        let pivots = m.rref();
        Echelon {
            field,
            dim,
            rows: m.into_rows(),
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn pivot_row(&self, col: usize) -> Option<&Vec<Scalar>> {
        self.pivots.binary_search(&col).ok().map(|k| &self.rows[k])
    }

    /// Reduces `v` modulo the subspace; the result vanishes on all pivot columns.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (j, x) in row.iter().enumerate().skip(p) {
                if !x.is_zero() {
                    v[j] = &v[j] - &(&f * x);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv();
        let r: Vec<Scalar> = r.iter().map(|x| x * &inv).collect();
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (j, x) in r.iter().enumerate().skip(p) {
                    if !x.is_zero() {
                        row[j] = &row[j] - &(&f * x);
                    }
                }
            }
        }
        let k = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(k, p);
        self.rows.insert(k, r);
        true
    }

    /// Columns that are not pivots, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dim - self.rows.len());
        let mut k = 0;
        for c in 0..self.dim {
            if k < self.pivots.len() && self.pivots[k] == c {
                k += 1;
            } else {
                out.push(c);
            }
        }
        out
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn rank_and_kernel() {
        let m = Matrix::from_i64(q(), &[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_i64(q(), &[vec![2, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(q(), 2));
        let s = Matrix::from_i64(q(), &[vec![1, 1], vec![1, 1]]);
        assert!(s.inverse().is_none());
    }

    #[test]
    fn echelon_insert_matches_batch() {
        let vs = vec![
            vec![q().from_i64(0), q().from_i64(1), q().from_i64(1)],
            vec![q().from_i64(1), q().from_i64(1), q().from_i64(0)],
            vec![q().from_i64(1), q().from_i64(2), q().from_i64(1)],
        ];
        let mut e = Echelon::new(q(), 3);
        for v in &vs {
            e.insert(v);
        }
        let b = Echelon::from_vectors(q(), 3, vs.clone());
        assert_eq!(e.rows(), b.rows());
        assert_eq!(e.free_columns(), vec![2]);
    }

    #[test]
    fn complement_dimension() {
        let vs = vec![vec![q().from_i64(1), q().from_i64(-1), q().from_i64(0)]];
        let c = orthogonal_complement(q(), 3, &vs);
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn solve_inconsistent() {
        let m = Matrix::from_i64(q(), &[vec![1, 1], vec![1, 1]]);
        assert!(m.solve(&[q().from_i64(1), q().from_i64(2)]).is_none());
        assert!(m.solve(&[q().from_i64(3), q().from_i64(3)]).is_some());
    }
}
