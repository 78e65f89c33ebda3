use std::fmt;

use crate::error::{Error, Result};

use super::field::Field;

/// Dense row-major matrix over an exact field.
#[derive(Clone)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("data", &self.data)
            .finish()
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Self {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from explicit rows; every row must have `cols` entries.
    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self {
            field: field.clone(),
            rows: n,
            cols,
            data,
        })
    }

    /// Convenience constructor from integer literals, interpreted in `field`.
    pub fn from_i64_rows(field: &F, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::from_rows(field, cols, rows).expect("ragged integer rows")
    }

    pub fn field(&self) -> &F {
        &self.field
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

    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: &[F::Elem]) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: row.len(),
            });
        }
        self.data.extend_from_slice(row);
        self.rows += 1;
        Ok(())
    }

    /// Stacks `others` below `self`.
    pub fn vstack<'a>(&self, others: impl IntoIterator<Item = &'a Matrix<F>>) -> Result<Self>
    where
        F: 'a,
    {
        let mut out = self.clone();
        for m in others {
            if m.cols != self.cols {
                return Err(Error::DimensionMismatch {
                    expected: self.cols,
                    got: m.cols,
                });
            }
            out.data.extend_from_slice(&m.data);
            out.rows += m.rows;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = f.mul(a, other.get(l, j));
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &prod);
                }
            }
        }
        Ok(out)
    }

    /// `self · v`, for a column vector `v`.
    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let c = self.cols;
        let (lo, hi) = (a.min(b), a.max(b));
        let (top, bottom) = self.data.split_at_mut(hi * c);
        top[lo * c..(lo + 1) * c].swap_with_slice(&mut bottom[..c]);
    }

    /// `row[target] -= factor * row[source]` on columns `from..`.
    fn eliminate(&mut self, target: usize, source: usize, factor: &F::Elem, from: usize) {
        let c = self.cols;
        let f = &self.field;
        let (src, dst) = if source < target {
            let (top, bottom) = self.data.split_at_mut(target * c);
            (&top[source * c..(source + 1) * c], &mut bottom[..c])
        } else {
            let (top, bottom) = self.data.split_at_mut(source * c);
            (
                &bottom[..c] as &[F::Elem],
                &mut top[target * c..(target + 1) * c],
            )
        };
        for j in from..c {
            if !f.is_zero(&src[j]) {
                dst[j] = f.sub(&dst[j], &f.mul(factor, &src[j]));
            }
        }
    }

    /// In-place Gaussian elimination. With `reduce` the result is the reduced
    /// row echelon form; otherwise only the entries below each pivot are
    /// cleared. Returns the pivot columns.
    fn echelonize(&mut self, reduce: bool) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.field.is_zero(self.get(i, c))) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.field.inv(self.get(r, c)).expect("nonzero pivot");
            if reduce {
                let base = r * self.cols;
                for j in c..self.cols {
                    self.data[base + j] = self.field.mul(&self.data[base + j], &inv);
                }
            }
            let start = if reduce { 0 } else { r + 1 };
            for i in start..self.rows {
                if i == r || self.field.is_zero(self.get(i, c)) {
                    continue;
                }
                let factor = if reduce {
                    self.get(i, c).clone()
                } else {
                    self.field.mul(self.get(i, c), &inv)
                };
                self.eliminate(i, r, &factor, c);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Rank by plain Gaussian elimination, regardless of the field's preferred
    /// strategy.
    pub fn gaussian_rank(&self) -> usize {
        self.clone().echelonize(false).len()
    }

    /// Exact rank, using the elimination strategy of the field.
    pub fn rank(&self) -> usize {
        self.field.rank(self)
    }

    /// Reduced row echelon form together with its pivot columns. Zero rows are
    /// kept at the bottom.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.echelonize(true);
        (m, pivots)
    }

    /// A basis of the row space, in reduced echelon form.
    pub fn row_space_basis(&self) -> Matrix<F> {
        let (mut m, pivots) = self.rref();
        m.data.truncate(pivots.len() * m.cols);
        m.rows = pivots.len();
        m
    }

    /// A basis of `{x : self · xᵀ = 0}`, one vector per free column.
    pub fn nullspace_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let (m, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&j| !is_pivot[j])
            .map(|free| {
                let mut v = vec![f.zero(); self.cols];
                v[free] = f.one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(m.get(r, free));
                }
                v
            })
            .collect()
    }

    /// The nullspace basis packed as the rows of a matrix.
    pub fn nullspace_matrix(&self) -> Matrix<F> {
        let rows = self.nullspace_basis();
        Matrix::from_rows(&self.field, self.cols, rows).expect("nullspace rows have cols entries")
    }

    /// Whether `v` lies in the row space of `self`.
    pub fn contains(&self, v: &[F::Elem]) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let before = self.rank();
        let mut ext = self.clone();
        ext.push_row(v)?;
        Ok(ext.rank() == before)
    }

    /// Whether both matrices span the same row space.
    pub fn same_row_space(&self, other: &Matrix<F>) -> bool {
        self.cols == other.cols && self.row_space_basis() == other.row_space_basis()
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Result<F::Elem> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let f = self.field.clone();
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                return Ok(f.zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = f.neg(&det);
            }
            det = f.mul(&det, m.get(c, c));
            let inv = f.inv(m.get(c, c)).expect("nonzero pivot");
            for i in c + 1..m.rows {
                if f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = f.mul(m.get(i, c), &inv);
                m.eliminate(i, c, &factor, c);
            }
        }
        Ok(det)
    }

    /// The submatrix formed by the given columns, in that order.
    pub fn select_columns(&self, columns: &[usize]) -> Matrix<F> {
        let rows = (0..self.rows)
            .map(|i| columns.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect();
        Matrix::from_rows(&self.field, columns.len(), rows).expect("selected rows are uniform")
    }
}

/// Rank of `m`.
pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    m.rank()
}

/// Basis of the right nullspace of `m`.
pub fn nullspace_basis<F: Field>(m: &Matrix<F>) -> Vec<Vec<F::Elem>> {
    m.nullspace_basis()
}

/// Whether `v` lies in the row space of `basis`.
pub fn contains<F: Field>(basis: &Matrix<F>, v: &[F::Elem]) -> Result<bool> {
    basis.contains(v)
}

/// Intersection of the row spaces of `bases`, as a reduced echelon basis.
///
/// Each row space is replaced by its annihilator; the intersection is the
/// annihilator of the stacked annihilators.
pub fn intersect_subspaces<F: Field>(bases: &[Matrix<F>], ambient_dim: usize) -> Result<Matrix<F>> {
    let first = bases.first().ok_or(Error::NoSubspaces)?;
    let field = first.field().clone();
    let mut annihilators = Matrix::zeros(&field, 0, ambient_dim);
    for b in bases {
        if b.cols() != ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                got: b.cols(),
            });
        }
        for v in b.nullspace_basis() {
            annihilators.push_row(&v)?;
        }
    }
    Ok(annihilators.nullspace_matrix().row_space_basis())
}
