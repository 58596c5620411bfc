use super::scalar::Scalar;
use super::Vector;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Dense matrix over the rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::dim("ragged rows in matrix literal"));
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from machine integers, mostly for tests and
    /// fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Matrix::from_fn(nrows, ncols, |r, c| Scalar::from_int(rows[r][c]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| c * a).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::dim(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let cur = out.get(r, c) + &(a * other.get(k, c));
                    out.set(r, c, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector> {
        if self.cols != v.len() {
            return Err(Error::dim(format!(
                "cannot apply {}x{} to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![Scalar::zero(); self.rows];
        for r in 0..self.rows {
            let mut acc = Scalar::zero();
            for c in 0..self.cols {
                let a = self.get(r, c);
                if !a.is_zero() && !v[c].is_zero() {
                    acc = acc + a * &v[c];
                }
            }
            out[r] = acc;
        }
        Ok(out)
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::dim(format!(
                "shape mismatch: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Reduced row echelon form; returns the reduced rows together with the
    /// pivot column of each pivot row.
    fn rref(&self) -> (Vec<Vector>, Vec<usize>) {
        let mut m: Vec<Vector> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            // First nonzero entry at or below pivot_row in this column.
            let Some(found) = (pivot_row..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(pivot_row, found);
            let inv = m[pivot_row][col].inv().expect("pivot is nonzero");
            for x in m[pivot_row].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..self.rows {
                if r != pivot_row && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    for c in 0..self.cols {
                        let sub = &factor * &m[pivot_row][c];
                        m[r][c] = &m[r][c] - &sub;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
            if pivot_row == self.rows {
                break;
            }
        }
        (m, pivots)
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : Ax = 0}`, one vector per free column,
    /// free columns in ascending order. Deterministic for a given matrix.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let (m, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -&m[prow][free];
            }
            basis.push(v);
        }
        basis
    }

    /// One exact solution of `Ax = b` (free variables set to zero), or `None`
    /// when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vector>> {
        if b.len() != self.rows {
            return Err(Error::dim(format!(
                "solve: matrix has {} rows but rhs has length {}",
                self.rows,
                b.len()
            )));
        }
        // Eliminate on the augmented matrix.
        let mut aug = Matrix::zero(self.rows, self.cols + 1);
        aug.set_block(0, 0, self);
        for r in 0..self.rows {
            aug.set(r, self.cols, b[r].clone());
        }
        let (m, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None); // A pivot in the augmented column: inconsistent.
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = m[prow][self.cols].clone();
        }
        Ok(Some(x))
    }

    /// True when the columns of `other` span the same solution behavior,
    /// i.e. `self * x = 0` for every column `x` of `other`.
    pub fn annihilates(&self, other: &Matrix) -> Result<bool> {
        Ok(self.mul(other)?.is_zero())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Scalar>>,
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixWire {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows).map(|r| self.row(r).to_vec()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = MatrixWire::deserialize(d)?;
        if wire.entries.len() != wire.rows
            || wire.entries.iter().any(|r| r.len() != wire.cols)
        {
            return Err(serde::de::Error::custom(format!(
                "matrix declared {}x{} but entries disagree",
                wire.rows, wire.cols
            )));
        }
        Ok(Matrix {
            rows: wire.rows,
            cols: wire.cols,
            data: wire.entries.into_iter().flatten().collect(),
        })
    }
}

/// A linear map `ℚ^src → ℚ^dst`, stored as its matrix in the standard bases.
/// Column `j` is the image of the `j`-th source basis vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearOp {
    matrix: Matrix,
}

impl LinearOp {
    pub fn new(matrix: Matrix) -> Self {
        LinearOp { matrix }
    }

    pub fn zero(dst: usize, src: usize) -> Self {
        LinearOp::new(Matrix::zero(dst, src))
    }

    pub fn identity(n: usize) -> Self {
        LinearOp::new(Matrix::identity(n))
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        LinearOp::new(Matrix::from_i64(rows))
    }

    pub fn src_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn dst_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_endo(&self) -> bool {
        self.src_dim() == self.dst_dim()
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vector> {
        self.matrix.mul_vec(v)
    }

    /// Image of the `j`-th source basis vector.
    pub fn apply_basis(&self, j: usize) -> Vector {
        self.matrix.col(j)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearOp) -> Result<LinearOp> {
        Ok(LinearOp::new(self.matrix.mul(&other.matrix)?))
    }

    pub fn add(&self, other: &LinearOp) -> Result<LinearOp> {
        Ok(LinearOp::new(self.matrix.add(&other.matrix)?))
    }

    pub fn sub(&self, other: &LinearOp) -> Result<LinearOp> {
        Ok(LinearOp::new(self.matrix.sub(&other.matrix)?))
    }

    pub fn neg(&self) -> LinearOp {
        LinearOp::new(self.matrix.neg())
    }

    pub fn scale(&self, c: &Scalar) -> LinearOp {
        LinearOp::new(self.matrix.scale(c))
    }

    /// `self ∘ other - other ∘ self`; both must be endomorphisms of the same
    /// space.
    pub fn commutator(&self, other: &LinearOp) -> Result<Matrix> {
        let ab = self.matrix.mul(&other.matrix)?;
        let ba = other.matrix.mul(&self.matrix)?;
        ab.sub(&ba)
    }

    pub fn commutes_with(&self, other: &LinearOp) -> Result<bool> {
        Ok(self.commutator(other)?.is_zero())
    }
}
