use std::fmt;

use crate::scalars::Semiring;

use super::MatrixError;

/// Dense row-major matrix over a semiring.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<S>,
}

impl<S: Semiring> Matrix<S> {
    pub fn new(rows: usize, cols: usize, entries: Vec<S>) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::Length { rows, cols, found: entries.len() });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(MatrixError::Ragged { expected: c, found: bad.len() });
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    /// Permutation matrix sending basis vector `j` to `target(j)`.
    pub fn permutation(n: usize, target: impl Fn(usize) -> usize) -> Self {
        let mut m = Self::zeros(n, n);
        for j in 0..n {
            m.entries[target(j) * n + j] = S::one();
        }
        m
    }

    pub fn scalar(s: S) -> Self {
        Self { rows: 1, cols: 1, entries: vec![s] }
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

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row_vec(&self, i: usize) -> Vec<S> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn map<T: Semiring>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn try_map<T: Semiring, E>(&self, f: impl Fn(&S) -> Result<T, E>) -> Result<Matrix<T>, E> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>, E>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, entries })
    }

    /// Matrix product `self · rhs`. Zero entries are skipped.
    pub fn mul(&self, rhs: &Matrix<S>) -> Result<Matrix<S>, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::Shape { op: "product", left: self.shape(), right: rhs.shape() });
        }
        let mut out = vec![S::zero(); self.rows * rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.entries[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.entries[k * rhs.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let slot = &mut out[i * rhs.cols + j];
                    *slot = slot.add(&a.mul(b));
                }
            }
        }
        Ok(Matrix { rows: self.rows, cols: rhs.cols, entries: out })
    }

    pub fn add(&self, rhs: &Matrix<S>) -> Result<Matrix<S>, MatrixError> {
        if self.shape() != rhs.shape() {
            return Err(MatrixError::Shape { op: "sum", left: self.shape(), right: rhs.shape() });
        }
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.add(b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn scale(&self, s: &S) -> Matrix<S> {
        self.map(|x| s.mul(x))
    }

    /// Kronecker product: entry `(i1*b.rows + i2, j1*b.cols + j2)` is
    /// `a[i1,j1] * b[i2,j2]`.
    pub fn kron(&self, b: &Matrix<S>) -> Matrix<S> {
        let rows = self.rows * b.rows;
        let cols = self.cols * b.cols;
        let mut out = vec![S::zero(); rows * cols];
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..b.rows {
                    for j2 in 0..b.cols {
                        let y = b.get(i2, j2);
                        if y.is_zero() {
                            continue;
                        }
                        out[(i1 * b.rows + i2) * cols + j1 * b.cols + j2] = a.mul(y);
                    }
                }
            }
        }
        Matrix { rows, cols, entries: out }
    }

    /// Block-diagonal direct sum.
    pub fn dsum(&self, b: &Matrix<S>) -> Matrix<S> {
        let mut out = Matrix::zeros(self.rows + b.rows, self.cols + b.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, self.cols, b);
        out
    }

    fn paste(&mut self, r0: usize, c0: usize, block: &Matrix<S>) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    /// Stack blocks with equal column counts on top of each other.
    pub fn vstack(blocks: &[Matrix<S>]) -> Result<Matrix<S>, MatrixError> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        if let Some(b) = blocks.iter().find(|b| b.cols != cols) {
            return Err(MatrixError::Shape { op: "vstack", left: (0, cols), right: b.shape() });
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let entries = blocks.iter().flat_map(|b| b.entries.iter().cloned()).collect();
        Ok(Matrix { rows, cols, entries })
    }

    /// Concatenate blocks with equal row counts side by side.
    pub fn hstack(blocks: &[Matrix<S>]) -> Result<Matrix<S>, MatrixError> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        if let Some(b) = blocks.iter().find(|b| b.rows != rows) {
            return Err(MatrixError::Shape { op: "hstack", left: (rows, 0), right: b.shape() });
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut c0 = 0;
        for b in blocks {
            out.paste(0, c0, b);
            c0 += b.cols;
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix<S> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn conjugate(&self) -> Matrix<S> {
        self.map(S::involution)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix<S> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).involution())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.rows) && self.is_square()
    }

    /// `U·U† = 1` and `U†·U = 1`.
    pub fn is_unitary(&self) -> bool {
        let adj = self.adjoint();
        matches!(self.mul(&adj), Ok(p) if p.is_identity()) && matches!(adj.mul(self), Ok(p) if p.is_identity())
    }

    pub fn trace(&self) -> Result<S, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare(self.shape()));
        }
        Ok((0..self.rows).fold(S::zero(), |acc, k| acc.add(self.get(k, k))))
    }

    /// Partial trace over a `C` factor: for `self : A⊗C → B⊗C`, entry
    /// `(b, a)` is `Σ_c self[b*dim_c + c, a*dim_c + c]`.
    pub fn partial_trace(&self, dim_a: usize, dim_b: usize, dim_c: usize) -> Result<Matrix<S>, MatrixError> {
        if self.rows != dim_b * dim_c || self.cols != dim_a * dim_c {
            return Err(MatrixError::Shape {
                op: "partial trace",
                left: self.shape(),
                right: (dim_b * dim_c, dim_a * dim_c),
            });
        }
        Ok(Matrix::from_fn(dim_b, dim_a, |b, a| {
            (0..dim_c).fold(S::zero(), |acc, c| acc.add(self.get(b * dim_c + c, a * dim_c + c)))
        }))
    }

    /// Position of the first differing entry, in row-major order.
    pub fn first_difference(&self, other: &Matrix<S>) -> Option<(usize, usize)> {
        if self.shape() != other.shape() {
            return Some((0, 0));
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .position(|(a, b)| a != b)
            .map(|k| (k / self.cols.max(1), k % self.cols.max(1)))
    }

    pub fn is_column(&self) -> bool {
        self.cols == 1
    }

    /// The single entry of a 1×1 matrix.
    pub fn as_scalar(&self) -> Result<S, MatrixError> {
        if self.shape() != (1, 1) {
            return Err(MatrixError::NotScalar(self.shape()));
        }
        Ok(self.entries[0].clone())
    }
}

/// `⟨ψ|φ⟩ = ψ† φ` for column vectors of equal length.
pub fn inner_product<S: Semiring>(psi: &Matrix<S>, phi: &Matrix<S>) -> Result<S, MatrixError> {
    if !psi.is_column() || !phi.is_column() || psi.rows != phi.rows {
        return Err(MatrixError::Shape { op: "inner product", left: psi.shape(), right: phi.shape() });
    }
    psi.adjoint().mul(phi)?.as_scalar()
}

impl<S: Semiring> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
