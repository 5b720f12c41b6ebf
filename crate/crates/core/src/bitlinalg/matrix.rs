use std::fmt;

use super::{BitLinAlgError, BitVector};

/// Upper bound on `rows * cols` for dense verification matrices.
pub const MAX_DENSE_ENTRIES: usize = 1 << 24;

/// Dense row-major matrix over F₂, meant for verification-scale instances.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: Vec<BitVector>,
    cols: usize,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self, BitLinAlgError> {
        if rows.saturating_mul(cols) > MAX_DENSE_ENTRIES {
            return Err(BitLinAlgError::MatrixTooLarge { rows, cols });
        }
        Ok(Self {
            rows: vec![BitVector::zeros(cols); rows],
            cols,
        })
    }

    pub fn identity(size: usize) -> Result<Self, BitLinAlgError> {
        let mut m = Self::zeros(size, size)?;
        for i in 0..size {
            m.set(i, i, true);
        }
        Ok(m)
    }

    pub fn from_rows(rows: Vec<BitVector>, cols: usize) -> Result<Self, BitLinAlgError> {
        if rows.len().saturating_mul(cols) > MAX_DENSE_ENTRIES {
            return Err(BitLinAlgError::MatrixTooLarge {
                rows: rows.len(),
                cols,
            });
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(BitLinAlgError::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self { rows, cols })
    }

    /// Builds the matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[BitVector], rows: usize) -> Result<Self, BitLinAlgError> {
        let mut m = Self::zeros(rows, columns.len())?;
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(BitLinAlgError::DimensionMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
            for i in c.ones_positions() {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn row_vectors(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    pub fn column(&self, j: usize) -> BitVector {
        let mut c = BitVector::zeros(self.rows());
        for (i, r) in self.rows.iter().enumerate() {
            if r.get(j) {
                c.set(i, true);
            }
        }
        c
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self {
            rows: vec![BitVector::zeros(self.rows()); self.cols],
            cols: self.rows(),
        };
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones_positions() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    /// `y = M x` over F₂.
    pub fn mul_vec(&self, x: &BitVector) -> Result<BitVector, BitLinAlgError> {
        if x.len() != self.cols {
            return Err(BitLinAlgError::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        let mut y = BitVector::zeros(self.rows());
        for (i, r) in self.rows.iter().enumerate() {
            if r.dot(x) {
                y.set(i, true);
            }
        }
        Ok(y)
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &Self) -> Result<Self, BitLinAlgError> {
        if self.cols != rhs.rows() {
            return Err(BitLinAlgError::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows(),
            });
        }
        let mut out = Self::zeros(self.rows(), rhs.cols)?;
        for (i, r) in self.rows.iter().enumerate() {
            for k in r.ones_positions() {
                out.rows[i] ^= &rhs.rows[k];
            }
        }
        Ok(out)
    }

    /// `(self | rhs)`.
    pub fn hstack(&self, rhs: &Self) -> Result<Self, BitLinAlgError> {
        if self.rows() != rhs.rows() {
            return Err(BitLinAlgError::DimensionMismatch {
                expected: self.rows(),
                found: rhs.rows(),
            });
        }
        let rows = self
            .rows
            .iter()
            .zip(&rhs.rows)
            .map(|(a, b)| BitVector::concat(&[a, b]))
            .collect();
        Self::from_rows(rows, self.cols + rhs.cols)
    }

    /// `self` on top of `rhs`.
    pub fn vstack(&self, rhs: &Self) -> Result<Self, BitLinAlgError> {
        if self.cols != rhs.cols {
            return Err(BitLinAlgError::DimensionMismatch {
                expected: self.cols,
                found: rhs.cols,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(rhs.rows.iter().cloned());
        Self::from_rows(rows, self.cols)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }

    /// Reduced row echelon form; returns the reduced rows and the pivot columns.
    pub fn row_echelon(&self) -> (Vec<BitVector>, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
                continue;
            };
            rows.swap(r, p);
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    *row ^= &pivot;
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        (rows, pivots)
    }

    pub fn rank(&self) -> usize {
        self.row_echelon().1.len()
    }

    /// Basis of `{x : M x = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        let (rref, pivots) = self.row_echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVector::zeros(self.cols);
            v.set(free, true);
            for (row, &p) in rref.iter().zip(&pivots) {
                if row.get(free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Dense matrix-vector product `y_i = XOR_j M_ij x_j`.
pub fn dense_mul(m: &BitMatrix, x: &BitVector) -> Result<BitVector, BitLinAlgError> {
    m.mul_vec(x)
}

/// Calls `visit` on every element of the span of `basis` (including zero), in Gray-code order.
pub fn for_each_in_span(basis: &[BitVector], len: usize, mut visit: impl FnMut(&BitVector)) {
    assert!(basis.len() < 63, "span too large to enumerate");
    let mut cur = BitVector::zeros(len);
    visit(&cur);
    for i in 1u64..(1u64 << basis.len()) {
        let flip = i.trailing_zeros() as usize;
        cur ^= &basis[flip];
        visit(&cur);
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}
