use super::{cyclic_convolve_f2, BitLinAlgError, BitMatrix, BitVector};

/// An `m × (n − m)` Toeplitz matrix `T` with `T[i][j] = seed[j − i + m − 1]`.
///
/// The seed runs from the bottom-left corner (`seed[0]`) to the top-right
/// corner (`seed[n − 2]`), so it has `n − 1` bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToeplitzSpec {
    m: usize,
    n: usize,
    seed: BitVector,
}

impl ToeplitzSpec {
    pub fn new(m: usize, n: usize, seed: BitVector) -> Result<Self, BitLinAlgError> {
        if m == 0 || m >= n {
            return Err(BitLinAlgError::InvalidShape(format!(
                "need 1 <= m < n, got m={m}, n={n}"
            )));
        }
        if seed.len() != n - 1 {
            return Err(BitLinAlgError::DimensionMismatch {
                expected: n - 1,
                found: seed.len(),
            });
        }
        Ok(Self { m, n, seed })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n - self.m
    }

    pub fn seed(&self) -> &BitVector {
        &self.seed
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.seed.get(j + self.m - 1 - i)
    }

    /// The transpose, which is again Toeplitz: `(n − m) × m` with the seed reversed.
    pub fn transposed(&self) -> Self {
        Self {
            m: self.n - self.m,
            n: self.n,
            seed: self.seed.reversed(),
        }
    }

    /// First column of the `(n − 1) × (n − 1)` circulant that contains `T`
    /// as its top-left block.
    fn circulant_column(&self) -> BitVector {
        let (m, cols) = (self.rows(), self.cols());
        let len = self.n - 1;
        let mut c = BitVector::zeros(len);
        for t in 0..m {
            if self.seed.get(m - 1 - t) {
                c.set(t, true);
            }
        }
        for u in 1..cols {
            if self.seed.get(u + m - 1) {
                c.set(len - u, true);
            }
        }
        c
    }
}

/// `y = T x` via circulant embedding and one cyclic convolution.
pub fn toeplitz_mul(spec: &ToeplitzSpec, x: &BitVector) -> Result<BitVector, BitLinAlgError> {
    if x.len() != spec.cols() {
        return Err(BitLinAlgError::DimensionMismatch {
            expected: spec.cols(),
            found: x.len(),
        });
    }
    let len = spec.n - 1;
    let column = spec.circulant_column();
    let padded = x.resized(len);
    let full = cyclic_convolve_f2(&column, &padded)?;
    Ok(full.slice(0, spec.rows()))
}

/// Dense form of `T`, for cross-checks at small sizes.
pub fn toeplitz_matrix(spec: &ToeplitzSpec) -> Result<BitMatrix, BitLinAlgError> {
    let mut t = BitMatrix::zeros(spec.rows(), spec.cols())?;
    for i in 0..spec.rows() {
        for j in 0..spec.cols() {
            if spec.entry(i, j) {
                t.set(i, j, true);
            }
        }
    }
    Ok(t)
}

/// Modified Toeplitz hash `(T | I_m) x = T x[..n-m] ⊕ x[n-m..]`.
pub fn modified_toeplitz_hash(
    seed: &BitVector,
    x: &BitVector,
    m: usize,
) -> Result<BitVector, BitLinAlgError> {
    let n = x.len();
    let spec = ToeplitzSpec::new(m, n, seed.clone())?;
    let mut y = toeplitz_mul(&spec, &x.slice(0, n - m))?;
    y ^= &x.slice(n - m, m);
    Ok(y)
}
