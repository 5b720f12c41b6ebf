use crate::bitlinalg::{
    dense_mul, modified_toeplitz_hash, toeplitz_mul, BitVector, ConvolutionStrategy, ToeplitzSpec,
};

use super::{check_matrix, BlockField, FamilyError, FamilyKind, FamilySpec};

/// `f_seed(x)`, using the fast block arithmetic.
pub fn evaluate(
    spec: &FamilySpec,
    seed: &BitVector,
    x: &BitVector,
) -> Result<BitVector, FamilyError> {
    evaluate_with(spec, seed, x, ConvolutionStrategy::Auto)
}

/// [`evaluate`] with an explicit convolution kernel for the block products.
pub fn evaluate_with(
    spec: &FamilySpec,
    seed: &BitVector,
    x: &BitVector,
    strategy: ConvolutionStrategy,
) -> Result<BitVector, FamilyError> {
    if seed.len() != spec.d() {
        return Err(FamilyError::SeedLength {
            expected: spec.d(),
            found: seed.len(),
        });
    }
    if x.len() != spec.n() {
        return Err(FamilyError::InputLength {
            expected: spec.n(),
            found: x.len(),
        });
    }
    match spec.kind() {
        FamilyKind::ModifiedToeplitz => Ok(modified_toeplitz_hash(seed, x, spec.m())?),
        FamilyKind::F1 { field, blocks } => f1(field, *blocks, seed, x, strategy),
        FamilyKind::F2 { field, blocks } => f2(field, *blocks, seed, x, strategy),
        FamilyKind::DualOf(inner) => evaluate_dual(inner, seed, x, strategy),
        FamilyKind::Composed { outer, inner } => {
            let mid = evaluate_with(inner, &seed.slice(0, inner.d()), x, strategy)?;
            evaluate_with(outer, &seed.slice(inner.d(), outer.d()), &mid, strategy)
        }
    }
}

fn block(v: &BitVector, k: usize, i: usize) -> BitVector {
    v.slice(i * k, k)
}

fn f1(
    field: &BlockField,
    blocks: usize,
    seed: &BitVector,
    x: &BitVector,
    strategy: ConvolutionStrategy,
) -> Result<BitVector, FamilyError> {
    let k = field.k();
    let mut y = block(x, k, blocks - 1);
    for i in 0..blocks - 1 {
        y ^= &field.mul(&block(seed, k, i), &block(x, k, i), strategy)?;
    }
    Ok(y)
}

fn f2(
    field: &BlockField,
    blocks: usize,
    r: &BitVector,
    x: &BitVector,
    strategy: ConvolutionStrategy,
) -> Result<BitVector, FamilyError> {
    let k = field.k();
    let mut y = x.slice(0, (blocks - 1) * k);
    // v runs through r x_l, r^2 x_l, ...
    let mut v = block(x, k, blocks - 1);
    for i in 0..blocks - 1 {
        v = field.mul(r, &v, strategy)?;
        y.xor_at(i * k, &v);
    }
    Ok(y)
}

/// `H x` for the check matrix `H` of `inner`.
fn evaluate_dual(
    inner: &FamilySpec,
    seed: &BitVector,
    x: &BitVector,
    strategy: ConvolutionStrategy,
) -> Result<BitVector, FamilyError> {
    let (n, m) = (inner.n(), inner.m());
    match inner.kind() {
        // H = (I_{n−m} | Tᵀ)
        FamilyKind::ModifiedToeplitz => {
            let t = ToeplitzSpec::new(m, n, seed.clone())?.transposed();
            let mut y = toeplitz_mul(&t, &x.slice(n - m, m))?;
            y ^= &x.slice(0, n - m);
            Ok(y)
        }
        // y_i = x_i + M(r_i)ᵀ x_l
        FamilyKind::F1 { field, blocks } => {
            let k = field.k();
            let last = block(x, k, blocks - 1);
            let mut y = x.slice(0, (blocks - 1) * k);
            for i in 0..blocks - 1 {
                let t = field.mul_transpose(&block(seed, k, i), &last, strategy)?;
                y.xor_at(i * k, &t);
            }
            Ok(y)
        }
        // y = x_l + Σ M(r^i)ᵀ x_i, evaluated Horner-style since
        // M(r^i)ᵀ = (M(r)ᵀ)^i.
        FamilyKind::F2 { field, blocks } => {
            let k = field.k();
            let mut acc = BitVector::zeros(k);
            for i in (0..blocks - 1).rev() {
                acc ^= &block(x, k, i);
                acc = field.mul_transpose(seed, &acc, strategy)?;
            }
            acc ^= &block(x, k, blocks - 1);
            Ok(acc)
        }
        FamilyKind::DualOf(original) => evaluate_with(original, seed, x, strategy),
        FamilyKind::Composed { .. } => {
            let h = check_matrix(inner, seed)?;
            Ok(dense_mul(&h, x)?)
        }
    }
}
