//! Explicit generator and check matrices, assembled from the block
//! representations with dense arithmetic only.

use crate::bitlinalg::{toeplitz_matrix, BitMatrix, BitVector, ToeplitzSpec};

use super::{FamilyError, FamilyKind, FamilySpec};

/// Largest `n` for which dense matrices are built.
pub const MAX_MATRIX_N: usize = 32;

fn check_args(spec: &FamilySpec, seed: &BitVector) -> Result<(), FamilyError> {
    if spec.n() > MAX_MATRIX_N {
        return Err(FamilyError::TooLargeForDense {
            n: spec.n(),
            cap: MAX_MATRIX_N,
        });
    }
    if seed.len() != spec.d() {
        return Err(FamilyError::SeedLength {
            expected: spec.d(),
            found: seed.len(),
        });
    }
    Ok(())
}

/// `A` with `G = (A | I)` for F1, `G = (I | A)` for F2.
fn block_part(spec: &FamilySpec, seed: &BitVector) -> Result<BitMatrix, FamilyError> {
    match spec.kind() {
        FamilyKind::F1 { field, blocks } => {
            let k = field.k();
            let mut a = field.matrix(&seed.slice(0, k))?;
            for i in 1..blocks - 1 {
                a = a.hstack(&field.matrix(&seed.slice(i * k, k))?)?;
            }
            Ok(a)
        }
        FamilyKind::F2 { field, blocks } => {
            let p = field.matrix(seed)?;
            let mut power = p.clone();
            let mut a = p.clone();
            for _ in 2..*blocks {
                power = power.mul(&p)?;
                a = a.vstack(&power)?;
            }
            Ok(a)
        }
        _ => unreachable!("only block families have a block part"),
    }
}

/// The `m × n` matrix `G` with `f_seed(x) = G x`.
pub fn generator_matrix(spec: &FamilySpec, seed: &BitVector) -> Result<BitMatrix, FamilyError> {
    check_args(spec, seed)?;
    let (n, m) = (spec.n(), spec.m());
    match spec.kind() {
        FamilyKind::ModifiedToeplitz => {
            let t = toeplitz_matrix(&ToeplitzSpec::new(m, n, seed.clone())?)?;
            Ok(t.hstack(&BitMatrix::identity(m)?)?)
        }
        FamilyKind::F1 { .. } => Ok(block_part(spec, seed)?.hstack(&BitMatrix::identity(m)?)?),
        FamilyKind::F2 { .. } => Ok(BitMatrix::identity(m)?.hstack(&block_part(spec, seed)?)?),
        FamilyKind::DualOf(inner) => check_matrix(inner, seed),
        FamilyKind::Composed { outer, inner } => {
            let gi = generator_matrix(inner, &seed.slice(0, inner.d()))?;
            let go = generator_matrix(outer, &seed.slice(inner.d(), outer.d()))?;
            Ok(go.mul(&gi)?)
        }
    }
}

/// The `(n − m) × n` matrix `H` whose rows span the orthogonal complement of
/// the kernel of `G`, so that `G Hᵀ = 0`.
pub fn check_matrix(spec: &FamilySpec, seed: &BitVector) -> Result<BitMatrix, FamilyError> {
    check_args(spec, seed)?;
    let (n, m) = (spec.n(), spec.m());
    match spec.kind() {
        FamilyKind::ModifiedToeplitz => {
            let t = toeplitz_matrix(&ToeplitzSpec::new(m, n, seed.clone())?)?;
            Ok(BitMatrix::identity(n - m)?.hstack(&t.transpose())?)
        }
        FamilyKind::F1 { .. } => {
            let a = block_part(spec, seed)?;
            Ok(BitMatrix::identity(n - m)?.hstack(&a.transpose())?)
        }
        FamilyKind::F2 { .. } => {
            let a = block_part(spec, seed)?;
            Ok(a.transpose().hstack(&BitMatrix::identity(n - m)?)?)
        }
        FamilyKind::DualOf(inner) => generator_matrix(inner, seed),
        FamilyKind::Composed { .. } => {
            let g = generator_matrix(spec, seed)?;
            let basis = g.kernel_basis();
            if basis.len() != n - m {
                return Err(FamilyError::Infeasible(format!(
                    "composed generator has rank {} < {m}",
                    n - basis.len()
                )));
            }
            Ok(BitMatrix::from_rows(basis, n)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;

    fn for_all_seeds(spec: &FamilySpec, mut f: impl FnMut(&BitVector)) {
        for s in 0..(1u64 << spec.d()) {
            f(&BitVector::from_u64(s, spec.d()));
        }
    }

    #[test]
    fn f1_generator_has_identity_last() {
        let spec = make_f1(2, 2).unwrap();
        for_all_seeds(&spec, |seed| {
            let g = generator_matrix(&spec, seed).unwrap();
            let field = BlockField::new(2).unwrap();
            let expect = field
                .matrix(seed)
                .unwrap()
                .hstack(&BitMatrix::identity(2).unwrap())
                .unwrap();
            assert_eq!(g, expect);
            let h = check_matrix(&spec, seed).unwrap();
            assert!(g.mul(&h.transpose()).unwrap().is_zero());
        });
    }

    #[test]
    fn mt_orthogonality_all_seeds() {
        let spec = make_mt(6, 3).unwrap();
        for_all_seeds(&spec, |seed| {
            let g = generator_matrix(&spec, seed).unwrap();
            let h = check_matrix(&spec, seed).unwrap();
            assert!(g.mul(&h.transpose()).unwrap().is_zero());
            assert_eq!((g.rank(), h.rank()), (3, 3));
        });
    }

    #[test]
    fn dense_cap() {
        let spec = make_mt(40, 3).unwrap();
        assert!(generator_matrix(&spec, &BitVector::zeros(39)).is_err());
    }
}
