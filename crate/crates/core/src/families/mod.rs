//! Linear hash families: descriptors, evaluation, duals and compositions.
//!
//! Every family maps `n` input bits to `m` output bits through `y = G x` for
//! a seed-dependent `m × n` generator `G`. Blocks are read in order from the
//! input: block `i` occupies bits `[i·k, (i+1)·k)`.

mod eval;
mod feasible;
mod field;
mod matrices;
mod record;

use std::fmt;

pub use eval::{evaluate, evaluate_with};
pub use feasible::{feasible_g_l, nearest_feasible, Feasible};
pub use field::{field_size_supported, BlockField};
pub use matrices::{check_matrix, generator_matrix, MAX_MATRIX_N};

use crate::bitlinalg::BitLinAlgError;
use crate::facm::FacmError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("seed has {found} bits, family needs {expected}")]
    SeedLength { expected: usize, found: usize },
    #[error("input has {found} bits, family needs {expected}")]
    InputLength { expected: usize, found: usize },
    #[error("dense matrices are limited to n <= {cap}, got n = {n}")]
    TooLargeForDense { n: usize, cap: usize },
    #[error("cannot parse family record: {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FacmError),
    #[error(transparent)]
    LinAlg(#[from] BitLinAlgError),
}

/// Base family shapes, as used by the CLI and by [`nearest_feasible`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseKind {
    ModifiedToeplitz,
    F1,
    F2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// `G = (T(r) | I_m)` with an `m × (n−m)` Toeplitz `T(r)`.
    ModifiedToeplitz,
    /// `y = r_1 x_1 + … + r_{l−1} x_{l−1} + x_l` over `F_{2^m}`.
    F1 { field: BlockField, blocks: usize },
    /// `y = (x_1 + r x_l, …, x_{l−1} + r^{l−1} x_l)` over `F_{2^k}`.
    F2 { field: BlockField, blocks: usize },
    /// The family given by the check matrices of the inner family.
    DualOf(Box<FamilySpec>),
    /// `outer ∘ inner`, seeded by the inner segment followed by the outer one.
    Composed {
        outer: Box<FamilySpec>,
        inner: Box<FamilySpec>,
    },
}

/// How a composed family was requested.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GVariant {
    G,
    F3,
    F4,
}

impl GVariant {
    pub fn name(self) -> &'static str {
        match self {
            Self::G => "g",
            Self::F3 => "f3",
            Self::F4 => "f4",
        }
    }
}

/// Parameters behind a `g_{n,l,m}` construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GOrigin {
    pub variant: GVariant,
    /// Intermediate length actually used.
    pub l: usize,
    /// Intermediate length asked for before snapping to a feasible value.
    pub requested_l: usize,
    pub t: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    kind: FamilyKind,
    n: usize,
    m: usize,
    d: usize,
    origin: Option<GOrigin>,
}

/// Named seed segments, in the order they are read from the seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedLayout {
    pub segments: Vec<(String, usize)>,
}

impl SeedLayout {
    pub fn total(&self) -> usize {
        self.segments.iter().map(|(_, len)| len).sum()
    }
}

/// The universality constants a family is proven to satisfy under uniform
/// seeds. `None` means no claim (or one too large to represent).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FamilyClaims {
    pub delta_universal: Option<u128>,
    pub delta_dual: Option<u128>,
    pub concat: Option<ConcatClaim>,
}

/// Constants of the two halves of a composition, with the intermediate length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcatClaim {
    pub inner_universal: Option<u128>,
    pub inner_dual: Option<u128>,
    pub outer_dual: Option<u128>,
    pub l: usize,
}

fn pow2(e: usize) -> Option<u128> {
    1u128.checked_shl(e as u32).filter(|_| e < 128)
}

pub fn make_mt(n: usize, m: usize) -> Result<FamilySpec, FamilyError> {
    if m == 0 || m >= n {
        return Err(FamilyError::Infeasible(format!(
            "need 1 <= m < n, got n={n} m={m}"
        )));
    }
    Ok(FamilySpec {
        kind: FamilyKind::ModifiedToeplitz,
        n,
        m,
        d: n - 1,
        origin: None,
    })
}

/// `l` blocks over `F_{2^m}`: `n = l·m`, seed `(l−1)·m` bits.
pub fn make_f1(m: usize, l: usize) -> Result<FamilySpec, FamilyError> {
    if l < 2 {
        return Err(FamilyError::Infeasible(format!(
            "f1 needs at least 2 blocks, got {l}"
        )));
    }
    let field = BlockField::new(m)?;
    Ok(FamilySpec {
        kind: FamilyKind::F1 { field, blocks: l },
        n: l * m,
        m,
        d: (l - 1) * m,
        origin: None,
    })
}

/// `l` blocks over `F_{2^k}`: `n = l·k`, `m = (l−1)·k`, seed `k` bits.
pub fn make_f2(k: usize, l: usize) -> Result<FamilySpec, FamilyError> {
    if l < 2 {
        return Err(FamilyError::Infeasible(format!(
            "f2 needs at least 2 blocks, got {l}"
        )));
    }
    let field = BlockField::new(k)?;
    Ok(FamilySpec {
        kind: FamilyKind::F2 { field, blocks: l },
        n: l * k,
        m: (l - 1) * k,
        d: k,
        origin: None,
    })
}

/// The dual family. Taking the dual twice returns the original spec.
pub fn dual(spec: &FamilySpec) -> FamilySpec {
    if let FamilyKind::DualOf(inner) = &spec.kind {
        return (**inner).clone();
    }
    FamilySpec {
        kind: FamilyKind::DualOf(Box::new(spec.clone())),
        n: spec.n,
        m: spec.n - spec.m,
        d: spec.d,
        origin: None,
    }
}

/// `outer ∘ inner`; requires `inner.m == outer.n`.
pub fn compose(outer: &FamilySpec, inner: &FamilySpec) -> Result<FamilySpec, FamilyError> {
    if inner.m != outer.n {
        return Err(FamilyError::Infeasible(format!(
            "inner output {} does not match outer input {}",
            inner.m, outer.n
        )));
    }
    Ok(FamilySpec {
        kind: FamilyKind::Composed {
            outer: Box::new(outer.clone()),
            inner: Box::new(inner.clone()),
        },
        n: inner.n,
        m: outer.m,
        d: inner.d + outer.d,
        origin: None,
    })
}

/// Why `g_{n,l,m}` is infeasible, or `None` if it can be built.
pub(crate) fn g_obstacle(n: usize, l: usize, m: usize) -> Option<String> {
    if !(m < l && l < n) || m == 0 {
        return Some(format!("need 0 < m < l < n, got n={n} l={l} m={m}"));
    }
    if n % l != 0 {
        return Some(format!("l={l} must divide n={n}"));
    }
    if l % (l - m) != 0 || l > 2 * m {
        return Some(format!("l-m={} must divide l={l} with l <= 2m", l - m));
    }
    if !field_size_supported(l) || !field_size_supported(l - m) {
        return Some(format!(
            "block sizes {l} and {} need field representations",
            l - m
        ));
    }
    None
}

/// `g_{n,l,m} = f_{F2: l→m} ∘ (f_{F2: n→n−l})^⊥`, seed `l + (l − m)` bits.
pub fn make_g(n: usize, l: usize, m: usize) -> Result<FamilySpec, FamilyError> {
    build_g(
        n,
        l,
        m,
        GOrigin {
            variant: GVariant::G,
            l,
            requested_l: l,
            t: None,
        },
    )
}

fn build_g(n: usize, l: usize, m: usize, origin: GOrigin) -> Result<FamilySpec, FamilyError> {
    if let Some(why) = g_obstacle(n, l, m) {
        return Err(FamilyError::Infeasible(why));
    }
    let inner = dual(&make_f2(l, n / l)?);
    let outer = make_f2(l - m, l / (l - m))?;
    let mut spec = compose(&outer, &inner)?;
    spec.origin = Some(origin);
    Ok(spec)
}

fn snapped_g(
    n: usize,
    m: usize,
    t: usize,
    requested_l: usize,
    variant: GVariant,
) -> Result<FamilySpec, FamilyError> {
    if !(m < requested_l && requested_l < n) {
        return Err(FamilyError::Infeasible(format!(
            "need m < l < n with l={requested_l}, n={n}, m={m}"
        )));
    }
    let l = feasible_g_l(n, m, requested_l).ok_or_else(|| {
        FamilyError::Infeasible(format!(
            "no feasible l in ({m}, {requested_l}] for n={n}, m={m}"
        ))
    })?;
    build_g(
        n,
        l,
        m,
        GOrigin {
            variant,
            l,
            requested_l,
            t: Some(t),
        },
    )
}

/// `g_{n,t,m}`, with `l` snapped down to a feasible value if needed.
pub fn make_f3(n: usize, m: usize, t: usize) -> Result<FamilySpec, FamilyError> {
    if !(m < t && t < n) {
        return Err(FamilyError::Infeasible(format!(
            "need m < t < n, got n={n} m={m} t={t}"
        )));
    }
    snapped_g(n, m, t, t, GVariant::F3)
}

/// `g_{n,(t+m)/2,m}`, with `l` snapped down to a feasible value if needed.
pub fn make_f4(n: usize, m: usize, t: usize) -> Result<FamilySpec, FamilyError> {
    if !(m < t && t < n) {
        return Err(FamilyError::Infeasible(format!(
            "need m < t < n, got n={n} m={m} t={t}"
        )));
    }
    snapped_g(n, m, t, (t + m) / 2, GVariant::F4)
}

impl FamilySpec {
    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Seed length in bits.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn origin(&self) -> Option<&GOrigin> {
        self.origin.as_ref()
    }

    pub fn name(&self) -> String {
        match &self.kind {
            FamilyKind::ModifiedToeplitz => "mt".into(),
            FamilyKind::F1 { .. } => "f1".into(),
            FamilyKind::F2 { .. } => "f2".into(),
            FamilyKind::DualOf(inner) => format!("dual({})", inner.name()),
            FamilyKind::Composed { .. } => match &self.origin {
                Some(o) => o.variant.name().into(),
                None => "compose".into(),
            },
        }
    }

    pub fn seed_layout(&self) -> SeedLayout {
        let segments = match &self.kind {
            FamilyKind::ModifiedToeplitz => vec![("toeplitz".to_string(), self.d)],
            FamilyKind::F1 { field, blocks } => {
                (1..*blocks).map(|i| (format!("r{i}"), field.k())).collect()
            }
            FamilyKind::F2 { field, .. } => vec![("r".to_string(), field.k())],
            FamilyKind::DualOf(inner) => inner.seed_layout().segments,
            FamilyKind::Composed { outer, inner } => {
                let mut segs: Vec<_> = inner
                    .seed_layout()
                    .segments
                    .into_iter()
                    .map(|(name, len)| (format!("inner.{name}"), len))
                    .collect();
                segs.extend(
                    outer
                        .seed_layout()
                        .segments
                        .into_iter()
                        .map(|(name, len)| (format!("outer.{name}"), len)),
                );
                segs
            }
        };
        SeedLayout { segments }
    }

    pub fn claims(&self) -> FamilyClaims {
        match &self.kind {
            FamilyKind::ModifiedToeplitz | FamilyKind::F1 { .. } => FamilyClaims {
                delta_universal: Some(1),
                delta_dual: Some(1),
                concat: None,
            },
            FamilyKind::F2 { field, blocks } => FamilyClaims {
                // A nonzero kernel element pins r = x_1 / x_l.
                delta_universal: pow2(self.m - field.k()),
                delta_dual: Some(*blocks as u128 - 1),
                concat: None,
            },
            FamilyKind::DualOf(inner) => {
                let c = inner.claims();
                FamilyClaims {
                    delta_universal: c.delta_dual,
                    delta_dual: c.delta_universal,
                    concat: None,
                }
            }
            FamilyKind::Composed { outer, inner } => {
                let (ci, co) = (inner.claims(), outer.claims());
                FamilyClaims {
                    delta_universal: None,
                    delta_dual: None,
                    concat: Some(ConcatClaim {
                        inner_universal: ci.delta_universal,
                        inner_dual: ci.delta_dual,
                        outer_dual: co.delta_dual,
                        l: inner.m,
                    }),
                }
            }
        }
    }
}

impl fmt::Display for BaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::ModifiedToeplitz => "mt",
            Self::F1 => "f1",
            Self::F2 => "f2",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructor_arithmetic() {
        let f = make_f1(2, 2).unwrap();
        assert_eq!((f.n(), f.m(), f.d()), (4, 2, 2));
        let f = make_f1(1018, 2).unwrap();
        assert_eq!((f.n(), f.m(), f.d()), (2036, 1018, 1018));
        let f = make_f1(2, 3).unwrap();
        assert_eq!((f.n(), f.m(), f.d()), (6, 2, 4));
        let f = make_f2(2, 3).unwrap();
        assert_eq!((f.n(), f.m(), f.d()), (6, 4, 2));
        let f = make_f2(1018, 3).unwrap();
        assert_eq!((f.n(), f.m(), f.d()), (3054, 2036, 1018));
        assert!(make_f1(2, 1).is_err());
        assert!(make_f2(2, 1).is_err());
    }

    #[test]
    fn dual_shapes() {
        let f1 = make_f1(2, 2).unwrap();
        assert_eq!(dual(&f1).m(), 2);
        let mt = make_mt(6, 2).unwrap();
        assert_eq!(dual(&mt).m(), 4);
        assert_eq!(dual(&dual(&mt)), mt);
    }

    #[test]
    fn g_family_shapes() {
        let g = make_f4(12, 4, 8).unwrap();
        assert_eq!((g.n(), g.m(), g.d()), (12, 4, 8));
        assert_eq!(g.origin().unwrap().l, 6);
        assert!(make_g(8, 6, 4).is_err());
        assert!(make_f3(8, 4, 6).is_err());
        assert!(make_f3(8, 4, 8).is_err());
        assert!(make_g(8, 4, 4).is_err());
        let g = make_g(16, 8, 6).unwrap();
        assert_eq!(g.d(), 2 * 8 - 6);
        assert_eq!(g.seed_layout().total(), g.d());
    }
}
