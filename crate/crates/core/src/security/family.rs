use super::{
    bound_concat_classical, bound_dual_classical, bound_dual_dual_concat,
    bound_universal_classical, ExtractorBound, SecurityError,
};
use crate::families::FamilySpec;

/// Which bound a family's claims are fed into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    /// `sqrt(δ − 1 + 2^{m−t})` from the universality constant.
    Universal,
    /// `sqrt(δ) 2^{(m−t)/2}` from the dual universality constant.
    Dual,
    /// Inner universal, outer dual.
    Concat,
    /// Inner dual, outer dual.
    DualDualConcat,
}

impl Route {
    pub fn id(self) -> &'static str {
        match self {
            Self::Universal => "universal-classical",
            Self::Dual => "dual-classical",
            Self::Concat => "concat-classical",
            Self::DualDualConcat => "dual-dual-concat",
        }
    }

    pub const ALL: [Route; 4] = [
        Route::Universal,
        Route::Dual,
        Route::Concat,
        Route::DualDualConcat,
    ];
}

/// Classical bound for `spec` at source min-entropy `t` through one route;
/// `None` when the family carries no claim for it.
pub fn family_bound_via(spec: &FamilySpec, t: f64, route: Route) -> Option<ExtractorBound> {
    let claims = spec.claims();
    let m = spec.m() as f64;
    let (eps, delta, delta_prime) = match route {
        Route::Universal => {
            let d = claims.delta_universal? as f64;
            (bound_universal_classical(d, m, t), d, 1.0)
        }
        Route::Dual => {
            let d = claims.delta_dual? as f64;
            (bound_dual_classical(d, m, t), d, 1.0)
        }
        Route::Concat => {
            let c = claims.concat?;
            let (d, dp) = (c.inner_universal? as f64, c.outer_dual? as f64);
            (bound_concat_classical(d, dp, m, c.l as f64, t), d, dp)
        }
        Route::DualDualConcat => {
            let c = claims.concat?;
            let (d, dp) = (c.inner_dual? as f64, c.outer_dual? as f64);
            (bound_dual_dual_concat(d, dp, m, t), d, dp)
        }
    };
    Some(ExtractorBound {
        n: spec.n(),
        m: spec.m(),
        t,
        d: spec.d(),
        h: spec.d() as f64,
        delta,
        delta_prime,
        eta: None,
        epsilon: eps,
        formula_id: route.id(),
        notes: vec![],
    })
}

/// The smallest classical bound over every route the family's claims allow,
/// for uniformly distributed seeds.
pub fn family_bound(spec: &FamilySpec, t: f64) -> Result<ExtractorBound, SecurityError> {
    Route::ALL
        .iter()
        .filter_map(|&r| family_bound_via(spec, t, r))
        .min_by(|a, b| a.epsilon.log2().total_cmp(&b.epsilon.log2()))
        .ok_or_else(|| {
            SecurityError::InvalidParameters(format!("no usable constants for {}", spec.name()))
        })
}
