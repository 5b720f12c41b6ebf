use super::VerifyError;

const SUM_TOLERANCE: f64 = 1e-12;

/// `P_{A,E}` on `A × E`, stored row-major: `probs[a * e_size + e]`.
#[derive(Clone, Debug, PartialEq)]
pub struct JointDistribution {
    a_size: usize,
    e_size: usize,
    probs: Vec<f64>,
}

impl JointDistribution {
    pub fn new(a_size: usize, e_size: usize, probs: Vec<f64>) -> Result<Self, VerifyError> {
        if a_size == 0 || e_size == 0 || probs.len() != a_size * e_size {
            return Err(VerifyError::InvalidDistribution(format!(
                "{} entries for a {a_size} x {e_size} table",
                probs.len()
            )));
        }
        check_distribution(&probs)?;
        Ok(JointDistribution {
            a_size,
            e_size,
            probs,
        })
    }

    /// `P_A × P_E`.
    pub fn product(pa: &[f64], pe: &[f64]) -> Result<Self, VerifyError> {
        let probs = pa
            .iter()
            .flat_map(|&a| pe.iter().map(move |&e| a * e))
            .collect();
        JointDistribution::new(pa.len(), pe.len(), probs)
    }

    pub fn a_size(&self) -> usize {
        self.a_size
    }

    pub fn e_size(&self) -> usize {
        self.e_size
    }

    pub fn get(&self, a: usize, e: usize) -> f64 {
        self.probs[a * self.e_size + e]
    }

    pub fn marginal_a(&self) -> Vec<f64> {
        (0..self.a_size)
            .map(|a| (0..self.e_size).map(|e| self.get(a, e)).sum())
            .collect()
    }

    pub fn marginal_e(&self) -> Vec<f64> {
        (0..self.e_size)
            .map(|e| (0..self.a_size).map(|a| self.get(a, e)).sum())
            .collect()
    }
}

fn check_distribution(p: &[f64]) -> Result<(), VerifyError> {
    if p.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) {
        return Err(VerifyError::InvalidDistribution(
            "negative or non-finite probability".into(),
        ));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > SUM_TOLERANCE {
        return Err(VerifyError::InvalidDistribution(format!(
            "probabilities sum to {total}"
        )));
    }
    Ok(())
}

/// `−log2 max_a P(a)`.
pub fn h_min(p: &[f64]) -> Result<f64, VerifyError> {
    check_distribution(p)?;
    let max = p.iter().copied().fold(0.0, f64::max);
    Ok(-max.log2())
}

/// `−log2 Σ_e max_a P_{A,E}(a, e)`.
pub fn h_min_cond(p: &JointDistribution) -> f64 {
    let s: f64 = (0..p.e_size)
        .map(|e| (0..p.a_size).map(|a| p.get(a, e)).fold(0.0, f64::max))
        .sum();
    -s.log2()
}

/// `‖P_{A,E} − P_{U,A} × P_E‖₁`.
pub fn d1_prime(p: &JointDistribution) -> f64 {
    let pe = p.marginal_e();
    let u = 1.0 / p.a_size as f64;
    (0..p.a_size)
        .flat_map(|a| (0..p.e_size).map(move |e| (a, e)))
        .map(|(a, e)| (p.get(a, e) - u * pe[e]).abs())
        .sum()
}

/// `Σ_{a,e} (P_{A,E}(a,e) − P_{U,A}(a) P_E(e))² / Q_E(e)`.
pub fn d2(p: &JointDistribution, q_e: &[f64]) -> Result<f64, VerifyError> {
    if q_e.len() != p.e_size {
        return Err(VerifyError::InvalidDistribution(format!(
            "Q_E has {} entries, E has {}",
            q_e.len(),
            p.e_size
        )));
    }
    check_distribution(q_e)?;
    let pe = p.marginal_e();
    let u = 1.0 / p.a_size as f64;
    let mut total = 0.0;
    for e in 0..p.e_size {
        if q_e[e] == 0.0 {
            if pe[e] > 0.0 {
                return Err(VerifyError::SupportViolation(e));
            }
            continue;
        }
        for a in 0..p.a_size {
            let diff = p.get(a, e) - u * pe[e];
            total += diff * diff / q_e[e];
        }
    }
    Ok(total)
}

/// `d₁′ ≤ sqrt(d₂ · |A|)`, with a relative rounding allowance of `1e−12`.
pub fn collision_bound_holds(p: &JointDistribution, q_e: &[f64]) -> Result<bool, VerifyError> {
    let lhs = d1_prime(p);
    let rhs = (d2(p, q_e)? * p.a_size as f64).sqrt();
    Ok(lhs <= rhs * (1.0 + 1e-12) + 1e-300)
}
