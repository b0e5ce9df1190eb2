//! Finite-horizon diagnostics for soft vector sequences: convergence,
//! the Cauchy property, and the convergent-implies-Cauchy implication.
//! Verdicts are only about the inspected index window, never the infinite
//! tail.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::norm::SoftNorm;
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::vector::SoftVector;

type Generator<T> = Arc<dyn Fn(u64) -> SoftVector<T> + Send + Sync>;

/// A deterministic sequence of soft vectors, indexed from k = 1.
#[derive(Clone)]
pub struct SoftVectorSequence<T> {
    generator: Generator<T>,
    dim: usize,
    declared_limit: Option<SoftVector<T>>,
}

impl<T: Scalar> SoftVectorSequence<T> {
    pub fn new(
        dim: usize,
        declared_limit: Option<SoftVector<T>>,
        generator: impl Fn(u64) -> SoftVector<T> + Send + Sync + 'static,
    ) -> Self {
        Self {
            generator: Arc::new(generator),
            dim,
            declared_limit,
        }
    }

    pub fn at(&self, k: u64) -> SoftVector<T> {
        (self.generator)(k)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn declared_limit(&self) -> Option<&SoftVector<T>> {
        self.declared_limit.as_ref()
    }

    /// v_k = v for all k.
    pub fn constant(v: SoftVector<T>) -> Self {
        let dim = v.dim();
        let limit = v.clone();
        Self::new(dim, Some(limit), move |_| v.clone())
    }

    /// v_k = base + rho^k . direction, |rho| < 1.
    pub fn geometric(base: SoftVector<T>, direction: SoftVector<T>, rho: T) -> Result<Self> {
        if base.dim() != direction.dim() {
            return Err(Error::DimensionMismatch {
                left: base.dim(),
                right: direction.dim(),
            });
        }
        if !rho.is_finite() || rho.abs() >= T::one() {
            return Err(Error::Invalid("geometric ratio must satisfy |rho| < 1".into()));
        }
        let dim = base.dim();
        let limit = base.clone();
        Ok(Self::new(dim, Some(limit), move |k| {
            let factor = rho.powi(k as i32);
            base.add(&direction.scale(factor).unwrap()).unwrap()
        }))
    }

    /// v_k = base + (1/k) . direction.
    pub fn harmonic(base: SoftVector<T>, direction: SoftVector<T>) -> Result<Self> {
        if base.dim() != direction.dim() {
            return Err(Error::DimensionMismatch {
                left: base.dim(),
                right: direction.dim(),
            });
        }
        let dim = base.dim();
        let limit = base.clone();
        Ok(Self::new(dim, Some(limit), move |k| {
            let factor = T::one() / T::from_u64(k).expect("index fits scalar");
            base.add(&direction.scale(factor).unwrap()).unwrap()
        }))
    }

    /// v_k = base + (-1)^k . direction. Diverges unless direction is zero.
    pub fn alternating(base: SoftVector<T>, direction: SoftVector<T>) -> Result<Self> {
        if base.dim() != direction.dim() {
            return Err(Error::DimensionMismatch {
                left: base.dim(),
                right: direction.dim(),
            });
        }
        let dim = base.dim();
        let limit = base.clone();
        Ok(Self::new(dim, Some(limit), move |k| {
            let sign = if k % 2 == 0 { T::one() } else { -T::one() };
            base.add(&direction.scale(sign).unwrap()).unwrap()
        }))
    }
}

/// Finite-horizon convergence verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "index")]
pub enum ConvergenceVerdict {
    #[serde(rename = "CONVERGED_AT")]
    ConvergedAt(u64),
    #[serde(rename = "NOT_WITHIN_HORIZON")]
    NotWithinHorizon,
}

/// Finite-horizon Cauchy verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "index")]
pub enum CauchyVerdict {
    #[serde(rename = "CAUCHY_AT")]
    CauchyAt(u64),
    #[serde(rename = "NOT_WITHIN_HORIZON")]
    NotWithinHorizon,
}

fn check_eps_horizon(eps: f64, horizon: u64) -> Result<()> {
    if !(eps > 0.0) {
        return Err(Error::InvalidTolerance(eps));
    }
    if horizon < 1 {
        return Err(Error::Invalid("horizon must be at least 1".into()));
    }
    Ok(())
}

/// Smallest k0 <= horizon with ||seq(k) - limit|| < eps for all k in
/// [k0, horizon], if any. Comparisons are strict.
pub fn converges_to<T: Scalar, N: SoftNorm<T> + ?Sized>(
    seq: &SoftVectorSequence<T>,
    limit: &SoftVector<T>,
    norm: &N,
    eps: f64,
    horizon: u64,
) -> Result<ConvergenceVerdict> {
    check_eps_horizon(eps, horizon)?;
    if seq.dim() != limit.dim() {
        return Err(Error::DimensionMismatch {
            left: seq.dim(),
            right: limit.dim(),
        });
    }
    let distances: Vec<f64> = (1..=horizon)
        .into_par_iter()
        .map(|k| {
            let d = seq.at(k).sub(limit).expect("equal dims");
            norm.eval(&d).to_f64_lossy()
        })
        .collect();
    // longest suffix on which the distance stays below eps
    let mut k0 = None;
    for (i, &d) in distances.iter().enumerate().rev() {
        if d < eps {
            k0 = Some(i as u64 + 1);
        } else {
            break;
        }
    }
    Ok(match k0 {
        Some(k) => ConvergenceVerdict::ConvergedAt(k),
        None => ConvergenceVerdict::NotWithinHorizon,
    })
}

/// Smallest m <= horizon with ||seq(i) - seq(j)|| < eps for all pairs
/// i, j in [m, horizon], checked exhaustively over the window.
pub fn is_cauchy<T: Scalar, N: SoftNorm<T> + ?Sized>(
    seq: &SoftVectorSequence<T>,
    norm: &N,
    eps: f64,
    horizon: u64,
) -> Result<CauchyVerdict> {
    check_eps_horizon(eps, horizon)?;
    let values: Vec<SoftVector<T>> = (1..=horizon).map(|k| seq.at(k)).collect();
    let dim = values.first().map(|v| v.dim()).unwrap_or(0);
    // per index, the largest distance to any later element; the diff is
    // written into a scratch vector to keep the O(horizon^2) loop
    // allocation-free
    let tail_max: Vec<f64> = (0..values.len())
        .into_par_iter()
        .map(|i| {
            let mut diff = SoftVector::<T>::zero(dim);
            let vi = &values[i];
            let mut m = 0.0f64;
            for vj in &values[i + 1..] {
                for (d, (&a, &b)) in diff.x.iter_mut().zip(vi.x.iter().zip(&vj.x)) {
                    *d = a - b;
                }
                diff.e = vi.e - vj.e;
                m = m.max(norm.eval(&diff).to_f64_lossy());
            }
            m
        })
        .collect();
    // scan suffix maxima from the right; max pairwise distance over
    // [m, horizon] is the max of tail_max over indices >= m
    let mut best = None;
    let mut suffix = 0.0f64;
    for i in (0..values.len()).rev() {
        suffix = suffix.max(tail_max[i]);
        if suffix < eps {
            // a singleton window [horizon, horizon] carries no pair
            // evidence and is not a witness
            if i + 1 < values.len() {
                best = Some(i as u64 + 1);
            }
        } else {
            break;
        }
    }
    Ok(match best {
        Some(m) => CauchyVerdict::CauchyAt(m),
        None => CauchyVerdict::NotWithinHorizon,
    })
}

/// If the sequence converges at eps/2 within the horizon, it must be
/// Cauchy at eps with a witness no later than the convergence witness.
/// A sequence with no convergence witness passes vacuously.
pub fn convergent_implies_cauchy<T: Scalar, N: SoftNorm<T> + ?Sized>(
    seq: &SoftVectorSequence<T>,
    limit: &SoftVector<T>,
    norm: &N,
    eps: f64,
    horizon: u64,
) -> Result<VerificationReport> {
    let conv = converges_to(seq, limit, norm, eps / 2.0, horizon)?;
    let mut violations = 0u64;
    let mut max_violation = 0.0f64;
    let mut counterexamples = Vec::new();
    if let ConvergenceVerdict::ConvergedAt(k0) = conv {
        let cauchy = is_cauchy(seq, norm, eps, horizon)?;
        let ok = matches!(cauchy, CauchyVerdict::CauchyAt(m) if m <= k0);
        if !ok {
            violations = 1;
            max_violation = 1.0;
            counterexamples.push(json!({
                "converged_at": k0,
                "cauchy": cauchy,
                "eps": eps,
            }));
        }
    }
    Ok(VerificationReport {
        suite: "convergent-implies-cauchy".to_string(),
        samples: horizon,
        violations,
        max_violation,
        tolerance: eps,
        seed: 0,
        counterexamples,
    })
}
