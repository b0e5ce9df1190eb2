//! The soft vector space SV(X): soft vectors as (vector, parameter) pairs,
//! linear combinations, linear independence, and span membership.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Scalar;

/// Default relative tolerance for numerical-rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// A soft vector: a point x in R^n together with one real parameter e.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SoftVector<T> {
    pub x: Vec<T>,
    pub e: T,
}

/// A scalar acting on soft vectors as r.(x, e) = (r x, r e).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SoftScalar<T>(pub T);

impl<T: Scalar> SoftScalar<T> {
    pub fn new(r: T) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Self(r))
    }
}

impl<T: Scalar> SoftVector<T> {
    pub fn new(x: Vec<T>, e: T) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::Invalid("dimension must be at least 1".into()));
        }
        let v = Self { x, e };
        v.validate()?;
        Ok(v)
    }

    /// Checks the structural invariants (used after deserialization).
    pub fn validate(&self) -> Result<()> {
        if self.x.is_empty() {
            return Err(Error::Invalid("dimension must be at least 1".into()));
        }
        if !self.e.is_finite() || self.x.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(())
    }

    /// The soft zero vector of dimension `n`.
    pub fn zero(n: usize) -> Self {
        Self {
            x: vec![T::zero(); n],
            e: T::zero(),
        }
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn is_zero(&self) -> bool {
        self.e.is_zero() && self.x.iter().all(|c| c.is_zero())
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    /// (x, e) + (y, e') = (x + y, e + e')
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            x: self
                .x
                .iter()
                .zip(&other.x)
                .map(|(&a, &b)| a + b)
                .collect(),
            e: self.e + other.e,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            x: self.x.iter().map(|&a| -a).collect(),
            e: -self.e,
        }
    }

    /// r.(x, e) = (r x, r e)
    pub fn scale(&self, r: T) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            x: self.x.iter().map(|&a| r * a).collect(),
            e: r * self.e,
        })
    }

    /// The concatenation (x_1, ..., x_n, e) in R^{n+1}. Linear bijection
    /// between soft vectors and lifted vectors.
    pub fn lift(&self) -> Vec<T> {
        let mut out = self.x.clone();
        out.push(self.e);
        out
    }

    /// Inverse of [`SoftVector::lift`].
    pub fn from_lift(lifted: &[T]) -> Result<Self> {
        if lifted.len() < 2 {
            return Err(Error::Invalid("lifted vector needs at least 2 entries".into()));
        }
        Self::new(lifted[..lifted.len() - 1].to_vec(), lifted[lifted.len() - 1])
    }
}

/// Linear combination sum_i coeffs[i] . vecs[i].
pub fn lincomb<T: Scalar>(coeffs: &[SoftScalar<T>], vecs: &[SoftVector<T>]) -> Result<SoftVector<T>> {
    if coeffs.is_empty() || coeffs.len() != vecs.len() {
        return Err(Error::Invalid(format!(
            "need equal non-empty lists, got {} coefficients and {} vectors",
            coeffs.len(),
            vecs.len()
        )));
    }
    let mut acc = vecs[0].scale(coeffs[0].0)?;
    for (c, v) in coeffs.iter().zip(vecs).skip(1) {
        acc = acc.add(&v.scale(c.0)?)?;
    }
    Ok(acc)
}

/// Singular values, numerical rank, and independence verdict for a family
/// of soft vectors, computed on the lifted matrix.
#[derive(Debug, Clone, Serialize)]
pub struct RankDetail {
    pub rank: usize,
    pub singular_values: Vec<f64>,
    pub independent: bool,
}

fn lifted_columns<T: Scalar>(vecs: &[SoftVector<T>]) -> Result<Vec<Vec<T>>> {
    let n = vecs[0].dim();
    for v in vecs {
        if v.dim() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: v.dim(),
            });
        }
    }
    Ok(vecs.iter().map(SoftVector::lift).collect())
}

/// Rank diagnostics of the lifted (n+1) x k matrix.
pub fn rank_detail<T: Scalar>(vecs: &[SoftVector<T>], tol: T) -> Result<RankDetail> {
    if vecs.is_empty() {
        return Err(Error::Invalid("need at least one vector".into()));
    }
    if tol <= T::zero() {
        return Err(Error::InvalidTolerance(tol.to_f64_lossy()));
    }
    let cols = lifted_columns(vecs)?;
    let sv = linalg::singular_values(&cols);
    let rank = linalg::numerical_rank(&sv, tol);
    Ok(RankDetail {
        rank,
        singular_values: sv.iter().map(|s| s.to_f64_lossy()).collect(),
        independent: rank == vecs.len(),
    })
}

/// True iff the family is linearly independent: the lifted matrix has full
/// column rank at relative tolerance `tol`. More than n+1 vectors in
/// dimension n are dependent by pigeonhole.
pub fn is_independent<T: Scalar>(vecs: &[SoftVector<T>], tol: T) -> Result<bool> {
    if vecs.is_empty() {
        return Err(Error::Invalid("need at least one vector".into()));
    }
    if tol <= T::zero() {
        return Err(Error::InvalidTolerance(tol.to_f64_lossy()));
    }
    let n = vecs[0].dim();
    if vecs.len() > n + 1 {
        lifted_columns(vecs)?; // still surface dimension mismatches
        return Ok(false);
    }
    Ok(rank_detail(vecs, tol)?.independent)
}

/// The two sub-conditions sometimes used as a sufficient independence
/// criterion: the base vectors x_i alone are independent, and whether any
/// nonzero combination annihilating the base also annihilates the
/// parameters. Diagnostic only; the full verdict is [`is_independent`].
#[derive(Debug, Clone, Serialize)]
pub struct IndependenceParts {
    pub base_independent: bool,
    pub lifted_independent: bool,
}

pub fn independence_parts<T: Scalar>(vecs: &[SoftVector<T>], tol: T) -> Result<IndependenceParts> {
    if vecs.is_empty() {
        return Err(Error::Invalid("need at least one vector".into()));
    }
    if tol <= T::zero() {
        return Err(Error::InvalidTolerance(tol.to_f64_lossy()));
    }
    lifted_columns(vecs)?;
    let base_cols: Vec<Vec<T>> = vecs.iter().map(|v| v.x.clone()).collect();
    let base_sv = linalg::singular_values(&base_cols);
    let base_independent = linalg::numerical_rank(&base_sv, tol) == vecs.len();
    let lifted_independent = is_independent(vecs, tol)?;
    Ok(IndependenceParts {
        base_independent,
        lifted_independent,
    })
}

/// True iff the lift of `v` is within Euclidean residual `tol` of the span
/// of the lifted basis.
pub fn span_contains<T: Scalar>(
    basis: &[SoftVector<T>],
    v: &SoftVector<T>,
    tol: T,
) -> Result<bool> {
    if tol <= T::zero() {
        return Err(Error::InvalidTolerance(tol.to_f64_lossy()));
    }
    let lifted_v = v.lift();
    if basis.is_empty() {
        let norm = linalg::dot(&lifted_v, &lifted_v).sqrt();
        return Ok(norm <= tol);
    }
    let mut all = basis.to_vec();
    all.push(v.clone());
    let cols = lifted_columns(&all)?;
    let q = linalg::orthonormal_basis(&cols[..cols.len() - 1]);
    Ok(linalg::projection_residual(&q, &lifted_v) <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(x: &[f64], e: f64) -> SoftVector<f64> {
        SoftVector::new(x.to_vec(), e).unwrap()
    }

    #[test]
    fn add_is_componentwise() {
        let u = sv(&[1.0, 0.0], 1.0);
        let v = sv(&[0.0, 1.0], 1.0);
        assert_eq!(u.add(&v).unwrap(), sv(&[1.0, 1.0], 2.0));
    }

    #[test]
    fn zero_is_identity_and_neg_is_inverse() {
        let v = sv(&[3.0, -1.0], 2.0);
        assert_eq!(v.add(&SoftVector::zero(2)).unwrap(), v);
        assert_eq!(v.add(&v.neg()).unwrap(), SoftVector::zero(2));
    }

    #[test]
    fn add_rejects_dimension_mismatch() {
        let u = sv(&[1.0], 0.0);
        let v = sv(&[1.0, 2.0], 0.0);
        assert!(matches!(u.add(&v), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn scale_examples() {
        let v = sv(&[3.0, 4.0], 2.0);
        assert_eq!(v.scale(1.0).unwrap(), v);
        assert_eq!(v.scale(0.0).unwrap(), SoftVector::zero(2));
        assert_eq!(v.scale(-2.0).unwrap(), sv(&[-6.0, -8.0], -4.0));
    }

    #[test]
    fn scale_rejects_non_finite() {
        let v = sv(&[1.0], 1.0);
        assert_eq!(v.scale(f64::NAN), Err(Error::NonFinite));
    }

    #[test]
    fn neg_of_zero_is_zero() {
        assert_eq!(SoftVector::<f64>::zero(3).neg(), SoftVector::zero(3));
    }

    #[test]
    fn lincomb_examples() {
        let b1 = sv(&[1.0, 0.0], 1.0);
        let b2 = sv(&[0.0, 1.0], 1.0);
        let zero_coeffs = [SoftScalar(0.0), SoftScalar(0.0)];
        assert_eq!(
            lincomb(&zero_coeffs, &[b1.clone(), b2.clone()]).unwrap(),
            SoftVector::zero(2)
        );
        let single = lincomb(&[SoftScalar(2.0)], &[b1.clone()]).unwrap();
        assert_eq!(single, b1.scale(2.0).unwrap());
        let both = lincomb(&[SoftScalar(1.0), SoftScalar(1.0)], &[b1, b2]).unwrap();
        assert_eq!(both, sv(&[1.0, 1.0], 2.0));
    }

    #[test]
    fn lincomb_rejects_length_mismatch() {
        let v = sv(&[1.0], 0.0);
        assert!(lincomb(&[SoftScalar(1.0), SoftScalar(1.0)], &[v]).is_err());
        assert!(lincomb::<f64>(&[], &[]).is_err());
    }

    #[test]
    fn independence_examples() {
        let tol = 1e-10;
        let a = sv(&[1.0, 0.0], 0.0);
        let b = sv(&[0.0, 1.0], 0.0);
        assert!(is_independent(&[a.clone(), b.clone()], tol).unwrap());

        // third lift equals the sum of the first two
        let c = sv(&[1.0, 0.0], 1.0);
        let d = sv(&[0.0, 1.0], 1.0);
        let s = sv(&[1.0, 1.0], 2.0);
        assert!(!is_independent(&[c, d, s], tol).unwrap());

        assert!(!is_independent(&[SoftVector::zero(2)], tol).unwrap());
    }

    #[test]
    fn pigeonhole_rejects_oversized_families() {
        let tol = 1e-10;
        let vs: Vec<_> = (0..4).map(|i| sv(&[i as f64, 1.0], 1.0)).collect();
        assert!(!is_independent(&vs, tol).unwrap());
    }

    #[test]
    fn independence_rejects_bad_tol() {
        let v = sv(&[1.0], 0.0);
        assert!(matches!(
            is_independent(&[v], 0.0),
            Err(Error::InvalidTolerance(_))
        ));
    }

    #[test]
    fn repeated_vector_is_dependent() {
        let v = sv(&[1.0, 2.0], 3.0);
        assert!(!is_independent(&[v.clone(), v], 1e-10).unwrap());
    }

    #[test]
    fn span_examples() {
        let tol = 1e-9;
        let b = sv(&[1.0, 0.0], 1.0);
        assert!(span_contains(&[b.clone()], &b, tol).unwrap());
        assert!(span_contains(&[b.clone()], &SoftVector::zero(2), tol).unwrap());
        assert!(span_contains(&[b.clone()], &sv(&[2.0, 0.0], 2.0), tol).unwrap());
        assert!(!span_contains(&[b.clone()], &sv(&[2.0, 0.0], 0.0), tol).unwrap());
        assert!(!span_contains(&[], &b, tol).unwrap());
        assert!(span_contains::<f64>(&[], &SoftVector::zero(2), tol).unwrap());
    }

    #[test]
    fn independence_parts_diagnostic() {
        // base vectors dependent but lifts independent
        let a = sv(&[1.0, 0.0], 0.0);
        let b = sv(&[2.0, 0.0], 1.0);
        let parts = independence_parts(&[a, b], 1e-10).unwrap();
        assert!(!parts.base_independent);
        assert!(parts.lifted_independent);
    }

    #[test]
    fn json_form() {
        let v = sv(&[1.5, -2.0], 0.5);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, r#"{"x":[1.5,-2.0],"e":0.5}"#);
        let back: SoftVector<f64> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }
}
