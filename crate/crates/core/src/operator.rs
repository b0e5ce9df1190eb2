//! Soft linear operators as block-linear maps on the lifted space
//! R^n (+) R. The block form (A, b, c, lam) realizes exactly the additive
//! and homogeneous maps between soft vector spaces, so linearity holds by
//! construction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::vector::SoftVector;

/// apply((x, e)) = (A x + e b, <c, x> + lam e)
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SoftLinearOperator<T> {
    #[serde(rename = "A")]
    pub a: Vec<Vec<T>>,
    pub b: Vec<T>,
    pub c: Vec<T>,
    pub lam: T,
}

impl<T: Scalar> SoftLinearOperator<T> {
    pub fn new(a: Vec<Vec<T>>, b: Vec<T>, c: Vec<T>, lam: T) -> Result<Self> {
        let op = Self { a, b, c, lam };
        op.validate()?;
        Ok(op)
    }

    /// Checks dimensions and finiteness (used after deserialization).
    pub fn validate(&self) -> Result<()> {
        let m = self.a.len();
        if m == 0 {
            return Err(Error::Invalid("output dimension must be at least 1".into()));
        }
        let n = self.a[0].len();
        if n == 0 {
            return Err(Error::Invalid("input dimension must be at least 1".into()));
        }
        for row in &self.a {
            if row.len() != n {
                return Err(Error::Invalid("matrix rows have unequal lengths".into()));
            }
        }
        if self.b.len() != m {
            return Err(Error::DimensionMismatch {
                left: self.b.len(),
                right: m,
            });
        }
        if self.c.len() != n {
            return Err(Error::DimensionMismatch {
                left: self.c.len(),
                right: n,
            });
        }
        let finite = self.a.iter().flatten().all(|v| v.is_finite())
            && self.b.iter().all(|v| v.is_finite())
            && self.c.iter().all(|v| v.is_finite())
            && self.lam.is_finite();
        if !finite {
            return Err(Error::NonFinite);
        }
        Ok(())
    }

    pub fn in_dim(&self) -> usize {
        self.a[0].len()
    }

    pub fn out_dim(&self) -> usize {
        self.a.len()
    }

    /// Dimension of the lifted input space, n + 1.
    pub fn lifted_in_dim(&self) -> usize {
        self.in_dim() + 1
    }

    pub fn identity(n: usize) -> Self {
        let a = (0..n)
            .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
            .collect();
        Self {
            a,
            b: vec![T::zero(); n],
            c: vec![T::zero(); n],
            lam: T::one(),
        }
    }

    pub fn zeros(m: usize, n: usize) -> Self {
        Self {
            a: vec![vec![T::zero(); n]; m],
            b: vec![T::zero(); m],
            c: vec![T::zero(); n],
            lam: T::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().flatten().all(|v| v.is_zero())
            && self.b.iter().all(|v| v.is_zero())
            && self.c.iter().all(|v| v.is_zero())
            && self.lam.is_zero()
    }

    pub fn apply(&self, v: &SoftVector<T>) -> Result<SoftVector<T>> {
        if v.dim() != self.in_dim() {
            return Err(Error::DimensionMismatch {
                left: v.dim(),
                right: self.in_dim(),
            });
        }
        let x = self
            .a
            .iter()
            .zip(&self.b)
            .map(|(row, &bi)| {
                row.iter()
                    .zip(&v.x)
                    .fold(T::zero(), |s, (&aij, &xj)| s + aij * xj)
                    + v.e * bi
            })
            .collect();
        let e = self
            .c
            .iter()
            .zip(&v.x)
            .fold(T::zero(), |s, (&cj, &xj)| s + cj * xj)
            + self.lam * v.e;
        Ok(SoftVector { x, e })
    }

    /// The (m+1) x (n+1) matrix [[A, b], [c^T, lam]] acting on lifts.
    pub fn lifted_matrix(&self) -> Vec<Vec<T>> {
        let mut rows: Vec<Vec<T>> = self
            .a
            .iter()
            .zip(&self.b)
            .map(|(row, &bi)| {
                let mut r = row.clone();
                r.push(bi);
                r
            })
            .collect();
        let mut last = self.c.clone();
        last.push(self.lam);
        rows.push(last);
        rows
    }

    /// Inverse of [`SoftLinearOperator::lifted_matrix`].
    pub fn from_lifted(rows: &[Vec<T>]) -> Result<Self> {
        if rows.len() < 2 || rows[0].len() < 2 {
            return Err(Error::Invalid("lifted matrix must be at least 2x2".into()));
        }
        let m = rows.len() - 1;
        let n = rows[0].len() - 1;
        let a = rows[..m].iter().map(|r| r[..n].to_vec()).collect();
        let b = rows[..m].iter().map(|r| r[n]).collect();
        let c = rows[m][..n].to_vec();
        let lam = rows[m][n];
        Self::new(a, b, c, lam)
    }

    /// Composition self after other: (self . other)(v) = self(other(v)).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.in_dim() != other.out_dim() {
            return Err(Error::DimensionMismatch {
                left: self.in_dim(),
                right: other.out_dim(),
            });
        }
        let ls = self.lifted_matrix();
        let lt = other.lifted_matrix();
        let rows = ls.len();
        let inner = lt.len();
        let cols = lt[0].len();
        let product: Vec<Vec<T>> = (0..rows)
            .map(|i| {
                (0..cols)
                    .map(|j| {
                        (0..inner).fold(T::zero(), |s, k| s + ls[i][k] * lt[k][j])
                    })
                    .collect()
            })
            .collect();
        Self::from_lifted(&product)
    }

    /// k-th compositional power of a square operator, k >= 1.
    pub fn power(&self, k: u32) -> Result<Self> {
        if self.in_dim() != self.out_dim() {
            return Err(Error::DimensionMismatch {
                left: self.in_dim(),
                right: self.out_dim(),
            });
        }
        if k == 0 {
            return Err(Error::Invalid("power requires k >= 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.in_dim() != other.in_dim() || self.out_dim() != other.out_dim() {
            return Err(Error::DimensionMismatch {
                left: self.in_dim(),
                right: other.in_dim(),
            });
        }
        let a = self
            .a
            .iter()
            .zip(&other.a)
            .map(|(r1, r2)| r1.iter().zip(r2).map(|(&x, &y)| x + y).collect())
            .collect();
        let b = self.b.iter().zip(&other.b).map(|(&x, &y)| x + y).collect();
        let c = self.c.iter().zip(&other.c).map(|(&x, &y)| x + y).collect();
        Self::new(a, b, c, self.lam + other.lam)
    }

    pub fn scale(&self, r: T) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::NonFinite);
        }
        let a = self
            .a
            .iter()
            .map(|row| row.iter().map(|&x| r * x).collect())
            .collect();
        let b = self.b.iter().map(|&x| r * x).collect();
        let c = self.c.iter().map(|&x| r * x).collect();
        Self::new(a, b, c, r * self.lam)
    }
}
