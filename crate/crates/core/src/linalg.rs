//! Small dense linear-algebra helpers on column-major matrices: singular
//! values by one-sided Jacobi, orthonormalization, and projection residuals.
//! Sized for the tiny lifted matrices this crate works with.

use crate::scalar::Scalar;

/// Singular values of the matrix whose columns are `cols`, sorted in
/// decreasing order. One-sided Jacobi: rotate column pairs until all are
/// mutually orthogonal, then read off the column norms.
pub fn singular_values<T: Scalar>(cols: &[Vec<T>]) -> Vec<T> {
    let mut cols: Vec<Vec<T>> = cols.to_vec();
    let k = cols.len();
    if k == 0 {
        return Vec::new();
    }
    let eps = T::epsilon() * T::from_f64_lossy(16.0);
    let max_sweeps = 60;
    for _ in 0..max_sweeps {
        let mut rotated = false;
        for i in 0..k {
            for j in (i + 1)..k {
                let (a, b, c) = {
                    let ci = &cols[i];
                    let cj = &cols[j];
                    let a = dot(ci, ci);
                    let b = dot(cj, cj);
                    let c = dot(ci, cj);
                    (a, b, c)
                };
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                if c.abs() <= eps * (a * b).sqrt() {
                    continue;
                }
                rotated = true;
                let two = T::from_f64_lossy(2.0);
                let zeta = (b - a) / (two * c);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let cs = T::one() / (T::one() + t * t).sqrt();
                let sn = cs * t;
                for r in 0..cols[i].len() {
                    let vi = cols[i][r];
                    let vj = cols[j][r];
                    cols[i][r] = cs * vi - sn * vj;
                    cols[j][r] = sn * vi + cs * vj;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<T> = cols.iter().map(|c| dot(c, c).sqrt()).collect();
    sv.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
    sv
}

/// Numerical rank: count of singular values exceeding `rel_tol` times the
/// largest one.
pub fn numerical_rank<T: Scalar>(singular: &[T], rel_tol: T) -> usize {
    match singular.first() {
        Some(&top) if top > T::zero() => {
            singular.iter().filter(|&&s| s > rel_tol * top).count()
        }
        _ => 0,
    }
}

/// Orthonormal basis for the span of `cols`, by modified Gram-Schmidt with
/// a relative drop tolerance for degenerate columns.
pub fn orthonormal_basis<T: Scalar>(cols: &[Vec<T>]) -> Vec<Vec<T>> {
    let scale = cols
        .iter()
        .map(|c| dot(c, c).sqrt())
        .fold(T::zero(), T::max);
    let drop_tol = scale * T::epsilon() * T::from_f64_lossy(64.0);
    let mut basis: Vec<Vec<T>> = Vec::new();
    for col in cols {
        let mut v = col.clone();
        for q in &basis {
            let coeff = dot(&v, q);
            for (vr, &qr) in v.iter_mut().zip(q) {
                *vr = *vr - coeff * qr;
            }
        }
        // second pass for stability
        for q in &basis {
            let coeff = dot(&v, q);
            for (vr, &qr) in v.iter_mut().zip(q) {
                *vr = *vr - coeff * qr;
            }
        }
        let norm = dot(&v, &v).sqrt();
        if norm > drop_tol && norm > T::zero() {
            for vr in v.iter_mut() {
                *vr = *vr / norm;
            }
            basis.push(v);
        }
    }
    basis
}

/// Euclidean norm of the residual of `v` after projecting onto the span of
/// the orthonormal columns `basis`.
pub fn projection_residual<T: Scalar>(basis: &[Vec<T>], v: &[T]) -> T {
    let mut r = v.to_vec();
    for q in basis {
        let coeff = dot(&r, q);
        for (rr, &qr) in r.iter_mut().zip(q) {
            *rr = *rr - coeff * qr;
        }
    }
    dot(&r, &r).sqrt()
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singular_values_of_diagonal() {
        let cols: Vec<Vec<f64>> = vec![vec![3.0, 0.0], vec![0.0, -2.0]];
        let sv = singular_values(&cols);
        assert!((sv[0] - 3.0).abs() < 1e-12);
        assert!((sv[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rank_of_dependent_columns() {
        let cols = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        let sv = singular_values(&cols);
        assert_eq!(numerical_rank(&sv, 1e-10), 1);
    }

    #[test]
    fn rank_of_zero_matrix_is_zero() {
        let cols = vec![vec![0.0, 0.0], vec![0.0, 0.0]];
        let sv = singular_values(&cols);
        assert_eq!(numerical_rank(&sv, 1e-10), 0);
    }

    #[test]
    fn projection_residual_in_and_out_of_span() {
        let basis = orthonormal_basis(&[vec![1.0, 0.0, 1.0]]);
        assert_eq!(basis.len(), 1);
        let r_in = projection_residual(&basis, &[2.0, 0.0, 2.0]);
        assert!(r_in < 1e-12);
        let r_out = projection_residual(&basis, &[2.0, 0.0, 0.0]);
        assert!((r_out - 2.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn singular_values_match_known_2x2() {
        // A = [[1, 1], [0, 1]]; singular values are sqrt((3 +- sqrt(5))/2)
        let cols = vec![vec![1.0, 0.0], vec![1.0, 1.0]];
        let sv = singular_values(&cols);
        let s0 = ((3.0 + 5.0f64.sqrt()) / 2.0).sqrt();
        let s1 = ((3.0 - 5.0f64.sqrt()) / 2.0).sqrt();
        assert!((sv[0] - s0).abs() < 1e-12);
        assert!((sv[1] - s1).abs() < 1e-12);
    }
}
