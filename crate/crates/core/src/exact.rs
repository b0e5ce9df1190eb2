//! Exact rank computation by Gaussian elimination over an exact field,
//! typically rationals. Serves as the independent oracle for the
//! floating-point independence checker.

use std::ops::{Div, Mul, Sub};

use num_rational::Ratio;
use num_traits::{One, Zero};

pub type Rational = Ratio<i64>;

/// Rank of the matrix given as a list of rows, by exact Gaussian
/// elimination with partial (first-nonzero) pivoting.
pub fn exact_rank<T>(mut rows: Vec<Vec<T>>) -> usize
where
    T: Clone + Zero + One + PartialEq + Sub<Output = T> + Mul<Output = T> + Div<Output = T>,
{
    let m = rows.len();
    if m == 0 {
        return 0;
    }
    let n = rows[0].len();
    let mut rank = 0;
    for col in 0..n {
        if rank == m {
            break;
        }
        let pivot = (rank..m).find(|&r| !rows[r][col].is_zero());
        let Some(pivot) = pivot else { continue };
        rows.swap(rank, pivot);
        let pv = rows[rank][col].clone();
        for r in (rank + 1)..m {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone() / pv.clone();
            for c in col..n {
                let sub = factor.clone() * rows[rank][c].clone();
                rows[r][c] = rows[r][c].clone() - sub;
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of the lifted matrix of a family of integer-entry soft vectors,
/// columns (x_1, ..., x_n, e) per vector, computed exactly.
pub fn lifted_rank_exact(vecs: &[(Vec<i64>, i64)]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    let n = vecs[0].0.len();
    let rows: Vec<Vec<Rational>> = (0..=n)
        .map(|r| {
            vecs.iter()
                .map(|(x, e)| {
                    let entry = if r < n { x[r] } else { *e };
                    Rational::from_integer(entry)
                })
                .collect()
        })
        .collect();
    exact_rank(rows)
}

/// Exact independence verdict for integer-entry soft vectors: full column
/// rank of the lifted matrix.
pub fn lifted_independent_exact(vecs: &[(Vec<i64>, i64)]) -> bool {
    !vecs.is_empty() && lifted_rank_exact(vecs) == vecs.len()
}
