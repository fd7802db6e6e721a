use thiserror::Error;

use super::Matrix;
use crate::scalar::IntegerRing;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("determinant of a non-square {rows}x{cols} matrix")]
pub struct DetError {
    pub rows: usize,
    pub cols: usize,
}

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// The 0x0 determinant is 1.
pub fn det<T: IntegerRing>(a: &Matrix<T>) -> Result<T, DetError> {
    if !a.is_square() {
        return Err(DetError { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n {
        if m[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                return Ok(T::zero());
            };
            m.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[(i, j)].clone() * m[(k, k)].clone() - m[(i, k)].clone() * m[(k, j)].clone();
                // Sylvester's identity: the division is exact.
                m[(i, j)] = v / prev.clone();
            }
            m[(i, k)] = T::zero();
        }
        prev = m[(k, k)].clone();
    }
    Ok(if n == 0 { T::one() } else { sign * m[(n - 1, n - 1)].clone() })
}
