use super::Matrix;
use crate::scalar::IntegerRing;

/// Smith normal form with its unimodular certificate: `u * a * v == d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith<T: IntegerRing> {
    pub u: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
    /// Diagonal of `d`, nonnegative, each dividing the next, zeros trailing.
    /// Length is `min(rows, cols)`.
    pub factors: Vec<T>,
}

impl<T: IntegerRing> Smith<T> {
    pub fn rank(&self) -> usize {
        self.factors.iter().filter(|d| !d.is_zero()).count()
    }

    pub fn nonzero_factors(&self) -> impl Iterator<Item = &T> {
        self.factors.iter().filter(|d| !d.is_zero())
    }
}

/// Diagonalizes `a` by unimodular row and column operations.
///
/// Pivots on the entry of least absolute value in the active block, clears
/// its row and column by Euclidean division, and folds any row that breaks
/// the divisibility chain back into the pivot row.
pub fn smith_normal_form<T: IntegerRing>(a: &Matrix<T>) -> Smith<T> {
    let (m, n) = a.shape();
    let mut d = a.clone();
    let mut u = Matrix::identity(m);
    let mut v = Matrix::identity(n);

    'diagonal: for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = least_pivot(&d, t) else {
                break 'diagonal;
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d[(t, t)].clone();
            let mut cleared = true;
            for i in t + 1..m {
                let q = d[(i, t)].clone() / pivot.clone();
                if !q.is_zero() {
                    d.add_row_multiple(i, t, &-q.clone());
                    u.add_row_multiple(i, t, &-q);
                }
                cleared &= d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                let q = d[(t, j)].clone() / pivot.clone();
                if !q.is_zero() {
                    d.add_col_multiple(j, t, &-q.clone());
                    v.add_col_multiple(j, t, &-q);
                }
                cleared &= d[(t, j)].is_zero();
            }
            if !cleared {
                continue;
            }

            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    d.add_row_multiple(t, i, &T::one());
                    u.add_row_multiple(t, i, &T::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    let factors = d.diagonal();
    Smith { u, d, v, factors }
}

fn least_pivot<T: IntegerRing>(d: &Matrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = d[(i, j)].abs();
            if x.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| x < *b) {
                let unit = x.is_one();
                best = Some((i, j, x));
                if unit {
                    return best.map(|(i, j, _)| (i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}
