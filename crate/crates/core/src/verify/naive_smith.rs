//! Reference invariant factors by plain Bezout elimination.
//!
//! Deliberately unrelated to the production routine in `linalg`: the pivot is
//! the first nonzero entry in column-major order, entries are cleared with
//! 2x2 unimodular Bezout transforms rather than Euclidean division, and no
//! transforms are recorded.

use crate::linalg::Matrix;
use crate::scalar::{extended_gcd, IntegerRing};

/// Largest dimension the oracle accepts.
pub const NAIVE_CAP: usize = 8;

/// Invariant factors (length `min(rows, cols)`, zeros trailing), or `None`
/// when either dimension exceeds [`NAIVE_CAP`].
pub fn naive_invariant_factors<T: IntegerRing>(a: &Matrix<T>) -> Option<Vec<T>> {
    if a.rows() > NAIVE_CAP || a.cols() > NAIVE_CAP {
        return None;
    }
    let (m, n) = a.shape();
    let mut w: Vec<Vec<T>> = (0..m).map(|i| a.row(i).to_vec()).collect();

    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = (t..n).flat_map(|j| (t..m).map(move |i| (i, j))).find(|&(i, j)| !w[i][j].is_zero()) else {
            break;
        };
        w.swap(t, pi);
        for row in w.iter_mut() {
            row.swap(t, pj);
        }

        loop {
            // Column t below the pivot.
            for i in t + 1..m {
                if w[i][t].is_zero() {
                    continue;
                }
                let [x, y, ag, bg] = bezout(&w[t][t], &w[i][t]);
                for j in 0..n {
                    let (p, q) = (w[t][j].clone(), w[i][j].clone());
                    w[t][j] = x.clone() * p.clone() + y.clone() * q.clone();
                    w[i][j] = ag.clone() * q - bg.clone() * p;
                }
            }
            // Row t right of the pivot.
            for j in t + 1..n {
                if w[t][j].is_zero() {
                    continue;
                }
                let [x, y, ag, bg] = bezout(&w[t][t], &w[t][j]);
                for row in w.iter_mut() {
                    let (p, q) = (row[t].clone(), row[j].clone());
                    row[t] = x.clone() * p.clone() + y.clone() * q.clone();
                    row[j] = ag.clone() * q - bg.clone() * p;
                }
            }
            if (t + 1..m).any(|i| !w[i][t].is_zero()) {
                continue;
            }
            let pivot = w[t][t].clone();
            match (t + 1..m).find(|&i| (t + 1..n).any(|j| !w[i][j].is_multiple_of(&pivot))) {
                Some(i) => {
                    for j in 0..n {
                        let v = w[i][j].clone();
                        w[t][j] = w[t][j].clone() + v;
                    }
                }
                None => break,
            }
        }
        t += 1;
    }

    Some((0..m.min(n)).map(|i| w[i][i].abs()).collect())
}

/// `[x, y, a/g, b/g]` with `x*a + y*b = g = gcd(a, b)`, so that
/// `[[x, y], [-b/g, a/g]]` is unimodular and zeroes `b`. When `a` divides
/// `b` this is plain subtraction, which keeps cleared lines cleared.
fn bezout<T: IntegerRing>(a: &T, b: &T) -> [T; 4] {
    if b.is_multiple_of(a) {
        return [T::one(), T::zero(), T::one(), b.clone() / a.clone()];
    }
    let (g, x, y) = extended_gcd(a, b);
    [x, y, a.clone() / g.clone(), b.clone() / g]
}

/// Determinant by the Leibniz permutation expansion; for small matrices only.
pub fn leibniz_det<T: IntegerRing>(a: &Matrix<T>) -> Option<T> {
    let n = a.rows();
    if !a.is_square() || n > NAIVE_CAP {
        return None;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = T::zero();
    // Heap's algorithm; each step is one transposition.
    let mut c = vec![0usize; n];
    let mut sign_positive = true;
    let term = |perm: &[usize]| (0..n).fold(T::one(), |acc, i| acc * a[(i, perm[i])].clone());
    total = total + term(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign_positive = !sign_positive;
            let t = term(&perm);
            total = if sign_positive { total + t } else { total - t };
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Some(total)
}
