//! Dense exact linear algebra over the rationals.
//!
//! Matrices are row-major `Vec<QVec>`. Sizes here never exceed a few dozen
//! rows, so plain Gauss–Jordan elimination is all that is needed.

use crate::rational::{dot, QVec, Rational};
use num_traits::{One, Zero};

pub type QMat = Vec<QVec>;

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[QVec], ncols: usize) -> (QMat, Vec<usize>) {
    let mut m: QMat = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[QVec], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x : row · x = 0 for every row}`.
pub fn nullspace(rows: &[QVec], ncols: usize) -> QMat {
    let (r, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); ncols];
            x[f] = Rational::one();
            for (row, &p) in r.iter().zip(&pivots) {
                x[p] = -row[f].clone();
            }
            x
        })
        .collect()
}

/// Canonical basis of the row space (the nonzero rows of the RREF).
pub fn row_space_basis(rows: &[QVec], ncols: usize) -> QMat {
    rref(rows, ncols).0
}

/// Solves `a x = b` for square nonsingular `a`.
pub fn solve(a: &[QVec], b: &[Rational]) -> Option<QVec> {
    let n = a.len();
    let aug: QMat = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, n + 1);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(r.into_iter().map(|row| row[n].clone()).collect())
}

pub fn mat_vec(a: &[QVec], x: &[Rational]) -> QVec {
    a.iter().map(|row| dot(row, x)).collect()
}

pub fn transpose(a: &[QVec], ncols: usize) -> QMat {
    (0..ncols)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_mul(a: &[QVec], b: &[QVec], bcols: usize) -> QMat {
    let bt = transpose(b, bcols);
    a.iter()
        .map(|row| bt.iter().map(|col| dot(row, col)).collect())
        .collect()
}

pub fn identity(n: usize) -> QMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Coordinates of `v` in the basis whose vectors are the rows of `basis`,
/// or `None` when `v` is outside their span.
pub fn coordinates_in(basis: &[QVec], v: &[Rational]) -> Option<QVec> {
    let k = basis.len();
    let d = v.len();
    // Columns are basis vectors; append v and eliminate.
    let rows: QMat = (0..d)
        .map(|i| {
            let mut r: QVec = basis.iter().map(|b| b[i].clone()).collect();
            r.push(v[i].clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&rows, k + 1);
    if pivots.contains(&k) || pivots.len() != k {
        return None;
    }
    Some(r.iter().take(k).map(|row| row[k].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{qvec, ratio};

    #[test]
    fn rank_and_nullspace_of_trace_row() {
        let a = vec![qvec(&[1, 1, 1])];
        assert_eq!(rank(&a, 3), 1);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(dot(&a[0], v).is_zero());
        }
    }

    #[test]
    fn solve_two_by_two() {
        let a = vec![qvec(&[2, 1]), qvec(&[1, 3])];
        let x = solve(&a, &qvec(&[3, 5])).unwrap();
        assert_eq!(x, vec![ratio(4, 5), ratio(7, 5)]);
        assert!(solve(&[qvec(&[1, 2]), qvec(&[2, 4])], &qvec(&[1, 1])).is_none());
    }

    #[test]
    fn coordinates_in_span() {
        let basis = vec![qvec(&[1, -1, 0]), qvec(&[0, 1, -1])];
        assert_eq!(
            coordinates_in(&basis, &qvec(&[1, 0, -1])).unwrap(),
            qvec(&[1, 1])
        );
        assert!(coordinates_in(&basis, &qvec(&[1, 0, 0])).is_none());
    }
}
