//! Double description method for pointed rational cones.

use crate::linalg::{self, QMat};
use crate::rational::{self, dot, QVec, Rational};
use num_traits::{One, Signed, Zero};

/// Result of converting `{x : A x >= 0, E x = 0}` to generator form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VRep {
    /// Extreme rays of the cone modulo its lineality space, primitive.
    pub rays: Vec<QVec>,
    /// Basis of the lineality space.
    pub lineality: Vec<QVec>,
}

fn normalized_rows(rows: &[QVec]) -> Vec<QVec> {
    let mut out: Vec<QVec> = rows
        .iter()
        .filter(|r| !rational::is_zero_vec(r))
        .map(|r| rational::primitive_integer(r))
        .collect();
    out.sort_by(|a, b| rational::lex_cmp(a, b));
    out.dedup();
    out
}

/// Extreme rays of `{x ∈ Q^k : a · x >= 0 for every row a}` where the rows
/// have rank `k`, so the cone is pointed. Rays are primitive and sorted.
pub fn extreme_rays(rows: &[QVec], k: usize) -> Vec<QVec> {
    let rows = normalized_rows(rows);
    assert_eq!(
        linalg::rank(&rows, k),
        k,
        "inequality rows must have full rank"
    );

    // Initial simplicial cone from the first k independent rows.
    let mut basis: Vec<usize> = Vec::with_capacity(k);
    let mut chosen: QMat = Vec::with_capacity(k);
    for (i, r) in rows.iter().enumerate() {
        if basis.len() == k {
            break;
        }
        chosen.push(r.clone());
        if linalg::rank(&chosen, k) == chosen.len() {
            basis.push(i);
        } else {
            chosen.pop();
        }
    }
    let mut rays: Vec<QVec> = (0..k)
        .map(|j| {
            let mut e = vec![Rational::zero(); k];
            e[j] = Rational::one();
            rational::primitive_integer(&linalg::solve(&chosen, &e).expect("independent rows"))
        })
        .collect();
    let mut processed: Vec<usize> = basis.clone();

    for (i, a) in rows.iter().enumerate() {
        if basis.contains(&i) {
            continue;
        }
        let vals: Vec<Rational> = rays.iter().map(|r| dot(a, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&j| vals[j].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&j| vals[j].is_negative()).collect();
        if neg.is_empty() {
            processed.push(i);
            continue;
        }
        let zero_rows = |r: &QVec| -> Vec<usize> {
            processed
                .iter()
                .copied()
                .filter(|&p| dot(&rows[p], r).is_zero())
                .collect()
        };
        let zsets: Vec<Vec<usize>> = rays.iter().map(zero_rows).collect();
        let mut next: Vec<QVec> = rays
            .iter()
            .zip(&vals)
            .filter(|(_, v)| !v.is_negative())
            .map(|(r, _)| r.clone())
            .collect();
        for &p in &pos {
            for &n in &neg {
                let common: Vec<usize> = zsets[p]
                    .iter()
                    .copied()
                    .filter(|z| zsets[n].contains(z))
                    .collect();
                if k < 2 || common.len() < k - 2 {
                    continue;
                }
                let common_rows: QMat = common.iter().map(|&c| rows[c].clone()).collect();
                if linalg::rank(&common_rows, k) != k - 2 {
                    continue;
                }
                let new = rational::sub(
                    &rational::scale(&vals[p], &rays[n]),
                    &rational::scale(&vals[n], &rays[p]),
                );
                if rational::is_zero_vec(&new) {
                    continue;
                }
                let new = rational::primitive_integer(&new);
                if !next.contains(&new) {
                    next.push(new);
                }
            }
        }
        rays = next;
        processed.push(i);
    }
    rays.sort_by(|a, b| rational::lex_cmp(a, b));
    rays
}

/// Generator form of `{x ∈ Q^d : a · x >= 0 (a ∈ ineqs), e · x = 0 (e ∈ eqs)}`.
pub fn h_to_v(ineqs: &[QVec], eqs: &[QVec], d: usize) -> VRep {
    let n: QMat = if eqs.is_empty() {
        linalg::identity(d)
    } else {
        linalg::nullspace(eqs, d)
    };
    let p = n.len();
    if p == 0 {
        return VRep {
            rays: vec![],
            lineality: vec![],
        };
    }
    let lift = |y: &[Rational]| -> QVec {
        let mut x = vec![Rational::zero(); d];
        for (yi, row) in y.iter().zip(&n) {
            for (o, v) in x.iter_mut().zip(row) {
                *o += yi * v;
            }
        }
        x
    };
    let a1: QMat = ineqs.iter().map(|a| linalg::mat_vec(&n, a)).collect();
    let lin_y = linalg::nullspace(&a1, p);
    let lin_x: QMat = lin_y.iter().map(|y| lift(y)).collect();
    let lineality = linalg::row_space_basis(&lin_x, d)
        .iter()
        .map(|v| rational::primitive_integer(v))
        .collect();
    let m = linalg::row_space_basis(&a1, p);
    let q = m.len();
    if q == 0 {
        return VRep {
            rays: vec![],
            lineality,
        };
    }
    let a2: QMat = a1.iter().map(|a| linalg::mat_vec(&m, a)).collect();
    let mut rays: Vec<QVec> = extreme_rays(&a2, q)
        .iter()
        .map(|u| {
            let mut y = vec![Rational::zero(); p];
            for (ui, row) in u.iter().zip(&m) {
                for (o, v) in y.iter_mut().zip(row) {
                    *o += ui * v;
                }
            }
            rational::primitive_integer(&lift(&y))
        })
        .collect();
    rays.sort_by(|a, b| rational::lex_cmp(a, b));
    VRep { rays, lineality }
}
