//! Unimodular lattices `gZ^n` for `n = 2, 3` in double precision.
//!
//! A basis is stored column-wise: `basis[j]` is the `j`-th basis vector.
//! After every group action the basis is reduced (Lagrange–Gauss for
//! `n = 2`, LLL with `δ = 0.99` for `n = 3`) and rescaled to determinant one.

use crate::SimError;

pub type Mat<const N: usize> = [[f64; N]; N];

pub const LLL_DELTA: f64 = 0.99;
/// Determinant drift that triggers a warning before renormalization.
pub const DET_WARN: f64 = 1e-6;
const DET_RENORM: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq)]
pub struct LatticePoint<const N: usize> {
    basis: Mat<N>,
    det_renorm_count: u64,
    det_warnings: u64,
}

fn dot<const N: usize>(a: &[f64; N], b: &[f64; N]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy<const N: usize>(y: &mut [f64; N], a: f64, x: &[f64; N]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

/// Determinant of the matrix whose columns are `cols`.
pub fn det<const N: usize>(cols: &Mat<N>) -> f64 {
    match N {
        1 => cols[0][0],
        2 => cols[0][0] * cols[1][1] - cols[1][0] * cols[0][1],
        3 => {
            let (a, b, c) = (&cols[0], &cols[1], &cols[2]);
            a[0] * (b[1] * c[2] - b[2] * c[1]) - b[0] * (a[1] * c[2] - a[2] * c[1])
                + c[0] * (a[1] * b[2] - a[2] * b[1])
        }
        _ => unimplemented!("dimension {N}"),
    }
}

/// `g · cols` where `g` is given row-major (`g[i][j]` = entry `(i, j)`).
pub fn mat_apply<const N: usize>(g: &Mat<N>, cols: &Mat<N>) -> Mat<N> {
    let mut out = [[0.0; N]; N];
    for (j, col) in cols.iter().enumerate() {
        for (i, row) in g.iter().enumerate() {
            out[j][i] = dot(row, col);
        }
    }
    out
}

/// Row-major product `a · b`.
pub fn mat_mul<const N: usize>(a: &Mat<N>, b: &Mat<N>) -> Mat<N> {
    let mut out = [[0.0; N]; N];
    for i in 0..N {
        for j in 0..N {
            out[i][j] = (0..N).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn identity<const N: usize>() -> Mat<N> {
    let mut m = [[0.0; N]; N];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    m
}

/// Row-major diagonal matrix `diag(exp(logs))`.
pub fn diag_exp<const N: usize>(logs: &[f64; N]) -> Mat<N> {
    let mut m = [[0.0; N]; N];
    for i in 0..N {
        m[i][i] = logs[i].exp();
    }
    m
}

struct GramSchmidt<const N: usize> {
    mu: Mat<N>,
    b: [f64; N],
}

fn gram_schmidt<const N: usize>(basis: &Mat<N>) -> GramSchmidt<N> {
    let mut star = *basis;
    let mut mu = [[0.0; N]; N];
    let mut b = [0.0; N];
    for i in 0..N {
        for j in 0..i {
            mu[i][j] = dot(&basis[i], &star[j]) / b[j];
            let sj = star[j];
            axpy(&mut star[i], -mu[i][j], &sj);
        }
        b[i] = dot(&star[i], &star[i]);
    }
    GramSchmidt { mu, b }
}

fn lagrange_reduce<const N: usize>(basis: &mut Mat<N>) {
    let mut n0 = dot(&basis[0], &basis[0]);
    let mut n1 = dot(&basis[1], &basis[1]);
    if n1 < n0 {
        basis.swap(0, 1);
        std::mem::swap(&mut n0, &mut n1);
    }
    loop {
        let q = (dot(&basis[0], &basis[1]) / n0).round();
        if q != 0.0 {
            let b0 = basis[0];
            axpy(&mut basis[1], -q, &b0);
            n1 = dot(&basis[1], &basis[1]);
        }
        if n1 >= n0 {
            break;
        }
        basis.swap(0, 1);
        std::mem::swap(&mut n0, &mut n1);
    }
}

fn lll_reduce<const N: usize>(basis: &mut Mat<N>) {
    let mut k = 1;
    let mut guard = 0usize;
    while k < N {
        guard += 1;
        if guard > 100_000 {
            break;
        }
        for j in (0..k).rev() {
            let gs = gram_schmidt(basis);
            let q = gs.mu[k][j].round();
            if q != 0.0 {
                let bj = basis[j];
                axpy(&mut basis[k], -q, &bj);
            }
        }
        let gs = gram_schmidt(basis);
        let lhs = gs.b[k];
        let rhs = (LLL_DELTA - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.b[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
}

/// Visits every integer coefficient vector `x ≠ 0` with `|Σ x_i b_i|² < r2`
/// (Fincke–Pohst), passing the squared length computed from Gram–Schmidt data.
fn enumerate<const N: usize>(basis: &Mat<N>, r2: f64, visit: &mut impl FnMut(&[i64; N], f64)) {
    let gs = gram_schmidt(basis);
    let mut x = [0i64; N];
    fn rec<const N: usize>(
        level: usize,
        partial: f64,
        x: &mut [i64; N],
        gs: &GramSchmidt<N>,
        r2: f64,
        visit: &mut impl FnMut(&[i64; N], f64),
    ) {
        let c: f64 = -((level + 1)..N)
            .map(|j| x[j] as f64 * gs.mu[j][level])
            .sum::<f64>();
        let room = (r2 - partial) / gs.b[level];
        if room < 0.0 {
            return;
        }
        let w = room.sqrt();
        let lo = (c - w).ceil() as i64;
        let hi = (c + w).floor() as i64;
        for xi in lo..=hi {
            let d = xi as f64 - c;
            let p = partial + d * d * gs.b[level];
            if p >= r2 {
                continue;
            }
            x[level] = xi;
            if level == 0 {
                if x.iter().any(|&v| v != 0) {
                    visit(x, p);
                }
            } else {
                rec(level - 1, p, x, gs, r2, visit);
            }
        }
        x[level] = 0;
    }
    rec(N - 1, 0.0, &mut x, &gs, r2, visit);
}

impl<const N: usize> LatticePoint<N> {
    /// The standard lattice `Z^N`.
    pub fn standard() -> Self {
        LatticePoint {
            basis: identity(),
            det_renorm_count: 0,
            det_warnings: 0,
        }
    }

    /// Lattice spanned by the columns of `basis`, rescaled to covolume one.
    pub fn from_basis(basis: Mat<N>) -> Result<Self, SimError> {
        if !(2..=3).contains(&N) {
            return Err(SimError::UnsupportedDimension(N));
        }
        let d = det(&basis);
        if !d.is_finite() || d.abs() < 1e-300 {
            return Err(SimError::DegenerateBasis);
        }
        let mut lp = LatticePoint {
            basis,
            det_renorm_count: 0,
            det_warnings: 0,
        };
        if d < 0.0 {
            for x in lp.basis[0].iter_mut() {
                *x = -*x;
            }
        }
        lp.normalize();
        lp.det_renorm_count = 0;
        lp.det_warnings = 0;
        Ok(lp)
    }

    pub fn basis(&self) -> &Mat<N> {
        &self.basis
    }

    pub fn det(&self) -> f64 {
        det(&self.basis)
    }

    pub fn det_renorm_count(&self) -> u64 {
        self.det_renorm_count
    }

    /// Number of renormalizations where the drift exceeded `DET_WARN`.
    pub fn det_warnings(&self) -> u64 {
        self.det_warnings
    }

    fn normalize(&mut self) {
        self.reduce();
        let d = det(&self.basis);
        let drift = (d - 1.0).abs();
        if drift > DET_RENORM {
            if drift > DET_WARN {
                self.det_warnings += 1;
            }
            let f = d.abs().powf(-1.0 / N as f64);
            for col in self.basis.iter_mut() {
                for x in col.iter_mut() {
                    *x *= f;
                }
            }
            self.det_renorm_count += 1;
        }
    }

    fn reduce(&mut self) {
        if N == 2 {
            lagrange_reduce(&mut self.basis);
        } else {
            lll_reduce(&mut self.basis);
        }
        if det(&self.basis) < 0.0 {
            let last = N - 1;
            for x in self.basis[last].iter_mut() {
                *x = -*x;
            }
        }
    }

    /// Replaces the lattice `x` by `g x` (row-major `g`).
    pub fn apply(&mut self, g: &Mat<N>) {
        self.basis = mat_apply(g, &self.basis);
        self.normalize();
    }

    /// Right multiplication of the basis by an integer matrix (row-major).
    /// Changes the basis, not the lattice, when `gamma ∈ GL_N(Z)`.
    pub fn change_basis(&self, gamma: &[[i64; N]; N]) -> Result<Self, SimError> {
        let mut cols = [[0.0; N]; N];
        for (j, col) in cols.iter_mut().enumerate() {
            for (k, b) in self.basis.iter().enumerate() {
                axpy(col, gamma[k][j] as f64, b);
            }
        }
        Self::from_basis(cols)
    }

    /// Length `λ₁` of a shortest nonzero lattice vector.
    pub fn shortest_vector(&self) -> f64 {
        let n0 = dot(&self.basis[0], &self.basis[0]);
        if N == 2 {
            return n0.sqrt();
        }
        let mut best = n0;
        let r2 = n0 * (1.0 + 1e-12);
        enumerate(&self.basis, r2, &mut |x, _| {
            let mut v = [0.0; N];
            for (xi, b) in x.iter().zip(&self.basis) {
                axpy(&mut v, *xi as f64, b);
            }
            best = best.min(dot(&v, &v));
        });
        best.sqrt()
    }

    /// Number of nonzero lattice vectors of length `< radius`.
    pub fn count_within(&self, radius: f64) -> u64 {
        if radius <= 0.0 {
            return 0;
        }
        let r2 = radius * radius;
        let mut count = 0;
        let slack = r2 * (1.0 + 1e-9);
        enumerate(&self.basis, slack, &mut |x, _| {
            let mut v = [0.0; N];
            for (xi, b) in x.iter().zip(&self.basis) {
                axpy(&mut v, *xi as f64, b);
            }
            if dot(&v, &v) < r2 {
                count += 1;
            }
        });
        count
    }
}
