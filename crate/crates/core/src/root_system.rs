//! Classical root systems, their invariant forms and coroot vectors.
//!
//! Coordinates follow the usual matrix models. For type `A_{N-1}` the Cartan
//! subspace is the trace-zero hyperplane of the `N` diagonal entries and a
//! covector `Σ c_i e_i` is stored through its trace-zero representative, so
//! `e_i - e_j` is literally the vector with `1` at `i` and `-1` at `j`. For
//! `B`, `C`, `D` the Cartan subspace is all of `Q^r`.
//!
//! The invariant form on each simple factor is `kappa` times the standard
//! coordinate form. The default `kappa` is the Killing normalization, i.e.
//! the constant with `Σ_{α∈Φ} α(x)α(y) = kappa · x·y` on the factor.

use crate::error::{CoreError, Result};
use crate::linalg::{self, QMat};
use crate::rational::{self, int, primitive_integer, QVec, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn min_rank(self) -> usize {
        match self {
            Family::D => 2,
            _ => 1,
        }
    }

    /// Coordinate dimension of the matrix model for a given rank.
    pub fn coordinate_dim(self, rank: usize) -> usize {
        match self {
            Family::A => rank + 1,
            _ => rank,
        }
    }

    /// Killing-form constant for the factor, see the module docs.
    pub fn killing_kappa(self, rank: usize) -> Rational {
        let r = rank as i64;
        int(match self {
            Family::A => 2 * (r + 1),
            Family::B => 4 * r - 2,
            Family::C => 4 * r + 4,
            Family::D => 4 * r - 4,
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            _ => Err(CoreError::UnsupportedFamily(s.to_string())),
        }
    }
}

/// A functional on the Cartan subspace, in fixed coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Covector(pub QVec);

/// An element of the Cartan subspace.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanVector(pub QVec);

impl Covector {
    pub fn from_ints(xs: &[i64]) -> Self {
        Covector(rational::qvec(xs))
    }

    pub fn eval(&self, s: &CartanVector) -> Rational {
        rational::dot(&self.0, &s.0)
    }

    pub fn neg(&self) -> Self {
        Covector(rational::neg(&self.0))
    }

    pub fn is_zero(&self) -> bool {
        rational::is_zero_vec(&self.0)
    }
}

impl CartanVector {
    pub fn from_ints(xs: &[i64]) -> Self {
        CartanVector(rational::qvec(xs))
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        CartanVector(rational::scale(c, &self.0))
    }

    pub fn is_zero(&self) -> bool {
        rational::is_zero_vec(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleFactor {
    pub family: Family,
    pub rank: usize,
    pub kappa: Rational,
    /// First coordinate of the factor's block.
    pub offset: usize,
}

impl SimpleFactor {
    pub fn dim(&self) -> usize {
        self.family.coordinate_dim(self.rank)
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }
}

/// A reduced classical root system, possibly a product of simple factors.
#[derive(Debug, Clone)]
pub struct RootSystem {
    factors: Vec<SimpleFactor>,
    ambient_dim: usize,
    roots: Vec<Covector>,
    positive_roots: Vec<Covector>,
    simple_roots: Vec<Covector>,
    /// Invariant form `B` on the Cartan subspace (block scalar).
    gram_primal: QMat,
    /// Inner product on covectors, valid on Cartan-subspace representatives.
    gram_dual: QMat,
    /// Rows form a basis of the Cartan subspace.
    cartan_basis: QMat,
    /// Rows cut out the Cartan subspace inside `Q^ambient_dim`.
    cartan_equations: QMat,
    /// `E B E^T` for the basis `E` above.
    cartan_gram: QMat,
}

impl RootSystem {
    /// Builds a simple classical system with the Killing normalization.
    pub fn build(family: Family, rank: usize) -> Result<Self> {
        Self::product(&[(family, rank, None)])
    }

    pub fn build_with_kappa(family: Family, rank: usize, kappa: Rational) -> Result<Self> {
        Self::product(&[(family, rank, Some(kappa))])
    }

    /// Block-direct sum of simple factors; `None` selects the Killing kappa.
    pub fn product(spec: &[(Family, usize, Option<Rational>)]) -> Result<Self> {
        if spec.is_empty() {
            return Err(CoreError::InvalidRank {
                family: "empty product".into(),
                rank: 0,
            });
        }
        let mut factors = Vec::new();
        let mut offset = 0;
        for (family, rank, kappa) in spec {
            if *rank < family.min_rank() {
                return Err(CoreError::InvalidRank {
                    family: family.to_string(),
                    rank: *rank,
                });
            }
            let kappa = kappa.clone().unwrap_or_else(|| family.killing_kappa(*rank));
            if !kappa.is_positive() {
                return Err(CoreError::NonPositiveKappa);
            }
            let f = SimpleFactor {
                family: *family,
                rank: *rank,
                kappa,
                offset,
            };
            offset += f.dim();
            factors.push(f);
        }
        let d = offset;

        let mut positive = Vec::new();
        let mut simple = Vec::new();
        for f in &factors {
            let (pos, sim) = factor_roots(f.family, f.rank);
            let lift = |v: QVec| {
                let mut w = vec![Rational::zero(); d];
                for (i, x) in v.into_iter().enumerate() {
                    w[f.offset + i] = x;
                }
                Covector(w)
            };
            positive.extend(pos.into_iter().map(lift));
            simple.extend(sim.into_iter().map(lift));
        }
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(Covector::neg));

        let mut gram_primal = vec![vec![Rational::zero(); d]; d];
        for f in &factors {
            for (i, row) in gram_primal
                .iter_mut()
                .enumerate()
                .skip(f.offset)
                .take(f.dim())
            {
                row[i] = f.kappa.clone();
            }
        }

        let simple_rows: QMat = simple.iter().map(|c| c.0.clone()).collect();
        let cartan_basis = linalg::row_space_basis(&simple_rows, d);
        let cartan_equations: QMat = linalg::nullspace(&simple_rows, d)
            .iter()
            .map(|v| primitive_integer(v))
            .collect();
        let cartan_gram = gram_on_basis(&cartan_basis, &gram_primal);

        // <x, y> = x^T E^T M^{-1} E y for Cartan representatives x, y.
        let k = cartan_basis.len();
        let mut minv_cols = Vec::with_capacity(k);
        for j in 0..k {
            let mut e = vec![Rational::zero(); k];
            e[j] = Rational::one();
            minv_cols.push(linalg::solve(&cartan_gram, &e).expect("invariant form is definite"));
        }
        let minv = linalg::transpose(&minv_cols, k);
        let et = linalg::transpose(&cartan_basis, d);
        let gram_dual = linalg::mat_mul(&linalg::mat_mul(&et, &minv, k), &cartan_basis, d);

        Ok(RootSystem {
            factors,
            ambient_dim: d,
            roots,
            positive_roots: positive,
            simple_roots: simple,
            gram_primal,
            gram_dual,
            cartan_basis,
            cartan_equations,
            cartan_gram,
        })
    }

    pub fn factors(&self) -> &[SimpleFactor] {
        &self.factors
    }

    /// `A2`, `B3`, or `A2xB3` for products.
    pub fn label(&self) -> String {
        self.factors
            .iter()
            .map(SimpleFactor::label)
            .collect::<Vec<_>>()
            .join("x")
    }

    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn roots(&self) -> &[Covector] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Covector] {
        &self.positive_roots
    }

    pub fn simple_roots(&self) -> &[Covector] {
        &self.simple_roots
    }

    pub fn gram_primal(&self) -> &QMat {
        &self.gram_primal
    }

    pub fn gram_dual(&self) -> &QMat {
        &self.gram_dual
    }

    pub fn cartan_basis(&self) -> &QMat {
        &self.cartan_basis
    }

    pub fn cartan_equations(&self) -> &QMat {
        &self.cartan_equations
    }

    pub fn is_root(&self, c: &Covector) -> bool {
        self.roots.contains(c)
    }

    pub fn contains_cartan(&self, s: &[Rational]) -> bool {
        s.len() == self.ambient_dim
            && self
                .cartan_equations
                .iter()
                .all(|eq| rational::dot(eq, s).is_zero())
    }

    pub fn check_dim(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.ambient_dim {
            return Err(CoreError::DimensionMismatch {
                expected: self.ambient_dim,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Checks that `s` has the right length and lies in the Cartan subspace.
    pub fn check_cartan(&self, s: &[Rational]) -> Result<()> {
        self.check_dim(s)?;
        if !self.contains_cartan(s) {
            return Err(CoreError::NotInCartan);
        }
        Ok(())
    }

    /// Euclidean projection of a coordinate covector onto its Cartan
    /// representative (for type A: subtract the block mean).
    pub fn canonical_covector(&self, beta: &[Rational]) -> Result<Covector> {
        self.check_dim(beta)?;
        let e = &self.cartan_basis;
        let k = e.len();
        let ee: QMat = e
            .iter()
            .map(|r| e.iter().map(|c| rational::dot(r, c)).collect())
            .collect();
        let rhs = linalg::mat_vec(e, beta);
        let c = linalg::solve(&ee, &rhs).expect("Cartan basis is independent");
        let mut out = vec![Rational::zero(); self.ambient_dim];
        for (ci, row) in c.iter().zip(e.iter()).take(k) {
            for (o, x) in out.iter_mut().zip(row) {
                *o += ci * x;
            }
        }
        Ok(Covector(out))
    }

    /// The element `s_β` of the Cartan subspace with `B(s_β, s) = β(s)`.
    /// Defined for any covector; linear in `β`.
    pub fn dual_vector(&self, beta: &Covector) -> Result<CartanVector> {
        self.check_dim(&beta.0)?;
        let rhs = linalg::mat_vec(&self.cartan_basis, &beta.0);
        let c = linalg::solve(&self.cartan_gram, &rhs).expect("invariant form is definite");
        let mut s = vec![Rational::zero(); self.ambient_dim];
        for (ci, row) in c.iter().zip(&self.cartan_basis) {
            for (o, x) in s.iter_mut().zip(row) {
                *o += ci * x;
            }
        }
        Ok(CartanVector(s))
    }

    /// The element `s` of the Cartan subspace with `α_i(s) = values[i]` for
    /// every simple root `α_i`.
    pub fn from_simple_values(&self, values: &[Rational]) -> Result<CartanVector> {
        if values.len() != self.rank() {
            return Err(CoreError::DimensionMismatch {
                expected: self.rank(),
                got: values.len(),
            });
        }
        let m: QMat = self
            .simple_roots
            .iter()
            .map(|a| {
                self.cartan_basis
                    .iter()
                    .map(|e| rational::dot(&a.0, e))
                    .collect()
            })
            .collect();
        let y = linalg::solve(&m, values).expect("simple roots are a basis of the dual");
        let mut s = vec![Rational::zero(); self.ambient_dim];
        for (yi, row) in y.iter().zip(&self.cartan_basis) {
            for (o, x) in s.iter_mut().zip(row) {
                *o += yi * x;
            }
        }
        Ok(CartanVector(s))
    }

    /// `s_α` for a root `α`.
    pub fn coroot_vector(&self, alpha: &Covector) -> Result<CartanVector> {
        self.check_dim(&alpha.0)?;
        if !self.is_root(alpha) {
            return Err(CoreError::NotARoot);
        }
        self.dual_vector(alpha)
    }

    /// `B(x, y)` on the Cartan subspace.
    pub fn form(&self, x: &CartanVector, y: &CartanVector) -> Rational {
        rational::dot(&x.0, &linalg::mat_vec(&self.gram_primal, &y.0))
    }

    /// `<β, γ> = B(s_β, s_γ)`.
    pub fn pairing(&self, beta: &Covector, gamma: &Covector) -> Rational {
        rational::dot(&beta.0, &linalg::mat_vec(&self.gram_dual, &gamma.0))
    }

    /// Coordinates of `β` in the basis of simple roots, if it lies in their span.
    pub fn simple_coordinates(&self, beta: &Covector) -> Option<QVec> {
        let basis: QMat = self.simple_roots.iter().map(|c| c.0.clone()).collect();
        linalg::coordinates_in(&basis, &beta.0)
    }

    /// Cartan matrix `a_ij = 2<α_i, α_j>/<α_i, α_i>`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        use num_traits::ToPrimitive;
        let n = self.rank();
        (0..n)
            .map(|i| {
                let ai = &self.simple_roots[i];
                let nn = self.pairing(ai, ai);
                (0..n)
                    .map(|j| {
                        let v = int(2) * self.pairing(ai, &self.simple_roots[j]) / &nn;
                        debug_assert!(v.is_integer());
                        v.to_integer().to_i64().expect("small Cartan entry")
                    })
                    .collect()
            })
            .collect()
    }

    /// Connected components of the Dynkin diagram as sorted simple-root
    /// indices. These are the simple factors of the underlying algebra.
    pub fn dynkin_components(&self) -> Vec<Vec<usize>> {
        let a = self.cartan_matrix();
        let n = a.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            comp[start] = id;
            while let Some(i) = stack.pop() {
                members.push(i);
                for j in 0..n {
                    if comp[j] == usize::MAX && a[i][j] != 0 {
                        comp[j] = id;
                        stack.push(j);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Matrix of the simple reflection `w_i` acting on covector coordinates.
    pub fn reflection_dual(&self, i: usize) -> QMat {
        let alpha = &self.simple_roots[i];
        let s_alpha = self
            .dual_vector(alpha)
            .expect("simple root has ambient length");
        let c = int(2) / self.pairing(alpha, alpha);
        let d = self.ambient_dim;
        let mut r = linalg::identity(d);
        for (row, a) in r.iter_mut().zip(&alpha.0) {
            for (x, s) in row.iter_mut().zip(&s_alpha.0) {
                *x -= &c * a * s;
            }
        }
        r
    }

    /// Matrix of `w_i` on the Cartan subspace: `s ↦ s - 2α(s)/<α,α> s_α`.
    pub fn reflection_primal(&self, i: usize) -> QMat {
        let alpha = &self.simple_roots[i];
        let s_alpha = self
            .dual_vector(alpha)
            .expect("simple root has ambient length");
        let c = int(2) / self.pairing(alpha, alpha);
        let d = self.ambient_dim;
        let mut r = linalg::identity(d);
        for (row, s) in r.iter_mut().zip(&s_alpha.0) {
            for (x, a) in row.iter_mut().zip(&alpha.0) {
                *x -= &c * s * a;
            }
        }
        r
    }

    /// Checks the structural invariants of the system. Used by tests and by
    /// descriptor loading.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        for a in &self.roots {
            if !self.is_root(&a.neg()) {
                return Err(format!("negative of {:?} is not a root", a.0));
            }
            if !self.contains_cartan(&a.0) {
                return Err("root outside Cartan representatives".into());
            }
            let twice = Covector(rational::scale(&int(2), &a.0));
            if self.is_root(&twice) {
                return Err("system is not reduced".into());
            }
        }
        let d = self.ambient_dim;
        if linalg::rank(
            &self.roots.iter().map(|c| c.0.clone()).collect::<Vec<_>>(),
            d,
        ) != self.cartan_basis.len()
        {
            return Err("roots do not span the dual Cartan subspace".into());
        }
        for p in &self.positive_roots {
            if self.positive_roots.contains(&p.neg()) {
                return Err("positive system contains a root and its negative".into());
            }
            let c = self
                .simple_coordinates(p)
                .ok_or("positive root outside span of simple roots")?;
            if c.iter().any(|x| x.is_negative() || !x.is_integer()) {
                return Err("positive root is not a nonnegative integer combination".into());
            }
        }
        if self.positive_roots.len() * 2 != self.roots.len() {
            return Err("positive roots are not half of the roots".into());
        }
        let e = &self.cartan_basis;
        let et = linalg::transpose(e, d);
        let restrict = |m: &QMat| {
            let em = linalg::mat_mul(e, m, d);
            linalg::mat_mul(&em, &et, e.len())
        };
        let gd = restrict(&self.gram_dual);
        let gp = restrict(&self.gram_primal);
        for i in 0..self.rank() {
            let r = self.reflection_dual(i);
            let rt = linalg::transpose(&r, d);
            let inv = linalg::mat_mul(&linalg::mat_mul(&rt, &self.gram_dual, d), &r, d);
            if restrict(&inv) != gd {
                return Err(format!("dual form not invariant under w_{i}"));
            }
            let r = self.reflection_primal(i);
            let rt = linalg::transpose(&r, d);
            let inv = linalg::mat_mul(&linalg::mat_mul(&rt, &self.gram_primal, d), &r, d);
            if restrict(&inv) != gp {
                return Err(format!("primal form not invariant under w_{i}"));
            }
        }
        Ok(())
    }
}

fn gram_on_basis(basis: &QMat, gram: &QMat) -> QMat {
    basis
        .iter()
        .map(|r| {
            let gr = linalg::mat_vec(gram, r);
            basis.iter().map(|c| rational::dot(c, &gr)).collect()
        })
        .collect()
}

fn unit(d: usize, i: usize, c: i64) -> QVec {
    let mut v = vec![Rational::zero(); d];
    v[i] = int(c);
    v
}

fn pair(d: usize, i: usize, ci: i64, j: usize, cj: i64) -> QVec {
    let mut v = unit(d, i, ci);
    v[j] = int(cj);
    v
}

/// Positive and simple roots of one simple factor in its own coordinates.
fn factor_roots(family: Family, rank: usize) -> (Vec<QVec>, Vec<QVec>) {
    let d = family.coordinate_dim(rank);
    let mut pos = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            pos.push(pair(d, i, 1, j, -1));
        }
    }
    if family != Family::A {
        for i in 0..d {
            for j in i + 1..d {
                pos.push(pair(d, i, 1, j, 1));
            }
        }
    }
    match family {
        Family::B => pos.extend((0..d).map(|i| unit(d, i, 1))),
        Family::C => pos.extend((0..d).map(|i| unit(d, i, 2))),
        _ => {}
    }
    let mut simple: Vec<QVec> = (0..d - 1).map(|i| pair(d, i, 1, i + 1, -1)).collect();
    match family {
        Family::A => {}
        Family::B => simple.push(unit(d, d - 1, 1)),
        Family::C => simple.push(unit(d, d - 1, 2)),
        Family::D => simple.push(pair(d, d - 2, 1, d - 1, 1)),
    }
    if family == Family::A {
        debug_assert_eq!(simple.len(), rank);
    }
    (pos, simple)
}

/// The subset `I` of simple roots defining a standard parabolic subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicData {
    levi: Vec<usize>,
}

impl ParabolicData {
    /// Validates `I` (0-based simple-root indices) against `sys`.
    pub fn new(sys: &RootSystem, levi: &[usize]) -> Result<Self> {
        let mut levi = levi.to_vec();
        levi.sort_unstable();
        levi.dedup();
        if let Some(&bad) = levi.iter().find(|&&i| i >= sys.rank()) {
            return Err(CoreError::IndexOutOfRange {
                index: bad,
                rank: sys.rank(),
            });
        }
        for comp in sys.dynkin_components() {
            if comp.iter().all(|i| levi.contains(i)) {
                return Err(CoreError::NotAbsolutelyProper { component: comp });
            }
        }
        Ok(ParabolicData { levi })
    }

    /// `I = Π \ {removed}`; `removed` are 0-based indices.
    pub fn complement_of(sys: &RootSystem, removed: &[usize]) -> Result<Self> {
        if let Some(&bad) = removed.iter().find(|&&i| i >= sys.rank()) {
            return Err(CoreError::IndexOutOfRange {
                index: bad,
                rank: sys.rank(),
            });
        }
        let levi: Vec<usize> = (0..sys.rank()).filter(|i| !removed.contains(i)).collect();
        Self::new(sys, &levi)
    }

    pub fn levi(&self) -> &[usize] {
        &self.levi
    }
}

/// `Φ(u)`: positive roots outside the span of `I`, in positive-root order.
pub fn parabolic_roots(sys: &RootSystem, pd: &ParabolicData) -> Vec<Covector> {
    sys.positive_roots()
        .iter()
        .filter(|a| {
            let c = sys
                .simple_coordinates(a)
                .expect("positive roots lie in the span of the simple roots");
            c.iter()
                .enumerate()
                .any(|(i, x)| !x.is_zero() && !pd.levi.contains(&i))
        })
        .cloned()
        .collect()
}

/// Smallest `k >= 1` such that `kβ` has integral Cartan pairings with every
/// simple root, i.e. lies in the weight lattice.
pub fn weight_scale(sys: &RootSystem, beta: &Covector) -> Result<BigInt> {
    sys.check_dim(&beta.0)?;
    let beta = sys.canonical_covector(&beta.0)?;
    if beta.is_zero() {
        return Err(CoreError::ZeroCovector);
    }
    let pairings: Vec<Rational> = sys
        .simple_roots()
        .iter()
        .map(|a| int(2) * sys.pairing(&beta, a) / sys.pairing(a, a))
        .collect();
    Ok(rational::denominator_lcm(&pairings))
}

/// True when `2<β, α>/<α, α>` is an integer for every simple root.
pub fn is_weight(sys: &RootSystem, beta: &Covector) -> bool {
    sys.simple_roots()
        .iter()
        .all(|a| (int(2) * sys.pairing(beta, a) / sys.pairing(a, a)).is_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn a(n: usize) -> RootSystem {
        RootSystem::build(Family::A, n).unwrap()
    }

    #[test]
    fn a2_roots_and_simple_roots() {
        let sys = a(2);
        assert_eq!(sys.roots().len(), 6);
        assert_eq!(
            sys.simple_roots(),
            &[
                Covector::from_ints(&[1, -1, 0]),
                Covector::from_ints(&[0, 1, -1])
            ]
        );
        for r in [[1, -1, 0], [0, 1, -1], [1, 0, -1]] {
            assert!(sys.is_root(&Covector::from_ints(&r)));
            let n: Vec<i64> = r.iter().map(|x| -x).collect();
            assert!(sys.is_root(&Covector::from_ints(&n)));
        }
    }

    #[test]
    fn a1_is_rank_one() {
        let sys = a(1);
        assert_eq!(sys.positive_roots(), &[Covector::from_ints(&[1, -1])]);
        assert_eq!(sys.roots().len(), 2);
    }

    #[test]
    fn unsupported_families_are_rejected() {
        for f in ["E", "F", "G", "BC"] {
            assert!(matches!(
                f.parse::<Family>(),
                Err(CoreError::UnsupportedFamily(_))
            ));
        }
        assert!(RootSystem::build(Family::D, 1).is_err());
        assert!(RootSystem::build(Family::A, 0).is_err());
    }

    #[test]
    fn invariants_hold_for_small_systems() {
        for f in [Family::A, Family::B, Family::C, Family::D] {
            for r in f.min_rank()..=5 {
                let sys = RootSystem::build(f, r).unwrap();
                sys.check_invariants()
                    .unwrap_or_else(|e| panic!("{f}{r}: {e}"));
            }
        }
        let prod =
            RootSystem::product(&[(Family::A, 2, None), (Family::C, 2, Some(int(1)))]).unwrap();
        prod.check_invariants().unwrap();
        assert_eq!(prod.dynkin_components(), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn root_counts() {
        let count = |f, r| RootSystem::build(f, r).unwrap().roots().len();
        assert_eq!(count(Family::A, 4), 20);
        assert_eq!(count(Family::B, 3), 18);
        assert_eq!(count(Family::C, 3), 18);
        assert_eq!(count(Family::D, 4), 24);
    }

    #[test]
    fn default_kappa_is_killing_sum() {
        // Σ_α α α^T restricted to the Cartan subspace equals kappa · Id there.
        for f in [Family::A, Family::B, Family::C, Family::D] {
            for r in f.min_rank()..=4 {
                let sys = RootSystem::build(f, r).unwrap();
                let d = sys.ambient_dim();
                let kappa = f.killing_kappa(r);
                for x in sys.cartan_basis() {
                    for y in sys.cartan_basis() {
                        let killing = sys.roots().iter().fold(Rational::zero(), |acc, a| {
                            acc + rational::dot(&a.0, x) * rational::dot(&a.0, y)
                        });
                        assert_eq!(killing, &kappa * rational::dot(x, y), "{f}{r} d={d}");
                    }
                }
            }
        }
    }

    /// Brute-force isomorphism check: some permutation of simple roots maps
    /// one Cartan matrix onto the other.
    fn cartan_isomorphic(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for k in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(k, n - 1);
                    out.push(q);
                }
            }
            out
        }
        a.len() == b.len()
            && perms(a.len())
                .iter()
                .any(|p| (0..a.len()).all(|i| (0..a.len()).all(|j| a[i][j] == b[p[i]][p[j]])))
    }

    #[test]
    fn d3_matches_a3() {
        let d3 = RootSystem::build(Family::D, 3).unwrap();
        let a3 = a(3);
        assert_eq!(d3.roots().len(), 12);
        assert!(cartan_isomorphic(&d3.cartan_matrix(), &a3.cartan_matrix()));
        let b3 = RootSystem::build(Family::B, 3).unwrap();
        assert!(!cartan_isomorphic(&b3.cartan_matrix(), &a3.cartan_matrix()));
    }

    #[test]
    fn coroot_vectors_match_hand_values() {
        let sys = RootSystem::build_with_kappa(Family::A, 1, int(4)).unwrap();
        let s = sys.coroot_vector(&Covector::from_ints(&[1, -1])).unwrap();
        assert_eq!(s.0, vec![ratio(1, 4), ratio(-1, 4)]);

        let sys = a(2);
        let s = sys
            .coroot_vector(&Covector::from_ints(&[1, 0, -1]))
            .unwrap();
        assert_eq!(s.0, vec![ratio(1, 6), int(0), ratio(-1, 6)]);
    }

    #[test]
    fn coroot_rejects_non_roots() {
        let sys = a(2);
        assert_eq!(
            sys.coroot_vector(&Covector::from_ints(&[1, 1, -2])),
            Err(CoreError::NotARoot)
        );
    }

    #[test]
    fn coroot_consistency_and_reflection_norms() {
        for f in [Family::A, Family::B, Family::C, Family::D] {
            let sys = RootSystem::build(f, 3).unwrap();
            let coroots: Vec<CartanVector> = sys
                .roots()
                .iter()
                .map(|a| sys.coroot_vector(a).unwrap())
                .collect();
            for (a, sa) in sys.roots().iter().zip(&coroots) {
                let neg = sys.coroot_vector(&a.neg()).unwrap();
                assert_eq!(neg.0, rational::neg(&sa.0));
                for (b, sb) in sys.roots().iter().zip(&coroots) {
                    assert_eq!(sys.form(sa, sb), sys.pairing(a, b));
                }
                for i in 0..sys.rank() {
                    let wa = Covector(linalg::mat_vec(&sys.reflection_dual(i), &a.0));
                    assert!(sys.is_root(&wa));
                    let swa = sys.coroot_vector(&wa).unwrap();
                    assert_eq!(sys.form(&swa, &swa), sys.form(sa, sa));
                }
            }
            // injective
            for i in 0..coroots.len() {
                for j in i + 1..coroots.len() {
                    assert_ne!(coroots[i], coroots[j]);
                }
            }
        }
    }

    #[test]
    fn parabolic_roots_examples() {
        // A_{m+n-1}, I = Π \ {α_m}
        for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 2)] {
            let sys = a(m + n - 1);
            let pd = ParabolicData::complement_of(&sys, &[m - 1]).unwrap();
            let got = parabolic_roots(&sys, &pd);
            let mut want = Vec::new();
            for i in 0..m {
                for j in 0..n {
                    let mut v = vec![0i64; m + n];
                    v[i] = 1;
                    v[m + j] = -1;
                    want.push(Covector::from_ints(&v));
                }
            }
            assert_eq!(got.len(), want.len());
            for w in &want {
                assert!(got.contains(w));
            }
        }
        let sys = a(2);
        let pd = ParabolicData::new(&sys, &[]).unwrap();
        assert_eq!(parabolic_roots(&sys, &pd), sys.positive_roots().to_vec());
        let pd = ParabolicData::new(&sys, &[0]).unwrap();
        let got = parabolic_roots(&sys, &pd);
        assert_eq!(got.len(), 2);
        assert!(got.contains(&Covector::from_ints(&[0, 1, -1])));
        assert!(got.contains(&Covector::from_ints(&[1, 0, -1])));
    }

    #[test]
    fn improper_parabolics_are_rejected() {
        let sys = a(2);
        assert!(matches!(
            ParabolicData::new(&sys, &[0, 1]),
            Err(CoreError::NotAbsolutelyProper { .. })
        ));
        let prod = RootSystem::product(&[(Family::A, 1, None), (Family::A, 2, None)]).unwrap();
        // I covers the whole A1 factor
        assert!(ParabolicData::new(&prod, &[0, 1]).is_err());
        assert!(ParabolicData::new(&prod, &[1]).is_ok());
        let d2 = RootSystem::build(Family::D, 2).unwrap();
        assert!(ParabolicData::new(&d2, &[0]).is_err());
        assert!(ParabolicData::new(&d2, &[]).is_ok());
    }

    #[test]
    fn weight_scale_examples() {
        let sys = a(1);
        // α/2 is the fundamental weight of A1; α/4 is not a weight but 2·(α/4) is.
        let half = Covector(vec![ratio(1, 2), ratio(-1, 2)]);
        assert_eq!(weight_scale(&sys, &half).unwrap(), BigInt::from(1));
        let quarter = Covector(vec![ratio(1, 4), ratio(-1, 4)]);
        assert_eq!(weight_scale(&sys, &quarter).unwrap(), BigInt::from(2));
        let sys = a(2);
        for r in sys.roots() {
            assert_eq!(weight_scale(&sys, r).unwrap(), BigInt::from(1));
        }
        let omega = Covector(vec![ratio(2, 3), ratio(-1, 3), ratio(-1, 3)]);
        assert_eq!(weight_scale(&sys, &omega).unwrap(), BigInt::from(1));
        assert_eq!(
            weight_scale(&sys, &Covector::from_ints(&[0, 0, 0])),
            Err(CoreError::ZeroCovector)
        );
    }

    #[test]
    fn canonical_covector_drops_trace() {
        let sys = a(2);
        let c = sys.canonical_covector(&rational::qvec(&[1, 0, 0])).unwrap();
        assert_eq!(c.0, vec![ratio(2, 3), ratio(-1, 3), ratio(-1, 3)]);
    }

    #[test]
    fn kappa_must_be_positive() {
        assert_eq!(
            RootSystem::build_with_kappa(Family::A, 2, int(0)).unwrap_err(),
            CoreError::NonPositiveKappa
        );
    }
}
