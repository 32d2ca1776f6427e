//! Restriction of a root system to the fixed space of a diagram automorphism.
//!
//! The fixed space `a0` is spanned by the dual vectors of the orbit sums of
//! simple roots. Restricted covectors are written in the coordinates
//! `β ↦ (β(b_1), ..., β(b_k))` for that basis `b_1..b_k`.

use crate::error::{CoreError, Result};
use crate::linalg::{self, QMat};
use crate::rational::{self, QVec, Rational};
use crate::root_system::{CartanVector, Covector, RootSystem};
use num_traits::Zero;

/// A permutation `σ` of the simple roots: `α_i ↦ α_{σ[i]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramAutomorphism {
    perm: Vec<usize>,
}

impl DiagramAutomorphism {
    pub fn identity(rank: usize) -> Self {
        DiagramAutomorphism {
            perm: (0..rank).collect(),
        }
    }

    /// Validates that `perm` permutes the simple roots and preserves the
    /// invariant inner product between them.
    pub fn new(sys: &RootSystem, perm: &[usize]) -> Result<Self> {
        let n = sys.rank();
        if perm.len() != n {
            return Err(CoreError::NotDiagramAutomorphism);
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(CoreError::NotDiagramAutomorphism);
            }
            seen[p] = true;
        }
        let pi = sys.simple_roots();
        for i in 0..n {
            for j in 0..n {
                if sys.pairing(&pi[i], &pi[j]) != sys.pairing(&pi[perm[i]], &pi[perm[j]]) {
                    return Err(CoreError::NotDiagramAutomorphism);
                }
            }
        }
        Ok(DiagramAutomorphism {
            perm: perm.to_vec(),
        })
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Orbits of `σ` on simple-root indices, each sorted, ordered by minimum.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.perm.len();
        let mut done = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if done[i] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut j = i;
            while !done[j] {
                done[j] = true;
                orbit.push(j);
                j = self.perm[j];
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// Image of a covector lying in the span of the simple roots.
    pub fn apply(&self, sys: &RootSystem, beta: &Covector) -> Option<Covector> {
        let c = sys.simple_coordinates(beta)?;
        let mut out = vec![Rational::zero(); sys.ambient_dim()];
        for (i, ci) in c.iter().enumerate() {
            let a = &sys.simple_roots()[self.perm[i]].0;
            for (o, x) in out.iter_mut().zip(a) {
                *o += ci * x;
            }
        }
        Some(Covector(out))
    }

    pub fn stabilizes(&self, levi: &[usize]) -> bool {
        levi.iter().all(|i| levi.contains(&self.perm[*i]))
    }
}

#[derive(Debug, Clone)]
pub struct RestrictedSystem {
    pub automorphism: DiagramAutomorphism,
    /// Rows form a basis of `a0` in ambient coordinates.
    pub subspace_basis: QMat,
    /// The restriction map `a* → a0*`; equal to `subspace_basis` as a matrix.
    pub projection: QMat,
    /// Invariant form restricted to `a0`, in the basis above.
    pub gram: QMat,
    /// Distinct nonzero restrictions of roots.
    pub restricted_roots: Vec<QVec>,
    /// Distinct nonzero restrictions of positive roots.
    pub restricted_positive: Vec<QVec>,
}

impl RestrictedSystem {
    pub fn dim(&self) -> usize {
        self.subspace_basis.len()
    }

    pub fn restrict(&self, beta: &Covector) -> QVec {
        linalg::mat_vec(&self.projection, &beta.0)
    }

    /// Coordinates `c` (in the basis of `a0`) of the vector `s` with
    /// `B(s, t) = β0(t)` for every `t ∈ a0`.
    pub fn dual_coordinates(&self, beta0: &[Rational]) -> QVec {
        linalg::solve(&self.gram, beta0).expect("restricted form is definite")
    }

    /// Ambient coordinates of the vector with basis coordinates `c`.
    pub fn to_ambient(&self, c: &[Rational]) -> CartanVector {
        let d = self.subspace_basis.first().map_or(0, Vec::len);
        let mut s = vec![Rational::zero(); d];
        for (ci, row) in c.iter().zip(&self.subspace_basis) {
            for (o, x) in s.iter_mut().zip(row) {
                *o += ci * x;
            }
        }
        CartanVector(s)
    }

    /// Inner product of two restricted covectors.
    pub fn pairing(&self, a: &[Rational], b: &[Rational]) -> Rational {
        rational::dot(a, &self.dual_coordinates(b))
    }
}

pub fn restrict_system(sys: &RootSystem, sigma: &DiagramAutomorphism) -> Result<RestrictedSystem> {
    if sigma.perm.len() != sys.rank() {
        return Err(CoreError::NotDiagramAutomorphism);
    }
    let d = sys.ambient_dim();
    let mut basis = Vec::new();
    for orbit in sigma.orbits() {
        let mut sum = vec![Rational::zero(); d];
        for &i in &orbit {
            sum = rational::add(&sum, &sys.simple_roots()[i].0);
        }
        let s = sys.dual_vector(&Covector(sum))?;
        basis.push(rational::primitive_integer(&s.0));
    }
    let gram: QMat = basis
        .iter()
        .map(|x| {
            let gx = linalg::mat_vec(sys.gram_primal(), x);
            basis.iter().map(|y| rational::dot(y, &gx)).collect()
        })
        .collect();
    let projection = basis.clone();
    let mut roots: Vec<QVec> = Vec::new();
    let mut positive: Vec<QVec> = Vec::new();
    for a in sys.positive_roots() {
        let r = linalg::mat_vec(&projection, &a.0);
        if rational::is_zero_vec(&r) {
            continue;
        }
        if !positive.contains(&r) {
            positive.push(r);
        }
    }
    for p in &positive {
        roots.push(p.clone());
    }
    for p in &positive {
        roots.push(rational::neg(p));
    }
    Ok(RestrictedSystem {
        automorphism: sigma.clone(),
        subspace_basis: basis,
        projection,
        gram,
        restricted_roots: roots,
        restricted_positive: positive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::Family;
    use num_traits::Signed;

    fn a(n: usize) -> RootSystem {
        RootSystem::build(Family::A, n).unwrap()
    }

    #[test]
    fn identity_restriction_is_trivial() {
        let sys = a(3);
        let r = restrict_system(&sys, &DiagramAutomorphism::identity(3)).unwrap();
        assert_eq!(r.dim(), 3);
        assert_eq!(r.restricted_roots.len(), sys.roots().len());
        assert_eq!(r.restricted_positive.len(), sys.positive_roots().len());
    }

    #[test]
    fn a3_swap_gives_rank_two_with_two_lengths() {
        let sys = a(3);
        let sigma = DiagramAutomorphism::new(&sys, &[2, 1, 0]).unwrap();
        let r = restrict_system(&sys, &sigma).unwrap();
        assert_eq!(r.dim(), 2);
        assert_eq!(r.restricted_roots.len(), 8);
        let mut lengths: Vec<Rational> =
            r.restricted_roots.iter().map(|x| r.pairing(x, x)).collect();
        lengths.sort();
        lengths.dedup();
        assert_eq!(lengths.len(), 2);
        assert_eq!(&lengths[1] / &lengths[0], rational::int(2));
        // no restricted root is twice another: reduced, type B2/C2
        for x in &r.restricted_roots {
            let twice = rational::scale(&rational::int(2), x);
            assert!(!r.restricted_roots.contains(&twice));
        }
    }

    #[test]
    fn a2_swap_collapses_to_non_reduced_rank_one() {
        let sys = a(2);
        let sigma = DiagramAutomorphism::new(&sys, &[1, 0]).unwrap();
        let r = restrict_system(&sys, &sigma).unwrap();
        assert_eq!(r.dim(), 1);
        let mut vals: Vec<Rational> = r.restricted_roots.iter().map(|x| x[0].clone()).collect();
        vals.sort();
        let g = vals
            .iter()
            .filter(|v| v.is_positive())
            .min()
            .unwrap()
            .clone();
        let want: Vec<Rational> = [-2, -1, 1, 2]
            .iter()
            .map(|&k| rational::int(k) * &g)
            .collect();
        assert_eq!(vals, want);
    }

    #[test]
    fn restriction_is_sigma_invariant_and_basis_is_fixed() {
        for (sys, perm) in [
            (a(3), vec![2, 1, 0]),
            (a(4), vec![3, 2, 1, 0]),
            (RootSystem::build(Family::D, 4).unwrap(), vec![0, 1, 3, 2]),
        ] {
            let sigma = DiagramAutomorphism::new(&sys, &perm).unwrap();
            let r = restrict_system(&sys, &sigma).unwrap();
            for alpha in sys.roots() {
                let sa = sigma.apply(&sys, alpha).unwrap();
                assert!(sys.is_root(&sa));
                assert_eq!(r.restrict(&sa), r.restrict(alpha));
            }
            for b in &r.subspace_basis {
                for (i, &j) in perm.iter().enumerate() {
                    let ai = rational::dot(&sys.simple_roots()[i].0, b);
                    let aj = rational::dot(&sys.simple_roots()[j].0, b);
                    assert_eq!(ai, aj);
                }
            }
            // positive restrictions and their negatives are disjoint
            for p in &r.restricted_positive {
                assert!(!r.restricted_positive.contains(&rational::neg(p)));
            }
        }
    }

    #[test]
    fn non_automorphisms_are_rejected() {
        let sys = a(3);
        assert_eq!(
            DiagramAutomorphism::new(&sys, &[1, 0, 2]),
            Err(CoreError::NotDiagramAutomorphism)
        );
        assert!(DiagramAutomorphism::new(&sys, &[0, 0, 2]).is_err());
        assert!(DiagramAutomorphism::new(&sys, &[0, 1]).is_err());
        let b3 = RootSystem::build(Family::B, 3).unwrap();
        assert!(DiagramAutomorphism::new(&b3, &[2, 1, 0]).is_err());
    }
}
