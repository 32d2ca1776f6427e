//! Expanding cones of parabolic subgroups, floors and drift.

use crate::cone::{Cone, Mode};
use crate::error::{CoreError, Result};
use crate::linalg;
use crate::rational::{self, dot, int, to_f64, QVec, Rational};
use crate::restricted::{restrict_system, DiagramAutomorphism};
use crate::root_system::{
    parabolic_roots, weight_scale, CartanVector, Covector, ParabolicData, RootSystem,
};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone)]
pub struct ExpandingCone {
    pub system: RootSystem,
    pub parabolic: ParabolicData,
    /// `Φ(u)` in positive-root order.
    pub roots: Vec<Covector>,
    /// `s_α` for each root in `roots`, same order.
    pub coroots: Vec<CartanVector>,
    /// Cone over `coroots`; its generators are the extreme rays.
    pub cone: Cone,
    /// Facets rescaled into the weight lattice, same order as `cone.facets()`.
    pub facet_weights: Vec<QVec>,
    pub facet_scales: Vec<BigInt>,
}

pub fn expanding_cone(sys: &RootSystem, pd: &ParabolicData) -> Result<ExpandingCone> {
    let roots = parabolic_roots(sys, pd);
    let coroots = roots
        .iter()
        .map(|a| sys.coroot_vector(a))
        .collect::<Result<Vec<_>>>()?;
    let gens: Vec<QVec> = coroots.iter().map(|s| s.0.clone()).collect();
    let cone = Cone::from_generators(&gens)?;
    if cone.span_dim() != sys.cartan_basis().len() {
        return Err(CoreError::NotFullDimensional);
    }
    let facet_scales = cone
        .facets()
        .iter()
        .map(|f| weight_scale(sys, &Covector(f.clone())))
        .collect::<Result<Vec<_>>>()?;
    let facet_weights = cone
        .facets()
        .iter()
        .zip(&facet_scales)
        .map(|(f, k)| rational::scale(&Rational::from_integer(k.clone()), f))
        .collect();
    Ok(ExpandingCone {
        system: sys.clone(),
        parabolic: pd.clone(),
        roots,
        coroots,
        cone,
        facet_weights,
        facet_scales,
    })
}

impl ExpandingCone {
    /// The cone with its facets replaced by the weight-lattice normals.
    pub fn weight_scaled_cone(&self) -> Cone {
        self.cone.with_scaled_facets(&self.facet_scales)
    }
}

pub fn is_expanding(ec: &ExpandingCone, s: &CartanVector) -> Result<bool> {
    ec.system.check_cartan(&s.0)?;
    ec.cone.member(&s.0, Mode::Open)
}

/// A one-parameter flow `exp(t w)` and the roots it expands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowDirection {
    pub w: CartanVector,
    /// `{α ∈ Φ : α(w) > 0}` in root order.
    pub expanded_roots: Vec<Covector>,
    /// Whether `w` has a nonzero component in each simple factor.
    pub nonzero_in_each_factor: bool,
}

pub fn horospherical_roots(sys: &RootSystem, w: &CartanVector) -> Result<FlowDirection> {
    sys.check_cartan(&w.0)?;
    let expanded_roots = sys
        .roots()
        .iter()
        .filter(|a| a.eval(w).is_positive())
        .cloned()
        .collect();
    let nonzero_in_each_factor = sys.factors().iter().all(|f| {
        w.0[f.offset..f.offset + f.dim()]
            .iter()
            .any(|x| !x.is_zero())
    });
    Ok(FlowDirection {
        w: w.clone(),
        expanded_roots,
        nonzero_in_each_factor,
    })
}

pub fn hplus_contained_in_u(ec: &ExpandingCone, fd: &FlowDirection) -> bool {
    fd.expanded_roots.iter().all(|a| ec.roots.contains(a))
}

/// Supremum of `{t >= 0 : v - t c > 0}` for a list of pairs `(v, c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FloorPrime {
    Finite(Rational),
    Unbounded,
}

impl FloorPrime {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            FloorPrime::Finite(q) => Some(q),
            FloorPrime::Unbounded => None,
        }
    }
}

fn interval_sup(constraints: &[(Rational, Rational)]) -> FloorPrime {
    let mut upper: Option<Rational> = None;
    let mut lower = Rational::zero();
    for (v, c) in constraints {
        if c.is_zero() {
            if !v.is_positive() {
                return FloorPrime::Finite(Rational::zero());
            }
        } else {
            let r = v / c;
            if c.is_positive() {
                if upper.as_ref().is_none_or(|u| r < *u) {
                    upper = Some(r);
                }
            } else if r > lower {
                lower = r;
            }
        }
    }
    match upper {
        None => FloorPrime::Unbounded,
        Some(u) if u > lower => FloorPrime::Finite(u),
        Some(_) => FloorPrime::Finite(Rational::zero()),
    }
}

fn facet_constraints(
    ec: &ExpandingCone,
    w: &CartanVector,
    s: &CartanVector,
) -> Vec<(Rational, Rational)> {
    ec.cone
        .facets()
        .iter()
        .map(|f| (dot(f, &s.0), dot(f, &w.0)))
        .collect()
}

fn check_flow(ec: &ExpandingCone, fd: &FlowDirection, s: &CartanVector) -> Result<()> {
    ec.system.check_cartan(&s.0)?;
    ec.system.check_cartan(&fd.w.0)?;
    if fd.w.is_zero() {
        return Err(CoreError::ZeroFlow);
    }
    Ok(())
}

/// `sup {t >= 0 : s - t w ∈ open cone and α(s - t w) > 0 for expanded α}`,
/// or `0` when that set is empty.
pub fn floor(ec: &ExpandingCone, fd: &FlowDirection, s: &CartanVector) -> Result<Rational> {
    check_flow(ec, fd, s)?;
    if !hplus_contained_in_u(ec, fd) {
        return Err(CoreError::HorosphericalNotInRadical);
    }
    let mut cons = facet_constraints(ec, &fd.w, s);
    cons.extend(fd.expanded_roots.iter().map(|a| (a.eval(s), a.eval(&fd.w))));
    match interval_sup(&cons) {
        FloorPrime::Finite(q) => Ok(q),
        // Expanded roots have positive slope, so this cannot happen for w != 0.
        FloorPrime::Unbounded => unreachable!("nonzero flow expands some root"),
    }
}

/// `sup {t >= 0 : s - t w ∈ open cone}`, or `0` when empty.
pub fn floor_prime(ec: &ExpandingCone, fd: &FlowDirection, s: &CartanVector) -> Result<FloorPrime> {
    check_flow(ec, fd, s)?;
    Ok(interval_sup(&facet_constraints(ec, &fd.w, s)))
}

/// The flow `diag((n-m)·1_m, -m·1_n)` for a type-A system of size `m + n`.
pub fn block_flow(m: usize, n: usize) -> CartanVector {
    let mut w = vec![int(n as i64); m];
    w.extend(std::iter::repeat_n(int(-(m as i64)), n));
    CartanVector(w)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DriftReport {
    pub interior: bool,
    /// Squared distance to the boundary under the invariant form; `0` when
    /// `s` is not interior.
    pub distance_squared: Rational,
    pub distance: f64,
    /// `min β(s)` over the weight-scaled facets.
    pub min_facet_value: Rational,
    pub argmin_facet: usize,
}

pub fn drift_distance(ec: &ExpandingCone, s: &CartanVector) -> Result<DriftReport> {
    ec.system.check_cartan(&s.0)?;
    let (argmin_facet, min_facet_value) = ec
        .facet_weights
        .iter()
        .map(|f| dot(f, &s.0))
        .enumerate()
        .min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
        .expect("expanding cone has facets");
    let interior = ec.cone.member(&s.0, Mode::Open)?;
    let (distance_squared, distance) = if interior {
        let r = ec.cone.boundary_distance(&s.0, ec.system.gram_primal())?;
        (r.distance_sq, r.distance)
    } else {
        (Rational::zero(), 0.0)
    };
    Ok(DriftReport {
        interior,
        distance_squared,
        distance,
        min_facet_value,
        argmin_facet,
    })
}

#[derive(Debug, Clone)]
pub struct RestrictedConeCheck {
    pub equal: bool,
    /// Basis of the fixed subspace, in ambient coordinates.
    pub subspace_basis: Vec<QVec>,
    /// Expanding cone intersected with the fixed subspace.
    pub lhs: Cone,
    /// Cone over the restricted coroots.
    pub rhs: Cone,
}

/// Compares the expanding cone cut down to the fixed space of `sigma` with
/// the cone spanned by the restricted coroots. Both sides are written in the
/// coordinates of the fixed-space basis.
pub fn restricted_cone_check(
    sys: &RootSystem,
    levi: &[usize],
    sigma: &DiagramAutomorphism,
) -> Result<RestrictedConeCheck> {
    let pd = ParabolicData::new(sys, levi)?;
    if !sigma.stabilizes(pd.levi()) {
        return Err(CoreError::AutomorphismMovesLevi);
    }
    let ec = expanding_cone(sys, &pd)?;
    let rs = restrict_system(sys, sigma)?;
    let lhs = ec.cone.intersect_subspace(&rs.subspace_basis)?;

    // Group Φ(u) by restriction and project the summed coroots orthogonally.
    let mut fibres: Vec<(QVec, QVec)> = Vec::new();
    for (a, s) in ec.roots.iter().zip(&ec.coroots) {
        let r = rs.restrict(a);
        if rational::is_zero_vec(&r) {
            continue;
        }
        match fibres.iter_mut().find(|(k, _)| *k == r) {
            Some((_, acc)) => *acc = rational::add(acc, &s.0),
            None => fibres.push((r, s.0.clone())),
        }
    }
    let gens: Vec<QVec> = fibres
        .iter()
        .map(|(_, sum)| {
            let rhs = linalg::mat_vec(&rs.subspace_basis, &linalg::mat_vec(sys.gram_primal(), sum));
            linalg::solve(&rs.gram, &rhs).expect("restricted form is definite")
        })
        .collect();
    let rhs = Cone::from_generators(&gens)?;
    Ok(RestrictedConeCheck {
        equal: lhs.same_cone(&rhs),
        subspace_basis: rs.subspace_basis,
        lhs,
        rhs,
    })
}

/// Float view of an exact value, for reporting only.
pub fn approx(q: &Rational) -> f64 {
    to_f64(q)
}
