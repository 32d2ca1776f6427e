//! Exact polyhedral cones with generator and facet representations.
//!
//! A cone lives in `Q^d` and is described both by generators (extreme-ray
//! representatives, plus `±` a lineality basis when the cone is not pointed)
//! and by an irredundant facet system. Facet normals are taken inside the
//! linear span of the cone and scaled to primitive integers, which makes them
//! unique; `equations` cut the span out of `Q^d`.

pub mod dd;

use crate::error::{CoreError, Result};
use crate::linalg::{self, QMat};
use crate::rational::{self, dot, to_f64, QVec, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Open,
    Closed,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "open" => Ok(Mode::Open),
            "closed" => Ok(Mode::Closed),
            other => Err(format!("unknown mode {other:?} (expected open or closed)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    ambient_dim: usize,
    generators: Vec<QVec>,
    facets: Vec<QVec>,
    equations: Vec<QVec>,
    lineality: Vec<QVec>,
    span_basis: QMat,
    weight_scaled: bool,
}

/// Distance from an interior point to the boundary under a given inner product.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceReport {
    /// Exact squared distance.
    pub distance_sq: Rational,
    /// `sqrt(distance_sq)` in floating point.
    pub distance: f64,
    /// Index of a facet attaining the minimum.
    pub facet: usize,
}

fn sort_lex(v: &mut [QVec]) {
    v.sort_by(|a, b| rational::lex_cmp(a, b));
}

impl Cone {
    /// Builds the cone `{Σ t_i v_i : t_i >= 0}`.
    pub fn from_generators(vectors: &[QVec]) -> Result<Cone> {
        let d = vectors
            .first()
            .map(Vec::len)
            .ok_or(CoreError::DegenerateCone)?;
        if let Some(bad) = vectors.iter().find(|v| v.len() != d) {
            return Err(CoreError::DimensionMismatch {
                expected: d,
                got: bad.len(),
            });
        }
        let nonzero: Vec<QVec> = vectors
            .iter()
            .filter(|v| !rational::is_zero_vec(v))
            .cloned()
            .collect();
        if nonzero.is_empty() {
            return Err(CoreError::DegenerateCone);
        }
        let span_basis = linalg::row_space_basis(&nonzero, d);
        let equations: Vec<QVec> = linalg::nullspace(&nonzero, d)
            .iter()
            .map(|v| rational::primitive_integer(v))
            .collect();

        // Facets are the extreme rays of the dual cone inside the span.
        let k = span_basis.len();
        let dual_rows: QMat = nonzero
            .iter()
            .map(|g| linalg::mat_vec(&span_basis, g))
            .collect();
        let dual = dd::h_to_v(&dual_rows, &[], k);
        debug_assert!(dual.lineality.is_empty());
        let mut facets: Vec<QVec> = dual
            .rays
            .iter()
            .map(|z| {
                let mut beta = vec![Rational::zero(); d];
                for (zi, row) in z.iter().zip(&span_basis) {
                    for (o, x) in beta.iter_mut().zip(row) {
                        *o += zi * x;
                    }
                }
                rational::primitive_integer(&beta)
            })
            .collect();
        sort_lex(&mut facets);

        let v = dd::h_to_v(&facets, &equations, d);
        let mut generators = v.rays.clone();
        for l in &v.lineality {
            generators.push(l.clone());
            generators.push(rational::neg(l));
        }
        sort_lex(&mut generators);

        Ok(Cone {
            ambient_dim: d,
            generators,
            facets,
            equations,
            lineality: v.lineality,
            span_basis,
            weight_scaled: false,
        })
    }

    /// Builds `{x : a · x >= 0 (a ∈ ineqs), e · x = 0 (e ∈ eqs)}`.
    pub fn from_inequalities(ineqs: &[QVec], eqs: &[QVec], d: usize) -> Result<Cone> {
        for r in ineqs.iter().chain(eqs) {
            if r.len() != d {
                return Err(CoreError::DimensionMismatch {
                    expected: d,
                    got: r.len(),
                });
            }
        }
        let v = dd::h_to_v(ineqs, eqs, d);
        let mut gens = v.rays.clone();
        for l in &v.lineality {
            gens.push(l.clone());
            gens.push(rational::neg(l));
        }
        if gens.is_empty() {
            return Ok(Cone::zero(d));
        }
        Cone::from_generators(&gens)
    }

    /// The cone `{0}` in `Q^d`.
    pub fn zero(d: usize) -> Cone {
        Cone {
            ambient_dim: d,
            generators: vec![],
            facets: vec![],
            equations: linalg::identity(d),
            lineality: vec![],
            span_basis: vec![],
            weight_scaled: false,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[QVec] {
        &self.generators
    }

    pub fn facets(&self) -> &[QVec] {
        &self.facets
    }

    pub fn equations(&self) -> &[QVec] {
        &self.equations
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    pub fn span_dim(&self) -> usize {
        self.span_basis.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.span_dim() == self.ambient_dim
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.span_basis.is_empty()
    }

    pub fn weight_scaled(&self) -> bool {
        self.weight_scaled
    }

    /// Copy of the cone with facet `i` multiplied by `scales[i] > 0`.
    pub fn with_scaled_facets(&self, scales: &[BigInt]) -> Cone {
        let mut c = self.clone();
        c.facets = self
            .facets
            .iter()
            .zip(scales)
            .map(|(f, s)| rational::scale(&Rational::from_integer(s.clone()), f))
            .collect();
        c.weight_scaled = true;
        c
    }

    fn check_dim(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.ambient_dim {
            return Err(CoreError::DimensionMismatch {
                expected: self.ambient_dim,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Closed membership, or membership in the interior relative to the span.
    pub fn member(&self, v: &[Rational], mode: Mode) -> Result<bool> {
        self.check_dim(v)?;
        if !self.equations.iter().all(|e| dot(e, v).is_zero()) {
            return Ok(false);
        }
        Ok(self.facets.iter().all(|f| {
            let x = dot(f, v);
            match mode {
                Mode::Open => x.is_positive(),
                Mode::Closed => !x.is_negative(),
            }
        }))
    }

    /// Facet values `β(v)` in facet order.
    pub fn facet_values(&self, v: &[Rational]) -> Result<QVec> {
        self.check_dim(v)?;
        Ok(self.facets.iter().map(|f| dot(f, v)).collect())
    }

    /// Distance from an interior point to the relative boundary, measured in
    /// the inner product `gram` restricted to the span of the cone.
    pub fn boundary_distance(&self, v: &[Rational], gram: &[QVec]) -> Result<DistanceReport> {
        if !self.member(v, Mode::Open)? {
            return Err(CoreError::NotInterior);
        }
        if self.facets.is_empty() {
            return Err(CoreError::DegenerateCone);
        }
        let b = &self.span_basis;
        let m: QMat = b
            .iter()
            .map(|x| {
                let gx = linalg::mat_vec(gram, x);
                b.iter().map(|y| dot(y, &gx)).collect()
            })
            .collect();
        let mut best: Option<(Rational, usize)> = None;
        for (i, f) in self.facets.iter().enumerate() {
            let bf = linalg::mat_vec(b, f);
            let sol = linalg::solve(&m, &bf).expect("gram must be positive definite");
            let dual_norm_sq = dot(&bf, &sol);
            let val = dot(f, v);
            let d2 = &val * &val / dual_norm_sq;
            if best.as_ref().is_none_or(|(bd, _)| d2 < *bd) {
                best = Some((d2, i));
            }
        }
        let (distance_sq, facet) = best.expect("at least one facet");
        Ok(DistanceReport {
            distance: to_f64(&distance_sq).sqrt(),
            distance_sq,
            facet,
        })
    }

    /// `{u ∈ Q^m : Σ u_i b_i ∈ cone}` for linearly independent `b_1..b_m`.
    pub fn intersect_subspace(&self, basis: &[QVec]) -> Result<Cone> {
        for b in basis {
            self.check_dim(b)?;
        }
        let m = basis.len();
        if linalg::rank(basis, self.ambient_dim) != m {
            return Err(CoreError::DependentBasis);
        }
        let pull = |f: &QVec| -> QVec { basis.iter().map(|b| dot(f, b)).collect() };
        let ineqs: QMat = self.facets.iter().map(pull).collect();
        let eqs: QMat = self
            .equations
            .iter()
            .map(pull)
            .filter(|e| !rational::is_zero_vec(e))
            .collect();
        Cone::from_inequalities(&ineqs, &eqs, m)
    }

    /// Same facet system, equations and generators (ignoring scaling flags).
    pub fn same_cone(&self, other: &Cone) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.facets == other.facets
            && self.equations == other.equations
            && self.generators == other.generators
    }
}

pub fn cone_from_generators(vectors: &[QVec]) -> Result<Cone> {
    Cone::from_generators(vectors)
}
