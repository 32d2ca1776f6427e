//! Haar-random unimodular lattices in the plane and the distribution of
//! their systole.
//!
//! Samples come from the fundamental domain `|x| ≤ 1/2, x² + y² ≥ 1` of the
//! upper half-plane: `x` is uniform and `y = (√3/2)/u` has density `∝ y⁻²`
//! on `[√3/2, ∞)`, and points outside the domain are rejected. The lattice
//! with basis `y^{-1/2}(1, 0), y^{-1/2}(x, y)` is then rotated uniformly.

use crate::lattice::LatticePoint;
use crate::quadrature;
use crate::sampling::{chunk_rng, map_ordered, CHUNK};
use rand::Rng;
use std::f64::consts::PI;

/// Acceptance probability `π√3/6` of the rejection step.
pub const SL2_ACCEPTANCE: f64 = PI * 1.732_050_807_568_877_2 / 6.0;

#[derive(Debug, Clone)]
pub struct HaarSample {
    pub points: Vec<LatticePoint<2>>,
    pub proposals: u64,
}

fn draw(rng: &mut impl Rng) -> (LatticePoint<2>, u64) {
    let h = 3f64.sqrt() / 2.0;
    let mut tries = 0;
    loop {
        tries += 1;
        let x = rng.random::<f64>() - 0.5;
        let u = 1.0 - rng.random::<f64>();
        let y = h / u;
        if x * x + y * y < 1.0 {
            continue;
        }
        let theta = 2.0 * PI * rng.random::<f64>();
        let (s, c) = theta.sin_cos();
        let k = y.sqrt().recip();
        let b0 = [k * c, k * s];
        let (vx, vy) = (k * x, k * y);
        let b1 = [c * vx - s * vy, s * vx + c * vy];
        let lp = LatticePoint::from_basis([b0, b1]).expect("unimodular basis");
        return (lp, tries);
    }
}

/// `count` Haar-distributed lattices in `SL_2(R)/SL_2(Z)`.
pub fn haar_sample_sl2(count: usize, seed: u64) -> HaarSample {
    let chunks = count.div_ceil(CHUNK);
    let parts = map_ordered(chunks, |c| {
        let mut rng = chunk_rng(seed, c);
        let len = CHUNK.min(count - c * CHUNK);
        let mut pts = Vec::with_capacity(len);
        let mut tries = 0;
        for _ in 0..len {
            let (p, t) = draw(&mut rng);
            pts.push(p);
            tries += t;
        }
        (pts, tries)
    });
    let mut points = Vec::with_capacity(count);
    let mut proposals = 0;
    for (p, t) in parts {
        points.extend(p);
        proposals += t;
    }
    HaarSample { points, proposals }
}

/// Largest possible systole of a unimodular planar lattice, `(2/√3)^{1/2}`.
pub fn max_systole_sl2() -> f64 {
    (2.0 / 3f64.sqrt()).sqrt()
}

/// Haar probability that `λ₁ < eps`.
pub fn systole_cdf_sl2(eps: f64) -> f64 {
    if eps <= 0.0 {
        0.0
    } else if eps >= max_systole_sl2() {
        1.0
    } else {
        expect_systole_fn(|l| if l < eps { 1.0 } else { 0.0 }, &[eps])
    }
}

/// Haar mean of `f(λ₁)` on `SL_2(R)/SL_2(Z)`. `breaks` lists values of `λ₁`
/// where `f` fails to be smooth; they are used as panel boundaries.
///
/// For `λ₁ ≤ 1` the density is `(6/π) ℓ`. Above 1 the systole is `y^{-1/2}`
/// and the remaining mass is integrated in `θ = arccos y` over `[0, π/6]`.
pub fn expect_systole_fn(f: impl Fn(f64) -> f64, breaks: &[f64]) -> f64 {
    const PANELS: usize = 400;
    let mut lo: Vec<f64> = vec![0.0, 1.0];
    lo.extend(breaks.iter().copied().filter(|b| *b > 0.0 && *b < 1.0));
    lo.sort_by(f64::total_cmp);
    let low = quadrature::composite_split(|l| f(l) * 6.0 / PI * l, &lo, PANELS);

    let lmax = max_systole_sl2();
    let mut th: Vec<f64> = vec![0.0, PI / 6.0];
    th.extend(
        breaks
            .iter()
            .filter(|b| **b > 1.0 && **b < lmax)
            .map(|b| (b.powi(-2)).acos()),
    );
    th.sort_by(f64::total_cmp);
    let high = quadrature::composite_split(
        |t| {
            let (s, c) = t.sin_cos();
            f(c.powf(-0.5)) * 3.0 / PI * (1.0 - 2.0 * s) * s / (c * c)
        },
        &th,
        PANELS,
    );
    low + high
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn density_has_unit_mass() {
        assert!((expect_systole_fn(|_| 1.0, &[]) - 1.0).abs() < 1e-14);
        assert!((systole_cdf_sl2(1.0) - 3.0 / PI).abs() < 1e-14);
        assert!((systole_cdf_sl2(0.3) - 0.27 / PI).abs() < 1e-14);
        assert_eq!(systole_cdf_sl2(2.0), 1.0);
    }

    #[test]
    fn samples_are_unimodular_and_reproducible() {
        let a = haar_sample_sl2(2000, 5);
        let b = haar_sample_sl2(2000, 5);
        assert_eq!(a.points, b.points);
        assert_eq!(a.points.len(), 2000);
        for p in &a.points {
            assert!((p.det() - 1.0).abs() < 1e-12);
            assert!(p.shortest_vector() <= max_systole_sl2() + 1e-12);
        }
        let rate = 2000.0 / a.proposals as f64;
        assert!((rate - SL2_ACCEPTANCE).abs() < 0.05, "{rate}");
    }

    #[test]
    fn sampled_cdf_matches_density() {
        let s = haar_sample_sl2(40_000, 11);
        let n = s.points.len() as f64;
        for eps in [0.5, 0.9, 1.0, 1.05] {
            let p = s
                .points
                .iter()
                .filter(|x| x.shortest_vector() < eps)
                .count() as f64
                / n;
            let q = systole_cdf_sl2(eps);
            let se = (q * (1.0 - q) / n).sqrt();
            assert!((p - q).abs() < 5.0 * se + 1e-12, "eps {eps}: {p} vs {q}");
        }
    }
}
