//! Composite Gauss–Legendre quadrature.

use crate::sampling::{map_ordered, pairwise_sum};

const GL5_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683_1,
    0.0,
    0.538_469_310_105_683_1,
    0.906_179_845_938_664,
];
const GL5_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_5,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
];

pub const NODES_PER_PANEL: usize = 5;

fn panel(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let h = 0.5 * (b - a);
    let c = 0.5 * (a + b);
    GL5_NODES
        .iter()
        .zip(&GL5_WEIGHTS)
        .map(|(x, w)| w * f(c + h * x))
        .sum::<f64>()
        * h
}

/// `∫_a^b f` with `panels` equal panels of 5-point Gauss–Legendre.
pub fn composite(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let parts: Vec<f64> = (0..panels)
        .map(|i| panel(&f, a + i as f64 * h, a + (i + 1) as f64 * h))
        .collect();
    pairwise_sum(&parts)
}

/// Sum of [`composite`] over consecutive intervals between sorted breakpoints.
pub fn composite_split(f: impl Fn(f64) -> f64, breaks: &[f64], panels_each: usize) -> f64 {
    let parts: Vec<f64> = breaks
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| composite(&f, w[0], w[1], panels_each))
        .collect();
    pairwise_sum(&parts)
}

/// Parallel [`composite`]; panels are grouped in fixed blocks so the result
/// is independent of the thread count.
pub fn composite_par(f: impl Fn(f64) -> f64 + Sync + Send, a: f64, b: f64, panels: usize) -> f64 {
    const BLOCK: usize = 4096;
    let h = (b - a) / panels as f64;
    let blocks = panels.div_ceil(BLOCK);
    let parts = map_ordered(blocks, |k| {
        let lo = k * BLOCK;
        let hi = (lo + BLOCK).min(panels);
        let v: Vec<f64> = (lo..hi)
            .map(|i| panel(&f, a + i as f64 * h, a + (i + 1) as f64 * h))
            .collect();
        pairwise_sum(&v)
    });
    pairwise_sum(&parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact() {
        let v = composite(|x| x.powi(9) - 3.0 * x.powi(4), 0.0, 2.0, 1);
        let exact = 2f64.powi(10) / 10.0 - 3.0 * 2f64.powi(5) / 5.0;
        assert!((v - exact).abs() < 1e-10);
    }

    #[test]
    fn parallel_matches_serial() {
        let f = |x: f64| (3.0 * x).sin() * x.exp();
        let a = composite(f, 0.0, 1.0, 10_000);
        let b = composite_par(f, 0.0, 1.0, 10_000);
        assert!((a - b).abs() < 1e-13);
        let exact = (3.0f64.sin() * 1f64.exp() - 3.0 * 3f64.cos() * 1f64.exp() + 3.0) / 10.0;
        assert!((b - exact).abs() < 1e-12);
    }
}
