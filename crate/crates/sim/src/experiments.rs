//! The four experiments and their result tables.
//!
//! Every experiment starts from the standard lattice `x = Z^n`. Diagonal
//! elements are given by exact logarithms and checked against the expanding
//! cone of `A_{n-1}` with `I = Π \ {α_m}` before any sampling happens.

use crate::haar::{haar_sample_sl2, systole_cdf_sl2};
use crate::lattice::{diag_exp, mat_mul, LatticePoint, Mat};
use crate::quadrature::{composite_par, NODES_PER_PANEL};
use crate::sampling::{
    chunk_rng, map_ordered, pairwise_sum, pairwise_sum_vec, sample_chunk, unipotent, SliceSpec,
};
use crate::test_function::{haar_mean, TestFunction};
use crate::SimError;
use expcone_core::cone::Mode;
use expcone_core::rational::{format_rational, to_f64};
use expcone_core::{
    block_flow, expanding_cone, floor, horospherical_roots, CartanVector, ExpandingCone, Family,
    ParabolicData, QVec, Rational, RootSystem,
};
use num_traits::Signed;
use rand::Rng;
use serde::Serialize;
use std::time::Instant;

/// One CSV row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub grid: f64,
    pub estimate: f64,
    pub std_error: f64,
    pub oracle: Option<f64>,
    pub gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Summary {
    Nonescape {
        log_diag: Vec<String>,
        wilson_lower: Vec<f64>,
        wilson_upper: Vec<f64>,
        /// Least-squares slope of `log fraction` against `log ε` over the
        /// grid points with a positive fraction; `None` when fewer than two
        /// are positive, i.e. the fraction decays faster than any power.
        slope: Option<f64>,
        slope_points: usize,
        /// `2ε²`, only for `n = 2`.
        envelope: Option<Vec<f64>>,
        within_envelope: Option<bool>,
    },
    Translate {
        chain: Vec<Vec<String>>,
        floors: Vec<String>,
        floor: String,
        in_open_cone: Vec<bool>,
        oracle_source: String,
        oracle_std_error: f64,
        combined_std_error: f64,
        z_score: Option<f64>,
    },
    PeriodicOrbit {
        nodes: Vec<usize>,
        /// Slope of `log |gap|` against `t` over rows above the quadrature noise.
        decay_rate: Option<f64>,
    },
    Pointwise {
        s: f64,
        direction: Vec<String>,
        decade_slope: Option<f64>,
        fit_range: [f64; 2],
        envelope_slope: Option<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentResult {
    pub experiment: String,
    pub grid_name: String,
    pub rows: Vec<Row>,
    pub seed: Option<u64>,
    pub summary: Summary,
    pub det_renormalizations: u64,
    pub det_warnings: u64,
    pub wall_clock_secs: f64,
}

/// Wilson score interval for `k` successes in `n` trials at `z = 1.96`.
pub fn wilson(k: f64, n: f64) -> (f64, f64) {
    let z = 1.96f64;
    let p = k / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Ordinary least-squares slope; `None` for fewer than two points or a
/// degenerate abscissa.
pub fn lsq_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let n = xs.len();
    if n < 2 || ys.len() != n {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n as f64;
    let my = ys.iter().sum::<f64>() / n as f64;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx <= 0.0 {
        return None;
    }
    Some(sxy / sxx)
}

fn shape_cone(n: usize, m: usize) -> Result<(RootSystem, ExpandingCone), SimError> {
    let sys = RootSystem::build(Family::A, n - 1)?;
    let pd = ParabolicData::complement_of(&sys, &[m - 1])?;
    let ec = expanding_cone(&sys, &pd)?;
    Ok((sys, ec))
}

fn check_log_len(logs: &[Rational], n: usize) -> Result<(), SimError> {
    if logs.len() != n {
        return Err(SimError::InvalidSpec(format!(
            "diagonal has {} entries, expected {n}",
            logs.len()
        )));
    }
    Ok(())
}

fn fmt_q(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn logs_f64<const N: usize>(logs: &[Rational]) -> [f64; N] {
    let mut out = [0.0; N];
    for (o, q) in out.iter_mut().zip(logs) {
        *o = to_f64(q);
    }
    out
}

fn standard_times<const N: usize>(g: &Mat<N>) -> LatticePoint<N> {
    let mut x = LatticePoint::<N>::standard();
    x.apply(g);
    x
}

#[derive(Default)]
struct DetStats {
    renorm: u64,
    warn: u64,
}

impl DetStats {
    fn add<const N: usize>(&mut self, x: &LatticePoint<N>) {
        self.renorm += x.det_renorm_count();
        self.warn += x.det_warnings();
    }
}

/// Fraction of slice samples `h` with `λ₁(a h Z^n) < ε` for each `ε`.
pub fn nonescape_profile(
    spec: &SliceSpec,
    log_diag: &[Rational],
    eps_grid: &[f64],
) -> Result<ExperimentResult, SimError> {
    spec.validate()?;
    check_log_len(log_diag, spec.n)?;
    if eps_grid.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
        return Err(SimError::InvalidSpec(
            "eps grid entries must be positive".into(),
        ));
    }
    let (sys, ec) = shape_cone(spec.n, spec.m)?;
    sys.check_cartan(log_diag)?;
    if !ec.cone.member(log_diag, Mode::Closed)? {
        return Err(SimError::Precondition(format!(
            "log diagonal {:?} is not in the closed expanding cone",
            fmt_q(log_diag)
        )));
    }
    let start = Instant::now();
    let (counts, stats) = match spec.n {
        2 => nonescape_counts::<2>(spec, log_diag, eps_grid),
        _ => nonescape_counts::<3>(spec, log_diag, eps_grid),
    };
    let total = spec.samples as f64;
    let mut rows = Vec::with_capacity(eps_grid.len());
    let (mut lo, mut hi) = (Vec::new(), Vec::new());
    for (&eps, &k) in eps_grid.iter().zip(&counts) {
        let p = k / total;
        let (l, h) = wilson(k, total);
        lo.push(l);
        hi.push(h);
        let oracle = (spec.n == 2).then(|| systole_cdf_sl2(eps));
        rows.push(Row {
            grid: eps,
            estimate: p,
            std_error: (p * (1.0 - p) / total).sqrt(),
            oracle,
            gap: oracle.map(|o| p - o),
        });
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = rows
        .iter()
        .filter(|r| r.estimate > 0.0)
        .map(|r| (r.grid.ln(), r.estimate.ln()))
        .unzip();
    let envelope: Option<Vec<f64>> =
        (spec.n == 2).then(|| eps_grid.iter().map(|e| 2.0 * e * e).collect());
    let within_envelope = envelope
        .as_ref()
        .map(|env| lo.iter().zip(env).all(|(l, e)| l <= e));
    Ok(ExperimentResult {
        experiment: "nonescape".into(),
        grid_name: "eps".into(),
        rows,
        seed: Some(spec.seed),
        summary: Summary::Nonescape {
            log_diag: fmt_q(log_diag),
            wilson_lower: lo,
            wilson_upper: hi,
            slope: lsq_slope(&xs, &ys),
            slope_points: xs.len(),
            envelope,
            within_envelope,
        },
        det_renormalizations: stats.renorm,
        det_warnings: stats.warn,
        wall_clock_secs: start.elapsed().as_secs_f64(),
    })
}

fn nonescape_counts<const N: usize>(
    spec: &SliceSpec,
    log_diag: &[Rational],
    eps_grid: &[f64],
) -> (Vec<f64>, DetStats) {
    let a = diag_exp::<N>(&logs_f64::<N>(log_diag));
    let parts = map_ordered(spec.num_chunks(), |c| {
        let mut counts = vec![0.0; eps_grid.len()];
        let mut stats = DetStats::default();
        for p in sample_chunk(spec, c) {
            let x = standard_times(&mat_mul(&a, &unipotent::<N>(spec.m, &p)));
            stats.add(&x);
            let l = x.shortest_vector();
            for (cnt, e) in counts.iter_mut().zip(eps_grid) {
                if l < *e {
                    *cnt += 1.0;
                }
            }
        }
        (counts, stats)
    });
    let mut stats = DetStats::default();
    let mut vecs = Vec::with_capacity(parts.len());
    for (v, s) in parts {
        vecs.push(v);
        stats.renorm += s.renorm;
        stats.warn += s.warn;
    }
    (pairwise_sum_vec(&vecs, eps_grid.len()), stats)
}

/// How the Haar side of a translate average is computed.
#[derive(Debug, Clone, PartialEq)]
pub enum OracleSource {
    /// Siegel volumes, constants, and for `n = 2` the exact systole density.
    Analytic,
    /// Monte Carlo over `haar_sample_sl2(samples, seed)`; `n = 2` only.
    HaarSample { samples: usize, seed: u64 },
}

fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = pairwise_sum(xs) / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let dev: Vec<f64> = xs.iter().map(|x| (x - mean) * (x - mean)).collect();
    let var = pairwise_sum(&dev) / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Monte Carlo slice average of `∏ ψ_i(a_i ⋯ a_1 h Z^n)` with `f` the uniform
/// density on the box, against the product of Haar means.
pub fn translate_average(
    spec: &SliceSpec,
    chain: &[QVec],
    psis: &[TestFunction],
    oracle: &OracleSource,
) -> Result<ExperimentResult, SimError> {
    spec.validate()?;
    if chain.is_empty() || chain.len() > 2 {
        return Err(SimError::UnsupportedKind(format!(
            "translate chains of length {} (only 1 or 2 are supported)",
            chain.len()
        )));
    }
    if psis.len() != chain.len() {
        return Err(SimError::InvalidSpec(format!(
            "{} test functions for a chain of length {}",
            psis.len(),
            chain.len()
        )));
    }
    for psi in psis {
        psi.validate()?;
    }
    let (sys, ec) = shape_cone(spec.n, spec.m)?;
    let w = block_flow(spec.m, spec.n - spec.m);
    let fd = horospherical_roots(&sys, &w)?;
    let mut floors = Vec::new();
    let mut open = Vec::new();
    for logs in chain {
        check_log_len(logs, spec.n)?;
        sys.check_cartan(logs)?;
        if !ec.cone.member(logs, Mode::Closed)? {
            return Err(SimError::Precondition(format!(
                "log diagonal {:?} is not in the closed expanding cone",
                fmt_q(logs)
            )));
        }
        open.push(ec.cone.member(logs, Mode::Open)?);
        floors.push(floor(&ec, &fd, &CartanVector(logs.clone()))?);
    }
    let min_floor = floors.iter().min().cloned().expect("nonempty chain");

    let (oracle_value, oracle_se, source) = translate_oracle(psis, spec.n, oracle)?;

    let start = Instant::now();
    let (values, stats) = match spec.n {
        2 => translate_values::<2>(spec, chain, psis),
        _ => translate_values::<3>(spec, chain, psis),
    };
    let total = values.len();
    let mut prefixes: Vec<usize> = [8, 4, 2, 1]
        .iter()
        .map(|d| total / d)
        .filter(|&k| k >= 1)
        .collect();
    prefixes.dedup();
    let rows: Vec<Row> = prefixes
        .iter()
        .map(|&k| {
            let (mean, se) = mean_and_se(&values[..k]);
            Row {
                grid: k as f64,
                estimate: mean,
                std_error: se,
                oracle: Some(oracle_value),
                gap: Some(mean - oracle_value),
            }
        })
        .collect();
    let last = rows.last().expect("at least one row");
    let combined = (last.std_error.powi(2) + oracle_se.powi(2)).sqrt();
    let gap = last.estimate - oracle_value;
    let z_score = if combined > 0.0 {
        Some(gap / combined)
    } else if gap == 0.0 {
        Some(0.0)
    } else {
        None
    };
    Ok(ExperimentResult {
        experiment: "translate".into(),
        grid_name: "samples".into(),
        rows,
        seed: Some(spec.seed),
        summary: Summary::Translate {
            chain: chain.iter().map(|c| fmt_q(c)).collect(),
            floors: floors.iter().map(format_rational).collect(),
            floor: format_rational(&min_floor),
            in_open_cone: open,
            oracle_source: source,
            oracle_std_error: oracle_se,
            combined_std_error: combined,
            z_score,
        },
        det_renormalizations: stats.renorm,
        det_warnings: stats.warn,
        wall_clock_secs: start.elapsed().as_secs_f64(),
    })
}

fn translate_oracle(
    psis: &[TestFunction],
    n: usize,
    source: &OracleSource,
) -> Result<(f64, f64, String), SimError> {
    match source {
        OracleSource::Analytic => {
            let mut prod = 1.0;
            for psi in psis {
                prod *= haar_mean(psi, n).ok_or_else(|| {
                    SimError::UnsupportedKind(format!(
                        "no analytic Haar mean for {} at n = {n}",
                        psi.name()
                    ))
                })?;
            }
            Ok((prod, 0.0, "analytic".into()))
        }
        OracleSource::HaarSample { samples, seed } => {
            if n != 2 {
                return Err(SimError::UnsupportedDimension(n));
            }
            if *samples < 2 {
                return Err(SimError::InvalidSpec(
                    "haar oracle needs at least 2 samples".into(),
                ));
            }
            let pts = haar_sample_sl2(*samples, *seed).points;
            let cols: Vec<Vec<f64>> = psis
                .iter()
                .map(|psi| pts.iter().map(|p| psi.eval(p)).collect())
                .collect();
            let ms: Vec<f64> = cols.iter().map(|c| mean_and_se(c).0).collect();
            let prod: f64 = ms.iter().product();
            // delta method with the sample covariance of the per-point values
            let k = cols.len();
            let len = pts.len() as f64;
            let mut var = 0.0;
            for i in 0..k {
                for j in 0..k {
                    let gi: f64 = (0..k).filter(|&l| l != i).map(|l| ms[l]).product();
                    let gj: f64 = (0..k).filter(|&l| l != j).map(|l| ms[l]).product();
                    let prods: Vec<f64> = cols[i]
                        .iter()
                        .zip(&cols[j])
                        .map(|(a, b)| (a - ms[i]) * (b - ms[j]))
                        .collect();
                    let cov = pairwise_sum(&prods) / (len - 1.0) / len;
                    var += gi * gj * cov;
                }
            }
            Ok((
                prod,
                var.max(0.0).sqrt(),
                format!("haar_sample({samples}, seed {seed})"),
            ))
        }
    }
}

fn translate_values<const N: usize>(
    spec: &SliceSpec,
    chain: &[QVec],
    psis: &[TestFunction],
) -> (Vec<f64>, DetStats) {
    let mats: Vec<Mat<N>> = chain
        .iter()
        .map(|l| diag_exp::<N>(&logs_f64::<N>(l)))
        .collect();
    let parts = map_ordered(spec.num_chunks(), |c| {
        let mut out = Vec::new();
        let mut stats = DetStats::default();
        for p in sample_chunk(spec, c) {
            let mut x = standard_times(&mat_mul(&mats[0], &unipotent::<N>(spec.m, &p)));
            let mut v = psis[0].eval(&x);
            for (a, psi) in mats.iter().zip(psis).skip(1) {
                x.apply(a);
                v *= psi.eval(&x);
            }
            stats.add(&x);
            out.push(v);
        }
        (out, stats)
    });
    let mut stats = DetStats::default();
    let mut values = Vec::with_capacity(spec.samples);
    for (v, s) in parts {
        values.extend(v);
        stats.renorm += s.renorm;
        stats.warn += s.warn;
    }
    (values, stats)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicParams {
    pub t_grid: Vec<f64>,
    pub psi: TestFunction,
    pub min_nodes: usize,
    pub max_nodes: usize,
    /// Relative tolerance between successive refinements.
    pub tol: f64,
}

impl PeriodicParams {
    pub fn new(t_grid: Vec<f64>, psi: TestFunction) -> Self {
        PeriodicParams {
            t_grid,
            psi,
            min_nodes: 10_000,
            max_nodes: 1 << 22,
            tol: 1e-13,
        }
    }
}

/// The lattice `a_t u_s Z^2` with `a_t = diag(e^t, e^{-t})`.
pub fn horocycle_point(t: f64, s: f64) -> Result<LatticePoint<2>, SimError> {
    let (e, ei) = (t.exp(), (-t).exp());
    LatticePoint::from_basis([[e, 0.0], [e * s, ei]])
}

/// Integral of `ψ(a_t u_s Z^2)` over `s ∈ [0, 1)` by composite Gauss–Legendre,
/// doubling the panel count until successive values agree.
pub fn periodic_orbit_average(params: &PeriodicParams) -> Result<ExperimentResult, SimError> {
    params.psi.validate()?;
    if params.t_grid.iter().any(|t| !t.is_finite()) {
        return Err(SimError::InvalidSpec(
            "t grid entries must be finite".into(),
        ));
    }
    if params.min_nodes == 0 || params.max_nodes < params.min_nodes {
        return Err(SimError::InvalidSpec(
            "need 0 < min_nodes <= max_nodes".into(),
        ));
    }
    let start = Instant::now();
    let oracle = haar_mean(&params.psi, 2);
    let mut rows = Vec::new();
    let mut nodes = Vec::new();
    for &t in &params.t_grid {
        let (e, ei) = (t.exp(), (-t).exp());
        let f = |s: f64| {
            let x = LatticePoint::from_basis([[e, 0.0], [e * s, ei]]).expect("unimodular basis");
            params.psi.eval(&x)
        };
        let mut panels = params.min_nodes.div_ceil(NODES_PER_PANEL);
        let mut prev = composite_par(f, 0.0, 1.0, panels);
        let (value, err) = loop {
            panels *= 2;
            let cur = composite_par(f, 0.0, 1.0, panels);
            let err = (cur - prev).abs();
            if err <= params.tol * cur.abs().max(1.0)
                || 2 * panels * NODES_PER_PANEL > params.max_nodes
            {
                break (cur, err);
            }
            prev = cur;
        };
        nodes.push(panels * NODES_PER_PANEL);
        rows.push(Row {
            grid: t,
            estimate: value,
            std_error: err,
            oracle,
            gap: oracle.map(|o| value - o),
        });
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = rows
        .iter()
        .filter_map(|r| {
            let g = r.gap?.abs();
            (g > 3.0 * r.std_error && g > 0.0).then(|| (r.grid, g.ln()))
        })
        .unzip();
    Ok(ExperimentResult {
        experiment: "periodic_orbit".into(),
        grid_name: "t".into(),
        rows,
        seed: None,
        summary: Summary::PeriodicOrbit {
            nodes,
            decay_rate: lsq_slope(&xs, &ys).map(|s| -s),
        },
        det_renormalizations: 0,
        det_warnings: 0,
        wall_clock_secs: start.elapsed().as_secs_f64(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointwiseParams {
    pub seed: u64,
    /// `h = u_s` with `s` uniform on `[-h_radius, h_radius]`.
    pub h_radius: f64,
    /// Exact logarithm of the flow direction, a trace-zero diagonal.
    pub direction: QVec,
    pub t_grid: Vec<f64>,
    pub dt: f64,
    pub psi: TestFunction,
    pub batches: usize,
    pub fit_range: [f64; 2],
}

impl PointwiseParams {
    pub fn new(seed: u64, direction: QVec, t_grid: Vec<f64>, psi: TestFunction) -> Self {
        PointwiseParams {
            seed,
            h_radius: 1.0,
            direction,
            t_grid,
            dt: 0.01,
            psi,
            batches: 20,
            fit_range: [1e2, 1e4],
        }
    }
}

/// Running averages `(1/T) ∫_0^T ψ(exp(t s) h Z^2) dt` along one orbit, by the
/// trapezoid rule with step `dt`.
pub fn pointwise_rate(params: &PointwiseParams) -> Result<ExperimentResult, SimError> {
    params.psi.validate()?;
    if !(params.dt > 0.0 && params.dt <= 0.01) {
        return Err(SimError::InvalidSpec("dt must lie in (0, 0.01]".into()));
    }
    if !(params.h_radius.is_finite() && params.h_radius >= 0.0) {
        return Err(SimError::InvalidSpec(
            "h radius must be finite and >= 0".into(),
        ));
    }
    if params.batches < 2 {
        return Err(SimError::InvalidSpec("need at least 2 batches".into()));
    }
    if params.t_grid.is_empty()
        || params.t_grid.windows(2).any(|w| w[1] <= w[0])
        || params.t_grid[0] < params.dt * params.batches as f64
    {
        return Err(SimError::InvalidSpec(format!(
            "T grid must be strictly increasing and start at >= {}",
            params.dt * params.batches as f64
        )));
    }
    check_log_len(&params.direction, 2)?;
    let (sys, ec) = shape_cone(2, 1)?;
    sys.check_cartan(&params.direction)?;
    let dir = CartanVector(params.direction.clone());
    if !ec.cone.member(&dir.0, Mode::Open)? {
        return Err(SimError::Precondition(format!(
            "direction {:?} is not in the open expanding cone",
            fmt_q(&dir.0)
        )));
    }
    let fd_b = horospherical_roots(&sys, &block_flow(1, 1))?;
    let ok = expcone_core::hplus_contained_in_u(&ec, &fd_b)
        && fd_b
            .expanded_roots
            .iter()
            .all(|a| a.eval(&dir).is_positive());
    if !ok {
        return Err(SimError::Precondition(
            "horospherical subgroup of the block flow is not expanded by the direction".into(),
        ));
    }
    let oracle = haar_mean(&params.psi, 2);

    let start = Instant::now();
    let s = {
        let mut rng = chunk_rng(params.seed, 0);
        -params.h_radius + 2.0 * params.h_radius * rng.random::<f64>()
    };
    let steps: Vec<usize> = params
        .t_grid
        .iter()
        .map(|t| (t / params.dt).round() as usize)
        .collect();
    let total = *steps.last().expect("nonempty grid");
    let logs = logs_f64::<2>(&params.direction);
    let step = diag_exp::<2>(&[logs[0] * params.dt, logs[1] * params.dt]);
    let mut x = standard_times(&unipotent::<2>(1, &[s]));
    let mut prev = params.psi.eval(&x);
    // prefix[k] = ∫_0^{k dt}
    let mut prefix = Vec::with_capacity(total + 1);
    prefix.push(0.0);
    let mut acc = 0.0;
    for _ in 0..total {
        x.apply(&step);
        let cur = params.psi.eval(&x);
        acc += 0.5 * params.dt * (prev + cur);
        prefix.push(acc);
        prev = cur;
    }

    let b = params.batches;
    let rows: Vec<Row> = steps
        .iter()
        .map(|&k| {
            let t = k as f64 * params.dt;
            let avg = prefix[k] / t;
            let means: Vec<f64> = (0..b)
                .map(|j| {
                    let (lo, hi) = (j * k / b, (j + 1) * k / b);
                    (prefix[hi] - prefix[lo]) / ((hi - lo) as f64 * params.dt)
                })
                .collect();
            let (_, se) = mean_and_se(&means);
            Row {
                grid: t,
                estimate: avg,
                std_error: se,
                oracle,
                gap: oracle.map(|o| avg - o),
            }
        })
        .collect();

    let t_max = rows.last().map(|r| r.grid).unwrap_or(0.0);
    let decade: Vec<&Row> = rows
        .iter()
        .filter(|r| r.grid >= t_max / 10.0 * (1.0 - 1e-12))
        .collect();
    let [lo, hi] = params.fit_range;
    let fit: Vec<&Row> = rows
        .iter()
        .filter(|r| r.grid >= lo * (1.0 - 1e-12) && r.grid <= hi * (1.0 + 1e-12))
        .collect();
    let envelope: Vec<f64> = (0..fit.len())
        .map(|i| {
            fit[i..]
                .iter()
                .map(|r| r.gap.map_or(0.0, f64::abs))
                .fold(0.0, f64::max)
        })
        .collect();
    Ok(ExperimentResult {
        experiment: "pointwise".into(),
        grid_name: "T".into(),
        summary: Summary::Pointwise {
            s,
            direction: fmt_q(&params.direction),
            decade_slope: log_log_slope(
                &decade.iter().map(|r| r.grid).collect::<Vec<_>>(),
                &decade
                    .iter()
                    .map(|r| r.gap.map_or(0.0, f64::abs))
                    .collect::<Vec<_>>(),
            ),
            fit_range: params.fit_range,
            envelope_slope: log_log_slope(
                &fit.iter().map(|r| r.grid).collect::<Vec<_>>(),
                &envelope,
            ),
        },
        rows,
        seed: Some(params.seed),
        det_renormalizations: x.det_renorm_count(),
        det_warnings: x.det_warnings(),
        wall_clock_secs: start.elapsed().as_secs_f64(),
    })
}

/// Slope of `log y` against `log x`; `None` if any `y` vanishes.
fn log_log_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if ys
        .iter()
        .any(|y| y.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater))
    {
        return None;
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    lsq_slope(&lx, &ly)
}
