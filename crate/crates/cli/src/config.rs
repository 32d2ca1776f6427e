//! Experiment configs for `simulate`, in TOML or JSON.
//!
//! ```toml
//! experiment = "nonescape"
//! n = 2
//! shape = [1, 1]
//!
//! [slice]
//! r = 1.0
//! N = 100000
//! seed = 1
//!
//! [translate]
//! diag = ["3", "-3"]
//!
//! [grids]
//! eps = [0.4, 0.2, 0.1, 0.05]
//! ```

use crate::error::CliError;
use expcone_core::rational::parse_rational;
use expcone_core::QVec;
use expcone_sim::{OracleSource, PeriodicParams, PointwiseParams, SliceSpec, TestFunction};
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub experiment: Option<String>,
    pub n: Option<usize>,
    /// `(m, n - m)`.
    pub shape: Option<[usize; 2]>,
    pub slice: Option<RawSlice>,
    pub translate: Option<RawTranslate>,
    pub psi: Option<PsiList>,
    pub grids: Option<RawGrids>,
    pub oracle: Option<RawOracle>,
    pub quadrature: Option<RawQuadrature>,
    pub flow: Option<RawFlow>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSlice {
    pub r: Option<f64>,
    #[serde(rename = "N", alias = "samples")]
    pub samples: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTranslate {
    pub diag: Option<Vec<String>>,
    pub chain: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum PsiList {
    One(TestFunction),
    Many(Vec<TestFunction>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGrids {
    pub eps: Option<Vec<f64>>,
    pub t: Option<Vec<f64>>,
    #[serde(rename = "T")]
    pub big_t: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawOracle {
    pub source: String,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawQuadrature {
    pub min_nodes: Option<usize>,
    pub max_nodes: Option<usize>,
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFlow {
    pub direction: Option<Vec<String>>,
    pub dt: Option<f64>,
    pub batches: Option<usize>,
    pub fit_range: Option<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Experiment {
    Nonescape {
        spec: SliceSpec,
        log_diag: QVec,
        eps: Vec<f64>,
    },
    Translate {
        spec: SliceSpec,
        chain: Vec<QVec>,
        psis: Vec<TestFunction>,
        oracle: OracleSource,
    },
    PeriodicOrbit(PeriodicParams),
    Pointwise(PointwiseParams),
}

impl Experiment {
    pub fn seeds(&self) -> Vec<u64> {
        match self {
            Experiment::Nonescape { spec, .. } => vec![spec.seed],
            Experiment::Translate { spec, oracle, .. } => match oracle {
                OracleSource::HaarSample { seed, .. } => vec![spec.seed, *seed],
                OracleSource::Analytic => vec![spec.seed],
            },
            Experiment::PeriodicOrbit(_) => vec![],
            Experiment::Pointwise(p) => vec![p.seed],
        }
    }
}

pub const EXPERIMENTS: [&str; 4] = ["nonescape", "translate", "periodic_orbit", "pointwise"];

fn canonical_name(name: &str) -> Option<&'static str> {
    match name {
        "periodic" => Some("periodic_orbit"),
        _ => EXPERIMENTS.iter().copied().find(|e| *e == name),
    }
}

fn required<T>(v: Option<T>, field: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("{field} required")))
}

fn exact_list(field: &str, xs: &[String]) -> Result<QVec, CliError> {
    xs.iter()
        .enumerate()
        .map(|(i, s)| parse_rational(s).map_err(|e| CliError::field(format!("{field}[{i}]"), e)))
        .collect()
}

/// Parses config bytes; `.json` paths are read as JSON and anything else as TOML.
pub fn parse_raw(bytes: &[u8], json: bool) -> Result<RawConfig, CliError> {
    let text = std::str::from_utf8(bytes)
        .map_err(|e| CliError::Usage(format!("config is not UTF-8: {e}")))?;
    if json {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))
    } else {
        toml::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))
    }
}

fn slice_spec(raw: &RawConfig, n: usize, m: usize) -> Result<SliceSpec, CliError> {
    let slice = required(raw.slice.as_ref(), "slice")?;
    let spec = SliceSpec {
        n,
        m,
        radius: required(slice.r, "slice.r")?,
        samples: required(slice.samples, "slice.N")?,
        seed: required(slice.seed, "slice.seed")?,
    };
    spec.validate().map_err(|e| CliError::field("slice", e))?;
    Ok(spec)
}

fn shape(raw: &RawConfig, n: usize) -> Result<usize, CliError> {
    match raw.shape {
        Some([m, k]) if m + k == n && m >= 1 && k >= 1 => Ok(m),
        Some([m, k]) => Err(CliError::field(
            "shape",
            format!("[{m}, {k}] is not a split of n = {n}"),
        )),
        None => Ok(1),
    }
}

fn dimension(raw: &RawConfig) -> Result<usize, CliError> {
    let n = required(raw.n, "n")?;
    if !(2..=3).contains(&n) {
        return Err(CliError::field(
            "n",
            format!("{n} is not supported (use 2 or 3)"),
        ));
    }
    Ok(n)
}

fn psi_list(raw: &RawConfig) -> Result<Vec<TestFunction>, CliError> {
    let list = match required(raw.psi.clone(), "psi")? {
        PsiList::One(p) => vec![p],
        PsiList::Many(ps) => ps,
    };
    for (i, p) in list.iter().enumerate() {
        p.validate()
            .map_err(|e| CliError::field(format!("psi[{i}]"), e))?;
    }
    Ok(list)
}

fn single_psi(raw: &RawConfig) -> Result<TestFunction, CliError> {
    let mut list = psi_list(raw)?;
    if list.len() != 1 {
        return Err(CliError::field("psi", "expected a single test function"));
    }
    Ok(list.remove(0))
}

fn grid(v: Option<&Vec<f64>>, field: &str) -> Result<Vec<f64>, CliError> {
    let g = required(v, field)?.clone();
    if g.is_empty() || g.iter().any(|x| !x.is_finite()) {
        return Err(CliError::field(
            field,
            "must be a nonempty list of finite numbers",
        ));
    }
    Ok(g)
}

/// Validates `raw` against the schema of `name`.
pub fn build(name: &str, raw: &RawConfig) -> Result<Experiment, CliError> {
    let name = canonical_name(name).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown experiment {name:?} (expected one of {})",
            EXPERIMENTS.join(", ")
        ))
    })?;
    if let Some(e) = &raw.experiment {
        if canonical_name(e) != Some(name) {
            return Err(CliError::field(
                "experiment",
                format!("config is for {e:?}, not {name:?}"),
            ));
        }
    }
    let grids = raw.grids.as_ref();
    match name {
        "nonescape" => {
            let n = dimension(raw)?;
            let m = shape(raw, n)?;
            let spec = slice_spec(raw, n, m)?;
            let diag = required(
                raw.translate.as_ref().and_then(|t| t.diag.as_ref()),
                "translate.diag",
            )?;
            let log_diag = exact_list("translate.diag", diag)?;
            let eps = grid(grids.and_then(|g| g.eps.as_ref()), "grids.eps")?;
            Ok(Experiment::Nonescape {
                spec,
                log_diag,
                eps,
            })
        }
        "translate" => {
            let n = dimension(raw)?;
            let m = shape(raw, n)?;
            let spec = slice_spec(raw, n, m)?;
            let tr = required(raw.translate.as_ref(), "translate")?;
            let chain = match (&tr.chain, &tr.diag) {
                (Some(c), None) => c
                    .iter()
                    .enumerate()
                    .map(|(i, d)| exact_list(&format!("translate.chain[{i}]"), d))
                    .collect::<Result<Vec<_>, _>>()?,
                (None, Some(d)) => vec![exact_list("translate.diag", d)?],
                _ => {
                    return Err(CliError::field(
                        "translate",
                        "give exactly one of diag or chain",
                    ))
                }
            };
            let psis = psi_list(raw)?;
            let oracle = match &raw.oracle {
                None => OracleSource::Analytic,
                Some(o) if o.source == "analytic" => OracleSource::Analytic,
                Some(o) if o.source == "haar_sample" => OracleSource::HaarSample {
                    samples: required(o.samples, "oracle.samples")?,
                    seed: required(o.seed, "oracle.seed")?,
                },
                Some(o) => {
                    return Err(CliError::field(
                        "oracle.source",
                        format!("{:?} (expected analytic or haar_sample)", o.source),
                    ))
                }
            };
            Ok(Experiment::Translate {
                spec,
                chain,
                psis,
                oracle,
            })
        }
        "periodic_orbit" => {
            if raw.n.is_some_and(|n| n != 2) {
                return Err(CliError::field(
                    "n",
                    "periodic orbits are only available for n = 2",
                ));
            }
            let mut p = PeriodicParams::new(
                grid(grids.and_then(|g| g.t.as_ref()), "grids.t")?,
                single_psi(raw)?,
            );
            if let Some(q) = &raw.quadrature {
                p.min_nodes = q.min_nodes.unwrap_or(p.min_nodes);
                p.max_nodes = q.max_nodes.unwrap_or(p.max_nodes);
                p.tol = q.tol.unwrap_or(p.tol);
            }
            Ok(Experiment::PeriodicOrbit(p))
        }
        _ => {
            if raw.n.is_some_and(|n| n != 2) {
                return Err(CliError::field(
                    "n",
                    "pointwise averages are only available for n = 2",
                ));
            }
            let slice = required(raw.slice.as_ref(), "slice")?;
            let seed = required(slice.seed, "slice.seed")?;
            let flow = raw.flow.as_ref();
            let direction = match flow.and_then(|f| f.direction.as_ref()) {
                Some(d) => exact_list("flow.direction", d)?,
                None => exact_list(
                    "translate.diag",
                    required(
                        raw.translate.as_ref().and_then(|t| t.diag.as_ref()),
                        "flow.direction",
                    )?,
                )?,
            };
            let mut p = PointwiseParams::new(
                seed,
                direction,
                grid(grids.and_then(|g| g.big_t.as_ref()), "grids.T")?,
                single_psi(raw)?,
            );
            if let Some(r) = slice.r {
                p.h_radius = r;
            }
            if let Some(f) = flow {
                p.dt = f.dt.unwrap_or(p.dt);
                p.batches = f.batches.unwrap_or(p.batches);
                p.fit_range = f.fit_range.unwrap_or(p.fit_range);
            }
            Ok(Experiment::Pointwise(p))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const NONESCAPE: &str = r#"
experiment = "nonescape"
n = 2
[slice]
r = 1.0
N = 100
seed = 4
[translate]
diag = ["3", "-3"]
[grids]
eps = [0.4, 0.2]
"#;

    #[test]
    fn nonescape_config_parses() {
        let raw = parse_raw(NONESCAPE.as_bytes(), false).unwrap();
        let Experiment::Nonescape {
            spec,
            log_diag,
            eps,
        } = build("nonescape", &raw).unwrap()
        else {
            panic!()
        };
        assert_eq!(spec.samples, 100);
        assert_eq!(spec.m, 1);
        assert_eq!(log_diag.len(), 2);
        assert_eq!(eps, vec![0.4, 0.2]);
    }

    #[test]
    fn missing_seed_is_reported() {
        let text = NONESCAPE.replace("seed = 4\n", "");
        let raw = parse_raw(text.as_bytes(), false).unwrap();
        let e = build("nonescape", &raw).unwrap_err();
        assert_eq!(e.to_string(), "slice.seed required");
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn malformed_rational_names_its_field() {
        let text = NONESCAPE.replace(r#"["3", "-3"]"#, r#"["1/0", "-3"]"#);
        let raw = parse_raw(text.as_bytes(), false).unwrap();
        let e = build("nonescape", &raw).unwrap_err();
        assert!(
            e.to_string()
                .starts_with("translate.diag[0]: malformed rational"),
            "{e}"
        );
    }

    #[test]
    fn unknown_keys_and_experiments_are_rejected() {
        let text = format!("{NONESCAPE}\nbogus = 1\n");
        assert!(parse_raw(text.as_bytes(), false).is_err());
        let raw = parse_raw(NONESCAPE.as_bytes(), false).unwrap();
        assert!(build("translate", &raw).is_err());
        assert!(build("nope", &raw).is_err());
    }

    #[test]
    fn json_and_psi_tables() {
        let text = r#"{"n": 2, "slice": {"r": 1, "N": 10, "seed": 1},
            "translate": {"chain": [["4","-4"], ["4","-4"]]},
            "psi": [{"kind": "truncated_systole", "cap": 1}, {"kind": "truncated_systole", "cap": 1}],
            "oracle": {"source": "haar_sample", "samples": 100, "seed": 2}}"#;
        let raw = parse_raw(text.as_bytes(), true).unwrap();
        let Experiment::Translate {
            chain,
            psis,
            oracle,
            ..
        } = build("translate", &raw).unwrap()
        else {
            panic!()
        };
        assert_eq!(chain.len(), 2);
        assert_eq!(psis.len(), 2);
        assert_eq!(
            oracle,
            OracleSource::HaarSample {
                samples: 100,
                seed: 2
            }
        );
    }
}
