//! Versioned JSON documents for root systems and cones. Rationals are
//! written as exact `"p/q"` strings.

use crate::cone::Cone;
use crate::error::CoreError;
use crate::rational::{format_qvec, format_rational, parse_rational, QVec};
use crate::root_system::{Family, RootSystem};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum DescriptorError {
    #[error("unsupported schema version {0}")]
    Version(u32),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Rational(#[from] crate::rational::ParseRationalError),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("descriptor is inconsistent with the rebuilt system: {0}")]
    Inconsistent(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorDto {
    pub family: String,
    pub rank: usize,
    pub kappa: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemDto {
    pub version: u32,
    pub family: String,
    pub rank: usize,
    pub kappa: Vec<String>,
    pub factors: Vec<FactorDto>,
    pub roots: Vec<Vec<String>>,
    pub simple_roots: Vec<Vec<String>>,
    pub gram: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeDto {
    pub version: u32,
    pub ambient_dim: usize,
    pub generators: Vec<Vec<String>>,
    pub facets: Vec<Vec<String>>,
    pub equations: Vec<Vec<String>>,
    pub weight_scaled: bool,
}

pub fn strings(rows: &[QVec]) -> Vec<Vec<String>> {
    rows.iter().map(|r| format_qvec(r)).collect()
}

fn parse_rows(rows: &[Vec<String>]) -> Result<Vec<QVec>, DescriptorError> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|x| parse_rational(x))
                .collect::<Result<QVec, _>>()
        })
        .collect::<Result<_, _>>()
        .map_err(DescriptorError::from)
}

impl From<&RootSystem> for RootSystemDto {
    fn from(sys: &RootSystem) -> Self {
        RootSystemDto {
            version: SCHEMA_VERSION,
            family: sys.label(),
            rank: sys.rank(),
            kappa: sys
                .factors()
                .iter()
                .map(|f| format_rational(&f.kappa))
                .collect(),
            factors: sys
                .factors()
                .iter()
                .map(|f| FactorDto {
                    family: f.family.to_string(),
                    rank: f.rank,
                    kappa: format_rational(&f.kappa),
                })
                .collect(),
            roots: sys.roots().iter().map(|c| format_qvec(&c.0)).collect(),
            simple_roots: sys
                .simple_roots()
                .iter()
                .map(|c| format_qvec(&c.0))
                .collect(),
            gram: strings(sys.gram_primal()),
        }
    }
}

impl From<&Cone> for ConeDto {
    fn from(c: &Cone) -> Self {
        ConeDto {
            version: SCHEMA_VERSION,
            ambient_dim: c.ambient_dim(),
            generators: strings(c.generators()),
            facets: strings(c.facets()),
            equations: strings(c.equations()),
            weight_scaled: c.weight_scaled(),
        }
    }
}

/// Rebuilds a system from its descriptor and checks the stored data against it.
pub fn root_system_from_dto(dto: &RootSystemDto) -> Result<RootSystem, DescriptorError> {
    if dto.version != SCHEMA_VERSION {
        return Err(DescriptorError::Version(dto.version));
    }
    let spec = dto
        .factors
        .iter()
        .map(|f| {
            Ok((
                f.family.parse::<Family>()?,
                f.rank,
                Some(parse_rational(&f.kappa)?),
            ))
        })
        .collect::<Result<Vec<_>, DescriptorError>>()?;
    let sys = RootSystem::product(&spec)?;
    let roots = parse_rows(&dto.roots)?;
    if roots.len() != sys.roots().len() || roots.iter().zip(sys.roots()).any(|(a, b)| *a != b.0) {
        return Err(DescriptorError::Inconsistent("roots"));
    }
    let simple = parse_rows(&dto.simple_roots)?;
    if simple.iter().ne(sys.simple_roots().iter().map(|c| &c.0)) {
        return Err(DescriptorError::Inconsistent("simple_roots"));
    }
    if parse_rows(&dto.gram)? != *sys.gram_primal() {
        return Err(DescriptorError::Inconsistent("gram"));
    }
    Ok(sys)
}

pub fn root_system_to_json(sys: &RootSystem) -> String {
    serde_json::to_string_pretty(&RootSystemDto::from(sys)).expect("serializable")
}

pub fn root_system_from_json(s: &str) -> Result<RootSystem, DescriptorError> {
    root_system_from_dto(&serde_json::from_str(s)?)
}

pub fn cone_to_json(c: &Cone) -> String {
    serde_json::to_string_pretty(&ConeDto::from(c)).expect("serializable")
}
