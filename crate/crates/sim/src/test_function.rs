//! Test functions on the space of unimodular lattices and their Haar means.

use crate::haar;
use crate::lattice::LatticePoint;
use crate::SimError;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TestFunction {
    /// Number of nonzero lattice vectors of length `< radius`.
    SiegelBall {
        radius: f64,
    },
    /// `min(λ₁, cap)`.
    TruncatedSystole {
        cap: f64,
    },
    /// `φ((λ₁ - center) / width)` with the standard compactly supported bump
    /// `φ(x) = exp(1 - 1/(1 - x²))` on `|x| < 1`.
    SmoothBump {
        center: f64,
        width: f64,
    },
    Constant {
        value: f64,
    },
}

pub fn bump(x: f64) -> f64 {
    if x.abs() < 1.0 {
        (1.0 - 1.0 / (1.0 - x * x)).exp()
    } else {
        0.0
    }
}

impl TestFunction {
    pub fn validate(&self) -> Result<(), SimError> {
        let ok = match self {
            TestFunction::SiegelBall { radius } => radius.is_finite() && *radius > 0.0,
            TestFunction::TruncatedSystole { cap } => cap.is_finite() && *cap > 0.0,
            TestFunction::SmoothBump { center, width } => {
                center.is_finite() && width.is_finite() && *width > 0.0
            }
            TestFunction::Constant { value } => value.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(SimError::InvalidSpec(format!(
                "invalid test function parameters: {self:?}"
            )))
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TestFunction::SiegelBall { .. } => "siegel_ball",
            TestFunction::TruncatedSystole { .. } => "truncated_systole",
            TestFunction::SmoothBump { .. } => "smooth_bump",
            TestFunction::Constant { .. } => "constant",
        }
    }

    pub fn is_bounded(&self) -> bool {
        !matches!(self, TestFunction::SiegelBall { .. })
    }

    /// Value as a function of the systole, for the kinds that depend only on it.
    pub fn of_systole(&self, l: f64) -> Option<f64> {
        match self {
            TestFunction::TruncatedSystole { cap } => Some(l.min(*cap)),
            TestFunction::SmoothBump { center, width } => Some(bump((l - center) / width)),
            TestFunction::Constant { value } => Some(*value),
            TestFunction::SiegelBall { .. } => None,
        }
    }

    pub fn eval<const N: usize>(&self, x: &LatticePoint<N>) -> f64 {
        match self {
            TestFunction::SiegelBall { radius } => x.count_within(*radius) as f64,
            TestFunction::Constant { value } => *value,
            _ => self
                .of_systole(x.shortest_vector())
                .expect("systole-based kind"),
        }
    }

    /// Points where the function of `λ₁` is not smooth.
    fn breakpoints(&self) -> Vec<f64> {
        match self {
            TestFunction::TruncatedSystole { cap } => vec![*cap],
            TestFunction::SmoothBump { center, width } => {
                vec![center - width, *center, center + width]
            }
            _ => vec![],
        }
    }
}

/// Haar expectation of the lattice-point count in a ball, i.e. the volume
/// of the ball in `R^n`.
pub fn siegel_expectation(tf: &TestFunction, n: usize) -> Result<f64, SimError> {
    let TestFunction::SiegelBall { radius } = tf else {
        return Err(SimError::UnsupportedKind(format!(
            "siegel_expectation needs siegel_ball, got {}",
            tf.name()
        )));
    };
    match n {
        2 => Ok(PI * radius * radius),
        3 => Ok(4.0 / 3.0 * PI * radius.powi(3)),
        _ => Err(SimError::UnsupportedDimension(n)),
    }
}

/// Haar mean of `tf` on `SL_n(R)/SL_n(Z)` when it is known analytically:
/// always for `n = 2`, and for Siegel balls and constants when `n = 3`.
pub fn haar_mean(tf: &TestFunction, n: usize) -> Option<f64> {
    match (tf, n) {
        (TestFunction::SiegelBall { .. }, _) => siegel_expectation(tf, n).ok(),
        (TestFunction::Constant { value }, _) => Some(*value),
        (_, 2) => {
            let f = |l: f64| tf.of_systole(l).expect("systole-based kind");
            Some(haar::expect_systole_fn(f, &tf.breakpoints()))
        }
        _ => None,
    }
}
