//! Numerical thresholds shared by every module.
//!
//! All decisions that are made in floating point read their thresholds from a
//! [`Tolerances`] value, which can be loaded from a TOML file and overridden
//! from the command line. Exact (rational) decisions never consult it.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Golden ratio; the default deformation grid is scaled by it.
pub const GOLDEN: f64 = 1.618_033_988_749_895;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Relative residual allowed on defining conditions and triple relations.
    pub membership: f64,
    /// Relative singular-value threshold for numerical rank and kernels.
    pub rank: f64,
    /// Distance from an integer below which an eigenvalue is rounded.
    pub integer_guard: f64,
    /// Absolute log-scale tolerance for the pairing pattern of μ.
    pub pairing: f64,
    /// Surface relation residual required from the Fuchsian seed.
    pub relation: f64,
    /// Candidate deformation parameters, tried in order.
    pub t_grid: Vec<f64>,
    /// Radius below which μ-samples are ignored by the pitchfork diagnostic.
    pub pitchfork_radius: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            membership: 1e-9,
            rank: 1e-7,
            integer_guard: 1e-8,
            pairing: 1e-8,
            relation: 1e-10,
            t_grid: vec![1e-2 * GOLDEN, 1e-3 * GOLDEN, 1e-4 * GOLDEN],
            pitchfork_radius: 5.0,
        }
    }
}

impl Tolerances {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let tol: Self = toml::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        tol.validate()?;
        Ok(tol)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("membership", self.membership),
            ("rank", self.rank),
            ("integer_guard", self.integer_guard),
            ("pairing", self.pairing),
            ("relation", self.relation),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::Config(format!("{name} must lie in (0, 1), got {v}")));
            }
        }
        if self.t_grid.is_empty() || self.t_grid.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(Error::Config(
                "t_grid must be a non-empty list of positive numbers".into(),
            ));
        }
        if self.pitchfork_radius.is_nan() || self.pitchfork_radius < 0.0 {
            return Err(Error::Config("pitchfork_radius must be nonnegative".into()));
        }
        Ok(())
    }
}
