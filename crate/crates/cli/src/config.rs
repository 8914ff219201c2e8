//! Run configuration: one JSON document with named body literals.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use sections::acceptance::DEFAULT_SEED;
use sections::probes::{Mode, ProbeKind};
use sections::{ConvexBody2, Point2};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub bodies: BTreeMap<String, ConvexBody2>,
    /// The body being probed or reconstructed.
    #[serde(default)]
    pub outer: Option<String>,
    /// One inner body, or the pair `D1`, `D2`.
    #[serde(default)]
    pub inner: Vec<String>,
    /// Second outer body for `verify`.
    #[serde(default)]
    pub compare: Option<String>,
    #[serde(default = "default_probe")]
    pub probe: ProbeKind,
    #[serde(default = "default_i")]
    pub i: f64,
    #[serde(default = "default_mode")]
    pub mode: Mode,
    #[serde(default = "default_grid")]
    pub grid_size: usize,
    /// Finer grid to compare an interpolated table against.
    #[serde(default)]
    pub refine_grid: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
    /// Probe point for point-chord and half-space tables.
    #[serde(default)]
    pub point: Option<Point2>,
    /// Polygon vertex index for vertex-cone tables.
    #[serde(default)]
    pub vertex: Option<usize>,
    #[serde(default)]
    pub orbit: OrbitSettings,
    #[serde(default)]
    pub rotation: Option<RotationSettings>,
    #[serde(default)]
    pub reconstruct: ReconstructSettings,
    #[serde(default)]
    pub nu: Option<NuSettings>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub outputs: Outputs,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OrbitSettings {
    /// Starting angle of `Q₀` on `∂K`, measured at `D1`'s contact on `l`.
    pub start_angle: f64,
    pub theta_min: f64,
    pub max_iter: usize,
    pub margin: f64,
    /// Drive the maps from tables at `grid_size` instead of the body.
    pub tabulated: bool,
}

impl Default for OrbitSettings {
    fn default() -> Self {
        Self { start_angle: std::f64::consts::FRAC_PI_6, theta_min: 1e-7, max_iter: 200, margin: 1e-5, tabulated: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RotationSettings {
    pub r: f64,
    #[serde(default)]
    pub theta0: f64,
    #[serde(default = "default_steps")]
    pub steps: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ReconstructSettings {
    pub budget: usize,
    /// `table` (functional tables of the outer body), `oracle`, or `files`.
    pub source: DataSourceKind,
    /// Functional tables for `D1` and `D2` when the source is `files`.
    pub tables: Vec<PathBuf>,
}

impl Default for ReconstructSettings {
    fn default() -> Self {
        Self { budget: 500, source: DataSourceKind::Table, tables: Vec::new() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DataSourceKind {
    Table,
    Oracle,
    Files,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NuSettings {
    /// Region vertices, counterclockwise.
    pub region: Vec<Point2>,
    #[serde(default)]
    pub holes: Vec<Vec<Point2>>,
    /// Reference line `⟨x, (cos a, sin a)⟩ = offset`.
    pub normal_angle: f64,
    #[serde(default)]
    pub offset: f64,
    /// Powers to evaluate; the top-level `i` when empty.
    #[serde(default)]
    pub powers: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub discrepancy: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { discrepancy: 1e-6 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Outputs {
    pub dir: Option<PathBuf>,
}

fn default_probe() -> ProbeKind {
    ProbeKind::Chord
}
fn default_i() -> f64 {
    1.0
}
fn default_mode() -> Mode {
    Mode::Sum
}
fn default_grid() -> usize {
    256
}
fn default_steps() -> usize {
    10_000
}

/// A configuration problem, located by field path or by line and column.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn field(path: &str, msg: impl std::fmt::Display) -> ConfigError {
    ConfigError(format!("{path}: {msg}"))
}

impl ScenarioConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let cfg: Self = serde_json::from_str(text)
            .map_err(|e| ConfigError(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        for (name, b) in &self.bodies {
            b.validate().map_err(|e| field(&format!("bodies.{name}"), e))?;
        }
        let known = |path: &str, name: &str| {
            if self.bodies.contains_key(name) {
                Ok(())
            } else {
                Err(field(path, format!("body '{name}' is not defined")))
            }
        };
        if let Some(o) = &self.outer {
            known("outer", o)?;
        }
        if let Some(c) = &self.compare {
            known("compare", c)?;
        }
        if self.inner.len() > 2 {
            return Err(field("inner", format!("expected one or two names, got {}", self.inner.len())));
        }
        for (j, n) in self.inner.iter().enumerate() {
            known(&format!("inner[{j}]"), n)?;
        }
        if !(self.i > 0.0 && self.i.is_finite()) {
            return Err(field("i", format!("must be positive, got {}", self.i)));
        }
        if self.grid_size < 8 {
            return Err(field("grid_size", format!("must be at least 8, got {}", self.grid_size)));
        }
        if let Some(g) = self.refine_grid {
            if g < 8 {
                return Err(field("refine_grid", format!("must be at least 8, got {g}")));
            }
        }
        if !(self.tolerances.discrepancy >= 0.0) {
            return Err(field("tolerances.discrepancy", "must be non-negative"));
        }
        if self.reconstruct.budget == 0 {
            return Err(field("reconstruct.budget", "must be at least 1"));
        }
        if self.reconstruct.source == DataSourceKind::Files && self.reconstruct.tables.len() != 2 {
            return Err(field("reconstruct.tables", "file source needs exactly two tables"));
        }
        if let Some(r) = &self.rotation {
            if !r.r.is_finite() || r.steps == 0 {
                return Err(field("rotation", "r must be finite and steps positive"));
            }
        }
        if let Some(nu) = &self.nu {
            if nu.region.len() < 3 {
                return Err(field("nu.region", "needs at least three vertices"));
            }
            if let Some(p) = nu.powers.iter().find(|p| !(**p > 0.0)) {
                return Err(field("nu.powers", format!("must be positive, got {p}")));
            }
        }
        Ok(())
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    pub fn body(&self, name: &str) -> &ConvexBody2 {
        &self.bodies[name]
    }

    pub fn outer_body(&self) -> Result<(&str, &ConvexBody2), ConfigError> {
        let n = self.outer.as_deref().ok_or_else(|| field("outer", "required by this command"))?;
        Ok((n, self.body(n)))
    }

    pub fn inner_pair(&self) -> Result<(&ConvexBody2, &ConvexBody2), ConfigError> {
        match self.inner.as_slice() {
            [a, b] => Ok((self.body(a), self.body(b))),
            _ => Err(field("inner", "this command needs two inner bodies")),
        }
    }

    /// SHA-256 of the canonical JSON form, so formatting and key order do not matter.
    pub fn hash(&self) -> String {
        let canon = serde_json::to_string(self).expect("config serializes");
        Sha256::digest(canon.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }
}
