//! Scene files: regions, waypoints, bridge hints and planner options.

use std::path::Path;

use serde::{Deserialize, Serialize};
use smartpath::geometry::{AffineFunctional, BridgeHint, ConvexPolyhedron};
use smartpath::planner::{AnalyticConstants, DegreeMode, PlanOptions, Waypoint};

pub const SCHEMA: &str = "smartpath/1";

#[derive(Debug, thiserror::Error)]
pub enum SceneError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed scene: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

fn field(field: impl Into<String>, message: impl Into<String>) -> SceneError {
    SceneError::Field {
        field: field.into(),
        message: message.into(),
    }
}

/// `normal · x + offset ≥ 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Halfspace {
    pub normal: Vec<f64>,
    pub offset: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionSpec {
    pub halfspaces: Vec<Halfspace>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaypointSpec {
    pub region: usize,
    pub point: Vec<f64>,
    pub time: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BridgeHintSpec {
    pub regions: [usize; 2],
    #[serde(default)]
    pub base_point: Option<Vec<f64>>,
    #[serde(default)]
    pub frame: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub exponents: Option<Vec<u32>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Adaptive,
    Analytic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SceneOptions {
    pub mode: Mode,
    pub nu_cap: usize,
    /// Dense samples for the containment check.
    pub cert_samples: usize,
    /// Rows of `samples.csv`.
    pub csv_samples: usize,
    pub seed: u64,
    /// Error constants for analytic mode.
    pub constants: Option<AnalyticConstants>,
}

impl Default for SceneOptions {
    fn default() -> Self {
        Self {
            mode: Mode::Adaptive,
            nu_cap: 4096,
            cert_samples: 10_000,
            csv_samples: 1001,
            seed: 0,
            constants: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    pub schema: String,
    pub dimension: usize,
    pub regions: Vec<RegionSpec>,
    pub waypoints: Vec<WaypointSpec>,
    #[serde(default)]
    pub bridges: Vec<BridgeHintSpec>,
    #[serde(default)]
    pub options: SceneOptions,
}

/// A checked scene, ready for the planner.
#[derive(Debug, Clone)]
pub struct Scene {
    pub file: SceneFile,
    pub regions: Vec<ConvexPolyhedron>,
    pub waypoints: Vec<Waypoint>,
    pub hints: Vec<BridgeHint>,
}

impl Scene {
    pub fn load(path: &Path) -> Result<Self, SceneError> {
        let text = std::fs::read_to_string(path).map_err(|source| SceneError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, SceneError> {
        let file: SceneFile = serde_json::from_str(text)?;
        file.check()?;
        let regions = file
            .regions
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let cs = r
                    .halfspaces
                    .iter()
                    .enumerate()
                    .map(|(j, h)| {
                        AffineFunctional::new(h.normal.clone(), h.offset).map_err(|e| {
                            field(format!("regions[{i}].halfspaces[{j}]"), e.to_string())
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                ConvexPolyhedron::new(cs).map_err(|e| field(format!("regions[{i}]"), e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        for (i, w) in file.waypoints.iter().enumerate() {
            if !regions[w.region].closure_contains(&w.point, 1e-9) {
                return Err(field(
                    format!("waypoints[{i}].point"),
                    format!("lies outside the closure of region {}", w.region),
                ));
            }
        }
        let waypoints = file
            .waypoints
            .iter()
            .map(|w| Waypoint {
                region: w.region,
                point: w.point.clone(),
                time: w.time,
            })
            .collect();
        let hints = file
            .bridges
            .iter()
            .map(|b| BridgeHint {
                regions: (b.regions[0], b.regions[1]),
                base_point: b.base_point.clone(),
                frame: b.frame.clone(),
                exponents: b.exponents.clone(),
            })
            .collect();
        Ok(Self {
            file,
            regions,
            waypoints,
            hints,
        })
    }

    pub fn plan_options(&self) -> PlanOptions {
        let o = &self.file.options;
        PlanOptions {
            mode: match o.mode {
                Mode::Adaptive => DegreeMode::Adaptive,
                Mode::Analytic => DegreeMode::Analytic,
            },
            nu_cap: o.nu_cap,
            samples: o.cert_samples,
            constants: o.constants.clone(),
            hints: self.hints.clone(),
        }
    }
}

fn finite(values: &[f64]) -> bool {
    values.iter().all(|v| v.is_finite())
}

impl SceneFile {
    /// Schema-level checks that need no geometry.
    fn check(&self) -> Result<(), SceneError> {
        if self.schema != SCHEMA {
            return Err(field(
                "schema",
                format!("expected \"{SCHEMA}\", found \"{}\"", self.schema),
            ));
        }
        let n = self.dimension;
        if n < 2 {
            return Err(field("dimension", "must be at least 2"));
        }
        if self.regions.is_empty() {
            return Err(field("regions", "at least one region is required"));
        }
        for (i, r) in self.regions.iter().enumerate() {
            if r.halfspaces.is_empty() {
                return Err(field(
                    format!("regions[{i}].halfspaces"),
                    "at least one halfspace is required",
                ));
            }
            for (j, h) in r.halfspaces.iter().enumerate() {
                if h.normal.len() != n || !finite(&h.normal) || !h.offset.is_finite() {
                    return Err(field(
                        format!("regions[{i}].halfspaces[{j}]"),
                        format!("needs a finite normal of length {n} and a finite offset"),
                    ));
                }
            }
        }
        if self.waypoints.is_empty() {
            return Err(field("waypoints", "at least one waypoint is required"));
        }
        let mut last = 0.0;
        for (i, w) in self.waypoints.iter().enumerate() {
            if w.region >= self.regions.len() {
                return Err(field(
                    format!("waypoints[{i}].region"),
                    format!("region {} does not exist", w.region),
                ));
            }
            if w.point.len() != n || !finite(&w.point) {
                return Err(field(
                    format!("waypoints[{i}].point"),
                    format!("needs {n} finite coordinates"),
                ));
            }
            if !(w.time > last && w.time < 1.0) {
                return Err(field(
                    format!("waypoints[{i}].time"),
                    format!("{} is not strictly increasing inside (0, 1)", w.time),
                ));
            }
            last = w.time;
        }
        for (i, b) in self.bridges.iter().enumerate() {
            if b.regions.iter().any(|&r| r >= self.regions.len()) || b.regions[0] == b.regions[1] {
                return Err(field(
                    format!("bridges[{i}].regions"),
                    "must name two distinct existing regions",
                ));
            }
            if b.base_point
                .as_ref()
                .is_some_and(|p| p.len() != n || !finite(p))
            {
                return Err(field(
                    format!("bridges[{i}].base_point"),
                    format!("needs {n} finite coordinates"),
                ));
            }
            if b.frame.is_some() != b.exponents.is_some() {
                return Err(field(
                    format!("bridges[{i}]"),
                    "frame and exponents must be given together",
                ));
            }
        }
        if self.options.nu_cap < 1 {
            return Err(field("options.nu_cap", "must be positive"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQUARE: &str = r#"{
        "schema": "smartpath/1",
        "dimension": 2,
        "regions": [{"halfspaces": [
            {"normal": [1, 0], "offset": 0}, {"normal": [-1, 0], "offset": 1},
            {"normal": [0, 1], "offset": 0}, {"normal": [0, -1], "offset": 1}
        ]}],
        "waypoints": [{"region": 0, "point": [0.5, 0.5], "time": 0.5}]
    }"#;

    #[test]
    fn parses_minimal_scene() {
        let s = Scene::parse(SQUARE).unwrap();
        assert_eq!(s.regions.len(), 1);
        assert_eq!(s.file.options, SceneOptions::default());
        assert_eq!(s.plan_options().nu_cap, 4096);
    }

    #[test]
    fn names_the_bad_field() {
        let bad = SQUARE.replace("\"time\": 0.5", "\"time\": 1.5");
        let err = Scene::parse(&bad).unwrap_err().to_string();
        assert!(err.starts_with("waypoints[0].time"), "{err}");
        let bad = SQUARE.replace("smartpath/1", "smartpath/0");
        assert!(Scene::parse(&bad)
            .unwrap_err()
            .to_string()
            .starts_with("schema"));
        let bad = SQUARE.replace("[0.5, 0.5]", "[1.5, 0.5]");
        assert!(Scene::parse(&bad)
            .unwrap_err()
            .to_string()
            .starts_with("waypoints[0].point"));
        let bad = SQUARE.replace("[-1, 0], \"offset\": 1", "[-1, 0], \"offset\": -2");
        assert!(Scene::parse(&bad)
            .unwrap_err()
            .to_string()
            .starts_with("regions[0]"));
    }
}
