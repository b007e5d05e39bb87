//! End-to-end planning: schedule, guide path, error budget, smoothing and
//! certification.

mod budget;
mod certify;
mod guide;
mod smooth;

pub use budget::{
    analytic_degree, compute_error_budget, hermite_floor, window_terms, AnalyticConstants,
    ErrorBudget, Half, WindowTerm,
};
pub use certify::{certify_path, sample_containment, CertReport, CheckEntry, SamplingReport};
pub use guide::{
    build_guide_path, make_schedule, ControlSchedule, EventKind, GuidePath, GuidePiece,
    GuideWindow, PieceKind, ScheduleEvent, Waypoint, WINDOW_FRACTION,
};
pub use smooth::smooth_path;

use serde::{Deserialize, Serialize};

use crate::geometry::{build_region_graph, BridgeHint, ConvexPolyhedron, RouteError};
use crate::poly::{BernsteinPolynomial, PolynomialPath};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PlanError {
    #[error("invalid scene: {0}")]
    InvalidScene(String),
    #[error("routing failed: {0}")]
    Routing(#[from] RouteError),
    #[error("no certified bridge from region {from} to region {to}")]
    Bridge { from: usize, to: usize },
    #[error("guide path: {0}")]
    Guide(String),
    #[error("error budget: {0}")]
    Budget(String),
    #[error("degree: {0}")]
    Degree(String),
    #[error("certification failed at degree {nu}")]
    Certification { nu: usize, result: Box<PlanResult> },
}

impl PlanError {
    /// Pipeline stage that failed.
    pub fn stage(&self) -> &'static str {
        match self {
            Self::InvalidScene(_) => "scene",
            Self::Routing(_) => "routing",
            Self::Bridge { .. } => "bridges",
            Self::Guide(_) => "guide",
            Self::Budget(_) => "budget",
            Self::Degree(_) => "degree",
            Self::Certification { .. } => "certification",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum DegreeMode {
    /// Doubles `ν` until the certificate passes.
    #[default]
    Adaptive,
    /// Uses the closed-form degree from [`AnalyticConstants`].
    Analytic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanOptions {
    pub mode: DegreeMode,
    pub nu_cap: usize,
    /// Dense samples for the brute-force containment check.
    pub samples: usize,
    pub constants: Option<AnalyticConstants>,
    pub hints: Vec<BridgeHint>,
}

impl Default for PlanOptions {
    fn default() -> Self {
        Self {
            mode: DegreeMode::Adaptive,
            nu_cap: 4096,
            samples: 10_000,
            constants: None,
            hints: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanResult {
    pub path: PolynomialPath<BernsteinPolynomial>,
    pub nu: usize,
    pub cert: CertReport,
    pub guide: GuidePath,
    pub budget: ErrorBudget,
    pub schedule: ControlSchedule,
    /// Degrees tried, in order.
    pub tried: Vec<usize>,
}

/// Smallest degree the correction can use: one more than the number of jet
/// conditions, and at least 8.
pub fn estimate_degree(guide: &GuidePath) -> usize {
    let conditions: usize = guide.windows.iter().map(|w| w.jet_order + 1).sum();
    conditions.max(8)
}

fn validate_regions(regions: &[ConvexPolyhedron]) -> Result<usize, PlanError> {
    let dim = regions
        .first()
        .ok_or_else(|| PlanError::InvalidScene("no regions".into()))?
        .dim();
    if dim < 2 {
        return Err(PlanError::InvalidScene(
            "paths need dimension at least 2".into(),
        ));
    }
    if let Some(i) = regions.iter().position(|r| r.dim() != dim) {
        return Err(PlanError::InvalidScene(format!(
            "region {i} has dimension {}, expected {dim}",
            regions[i].dim()
        )));
    }
    if let Some(i) = regions.iter().position(|r| !(r.inradius() > 0.0)) {
        return Err(PlanError::InvalidScene(format!(
            "region {i} has empty interior"
        )));
    }
    Ok(dim)
}

/// Plans a polynomial path through `waypoints` and certifies it stays inside
/// the union of `regions`.
pub fn plan(
    regions: &[ConvexPolyhedron],
    waypoints: &[Waypoint],
    options: &PlanOptions,
) -> Result<PlanResult, PlanError> {
    validate_regions(regions)?;
    let graph = build_region_graph(regions, &options.hints)?;
    let (schedule, bridges) = make_schedule(&graph, waypoints)?;
    let guide = build_guide_path(regions, &schedule, &bridges)?;
    let budget = compute_error_budget(&guide, regions, &schedule)?;
    let floor = estimate_degree(&guide);
    let attempt =
        |nu: usize| -> Result<(PolynomialPath<BernsteinPolynomial>, CertReport), PlanError> {
            let path = smooth_path(&guide, nu)?;
            let cert = certify_path(&path, &guide, regions, &budget, options.samples);
            Ok((path, cert))
        };
    let finish = |path, nu, cert, tried| PlanResult {
        path,
        nu,
        cert,
        guide: guide.clone(),
        budget: budget.clone(),
        schedule: schedule.clone(),
        tried,
    };
    match options.mode {
        DegreeMode::Analytic => {
            let consts = options.constants.as_ref().ok_or_else(|| {
                PlanError::Degree("analytic mode needs the Bernstein error constants".into())
            })?;
            let nu = analytic_degree(&budget, guide.dim, consts)?.max(floor);
            if nu > options.nu_cap {
                return Err(PlanError::Degree(format!(
                    "analytic degree {nu} exceeds the cap {}",
                    options.nu_cap
                )));
            }
            let (path, cert) = attempt(nu)?;
            let pass = cert.all_pass;
            let result = finish(path, nu, cert, vec![nu]);
            if pass {
                Ok(result)
            } else {
                Err(PlanError::Certification {
                    nu,
                    result: Box::new(result),
                })
            }
        }
        DegreeMode::Adaptive => {
            let mut nu = floor.next_power_of_two();
            let mut tried = Vec::new();
            let mut last = None;
            while nu <= options.nu_cap.max(floor) {
                tried.push(nu);
                let (path, cert) = attempt(nu)?;
                if cert.all_pass {
                    return Ok(finish(path, nu, cert, tried));
                }
                last = Some((path, nu, cert));
                nu *= 2;
            }
            let (path, nu, cert) = last.ok_or_else(|| {
                PlanError::Degree(format!(
                    "degree floor {floor} exceeds the cap {}",
                    options.nu_cap
                ))
            })?;
            Err(PlanError::Certification {
                nu,
                result: Box::new(finish(path, nu, cert, tried)),
            })
        }
    }
}

#[cfg(test)]
mod tests;
