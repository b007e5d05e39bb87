//! Convex polyhedra as intersections of halfspaces, clearances, and the
//! region graph whose edges are certified bridges.

mod graph;
mod lp;

pub use graph::{
    build_region_graph, route_through_regions, BridgeHint, GraphEdge, RegionGraph, RouteError,
};
pub use lp::{contact_point, Contact};

use serde::{Deserialize, Serialize};

/// Absolute tolerance for closure membership.
pub const CLOSURE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("functional has a zero or non-finite gradient")]
    DegenerateFunctional,
    #[error("polyhedron has no constraints")]
    NoConstraints,
    #[error("polyhedron has empty interior")]
    EmptyInterior,
    #[error("point lies outside the polyhedron (constraint {constraint} = {value})")]
    Outside { constraint: usize, value: f64 },
    #[error("linear program failed: {0}")]
    Lp(String),
}

/// Degree-one function `x ↦ b + a·x`, stored with `‖a‖ = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineFunctional {
    gradient: Vec<f64>,
    offset: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

impl AffineFunctional {
    /// Normalizes `(a, b)` so that `‖a‖ = 1`.
    pub fn new(gradient: Vec<f64>, offset: f64) -> Result<Self, GeometryError> {
        let n = norm(&gradient);
        if !(n > 0.0 && n.is_finite() && offset.is_finite()) {
            return Err(GeometryError::DegenerateFunctional);
        }
        Ok(Self {
            gradient: gradient.iter().map(|g| g / n).collect(),
            offset: offset / n,
        })
    }

    pub fn dim(&self) -> usize {
        self.gradient.len()
    }

    pub fn gradient(&self) -> &[f64] {
        &self.gradient
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.offset + dot(&self.gradient, x)
    }

    /// Linear part `a·v`.
    pub fn linear(&self, v: &[f64]) -> f64 {
        dot(&self.gradient, v)
    }

    fn same_as(&self, other: &Self) -> bool {
        (self.offset - other.offset).abs() <= 1e-12
            && self
                .gradient
                .iter()
                .zip(&other.gradient)
                .all(|(a, b)| (a - b).abs() <= 1e-12)
    }
}

/// `{x : h_j(x) ≥ 0 for all j}` with a nonempty interior.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexPolyhedron {
    constraints: Vec<AffineFunctional>,
    dim: usize,
    witness: Vec<f64>,
    inradius: f64,
}

impl ConvexPolyhedron {
    /// Validates the interior with a Chebyshev-center LP and drops duplicates.
    pub fn new(constraints: Vec<AffineFunctional>) -> Result<Self, GeometryError> {
        let dim = constraints
            .first()
            .ok_or(GeometryError::NoConstraints)?
            .dim();
        let mut unique: Vec<AffineFunctional> = Vec::with_capacity(constraints.len());
        for h in constraints {
            if h.dim() != dim {
                return Err(GeometryError::DimensionMismatch {
                    expected: dim,
                    found: h.dim(),
                });
            }
            if !unique.iter().any(|u| u.same_as(&h)) {
                unique.push(h);
            }
        }
        let (witness, inradius) = lp::chebyshev_center(&unique, dim)?;
        if inradius <= CLOSURE_TOL {
            return Err(GeometryError::EmptyInterior);
        }
        Ok(Self {
            constraints: unique,
            dim,
            witness,
            inradius,
        })
    }

    /// The box `Π [lo_k, hi_k]`.
    pub fn from_box(lo: &[f64], hi: &[f64]) -> Result<Self, GeometryError> {
        let n = lo.len();
        if hi.len() != n {
            return Err(GeometryError::DimensionMismatch {
                expected: n,
                found: hi.len(),
            });
        }
        let mut cs = Vec::with_capacity(2 * n);
        for k in 0..n {
            let mut e = vec![0.0; n];
            e[k] = 1.0;
            cs.push(AffineFunctional::new(e.clone(), -lo[k])?);
            e[k] = -1.0;
            cs.push(AffineFunctional::new(e, hi[k])?);
        }
        Self::new(cs)
    }

    pub fn constraints(&self) -> &[AffineFunctional] {
        &self.constraints
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Chebyshev center, an interior point.
    pub fn witness(&self) -> &[f64] {
        &self.witness
    }

    /// Radius of the largest inscribed ball (capped for unbounded regions).
    pub fn inradius(&self) -> f64 {
        self.inradius
    }

    fn check_dim(&self, x: &[f64]) -> Result<(), GeometryError> {
        if x.len() != self.dim {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Smallest constraint value, possibly negative.
    pub fn min_value(&self, x: &[f64]) -> f64 {
        self.constraints
            .iter()
            .map(|h| h.eval(x))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn closure_contains(&self, x: &[f64], tol: f64) -> bool {
        x.len() == self.dim && self.min_value(x) >= -tol
    }

    /// Every normalized `h_j(x) > margin`.
    pub fn interior_contains(&self, x: &[f64], margin: f64) -> Result<bool, GeometryError> {
        self.check_dim(x)?;
        Ok(self.constraints.iter().all(|h| h.eval(x) > margin))
    }

    /// Distance from `x ∈ K` to the complement of the interior.
    pub fn clearance(&self, x: &[f64]) -> Result<f64, GeometryError> {
        self.check_dim(x)?;
        let (idx, value) = self
            .constraints
            .iter()
            .enumerate()
            .map(|(j, h)| (j, h.eval(x)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("polyhedron has constraints");
        if value < -CLOSURE_TOL {
            return Err(GeometryError::Outside {
                constraint: idx,
                value,
            });
        }
        Ok(value.max(0.0))
    }

    /// Distance from the segment `[x, y]` to the complement of the interior.
    ///
    /// Each `h_j` is affine along the segment, so its minimum sits at an endpoint.
    pub fn segment_clearance(&self, x: &[f64], y: &[f64]) -> Result<f64, GeometryError> {
        Ok(self.clearance(x)?.min(self.clearance(y)?))
    }

    /// Constraints of both polyhedra, without the interior check.
    pub fn intersection_constraints(&self, other: &Self) -> Vec<AffineFunctional> {
        let mut cs = self.constraints.clone();
        for h in &other.constraints {
            if !cs.iter().any(|u| u.same_as(h)) {
                cs.push(h.clone());
            }
        }
        cs
    }

    /// The intersection, if it has an interior.
    pub fn intersection(&self, other: &Self) -> Option<Self> {
        Self::new(self.intersection_constraints(other)).ok()
    }

    /// Vertices of a 2-D polygon in counter-clockwise order, from pairwise
    /// constraint intersections. Empty for other dimensions or unbounded sets.
    pub fn polygon_vertices(&self) -> Vec<[f64; 2]> {
        if self.dim != 2 {
            return Vec::new();
        }
        let cs = &self.constraints;
        let mut pts: Vec<[f64; 2]> = Vec::new();
        for i in 0..cs.len() {
            for j in i + 1..cs.len() {
                let (a, b) = (&cs[i], &cs[j]);
                let det = a.gradient[0] * b.gradient[1] - a.gradient[1] * b.gradient[0];
                if det.abs() < 1e-12 {
                    continue;
                }
                let x = (-a.offset * b.gradient[1] + b.offset * a.gradient[1]) / det;
                let y = (-b.offset * a.gradient[0] + a.offset * b.gradient[0]) / det;
                let p = [x, y];
                if self.min_value(&p) >= -1e-9
                    && !pts
                        .iter()
                        .any(|q| (q[0] - x).abs() + (q[1] - y).abs() < 1e-9)
                {
                    pts.push(p);
                }
            }
        }
        let cx = pts.iter().map(|p| p[0]).sum::<f64>() / pts.len().max(1) as f64;
        let cy = pts.iter().map(|p| p[1]).sum::<f64>() / pts.len().max(1) as f64;
        pts.sort_by(|p, q| {
            (p[1] - cy)
                .atan2(p[0] - cx)
                .total_cmp(&(q[1] - cy).atan2(q[0] - cx))
        });
        pts
    }
}
