//! Containment certificate for a smoothed path.

use serde::{Deserialize, Serialize};

use super::budget::{ErrorBudget, Half};
use super::guide::{EventKind, GuidePath};
use crate::geometry::{norm, ConvexPolyhedron};
use crate::poly::bounds::{sup_abs_bound, vector_sup_norm_bound};
use crate::poly::{BernsteinPolynomial, PolynomialPath, UnivariatePolynomial};

/// Relative tightness of the subdivision bounds.
const BOUND_TOL: f64 = 1e-3;
/// Jet residuals must stay below this, relative to `1 + |γ^{(m)}|`.
const JET_TOL: f64 = 1e-8;
/// A sample counts as a waypoint or base point hit within this distance.
const HIT_TOL: f64 = 1e-9;

/// One verified inequality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    /// `0` clearance on the segments, `1`–`3` window derivatives, `4` jets.
    pub condition: u8,
    pub label: String,
    pub interval: (f64, f64),
    pub value: f64,
    pub limit: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingReport {
    pub samples: usize,
    pub violations: usize,
    /// First few times at which the path left every region.
    pub violating_times: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertReport {
    pub all_pass: bool,
    pub nu: usize,
    pub clearance: Vec<CheckEntry>,
    pub derivatives: Vec<CheckEntry>,
    pub jets: Vec<CheckEntry>,
    pub sampling: SamplingReport,
}

impl CertReport {
    pub fn entries(&self) -> impl Iterator<Item = &CheckEntry> {
        self.clearance
            .iter()
            .chain(&self.derivatives)
            .chain(&self.jets)
    }

    pub fn failures(&self) -> Vec<&CheckEntry> {
        self.entries().filter(|e| !e.pass).collect()
    }

    /// Largest jet residual.
    pub fn max_jet_residual(&self) -> f64 {
        self.jets.iter().map(|e| e.value).fold(0.0, f64::max)
    }
}

/// `α − piece` on `[lo, hi]`, componentwise in Bernstein form.
fn difference_on(
    alpha: &PolynomialPath<BernsteinPolynomial>,
    piece: &[UnivariatePolynomial],
    lo: f64,
    hi: f64,
) -> Vec<BernsteinPolynomial> {
    alpha
        .components()
        .iter()
        .zip(piece)
        .map(|(a, p)| {
            let local = a.restrict(lo, hi);
            local.sub(&BernsteinPolynomial::from_monomial(
                p,
                lo,
                hi,
                local.degree(),
            ))
        })
        .collect()
}

/// Checks the clearance condition on the segments, the derivative margins on
/// the windows, the jets at the window centers, and dense samples.
pub fn certify_path(
    alpha: &PolynomialPath<BernsteinPolynomial>,
    guide: &GuidePath,
    regions: &[ConvexPolyhedron],
    budget: &ErrorBudget,
    samples: usize,
) -> CertReport {
    let mut clearance = Vec::new();
    for piece in guide.pieces.iter().filter(|p| !p.is_window()) {
        let (lo, hi) = piece.interval;
        if hi - lo < 1e-12 {
            continue;
        }
        let value =
            vector_sup_norm_bound(&difference_on(alpha, &piece.components, lo, hi), BOUND_TOL);
        clearance.push(CheckEntry {
            condition: 0,
            label: format!(
                "{:?} on [{lo:.6}, {hi:.6}] in region {}",
                piece.kind, piece.regions.0
            ),
            interval: (lo, hi),
            value,
            limit: budget.eps,
            pass: value < budget.eps,
        });
    }

    let mut derivatives = Vec::new();
    for term in budget.terms() {
        let window = &guide.windows[term.window];
        let piece = &guide.pieces[window.piece];
        let (lo, hi) = term.interval;
        let h = &regions[term.region].constraints()[term.constraint];
        let diff = difference_on(alpha, &piece.components, lo, hi);
        let mut combined = diff[0].scale(h.gradient()[0]);
        for (d, &g) in diff.iter().zip(h.gradient()).skip(1) {
            combined = combined.add(&d.scale(g));
        }
        let value = sup_abs_bound(&combined.derivative(term.order), BOUND_TOL);
        let condition = match (window.event, term.half) {
            (EventKind::Waypoint(_), _) => 1,
            (EventKind::Bridge(_), Half::Left) => 2,
            (EventKind::Bridge(_), Half::Right) => 3,
        };
        derivatives.push(CheckEntry {
            condition,
            label: format!(
                "order {} of constraint {} of region {} on [{lo:.6}, {hi:.6}]",
                term.order, term.constraint, term.region
            ),
            interval: (lo, hi),
            value,
            limit: term.mu,
            pass: value < term.mu,
        });
    }

    let mut jets = Vec::new();
    for window in &guide.windows {
        let expected = guide.jet(window);
        for (m, target) in expected.iter().enumerate() {
            let got = alpha
                .components()
                .iter()
                .map(|a| a.derivative_at(m, window.center));
            let value = got
                .zip(target)
                .map(|(g, t)| (g - t).abs())
                .fold(0.0, f64::max);
            let scale = target.iter().fold(1.0_f64, |s, t| s.max(1.0 + t.abs()));
            jets.push(CheckEntry {
                condition: 4,
                label: format!("derivative {m} at t = {}", window.center),
                interval: (window.center, window.center),
                value,
                limit: JET_TOL * scale,
                pass: value <= JET_TOL * scale,
            });
        }
    }

    let sampling = sample_containment(alpha, guide, regions, samples);
    let all_pass = clearance
        .iter()
        .chain(&derivatives)
        .chain(&jets)
        .all(|e| e.pass)
        && sampling.violations == 0;
    CertReport {
        all_pass,
        nu: alpha.degree(),
        clearance,
        derivatives,
        jets,
        sampling,
    }
}

/// Brute-force check that `α(t)` lies in some region interior, or at a
/// waypoint or base point at its own time.
pub fn sample_containment(
    alpha: &PolynomialPath<BernsteinPolynomial>,
    guide: &GuidePath,
    regions: &[ConvexPolyhedron],
    samples: usize,
) -> SamplingReport {
    let samples = samples.max(2);
    let mut violating_times = Vec::new();
    let mut violations = 0;
    for k in 0..samples {
        let t = k as f64 / (samples - 1) as f64;
        let x = alpha.eval(t);
        let inside = regions.iter().any(|r| r.min_value(&x) > 0.0);
        let hit = || {
            guide.windows.iter().any(|w| {
                (t - w.center).abs() <= 1e-12
                    && norm(
                        &x.iter()
                            .zip(&w.base_point)
                            .map(|(a, b)| a - b)
                            .collect::<Vec<_>>(),
                    ) <= HIT_TOL
            })
        };
        if !inside && !hit() {
            violations += 1;
            if violating_times.len() < 20 {
                violating_times.push(t);
            }
        }
    }
    SamplingReport {
        samples,
        violations,
        violating_times,
    }
}
