//! Clearance and derivative margins of the guide path, and the degree rules.

use serde::{Deserialize, Serialize};

use super::guide::{ControlSchedule, EventKind, GuidePath};
use super::PlanError;
use crate::geometry::{norm, ConvexPolyhedron};
use crate::poly::bounds::min_lower_bound;
use crate::poly::{BernsteinPolynomial, UnivariatePolynomial};

/// Constraint values at the base point up to this size count as zero.
const ACTIVE_TOL: f64 = 1e-10;
/// Active constraints use the derivative bound on this inner fraction of
/// each half-window and the clearance bound on the rest.
pub const INNER_FRACTION: f64 = 0.6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Half {
    Left,
    Right,
}

/// One constraint on part of a half-window, with its derivative margin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowTerm {
    /// Index into [`GuidePath::windows`].
    pub window: usize,
    pub half: Half,
    pub interval: (f64, f64),
    pub region: usize,
    pub constraint: usize,
    /// Order `m` of the first derivative of `h ∘ piece` not vanishing at the center.
    pub order: usize,
    /// Sign of that derivative.
    pub sign: f64,
    /// Lower bound of `sign · (h ∘ piece)^{(m)}` on the half-window.
    pub mu: f64,
}

/// Margins on both halves of a window for every constraint of the regions.
///
/// Fails when some constraint leaves its region or has no positive margin.
pub fn window_terms(
    components: &[UnivariatePolynomial],
    center: f64,
    half_width: f64,
    window: usize,
    left: (usize, &ConvexPolyhedron),
    right: (usize, &ConvexPolyhedron),
) -> Result<Vec<WindowTerm>, String> {
    let mut out = Vec::new();
    let halves = [
        (Half::Left, (center - half_width, center), left),
        (Half::Right, (center, center + half_width), right),
    ];
    for (half, interval, (region, k)) in halves {
        for (j, h) in k.constraints().iter().enumerate() {
            let mut hp = UnivariatePolynomial::constant(h.offset());
            for (c, &g) in components.iter().zip(h.gradient()) {
                hp = &hp + &c.scale(g);
            }
            let mut taylor = hp.taylor_shift(center);
            if taylor[0] < -ACTIVE_TOL {
                return Err(format!(
                    "constraint {j} of region {region} is negative at t = {center}"
                ));
            }
            let order = if taylor[0] > ACTIVE_TOL {
                0
            } else {
                taylor[0] = 0.0;
                let scale = taylor.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
                taylor
                    .iter()
                    .position(|c| c.abs() > 1e-9 * scale)
                    .ok_or_else(|| format!("constraint {j} of region {region} vanishes along the piece at t = {center}"))?
            };
            let sign = taylor[order].signum();
            let side = if half == Half::Left && order % 2 == 1 {
                -sign
            } else {
                sign
            };
            if side < 0.0 {
                return Err(format!(
                    "piece at t = {center} leaves region {region} through constraint {j}"
                ));
            }
            let inner = match half {
                Half::Left => (center - INNER_FRACTION * half_width, center),
                Half::Right => (center, center + INNER_FRACTION * half_width),
            };
            let pieces = if order == 0 {
                vec![(interval, 0)]
            } else {
                let outer = match half {
                    Half::Left => (interval.0, inner.0),
                    Half::Right => (inner.1, interval.1),
                };
                vec![(inner, order), (outer, 0)]
            };
            for (interval, order) in pieces {
                let s = if order == 0 { 1.0 } else { sign };
                let dm = hp.derivative(order).scale(s);
                let bern = BernsteinPolynomial::from_monomial(&dm, interval.0, interval.1, 0);
                let mu = min_lower_bound(&bern, 1e-6 * bern.max_abs_ctrl());
                if !(mu > 0.0) {
                    return Err(format!(
                        "derivative of order {order} of constraint {j} of region {region} is not bounded away from 0 near t = {center}"
                    ));
                }
                out.push(WindowTerm {
                    window,
                    half,
                    interval,
                    region,
                    constraint: j,
                    order,
                    sign: s,
                    mu,
                });
            }
        }
    }
    Ok(out)
}

/// Margins under which a perturbation of the guide path keeps containment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorBudget {
    /// Smallest clearance of a window end in its region.
    pub eps: f64,
    /// `min(ε, μ)` over all window terms.
    pub eps_prime: f64,
    /// Terms on the waypoint windows.
    pub mu: Vec<WindowTerm>,
    /// Terms on the left halves of the bridge windows.
    pub mu_prime: Vec<WindowTerm>,
    /// Terms on the right halves of the bridge windows.
    pub mu_double_prime: Vec<WindowTerm>,
    /// `e_i` per waypoint.
    pub waypoint_orders: Vec<usize>,
    /// `d_i` per bridge.
    pub bridge_orders: Vec<usize>,
    /// Largest order among the window terms.
    pub l: usize,
    /// `‖β_i^{(e_i)}‖` over each waypoint window.
    pub waypoint_derivative_norms: Vec<f64>,
    /// `‖λ_i^{(d_i)}‖` over each bridge window.
    pub bridge_derivative_norms: Vec<f64>,
}

impl ErrorBudget {
    pub fn terms(&self) -> impl Iterator<Item = &WindowTerm> {
        self.mu
            .iter()
            .chain(&self.mu_prime)
            .chain(&self.mu_double_prime)
    }
}

pub fn compute_error_budget(
    guide: &GuidePath,
    regions: &[ConvexPolyhedron],
    schedule: &ControlSchedule,
) -> Result<ErrorBudget, PlanError> {
    let mut eps = f64::INFINITY;
    let mut budget = ErrorBudget {
        eps: 0.0,
        eps_prime: 0.0,
        mu: Vec::new(),
        mu_prime: Vec::new(),
        mu_double_prime: Vec::new(),
        waypoint_orders: vec![0; schedule.waypoint_times.len()],
        bridge_orders: vec![0; schedule.bridge_times.len()],
        l: 0,
        waypoint_derivative_norms: vec![0.0; schedule.waypoint_times.len()],
        bridge_derivative_norms: vec![0.0; schedule.bridge_times.len()],
    };
    for (w, window) in guide.windows.iter().enumerate() {
        let piece = &guide.pieces[window.piece];
        let (lo, hi) = window.interval();
        let (l, r) = window.regions;
        for (end, t, region) in [("left", lo, l), ("right", hi, r)] {
            let c = regions[region].min_value(&piece.eval(t));
            if !(c > 0.0) {
                return Err(PlanError::Budget(format!(
                    "clearance vanishes at the {end} end of window {w} (t = {t})"
                )));
            }
            eps = eps.min(c);
        }
        let terms = window_terms(
            &piece.components,
            window.center,
            window.half_width,
            w,
            (l, &regions[l]),
            (r, &regions[r]),
        )
        .map_err(PlanError::Budget)?;
        let sup_norm = (0..=200)
            .map(|s| norm(&piece.derivative(window.jet_order, lo + (hi - lo) * s as f64 / 200.0)))
            .fold(0.0, f64::max);
        match window.event {
            EventKind::Waypoint(i) => {
                budget.mu.extend(terms);
                budget.waypoint_orders[i] = window.jet_order;
                budget.waypoint_derivative_norms[i] = sup_norm;
            }
            EventKind::Bridge(j) => {
                for t in terms {
                    match t.half {
                        Half::Left => budget.mu_prime.push(t),
                        Half::Right => budget.mu_double_prime.push(t),
                    }
                }
                budget.bridge_orders[j] = window.jet_order;
                budget.bridge_derivative_norms[j] = sup_norm;
            }
        }
    }
    budget.eps = eps;
    budget.eps_prime = budget.terms().map(|t| t.mu).fold(eps, f64::min);
    budget.l = budget.terms().map(|t| t.order).max().unwrap_or(0);
    Ok(budget)
}

/// Degree `n + 1 + (r − 1)(n + 2)²` of the interpolation correction.
pub fn hermite_floor(n: usize, r: usize) -> usize {
    n + 1 + r.saturating_sub(1) * (n + 2).pow(2)
}

/// Bernstein error constants: `‖α − γ‖_K ≤ C/ν²` plus the `C_i` (waypoint)
/// and `L_i` (bridge) remainders of the window derivative bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticConstants {
    pub c: f64,
    pub c_i: Vec<f64>,
    pub l_i: Vec<f64>,
}

/// The closed-form degree, never below the Hermite floor.
pub fn analytic_degree(
    budget: &ErrorBudget,
    n: usize,
    consts: &AnalyticConstants,
) -> Result<usize, PlanError> {
    let r = budget.waypoint_orders.len();
    if consts.c_i.len() != r || consts.l_i.len() != budget.bridge_orders.len() {
        return Err(PlanError::Degree(format!(
            "expected {r} waypoint and {} bridge constants, got {} and {}",
            budget.bridge_orders.len(),
            consts.c_i.len(),
            consts.l_i.len()
        )));
    }
    let ep = budget.eps_prime;
    if !(ep > 0.0) {
        return Err(PlanError::Degree("ε′ must be positive".into()));
    }
    let root = |c: f64| c.sqrt() / ep.sqrt();
    let falling = |k: usize| (k * k.saturating_sub(1)) as f64;
    let mut worst = root(consts.c);
    for (i, &e) in budget.waypoint_orders.iter().enumerate() {
        worst = worst
            .max(root(2.0 * consts.c_i[i]))
            .max(falling(e) * budget.waypoint_derivative_norms[i] / ep);
    }
    for (j, &d) in budget.bridge_orders.iter().enumerate() {
        worst = worst
            .max(root(2.0 * consts.l_i[j]))
            .max(falling(d) * budget.bridge_derivative_norms[j] / ep);
    }
    if !worst.is_finite() {
        return Err(PlanError::Degree("degree bound is not finite".into()));
    }
    Ok((worst.ceil() as usize + 1).max(hermite_floor(n, r)))
}
