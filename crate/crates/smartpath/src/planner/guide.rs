//! Control schedule and the piecewise guide path.

use serde::{Deserialize, Serialize};

use super::budget::window_terms;
use super::PlanError;
use crate::bridges::{complement, cuspidal_arc, sub, unit, BridgeSpec, MonomialArc};
use crate::geometry::{norm, route_through_regions, ConvexPolyhedron, RegionGraph};
use crate::poly::UnivariatePolynomial;

/// Window half-width as a fraction of the distance to the nearest neighboring event.
pub const WINDOW_FRACTION: f64 = 0.3;
/// Size of the cubic direction of a waypoint arc relative to its quadratic one.
const CUBIC_RATIO: f64 = 0.5;
/// Candidate reaches fall by `2^{-1/4}` per step.
const REACH_STEPS: usize = 48;
/// A point is on the boundary when its clearance is at most this.
const BOUNDARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Waypoint {
    pub region: usize,
    pub point: Vec<f64>,
    pub time: f64,
}

/// Times, points and window half-widths of the waypoints and bridges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ControlSchedule {
    pub waypoint_times: Vec<f64>,
    pub waypoints: Vec<Vec<f64>>,
    pub waypoint_regions: Vec<usize>,
    pub bridge_times: Vec<f64>,
    pub base_points: Vec<Vec<f64>>,
    /// `(left, right)` regions of each bridge.
    pub bridge_regions: Vec<(usize, usize)>,
    /// Regions visited, in order.
    pub region_sequence: Vec<usize>,
    /// `δ_i` around each `t_i`.
    pub waypoint_half_widths: Vec<f64>,
    /// `ρ_i` around each `s_i`.
    pub bridge_half_widths: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EventKind {
    Waypoint(usize),
    Bridge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScheduleEvent {
    pub kind: EventKind,
    pub time: f64,
    pub half_width: f64,
}

impl ControlSchedule {
    /// Waypoints and bridges in time order.
    pub fn events(&self) -> Vec<ScheduleEvent> {
        let mut out: Vec<ScheduleEvent> = self
            .waypoint_times
            .iter()
            .zip(&self.waypoint_half_widths)
            .enumerate()
            .map(|(i, (&time, &half_width))| ScheduleEvent {
                kind: EventKind::Waypoint(i),
                time,
                half_width,
            })
            .chain(
                self.bridge_times
                    .iter()
                    .zip(&self.bridge_half_widths)
                    .enumerate()
                    .map(|(j, (&time, &half_width))| ScheduleEvent {
                        kind: EventKind::Bridge(j),
                        time,
                        half_width,
                    }),
            )
            .collect();
        out.sort_by(|a, b| a.time.total_cmp(&b.time));
        out
    }

    /// Checks that the windows are disjoint, ordered and inside `(0, 1)`.
    pub fn check_interleaving(&self) -> Result<(), PlanError> {
        let mut cursor = 0.0;
        for ev in self.events() {
            let (lo, hi) = (ev.time - ev.half_width, ev.time + ev.half_width);
            if !(ev.half_width > 0.0 && lo > cursor) {
                return Err(PlanError::Guide(format!(
                    "window around t = {} overlaps its predecessor",
                    ev.time
                )));
            }
            cursor = hi;
        }
        if cursor >= 1.0 {
            return Err(PlanError::Guide("last window reaches t = 1".into()));
        }
        Ok(())
    }
}

/// Routes consecutive waypoints through the region graph and spaces the
/// bridges of each leg evenly between its two waypoint times.
pub fn make_schedule(
    graph: &RegionGraph,
    waypoints: &[Waypoint],
) -> Result<(ControlSchedule, Vec<BridgeSpec>), PlanError> {
    validate_waypoints(&graph.regions, waypoints)?;
    let mut sequence = vec![waypoints[0].region];
    let mut bridges = Vec::new();
    let mut bridge_times = Vec::new();
    for pair in waypoints.windows(2) {
        let walk = route_through_regions(graph, &[pair[0].region, pair[1].region])?;
        let legs = walk.len() - 1;
        for (s, step) in walk.windows(2).enumerate() {
            let spec = graph.bridge(step[0], step[1]).ok_or(PlanError::Bridge {
                from: step[0],
                to: step[1],
            })?;
            bridges.push(spec);
            bridge_times.push(
                pair[0].time + (s + 1) as f64 / (legs + 1) as f64 * (pair[1].time - pair[0].time),
            );
        }
        sequence.extend_from_slice(&walk[1..]);
    }
    let waypoint_times: Vec<f64> = waypoints.iter().map(|w| w.time).collect();
    let mut all: Vec<f64> = waypoint_times
        .iter()
        .chain(&bridge_times)
        .copied()
        .collect();
    all.sort_by(f64::total_cmp);
    let half = |t: f64| {
        let pos = all
            .iter()
            .position(|&x| x == t)
            .expect("time is in the list");
        let prev = if pos == 0 { 0.0 } else { all[pos - 1] };
        let next = all.get(pos + 1).copied().unwrap_or(1.0);
        WINDOW_FRACTION * (t - prev).min(next - t)
    };
    let schedule = ControlSchedule {
        waypoint_half_widths: waypoint_times.iter().map(|&t| half(t)).collect(),
        bridge_half_widths: bridge_times.iter().map(|&t| half(t)).collect(),
        waypoints: waypoints.iter().map(|w| w.point.clone()).collect(),
        waypoint_regions: waypoints.iter().map(|w| w.region).collect(),
        base_points: bridges.iter().map(|b| b.base_point.clone()).collect(),
        bridge_regions: bridges
            .iter()
            .map(|b| (b.left_region, b.right_region))
            .collect(),
        region_sequence: sequence,
        waypoint_times,
        bridge_times,
    };
    schedule.check_interleaving()?;
    Ok((schedule, bridges))
}

fn validate_waypoints(
    regions: &[ConvexPolyhedron],
    waypoints: &[Waypoint],
) -> Result<(), PlanError> {
    if waypoints.is_empty() {
        return Err(PlanError::InvalidScene("no waypoints".into()));
    }
    let mut last = 0.0;
    for (i, w) in waypoints.iter().enumerate() {
        if !(w.time > last && w.time < 1.0) {
            return Err(PlanError::InvalidScene(format!(
                "waypoint {i}: times must increase strictly inside (0, 1)"
            )));
        }
        last = w.time;
        let k = regions.get(w.region).ok_or_else(|| {
            PlanError::InvalidScene(format!("waypoint {i}: region {} does not exist", w.region))
        })?;
        if w.point.len() != k.dim() || w.point.iter().any(|x| !x.is_finite()) {
            return Err(PlanError::InvalidScene(format!(
                "waypoint {i}: point has the wrong dimension"
            )));
        }
        if !k.closure_contains(&w.point, BOUNDARY_TOL) {
            return Err(PlanError::InvalidScene(format!(
                "waypoint {i}: point lies outside region {}",
                w.region
            )));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PieceKind {
    LeadIn,
    Cusp,
    Segment,
    Bridge,
    LeadOut,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GuidePiece {
    pub kind: PieceKind,
    pub interval: (f64, f64),
    /// Components as polynomials in the global time `t`.
    pub components: Vec<UnivariatePolynomial>,
    /// Regions before and after the window center; equal for segments.
    pub regions: (usize, usize),
}

impl GuidePiece {
    pub fn eval(&self, t: f64) -> Vec<f64> {
        self.components.iter().map(|p| p.eval(t)).collect()
    }

    /// `m`-th derivative vector at `t`.
    pub fn derivative(&self, m: usize, t: f64) -> Vec<f64> {
        self.components
            .iter()
            .map(|p| p.derivative(m).eval(t))
            .collect()
    }

    pub fn is_window(&self) -> bool {
        matches!(self.kind, PieceKind::Cusp | PieceKind::Bridge)
    }
}

/// A local piece centered at a waypoint or bridge time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GuideWindow {
    pub event: EventKind,
    pub center: f64,
    pub half_width: f64,
    /// Index into [`GuidePath::pieces`].
    pub piece: usize,
    pub base_point: Vec<f64>,
    pub regions: (usize, usize),
    /// Order `e_i` or `d_i` of the jet matched at the center.
    pub jet_order: usize,
    /// Arc parameter reached at the window ends.
    pub reach: f64,
}

impl GuideWindow {
    pub fn interval(&self) -> (f64, f64) {
        (self.center - self.half_width, self.center + self.half_width)
    }

    /// Distance to the nearest neighboring event, from which the width was derived.
    pub fn gap(&self) -> f64 {
        self.half_width / WINDOW_FRACTION
    }
}

/// Continuous piecewise polynomial path on `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GuidePath {
    pub dim: usize,
    pub pieces: Vec<GuidePiece>,
    pub windows: Vec<GuideWindow>,
}

impl GuidePath {
    pub fn piece_at(&self, t: f64) -> &GuidePiece {
        let t = t.clamp(0.0, 1.0);
        self.pieces
            .iter()
            .find(|p| p.interval.0 <= t && t <= p.interval.1)
            .unwrap_or_else(|| self.pieces.last().expect("guide has pieces"))
    }

    pub fn eval(&self, t: f64) -> Vec<f64> {
        self.piece_at(t).eval(t)
    }

    /// Derivative vectors of orders `0..=jet_order` at the window center.
    pub fn jet(&self, window: &GuideWindow) -> Vec<Vec<f64>> {
        let piece = &self.pieces[window.piece];
        (0..=window.jet_order)
            .map(|m| piece.derivative(m, window.center))
            .collect()
    }

    /// Largest jump between consecutive pieces.
    pub fn max_joint_gap(&self) -> f64 {
        self.pieces
            .windows(2)
            .map(|w| {
                let t = w[0].interval.1;
                norm(&sub(&w[0].eval(t), &w[1].eval(t)))
            })
            .fold(0.0, f64::max)
    }
}

/// Cuspidal arc at `p` whose quadratic direction points at the interior witness.
fn waypoint_arc(k: &ConvexPolyhedron, p: &[f64]) -> Result<MonomialArc, PlanError> {
    let mut u = sub(k.witness(), p);
    if norm(&u) < 1e-9 {
        u = vec![0.0; p.len()];
        u[0] = 0.5 * k.inradius().min(1.0);
    }
    let dir = unit(&u).expect("nonzero direction");
    let w_dir = complement(&dir)
        .into_iter()
        .next()
        .ok_or_else(|| PlanError::Guide("cuspidal arcs need dimension at least 2".into()))?;
    let w: Vec<f64> = w_dir.iter().map(|x| x * CUBIC_RATIO * norm(&u)).collect();
    cuspidal_arc(k, p, &u, &w)
        .map(|spec| spec.arc)
        .map_err(|e| PlanError::Guide(format!("no cuspidal arc at {p:?}: {e}")))
}

struct Fit {
    reach: f64,
    components: Vec<UnivariatePolynomial>,
}

/// Picks how far along the certified arc the window reaches, maximizing the
/// smaller end clearance among reaches that stay in the ball and keep every
/// window constant positive.
fn fit_window(
    arc: &MonomialArc,
    left: (usize, &ConvexPolyhedron),
    right: (usize, &ConvexPolyhedron),
    center: f64,
    half_width: f64,
    ball: f64,
) -> Option<Fit> {
    let mut best: Option<(f64, Fit)> = None;
    for j in 0..=REACH_STEPS {
        let reach = arc.epsilon * 2f64.powf(-(j as f64) / 4.0);
        let displacement = (0..=40)
            .map(|s| norm(&sub(&arc.eval(reach * (s as f64 / 20.0 - 1.0)), &arc.base)))
            .fold(0.0, f64::max);
        if displacement > ball {
            continue;
        }
        let score = left
            .1
            .min_value(&arc.eval(-reach))
            .min(right.1.min_value(&arc.eval(reach)));
        if !(score > 0.0) || best.as_ref().is_some_and(|(s, _)| *s >= score) {
            continue;
        }
        let components = arc.reparametrized(reach / half_width, center);
        if window_terms(&components, center, half_width, 0, left, right).is_ok() {
            best = Some((score, Fit { reach, components }));
        }
    }
    best.map(|(_, fit)| fit)
}

/// Cuspidal pieces at the waypoints, bridge pieces at the bridge times, and
/// segments in between.
pub fn build_guide_path(
    regions: &[ConvexPolyhedron],
    schedule: &ControlSchedule,
    bridges: &[BridgeSpec],
) -> Result<GuidePath, PlanError> {
    schedule.check_interleaving()?;
    if bridges.len() != schedule.bridge_times.len() {
        return Err(PlanError::Guide(format!(
            "{} bridges for {} bridge times",
            bridges.len(),
            schedule.bridge_times.len()
        )));
    }
    let dim = regions
        .first()
        .ok_or_else(|| PlanError::InvalidScene("no regions".into()))?
        .dim();
    let mut windows: Vec<(GuideWindow, GuidePiece)> = Vec::new();
    for ev in schedule.events() {
        let (arc, (l, r), order, kind) = match ev.kind {
            EventKind::Waypoint(i) => {
                let reg = schedule.waypoint_regions[i];
                let p = &schedule.waypoints[i];
                let on_boundary = regions[reg].min_value(p) <= BOUNDARY_TOL;
                (
                    waypoint_arc(&regions[reg], p)?,
                    (reg, reg),
                    if on_boundary { 3 } else { 1 },
                    PieceKind::Cusp,
                )
            }
            EventKind::Bridge(j) => {
                let arc = bridges[j].arc.clone();
                let order = arc.degree() as usize;
                (arc, schedule.bridge_regions[j], order, PieceKind::Bridge)
            }
        };
        let ball = regions[l].inradius().min(regions[r].inradius());
        let fit = fit_window(
            &arc,
            (l, &regions[l]),
            (r, &regions[r]),
            ev.time,
            ev.half_width,
            ball,
        )
        .ok_or_else(|| PlanError::Guide(format!("no admissible local piece at t = {}", ev.time)))?;
        let window = GuideWindow {
            event: ev.kind,
            center: ev.time,
            half_width: ev.half_width,
            piece: 0,
            base_point: arc.base.clone(),
            regions: (l, r),
            jet_order: order,
            reach: fit.reach,
        };
        let interval = window.interval();
        windows.push((
            window,
            GuidePiece {
                kind,
                interval,
                components: fit.components,
                regions: (l, r),
            },
        ));
    }

    let constant = |x: &[f64]| {
        x.iter()
            .map(|&v| UnivariatePolynomial::constant(v))
            .collect::<Vec<_>>()
    };
    let mut pieces = Vec::new();
    let (first, _) = &windows[0];
    let start = windows[0].1.eval(first.interval().0);
    pieces.push(GuidePiece {
        kind: PieceKind::LeadIn,
        interval: (0.0, first.interval().0),
        components: constant(&start),
        regions: (first.regions.0, first.regions.0),
    });
    let count = windows.len();
    let mut out_windows = Vec::with_capacity(count);
    for idx in 0..count {
        let (mut window, piece) = windows[idx].clone();
        let hi = window.interval().1;
        let end = piece.eval(hi);
        window.piece = pieces.len();
        pieces.push(piece);
        if let Some((next, next_piece)) = windows.get(idx + 1) {
            let region = window.regions.1;
            if next.regions.0 != region {
                return Err(PlanError::Guide(format!(
                    "pieces at t = {} and t = {} meet different regions",
                    window.center, next.center
                )));
            }
            let lo = next.interval().0;
            let next_start = next_piece.eval(lo);
            for (t, x) in [(hi, &end), (lo, &next_start)] {
                if !(regions[region].min_value(x) > 0.0) {
                    return Err(PlanError::Guide(format!(
                        "segment joint at t = {t} is outside region {region}"
                    )));
                }
            }
            pieces.push(GuidePiece {
                kind: PieceKind::Segment,
                interval: (hi, lo),
                components: segment(&end, &next_start, hi, lo),
                regions: (region, region),
            });
        } else {
            pieces.push(GuidePiece {
                kind: PieceKind::LeadOut,
                interval: (hi, 1.0),
                components: constant(&end),
                regions: (window.regions.1, window.regions.1),
            });
        }
        out_windows.push(window);
    }
    Ok(GuidePath {
        dim,
        pieces,
        windows: out_windows,
    })
}

/// Affine parameterization of `[x, y]` over `[t0, t1]`.
fn segment(x: &[f64], y: &[f64], t0: f64, t1: f64) -> Vec<UnivariatePolynomial> {
    x.iter()
        .zip(y)
        .map(|(&a, &b)| {
            let slope = (b - a) / (t1 - t0);
            UnivariatePolynomial::new(vec![a - slope * t0, slope])
        })
        .collect()
}
