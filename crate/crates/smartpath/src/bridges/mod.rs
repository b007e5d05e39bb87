//! Polynomial arcs that enter convex polyhedra through a boundary point:
//! cuspidal arcs `p + t²u + t³w`, signed monomial arcs in an affine frame, the
//! reduction of a valid monomial arc to moment form, and bridge synthesis.

use serde::{Deserialize, Serialize};

use crate::geometry::{
    contact_point, norm, AffineFunctional, Contact, ConvexPolyhedron, GeometryError, CLOSURE_TOL,
};
use crate::poly::{bounds, PolynomialPath, Side, UnivariatePolynomial};

/// Parameter range searched when certifying `ε`.
const T_MAX: f64 = 1.0;
/// Resolution of the positivity certificate for `ε`.
const EPS_TOL: f64 = 1e-6;
const SAMPLES: usize = 1000;
const MAX_ETA_HALVINGS: usize = 20;
const MAX_CANDIDATES: usize = 32;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BridgeError {
    #[error("base point lies outside the closure of region {0}")]
    BaseOutside(usize),
    #[error("p + u is not interior to the polyhedron")]
    NotInteriorDirection,
    #[error("directions are linearly dependent")]
    DependentDirections,
    #[error("malformed arc: {0}")]
    Malformed(String),
    #[error("arc is not a valid bridge (constraint {constraint} on the {side:?} side)")]
    InvalidArc { side: Side, constraint: usize },
    #[error("reduction step {step} failed re-certification")]
    ReductionFailed { step: usize },
    #[error("no certified arc among {tried} candidates")]
    SearchExhausted { tried: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// `t ↦ base + Σ a_ℓ t^{k_ℓ} v_ℓ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonomialArc {
    pub base: Vec<f64>,
    pub frame: Vec<Vec<f64>>,
    pub exponents: Vec<u32>,
    pub coefficients: Vec<f64>,
    /// Certified half-width, `0` until certified.
    pub epsilon: f64,
}

fn independent(vectors: &[Vec<f64>]) -> bool {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let scale = norm(v);
        if scale == 0.0 {
            return false;
        }
        let mut r: Vec<f64> = v.iter().map(|x| x / scale).collect();
        for b in &basis {
            let d: f64 = r.iter().zip(b).map(|(x, y)| x * y).sum();
            r.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
        }
        let n = norm(&r);
        if n < 1e-10 {
            return false;
        }
        basis.push(r.iter().map(|x| x / n).collect());
    }
    true
}

impl MonomialArc {
    pub fn new(
        base: Vec<f64>,
        frame: Vec<Vec<f64>>,
        exponents: Vec<u32>,
        coefficients: Vec<f64>,
    ) -> Result<Self, BridgeError> {
        let n = base.len();
        let d = frame.len();
        if d == 0 || d > n || exponents.len() != d || coefficients.len() != d {
            return Err(BridgeError::Malformed(format!(
                "frame of {d} vectors, {} exponents, {} coefficients in dimension {n}",
                exponents.len(),
                coefficients.len()
            )));
        }
        if frame.iter().any(|v| v.len() != n) {
            return Err(BridgeError::Malformed(
                "frame vector of wrong dimension".into(),
            ));
        }
        if exponents[0] == 0 || exponents.windows(2).any(|w| w[0] >= w[1]) {
            return Err(BridgeError::Malformed(
                "exponents must be positive and strictly increasing".into(),
            ));
        }
        if coefficients.iter().any(|&a| a == 0.0 || !a.is_finite()) {
            return Err(BridgeError::Malformed(
                "coefficients must be nonzero".into(),
            ));
        }
        if !independent(&frame) {
            return Err(BridgeError::DependentDirections);
        }
        Ok(Self {
            base,
            frame,
            exponents,
            coefficients,
            epsilon: 0.0,
        })
    }

    /// The arc in the standard frame with unit coefficients, `(t^{k_1}, …, t^{k_d}, 0, …)`.
    pub fn standard(base: Vec<f64>, exponents: Vec<u32>) -> Result<Self, BridgeError> {
        let n = base.len();
        let frame = (0..exponents.len())
            .map(|l| {
                let mut e = vec![0.0; n];
                if l < n {
                    e[l] = 1.0;
                }
                e
            })
            .collect();
        let d = exponents.len();
        Self::new(base, frame, exponents, vec![1.0; d])
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    /// Highest exponent.
    pub fn degree(&self) -> u32 {
        *self.exponents.last().expect("arc has at least one term")
    }

    pub fn eval(&self, t: f64) -> Vec<f64> {
        let mut x = self.base.clone();
        for ((v, &k), &a) in self
            .frame
            .iter()
            .zip(&self.exponents)
            .zip(&self.coefficients)
        {
            let c = a * t.powi(k as i32);
            x.iter_mut().zip(v).for_each(|(xi, vi)| *xi += c * vi);
        }
        x
    }

    /// `h ∘ arc` as a polynomial in `t`.
    pub fn compose(&self, h: &AffineFunctional) -> UnivariatePolynomial {
        let mut coeffs = vec![0.0; self.degree() as usize + 1];
        coeffs[0] = h.eval(&self.base);
        for ((v, &k), &a) in self
            .frame
            .iter()
            .zip(&self.exponents)
            .zip(&self.coefficients)
        {
            coeffs[k as usize] += a * h.linear(v);
        }
        UnivariatePolynomial::new(coeffs)
    }

    /// Components of `t ↦ arc(c·(t − t0))`.
    pub fn reparametrized(&self, c: f64, t0: f64) -> Vec<UnivariatePolynomial> {
        (0..self.dim())
            .map(|i| {
                let mut coeffs = vec![0.0; self.degree() as usize + 1];
                coeffs[0] = self.base[i];
                for ((v, &k), &a) in self
                    .frame
                    .iter()
                    .zip(&self.exponents)
                    .zip(&self.coefficients)
                {
                    coeffs[k as usize] += a * v[i];
                }
                UnivariatePolynomial::new(coeffs).compose_linear(c, -c * t0)
            })
            .collect()
    }

    /// The arc as a path on `[−ε, ε]`.
    pub fn to_path(&self) -> PolynomialPath {
        PolynomialPath::new(self.reparametrized(1.0, 0.0), (-self.epsilon, self.epsilon))
    }

    /// `t ↦ arc(−t)`.
    pub fn reversed(&self) -> Self {
        let mut out = self.clone();
        for (a, &k) in out.coefficients.iter_mut().zip(&self.exponents) {
            if k % 2 == 1 {
                *a = -*a;
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BridgeKind {
    Cuspidal,
    Moment,
}

/// A certified arc through `base_point`: `t < 0` lies in `left_region`, `t > 0`
/// in `right_region`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BridgeSpec {
    pub kind: BridgeKind,
    pub arc: MonomialArc,
    pub base_point: Vec<f64>,
    pub left_region: usize,
    pub right_region: usize,
    pub degree: u32,
    pub certified: bool,
}

impl BridgeSpec {
    pub fn with_regions(mut self, left: usize, right: usize) -> Self {
        self.left_region = left;
        self.right_region = right;
        self
    }

    /// The same bridge traversed in the opposite direction.
    pub fn reversed(&self) -> Self {
        Self {
            arc: self.arc.reversed(),
            left_region: self.right_region,
            right_region: self.left_region,
            ..self.clone()
        }
    }
}

/// Leading behavior of one `h ∘ arc` on one side of `t = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintTerm {
    pub side: Side,
    pub constraint: usize,
    pub order: Option<usize>,
    pub sign: i8,
    pub coeff: f64,
    /// Certified positivity range of this constraint along the arc.
    pub epsilon: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcCertificate {
    pub valid: bool,
    pub epsilon: f64,
    pub terms: Vec<ConstraintTerm>,
}

fn reflect(p: &UnivariatePolynomial) -> UnivariatePolynomial {
    p.compose_linear(-1.0, 0.0)
}

/// Checks that `arc(t) ∈ Int(K_right)` and `arc(−t) ∈ Int(K_left)` for small
/// `t > 0` from the one-sided leading terms of every `h ∘ arc`, then certifies
/// a common `ε` by Bernstein positivity and confirms it by sampling.
pub fn moment_arc_valid(
    k_left: &ConvexPolyhedron,
    k_right: &ConvexPolyhedron,
    arc: &MonomialArc,
) -> Result<ArcCertificate, BridgeError> {
    if !k_left.closure_contains(&arc.base, CLOSURE_TOL) {
        return Err(BridgeError::BaseOutside(0));
    }
    if !k_right.closure_contains(&arc.base, CLOSURE_TOL) {
        return Err(BridgeError::BaseOutside(1));
    }
    let mut terms = Vec::new();
    let mut valid = true;
    let mut epsilon = T_MAX;
    for (side, region) in [(Side::Left, k_left), (Side::Right, k_right)] {
        for (j, h) in region.constraints().iter().enumerate() {
            let composed = arc.compose(h);
            let lead = composed.one_sided_leading_term(0.0, side);
            let oriented = match side {
                Side::Right => composed,
                Side::Left => reflect(&composed),
            };
            let eps_h = if lead.sign > 0 {
                bounds::positive_prefix(&oriented, T_MAX, EPS_TOL)
            } else {
                0.0
            };
            valid &= lead.sign > 0 && eps_h > 0.0;
            epsilon = epsilon.min(eps_h);
            terms.push(ConstraintTerm {
                side,
                constraint: j,
                order: lead.order,
                sign: lead.sign,
                coeff: lead.coeff,
                epsilon: eps_h,
            });
        }
    }
    if !valid {
        return Ok(ArcCertificate {
            valid,
            epsilon: 0.0,
            terms,
        });
    }
    // The sampling pass guards against round-off in the certificate.
    let inside = |eps: f64| {
        (1..=SAMPLES).all(|i| {
            let t = eps * i as f64 / SAMPLES as f64;
            k_right
                .interior_contains(&arc.eval(t), 0.0)
                .unwrap_or(false)
                && k_left
                    .interior_contains(&arc.eval(-t), 0.0)
                    .unwrap_or(false)
        })
    };
    let mut tries = 0;
    while !inside(epsilon) {
        epsilon *= 0.5;
        tries += 1;
        if tries > 30 {
            return Ok(ArcCertificate {
                valid: false,
                epsilon: 0.0,
                terms,
            });
        }
    }
    Ok(ArcCertificate {
        valid,
        epsilon,
        terms,
    })
}

/// Certifies `arc` and returns it with `ε` filled in.
pub fn certify_arc(
    k_left: &ConvexPolyhedron,
    k_right: &ConvexPolyhedron,
    arc: &MonomialArc,
) -> Result<MonomialArc, BridgeError> {
    let cert = moment_arc_valid(k_left, k_right, arc)?;
    if !cert.valid {
        let bad = cert.terms.iter().find(|t| t.sign <= 0 || t.epsilon <= 0.0);
        let (side, constraint) = bad.map_or((Side::Right, 0), |t| (t.side, t.constraint));
        return Err(BridgeError::InvalidArc { side, constraint });
    }
    Ok(MonomialArc {
        epsilon: cert.epsilon,
        ..arc.clone()
    })
}

/// The cuspidal arc `t ↦ p + t²u + t³w`, which stays in `Int(K)` for
/// `0 < |t| ≤ ε`.
///
/// Constraints with `h⃗(u) > 0` need `h⃗(u) ± t h⃗(w) > 0`; the rest have
/// `h(p) > 0` and need `h(p) + t²h⃗(u) ± t³h⃗(w) > 0`. Both regions of the
/// returned spec are index `0`; see [`BridgeSpec::with_regions`].
pub fn cuspidal_arc(
    k: &ConvexPolyhedron,
    p: &[f64],
    u: &[f64],
    w: &[f64],
) -> Result<BridgeSpec, BridgeError> {
    if !k.closure_contains(p, CLOSURE_TOL) {
        return Err(BridgeError::BaseOutside(0));
    }
    let pu: Vec<f64> = p.iter().zip(u).map(|(a, b)| a + b).collect();
    if !k.interior_contains(&pu, 0.0)? {
        return Err(BridgeError::NotInteriorDirection);
    }
    if w.len() != p.len() || !independent(&[u.to_vec(), w.to_vec()]) {
        return Err(BridgeError::DependentDirections);
    }
    let mut epsilon = T_MAX;
    for h in k.constraints() {
        let (hp, hu, hw) = (h.eval(p).max(0.0), h.linear(u), h.linear(w));
        for sign in [1.0, -1.0] {
            let poly = if hu > 0.0 {
                UnivariatePolynomial::new(vec![hu, sign * hw])
            } else {
                UnivariatePolynomial::new(vec![hp, 0.0, hu, sign * hw])
            };
            epsilon = epsilon.min(bounds::positive_prefix(&poly, T_MAX, EPS_TOL));
        }
    }
    let mut arc = MonomialArc::new(
        p.to_vec(),
        vec![u.to_vec(), w.to_vec()],
        vec![2, 3],
        vec![1.0, 1.0],
    )?;
    let inside = |eps: f64| {
        (1..=SAMPLES).all(|i| {
            let t = eps * i as f64 / SAMPLES as f64;
            k.interior_contains(&arc.eval(t), 0.0).unwrap_or(false)
                && k.interior_contains(&arc.eval(-t), 0.0).unwrap_or(false)
        })
    };
    let mut tries = 0;
    while !inside(epsilon) {
        epsilon *= 0.9;
        tries += 1;
        if tries > 200 {
            return Err(BridgeError::InvalidArc {
                side: Side::Right,
                constraint: 0,
            });
        }
    }
    arc.epsilon = epsilon;
    Ok(BridgeSpec {
        kind: BridgeKind::Cuspidal,
        base_point: p.to_vec(),
        left_region: 0,
        right_region: 0,
        degree: 3,
        certified: true,
        arc,
    })
}

/// One step of [`reduce_to_moment`], for inspection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub exponents: Vec<u32>,
    pub eta: Option<f64>,
}

/// Rewrites a valid monomial arc into moment form `(t^e, …, t^{e+d−1})` with
/// `e ∈ {1, 2}` in a modified frame, re-certifying after every step.
pub fn reduce_to_moment(
    k_left: &ConvexPolyhedron,
    k_right: &ConvexPolyhedron,
    arc: &MonomialArc,
) -> Result<MonomialArc, BridgeError> {
    reduce_to_moment_traced(k_left, k_right, arc).map(|(a, _)| a)
}

/// [`reduce_to_moment`] together with the intermediate exponent tuples.
pub fn reduce_to_moment_traced(
    k_left: &ConvexPolyhedron,
    k_right: &ConvexPolyhedron,
    arc: &MonomialArc,
) -> Result<(MonomialArc, Vec<ReductionStep>), BridgeError> {
    let mut cur = certify_arc(k_left, k_right, arc)?;
    let mut trace = vec![ReductionStep {
        exponents: cur.exponents.clone(),
        eta: None,
    }];
    let mut step = 0;

    let k1 = cur.exponents[0];
    let e = if k1 % 2 == 1 { 1 } else { 2 };
    if k1 != e {
        step += 1;
        let mut next = cur.clone();
        next.exponents.iter_mut().for_each(|k| *k = *k - k1 + e);
        cur = certify_arc(k_left, k_right, &next)
            .map_err(|_| BridgeError::ReductionFailed { step })?;
        trace.push(ReductionStep {
            exponents: cur.exponents.clone(),
            eta: None,
        });
    }

    // Positions `0..l` already hold `e, …, e+l−1`.
    let mut l = 1;
    while l < cur.exponents.len() {
        let target = e + l as u32;
        let k = cur.exponents[l];
        if k == target {
            l += 1;
            continue;
        }
        step += 1;
        let prev = target - 1;
        if (k - prev).is_multiple_of(2) {
            // Merge axis l into axis l−1 with weight η.
            let mut eta = 0.5;
            let mut done = None;
            for _ in 0..=MAX_ETA_HALVINGS {
                let mut next = cur.clone();
                let merged: Vec<f64> = cur.frame[l - 1]
                    .iter()
                    .zip(&cur.frame[l])
                    .map(|(a, b)| cur.coefficients[l - 1] * a + eta * cur.coefficients[l] * b)
                    .collect();
                next.frame[l - 1] = merged;
                next.coefficients[l - 1] = 1.0;
                next.frame.remove(l);
                next.coefficients.remove(l);
                next.exponents.remove(l);
                for idx in l..next.exponents.len() {
                    next.exponents[idx] = next.exponents[idx] - k + prev;
                    next.coefficients[idx] *= eta;
                }
                if let Ok(c) = certify_arc(k_left, k_right, &next) {
                    done = Some((c, eta));
                    break;
                }
                eta *= 0.5;
            }
            let (c, eta) = done.ok_or(BridgeError::ReductionFailed { step })?;
            cur = c;
            trace.push(ReductionStep {
                exponents: cur.exponents.clone(),
                eta: Some(eta),
            });
        } else {
            let mut next = cur.clone();
            for idx in l..next.exponents.len() {
                next.exponents[idx] = next.exponents[idx] - k + target;
            }
            cur = certify_arc(k_left, k_right, &next)
                .map_err(|_| BridgeError::ReductionFailed { step })?;
            trace.push(ReductionStep {
                exponents: cur.exponents.clone(),
                eta: None,
            });
            l += 1;
        }
    }
    Ok((cur, trace))
}

pub(crate) fn unit(v: &[f64]) -> Option<Vec<f64>> {
    let n = norm(v);
    (n > 1e-12).then(|| v.iter().map(|x| x / n).collect())
}

pub(crate) fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Orthonormal basis of the complement of the unit vector `v`.
pub(crate) fn complement(v: &[f64]) -> Vec<Vec<f64>> {
    let n = v.len();
    let mut basis = vec![v.to_vec()];
    for k in 0..n {
        let mut e = vec![0.0; n];
        e[k] = 1.0;
        for b in &basis {
            let d: f64 = e.iter().zip(b).map(|(x, y)| x * y).sum();
            e.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
        }
        if let Some(u) = unit(&e).filter(|_| norm(&e) > 1e-8) {
            basis.push(u);
        }
    }
    basis.remove(0);
    basis
}

/// Candidate first directions for a moment arc from `K1` (left) into `K2` (right).
fn first_directions(k1: &ConvexPolyhedron, k2: &ConvexPolyhedron, q: &[f64]) -> Vec<Vec<f64>> {
    let n = q.len();
    let active = |k: &ConvexPolyhedron| -> Vec<f64> {
        let mut s = vec![0.0; n];
        for h in k.constraints().iter().filter(|h| h.eval(q).abs() <= 1e-7) {
            s.iter_mut().zip(h.gradient()).for_each(|(a, g)| *a += g);
        }
        s
    };
    let into2 = active(k2);
    let into1 = active(k1);
    let mut raw = vec![
        sub(k2.witness(), k1.witness()),
        sub(k2.witness(), q),
        sub(q, k1.witness()),
        sub(&into2, &into1),
        into2.clone(),
        into1.iter().map(|x| -x).collect(),
    ];
    for k in 0..n {
        let mut e = vec![0.0; n];
        e[k] = 1.0;
        raw.push(e.clone());
        e[k] = -1.0;
        raw.push(e);
    }
    let mut out: Vec<Vec<f64>> = Vec::new();
    for v in raw.into_iter().filter_map(|v| unit(&v)) {
        if !out.iter().any(|u| norm(&sub(u, &v)) < 1e-9) {
            out.push(v);
        }
        if out.len() == MAX_CANDIDATES {
            break;
        }
    }
    out
}

/// Every signed choice of `count` vectors from `basis`, in order.
fn signed_frames(basis: &[Vec<f64>], count: usize) -> Vec<Vec<Vec<f64>>> {
    if count == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, b) in basis.iter().enumerate() {
        let rest: Vec<Vec<f64>> = basis
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| v.clone())
            .collect();
        for tail in signed_frames(&rest, count - 1) {
            for s in [1.0, -1.0] {
                let mut f = vec![b.iter().map(|x| s * x).collect::<Vec<f64>>()];
                f.extend(tail.iter().cloned());
                out.push(f);
            }
        }
    }
    out
}

/// A certified bridge from `K1` (`t < 0`) to `K2` (`t > 0`) through `q`.
///
/// With overlapping interiors this is a cuspidal arc in `K1 ∩ K2` pointing at
/// its witness; otherwise a bounded search over moment arcs.
pub fn synthesize_bridge(
    k1: &ConvexPolyhedron,
    k2: &ConvexPolyhedron,
    q: &[f64],
) -> Result<BridgeSpec, BridgeError> {
    if !k1.closure_contains(q, CLOSURE_TOL) {
        return Err(BridgeError::BaseOutside(0));
    }
    if !k2.closure_contains(q, CLOSURE_TOL) {
        return Err(BridgeError::BaseOutside(1));
    }
    let n = q.len();
    if let Some(both) = k1.intersection(k2) {
        let mut u = sub(both.witness(), q);
        if norm(&u) < 1e-9 {
            u = vec![0.0; n];
            u[0] = 0.5 * both.inradius().min(1.0);
        }
        let scale = norm(&u);
        let dir = unit(&u).expect("nonzero direction");
        if let Some(w_dir) = complement(&dir).into_iter().next() {
            let w: Vec<f64> = w_dir.iter().map(|x| x * scale).collect();
            if let Ok(spec) = cuspidal_arc(&both, q, &u, &w) {
                return Ok(spec);
            }
        }
    }
    let mut tried = 0;
    for v1 in first_directions(k1, k2, q) {
        let rest = complement(&v1);
        for d in 1..=n {
            for start in [1u32, 2] {
                let exponents: Vec<u32> = (start..start + d as u32).collect();
                for tail in signed_frames(&rest, d - 1) {
                    tried += 1;
                    let mut frame = vec![v1.clone()];
                    frame.extend(tail);
                    let Ok(arc) =
                        MonomialArc::new(q.to_vec(), frame, exponents.clone(), vec![1.0; d])
                    else {
                        continue;
                    };
                    if let Ok(arc) = certify_arc(k1, k2, &arc) {
                        return Ok(BridgeSpec {
                            kind: BridgeKind::Moment,
                            base_point: q.to_vec(),
                            left_region: 0,
                            right_region: 1,
                            degree: arc.degree(),
                            certified: true,
                            arc,
                        });
                    }
                }
            }
        }
    }
    Err(BridgeError::SearchExhausted { tried })
}

/// Finds a base point in both closures, then calls [`synthesize_bridge`].
pub fn bridge_between(
    k1: &ConvexPolyhedron,
    k2: &ConvexPolyhedron,
    hint: Option<&[f64]>,
) -> Result<Option<BridgeSpec>, BridgeError> {
    let q = match contact_point(k1, k2, hint)? {
        Contact::Disjoint { .. } => return Ok(None),
        Contact::Overlap { point, .. } | Contact::Touching { point } => point,
    };
    synthesize_bridge(k1, k2, &q).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(cs: &[([f64; 2], f64)]) -> ConvexPolyhedron {
        ConvexPolyhedron::new(
            cs.iter()
                .map(|(a, b)| AffineFunctional::new(a.to_vec(), *b).unwrap())
                .collect(),
        )
        .unwrap()
    }

    /// `x2 ≤ x1, x2 ≥ 0, x1 ≤ 1`.
    fn k1() -> ConvexPolyhedron {
        poly(&[([1.0, -1.0], 0.0), ([0.0, 1.0], 0.0), ([-1.0, 0.0], 1.0)])
    }

    /// `ε = 0`: `x2 ≤ −x1, x2 ≥ 0, x1 ≥ −1`; `ε = 1`: `x2 ≥ −x1, x2 ≤ 0, x1 ≤ 1`.
    fn k2(eps: u8) -> ConvexPolyhedron {
        if eps == 0 {
            poly(&[([-1.0, -1.0], 0.0), ([0.0, 1.0], 0.0), ([1.0, 0.0], 1.0)])
        } else {
            poly(&[([1.0, 1.0], 0.0), ([0.0, -1.0], 0.0), ([-1.0, 0.0], 1.0)])
        }
    }

    #[test]
    fn cuspidal_box_example() {
        let k = ConvexPolyhedron::from_box(&[0.0, -1.0], &[2.0, 1.0]).unwrap();
        let spec = cuspidal_arc(&k, &[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]).unwrap();
        assert!(spec.arc.epsilon >= 0.9, "{}", spec.arc.epsilon);
        for i in 1..=1000 {
            let t = 0.9 * i as f64 / 1000.0;
            assert!(k.interior_contains(&spec.arc.eval(t), 0.0).unwrap());
            assert!(k.interior_contains(&spec.arc.eval(-t), 0.0).unwrap());
        }
    }

    #[test]
    fn cuspidal_preconditions() {
        let k = ConvexPolyhedron::from_box(&[0.0, -1.0], &[2.0, 1.0]).unwrap();
        assert_eq!(
            cuspidal_arc(&k, &[0.0, 0.0], &[-1.0, 0.0], &[0.0, 1.0]),
            Err(BridgeError::NotInteriorDirection)
        );
        assert_eq!(
            cuspidal_arc(&k, &[0.0, 0.0], &[1.0, 0.0], &[2.0, 0.0]),
            Err(BridgeError::DependentDirections)
        );
        assert!(
            cuspidal_arc(&k, &[1.0, 0.0], &[0.5, 0.0], &[0.0, 0.5])
                .unwrap()
                .arc
                .epsilon
                > 0.0
        );
    }

    #[test]
    fn moment_arc_parity() {
        let good = MonomialArc::standard(vec![0.0, 0.0], vec![1, 2]).unwrap();
        let cert = moment_arc_valid(&k2(0), &k1(), &good).unwrap();
        assert!(cert.valid && cert.epsilon > 0.0);
        let bad = MonomialArc::standard(vec![0.0, 0.0], vec![2, 3]).unwrap();
        assert!(!moment_arc_valid(&k2(0), &k1(), &bad).unwrap().valid);
        assert!(moment_arc_valid(&k2(1), &k1(), &bad).unwrap().valid);
    }

    #[test]
    fn interior_base_is_always_valid() {
        let sq = ConvexPolyhedron::from_box(&[0.0, 0.0], &[1.0, 1.0]).unwrap();
        let arc = MonomialArc::standard(vec![0.5, 0.5], vec![1, 2]).unwrap();
        assert!(moment_arc_valid(&sq, &sq, &arc).unwrap().valid);
    }

    #[test]
    fn reduction_traces() {
        let cases: [(u8, [u32; 2], Vec<u32>); 5] = [
            (0, [1, 4], vec![1, 2]),
            (0, [3, 4], vec![1, 2]),
            (1, [2, 5], vec![2, 3]),
            (1, [4, 5], vec![2, 3]),
            (0, [1, 2], vec![1, 2]),
        ];
        for (eps, exps, expected) in cases {
            let arc = MonomialArc::standard(vec![0.0, 0.0], exps.to_vec()).unwrap();
            let out = reduce_to_moment(&k2(eps), &k1(), &arc).unwrap();
            assert_eq!(out.exponents, expected, "{exps:?}");
            assert!(moment_arc_valid(&k2(eps), &k1(), &out).unwrap().valid);
        }
    }

    #[test]
    fn reduction_merges_even_gap() {
        let left = ConvexPolyhedron::from_box(&[-1.0, -1.0], &[0.0, 1.0]).unwrap();
        let right = ConvexPolyhedron::from_box(&[0.0, -1.0], &[1.0, 1.0]).unwrap();
        let arc = MonomialArc::standard(vec![0.0, 0.0], vec![3, 5]).unwrap();
        let (out, trace) = reduce_to_moment_traced(&left, &right, &arc).unwrap();
        assert_eq!(trace[1].exponents, vec![1, 3]);
        assert_eq!(out.exponents, vec![1]);
    }

    #[test]
    fn synthesize_overlap_is_cuspidal() {
        let a = ConvexPolyhedron::from_box(&[0.0, 0.0], &[2.0, 1.0]).unwrap();
        let b = ConvexPolyhedron::from_box(&[0.0, 0.0], &[1.0, 2.0]).unwrap();
        let spec = synthesize_bridge(&a, &b, &[0.5, 0.5]).unwrap();
        assert_eq!(spec.kind, BridgeKind::Cuspidal);
        assert_eq!(spec.degree, 3);
    }

    #[test]
    fn synthesize_touching_is_moment() {
        let spec = synthesize_bridge(&k2(0), &k1(), &[0.0, 0.0]).unwrap();
        assert_eq!(spec.kind, BridgeKind::Moment);
        assert_eq!(spec.arc.exponents, vec![1, 2]);
        let far = ConvexPolyhedron::from_box(&[2.0, 2.0], &[3.0, 3.0]).unwrap();
        let sq = ConvexPolyhedron::from_box(&[0.0, 0.0], &[1.0, 1.0]).unwrap();
        assert!(synthesize_bridge(&sq, &far, &[1.0, 1.0]).is_err());
    }

    #[test]
    fn reversed_arc_swaps_sides() {
        let arc = MonomialArc::standard(vec![0.0, 0.0], vec![1, 2]).unwrap();
        let rev = arc.reversed();
        assert!(moment_arc_valid(&k1(), &k2(0), &rev).unwrap().valid);
    }
}
