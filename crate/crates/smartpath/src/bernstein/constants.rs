use std::collections::BTreeMap;

use super::moments::{central_moment_polynomials, moment_constant, q_polynomials, sup_on, QTable};
use super::{BernsteinError, CompactSet, FunctionOracle};
use crate::poly::{BernsteinPolynomial, UnivariatePolynomial};

fn factorial(n: usize) -> f64 {
    (1..=n).map(|j| j as f64).product()
}

/// Sup norms `‖f^{(k)}‖_K` for a set of orders.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeNorms {
    norms: BTreeMap<usize, f64>,
    set: CompactSet,
}

impl DerivativeNorms {
    pub fn new(set: CompactSet, norms: impl IntoIterator<Item = (usize, f64)>) -> Self {
        let norms: BTreeMap<_, _> = norms.into_iter().collect();
        assert!(
            norms.values().all(|&v| v >= 0.0),
            "norms must be nonnegative"
        );
        Self { norms, set }
    }

    /// Grid maxima of `|f^{(k)}|` over `K`, `samples` points per interval.
    pub fn estimate(
        f: &FunctionOracle,
        orders: impl IntoIterator<Item = usize>,
        set: &CompactSet,
        samples: usize,
    ) -> Result<Self, BernsteinError> {
        let grid = set.grid(samples);
        let mut norms = BTreeMap::new();
        for k in orders {
            let mut m: f64 = 0.0;
            for &x in &grid {
                m = m.max(f.derivative(k, x)?.abs());
            }
            norms.insert(k, m);
        }
        Ok(Self {
            norms,
            set: set.clone(),
        })
    }

    pub fn get(&self, order: usize) -> Result<f64, BernsteinError> {
        self.norms
            .get(&order)
            .copied()
            .ok_or(BernsteinError::MissingNorm(order))
    }

    pub fn set(&self) -> &CompactSet {
        &self.set
    }
}

/// Error bound for `|B_ν^{(ℓ)}(f)(x) − f^{(ℓ)}(x)|` when `f` is `C^{ℓ+2}` on `[0, 1]`.
pub fn smooth_error_bound(
    l: usize,
    nu: usize,
    x: f64,
    norms: &DerivativeNorms,
) -> Result<f64, BernsteinError> {
    if nu == 0 {
        return Err(BernsteinError::ZeroDegree);
    }
    let lf = l as f64;
    let s = lf * (lf - 1.0) * norms.get(l)?
        + lf * (1.0 - 2.0 * x).abs() * norms.get(l + 1)?
        + x * (1.0 - x) * norms.get(l + 2)?;
    Ok(s / (2.0 * nu as f64))
}

/// Knobs for the concrete covering used to bound the Taylor remainder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantOptions {
    /// Near-diagonal radius `r`; defaults to half the distance from `K` to `[0,1] ∖ Ω`.
    pub inflation_radius: Option<f64>,
    /// Grid size per axis for the off-diagonal maximization.
    pub grid: usize,
    /// Multiplier applied to sampled maxima.
    pub safety: f64,
}

impl Default for ConstantOptions {
    fn default() -> Self {
        Self {
            inflation_radius: None,
            grid: 101,
            safety: 1.1,
        }
    }
}

/// Constants of the compact-set error bound for one derivative order `ℓ`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompactBoundConstants {
    pub l: usize,
    pub set: CompactSet,
    /// Step-2 constant `C_{f,K,ℓ}`.
    pub c_f_k_l: f64,
    /// Whether `C_{f,K,ℓ}` was obtained by cancelling `(y(1−y))^ℓ` exactly.
    pub boundary_refined: bool,
    /// Bound `N_{f,K}` for `|h(y,x)|/|x−y|^{ℓ+4}`.
    pub n_f_k: f64,
    pub a: BTreeMap<usize, f64>,
    pub q_table: QTable,
    /// Distance `δ` from `K` to `[0,1] ∖ Ω`.
    pub tail_delta: f64,
    /// `C(δ, m)` for the stored `δ`.
    pub tail_c: BTreeMap<usize, f64>,
    /// `M_{f,K,λ}` for `λ = 0..=ℓ+2`.
    pub m_f_k: BTreeMap<usize, f64>,
    /// `L_m = m Σ_{q=1}^m C(m,q)` for `m = 0..=ℓ`.
    pub l_m: BTreeMap<usize, f64>,
}

fn touches_zero(set: &CompactSet) -> bool {
    set.min() <= 0.0
}

fn touches_one(set: &CompactSet) -> bool {
    set.max() >= 1.0
}

fn sup_on_set(p: &UnivariatePolynomial, set: &CompactSet) -> f64 {
    set.intervals()
        .iter()
        .map(|&(a, b)| {
            if b > a {
                sup_on(p, a, b)
            } else {
                p.eval(a).abs()
            }
        })
        .fold(0.0, f64::max)
}

/// `sup_K 1/(y^{e0} (1−y)^{e1})`; infinite when `K` reaches a zero of the weight.
fn inverse_weight_sup(set: &CompactSet, e0: usize, e1: usize) -> f64 {
    let w = |y: f64| y.powi(e0 as i32) * (1.0 - y).powi(e1 as i32);
    // The weight is unimodal on [0,1]; its minimum over an interval sits at an endpoint.
    let min = set
        .intervals()
        .iter()
        .map(|&(a, b)| w(a).min(w(b)))
        .fold(f64::INFINITY, f64::min);
    if min <= 0.0 {
        f64::INFINITY
    } else {
        1.0 / min
    }
}

/// Exact quotient `p / y^l`, if the low coefficients vanish.
fn divide_by_y_power(p: &UnivariatePolynomial, l: usize) -> Option<UnivariatePolynomial> {
    let scale = p.max_abs_coeff().max(f64::MIN_POSITIVE);
    if (0..l).any(|k| p.coeff(k).abs() > 1e-10 * scale) {
        return None;
    }
    Some(UnivariatePolynomial::new(
        p.coeffs().get(l..).unwrap_or(&[]).to_vec(),
    ))
}

fn divide_by_one_minus_y_power(p: &UnivariatePolynomial, l: usize) -> Option<UnivariatePolynomial> {
    let mirrored = p.compose_linear(-1.0, 1.0);
    divide_by_y_power(&mirrored, l).map(|q| q.compose_linear(-1.0, 1.0))
}

impl CompactBoundConstants {
    pub fn compute(
        f: &FunctionOracle,
        l: usize,
        set: &CompactSet,
        options: ConstantOptions,
    ) -> Result<Self, BernsteinError> {
        if f.domain() != (0.0, 1.0) {
            return Err(BernsteinError::UnitIntervalRequired);
        }
        if !set.is_inside(f.smooth_set()) {
            return Err(BernsteinError::CompactNotInSmoothSet);
        }
        let delta = f.smooth_margin(set);
        let r =
            options
                .inflation_radius
                .unwrap_or(if delta.is_finite() { 0.5 * delta } else { 0.25 });
        let top = l + 4;

        let norms = DerivativeNorms::estimate(f, 0..=l + 3, set, 2001)?;

        let inflated = set.inflate(r, 0.0, 1.0);
        let mut n1: f64 = 0.0;
        for y in inflated.grid(2001) {
            let y = y.clamp(0.0, 1.0);
            if f.is_smooth_at(y) {
                n1 = n1.max(f.derivative(top, y)?.abs());
            }
        }
        n1 *= options.safety / factorial(top);

        let mut n2: f64 = 0.0;
        let xs: Vec<f64> = (0..options.grid)
            .map(|i| i as f64 / (options.grid - 1) as f64)
            .collect();
        for y in set.grid(options.grid) {
            let derivs: Vec<f64> = (0..top)
                .map(|k| f.derivative(k, y))
                .collect::<Result<_, _>>()?;
            for &x in &xs {
                let d = x - y;
                if d.abs() < r {
                    continue;
                }
                let taylor: f64 = derivs
                    .iter()
                    .enumerate()
                    .map(|(k, v)| v * d.powi(k as i32) / factorial(k))
                    .sum();
                n2 = n2.max((f.eval(x) - taylor).abs() / d.abs().powi(top as i32));
            }
        }
        n2 *= options.safety;
        let n_f_k = n1.max(n2);

        let a: BTreeMap<usize, f64> = (2..=l + 2).map(|m| (m, moment_constant(m))).collect();
        let q_table = q_polynomials(l);

        let paper_weight = inverse_weight_sup(set, l, l);
        let (c_f_k_l, boundary_refined) = if paper_weight.is_finite() {
            let s: f64 = q_table
                .iter()
                .map(|(&(i, j), q)| sup_on_set(q, set) * a[&(i + j + 2)])
                .sum();
            (paper_weight * s * n_f_k, false)
        } else {
            (refined_step2_constant(l, set, &q_table, n_f_k)?, true)
        };

        let tail_c = (2..=l + 2)
            .map(|m| {
                (
                    m,
                    if delta.is_finite() {
                        a[&m] / delta.powi(2 * m as i32)
                    } else {
                        0.0
                    },
                )
            })
            .collect();
        let m_f_k = (0..=l + 2)
            .map(|lambda| {
                let s: f64 = (lambda..=l + 3)
                    .map(|k| norms.get(k).unwrap_or(0.0) / factorial(k - lambda))
                    .sum();
                (lambda, s)
            })
            .collect();
        let l_m = (0..=l)
            .map(|m| (m, m as f64 * (2f64.powi(m as i32) - 1.0)))
            .collect();

        Ok(Self {
            l,
            set: set.clone(),
            c_f_k_l,
            boundary_refined,
            n_f_k,
            a,
            q_table,
            tail_delta: delta,
            tail_c,
            m_f_k,
            l_m,
        })
    }
}

/// Step-2 constant with the weight `1/(y(1−y))^ℓ` cancelled against the
/// central-moment polynomials, valid when `K` reaches `0` or `1`.
///
/// Pointwise, `|B_ν^{(ℓ)}(h_y)(y)| ≤ (N/ν²) Σ_{i,j} Σ_s |q_{ij}(y) c_{2m,s}(y)| / (y(1−y))^ℓ`
/// with `m = i+j+2`, since `T_{2m} = Σ_s ν^s c_{2m,s}` and `s ≤ m`.
fn refined_step2_constant(
    l: usize,
    set: &CompactSet,
    q_table: &QTable,
    n_f_k: f64,
) -> Result<f64, BernsteinError> {
    let at0 = touches_zero(set);
    let at1 = touches_one(set);
    let moments = central_moment_polynomials(2 * (l + 2));
    let rest = inverse_weight_sup(set, if at0 { 0 } else { l }, if at1 { 0 } else { l });
    if !rest.is_finite() {
        return Err(BernsteinError::BoundaryContact(l));
    }
    let mut total = 0.0;
    for (&(i, j), q) in q_table {
        if q.is_zero() {
            continue;
        }
        let m = i + j + 2;
        for c in &moments[2 * m] {
            let mut prod = q * c;
            if prod.is_zero() {
                continue;
            }
            if at0 {
                prod = divide_by_y_power(&prod, l).ok_or(BernsteinError::BoundaryContact(l))?;
            }
            if at1 {
                prod = divide_by_one_minus_y_power(&prod, l)
                    .ok_or(BernsteinError::BoundaryContact(l))?;
            }
            total += sup_on_set(&prod, set);
        }
    }
    Ok(total * rest * n_f_k)
}

/// The compact-set error bound for `|B_ν^{(ℓ)}(f)(x) − f^{(ℓ)}(x)|`, `x ∈ K`.
pub fn compact_error_bound(
    f: &FunctionOracle,
    l: usize,
    nu: usize,
    x: f64,
    norms: &DerivativeNorms,
    consts: &CompactBoundConstants,
) -> Result<f64, BernsteinError> {
    if nu == 0 {
        return Err(BernsteinError::ZeroDegree);
    }
    if consts.l != l {
        return Err(BernsteinError::MissingNorm(l));
    }
    if !norms.set().contains(x) || f.derivative(1, x).is_err() && l > 0 {
        return Err(BernsteinError::OutsideSmoothSet(x));
    }
    let n = |k: usize| norms.get(k);
    let lf = l as f64;
    let mut first = 0.0;
    for k in l..=l + 3 {
        first += n(k)? / factorial(k - l);
    }
    let mut second = 0.0;
    for k in l + 1..=l + 3 {
        second += n(k)? / factorial(k - l - 1);
    }
    let mut third = 0.0;
    for k in l + 2..=l + 3 {
        third += n(k)? / factorial(k - l - 2);
    }
    let nuf = nu as f64;
    let leading =
        lf * (lf - 1.0) * first + lf * (1.0 - 2.0 * x).abs() * second + x * (1.0 - x) * third;
    Ok(leading / (2.0 * nuf) + consts.c_f_k_l / (nuf * nuf))
}

/// Measured and analytic sizes of `B_ν^{(ℓ)}(f_1) − B_ν^{(ℓ)}(f_2)` on `K`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonGap {
    /// Grid maximum over `K`.
    pub measured: f64,
    /// `M_{K,ℓ} ‖f_1 − f_2‖ / ν²`.
    pub bound: f64,
    pub m_k_l: f64,
    pub sup_difference: f64,
}

/// Compares Bernstein derivatives of two functions that agree on the open set `omega`.
pub fn comparison_gap(
    f1: &FunctionOracle,
    f2: &FunctionOracle,
    l: usize,
    nu: usize,
    set: &CompactSet,
    omega: &[(f64, f64)],
) -> Result<ComparisonGap, BernsteinError> {
    if nu == 0 {
        return Err(BernsteinError::ZeroDegree);
    }
    if !set.is_inside(omega) {
        return Err(BernsteinError::CompactNotInSmoothSet);
    }
    let probe =
        FunctionOracle::new(|_| 0.0, (0.0, 1.0)).with_derivatives(|_, _| 0.0, omega.to_vec());
    let delta = probe.smooth_margin(set);

    let diff = BernsteinPolynomial::from_samples(|x| f1.eval(x) - f2.eval(x), nu, 0.0, 1.0);
    let deriv = diff.derivative(l);
    let measured = set
        .grid(201)
        .into_iter()
        .map(|x| deriv.eval(x).abs())
        .fold(0.0, f64::max);

    let mut sup_difference: f64 = diff.max_abs_ctrl();
    for i in 0..=2000 {
        let x = i as f64 / 2000.0;
        sup_difference = sup_difference.max((f1.eval(x) - f2.eval(x)).abs());
    }

    let weight = inverse_weight_sup(set, l, l);
    if !weight.is_finite() {
        return Err(BernsteinError::BoundaryContact(l));
    }
    let q_table = q_polynomials(l);
    let m_k_l = weight
        * q_table
            .iter()
            .map(|(&(i, j), q)| {
                let m = i + j + 2;
                sup_on_set(q, set) * moment_constant(m) / delta.powi(2 * m as i32)
            })
            .sum::<f64>();
    let nuf = nu as f64;
    Ok(ComparisonGap {
        measured,
        bound: m_k_l * sup_difference / (nuf * nuf),
        m_k_l,
        sup_difference,
    })
}
