//! Hermite-type interpolation basis and Bernstein approximation with exact
//! jet matching at prescribed times.

use crate::bernstein::{bernstein_form, BernsteinError, CompactSet, FunctionOracle};
use crate::poly::{binomial, BernsteinPolynomial, UnivariatePolynomial};

/// Two times closer than this are treated as the same time.
const TIME_TOL: f64 = 1e-12;
/// Safety factor applied to grid maxima of the basis.
const M_SAFETY: f64 = 1.05;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum InterpError {
    #[error("invalid setup: {0}")]
    InvalidSetup(String),
    #[error("basis index (i = {i}, k = {k}) out of range")]
    IndexOutOfRange { i: usize, k: usize },
    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(f64),
    #[error("time {0} lies outside the smooth set")]
    TimeOutsideSmoothSet(f64),
    #[error(
        "no degree up to {nu_cap} met the target: residual {residual:.3e}, target {target:.3e}"
    )]
    NotAchieved {
        nu_cap: usize,
        residual: f64,
        target: f64,
    },
    #[error(transparent)]
    Bernstein(#[from] BernsteinError),
}

/// Interpolation times `a < t_0 < … < t_{r−1} < b` with a derivative order per time.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteSetup {
    times: Vec<f64>,
    orders: Vec<usize>,
    l: usize,
    interval: (f64, f64),
}

impl HermiteSetup {
    /// Uniform order `l` at every time.
    pub fn new(times: Vec<f64>, l: usize, interval: (f64, f64)) -> Result<Self, InterpError> {
        let orders = vec![l; times.len()];
        Self::validate(times, orders, l, interval)
    }

    /// Individual orders; `l` becomes their maximum.
    pub fn with_orders(
        times: Vec<f64>,
        orders: Vec<usize>,
        interval: (f64, f64),
    ) -> Result<Self, InterpError> {
        if orders.len() != times.len() {
            return Err(InterpError::InvalidSetup(format!(
                "{} orders for {} times",
                orders.len(),
                times.len()
            )));
        }
        let l = orders.iter().copied().max().unwrap_or(0);
        Self::validate(times, orders, l, interval)
    }

    /// Lowers the order at `time`, which must be one of the times.
    pub fn with_override(mut self, time: f64, order: usize) -> Result<Self, InterpError> {
        if order > self.l {
            return Err(InterpError::InvalidSetup(format!(
                "override {order} exceeds l = {}",
                self.l
            )));
        }
        let i = self
            .times
            .iter()
            .position(|&t| (t - time).abs() <= TIME_TOL)
            .ok_or_else(|| {
                InterpError::InvalidSetup(format!(
                    "override at {time} is not an interpolation time"
                ))
            })?;
        self.orders[i] = order;
        Ok(self)
    }

    fn validate(
        times: Vec<f64>,
        orders: Vec<usize>,
        l: usize,
        interval: (f64, f64),
    ) -> Result<Self, InterpError> {
        let (a, b) = interval;
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(InterpError::InvalidSetup(format!(
                "interval [{a}, {b}] is empty"
            )));
        }
        if times.is_empty() {
            return Err(InterpError::InvalidSetup("no interpolation times".into()));
        }
        if let Some(&t) = times.iter().find(|&&t| !(a < t && t < b)) {
            return Err(InterpError::InvalidSetup(format!(
                "time {t} not inside ({a}, {b})"
            )));
        }
        if times.windows(2).any(|w| !(w[1] - w[0] > TIME_TOL)) {
            return Err(InterpError::InvalidSetup(
                "times must be strictly increasing".into(),
            ));
        }
        Ok(Self {
            times,
            orders,
            l,
            interval,
        })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn r(&self) -> usize {
        self.times.len()
    }

    /// All `(i, k)` with `k ≤` the order at `t_i`.
    pub fn basis_indices(&self) -> Vec<(usize, usize)> {
        self.orders
            .iter()
            .enumerate()
            .flat_map(|(i, &o)| (0..=o).map(move |k| (i, k)))
            .collect()
    }
}

/// `P_ik` kept in factored form:
/// `c (t−t_i)^k Π_{j≠i} ((t−t_i)^{ℓ_i+1} − (t_j−t_i)^{ℓ_i+1})^{ℓ_j+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteBasisElement {
    center: f64,
    k: usize,
    step: usize,
    c: f64,
    /// `((t_j − t_i)^{ℓ_i+1}, ℓ_j + 1)` for `j ≠ i`.
    factors: Vec<(f64, usize)>,
    interval: (f64, f64),
}

/// Truncated product of two Taylor series.
fn series_mul(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    (0..n)
        .map(|m| (0..=m).map(|j| x[j] * y[m - j]).sum())
        .collect()
}

/// Taylor coefficients of `(s0 + h)^e` in `h`, truncated to `len` terms.
fn shifted_power_series(s0: f64, e: usize, len: usize) -> Vec<f64> {
    (0..len)
        .map(|j| {
            if j <= e {
                binomial(e, j) * s0.powi((e - j) as i32)
            } else {
                0.0
            }
        })
        .collect()
}

impl HermiteBasisElement {
    /// Element for time index `i` (0-based) and derivative order `k`.
    pub fn new(setup: &HermiteSetup, i: usize, k: usize) -> Result<Self, InterpError> {
        if i >= setup.r() || k > setup.orders[i] {
            return Err(InterpError::IndexOutOfRange { i, k });
        }
        let center = setup.times[i];
        let step = setup.orders[i] + 1;
        let mut factors = Vec::with_capacity(setup.r() - 1);
        let mut q0 = 1.0;
        for (j, &tj) in setup.times.iter().enumerate() {
            if j == i {
                continue;
            }
            let d = (tj - center).powi(step as i32);
            let p = setup.orders[j] + 1;
            q0 *= (-d).powi(p as i32);
            factors.push((d, p));
        }
        let kfact: f64 = (1..=k).map(|j| j as f64).product();
        Ok(Self {
            center,
            k,
            step,
            c: 1.0 / (kfact * q0),
            factors,
            interval: setup.interval,
        })
    }

    pub fn degree(&self) -> usize {
        self.k + self.step * self.factors.iter().map(|f| f.1).sum::<usize>()
    }

    pub fn eval(&self, t: f64) -> f64 {
        let s = t - self.center;
        let se = s.powi(self.step as i32);
        self.c
            * s.powi(self.k as i32)
            * self
                .factors
                .iter()
                .map(|&(d, p)| (se - d).powi(p as i32))
                .product::<f64>()
    }

    /// `P^{(m)}(t)` for `m = 0..=m_max`, from Taylor products of the factors.
    pub fn derivatives(&self, t: f64, m_max: usize) -> Vec<f64> {
        let len = m_max + 1;
        let s0 = t - self.center;
        let mut acc = shifted_power_series(s0, self.k, len);
        let se = shifted_power_series(s0, self.step, len);
        for &(d, p) in &self.factors {
            let mut factor = se.clone();
            factor[0] -= d;
            for _ in 0..p {
                acc = series_mul(&acc, &factor);
            }
        }
        let mut fact = 1.0;
        acc.iter()
            .enumerate()
            .map(|(m, a)| {
                if m > 0 {
                    fact *= m as f64;
                }
                self.c * a * fact
            })
            .collect()
    }

    /// Expanded monomial form. Loses accuracy once the degree passes a few dozen.
    pub fn to_monomial(&self) -> UnivariatePolynomial {
        let se = UnivariatePolynomial::shifted_power(self.center, self.step);
        let mut out = UnivariatePolynomial::shifted_power(self.center, self.k).scale(self.c);
        for &(d, p) in &self.factors {
            let factor = &se - &UnivariatePolynomial::constant(d);
            for _ in 0..p {
                out = &out * &factor;
            }
        }
        out
    }

    /// Exact Bernstein form on the setup interval, built factor by factor.
    pub fn to_bernstein(&self) -> BernsteinPolynomial {
        let (a, b) = self.interval;
        let se = UnivariatePolynomial::shifted_power(self.center, self.step);
        let mut out = BernsteinPolynomial::from_monomial(
            &UnivariatePolynomial::shifted_power(self.center, self.k).scale(self.c),
            a,
            b,
            self.k,
        );
        for &(d, p) in &self.factors {
            let factor = BernsteinPolynomial::from_monomial(
                &(&se - &UnivariatePolynomial::constant(d)),
                a,
                b,
                self.step,
            );
            for _ in 0..p {
                out = out.mul(&factor);
            }
        }
        out
    }
}

/// `P_ik` in the monomial basis, for time index `i` (0-based).
pub fn hermite_basis_polynomial(
    setup: &HermiteSetup,
    i: usize,
    k: usize,
) -> Result<UnivariatePolynomial, InterpError> {
    Ok(HermiteBasisElement::new(setup, i, k)?.to_monomial())
}

/// Every basis element of the setup, in [`HermiteSetup::basis_indices`] order.
pub fn hermite_basis(setup: &HermiteSetup) -> Vec<HermiteBasisElement> {
    setup
        .basis_indices()
        .into_iter()
        .map(|(i, k)| HermiteBasisElement::new(setup, i, k).expect("index from the setup"))
        .collect()
}

/// Size `M` of the basis and the Bernstein-stage tolerance `δ` it allows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrectionBudget {
    /// Sampled max of `‖P_ik‖_{[a,b]}` and `‖P_ik^{(m)}‖_{K′}`, `1 ≤ m ≤ ℓ`, times 1.05.
    pub m: f64,
    /// `ε / (1 + N M)` with `N` basis elements (`N = r(ℓ+1)` for uniform orders).
    pub delta: f64,
}

/// `K ∪ {t_i}`.
pub fn with_times(k: &CompactSet, times: &[f64]) -> CompactSet {
    let mut intervals = k.intervals().to_vec();
    intervals.extend(times.iter().filter(|&&t| !k.contains(t)).map(|&t| (t, t)));
    CompactSet::new(intervals)
}

pub fn correction_budget(
    setup: &HermiteSetup,
    eps: f64,
    k_prime: &CompactSet,
    grid: usize,
) -> CorrectionBudget {
    let basis = hermite_basis(setup);
    let (a, b) = setup.interval;
    let outer = CompactSet::interval(a, b).grid(grid);
    let inner = k_prime.grid(grid / 4 + 2);
    let mut m: f64 = 0.0;
    for p in &basis {
        m = outer.iter().map(|&t| p.eval(t).abs()).fold(m, f64::max);
        if setup.l > 0 {
            for &t in &inner {
                m = p.derivatives(t, setup.l)[1..]
                    .iter()
                    .map(|v| v.abs())
                    .fold(m, f64::max);
            }
        }
    }
    let m = m * M_SAFETY;
    CorrectionBudget {
        m,
        delta: eps / (1.0 + basis.len() as f64 * m),
    }
}

/// How the Bernstein degree is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NuRule {
    /// Smallest tried `ν` whose corrected `g` meets both error conclusions on the grid.
    #[default]
    Measured,
    /// Smallest tried `ν` whose Bernstein stage is within `δ` on `[a, b]` and `K′`.
    Budget,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpOptions {
    pub rule: NuRule,
    pub nu_start: usize,
    pub nu_cap: usize,
    /// Grid points for sup norms on `[a, b]`; each interval of `K` gets a quarter.
    pub grid: usize,
}

impl Default for InterpOptions {
    fn default() -> Self {
        Self {
            rule: NuRule::Measured,
            nu_start: 8,
            nu_cap: 4096,
            grid: 2001,
        }
    }
}

/// The corrected approximation `g = B_ν(f) + Σ b_ik P_ik` and its diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Interpolant {
    pub g: BernsteinPolynomial,
    /// Degree of the Bernstein stage.
    pub nu: usize,
    pub budget: CorrectionBudget,
    /// `((i, k), b_ik)`.
    pub coefficients: Vec<((usize, usize), f64)>,
    /// Grid max of `|f − B_ν f|` on `[a, b]` and `|f^{(k)} − B_ν^{(k)} f|` on `K′`.
    pub stage_residual: f64,
    /// Grid max of `|f − g|` on `[a, b]`.
    pub sup_error: f64,
    /// Grid max of `|f^{(k)} − g^{(k)}|` on `K′` over `1 ≤ k ≤ ℓ`.
    pub derivative_error: f64,
    /// Grid max of `|g − B_ν f|` on `[a, b]`.
    pub correction_sup: f64,
    /// Max of `|g^{(k)}(t_i) − f^{(k)}(t_i)|`.
    pub interpolation_residual: f64,
}

impl Interpolant {
    pub fn degree(&self) -> usize {
        self.g.degree()
    }
}

struct Trial {
    g: BernsteinPolynomial,
    coefficients: Vec<((usize, usize), f64)>,
    stage_residual: f64,
    sup_error: f64,
    derivative_error: f64,
    correction_sup: f64,
}

fn sup_derivative_gap(
    f: &FunctionOracle,
    p: &BernsteinPolynomial,
    l: usize,
    grid: &[f64],
) -> Result<f64, InterpError> {
    let mut worst: f64 = 0.0;
    for k in 1..=l {
        let dk = p.derivative(k);
        for &t in grid {
            worst = worst.max((f.derivative(k, t)? - dk.eval(t)).abs());
        }
    }
    Ok(worst)
}

fn trial(
    f: &FunctionOracle,
    setup: &HermiteSetup,
    basis: &[(usize, usize, BernsteinPolynomial)],
    nu: usize,
    outer: &[f64],
    inner: &[f64],
) -> Result<Trial, InterpError> {
    let bf = bernstein_form(f, nu, setup.interval)?;
    let mut coefficients = Vec::with_capacity(basis.len());
    let mut derivs = Vec::new();
    for &(i, k, _) in basis {
        if derivs.len() <= k {
            derivs.resize_with(k + 1, || None);
        }
        let dk = derivs[k].get_or_insert_with(|| bf.derivative(k));
        let t = setup.times[i];
        coefficients.push(((i, k), f.derivative(k, t)? - dk.eval(t)));
    }
    let top = basis
        .iter()
        .map(|b| b.2.degree())
        .max()
        .unwrap_or(0)
        .max(nu);
    let mut g = bf.elevate(top);
    let mut ctrl = g.ctrl().to_vec();
    for ((_, b), (_, _, p)) in coefficients.iter().zip(basis) {
        for (c, x) in ctrl.iter_mut().zip(p.elevate(top).ctrl()) {
            *c += b * x;
        }
    }
    let (a, bnd) = setup.interval;
    g = BernsteinPolynomial::new(ctrl, a, bnd);

    let sup_gap = |p: &BernsteinPolynomial| {
        outer
            .iter()
            .map(|&t| (f.eval(t) - p.eval(t)).abs())
            .fold(0.0, f64::max)
    };
    let stage_values = inner
        .iter()
        .map(|&t| (f.eval(t) - bf.eval(t)).abs())
        .fold(sup_gap(&bf), f64::max);
    let stage_residual = stage_values.max(sup_derivative_gap(f, &bf, setup.l, inner)?);
    let sup_error = sup_gap(&g);
    let derivative_error = sup_derivative_gap(f, &g, setup.l, inner)?;
    let correction_sup = outer
        .iter()
        .map(|&t| (g.eval(t) - bf.eval(t)).abs())
        .fold(0.0, f64::max);
    Ok(Trial {
        g,
        coefficients,
        stage_residual,
        sup_error,
        derivative_error,
        correction_sup,
    })
}

/// Approximates `f` on `[a, b]` within `eps`, with derivatives up to `ℓ` within
/// `eps` on `K`, and matches `f^{(k)}(t_i)` exactly for every `k` up to the
/// order at `t_i`.
pub fn approximate_with_interpolation(
    f: &FunctionOracle,
    setup: &HermiteSetup,
    eps: f64,
    k: &CompactSet,
    options: InterpOptions,
) -> Result<Interpolant, InterpError> {
    if !(eps > 0.0) {
        return Err(InterpError::NonPositiveTolerance(eps));
    }
    if let Some(&t) = setup.times.iter().find(|&&t| !f.is_smooth_at(t)) {
        return Err(InterpError::TimeOutsideSmoothSet(t));
    }
    if setup.l > 0 && !k.is_inside(f.smooth_set()) {
        return Err(BernsteinError::CompactNotInSmoothSet.into());
    }
    let k_prime = with_times(k, &setup.times);
    let budget = correction_budget(setup, eps, &k_prime, options.grid);
    let basis: Vec<_> = setup
        .basis_indices()
        .into_iter()
        .map(|(i, kk)| {
            (
                i,
                kk,
                HermiteBasisElement::new(setup, i, kk)
                    .expect("index from the setup")
                    .to_bernstein(),
            )
        })
        .collect();
    let (a, b) = setup.interval;
    let outer = CompactSet::interval(a, b).grid(options.grid);
    let inner = k_prime.grid(options.grid / 4 + 2);

    let mut nu = options.nu_start.max(1);
    let mut best = f64::INFINITY;
    let target = match options.rule {
        NuRule::Measured => eps,
        NuRule::Budget => budget.delta,
    };
    while nu <= options.nu_cap {
        let t = trial(f, setup, &basis, nu, &outer, &inner)?;
        let residual = match options.rule {
            NuRule::Measured => t.sup_error.max(t.derivative_error),
            NuRule::Budget => t.stage_residual,
        };
        best = best.min(residual);
        if residual < target {
            let mut interpolation_residual: f64 = 0.0;
            for &((i, kk), _) in &t.coefficients {
                let ti = setup.times[i];
                interpolation_residual = interpolation_residual
                    .max((t.g.derivative_at(kk, ti) - f.derivative(kk, ti)?).abs());
            }
            return Ok(Interpolant {
                g: t.g,
                nu,
                budget,
                coefficients: t.coefficients,
                stage_residual: t.stage_residual,
                sup_error: t.sup_error,
                derivative_error: t.derivative_error,
                correction_sup: t.correction_sup,
                interpolation_residual,
            });
        }
        nu *= 2;
    }
    Err(InterpError::NotAchieved {
        nu_cap: options.nu_cap,
        residual: best,
        target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kink() -> FunctionOracle {
        FunctionOracle::new(|x: f64| (x - 0.5).abs(), (0.0, 1.0)).with_derivatives(
            |k, x| match k {
                0 => (x - 0.5).abs(),
                1 => (x - 0.5).signum(),
                _ => 0.0,
            },
            vec![(-1.0, 0.5), (0.5, 2.0)],
        )
    }

    #[test]
    fn two_node_examples() {
        let s = HermiteSetup::new(vec![0.0, 1.0], 1, (-1.0, 2.0)).unwrap();
        // (t² − 1)²
        let p = hermite_basis_polynomial(&s, 0, 0).unwrap();
        assert_eq!(p.coeffs(), &[1.0, 0.0, -2.0, 0.0, 1.0]);
        // t (t² − 1)²
        let q = hermite_basis_polynomial(&s, 0, 1).unwrap();
        assert_eq!(q.coeffs(), &[0.0, 1.0, 0.0, -2.0, 0.0, 1.0]);
        assert_eq!(q.derivative(1).eval(0.0), 1.0);
        assert_eq!(
            hermite_basis_polynomial(&s, 2, 0),
            Err(InterpError::IndexOutOfRange { i: 2, k: 0 })
        );
        assert_eq!(
            hermite_basis_polynomial(&s, 0, 2),
            Err(InterpError::IndexOutOfRange { i: 0, k: 2 })
        );
    }

    #[test]
    fn single_node_order_zero_is_one() {
        let s = HermiteSetup::new(vec![0.4], 0, (0.0, 1.0)).unwrap();
        assert_eq!(hermite_basis_polynomial(&s, 0, 0).unwrap().coeffs(), &[1.0]);
    }

    #[test]
    fn setup_validation() {
        assert!(HermiteSetup::new(vec![0.5, 0.5], 1, (0.0, 1.0)).is_err());
        assert!(HermiteSetup::new(vec![0.0, 0.5], 1, (0.0, 1.0)).is_err());
        assert!(HermiteSetup::new(vec![], 1, (0.0, 1.0)).is_err());
        let s = HermiteSetup::new(vec![0.2, 0.6], 2, (0.0, 1.0)).unwrap();
        assert!(s.clone().with_override(0.6, 3).is_err());
        assert!(s.clone().with_override(0.3, 1).is_err());
        assert_eq!(s.with_override(0.6, 0).unwrap().basis_indices().len(), 4);
    }

    #[test]
    fn forms_agree() {
        let s = HermiteSetup::with_orders(vec![0.2, 0.5, 0.9], vec![1, 2, 0], (0.0, 1.0)).unwrap();
        for p in hermite_basis(&s) {
            let mono = p.to_monomial();
            let bern = p.to_bernstein();
            assert_eq!(bern.degree(), p.degree());
            for i in 0..=50 {
                let t = i as f64 / 50.0;
                let v = p.eval(t);
                assert!((bern.eval(t) - v).abs() < 1e-9 * (1.0 + v.abs()));
                assert!((mono.eval(t) - v).abs() < 1e-7 * (1.0 + v.abs()));
                let d = p.derivatives(t, 3);
                assert!((d[0] - v).abs() < 1e-9 * (1.0 + v.abs()));
                assert!((d[2] - bern.derivative_at(2, t)).abs() < 1e-7 * (1.0 + d[2].abs()));
            }
        }
    }

    #[test]
    fn linear_is_reproduced() {
        let f = FunctionOracle::polynomial(UnivariatePolynomial::new(vec![0.3, -2.0]), (0.0, 1.0));
        let s = HermiteSetup::new(vec![0.3, 0.8], 1, (0.0, 1.0)).unwrap();
        let g = approximate_with_interpolation(
            &f,
            &s,
            1e-3,
            &CompactSet::interval(0.2, 0.9),
            InterpOptions::default(),
        )
        .unwrap();
        assert_eq!(g.nu, 8);
        assert!(g.coefficients.iter().all(|(_, b)| b.abs() < 1e-12));
        assert!(g.sup_error < 1e-12);
    }

    #[test]
    fn kink_example() {
        let s = HermiteSetup::new(vec![0.25, 0.75], 1, (0.0, 1.0)).unwrap();
        let k = CompactSet::new(vec![(0.0, 0.35), (0.65, 1.0)]);
        let g = approximate_with_interpolation(&kink(), &s, 0.05, &k, InterpOptions::default())
            .unwrap();
        assert!(
            g.interpolation_residual <= 1e-9,
            "{}",
            g.interpolation_residual
        );
        assert!(g.sup_error < 0.05 && g.derivative_error < 0.05);
        assert!(g.degree() <= 4096);
    }

    #[test]
    fn errors() {
        let s = HermiteSetup::new(vec![0.5], 1, (0.0, 1.0)).unwrap();
        let k = CompactSet::interval(0.1, 0.3);
        let opts = InterpOptions::default();
        assert_eq!(
            approximate_with_interpolation(&kink(), &s, 0.0, &k, opts),
            Err(InterpError::NonPositiveTolerance(0.0))
        );
        assert_eq!(
            approximate_with_interpolation(&kink(), &s, 0.1, &k, opts),
            Err(InterpError::TimeOutsideSmoothSet(0.5))
        );
        let s = HermiteSetup::new(vec![0.25], 1, (0.0, 1.0)).unwrap();
        let tight = InterpOptions { nu_cap: 16, ..opts };
        assert!(matches!(
            approximate_with_interpolation(
                &kink(),
                &s,
                1e-6,
                &CompactSet::interval(0.1, 0.3),
                tight
            ),
            Err(InterpError::NotAchieved { nu_cap: 16, .. })
        ));
    }

    #[test]
    fn budget_rule_keeps_the_correction_small() {
        let f = FunctionOracle::new(|x: f64| x.sin(), (0.0, 1.0)).with_derivatives(
            |k, x| [x.sin(), x.cos(), -x.sin(), -x.cos()][k % 4],
            vec![(-1.0, 2.0)],
        );
        let s = HermiteSetup::new(vec![0.3, 0.7], 1, (0.0, 1.0)).unwrap();
        let eps = 0.05;
        let opts = InterpOptions {
            rule: NuRule::Budget,
            ..Default::default()
        };
        let g = approximate_with_interpolation(&f, &s, eps, &CompactSet::interval(0.2, 0.8), opts)
            .unwrap();
        let n = 4.0;
        assert!(g.stage_residual < g.budget.delta);
        assert!(g.correction_sup <= n * g.budget.m * g.budget.delta);
        // δ is chosen so that N M δ = ε − δ.
        assert!((n * g.budget.m * g.budget.delta - (eps - g.budget.delta)).abs() < 1e-15);
        assert!(g.sup_error < eps);
    }
}
