use serde::{Deserialize, Serialize};

use super::bernstein_form::BernsteinPolynomial;
use super::monomial::UnivariatePolynomial;
use crate::geometry::AffineFunctional;

/// Operations shared by the monomial and Bernstein representations.
pub trait Univariate: Clone {
    fn eval(&self, t: f64) -> f64;
    fn derivative(&self, order: usize) -> Self;
    fn degree(&self) -> usize;
    fn scale(&self, s: f64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn add_constant(&self, c: f64) -> Self;

    /// Taylor coefficients `p^{(m)}(t0)/m!` for `m = 0..=order`.
    fn taylor_coefficients(&self, t0: f64, order: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(order + 1);
        let mut d = self.clone();
        let mut fact = 1.0;
        for m in 0..=order {
            if m > 0 {
                d = d.derivative(1);
                fact *= m as f64;
            }
            out.push(d.eval(t0) / fact);
        }
        out
    }
}

impl Univariate for UnivariatePolynomial {
    fn eval(&self, t: f64) -> f64 {
        UnivariatePolynomial::eval(self, t)
    }
    fn derivative(&self, order: usize) -> Self {
        UnivariatePolynomial::derivative(self, order)
    }
    fn degree(&self) -> usize {
        UnivariatePolynomial::degree(self)
    }
    fn scale(&self, s: f64) -> Self {
        UnivariatePolynomial::scale(self, s)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn add_constant(&self, c: f64) -> Self {
        self + &UnivariatePolynomial::constant(c)
    }
    fn taylor_coefficients(&self, t0: f64, order: usize) -> Vec<f64> {
        let mut shifted = self.taylor_shift(t0);
        shifted.resize(order + 1, 0.0);
        shifted
    }
}

impl Univariate for BernsteinPolynomial {
    fn eval(&self, t: f64) -> f64 {
        BernsteinPolynomial::eval(self, t)
    }
    fn derivative(&self, order: usize) -> Self {
        BernsteinPolynomial::derivative(self, order)
    }
    fn degree(&self) -> usize {
        BernsteinPolynomial::degree(self)
    }
    fn scale(&self, s: f64) -> Self {
        BernsteinPolynomial::scale(self, s)
    }
    fn add(&self, other: &Self) -> Self {
        BernsteinPolynomial::add(self, other)
    }
    fn add_constant(&self, c: f64) -> Self {
        BernsteinPolynomial::add_constant(self, c)
    }
}

/// An n-tuple of polynomials on a common time interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialPath<P = UnivariatePolynomial> {
    components: Vec<P>,
    domain: (f64, f64),
}

/// Truncated Taylor expansion of a path: `coefficients[m] = α^{(m)}(t0)/m!`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Jet {
    pub basepoint: f64,
    pub coefficients: Vec<Vec<f64>>,
}

impl Jet {
    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// `m`-th derivative vector, `m! · coefficients[m]`.
    pub fn derivative(&self, m: usize) -> Vec<f64> {
        let fact: f64 = (1..=m).map(|j| j as f64).product();
        self.coefficients[m].iter().map(|c| c * fact).collect()
    }

    /// Rebuilds the monomial path `Σ c_m (t − t0)^m`.
    pub fn to_path(&self, domain: (f64, f64)) -> PolynomialPath {
        let n = self.coefficients[0].len();
        let components = (0..n)
            .map(|c| {
                let local =
                    UnivariatePolynomial::new(self.coefficients.iter().map(|v| v[c]).collect());
                local.compose_linear(1.0, -self.basepoint)
            })
            .collect();
        PolynomialPath::new(components, domain)
    }

    /// Largest componentwise difference between two jets of equal shape.
    pub fn max_abs_difference(&self, other: &Jet) -> f64 {
        self.coefficients
            .iter()
            .zip(&other.coefficients)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max)
    }
}

impl<P: Univariate> PolynomialPath<P> {
    pub fn new(components: Vec<P>, domain: (f64, f64)) -> Self {
        assert!(
            !components.is_empty(),
            "a path needs at least one component"
        );
        Self { components, domain }
    }

    pub fn components(&self) -> &[P] {
        &self.components
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn degree(&self) -> usize {
        self.components
            .iter()
            .map(Univariate::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, t: f64) -> Vec<f64> {
        self.components.iter().map(|p| p.eval(t)).collect()
    }

    pub fn derivative(&self, order: usize) -> Self {
        Self::new(
            self.components
                .iter()
                .map(|p| p.derivative(order))
                .collect(),
            self.domain,
        )
    }

    pub fn taylor_jet(&self, t0: f64, order: usize) -> Jet {
        let per_component: Vec<Vec<f64>> = self
            .components
            .iter()
            .map(|p| p.taylor_coefficients(t0, order))
            .collect();
        let coefficients = (0..=order)
            .map(|m| per_component.iter().map(|c| c[m]).collect())
            .collect();
        Jet {
            basepoint: t0,
            coefficients,
        }
    }
}

/// `h ∘ path = b + Σ a_k · path_k`.
pub fn compose_affine<P: Univariate>(
    h: &AffineFunctional,
    path: &PolynomialPath<P>,
) -> Result<P, DimensionMismatch> {
    if h.dim() != path.dim() {
        return Err(DimensionMismatch {
            expected: h.dim(),
            found: path.dim(),
        });
    }
    let mut acc = path.components[0].scale(h.gradient()[0]);
    for (a, p) in h.gradient().iter().zip(&path.components).skip(1) {
        acc = acc.add(&p.scale(*a));
    }
    Ok(acc.add_constant(h.offset()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("dimension mismatch: functional has {expected} coordinates, path has {found}")]
pub struct DimensionMismatch {
    pub expected: usize,
    pub found: usize,
}
