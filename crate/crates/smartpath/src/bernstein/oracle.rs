use std::fmt;
use std::sync::Arc;

use super::BernsteinError;
use crate::poly::UnivariatePolynomial;

type ValueFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type DerivativeFn = Arc<dyn Fn(usize, f64) -> f64 + Send + Sync>;

/// A continuous function on `[a, b]`, optionally with derivatives of every
/// order on an open set `Ω` given as a finite union of open intervals.
#[derive(Clone)]
pub struct FunctionOracle {
    eval: ValueFn,
    derivative: Option<DerivativeFn>,
    domain: (f64, f64),
    smooth_set: Vec<(f64, f64)>,
}

impl fmt::Debug for FunctionOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionOracle")
            .field("domain", &self.domain)
            .field("smooth_set", &self.smooth_set)
            .field("has_derivatives", &self.derivative.is_some())
            .finish()
    }
}

impl FunctionOracle {
    pub fn new(eval: impl Fn(f64) -> f64 + Send + Sync + 'static, domain: (f64, f64)) -> Self {
        Self {
            eval: Arc::new(eval),
            derivative: None,
            domain,
            smooth_set: Vec::new(),
        }
    }

    /// Attaches `derivative(order, x)`, valid on the open intervals of `smooth_set`.
    pub fn with_derivatives(
        mut self,
        derivative: impl Fn(usize, f64) -> f64 + Send + Sync + 'static,
        smooth_set: Vec<(f64, f64)>,
    ) -> Self {
        self.derivative = Some(Arc::new(derivative));
        self.smooth_set = smooth_set;
        self
    }

    /// A polynomial, smooth on the whole line.
    pub fn polynomial(p: UnivariatePolynomial, domain: (f64, f64)) -> Self {
        let value = p.clone();
        Self::new(move |x| value.eval(x), domain).with_derivatives(
            move |k, x| p.derivative(k).eval(x),
            vec![(f64::NEG_INFINITY, f64::INFINITY)],
        )
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn smooth_set(&self) -> &[(f64, f64)] {
        &self.smooth_set
    }

    pub fn is_smooth_at(&self, x: f64) -> bool {
        self.derivative.is_some() && self.smooth_set.iter().any(|&(a, b)| a < x && x < b)
    }

    pub fn derivative(&self, order: usize, x: f64) -> Result<f64, BernsteinError> {
        if order == 0 {
            return Ok(self.eval(x));
        }
        match &self.derivative {
            None => Err(BernsteinError::MissingDerivative { order, x }),
            Some(_) if !self.is_smooth_at(x) => Err(BernsteinError::OutsideSmoothSet(x)),
            Some(d) => Ok(d(order, x)),
        }
    }

    /// Distance from `K` to `[a, b] ∖ Ω`, infinite when `Ω` covers the domain.
    pub fn smooth_margin(&self, k: &CompactSet) -> f64 {
        let (a, b) = self.domain;
        let mut gaps: Vec<(f64, f64)> = Vec::new();
        let mut cursor = a;
        let mut pieces = self.smooth_set.clone();
        pieces.sort_by(|x, y| x.0.total_cmp(&y.0));
        for (lo, hi) in pieces {
            // Open pieces leave their endpoints uncovered.
            if lo >= cursor {
                gaps.push((cursor, lo.min(b)));
            }
            cursor = cursor.max(hi);
        }
        if cursor <= b {
            gaps.push((cursor, b));
        }
        let mut margin = f64::INFINITY;
        for &(lo, hi) in &gaps {
            if hi < a || lo > b {
                continue;
            }
            for &(c, d) in k.intervals() {
                let dist = if d < lo {
                    lo - d
                } else if c > hi {
                    c - hi
                } else {
                    0.0
                };
                margin = margin.min(dist);
            }
        }
        margin
    }
}

/// A finite union of closed intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct CompactSet {
    intervals: Vec<(f64, f64)>,
}

impl CompactSet {
    pub fn new(mut intervals: Vec<(f64, f64)>) -> Self {
        assert!(
            !intervals.is_empty(),
            "compact set needs at least one interval"
        );
        assert!(
            intervals.iter().all(|&(a, b)| a <= b),
            "interval endpoints out of order"
        );
        intervals.sort_by(|x, y| x.0.total_cmp(&y.0));
        Self { intervals }
    }

    pub fn interval(a: f64, b: f64) -> Self {
        Self::new(vec![(a, b)])
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|&(a, b)| a <= x && x <= b)
    }

    pub fn min(&self) -> f64 {
        self.intervals[0].0
    }

    pub fn max(&self) -> f64 {
        self.intervals
            .iter()
            .map(|i| i.1)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// `points` equispaced samples per interval, endpoints included.
    pub fn grid(&self, points: usize) -> Vec<f64> {
        let points = points.max(2);
        self.intervals
            .iter()
            .flat_map(|&(a, b)| {
                (0..points).map(move |i| a + (b - a) * i as f64 / (points - 1) as f64)
            })
            .collect()
    }

    /// Intervals grown by `r` on both sides and clipped to `[lo, hi]`.
    pub fn inflate(&self, r: f64, lo: f64, hi: f64) -> Self {
        Self::new(
            self.intervals
                .iter()
                .map(|&(a, b)| ((a - r).max(lo), (b + r).min(hi)))
                .collect(),
        )
    }

    pub fn is_inside(&self, open: &[(f64, f64)]) -> bool {
        self.intervals
            .iter()
            .all(|&(a, b)| open.iter().any(|&(c, d)| c < a && b < d))
    }
}
