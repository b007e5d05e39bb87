use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Relative threshold below which trailing coefficients are treated as zero.
pub const TRIM_TOL: f64 = 1e-12;

/// Polynomial in the monomial basis, `coeffs[k]` multiplies `t^k`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct UnivariatePolynomial {
    coeffs: Vec<f64>,
}

/// Side of a base point along which a one-sided expansion is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// Leading term of `p(t0 ± τ) = coeff·τ^order + O(τ^{order+1})`.
///
/// `order` is `None` for the zero polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeadingTerm {
    pub order: Option<usize>,
    pub sign: i8,
    pub coeff: f64,
}

impl UnivariatePolynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = Self { coeffs };
        p.normalize();
        p
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// `c·t^k`.
    pub fn monomial(c: f64, k: usize) -> Self {
        let mut coeffs = vec![0.0; k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `(t − t0)^k`.
    pub fn shifted_power(t0: f64, k: usize) -> Self {
        let base = Self::new(vec![-t0, 1.0]);
        let mut out = Self::constant(1.0);
        for _ in 0..k {
            out = &out * &base;
        }
        out
    }

    fn normalize(&mut self) {
        let scale = self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
        if scale == 0.0 || !scale.is_finite() {
            if scale == 0.0 {
                self.coeffs.clear();
            }
            return;
        }
        while let Some(&last) = self.coeffs.last() {
            if last.abs() <= TRIM_TOL * scale {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    pub fn derivative(&self, order: usize) -> Self {
        if order == 0 {
            return self.clone();
        }
        if order > self.degree() || self.is_zero() {
            return Self::zero();
        }
        let coeffs = (order..self.coeffs.len())
            .map(|k| {
                let falling: f64 = ((k - order + 1)..=k).map(|j| j as f64).product();
                falling * self.coeffs[k]
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Coefficients of `q(τ) = p(t0 + τ)` by repeated synthetic division.
    pub fn taylor_shift(&self, t0: f64) -> Vec<f64> {
        let mut work = self.coeffs.clone();
        let n = work.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                work[j] += t0 * work[j + 1];
            }
        }
        work
    }

    /// `p(a·t + b)`.
    pub fn compose_linear(&self, a: f64, b: f64) -> Self {
        let shifted = self.taylor_shift(b);
        let mut pow = 1.0;
        let coeffs = shifted
            .into_iter()
            .map(|c| {
                let v = c * pow;
                pow *= a;
                v
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn one_sided_leading_term(&self, t0: f64, side: Side) -> LeadingTerm {
        if self.is_zero() {
            return LeadingTerm {
                order: None,
                sign: 0,
                coeff: 0.0,
            };
        }
        let shifted = self.taylor_shift(t0);
        let scale = shifted.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
        for (k, &c) in shifted.iter().enumerate() {
            if c.abs() > TRIM_TOL * scale {
                let c = match side {
                    Side::Right => c,
                    Side::Left if k % 2 == 1 => -c,
                    Side::Left => c,
                };
                return LeadingTerm {
                    order: Some(k),
                    sign: if c > 0.0 { 1 } else { -1 },
                    coeff: c,
                };
            }
        }
        LeadingTerm {
            order: None,
            sign: 0,
            coeff: 0.0,
        }
    }

    /// Largest |coefficient|.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }
}

impl fmt::Display for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}·t")?,
                _ => write!(f, "{c}·t^{k}")?,
            }
        }
        Ok(())
    }
}

fn zip_with(a: &[f64], b: &[f64], op: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| {
            op(
                a.get(k).copied().unwrap_or(0.0),
                b.get(k).copied().unwrap_or(0.0),
            )
        })
        .collect()
}

impl Add for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn add(self, rhs: Self) -> UnivariatePolynomial {
        UnivariatePolynomial::new(zip_with(&self.coeffs, &rhs.coeffs, |x, y| x + y))
    }
}

impl Sub for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn sub(self, rhs: Self) -> UnivariatePolynomial {
        UnivariatePolynomial::new(zip_with(&self.coeffs, &rhs.coeffs, |x, y| x - y))
    }
}

impl Mul for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn mul(self, rhs: Self) -> UnivariatePolynomial {
        if self.is_zero() || rhs.is_zero() {
            return UnivariatePolynomial::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UnivariatePolynomial::new(out)
    }
}

impl Neg for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn neg(self) -> UnivariatePolynomial {
        self.scale(-1.0)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UnivariatePolynomial {
            type Output = UnivariatePolynomial;
            fn $m(self, rhs: Self) -> UnivariatePolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_examples() {
        assert_eq!(UnivariatePolynomial::new(vec![1.0, 2.0]).eval(3.0), 7.0);
        assert_eq!(UnivariatePolynomial::zero().eval(-4.5), 0.0);
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = UnivariatePolynomial::new(vec![1.0, 2.0, 0.0, 1e-20]);
        assert_eq!(p.coeffs(), &[1.0, 2.0]);
        assert_eq!(p.degree(), 1);
        assert!(UnivariatePolynomial::new(vec![0.0, 0.0]).is_zero());
    }

    #[test]
    fn derivative_examples() {
        let t3 = UnivariatePolynomial::monomial(1.0, 3);
        assert_eq!(t3.derivative(1).coeffs(), &[0.0, 0.0, 3.0]);
        assert!(t3.derivative(4).is_zero());
        let p = UnivariatePolynomial::new(vec![1.0, 0.0, -2.0, 0.0, 1.0]); // (t²−1)²
        assert_eq!(p.derivative(1).eval(0.0), 0.0);
    }

    #[test]
    fn leading_term_examples() {
        let t2 = UnivariatePolynomial::monomial(1.0, 2);
        assert_eq!(
            t2.one_sided_leading_term(0.0, Side::Right),
            LeadingTerm {
                order: Some(2),
                sign: 1,
                coeff: 1.0
            }
        );
        let t3 = UnivariatePolynomial::monomial(1.0, 3);
        assert_eq!(
            t3.one_sided_leading_term(0.0, Side::Left),
            LeadingTerm {
                order: Some(3),
                sign: -1,
                coeff: -1.0
            }
        );
        let p = UnivariatePolynomial::new(vec![1.0, 0.0, 0.0, -1.0]);
        let lt = p.one_sided_leading_term(1.0, Side::Right);
        assert_eq!((lt.order, lt.sign, lt.coeff), (Some(1), -1, -3.0));
        let z = UnivariatePolynomial::zero().one_sided_leading_term(0.0, Side::Right);
        assert_eq!((z.order, z.sign), (None, 0));
    }

    #[test]
    fn shift_and_compose() {
        let p = UnivariatePolynomial::new(vec![3.0, -2.0, 1.0]); // (t−1)²+2
        assert_eq!(p.taylor_shift(1.0), vec![2.0, 0.0, 1.0]);
        let q = p.compose_linear(2.0, 1.0);
        for &t in &[-1.0, 0.0, 0.5, 2.0] {
            assert!((q.eval(t) - p.eval(2.0 * t + 1.0)).abs() < 1e-12);
        }
    }
}
