//! Bernstein operators, their derivative identities and the explicit
//! error-bound constants for functions that are smooth only on part of `[0, 1]`.

mod constants;
mod divided;
mod moments;
mod oracle;

use crate::poly::{basis_values, BernsteinPolynomial, UnivariatePolynomial};

pub use constants::{
    compact_error_bound, comparison_gap, smooth_error_bound, CompactBoundConstants, ComparisonGap,
    ConstantOptions, DerivativeNorms,
};
pub use divided::{bnu_st, divided_difference};
pub use moments::{
    binomial_moment, central_moment_polynomials, moment_constant, q_polynomials, tail_constant,
    tail_sum, QTable,
};
pub use oracle::{CompactSet, FunctionOracle};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BernsteinError {
    #[error("Bernstein degree must be at least 1")]
    ZeroDegree,
    #[error("interval [{0}, {1}] is empty")]
    EmptyInterval(f64, f64),
    #[error("derivative order {k} exceeds degree {nu}")]
    OrderExceedsDegree { k: usize, nu: usize },
    #[error("no derivative of order {order} available at {x}")]
    MissingDerivative { order: usize, x: f64 },
    #[error("point {0} lies outside the smooth set")]
    OutsideSmoothSet(f64),
    #[error("norm of order {0} missing")]
    MissingNorm(usize),
    #[error("compact set touches {{0, 1}} and the weight 1/(y(1−y))^{0} cannot be cancelled")]
    BoundaryContact(usize),
    #[error("compact set is not inside the smooth set")]
    CompactNotInSmoothSet,
    #[error("operation requires the oracle domain [0, 1]")]
    UnitIntervalRequired,
    #[error("{0} exceeds the available degree {1}")]
    Degree(usize, usize),
}

/// Bernstein polynomial of `f` on `[a, b]` in Bernstein form.
pub fn bernstein_form(
    f: &FunctionOracle,
    nu: usize,
    interval: (f64, f64),
) -> Result<BernsteinPolynomial, BernsteinError> {
    let (a, b) = interval;
    if nu == 0 {
        return Err(BernsteinError::ZeroDegree);
    }
    if !(b > a) {
        return Err(BernsteinError::EmptyInterval(a, b));
    }
    Ok(BernsteinPolynomial::from_samples(|x| f.eval(x), nu, a, b))
}

/// Bernstein polynomial of `f` on `[a, b]` expanded in the monomial basis.
///
/// The expansion loses accuracy quickly above degree 60; keep the Bernstein
/// form from [`bernstein_form`] for evaluation at high degree.
pub fn bernstein_poly(
    f: &FunctionOracle,
    nu: usize,
    interval: (f64, f64),
) -> Result<UnivariatePolynomial, BernsteinError> {
    Ok(bernstein_form(f, nu, interval)?.to_monomial())
}

/// `B_ν^{(k)}(f)(x)` through k-th forward differences of the samples.
pub fn bernstein_derivative_direct(
    f: &FunctionOracle,
    nu: usize,
    k: usize,
    x: f64,
) -> Result<f64, BernsteinError> {
    if nu == 0 {
        return Err(BernsteinError::ZeroDegree);
    }
    if k > nu {
        return Err(BernsteinError::OrderExceedsDegree { k, nu });
    }
    let (a, b) = f.domain();
    let h = b - a;
    let mut diffs: Vec<f64> = (0..=nu)
        .map(|i| f.eval(a + h * i as f64 / nu as f64))
        .collect();
    for _ in 0..k {
        diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
    }
    let falling: f64 = ((nu - k + 1)..=nu).map(|j| j as f64).product();
    let basis = basis_values(nu - k, (x - a) / h);
    let sum: f64 = diffs.iter().zip(&basis).map(|(d, w)| d * w).sum();
    Ok(falling * sum / h.powi(k as i32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn square() -> FunctionOracle {
        FunctionOracle::polynomial(UnivariatePolynomial::monomial(1.0, 2), (0.0, 1.0))
    }

    #[test]
    fn operator_examples() {
        let id = FunctionOracle::polynomial(UnivariatePolynomial::monomial(1.0, 1), (0.0, 1.0));
        let p = bernstein_poly(&id, 5, (0.0, 1.0)).unwrap();
        assert_relative_eq!(p.coeff(1), 1.0, epsilon = 1e-12);
        assert!(p.coeff(0).abs() < 1e-12 && p.degree() <= 1);

        let one = FunctionOracle::new(|_| 1.0, (0.0, 1.0));
        for nu in [1, 7, 30] {
            let p = bernstein_poly(&one, nu, (0.0, 1.0)).unwrap();
            assert_eq!(p.degree(), 0);
            assert_relative_eq!(p.coeff(0), 1.0, epsilon = 1e-12);
        }

        // x² + x(1−x)/4 = x/4 + 3x²/4
        let p = bernstein_poly(&square(), 4, (0.0, 1.0)).unwrap();
        assert_relative_eq!(p.coeff(1), 0.25, epsilon = 1e-12);
        assert_relative_eq!(p.coeff(2), 0.75, epsilon = 1e-12);

        assert_eq!(
            bernstein_poly(&square(), 0, (0.0, 1.0)),
            Err(BernsteinError::ZeroDegree)
        );
        assert!(bernstein_poly(&square(), 3, (1.0, 1.0)).is_err());
    }

    #[test]
    fn rescaled_interval_interpolates_endpoints() {
        let f = FunctionOracle::new(|x: f64| x.sin(), (-1.0, 2.0));
        let p = bernstein_form(&f, 17, (-1.0, 2.0)).unwrap();
        assert_relative_eq!(p.eval(-1.0), (-1.0f64).sin(), epsilon = 1e-12);
        assert_relative_eq!(p.eval(2.0), 2.0f64.sin(), epsilon = 1e-12);
    }

    #[test]
    fn direct_derivative_examples() {
        let id = FunctionOracle::polynomial(UnivariatePolynomial::monomial(1.0, 1), (0.0, 1.0));
        for x in [0.0, 0.3, 1.0] {
            assert_relative_eq!(
                bernstein_derivative_direct(&id, 6, 1, x).unwrap(),
                1.0,
                epsilon = 1e-12
            );
        }
        assert_relative_eq!(
            bernstein_derivative_direct(&square(), 4, 1, 0.0).unwrap(),
            0.25,
            epsilon = 1e-14
        );
        let f = FunctionOracle::new(|x: f64| (x - 0.5).abs(), (0.0, 1.0));
        let direct = bernstein_derivative_direct(&f, 9, 0, 0.37).unwrap();
        let value = bernstein_form(&f, 9, (0.0, 1.0)).unwrap().eval(0.37);
        assert_relative_eq!(direct, value, epsilon = 1e-14);
        assert!(bernstein_derivative_direct(&f, 3, 4, 0.1).is_err());
    }
}
