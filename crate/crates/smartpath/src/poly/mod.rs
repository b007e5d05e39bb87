//! Univariate polynomials in monomial and Bernstein form, vector-valued paths
//! and certified range bounds.

mod bernstein_form;
pub mod bounds;
mod monomial;
mod path;

pub use bernstein_form::{basis_values, binomial, BernsteinPolynomial};
pub use monomial::{LeadingTerm, Side, UnivariatePolynomial, TRIM_TOL};
pub use path::{compose_affine, DimensionMismatch, Jet, PolynomialPath, Univariate};
