//! Convergence table of Bernstein derivatives against the analytic bounds.

use smartpath::bernstein::{
    bernstein_form, compact_error_bound, smooth_error_bound, BernsteinError, CompactBoundConstants,
    CompactSet, ConstantOptions, DerivativeNorms, FunctionOracle,
};
use smartpath::poly::UnivariatePolynomial;

use crate::artifacts::fmt_f64;

pub const DEGREES: [usize; 6] = [10, 20, 40, 80, 160, 320];
const GRID: usize = 1001;
/// Round-off allowance, times `ν^ℓ`, added to the analytic bound so that
/// bounds attained with equality still cover the computed error.
const SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct RateRow {
    pub function: &'static str,
    pub l: usize,
    pub nu: usize,
    pub measured: f64,
    pub bound: f64,
}

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

fn power(k: usize) -> FunctionOracle {
    FunctionOracle::polynomial(UnivariatePolynomial::monomial(1.0, k), (0.0, 1.0))
}

/// Grid maxima of the error and the bound, after checking the bound pointwise.
fn row(
    function: &'static str,
    f: &FunctionOracle,
    l: usize,
    nu: usize,
    grid: &[f64],
    bound_at: impl Fn(f64) -> Result<f64, BernsteinError>,
) -> Result<RateRow, String> {
    let b = bernstein_form(f, nu, (0.0, 1.0))
        .map_err(|e| e.to_string())?
        .derivative(l);
    let slack = SLACK * (nu as f64).powi(l as i32);
    let (mut measured, mut bound) = (0.0_f64, 0.0_f64);
    for &x in grid {
        let err = (b.eval(x) - f.derivative(l, x).map_err(|e| e.to_string())?).abs();
        let bx = bound_at(x).map_err(|e| e.to_string())?;
        let bx = bx + slack;
        if err > bx {
            return Err(format!(
                "{function}, l = {l}, nu = {nu}: error {err} exceeds bound {bx} at x = {x}"
            ));
        }
        measured = measured.max(err);
        bound = bound.max(bx);
    }
    Ok(RateRow {
        function,
        l,
        nu,
        measured,
        bound,
    })
}

/// The built-in suite: `x`, `x²`, `x⁴` on `[0, 1]` and `|x − 1/2|` on `[0, 0.3]`.
pub fn rate_table() -> Result<Vec<RateRow>, String> {
    let unit = CompactSet::interval(0.0, 1.0);
    let mut rows = Vec::new();
    for (name, k) in [("x", 1), ("x^2", 2), ("x^4", 4)] {
        let f = power(k);
        let grid = unit.grid(GRID);
        for l in 0..=2 {
            let norms =
                DerivativeNorms::estimate(&f, l..=l + 2, &unit, GRID).map_err(|e| e.to_string())?;
            for nu in DEGREES {
                rows.push(row(name, &f, l, nu, &grid, |x| {
                    smooth_error_bound(l, nu, x, &norms)
                })?);
            }
        }
    }
    let f = kink();
    let set = CompactSet::interval(0.0, 0.3);
    let grid = set.grid(GRID);
    for l in 0..=1 {
        let consts = CompactBoundConstants::compute(&f, l, &set, ConstantOptions::default())
            .map_err(|e| e.to_string())?;
        let norms =
            DerivativeNorms::estimate(&f, l..=l + 3, &set, GRID).map_err(|e| e.to_string())?;
        for nu in DEGREES {
            rows.push(row("abs(x-1/2)", &f, l, nu, &grid, |x| {
                compact_error_bound(&f, l, nu, x, &norms, &consts)
            })?);
        }
    }
    Ok(rows)
}

pub fn rates_csv(rows: &[RateRow]) -> String {
    let mut out = String::from("function,l,nu,measured,bound\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.function,
            r.l,
            r.nu,
            fmt_f64(r.measured),
            fmt_f64(r.bound)
        ));
    }
    out
}
