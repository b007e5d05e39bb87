//! Small linear programs over halfspace systems.

use minilp::{ComparisonOp, OptimizationDirection, Problem};
use nalgebra::{DMatrix, DVector};

use super::{AffineFunctional, ConvexPolyhedron, GeometryError, CLOSURE_TOL};

/// Upper cap on margins, so unbounded regions still yield a finite witness.
const MARGIN_CAP: f64 = 1e6;

/// Maximizes `s` subject to `h_j(x) ≥ s` for `j` in `lifted` and `h_j(x) ≥ 0`
/// for the rest. Returns the optimal point and `s`.
fn max_margin(
    constraints: &[AffineFunctional],
    lifted: &[bool],
    dim: usize,
) -> Result<(Vec<f64>, f64), GeometryError> {
    let mut lp = Problem::new(OptimizationDirection::Maximize);
    let xs: Vec<_> = (0..dim)
        .map(|_| lp.add_var(0.0, (f64::NEG_INFINITY, f64::INFINITY)))
        .collect();
    let s = lp.add_var(1.0, (-MARGIN_CAP, MARGIN_CAP));
    for (h, &lift) in constraints.iter().zip(lifted) {
        let mut expr: Vec<_> = xs.iter().zip(h.gradient()).map(|(&v, &a)| (v, a)).collect();
        if lift {
            expr.push((s, -1.0));
        }
        lp.add_constraint(expr, ComparisonOp::Ge, -h.offset());
    }
    let sol = lp.solve().map_err(|e| GeometryError::Lp(e.to_string()))?;
    let x: Vec<f64> = xs.iter().map(|&v| sol[v]).collect();
    let x = polish(constraints, lifted, &x, sol[s]).unwrap_or(x);
    Ok((x.clone(), margin(constraints, lifted, &x)))
}

/// Smallest lifted constraint value at `x`, capped like the LP variable.
fn margin(constraints: &[AffineFunctional], lifted: &[bool], x: &[f64]) -> f64 {
    constraints
        .iter()
        .zip(lifted)
        .filter(|(_, &lift)| lift)
        .map(|(h, _)| h.eval(x))
        .fold(MARGIN_CAP, f64::min)
}

/// The simplex answer is only accurate to its pivot tolerance. Re-solves the
/// constraints active at `(x, s)` in the least-squares sense and keeps the
/// result when it is feasible and its margin is no worse.
fn polish(
    constraints: &[AffineFunctional],
    lifted: &[bool],
    x: &[f64],
    s: f64,
) -> Option<Vec<f64>> {
    const ACTIVE: f64 = 1e-5;
    let dim = x.len();
    let rows: Vec<(&AffineFunctional, bool)> = constraints
        .iter()
        .zip(lifted)
        .filter(|(h, &lift)| h.eval(x) - if lift { s } else { 0.0 } <= ACTIVE)
        .map(|(h, &lift)| (h, lift))
        .collect();
    if rows.len() < dim + 1 {
        return None;
    }
    let a = DMatrix::from_fn(rows.len(), dim + 1, |r, c| match c {
        c if c < dim => rows[r].0.gradient()[c],
        _ => -f64::from(u8::from(rows[r].1)),
    });
    let b = DVector::from_fn(rows.len(), |r, _| -rows[r].0.offset());
    let sol = a.svd(true, true).solve(&b, 1e-12).ok()?;
    let y: Vec<f64> = sol.iter().take(dim).copied().collect();
    let feasible = constraints
        .iter()
        .zip(lifted)
        .all(|(h, &lift)| lift || h.eval(&y) >= -CLOSURE_TOL);
    (feasible && margin(constraints, lifted, &y) >= margin(constraints, lifted, x)).then_some(y)
}

/// Center and radius of the largest ball inside `{h ≥ 0}` (constraints normalized).
pub(super) fn chebyshev_center(
    constraints: &[AffineFunctional],
    dim: usize,
) -> Result<(Vec<f64>, f64), GeometryError> {
    match max_margin(constraints, &vec![true; constraints.len()], dim) {
        Ok(r) => Ok(r),
        Err(GeometryError::Lp(_)) => Err(GeometryError::EmptyInterior),
        Err(e) => Err(e),
    }
}

/// How the closures of two polyhedra meet.
#[derive(Debug, Clone, PartialEq)]
pub enum Contact {
    /// Interiors intersect; the point is interior to both.
    Overlap { point: Vec<f64>, margin: f64 },
    /// Closures meet in a set without interior; the point is in its relative interior.
    Touching { point: Vec<f64> },
    /// Closures are disjoint; `gap` is the best achievable negative margin.
    Disjoint { gap: f64 },
}

/// Finds a common closure point of `k1` and `k2`, preferring `hint` when it qualifies.
pub fn contact_point(
    k1: &ConvexPolyhedron,
    k2: &ConvexPolyhedron,
    hint: Option<&[f64]>,
) -> Result<Contact, GeometryError> {
    let cs = k1.intersection_constraints(k2);
    let dim = k1.dim();
    let (center, r) = max_margin(&cs, &vec![true; cs.len()], dim)?;
    let in_both =
        |p: &[f64]| k1.closure_contains(p, CLOSURE_TOL) && k2.closure_contains(p, CLOSURE_TOL);
    if r > CLOSURE_TOL {
        let point = match hint {
            Some(h) if in_both(h) => h.to_vec(),
            _ => center,
        };
        return Ok(Contact::Overlap { point, margin: r });
    }
    if r < -CLOSURE_TOL {
        return Ok(Contact::Disjoint { gap: r });
    }
    if let Some(h) = hint {
        if in_both(h) {
            return Ok(Contact::Touching { point: h.to_vec() });
        }
    }
    // Constraints that vanish on the whole contact set stay at zero; the others
    // are pushed up together to land in the relative interior.
    let mut lifted = vec![false; cs.len()];
    for (j, slot) in lifted.iter_mut().enumerate() {
        let mut lp = Problem::new(OptimizationDirection::Maximize);
        let xs: Vec<_> = cs[j]
            .gradient()
            .iter()
            .map(|&a| lp.add_var(a, (f64::NEG_INFINITY, f64::INFINITY)))
            .collect();
        for (i, h) in cs.iter().enumerate() {
            let expr = || {
                xs.iter()
                    .zip(h.gradient())
                    .map(|(&v, &a)| (v, a))
                    .collect::<Vec<_>>()
            };
            lp.add_constraint(expr(), ComparisonOp::Ge, -h.offset());
            if i == j {
                lp.add_constraint(expr(), ComparisonOp::Le, MARGIN_CAP - h.offset());
            }
        }
        let best = lp
            .solve()
            .map_err(|e| GeometryError::Lp(e.to_string()))?
            .objective()
            + cs[j].offset();
        *slot = best > CLOSURE_TOL;
    }
    let (point, _) = max_margin(&cs, &lifted, dim)?;
    Ok(Contact::Touching { point })
}
