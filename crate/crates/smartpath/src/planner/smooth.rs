//! Bernstein smoothing of the guide path with a local correction that
//! restores its jets at the window centers.

use nalgebra::{DMatrix, DVector};

use super::guide::GuidePath;
use super::PlanError;
use crate::poly::{BernsteinPolynomial, PolynomialPath};

/// The correction weight is 1 within this fraction of the event gap.
const PLATEAU: f64 = 0.3;
/// Width of the quintic ramp down to 0, as a fraction of the event gap.
const RAMP: f64 = 0.6;

fn weight(t: f64, center: f64, gap: f64) -> f64 {
    let x = (((t - center).abs() - PLATEAU * gap) / (RAMP * gap)).clamp(0.0, 1.0);
    1.0 - x * x * x * (10.0 - 15.0 * x + 6.0 * x * x)
}

/// `B_ν(γ)` per component plus `Σ y φ`, where `φ_{z,m} = (t−z)^m/m!` times a
/// bump around `z` and `y` solves for the jets of `γ` at every window center.
pub fn smooth_path(
    guide: &GuidePath,
    nu: usize,
) -> Result<PolynomialPath<BernsteinPolynomial>, PlanError> {
    let conditions: usize = guide.windows.iter().map(|w| w.jet_order + 1).sum();
    if nu + 1 < conditions {
        return Err(PlanError::Degree(format!(
            "degree {nu} cannot match {conditions} jet conditions"
        )));
    }
    let nodes: Vec<f64> = (0..=nu).map(|k| k as f64 / nu as f64).collect();
    let samples: Vec<Vec<f64>> = nodes.iter().map(|&t| guide.eval(t)).collect();
    let base: Vec<BernsteinPolynomial> = (0..guide.dim)
        .map(|c| BernsteinPolynomial::new(samples.iter().map(|x| x[c]).collect(), 0.0, 1.0))
        .collect();

    let mut family = Vec::with_capacity(conditions);
    for w in &guide.windows {
        let mut fact = 1.0;
        for m in 0..=w.jet_order {
            if m > 0 {
                fact *= m as f64;
            }
            let ctrl = nodes
                .iter()
                .map(|&t| (t - w.center).powi(m as i32) / fact * weight(t, w.center, w.gap()))
                .collect();
            family.push(BernsteinPolynomial::new(ctrl, 0.0, 1.0));
        }
    }
    let max_order = guide.windows.iter().map(|w| w.jet_order).max().unwrap_or(0);
    let derivs =
        |p: &BernsteinPolynomial| (0..=max_order).map(|k| p.derivative(k)).collect::<Vec<_>>();
    let family_derivs: Vec<Vec<BernsteinPolynomial>> = family.iter().map(derivs).collect();
    let rows: Vec<(f64, usize, usize)> = guide
        .windows
        .iter()
        .enumerate()
        .flat_map(|(i, w)| (0..=w.jet_order).map(move |k| (w.center, k, i)))
        .collect();
    let a = DMatrix::from_fn(conditions, conditions, |r, col| {
        let (z, k, _) = rows[r];
        family_derivs[col][k].eval(z)
    });
    let lu = a.lu();

    let jets: Vec<Vec<Vec<f64>>> = guide.windows.iter().map(|w| guide.jet(w)).collect();
    let mut components = Vec::with_capacity(guide.dim);
    for (c, b) in base.iter().enumerate() {
        let bd = derivs(b);
        let rhs = DVector::from_iterator(
            conditions,
            rows.iter().map(|&(z, k, i)| jets[i][k][c] - bd[k].eval(z)),
        );
        let y = lu
            .solve(&rhs)
            .filter(|y| y.iter().all(|v| v.is_finite()))
            .ok_or_else(|| {
                PlanError::Degree(format!("jet conditions are singular at degree {nu}"))
            })?;
        let mut ctrl = b.ctrl().to_vec();
        for (phi, &coef) in family.iter().zip(y.iter()) {
            for (x, p) in ctrl.iter_mut().zip(phi.ctrl()) {
                *x += coef * p;
            }
        }
        components.push(BernsteinPolynomial::new(ctrl, 0.0, 1.0));
    }
    Ok(PolynomialPath::new(components, (0.0, 1.0)))
}
