//! Certified range bounds by Bernstein subdivision.
//!
//! The convex-hull property gives `min ctrl ≤ p ≤ max ctrl` on the interval, and
//! bisection shrinks the gap between that enclosure and sampled values.

use super::bernstein_form::BernsteinPolynomial;
use super::monomial::UnivariatePolynomial;

const MAX_DEPTH: usize = 40;

/// Upper bound for `sup |p|` on the interval of `p`, tight to `tol` relative.
pub fn sup_abs_bound(p: &BernsteinPolynomial, tol: f64) -> f64 {
    let (a, b) = p.interval();
    let mut best = p.eval(a).abs().max(p.eval(b).abs());
    let mut upper: f64 = 0.0;
    let mut stack = vec![(p.clone(), 0usize)];
    while let Some((q, depth)) = stack.pop() {
        let hull = q.max_abs_ctrl();
        let (c, d) = q.interval();
        best = best.max(q.eval(0.5 * (c + d)).abs());
        if hull <= best * (1.0 + tol) + tol * 1e-3 || depth >= MAX_DEPTH {
            upper = upper.max(hull);
            continue;
        }
        let (l, r) = q.bisect();
        stack.push((l, depth + 1));
        stack.push((r, depth + 1));
    }
    upper.max(best)
}

/// Lower bound for `min p` on the interval of `p`, tight to `tol` absolute.
pub fn min_lower_bound(p: &BernsteinPolynomial, tol: f64) -> f64 {
    let (a, b) = p.interval();
    let mut best = p.eval(a).min(p.eval(b));
    let mut lower = f64::INFINITY;
    let mut stack = vec![(p.clone(), 0usize)];
    while let Some((q, depth)) = stack.pop() {
        let hull = q.min_ctrl();
        let (c, d) = q.interval();
        best = best.min(q.eval(0.5 * (c + d)));
        if hull >= best - tol || depth >= MAX_DEPTH {
            lower = lower.min(hull);
            continue;
        }
        let (l, r) = q.bisect();
        stack.push((l, depth + 1));
        stack.push((r, depth + 1));
    }
    lower.min(best)
}

/// Upper bound for `sup ‖(p_1, …, p_n)‖₂` over the common interval.
///
/// All components must share the interval and degree.
pub fn vector_sup_norm_bound(components: &[BernsteinPolynomial], tol: f64) -> f64 {
    fn hull(cs: &[BernsteinPolynomial]) -> f64 {
        let nu = cs[0].degree();
        (0..=nu)
            .map(|k| cs.iter().map(|c| c.ctrl()[k].powi(2)).sum::<f64>().sqrt())
            .fold(0.0, f64::max)
    }
    fn value(cs: &[BernsteinPolynomial], t: f64) -> f64 {
        cs.iter().map(|c| c.eval(t).powi(2)).sum::<f64>().sqrt()
    }
    let nu = components
        .iter()
        .map(BernsteinPolynomial::degree)
        .max()
        .unwrap_or(0);
    let comps: Vec<_> = components.iter().map(|c| c.elevate(nu)).collect();
    let (a, b) = comps[0].interval();
    let mut best = value(&comps, a).max(value(&comps, b));
    let mut upper: f64 = 0.0;
    let mut stack = vec![(comps, 0usize)];
    while let Some((cs, depth)) = stack.pop() {
        let h = hull(&cs);
        let (c, d) = cs[0].interval();
        best = best.max(value(&cs, 0.5 * (c + d)));
        if h <= best * (1.0 + tol) + tol * 1e-3 || depth >= MAX_DEPTH {
            upper = upper.max(h);
            continue;
        }
        let (l, r): (Vec<_>, Vec<_>) = cs.iter().map(BernsteinPolynomial::bisect).unzip();
        stack.push((l, depth + 1));
        stack.push((r, depth + 1));
    }
    upper.max(best)
}

/// Largest `τ ≤ t_max` such that `p > 0` is certified on `(0, τ)`.
///
/// A root of `p` at `0` is factored out first, so `p(t) = t^m q(t)` with
/// `q(0) ≠ 0`; the result is `0` when `q(0) < 0`. Positivity is certified by
/// Bernstein coefficients of `q` on `[0, t_max]` down to width `tol`.
pub fn positive_prefix(p: &UnivariatePolynomial, t_max: f64, tol: f64) -> f64 {
    assert!(t_max > 0.0, "t_max must be positive");
    if p.is_zero() {
        return 0.0;
    }
    let m = p
        .one_sided_leading_term(0.0, super::monomial::Side::Right)
        .order
        .unwrap_or(0);
    let q = UnivariatePolynomial::new(p.coeffs()[m..].to_vec());
    if q.eval(0.0) <= 0.0 {
        return 0.0;
    }
    let bern = BernsteinPolynomial::from_monomial(&q, 0.0, t_max, q.degree());
    first_uncertified(&bern, tol).unwrap_or(t_max)
}

fn first_uncertified(q: &BernsteinPolynomial, tol: f64) -> Option<f64> {
    if q.min_ctrl() > 0.0 {
        return None;
    }
    let (c, d) = q.interval();
    if d - c < tol || q.ctrl()[0] <= 0.0 {
        return Some(c);
    }
    let (l, r) = q.bisect();
    first_uncertified(&l, tol).or_else(|| first_uncertified(&r, tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sup_of_quadratic() {
        // 4t(1−t) peaks at 1 in the middle, control polygon peaks at 2.
        let p = BernsteinPolynomial::new(vec![0.0, 2.0, 0.0], 0.0, 1.0);
        let s = sup_abs_bound(&p, 1e-6);
        assert!((1.0..1.0 + 1e-5).contains(&s), "{s}");
    }

    #[test]
    fn min_of_shifted_quadratic() {
        let m = UnivariatePolynomial::new(vec![0.3, -2.0, 2.0]); // min 0.3 − 0.5 = −0.2 at 1/2
        let p = BernsteinPolynomial::from_monomial(&m, 0.0, 1.0, 2);
        let lo = min_lower_bound(&p, 1e-8);
        assert!((-0.2 - 1e-7..=-0.2 + 1e-12).contains(&lo), "{lo}");
    }

    #[test]
    fn vector_norm_of_circle_arc() {
        // (1 − t², 2t − t²), a quadratic through (1, 0) and (0, 1).
        let x = BernsteinPolynomial::new(vec![1.0, 1.0, 0.0], 0.0, 1.0);
        let y = BernsteinPolynomial::new(vec![0.0, 1.0, 1.0], 0.0, 1.0);
        let s = vector_sup_norm_bound(&[x, y], 1e-6);
        let sampled = (0..=10_000)
            .map(|i| {
                let t = i as f64 / 10_000.0;
                (1.0 - t * t).hypot(2.0 * t - t * t)
            })
            .fold(0.0, f64::max);
        assert!(
            s >= sampled && s <= sampled * (1.0 + 1e-5),
            "{s} vs {sampled}"
        );
    }

    #[test]
    fn prefix_stops_at_first_root() {
        // t²(1 − t)(2 − t): positive on (0, 1).
        let p = UnivariatePolynomial::new(vec![0.0, 0.0, 2.0, -3.0, 1.0]);
        let tau = positive_prefix(&p, 3.0, 1e-9);
        assert!(tau <= 1.0 && tau > 1.0 - 1e-8, "{tau}");
        assert_eq!(
            positive_prefix(&UnivariatePolynomial::constant(1.0), 0.5, 1e-9),
            0.5
        );
        assert_eq!(
            positive_prefix(&UnivariatePolynomial::new(vec![0.0, -1.0]), 1.0, 1e-9),
            0.0
        );
    }
}
