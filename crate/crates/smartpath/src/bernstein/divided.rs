use super::{BernsteinError, FunctionOracle};
use crate::poly::basis_values;

/// Nodes closer than this (relative) are treated as one repeated node.
const COINCIDENT: f64 = 1e-12;

fn factorial(n: usize) -> f64 {
    (1..=n).map(|j| j as f64).product()
}

/// Divided difference `[x_0, …, x_k] f`, confluent at repeated nodes.
///
/// Nodes are sorted first. A node repeated `j + 1` times contributes
/// `f^{(j)}(x)/j!`, which needs the oracle's derivatives at that node.
pub fn divided_difference(nodes: &[f64], f: &FunctionOracle) -> Result<f64, BernsteinError> {
    assert!(
        !nodes.is_empty(),
        "divided difference needs at least one node"
    );
    let mut z = nodes.to_vec();
    z.sort_by(f64::total_cmp);
    let same = |a: f64, b: f64| (a - b).abs() <= COINCIDENT * a.abs().max(b.abs()).max(1.0);
    let n = z.len();
    let mut column: Vec<f64> = z.iter().map(|&x| f.eval(x)).collect();
    for order in 1..n {
        let mut next = Vec::with_capacity(n - order);
        for i in 0..n - order {
            let (lo, hi) = (z[i], z[i + order]);
            if same(lo, hi) {
                next.push(f.derivative(order, lo)? / factorial(order));
            } else {
                next.push((column[i + 1] - column[i]) / (hi - lo));
            }
        }
        column = next;
    }
    Ok(column[0])
}

/// `B_{ν,s,t}(f)(x) = Σ_k [k/ν, …, (k+s)/ν, x (t times)] f · B_{k,ν−s}(x)`.
pub fn bnu_st(
    f: &FunctionOracle,
    nu: usize,
    s: usize,
    t: usize,
    x: f64,
) -> Result<f64, BernsteinError> {
    if f.domain() != (0.0, 1.0) {
        return Err(BernsteinError::UnitIntervalRequired);
    }
    if nu == 0 {
        return Err(BernsteinError::ZeroDegree);
    }
    if s > nu {
        return Err(BernsteinError::OrderExceedsDegree { k: s, nu });
    }
    let basis = basis_values(nu - s, x);
    let mut nodes = Vec::with_capacity(s + t + 1);
    let mut sum = 0.0;
    for (k, w) in basis.iter().enumerate() {
        nodes.clear();
        nodes.extend((k..=k + s).map(|j| j as f64 / nu as f64));
        nodes.extend(std::iter::repeat_n(x, t));
        sum += divided_difference(&nodes, f)? * w;
    }
    Ok(sum)
}
