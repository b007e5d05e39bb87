use std::collections::BTreeMap;

use crate::poly::{basis_values, bounds, BernsteinPolynomial, UnivariatePolynomial};

/// `q_{ijℓ}` keyed by `(i, j)` for a fixed `ℓ`.
pub type QTable = BTreeMap<(usize, usize), UnivariatePolynomial>;

/// `Σ_k (k − νx)^m B_{k,ν}(x)`.
pub fn binomial_moment(nu: usize, x: f64, m: u32) -> f64 {
    let center = nu as f64 * x;
    basis_values(nu, x)
        .iter()
        .enumerate()
        .map(|(k, w)| (k as f64 - center).powi(m as i32) * w)
        .sum()
}

/// `Σ_{|k/ν − x| > δ} B_{k,ν}(x)`.
pub fn tail_sum(nu: usize, x: f64, delta: f64) -> f64 {
    basis_values(nu, x)
        .iter()
        .enumerate()
        .filter(|(k, _)| (*k as f64 / nu as f64 - x).abs() > delta)
        .map(|(_, w)| w)
        .sum()
}

fn x_one_minus_x() -> UnivariatePolynomial {
    UnivariatePolynomial::new(vec![0.0, 1.0, -1.0])
}

/// Central moments `T_m = Σ_s ν^s c_{m,s}(x)` for `m = 0..=m_max`, from
/// `T_{m+1} = x(1−x)(T_m' + m ν T_{m−1})`. Entry `[m][s]` is `c_{m,s}`.
pub fn central_moment_polynomials(m_max: usize) -> Vec<Vec<UnivariatePolynomial>> {
    let w = x_one_minus_x();
    let mut table = vec![
        vec![UnivariatePolynomial::constant(1.0)],
        vec![UnivariatePolynomial::zero()],
    ];
    for m in 1..m_max {
        let cur = &table[m];
        let prev = &table[m - 1];
        let len = cur.len().max(prev.len() + 1);
        let next = (0..len)
            .map(|s| {
                let mut acc = cur.get(s).map(|c| c.derivative(1)).unwrap_or_default();
                if s >= 1 {
                    if let Some(c) = prev.get(s - 1) {
                        acc = &acc + &c.scale(m as f64);
                    }
                }
                &w * &acc
            })
            .collect();
        table.push(next);
    }
    table.truncate(m_max + 1);
    table
}

/// Upper bound for `sup_{[0,1]} |p|` via Bernstein control values.
pub(crate) fn sup_on(p: &UnivariatePolynomial, a: f64, b: f64) -> f64 {
    if p.is_zero() {
        return 0.0;
    }
    let bern = BernsteinPolynomial::from_monomial(p, a, b, p.degree());
    bounds::sup_abs_bound(&bern, 1e-9)
}

/// `A_m` with `Σ_k (k − νx)^{2m} B_{k,ν}(x) ≤ A_m ν^m` for all `ν ≥ 1`, `x ∈ [0,1]`.
pub fn moment_constant(m: usize) -> f64 {
    let table = central_moment_polynomials(2 * m);
    table[2 * m].iter().map(|c| sup_on(c, 0.0, 1.0)).sum()
}

/// `C(δ, m) = A_m / δ^{2m}`, so the tail sum is at most `C(δ, m)/ν^m`.
pub fn tail_constant(delta: f64, m: usize) -> f64 {
    moment_constant(m) / delta.powi(2 * m as i32)
}

/// The polynomials with
/// `dℓ/dxℓ (x^k (1−x)^{ν−k}) = x^{k−ℓ}(1−x)^{ν−k−ℓ} Σ ν^i (k − νx)^j q_{ijℓ}(x)`.
pub fn q_polynomials(l: usize) -> QTable {
    let w = x_one_minus_x();
    let one_minus_2x = UnivariatePolynomial::new(vec![1.0, -2.0]);
    let mut table = QTable::new();
    table.insert((0, 0), UnivariatePolynomial::constant(1.0));
    for level in 0..l {
        let mut next = QTable::new();
        let mut bump = |key: (usize, usize), p: UnivariatePolynomial| {
            let slot = next.entry(key).or_insert_with(UnivariatePolynomial::zero);
            *slot = &*slot + &p;
        };
        for (&(i, j), q) in &table {
            bump((i, j + 1), q.clone());
            let same = &(&w * &q.derivative(1)) - &(&one_minus_2x * q).scale(level as f64);
            bump((i, j), same);
            if j > 0 {
                bump((i + 1, j - 1), (&w * q).scale(-(j as f64)));
            }
        }
        table = next;
    }
    for i in 0..=l / 2 {
        for j in 0..=(l - 2 * i) {
            table
                .entry((i, j))
                .or_insert_with(UnivariatePolynomial::zero);
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn moment_examples() {
        for &(nu, x) in &[(1usize, 0.3), (10, 0.5), (57, 0.91)] {
            assert_relative_eq!(binomial_moment(nu, x, 0), 1.0, epsilon = 1e-13);
            assert!(binomial_moment(nu, x, 1).abs() < 1e-12);
            assert_relative_eq!(
                binomial_moment(nu, x, 2),
                nu as f64 * x * (1.0 - x),
                epsilon = 1e-11
            );
        }
    }

    #[test]
    fn tail_examples() {
        assert_eq!(tail_sum(10, 0.5, 1.0), 0.0);
        assert_relative_eq!(
            tail_sum(10, 0.5, 0.4),
            2.0 * 0.5f64.powi(10),
            epsilon = 1e-16
        );
        assert_eq!(tail_sum(10, 0.0, 0.05), 0.0);
    }

    #[test]
    fn moment_table_matches_direct_sums() {
        let table = central_moment_polynomials(8);
        for (m, row) in table.iter().enumerate() {
            assert!(row.len() <= m / 2 + 1, "T_{m} has ν-degree above m/2");
            for &nu in &[3usize, 11, 40] {
                for &x in &[0.0, 0.2, 0.55, 1.0] {
                    let poly: f64 = row
                        .iter()
                        .enumerate()
                        .map(|(s, c)| (nu as f64).powi(s as i32) * c.eval(x))
                        .sum();
                    let direct = binomial_moment(nu, x, m as u32);
                    assert!(
                        (poly - direct).abs() <= 1e-9 * direct.abs().max(1.0),
                        "m={m} nu={nu} x={x}"
                    );
                }
            }
        }
    }

    #[test]
    fn moment_constant_bounds_even_moments() {
        for m in 1..=4usize {
            let a = moment_constant(m);
            for &nu in &[1usize, 2, 5, 20, 100] {
                for i in 0..=50 {
                    let x = i as f64 / 50.0;
                    let t = binomial_moment(nu, x, 2 * m as u32);
                    assert!(
                        t <= a * (nu as f64).powi(m as i32) * (1.0 + 1e-12),
                        "m={m} nu={nu}"
                    );
                }
            }
        }
        assert_relative_eq!(moment_constant(1), 0.25, epsilon = 1e-8);
    }

    #[test]
    fn q_table_examples() {
        let q0 = q_polynomials(0);
        assert_eq!(q0.len(), 1);
        assert_eq!(q0[&(0, 0)].coeffs(), &[1.0]);
        let q1 = q_polynomials(1);
        assert_eq!(q1[&(0, 1)].coeffs(), &[1.0]);
        assert!(q1[&(0, 0)].is_zero());
        assert!(q1.get(&(1, 0)).is_none_or(UnivariatePolynomial::is_zero));
    }

    #[test]
    fn q_table_reproduces_derivatives() {
        let (nu, k, x) = (6usize, 3usize, 0.3);
        let mut target = UnivariatePolynomial::monomial(1.0, k);
        for _ in 0..(nu - k) {
            target = &target * &UnivariatePolynomial::new(vec![1.0, -1.0]);
        }
        for l in 0..=3usize {
            let table = q_polynomials(l);
            let sum: f64 = table
                .iter()
                .map(|(&(i, j), q)| {
                    (nu as f64).powi(i as i32)
                        * (k as f64 - nu as f64 * x).powi(j as i32)
                        * q.eval(x)
                })
                .sum();
            let prefactor =
                x.powi(k as i32 - l as i32) * (1.0 - x).powi((nu - k) as i32 - l as i32);
            let expected = target.derivative(l).eval(x);
            assert_relative_eq!(
                prefactor * sum,
                expected,
                epsilon = 1e-10,
                max_relative = 1e-8
            );
        }
    }
}
