use serde::{Deserialize, Serialize};

use super::monomial::UnivariatePolynomial;

/// Polynomial stored by its Bernstein control values on `[a, b]`:
/// `p(t) = Σ c_k C(ν,k) u^k (1−u)^{ν−k}` with `u = (t−a)/(b−a)`.
///
/// Control values stay well scaled at degrees where the monomial
/// expansion is useless, and they bound the polynomial on `[a, b]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BernsteinPolynomial {
    ctrl: Vec<f64>,
    a: f64,
    b: f64,
}

/// `C(n, k)` as a float, exact for the sizes used here.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut c = 1.0;
    for j in 0..k {
        c = c * (n - j) as f64 / (j + 1) as f64;
    }
    c.round_if_small()
}

trait RoundIfSmall {
    fn round_if_small(self) -> Self;
}

impl RoundIfSmall for f64 {
    fn round_if_small(self) -> f64 {
        if self < 9.0e15 {
            self.round()
        } else {
            self
        }
    }
}

/// All basis values `B_{k,ν}(u)`, `k = 0..=ν`, by the triangular recurrence.
pub fn basis_values(nu: usize, u: f64) -> Vec<f64> {
    let mut b = vec![0.0; nu + 1];
    b[0] = 1.0;
    let v = 1.0 - u;
    for n in 1..=nu {
        for k in (1..=n).rev() {
            b[k] = v * b[k] + u * b[k - 1];
        }
        b[0] *= v;
    }
    b
}

/// Splits control values at parameter `u`, returning the left and right halves.
fn de_casteljau_split(ctrl: &[f64], u: f64) -> (Vec<f64>, Vec<f64>) {
    let n = ctrl.len();
    let mut work = ctrl.to_vec();
    let mut left = Vec::with_capacity(n);
    let mut right = vec![0.0; n];
    left.push(work[0]);
    right[n - 1] = work[n - 1];
    for r in 1..n {
        for k in 0..n - r {
            work[k] = (1.0 - u) * work[k] + u * work[k + 1];
        }
        left.push(work[0]);
        right[n - 1 - r] = work[n - 1 - r];
    }
    (left, right)
}

impl BernsteinPolynomial {
    pub fn new(ctrl: Vec<f64>, a: f64, b: f64) -> Self {
        assert!(
            !ctrl.is_empty(),
            "Bernstein polynomial needs at least one control value"
        );
        assert!(b > a, "Bernstein interval must be nondegenerate");
        Self { ctrl, a, b }
    }

    pub fn constant(c: f64, a: f64, b: f64) -> Self {
        Self::new(vec![c], a, b)
    }

    /// Samples `f` at the `ν+1` equispaced nodes of `[a, b]`.
    pub fn from_samples(f: impl Fn(f64) -> f64, nu: usize, a: f64, b: f64) -> Self {
        let ctrl = (0..=nu)
            .map(|k| f(a + (b - a) * k as f64 / nu.max(1) as f64))
            .collect();
        Self::new(ctrl, a, b)
    }

    /// Exact conversion of a monomial polynomial, at degree `max(deg p, nu)`.
    pub fn from_monomial(p: &UnivariatePolynomial, a: f64, b: f64, nu: usize) -> Self {
        let local = p.compose_linear(b - a, a);
        let nu = nu.max(local.degree());
        let m = local.coeffs();
        let ctrl = (0..=nu)
            .map(|k| {
                (0..=k.min(m.len().saturating_sub(1)))
                    .filter(|&j| j < m.len())
                    .map(|j| binomial(k, j) / binomial(nu, j) * m[j])
                    .sum()
            })
            .collect();
        Self::new(ctrl, a, b)
    }

    pub fn ctrl(&self) -> &[f64] {
        &self.ctrl
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn degree(&self) -> usize {
        self.ctrl.len() - 1
    }

    fn local(&self, t: f64) -> f64 {
        (t - self.a) / (self.b - self.a)
    }

    /// Evaluates with the scaled Horner scheme, switching ends at `u = 1/2`.
    pub fn eval(&self, t: f64) -> f64 {
        let nu = self.degree();
        if nu == 0 {
            return self.ctrl[0];
        }
        let u = self.local(t);
        if !(0.0..=1.0).contains(&u) {
            return self.eval_de_casteljau(u);
        }
        let (s, w, ctrl): (f64, f64, Box<dyn Iterator<Item = &f64>>) = if u <= 0.5 {
            (u, 1.0 - u, Box::new(self.ctrl.iter()))
        } else {
            (1.0 - u, u, Box::new(self.ctrl.iter().rev()))
        };
        let ratio = s / w;
        if nu > 1000 {
            // Basis weights through logarithms to avoid overflow of C(ν,k).
            let lr = ratio.ln();
            let mut lt = nu as f64 * w.ln();
            let mut acc = 0.0;
            for (k, &c) in ctrl.enumerate() {
                acc += c * lt.exp();
                if k < nu {
                    lt += ((nu - k) as f64 / (k + 1) as f64).ln() + lr;
                }
            }
            return acc;
        }
        // Σ c_k C(ν,k) s^k w^{ν−k} = w^ν Σ c_k C(ν,k) (s/w)^k.
        let mut acc = 0.0;
        let mut binom = 1.0;
        let mut pow = 1.0;
        for (k, &c) in ctrl.enumerate() {
            acc += c * binom * pow;
            pow *= ratio;
            binom = binom * (nu - k) as f64 / (k + 1) as f64;
        }
        acc * w.powi(nu as i32)
    }

    fn eval_de_casteljau(&self, u: f64) -> f64 {
        let mut work = self.ctrl.clone();
        let n = work.len();
        for r in 1..n {
            for k in 0..n - r {
                work[k] = (1.0 - u) * work[k] + u * work[k + 1];
            }
        }
        work[0]
    }

    /// k-th derivative in Bernstein form on the same interval.
    pub fn derivative(&self, order: usize) -> Self {
        let mut ctrl = self.ctrl.clone();
        let h = self.b - self.a;
        for _ in 0..order {
            let n = ctrl.len() - 1;
            if n == 0 {
                ctrl = vec![0.0];
                break;
            }
            let scale = n as f64 / h;
            ctrl = ctrl.windows(2).map(|w| scale * (w[1] - w[0])).collect();
        }
        Self::new(ctrl, self.a, self.b)
    }

    /// Value of the k-th derivative at `t`.
    pub fn derivative_at(&self, order: usize, t: f64) -> f64 {
        self.derivative(order).eval(t)
    }

    /// Same polynomial represented on the subinterval `[c, d]`.
    pub fn restrict(&self, c: f64, d: f64) -> Self {
        let uc = self.local(c);
        let ud = self.local(d);
        let (_, right) = de_casteljau_split(&self.ctrl, uc);
        let ctrl = if (1.0 - uc).abs() < f64::MIN_POSITIVE {
            right
        } else {
            let (left, _) = de_casteljau_split(&right, (ud - uc) / (1.0 - uc));
            left
        };
        Self::new(ctrl, c, d)
    }

    /// Splits at the interval midpoint.
    pub fn bisect(&self) -> (Self, Self) {
        let m = 0.5 * (self.a + self.b);
        let (l, r) = de_casteljau_split(&self.ctrl, 0.5);
        (Self::new(l, self.a, m), Self::new(r, m, self.b))
    }

    pub fn elevate(&self, nu: usize) -> Self {
        let mut ctrl = self.ctrl.clone();
        while ctrl.len() - 1 < nu {
            let n = ctrl.len();
            let mut next = vec![0.0; n + 1];
            next[0] = ctrl[0];
            next[n] = ctrl[n - 1];
            for k in 1..n {
                let w = k as f64 / n as f64;
                next[k] = w * ctrl[k - 1] + (1.0 - w) * ctrl[k];
            }
            ctrl = next;
        }
        Self::new(ctrl, self.a, self.b)
    }

    fn aligned(&self, other: &Self) -> (Vec<f64>, Vec<f64>) {
        assert!(
            self.a == other.a && self.b == other.b,
            "Bernstein polynomials live on different intervals"
        );
        let nu = self.degree().max(other.degree());
        (self.elevate(nu).ctrl, other.elevate(nu).ctrl)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (x, y) = self.aligned(other);
        Self::new(
            x.iter().zip(&y).map(|(p, q)| p + q).collect(),
            self.a,
            self.b,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (x, y) = self.aligned(other);
        Self::new(
            x.iter().zip(&y).map(|(p, q)| p - q).collect(),
            self.a,
            self.b,
        )
    }

    /// Exact product, of degree `deg self + deg other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert!(
            self.a == other.a && self.b == other.b,
            "Bernstein polynomials live on different intervals"
        );
        let (m, n) = (self.degree(), other.degree());
        let mut ctrl = vec![0.0; m + n + 1];
        for (i, &x) in self.ctrl.iter().enumerate() {
            for (j, &y) in other.ctrl.iter().enumerate() {
                ctrl[i + j] += binomial(m, i) * binomial(n, j) * x * y;
            }
        }
        for (k, c) in ctrl.iter_mut().enumerate() {
            *c /= binomial(m + n, k);
        }
        Self::new(ctrl, self.a, self.b)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.ctrl.iter().map(|c| c * s).collect(), self.a, self.b)
    }

    pub fn add_constant(&self, c: f64) -> Self {
        Self::new(self.ctrl.iter().map(|x| x + c).collect(), self.a, self.b)
    }

    /// `Σ w_i p_i` for polynomials on a shared interval.
    pub fn linear_combination(terms: &[(f64, &Self)]) -> Self {
        let (_, first) = terms[0];
        let mut out = Self::constant(0.0, first.a, first.b);
        for (w, p) in terms {
            out = out.add(&p.scale(*w));
        }
        out
    }

    /// Monomial coefficients in `t`. Ill-conditioned beyond modest degrees.
    pub fn to_monomial(&self) -> UnivariatePolynomial {
        let nu = self.degree();
        let mut local = vec![0.0; nu + 1];
        // Coefficient of u^j is Σ_{k≤j} c_k C(ν,j) C(j,k) (−1)^{j−k}.
        for (j, slot) in local.iter_mut().enumerate() {
            let mut s = 0.0;
            for k in 0..=j {
                let sign = if (j - k) % 2 == 0 { 1.0 } else { -1.0 };
                s += sign * binomial(j, k) * self.ctrl[k];
            }
            *slot = s * binomial(nu, j);
        }
        let h = self.b - self.a;
        UnivariatePolynomial::new(local).compose_linear(1.0 / h, -self.a / h)
    }

    pub fn min_ctrl(&self) -> f64 {
        self.ctrl.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_ctrl(&self) -> f64 {
        self.ctrl.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn max_abs_ctrl(&self) -> f64 {
        self.ctrl.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(10, 0), 1.0);
        assert_eq!(binomial(3, 4), 0.0);
        assert!((binomial(60, 30) / 118264581564861424.0 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn product_matches_pointwise() {
        let p = BernsteinPolynomial::new(vec![1.0, -2.0, 0.5], -1.0, 2.0);
        let q = BernsteinPolynomial::new(vec![0.3, 4.0, -1.0, 2.0], -1.0, 2.0);
        let pq = p.mul(&q);
        assert_eq!(pq.degree(), 5);
        for i in 0..=20 {
            let t = -1.0 + 3.0 * i as f64 / 20.0;
            assert!((pq.eval(t) - p.eval(t) * q.eval(t)).abs() < 1e-12);
        }
    }

    #[test]
    fn eval_matches_de_casteljau() {
        let p = BernsteinPolynomial::new(vec![1.0, -2.0, 0.5, 3.0, -1.0], -1.0, 2.0);
        for i in 0..=30 {
            let t = -1.0 + 3.0 * i as f64 / 30.0;
            let u = (t + 1.0) / 3.0;
            assert!((p.eval(t) - p.eval_de_casteljau(u)).abs() < 1e-13);
        }
    }

    #[test]
    fn monomial_round_trip() {
        let m = UnivariatePolynomial::new(vec![0.5, -1.0, 2.0, 0.25]);
        let b = BernsteinPolynomial::from_monomial(&m, -0.5, 1.5, 6);
        assert_eq!(b.degree(), 6);
        let back = b.to_monomial();
        for (x, y) in back.coeffs().iter().zip(m.coeffs()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn restrict_and_derivative() {
        let m = UnivariatePolynomial::new(vec![1.0, 0.0, -3.0, 0.0, 1.0]);
        let b = BernsteinPolynomial::from_monomial(&m, 0.0, 1.0, 4);
        let r = b.restrict(0.2, 0.7);
        let d = b.derivative(2);
        let dm = m.derivative(2);
        for i in 0..=10 {
            let t = 0.2 + 0.05 * i as f64;
            assert!((r.eval(t) - m.eval(t)).abs() < 1e-13);
            assert!((d.eval(t) - dm.eval(t)).abs() < 1e-12);
        }
    }
}
