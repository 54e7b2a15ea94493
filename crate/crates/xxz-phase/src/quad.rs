//! Composite Gauss-Legendre quadrature.

use std::sync::OnceLock;

#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes and weights on [-1, 1] by Newton iteration on P_n.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// Shared 20-point rule.
    pub fn g20() -> &'static GaussLegendre {
        static G: OnceLock<GaussLegendre> = OnceLock::new();
        G.get_or_init(|| GaussLegendre::new(20))
    }

    pub fn g16() -> &'static GaussLegendre {
        static G: OnceLock<GaussLegendre> = OnceLock::new();
        G.get_or_init(|| GaussLegendre::new(16))
    }

    /// Nodes and weights mapped onto [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let h = 0.5 * (b - a);
        let c = 0.5 * (b + a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(x, w)| (c + h * x, h * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// Composite rule on [a, b] with panels no wider than `max_width`.
pub fn composite<F: FnMut(f64) -> f64>(a: f64, b: f64, max_width: f64, rule: &GaussLegendre, mut f: F) -> f64 {
    if b <= a {
        return 0.0;
    }
    let n = ((b - a) / max_width).ceil().max(1.0) as usize;
    let h = (b - a) / n as f64;
    let mut s = 0.0;
    for k in 0..n {
        let lo = a + k as f64 * h;
        s += rule.integrate(lo, lo + h, &mut f);
    }
    s
}

/// Panel breakpoints covering [a, b], never wider than `max_width`, with every
/// interior point of `cuts` that falls inside (a, b) made a breakpoint.
pub fn breakpoints(a: f64, b: f64, max_width: f64, cuts: &[f64]) -> Vec<f64> {
    let mut edges = vec![a];
    let mut inner: Vec<f64> = cuts.iter().copied().filter(|&c| c > a && c < b).collect();
    inner.sort_by(|x, y| x.partial_cmp(y).unwrap());
    inner.push(b);
    let mut lo = a;
    for hi in inner {
        if hi - lo < 1e-14 {
            continue;
        }
        let n = ((hi - lo) / max_width).ceil().max(1.0) as usize;
        let h = (hi - lo) / n as f64;
        for k in 1..=n {
            edges.push(if k == n { hi } else { lo + k as f64 * h });
        }
        lo = hi;
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two_and_polynomials_exact() {
        for n in [1, 2, 5, 16, 20, 33] {
            let g = GaussLegendre::new(n);
            let s: f64 = g.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n={n} sum={s}");
            let deg = 2 * n - 1;
            let exact = if deg % 2 == 0 { 2.0 / (deg as f64 + 1.0) } else { 0.0 };
            let got = g.integrate(-1.0, 1.0, |x| x.powi(deg as i32));
            assert!((got - exact).abs() < 1e-13);
            let even = 2 * (n - 1);
            let got = g.integrate(-1.0, 1.0, |x| x.powi(even as i32));
            assert!((got - 2.0 / (even as f64 + 1.0)).abs() < 1e-13);
        }
    }

    #[test]
    fn composite_gaussian() {
        let v = composite(-10.0, 10.0, 0.5, GaussLegendre::g20(), |x| (-x * x).exp());
        assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn breakpoints_include_cuts() {
        let e = breakpoints(-1.0, 1.0, 0.3, &[0.05, 5.0]);
        assert!(e.contains(&0.05));
        assert_eq!(*e.first().unwrap(), -1.0);
        assert_eq!(*e.last().unwrap(), 1.0);
        assert!(e.windows(2).all(|w| w[1] > w[0] && w[1] - w[0] <= 0.3 + 1e-12));
    }
}
