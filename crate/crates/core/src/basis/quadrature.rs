//! Gauss–Legendre rules and the Riemann–Liouville fractional integral.

use std::f64::consts::PI;
use std::sync::OnceLock;

use super::special::gamma;
use crate::error::{Error, Result};

/// Default node count for fractional-integral checks.
pub const DEFAULT_QUAD_NODES: usize = 200;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds an `n`-point rule by Newton iteration on the roots of `P_n`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "a quadrature rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = x;
            nodes[n - 1 - i] = -x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    /// Shared 200-point rule.
    pub fn default_rule() -> &'static GaussLegendre {
        static RULE: OnceLock<GaussLegendre> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(DEFAULT_QUAD_NODES))
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `∫_a^b f`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| w * f(mid + half * t))
            .sum::<f64>()
            * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let d = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Riemann–Liouville integral `(1/Γ(μ)) ∫_a^x (x-y)^{μ-1} f(y) dy` with an
/// `nodes`-point Gauss–Legendre rule.
///
/// The substitution `y = x - (x-a) t^{1/μ}` absorbs the kernel singularity:
/// the integral becomes `(x-a)^μ / Γ(μ+1) · ∫_0^1 f(x - (x-a) t^{1/μ}) dt`.
pub fn riemann_liouville_quad<F: Fn(f64) -> f64>(
    f: F,
    mu: f64,
    a: f64,
    x: f64,
    nodes: usize,
) -> Result<f64> {
    if nodes < 8 {
        return Err(Error::domain(format!("at least 8 quadrature nodes required, got {nodes}")));
    }
    if nodes == DEFAULT_QUAD_NODES {
        riemann_liouville_with(GaussLegendre::default_rule(), f, mu, a, x)
    } else {
        riemann_liouville_with(&GaussLegendre::new(nodes), f, mu, a, x)
    }
}

/// Same as [`riemann_liouville_quad`] with a caller-provided rule.
pub fn riemann_liouville_with<F: Fn(f64) -> f64>(
    rule: &GaussLegendre,
    f: F,
    mu: f64,
    a: f64,
    x: f64,
) -> Result<f64> {
    if !(mu > 0.0 && mu < 1.0) {
        return Err(Error::domain(format!("fractional order must lie in (0,1), got {mu}")));
    }
    if !(x > a) {
        return Err(Error::domain(format!("upper limit {x} must exceed lower limit {a}")));
    }
    let span = x - a;
    let inv_mu = 1.0 / mu;
    let integral = rule.integrate(0.0, 1.0, |t| f(x - span * t.powf(inv_mu)));
    Ok(span.powf(mu) / gamma(mu + 1.0) * integral)
}
