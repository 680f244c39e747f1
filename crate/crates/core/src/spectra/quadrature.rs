//! Gauss–Legendre rules and the angular quadrature used for the reference laws.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};

pub const DEFAULT_NODE_COUNT: usize = 4096;
pub const MIN_NODE_COUNT: usize = 64;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut z = libm::cos(PI * (i as f64 + 0.75) / (nf + 0.5));
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, z);
                dp = d;
                let dz = p / d;
                z -= dz;
                if dz.abs() <= 1e-16 * z.abs().max(1.0) {
                    dp = legendre_with_derivative(n, z).1;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - z * z) * dp * dp);
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
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

    /// `∫_a^b f` with the rule mapped affinely onto `[a, b]`.
    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut sum = 0.0;
        for (&t, &w) in self.nodes.iter().zip(&self.weights) {
            sum += w * f(mid + half * t);
        }
        sum * half
    }
}

/// `(P_n(z), P_n'(z))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, z);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (z * p1 - p0) / (z * z - 1.0))
}

/// Quadrature over the support `[-2, 2]` in the angle `x = 2 cos θ`,
/// `θ ∈ [0, π]`. Densities of the reference laws become smooth and bounded
/// in `θ`, which is what makes a plain Gauss rule accurate here.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureConfig {
    node_count: usize,
    thetas: Vec<f64>,
    weights: Vec<f64>,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self::new(DEFAULT_NODE_COUNT).expect("default node count is valid")
    }
}

impl QuadratureConfig {
    pub fn new(node_count: usize) -> Result<Self> {
        if node_count < MIN_NODE_COUNT {
            return Err(Error::InvalidParameter(alloc::format!(
                "quadrature node count {node_count} is below {MIN_NODE_COUNT}"
            )));
        }
        let rule = GaussLegendre::new(node_count);
        let thetas = rule.nodes.iter().map(|t| 0.5 * PI * (t + 1.0)).collect();
        let weights = rule.weights.iter().map(|w| 0.5 * PI * w).collect();
        Ok(Self { node_count, thetas, weights })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Angular nodes in `(0, π)` with their weights.
    pub fn angular_nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.thetas.iter().copied().zip(self.weights.iter().copied())
    }
}
