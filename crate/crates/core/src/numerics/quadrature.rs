//! Gauss–Legendre and Gauss–Hermite rules and tensor-product integration.

use std::f64::consts::PI;

use super::pairwise_sum;

/// Nodes and weights of an n-point rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Gauss–Legendre rule on [-1, 1] by Newton iteration on P_n.
pub fn gauss_legendre_rule(n: usize) -> Rule {
    assert!(n >= 1, "Gauss-Legendre order must be positive");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    let nf = n as f64;
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() <= 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, z);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Rule { nodes, weights }
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * z * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (z * p1 - p0) / (z * z - 1.0))
}

/// Gauss–Hermite rule for the weight e^{-x²} on the real line.
///
/// Newton iteration on the orthonormal Hermite recurrence, seeded with the
/// usual asymptotic guesses for the largest roots.
pub fn gauss_hermite_rule(n: usize) -> Rule {
    assert!(n >= 1, "Gauss-Hermite order must be positive");
    const PIM4: f64 = 0.751_125_544_464_942_5; // π^{-1/4}
    let nf = n as f64;
    let m = n.div_ceil(2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let mut z = 0.0f64;
    for i in 0..m {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-0.16667),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * nodes[0],
            3 => 1.91 * z - 0.91 * nodes[1],
            _ => 2.0 * z - nodes[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..200 {
            let mut p1 = PIM4;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        nodes[i] = z;
        nodes[n - 1 - i] = -z;
        weights[i] = 2.0 / (pp * pp);
        weights[n - 1 - i] = weights[i];
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    // ascending order
    nodes.reverse();
    weights.reverse();
    Rule { nodes, weights }
}

/// Gauss–Legendre rule mapped onto [lo, hi], optionally split into equal panels.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub order: usize,
    pub panels: usize,
    base: Rule,
}

impl GaussLegendre {
    pub fn new(order: usize) -> Self {
        Self::composite(order, 1)
    }

    pub fn composite(order: usize, panels: usize) -> Self {
        assert!(order >= 2, "Gauss-Legendre order must be at least 2");
        assert!(panels >= 1);
        GaussLegendre {
            order,
            panels,
            base: gauss_legendre_rule(order),
        }
    }

    /// Nodes and weights on [lo, hi].
    pub fn mapped(&self, lo: f64, hi: f64) -> Rule {
        let width = (hi - lo) / self.panels as f64;
        let mut nodes = Vec::with_capacity(self.order * self.panels);
        let mut weights = Vec::with_capacity(self.order * self.panels);
        for p in 0..self.panels {
            let a = lo + width * p as f64;
            let half = 0.5 * width;
            let mid = a + half;
            for (x, w) in self.base.nodes.iter().zip(&self.base.weights) {
                nodes.push(mid + half * x);
                weights.push(half * w);
            }
        }
        Rule { nodes, weights }
    }

    pub fn integrate_1d(&self, f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
        let r = self.mapped(lo, hi);
        let terms: Vec<f64> = r
            .nodes
            .iter()
            .zip(&r.weights)
            .map(|(&x, &w)| w * f(x))
            .collect();
        pairwise_sum(&terms)
    }

    pub fn integrate_2d(&self, f: impl Fn(f64, f64) -> f64, lo: [f64; 2], hi: [f64; 2]) -> f64 {
        let rx = self.mapped(lo[0], hi[0]);
        let ry = self.mapped(lo[1], hi[1]);
        let mut terms = Vec::with_capacity(rx.len() * ry.len());
        for (&y, &wy) in ry.nodes.iter().zip(&ry.weights) {
            for (&x, &wx) in rx.nodes.iter().zip(&rx.weights) {
                terms.push(wx * wy * f(x, y));
            }
        }
        pairwise_sum(&terms)
    }

    /// Integrates several 2D integrands sharing one node set.
    pub fn integrate_2d_many<const K: usize>(
        &self,
        f: impl Fn(f64, f64) -> [f64; K],
        lo: [f64; 2],
        hi: [f64; 2],
    ) -> [f64; K] {
        let rx = self.mapped(lo[0], hi[0]);
        let ry = self.mapped(lo[1], hi[1]);
        let mut terms: [Vec<f64>; K] =
            std::array::from_fn(|_| Vec::with_capacity(rx.len() * ry.len()));
        for (&y, &wy) in ry.nodes.iter().zip(&ry.weights) {
            for (&x, &wx) in rx.nodes.iter().zip(&rx.weights) {
                let v = f(x, y);
                for k in 0..K {
                    terms[k].push(wx * wy * v[k]);
                }
            }
        }
        terms.map(|t| pairwise_sum(&t))
    }

    pub fn integrate_3d(
        &self,
        f: impl Fn([f64; 3]) -> f64 + Sync,
        lo: [f64; 3],
        hi: [f64; 3],
    ) -> f64 {
        use rayon::prelude::*;
        let r: [Rule; 3] = std::array::from_fn(|a| self.mapped(lo[a], hi[a]));
        // one slab per z node, summed pairwise in a fixed order
        let slabs: Vec<f64> = (0..r[2].len())
            .into_par_iter()
            .map(|kz| {
                let z = r[2].nodes[kz];
                let wz = r[2].weights[kz];
                let mut terms = Vec::with_capacity(r[0].len() * r[1].len());
                for (&y, &wy) in r[1].nodes.iter().zip(&r[1].weights) {
                    for (&x, &wx) in r[0].nodes.iter().zip(&r[0].weights) {
                        terms.push(wx * wy * f([x, y, z]));
                    }
                }
                wz * pairwise_sum(&terms)
            })
            .collect();
        pairwise_sum(&slabs)
    }
}
