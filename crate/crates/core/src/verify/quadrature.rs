//! Tensor-product quadrature rules used by the oracles.

use std::f64::consts::{PI, TAU};

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;

/// Gauss-Legendre nodes and weights mapped to `[a, b]`.
pub fn gauss_legendre(nodes: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let rule = GaussLegendre::new(nodes.try_into().expect("at least one node"));
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    rule.as_node_weight_pairs()
        .iter()
        .map(|&(x, w)| (mid + half * x, half * w))
        .collect()
}

/// Integral over the unit square of `f(t1, t2)`, split along the diagonal
/// and collapsed (`t1 = t2 u` on the lower triangle) so that factors like
/// `|t1 - t2|^p` stay smooth on each piece.
pub fn square_integral<F: Fn(f64, f64) -> f64>(f: F, nodes: usize) -> f64 {
    let rule = gauss_legendre(nodes, 0.0, 1.0);
    let mut acc = 0.0;
    for &(v, wv) in &rule {
        for &(u, wu) in &rule {
            let t = v * u;
            acc += wv * wu * v * (f(t, v) + f(v, t));
        }
    }
    acc
}

/// `int_{B_m(rho)} g(W) omega_m(W)` with `omega_m = m!/pi^m dV`, by nested polar
/// coordinates: Gauss-Legendre in each modulus, trapezoid in each argument.
pub fn ball_integral<G>(m: usize, rho: f64, g: G, radial: usize, angular: usize) -> Complex64
where
    G: Fn(&[Complex64]) -> Complex64,
{
    let unit = gauss_legendre(radial, 0.0, 1.0);
    let mut point = vec![Complex64::new(0.0, 0.0); m];
    let scale = (1..=m).map(|k| k as f64).product::<f64>() / PI.powi(m as i32);
    scale * nested(0, rho * rho, &unit, angular, &mut point, &g)
}

fn nested<G>(
    level: usize,
    remaining: f64,
    unit: &[(f64, f64)],
    angular: usize,
    point: &mut Vec<Complex64>,
    g: &G,
) -> Complex64
where
    G: Fn(&[Complex64]) -> Complex64,
{
    if level == point.len() {
        return g(point);
    }
    let radius = remaining.max(0.0).sqrt();
    let mut acc = Complex64::new(0.0, 0.0);
    for &(x, w) in unit {
        let r = radius * x;
        let mut ring = Complex64::new(0.0, 0.0);
        for l in 0..angular {
            point[level] = Complex64::from_polar(r, TAU * l as f64 / angular as f64);
            ring += nested(level + 1, remaining - r * r, unit, angular, point, g);
        }
        acc += ring * (w * radius * r * TAU / angular as f64);
    }
    acc
}
