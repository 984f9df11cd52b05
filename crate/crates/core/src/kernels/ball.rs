//! Hermitian balls `B_m(rho)` in `C^m` with the volume form
//! `omega_m = ((i / 2 pi) d dbar |Z|^2)^m`, for which `B_m(1)` has mass one.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::polyalg::{binomial, to_f64};

/// `<Z, W> = sum Z_i conj(W_i)`.
pub fn hermitian_inner(z: &[Complex64], w: &[Complex64]) -> Complex64 {
    z.iter().zip(w).map(|(a, b)| a * b.conj()).sum()
}

pub fn norm_sqr(z: &[Complex64]) -> f64 {
    z.iter().map(|v| v.norm_sqr()).sum()
}

/// Bergman kernel of `B_m(rho)`: `rho^-2m (1 - <Z,T>/rho^2)^-(m+1)`.
pub fn ball_kernel(z: &[Complex64], t: &[Complex64], rho: f64) -> Result<Complex64> {
    let m = z.len();
    if t.len() != m || m == 0 {
        return Err(Error::Shape(format!("ball points must share a positive dimension, got {m} and {}", t.len())));
    }
    let r2 = rho * rho;
    if !(rho > 0.0) || !(norm_sqr(z) < r2) || !(norm_sqr(t) < r2) {
        return Err(Error::OutsideDomain(format!("|Z| and |T| must be < rho = {rho}")));
    }
    let base = Complex64::new(1.0, 0.0) - hermitian_inner(z, t) / r2;
    Ok(base.powi(-(m as i32 + 1)) / r2.powi(m as i32))
}

/// Reproducing kernel of the `k`-homogeneous polynomials of `B_m(rho)` on the
/// diagonal: `rho^(-2m-2k) binom(k+m, m) |Z|^2k`.
pub fn ball_harmonic(k: u32, z: &[Complex64], rho: f64) -> f64 {
    let m = z.len() as u32;
    let r2 = rho * rho;
    to_f64(&binomial((k + m) as u64, m as u64)) * norm_sqr(z).powi(k as i32) / r2.powi((m + k) as i32)
}

/// Node count `4 (k + guard)` for [`homogeneous_projection`]; `guard` bounds
/// the polynomial degree of `f` beyond `k` that must not alias.
pub fn projection_nodes(k: u32, guard: u32) -> usize {
    4 * (k + guard).max(1) as usize
}

/// Degree-`k` homogeneous component of `f` at `Z`, by the trapezoidal rule
/// on `f_k(Z) = int_0^1 f(e^{2 pi i theta} Z) e^{-2 pi i k theta} d theta`.
/// Exact for polynomials of degree `< k + nodes`.
pub fn homogeneous_projection<F>(f: F, k: u32, z: &[Complex64], nodes: usize) -> Complex64
where
    F: Fn(&[Complex64]) -> Complex64,
{
    let mut rotated = vec![Complex64::new(0.0, 0.0); z.len()];
    let mut acc = Complex64::new(0.0, 0.0);
    for l in 0..nodes {
        let theta = TAU * l as f64 / nodes as f64;
        let phase = Complex64::from_polar(1.0, theta);
        for (r, v) in rotated.iter_mut().zip(z) {
            *r = v * phase;
        }
        acc += f(&rotated) * Complex64::from_polar(1.0, -theta * k as f64);
    }
    acc / nodes as f64
}
