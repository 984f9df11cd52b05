//! The Selberg integral
//! `int_[0,1]^n prod t_j^(x-1) (1-t_j)^(y-1) prod_{i<j} |t_i - t_j|^(2z) dt`.

use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use super::quadrature::{gauss_legendre, square_integral};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SelbergParams {
    x: f64,
    y: f64,
    z: f64,
    n: u32,
}

impl SelbergParams {
    /// Accepts `x, y, z > 0` and `n >= 1`.
    pub fn new(x: f64, y: f64, z: f64, n: u32) -> Result<Self> {
        if !(x > 0.0 && y > 0.0 && z > 0.0) || !(x + y + z).is_finite() || n == 0 {
            return Err(Error::Parameter(format!(
                "Selberg integral needs x, y, z > 0 and n >= 1, got x={x}, y={y}, z={z}, n={n}"
            )));
        }
        Ok(Self { x, y, z, n })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

/// Closed form, as a product of Gamma quotients evaluated in log space.
pub fn selberg_value(p: &SelbergParams) -> f64 {
    let SelbergParams { x, y, z, n } = *p;
    let nf = f64::from(n);
    let log: f64 = (1..=n)
        .map(|j| {
            let k = f64::from(j - 1);
            ln_gamma(x + k * z) + ln_gamma(y + k * z) + ln_gamma(f64::from(j) * z + 1.0)
                - ln_gamma(x + y + (nf + k - 1.0) * z)
                - ln_gamma(z + 1.0)
        })
        .sum();
    log.exp()
}

fn weight(t: f64, x: f64, y: f64) -> f64 {
    t.powf(x - 1.0) * (1.0 - t).powf(y - 1.0)
}

/// Direct quadrature for `n = 1` and `n = 2`.
pub fn selberg_quadrature(p: &SelbergParams, nodes: usize) -> Result<f64> {
    let SelbergParams { x, y, z, n } = *p;
    match n {
        1 => Ok(gauss_legendre(nodes, 0.0, 1.0).iter().map(|&(t, w)| w * weight(t, x, y)).sum()),
        2 => Ok(square_integral(
            |a, b| weight(a, x, y) * weight(b, x, y) * (a - b).abs().powf(2.0 * z),
            nodes,
        )),
        _ => Err(Error::Parameter(format!("quadrature is implemented for n <= 2, got {n}"))),
    }
}
