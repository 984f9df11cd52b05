//! Closed-form kernels on a domain `Omega`, on its weighted spaces
//! `H^(mu)` (weight `N(z,z)^mu`), and on the inflated domains
//! `{(z, Z) : |Z|^2 < N(z,z)^mu}`.
//!
//! Volume bookkeeping: `Omega` carries `omega = alpha^n`, the inflated domain
//! carries `omega_V ^ omega_m`, and only rank-one domains (balls) have an
//! exactly known total mass. Elsewhere kernel values are reported either
//! volume-normalized (as if `int omega = 1`) or divided by a caller-supplied
//! volume estimate; [`Normalization`] records which.

mod ball;
mod chi;
mod virtual_kernel;

use num_complex::Complex64;
use num_traits::One;
use serde::Serialize;

use crate::domains::{generic_norm, DomainPoint};
use crate::error::{Error, Result};
use crate::polyalg::{format_rational, to_f64, Rational};

pub use ball::{ball_harmonic, ball_kernel, hermitian_inner, homogeneous_projection, norm_sqr, projection_nodes};
pub use chi::{chi_from_invariants, chi_from_table, chi_polynomial, hua_ratio, hua_ratio_real, ChiPolynomial};
pub use virtual_kernel::{f_eval, recover_weighted_ratio, virtual_decomposition, PoleConvention, VirtualKernel};

/// What a [`KernelValue`] is measured against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// Quotient by the unweighted Bergman kernel at the same pair of points.
    RatioToUnweighted,
    /// `vol(Omega)` times the kernel, i.e. the kernel for `int omega = 1`.
    VolumeNormalized,
    /// Absolute; the volume is known exactly (rank-one domains, mass one).
    AbsoluteExactVolume,
    /// Absolute, divided by a Monte Carlo estimate of the volume.
    AbsoluteMcVolume,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KernelValue {
    #[serde(serialize_with = "serialize_complex")]
    pub value: Complex64,
    pub normalization: Normalization,
}

fn serialize_complex<S: serde::Serializer>(v: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Complex", 2)?;
    st.serialize_field("re", &v.re)?;
    st.serialize_field("im", &v.im)?;
    st.end()
}

fn require_inside(p: &DomainPoint, label: &str) -> Result<f64> {
    p.inside_norm()
        .ok_or_else(|| Error::OutsideDomain(format!("{label} is not in {}", p.domain())))
}

/// `N(z,w)^-mu` on the principal branch, defined where `Re N(z,w) > 0`.
fn norm_power(n: Complex64, mu: &Rational) -> Result<Complex64> {
    if n.norm() == 0.0 {
        return Err(Error::Singular);
    }
    if mu.is_integer() {
        let e = to_f64(mu) as i32;
        return Ok(n.powi(-e));
    }
    if !(n.re > 0.0) {
        return Err(Error::Branch { re: n.re, im: n.im });
    }
    Ok(n.powf(-to_f64(mu)))
}

fn volume_scale(z: &DomainPoint, volume: Option<f64>) -> Result<(f64, Normalization)> {
    match volume {
        Some(v) if v > 0.0 => Ok((v, Normalization::AbsoluteMcVolume)),
        Some(v) => Err(Error::Parameter(format!("volume must be positive, got {v}"))),
        None if z.domain().has_unit_volume() => Ok((1.0, Normalization::AbsoluteExactVolume)),
        None => Ok((1.0, Normalization::VolumeNormalized)),
    }
}

/// `K^(mu)(z,w) / K(z,w) = (chi(mu)/chi(0)) N(z,w)^-mu`, for `mu > -1`.
pub fn weighted_kernel_ratio(mu: &Rational, z: &DomainPoint, w: &DomainPoint) -> Result<KernelValue> {
    if *mu <= -Rational::one() {
        return Err(Error::Parameter(format!("weighted space needs mu > -1, got {}", format_rational(mu))));
    }
    require_inside(z, "z")?;
    require_inside(w, "w")?;
    let chi = chi_polynomial(z.domain())?;
    let n = generic_norm(z, w)?;
    let prefactor = to_f64(&(chi.eval(mu) / chi.at_zero()));
    Ok(KernelValue { value: norm_power(n, mu)? * prefactor, normalization: Normalization::RatioToUnweighted })
}

/// Bergman kernel `N(z,w)^-g / vol(Omega)`. With `volume = None` the volume is
/// exact for balls and taken as one otherwise.
pub fn bergman_kernel(z: &DomainPoint, w: &DomainPoint, volume: Option<f64>) -> Result<KernelValue> {
    require_inside(z, "z")?;
    require_inside(w, "w")?;
    let g = z.domain().invariants().genus as i32;
    let n = generic_norm(z, w)?;
    if n.norm() == 0.0 {
        return Err(Error::Singular);
    }
    let (vol, normalization) = volume_scale(z, volume)?;
    Ok(KernelValue { value: n.powi(-g) / vol, normalization })
}

/// `L_m(z, w; r) = (1/m!) d^m/dr^m L_0(z, w; r)`, where
/// `L_0(z, w; r) = sum_k K_{N^(k mu)}(z, w) r^k = K(z,w) F(r N(z,w)^-mu)`.
pub fn derived_kernel(
    vk: &VirtualKernel,
    m: u32,
    z: &DomainPoint,
    w: &DomainPoint,
    r: Complex64,
    volume: Option<f64>,
) -> Result<KernelValue> {
    derived_kernel_with(vk, m, z, w, r, volume, PoleConvention::Shifted)
}

pub fn derived_kernel_with(
    vk: &VirtualKernel,
    m: u32,
    z: &DomainPoint,
    w: &DomainPoint,
    r: Complex64,
    volume: Option<f64>,
    convention: PoleConvention,
) -> Result<KernelValue> {
    if z.domain() != vk.domain() {
        return Err(Error::Shape(format!("point of {} used with kernel of {}", z.domain(), vk.domain())));
    }
    let base = bergman_kernel(z, w, volume)?;
    let n = generic_norm(z, w)?;
    let scale = norm_power(n, vk.mu())?;
    let f = vk.f_eval_with(r * scale, m, convention)?;
    Ok(KernelValue { value: base.value * scale.powi(m as i32) * f, normalization: base.normalization })
}

/// Virtual Bergman kernel on the diagonal, `K(z) F(r / N(z,z)^mu)`, for
/// `0 <= r < N(z,z)^mu`.
pub fn virtual_kernel_value(vk: &VirtualKernel, z: &DomainPoint, r: f64, volume: Option<f64>) -> Result<KernelValue> {
    let n = require_inside(z, "z")?;
    let bound = n.powf(to_f64(vk.mu()));
    if !(r >= 0.0) || !(r < bound) {
        return Err(Error::OutsideDomain(format!("r = {r} must lie in [0, N(z,z)^mu = {bound})")));
    }
    derived_kernel(vk, 0, z, z, Complex64::new(r, 0.0), volume)
}

/// Bergman kernel of the inflated domain `{(z, Z) : |Z|^2 < N(z,z)^mu}` in
/// `Omega x C^m`, with respect to `omega_V ^ omega_m`:
/// `L_m(z, w; <Z, W>)`.
pub fn inflated_kernel(
    vk: &VirtualKernel,
    z: &DomainPoint,
    fiber_z: &[Complex64],
    w: &DomainPoint,
    fiber_w: &[Complex64],
    volume: Option<f64>,
) -> Result<KernelValue> {
    inflated_kernel_with(vk, z, fiber_z, w, fiber_w, volume, PoleConvention::Shifted)
}

pub fn inflated_kernel_with(
    vk: &VirtualKernel,
    z: &DomainPoint,
    fiber_z: &[Complex64],
    w: &DomainPoint,
    fiber_w: &[Complex64],
    volume: Option<f64>,
    convention: PoleConvention,
) -> Result<KernelValue> {
    let m = fiber_z.len();
    if fiber_w.len() != m {
        return Err(Error::Shape(format!("fiber dimensions differ: {m} vs {}", fiber_w.len())));
    }
    let mu = to_f64(vk.mu());
    for (base, fiber, label) in [(z, fiber_z, "(z, Z)"), (w, fiber_w, "(w, W)")] {
        let n = require_inside(base, label)?;
        if !(norm_sqr(fiber) < n.powf(mu)) {
            return Err(Error::OutsideDomain(format!("{label}: |Z|^2 must be < N(z,z)^mu")));
        }
    }
    derived_kernel_with(vk, m as u32, z, w, hermitian_inner(fiber_z, fiber_w), volume, convention)
}
