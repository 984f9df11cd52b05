//! Irreducible bounded circled symmetric domains.
//!
//! | type          | space                      | r       | a     | b       |
//! |---------------|----------------------------|---------|-------|---------|
//! | `I:m,n`       | `m x n` matrices           | `m`     | 2     | `n-m`   |
//! | `II:n`        | `n x n` alternating        | `n/2`   | 4     | `0`/`2` |
//! | `III:n`       | `n x n` symmetric          | `n`     | 1     | 0       |
//! | `IV:n`        | `C^n`, Lie ball            | 2       | `n-2` | 0       |
//! | `V`           | `C^16`                     | 2       | 6     | 4       |
//! | `VI`          | `C^27`                     | 3       | 8     | 0       |
//!
//! The matrix types are the open unit balls of the operator norm. Points of
//! the exceptional types V and VI are not representable here; their
//! invariants are.

mod linalg;
mod sampling;

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub use sampling::{sample_uniform, Sample, Sampler};

/// Classification label of an irreducible bounded circled symmetric domain.
///
/// Use the checked constructors or [`FromStr`]; the enum fields are public for
/// matching, and every operation re-validates them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DomainType {
    I { m: u32, n: u32 },
    II { n: u32 },
    III { n: u32 },
    IV { n: u32 },
    V,
    VI,
}

/// Numerical invariants of the associated Hermitian Jordan triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Invariants {
    #[serde(rename = "r")]
    pub rank: u32,
    pub a: u32,
    pub b: u32,
    #[serde(rename = "g")]
    pub genus: u32,
    #[serde(rename = "n")]
    pub dim: u32,
}

impl DomainType {
    pub fn type_i(m: u32, n: u32) -> Result<Self> {
        Self::I { m, n }.validated()
    }

    pub fn type_ii(n: u32) -> Result<Self> {
        Self::II { n }.validated()
    }

    pub fn type_iii(n: u32) -> Result<Self> {
        Self::III { n }.validated()
    }

    pub fn type_iv(n: u32) -> Result<Self> {
        Self::IV { n }.validated()
    }

    pub fn validate(&self) -> Result<()> {
        let reject = |msg: String| Err(Error::InvalidDomain(msg));
        match *self {
            Self::I { m, n } if m < 1 || m > n => reject(format!("TypeI requires 1≤m≤n, got m={m}, n={n}")),
            Self::II { n } if n < 2 => reject(format!("TypeII requires n≥2, got n={n}")),
            Self::III { n } if n < 1 => reject(format!("TypeIII requires n≥1, got n={n}")),
            Self::IV { n } if n < 3 => reject(format!(
                "TypeIV requires n≥3, got n={n} (IV:1 is the disk I:1,1; IV:2 is the reducible bidisk)"
            )),
            _ => Ok(()),
        }
    }

    fn validated(self) -> Result<Self> {
        self.validate().map(|()| self)
    }

    pub fn is_exceptional(&self) -> bool {
        matches!(self, Self::V | Self::VI)
    }

    pub(crate) fn require_classical(&self, what: &'static str) -> Result<()> {
        self.validate()?;
        if self.is_exceptional() {
            Err(Error::UnsupportedDomain(what, self.to_string()))
        } else {
            Ok(())
        }
    }

    /// Rank, multiplicities, genus and complex dimension.
    ///
    /// Panics on an unvalidated label such as `IV { n: 2 }`.
    pub fn invariants(&self) -> Invariants {
        if let Err(e) = self.validate() {
            panic!("{e}");
        }
        let (rank, a, b) = match *self {
            Self::I { m, n } => (m, 2, n - m),
            Self::II { n } => (n / 2, 4, if n % 2 == 0 { 0 } else { 2 }),
            Self::III { n } => (n, 1, 0),
            Self::IV { n } => (2, n - 2, 0),
            Self::V => (2, 6, 4),
            Self::VI => (3, 8, 0),
        };
        let genus = 2 + a * (rank - 1) + b;
        let dim = rank * (1 + b) + a * rank * (rank - 1) / 2;
        assert_eq!(dim, self.ambient_dim(), "dimension formula disagrees for {self}");
        Invariants { rank, a, b, genus, dim }
    }

    /// Complex dimension of the ambient space, from its concrete model.
    pub fn ambient_dim(&self) -> u32 {
        match *self {
            Self::I { m, n } => m * n,
            Self::II { n } => n * (n - 1) / 2,
            Self::III { n } => n * (n + 1) / 2,
            Self::IV { n } => n,
            Self::V => 16,
            Self::VI => 27,
        }
    }

    /// Shape `(rows, cols)` of the matrix carrying a point; type IV is a column.
    pub fn point_shape(&self) -> Result<(usize, usize)> {
        self.require_classical("point representation")?;
        Ok(match *self {
            Self::I { m, n } => (m as usize, n as usize),
            Self::II { n } | Self::III { n } => (n as usize, n as usize),
            Self::IV { n } => (n as usize, 1),
            Self::V | Self::VI => unreachable!(),
        })
    }

    /// Rank-one domains are Hermitian unit balls and `m1` is the standard norm,
    /// so the volume form has total mass one.
    pub fn has_unit_volume(&self) -> bool {
        self.validate().is_ok() && !self.is_exceptional() && self.invariants().rank == 1
    }
}

impl fmt::Display for DomainType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::I { m, n } => write!(f, "I:{m},{n}"),
            Self::II { n } => write!(f, "II:{n}"),
            Self::III { n } => write!(f, "III:{n}"),
            Self::IV { n } => write!(f, "IV:{n}"),
            Self::V => f.write_str("V"),
            Self::VI => f.write_str("VI"),
        }
    }
}

impl FromStr for DomainType {
    type Err = Error;

    /// Grammar: `I:m,n | II:n | III:n | IV:n | V | VI`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let usage = || {
            Error::Parse(format!(
                "bad domain type {s:?}; expected one of I:m,n | II:n | III:n | IV:n | V | VI"
            ))
        };
        let (label, params) = match s.split_once(':') {
            Some((l, p)) => (l, Some(p)),
            None => (s, None),
        };
        let nums: Vec<u32> = match params {
            Some(p) => p
                .split(',')
                .map(|x| x.trim().parse::<u32>().map_err(|_| usage()))
                .collect::<Result<_>>()?,
            None => Vec::new(),
        };
        let d = match (label.to_ascii_uppercase().as_str(), nums.as_slice()) {
            ("I", &[m, n]) => Self::I { m, n },
            ("II", &[n]) => Self::II { n },
            ("III", &[n]) => Self::III { n },
            ("IV", &[n]) => Self::IV { n },
            ("V", &[]) => Self::V,
            ("VI", &[]) => Self::VI,
            _ => return Err(usage()),
        };
        d.validated()
    }
}

/// Constant `c` with `omega = c * dV_Lebesgue` in the independent coordinates
/// returned by [`DomainPoint::coordinates`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VolumeConvention {
    pub jacobian_to_lebesgue: f64,
}

/// `omega = alpha^n` with `alpha = (i / 2 pi) d dbar m1(z, z)`, where `m1` is
/// the `(1,1)` part of `1 - N`. Writing `m1 = sum_k w_k |xi_k|^2` gives
/// `c = n! prod(w_k) / pi^n`.
pub fn volume_convention(d: DomainType) -> Result<VolumeConvention> {
    d.require_classical("volume convention")?;
    let n = d.ambient_dim();
    // Coordinates with m1-weight 2: off-diagonal symmetric entries, Lie-ball coordinates.
    let doubled = match d {
        DomainType::III { n } => n * (n - 1) / 2,
        DomainType::IV { n } => n,
        _ => 0,
    };
    let log_c = statrs::function::gamma::ln_gamma(n as f64 + 1.0) + doubled as f64 * 2f64.ln()
        - n as f64 * std::f64::consts::PI.ln();
    Ok(VolumeConvention { jacobian_to_lebesgue: log_c.exp() })
}

/// A point of the ambient space of a classical domain. Matrix types are stored
/// with their natural shape, type IV as an `n x 1` column.
#[derive(Clone, Debug, PartialEq)]
pub struct DomainPoint {
    domain: DomainType,
    data: DMatrix<Complex64>,
}

impl DomainPoint {
    /// Checks shape, and exact (anti)symmetry for types II and III.
    pub fn new(domain: DomainType, data: DMatrix<Complex64>) -> Result<Self> {
        let (rows, cols) = domain.point_shape()?;
        if data.shape() != (rows, cols) {
            return Err(Error::Shape(format!(
                "{domain} needs a {rows}x{cols} matrix, got {}x{}",
                data.nrows(),
                data.ncols()
            )));
        }
        match domain {
            DomainType::II { .. } if data != -data.transpose() => {
                Err(Error::Shape(format!("{domain} points must be antisymmetric")))
            }
            DomainType::III { .. } if data != data.transpose() => {
                Err(Error::Shape(format!("{domain} points must be symmetric")))
            }
            _ => Ok(Self { domain, data }),
        }
    }

    pub fn origin(domain: DomainType) -> Result<Self> {
        let (rows, cols) = domain.point_shape()?;
        Ok(Self { domain, data: DMatrix::zeros(rows, cols) })
    }

    /// Builds a point from independent coordinates: all entries row-major for
    /// type I, the strict upper triangle for II, the upper triangle with
    /// diagonal for III, the vector for IV.
    pub fn from_coordinates(domain: DomainType, coords: &[Complex64]) -> Result<Self> {
        let (rows, cols) = domain.point_shape()?;
        let expected = domain.ambient_dim() as usize;
        if coords.len() != expected {
            return Err(Error::Shape(format!(
                "{domain} has {expected} coordinates, got {}",
                coords.len()
            )));
        }
        let mut flat = vec![Complex64::new(0.0, 0.0); rows * cols];
        fill_row_major(domain, coords, &mut flat);
        Ok(Self { domain, data: DMatrix::from_row_slice(rows, cols, &flat) })
    }

    /// Accepts either every matrix entry (row-major) or the independent
    /// coordinates of [`DomainPoint::from_coordinates`].
    pub fn from_entries(domain: DomainType, entries: &[Complex64]) -> Result<Self> {
        let (rows, cols) = domain.point_shape()?;
        if entries.len() == rows * cols {
            Self::new(domain, DMatrix::from_row_slice(rows, cols, entries))
        } else {
            Self::from_coordinates(domain, entries)
        }
    }

    pub fn domain(&self) -> DomainType {
        self.domain
    }

    pub fn data(&self) -> &DMatrix<Complex64> {
        &self.data
    }

    pub fn coordinates(&self) -> Vec<Complex64> {
        let x = &self.data;
        match self.domain {
            DomainType::II { n } => {
                let n = n as usize;
                (0..n).flat_map(|i| (i + 1..n).map(move |j| x[(i, j)])).collect()
            }
            DomainType::III { n } => {
                let n = n as usize;
                (0..n).flat_map(|i| (i..n).map(move |j| x[(i, j)])).collect()
            }
            _ => self.row_major(),
        }
    }

    pub fn row_major(&self) -> Vec<Complex64> {
        self.data.transpose().as_slice().to_vec()
    }

    pub fn scaled(&self, t: f64) -> Self {
        Self { domain: self.domain, data: self.data.map(|v| v * t) }
    }

    /// Largest singular value of the matrix (Euclidean norm for type IV).
    pub fn spectral_norm(&self) -> f64 {
        self.data.singular_values().max()
    }

    /// Membership: operator norm `< 1` for matrix types; the two Lie-ball
    /// inequalities for type IV.
    pub fn contains(&self) -> bool {
        self.inside_norm().is_some()
    }

    /// `N(x, x)` when the point is interior, else `None`.
    pub fn inside_norm(&self) -> Option<f64> {
        let (rows, cols) = self.data.shape();
        diagonal_norm_if_inside(self.domain, &self.row_major(), rows, cols, &mut Vec::new())
    }
}

pub fn contains(p: &DomainPoint) -> bool {
    p.contains()
}

pub(crate) fn fill_row_major(domain: DomainType, coords: &[Complex64], flat: &mut [Complex64]) {
    match domain {
        DomainType::II { n } => {
            let n = n as usize;
            let mut it = coords.iter();
            for i in 0..n {
                flat[i * n + i] = Complex64::new(0.0, 0.0);
                for j in i + 1..n {
                    let v = *it.next().unwrap();
                    flat[i * n + j] = v;
                    flat[j * n + i] = -v;
                }
            }
        }
        DomainType::III { n } => {
            let n = n as usize;
            let mut it = coords.iter();
            for i in 0..n {
                for j in i..n {
                    let v = *it.next().unwrap();
                    flat[i * n + j] = v;
                    flat[j * n + i] = v;
                }
            }
        }
        _ => flat.copy_from_slice(coords),
    }
}

/// `N(x, x)` for a row-major point if it lies in the domain.
pub(crate) fn diagonal_norm_if_inside(
    domain: DomainType,
    x: &[Complex64],
    rows: usize,
    cols: usize,
    scratch: &mut Vec<Complex64>,
) -> Option<f64> {
    match domain {
        DomainType::IV { .. } => {
            let sq: f64 = x.iter().map(|v| v.norm_sqr()).sum();
            let q: Complex64 = x.iter().map(|v| v * v).sum();
            let n = 1.0 - 2.0 * sq + q.norm_sqr();
            (n > 0.0 && 2.0 - 2.0 * sq > 0.0).then_some(n)
        }
        DomainType::I { .. } | DomainType::III { .. } => {
            linalg::identity_minus_gram(x, rows, cols, scratch);
            linalg::hermitian_pd_det(scratch, rows)
        }
        DomainType::II { .. } => {
            // I + x conj(x) = I - x x^* for antisymmetric x.
            linalg::identity_minus_gram(x, rows, cols, scratch);
            linalg::hermitian_pd_det(scratch, rows).map(f64::sqrt)
        }
        DomainType::V | DomainType::VI => None,
    }
}

/// The generic norm `N(x, y)`: holomorphic in `x`, antiholomorphic in `y`,
/// with `N(0, 0) = 1`.
///
/// * I, III: `det(I - x y^*)`
/// * II: the polynomial square root of `det(I + x conj(y))`, computed as a
///   Pfaffian
/// * IV: `1 - 2 <x, y> + q(x) conj(q(y))` with `q(x) = sum x_i^2`
pub fn generic_norm(x: &DomainPoint, y: &DomainPoint) -> Result<Complex64> {
    let d = x.domain;
    d.require_classical("generic norm")?;
    if y.domain != d {
        return Err(Error::Shape(format!("points of {} and {} cannot be paired", d, y.domain)));
    }
    let one = Complex64::new(1.0, 0.0);
    Ok(match d {
        DomainType::I { .. } | DomainType::III { .. } => {
            let rows = x.data.nrows();
            (DMatrix::identity(rows, rows) - &x.data * y.data.adjoint()).determinant()
        }
        DomainType::II { n } => {
            let n = n as usize;
            let ybar = y.data.map(|v| v.conj());
            let mut block = skew_block(&x.data, &ybar, n);
            let mut reference = skew_block(&DMatrix::zeros(n, n), &DMatrix::zeros(n, n), n);
            linalg::pfaffian(&mut block, 2 * n) / linalg::pfaffian(&mut reference, 2 * n)
        }
        DomainType::IV { .. } => {
            let xs = x.data.as_slice();
            let ys = y.data.as_slice();
            let inner: Complex64 = xs.iter().zip(ys).map(|(a, b)| a * b.conj()).sum();
            let qx: Complex64 = xs.iter().map(|a| a * a).sum();
            let qy: Complex64 = ys.iter().map(|b| b * b).sum();
            one - inner * 2.0 + qx * qy.conj()
        }
        DomainType::V | DomainType::VI => unreachable!(),
    })
}

/// Row-major `[[a, -I], [I, b]]`, skew-symmetric when `a` and `b` are; its
/// Pfaffian squares to `det(I + a b)`.
fn skew_block(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>, n: usize) -> Vec<Complex64> {
    let size = 2 * n;
    let mut out = vec![Complex64::new(0.0, 0.0); size * size];
    for i in 0..n {
        for j in 0..n {
            out[i * size + j] = a[(i, j)];
            out[(n + i) * size + n + j] = b[(i, j)];
        }
        out[i * size + n + i] = Complex64::new(-1.0, 0.0);
        out[(n + i) * size + i] = Complex64::new(1.0, 0.0);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn classical_grid() -> Vec<DomainType> {
        let mut out = Vec::new();
        for n in 1..=4 {
            for m in 1..=n {
                out.push(DomainType::I { m, n });
            }
        }
        out.extend((2..=7).map(|n| DomainType::II { n }));
        out.extend((1..=5).map(|n| DomainType::III { n }));
        out.extend((3..=8).map(|n| DomainType::IV { n }));
        out
    }

    #[test]
    fn invariants_examples() {
        let inv = DomainType::type_i(2, 3).unwrap().invariants();
        assert_eq!((inv.rank, inv.a, inv.b, inv.genus, inv.dim), (2, 2, 1, 5, 6));
        let inv = DomainType::VI.invariants();
        assert_eq!((inv.rank, inv.a, inv.b, inv.genus, inv.dim), (3, 8, 0, 18, 27));
        let inv = DomainType::type_iv(5).unwrap().invariants();
        assert_eq!((inv.rank, inv.a, inv.b, inv.genus, inv.dim), (2, 3, 0, 5, 5));
        let inv = DomainType::V.invariants();
        assert_eq!((inv.rank, inv.a, inv.b, inv.genus, inv.dim), (2, 6, 4, 12, 16));
    }

    #[test]
    fn genus_matches_table() {
        for d in classical_grid() {
            let inv = d.invariants();
            let table_genus = match d {
                DomainType::I { m, n } => m + n,
                DomainType::II { n } => 2 * (n - 1),
                DomainType::III { n } => n + 1,
                DomainType::IV { n } => n,
                _ => unreachable!(),
            };
            assert_eq!(inv.genus, table_genus, "{d}");
            assert_eq!(inv.genus, 2 + inv.a * (inv.rank - 1) + inv.b);
        }
        assert_eq!(DomainType::V.invariants().genus, 12);
        assert_eq!(DomainType::VI.invariants().genus, 18);
    }

    #[test]
    fn low_dimensional_coincidences() {
        let g_n = |d: DomainType| {
            let i = d.invariants();
            (i.genus, i.dim)
        };
        assert_eq!(g_n(DomainType::II { n: 3 }), g_n(DomainType::I { m: 1, n: 3 }));
        assert_eq!(g_n(DomainType::II { n: 2 }), g_n(DomainType::I { m: 1, n: 1 }));
        assert_eq!(g_n(DomainType::IV { n: 3 }), g_n(DomainType::III { n: 2 }));
        assert_eq!(g_n(DomainType::IV { n: 4 }), g_n(DomainType::I { m: 2, n: 2 }));
        assert_eq!(g_n(DomainType::IV { n: 6 }), g_n(DomainType::II { n: 4 }));
    }

    #[test]
    fn parse_and_validate() {
        assert_eq!("I:2,3".parse::<DomainType>().unwrap(), DomainType::I { m: 2, n: 3 });
        assert_eq!("vi".parse::<DomainType>().unwrap(), DomainType::VI);
        assert_eq!("III:4".parse::<DomainType>().unwrap().to_string(), "III:4");
        let err = "IV:2".parse::<DomainType>().unwrap_err().to_string();
        assert!(err.contains("TypeIV requires n≥3"), "{err}");
        assert!("I:3,2".parse::<DomainType>().is_err());
        assert!("II:1".parse::<DomainType>().is_err());
        assert!("III:0".parse::<DomainType>().is_err());
        assert!("VII".parse::<DomainType>().is_err());
        assert!("V:3".parse::<DomainType>().is_err());
        assert!("I:2".parse::<DomainType>().is_err());
    }

    #[test]
    fn membership_examples() {
        let disk = DomainType::I { m: 1, n: 1 };
        assert!(DomainPoint::origin(disk).unwrap().contains());
        assert!(!DomainPoint::from_entries(disk, &[c(1.0, 0.0)]).unwrap().contains());
        let iv3 = DomainType::IV { n: 3 };
        let p = DomainPoint::from_entries(iv3, &[c(0.9, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(p.contains());
        assert!((p.inside_norm().unwrap() - 0.0361).abs() < 1e-12);
        // Lie ball is strictly smaller than the unit ball off the real axis.
        let q = DomainPoint::from_entries(iv3, &[c(0.6, 0.0), c(0.0, 0.6), c(0.0, 0.0)]).unwrap();
        assert!(!q.contains());
    }

    #[test]
    fn exceptional_points_unsupported() {
        assert!(matches!(DomainPoint::origin(DomainType::V), Err(Error::UnsupportedDomain(..))));
        assert!(matches!(volume_convention(DomainType::VI), Err(Error::UnsupportedDomain(..))));
    }

    #[test]
    fn shape_and_symmetry_checks() {
        let ii = DomainType::II { n: 3 };
        let sym = DMatrix::from_element(3, 3, c(0.1, 0.0));
        assert!(DomainPoint::new(ii, sym.clone()).is_err());
        assert!(DomainPoint::new(DomainType::III { n: 3 }, sym).is_ok());
        let p = DomainPoint::from_coordinates(ii, &[c(0.1, 0.0), c(0.2, 0.0), c(0.3, 0.0)]).unwrap();
        assert_eq!(p.data()[(2, 1)], c(-0.3, 0.0));
        assert_eq!(p.coordinates(), vec![c(0.1, 0.0), c(0.2, 0.0), c(0.3, 0.0)]);
        assert!(DomainPoint::from_entries(DomainType::I { m: 2, n: 2 }, &[c(0.0, 0.0); 3]).is_err());
    }

    #[test]
    fn generic_norm_examples() {
        let disk = DomainType::I { m: 1, n: 1 };
        let z = DomainPoint::from_entries(disk, &[c(0.3, 0.4)]).unwrap();
        let n = generic_norm(&z, &z).unwrap();
        assert!((n - c(1.0 - 0.25, 0.0)).norm() < 1e-15);
        for d in classical_grid() {
            let o = DomainPoint::origin(d).unwrap();
            assert!((generic_norm(&o, &o).unwrap() - c(1.0, 0.0)).norm() < 1e-14, "{d}");
        }
        let iv3 = DomainType::IV { n: 3 };
        for t in [0.0, 0.3, 0.77, 0.99] {
            let p = DomainPoint::from_entries(iv3, &[c(t, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
            let expected = (1.0 - t * t) * (1.0 - t * t);
            assert!((generic_norm(&p, &p).unwrap() - c(expected, 0.0)).norm() < 1e-14);
        }
    }

    fn random_inside(d: DomainType, rng: &mut ChaCha8Rng, count: usize) -> Vec<DomainPoint> {
        sample_uniform(d, rng.random(), count).unwrap().points
    }

    /// Random directions scaled to spectral norm in (0, 0.95), for matrix
    /// domains too large for rejection sampling.
    fn random_scaled(d: DomainType, rng: &mut ChaCha8Rng, count: usize) -> Vec<DomainPoint> {
        (0..count)
            .map(|_| {
                let coords: Vec<Complex64> = (0..d.ambient_dim())
                    .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                    .collect();
                let p = DomainPoint::from_coordinates(d, &coords).unwrap();
                let target = rng.random_range(0.05..0.95);
                p.scaled(target / p.spectral_norm())
            })
            .collect()
    }

    #[test]
    fn diagonal_norm_in_unit_interval_and_matches_general_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in classical_grid().into_iter().filter(|d| d.ambient_dim() <= 6) {
            for p in random_inside(d, &mut rng, 20) {
                let diag = p.inside_norm().unwrap();
                let general = generic_norm(&p, &p).unwrap();
                assert!(diag > 0.0 && diag <= 1.0, "{d}");
                assert!((general - c(diag, 0.0)).norm() < 1e-12, "{d}: {general} vs {diag}");
                assert!(p.spectral_norm() < 1.0 + 1e-12);
            }
        }
    }

    #[test]
    fn norm_decreases_along_rays_to_boundary() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let domains = [
            DomainType::I { m: 1, n: 1 },
            DomainType::I { m: 2, n: 3 },
            DomainType::II { n: 4 },
            DomainType::III { n: 2 },
            DomainType::IV { n: 4 },
        ];
        for d in domains {
            for p in random_inside(d, &mut rng, 20) {
                // Scale to the boundary: N(tx, tx) is a polynomial in t^2 vanishing at t = t_max.
                let mut lo = 1.0;
                let mut hi = 64.0;
                for _ in 0..80 {
                    let mid = 0.5 * (lo + hi);
                    if p.scaled(mid).contains() { lo = mid } else { hi = mid }
                }
                let mut prev = f64::INFINITY;
                for i in 0..=50 {
                    let t = lo * i as f64 / 50.0;
                    let v = generic_norm(&p.scaled(t), &p.scaled(t)).unwrap().re;
                    assert!(v < prev + 1e-14, "{d}: not decreasing at t={t}");
                    prev = v;
                }
                assert!(prev.abs() < 1e-9, "{d}: N at boundary = {prev}");
            }
        }
    }

    #[test]
    fn hermitian_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for d in [
            DomainType::I { m: 2, n: 3 },
            DomainType::III { n: 3 },
            DomainType::IV { n: 5 },
            DomainType::II { n: 4 },
        ] {
            let pts = random_inside(d, &mut rng, 20);
            for pair in pts.chunks(2) {
                let a = generic_norm(&pair[0], &pair[1]).unwrap();
                let b = generic_norm(&pair[1], &pair[0]).unwrap();
                assert!((a - b.conj()).norm() < 1e-13, "{d}");
            }
        }
        for n in [5, 6] {
            let pts = random_scaled(DomainType::II { n }, &mut rng, 20);
            for pair in pts.chunks(2) {
                let a = generic_norm(&pair[0], &pair[1]).unwrap();
                let b = generic_norm(&pair[1], &pair[0]).unwrap();
                assert!((a - b.conj()).norm() < 1e-13, "II:{n}");
                assert!(pair[0].contains());
            }
        }
    }

    #[test]
    fn type_ii_norm_squares_to_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for n in 2..=6u32 {
            let d = DomainType::II { n };
            let pts = random_scaled(d, &mut rng, 20);
            for pair in pts.chunks(2) {
                let (x, y) = (&pair[0], &pair[1]);
                for (a, b) in [(x, x), (x, y)] {
                    let nrm = generic_norm(a, b).unwrap();
                    let ybar = b.data().map(|v| v.conj());
                    let det = (DMatrix::identity(n as usize, n as usize) + a.data() * ybar).determinant();
                    assert!((nrm * nrm - det).norm() < 1e-10, "II:{n}");
                }
                assert!(generic_norm(x, x).unwrap().re > 0.0);
            }
        }
    }

    #[test]
    fn type_ii_small_cases_match_balls() {
        // II:2 is the disk, II:3 the unit ball of C^3.
        let z = c(0.3, -0.2);
        let p = DomainPoint::from_coordinates(DomainType::II { n: 2 }, &[z]).unwrap();
        assert!((generic_norm(&p, &p).unwrap() - c(1.0 - z.norm_sqr(), 0.0)).norm() < 1e-15);
        let coords = [c(0.1, 0.2), c(-0.3, 0.1), c(0.2, 0.0)];
        let x = DomainPoint::from_coordinates(DomainType::II { n: 3 }, &coords).unwrap();
        let w = [c(0.0, 0.3), c(0.1, 0.1), c(-0.2, 0.4)];
        let y = DomainPoint::from_coordinates(DomainType::II { n: 3 }, &w).unwrap();
        let inner: Complex64 = coords.iter().zip(&w).map(|(a, b)| a * b.conj()).sum();
        assert!((generic_norm(&x, &y).unwrap() - (c(1.0, 0.0) - inner)).norm() < 1e-14);
    }

    #[test]
    fn unit_volume_flags() {
        assert!(DomainType::I { m: 1, n: 4 }.has_unit_volume());
        assert!(DomainType::II { n: 3 }.has_unit_volume());
        assert!(DomainType::III { n: 1 }.has_unit_volume());
        assert!(!DomainType::I { m: 2, n: 2 }.has_unit_volume());
        assert!(!DomainType::V.has_unit_volume());
    }

    #[test]
    fn ball_volume_convention_is_unit_mass() {
        use std::f64::consts::PI;
        for n in 1..=5u32 {
            let c = volume_convention(DomainType::I { m: 1, n }).unwrap().jacobian_to_lebesgue;
            let leb_ball = PI.powi(n as i32) / (1..=n).map(f64::from).product::<f64>();
            assert!((c * leb_ball - 1.0).abs() < 1e-13);
        }
    }
}
