use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("{0} is not supported for exceptional domain {1}")]
    UnsupportedDomain(&'static str, String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("point lies outside the domain: {0}")]
    OutsideDomain(String),
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("kernel is singular: generic norm vanishes at this pair of points")]
    Singular,
    #[error("generic norm N(z,w) = {re}{im:+}i has non-positive real part; principal power is not defined")]
    Branch { re: f64, im: f64 },
    #[error("series diverges: |t| = {0} >= 1")]
    Divergence(f64),
    #[error("parse error: {0}")]
    Parse(String),
}
