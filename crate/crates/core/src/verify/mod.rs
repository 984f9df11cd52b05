//! Independent numerical oracles for the closed forms in [`crate::kernels`].

mod checks;
mod mc;
mod quadrature;
mod selberg;

use serde::Serialize;
use serde_json::Value;

pub use checks::{
    check_homogeneous_projection, check_hua_mc, check_inflation_ball, check_reproducing_disk, check_selberg_beta,
    check_selberg_quadrature, check_series_vs_closed, INTERIOR_RADIUS,
};
pub use mc::{mc_hua, mc_volume, McEstimate, BATCHES};
pub use quadrature::{ball_integral, gauss_legendre, square_integral};
pub use selberg::{selberg_quadrature, selberg_value, SelbergParams};

/// Outcome of one check. `tolerance` applies to the quantity named in
/// `details` (an absolute or relative error, or a standard-error multiple).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub name: String,
    pub params: Value,
    pub expected: Value,
    pub observed: Value,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
