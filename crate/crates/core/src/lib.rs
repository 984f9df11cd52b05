//! Weighted and virtual Bergman kernels of irreducible bounded circled
//! symmetric domains and of the Hartogs domains obtained by inflating them
//! with Hermitian-ball fibers.
//!
//! * [`polyalg`]: exact rational polynomials, rising factorials, and the
//!   binomial basis `(k+1)_j / j!`.
//! * [`domains`]: the six domain types, their numerical invariants, the
//!   generic norm, membership and uniform sampling.
//! * [`kernels`]: the Hua polynomial `chi`, weighted kernels, the virtual
//!   kernel and its derivative family, inflated-domain kernels, ball harmonics.
//! * [`verify`]: independent numerical oracles (Monte Carlo, Selberg,
//!   quadrature) for all of the above.
//! * [`cli`]: the `kernelforge` command line.

pub mod cli;
pub mod domains;
pub mod error;
pub mod kernels;
pub mod polyalg;
pub mod verify;

pub use domains::{DomainPoint, DomainType, Invariants};
pub use error::{Error, Result};
pub use kernels::{ChiPolynomial, KernelValue, Normalization, PoleConvention, VirtualKernel};
pub use polyalg::{FactorizedPoly, Rational, RationalPolynomial};
