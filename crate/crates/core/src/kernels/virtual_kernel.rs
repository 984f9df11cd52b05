//! The generating function `F(t) = sum_k chi(k mu)/chi(0) t^k` in closed form.
//!
//! With `chi(k mu)/chi(0) = sum_j c_j binom(k+j, j)` and
//! `sum_k binom(k+j, j) t^k = (1-t)^-(j+1)`, the closed form is
//! `F(t) = sum_j c_j (1-t)^-(j+1)`. [`PoleConvention::AsPrinted`] keeps the
//! exponent `-j` for comparison only; it does not reproduce the series.

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::chi::{chi_polynomial, ChiPolynomial};
use crate::domains::DomainType;
use crate::error::{Error, Result};
use crate::polyalg::{
    binomial, binomial_basis_decompose, binomial_basis_eval, format_rational, int, to_f64, Rational,
    RationalPolynomial,
};

/// Exponent attached to `c_j` in the pole expansion of `F`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PoleConvention {
    /// `(1-t)^-(j+1)`: agrees with the defining series.
    #[default]
    Shifted,
    /// `(1-t)^-j`.
    AsPrinted,
}

impl PoleConvention {
    fn pole_order(self, j: usize) -> u64 {
        match self {
            Self::Shifted => j as u64 + 1,
            Self::AsPrinted => j as u64,
        }
    }
}

/// Coefficients `c_{mu,j}` of `F_{chi,mu}` in the pole basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualKernel {
    chi: ChiPolynomial,
    mu: Rational,
    ratios: RationalPolynomial,
    coeffs: Vec<Rational>,
}

/// Decomposes `k -> chi(k mu)/chi(0)` in the binomial basis. Requires `mu >= 0`,
/// otherwise the weights `N^(k mu)` stop being integrable for large `k`.
pub fn virtual_decomposition(d: DomainType, mu: &Rational) -> Result<VirtualKernel> {
    if mu.is_negative() {
        return Err(Error::Parameter(format!(
            "virtual kernel needs mu >= 0, got {}",
            format_rational(mu)
        )));
    }
    let chi = chi_polynomial(d)?;
    let ratios = chi.expanded().compose_scale(mu).scale(&chi.at_zero().recip());
    let coeffs = binomial_basis_decompose(&ratios);
    Ok(VirtualKernel { chi, mu: mu.clone(), ratios, coeffs })
}

impl VirtualKernel {
    pub fn domain(&self) -> DomainType {
        self.chi.domain()
    }

    pub fn mu(&self) -> &Rational {
        &self.mu
    }

    pub fn chi(&self) -> &ChiPolynomial {
        &self.chi
    }

    /// `c_{mu,0}, ..., c_{mu,n}`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The polynomial `q(k) = chi(k mu)/chi(0)`.
    pub fn weight_ratios(&self) -> &RationalPolynomial {
        &self.ratios
    }

    /// `k`-th Taylor coefficient of `F` at `t = 0`, rebuilt from the `c_j`:
    /// `sum_j c_j binom(k+j, j)`. Equals `chi(k mu)/chi(0)`.
    pub fn recover_weighted_ratio(&self, k: u64) -> Rational {
        binomial_basis_eval(&self.coeffs, &int(k as i64))
    }

    /// `(1/m!) d^m F / dt^m` at `t`, `|t| < 1`.
    pub fn f_eval(&self, t: Complex64, m: u32) -> Result<Complex64> {
        self.f_eval_with(t, m, PoleConvention::Shifted)
    }

    pub fn f_eval_with(&self, t: Complex64, m: u32, convention: PoleConvention) -> Result<Complex64> {
        if !(t.norm() < 1.0) {
            return Err(Error::Divergence(t.norm()));
        }
        let one_minus = Complex64::new(1.0, 0.0) - t;
        let inv = one_minus.inv();
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let a = convention.pole_order(j);
            // (1/m!) d^m (1-t)^-a = (a)_m / m! (1-t)^-(a+m)
            let weight = if m == 0 {
                Rational::one()
            } else if a == 0 {
                continue;
            } else {
                binomial(a + m as u64 - 1, m as u64)
            };
            acc += inv.powi((a + m as u64) as i32) * to_f64(&(c * weight));
        }
        Ok(acc)
    }

    /// Partial sum `sum_{k<terms} binom(k+m, m) q(k+m) t^k` of the term-wise
    /// differentiated series.
    pub fn series_partial_sum(&self, t: Complex64, m: u32, terms: usize) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut power = Complex64::new(1.0, 0.0);
        for k in 0..terms as u64 {
            acc += power * self.series_term_weight(k, m);
            power *= t;
        }
        acc
    }

    pub(crate) fn series_term_weight(&self, k: u64, m: u32) -> f64 {
        let coeff = binomial(k + m as u64, m as u64) * self.ratios.eval(&int((k + m as u64) as i64));
        to_f64(&coeff)
    }
}

pub fn f_eval(vk: &VirtualKernel, t: Complex64, m: u32) -> Result<Complex64> {
    vk.f_eval(t, m)
}

pub fn recover_weighted_ratio(vk: &VirtualKernel, k: u64) -> Rational {
    vk.recover_weighted_ratio(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rat;

    fn disk() -> DomainType {
        DomainType::I { m: 1, n: 1 }
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(virtual_decomposition(disk(), &int(1)).unwrap().coeffs(), &[int(0), int(1)]);
        assert_eq!(
            virtual_decomposition(disk(), &rat(1, 2)).unwrap().coeffs(),
            &[rat(1, 2), rat(1, 2)]
        );
        for d in ["I:2,3", "III:3", "VI"] {
            let d: DomainType = d.parse().unwrap();
            let vk = virtual_decomposition(d, &int(0)).unwrap();
            assert_eq!(vk.coeffs()[0], int(1));
            assert!(vk.coeffs()[1..].iter().all(Zero::is_zero));
        }
        assert!(virtual_decomposition(disk(), &rat(-1, 2)).is_err());
    }

    #[test]
    fn leading_coefficient_nonzero() {
        for d in ["I:2,2", "II:5", "IV:4", "V"] {
            let d: DomainType = d.parse().unwrap();
            let vk = virtual_decomposition(d, &rat(2, 3)).unwrap();
            assert_eq!(vk.coeffs().len(), d.invariants().dim as usize + 1);
            assert!(!vk.coeffs().last().unwrap().is_zero());
        }
    }

    #[test]
    fn f_eval_examples() {
        let vk = virtual_decomposition(disk(), &int(1)).unwrap();
        assert!((vk.f_eval(c(0.0), 0).unwrap() - c(1.0)).norm() < 1e-15);
        assert!((vk.f_eval(c(0.5), 0).unwrap() - c(4.0)).norm() < 1e-14);
        for t in [0.0, 0.2, 0.7, -0.4] {
            let expected = 2.0 * (1.0_f64 - t).powi(-3);
            assert!((vk.f_eval(c(t), 1).unwrap() - c(expected)).norm() < 1e-12 * expected);
        }
        assert!(matches!(vk.f_eval(c(1.0), 0), Err(Error::Divergence(_))));
    }

    #[test]
    fn f_eval_matches_direct_series_sum() {
        // Disk, mu = 1: sum_k (k+1) 2^-k = 4, summed directly.
        let direct: f64 = (0..200).map(|k| (k + 1) as f64 * 0.5f64.powi(k)).sum();
        let vk = virtual_decomposition(disk(), &int(1)).unwrap();
        assert!((vk.f_eval(c(0.5), 0).unwrap().re - direct).abs() < 1e-12);
    }

    #[test]
    fn as_printed_exponent_differs() {
        let vk = virtual_decomposition(disk(), &int(1)).unwrap();
        let printed = vk.f_eval_with(c(0.5), 0, PoleConvention::AsPrinted).unwrap();
        assert!((printed - c(2.0)).norm() < 1e-14);
        let shifted = vk.f_eval_with(c(0.5), 0, PoleConvention::Shifted).unwrap();
        assert!((shifted - printed).norm() > 1.0);
    }

    #[test]
    fn recovery_examples() {
        let vk = virtual_decomposition(disk(), &int(1)).unwrap();
        assert_eq!(vk.recover_weighted_ratio(0), int(1));
        assert_eq!(vk.recover_weighted_ratio(3), int(4));
        let iv3 = virtual_decomposition("IV:3".parse().unwrap(), &int(1)).unwrap();
        assert_eq!(iv3.recover_weighted_ratio(2), int(14));
    }

    #[test]
    fn mu_zero_is_geometric() {
        let vk = virtual_decomposition("III:2".parse().unwrap(), &int(0)).unwrap();
        for t in [0.1, 0.3, 0.5] {
            assert_eq!(vk.f_eval(c(t), 0).unwrap(), c(1.0 / (1.0 - t)));
        }
    }

    #[test]
    fn derivatives_positive_on_unit_interval() {
        for d in ["I:2,2", "III:2", "IV:5", "II:4"] {
            let vk = virtual_decomposition(d.parse().unwrap(), &rat(1, 2)).unwrap();
            for m in 0..4 {
                for t in [0.0, 0.25, 0.5, 0.9, 0.99] {
                    let v = vk.f_eval(c(t), m).unwrap();
                    assert!(v.re > 0.0 && v.im == 0.0, "{d} m={m} t={t}");
                }
            }
        }
    }

    #[test]
    fn complex_argument_conjugation() {
        let vk = virtual_decomposition("IV:4".parse().unwrap(), &int(1)).unwrap();
        let t = Complex64::new(0.3, -0.4);
        let a = vk.f_eval(t, 2).unwrap();
        let b = vk.f_eval(t.conj(), 2).unwrap();
        assert!((a - b.conj()).norm() < 1e-12 * a.norm());
    }
}
