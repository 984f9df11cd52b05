//! The Hua polynomial `chi` of a domain: `chi(0) / chi(s)` is the normalized
//! integral of `N(z,z)^s` against the volume form.

use num_traits::{One, Zero};

use crate::domains::{DomainType, Invariants};
use crate::error::{Error, Result};
use crate::polyalg::{int, rat, FactorizedPoly, Rational, RationalPolynomial};

/// `chi` in factored rising-factorial form and fully expanded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiPolynomial {
    domain: DomainType,
    factored: FactorizedPoly,
    expanded: RationalPolynomial,
}

impl ChiPolynomial {
    pub fn domain(&self) -> DomainType {
        self.domain
    }

    pub fn factored(&self) -> &FactorizedPoly {
        &self.factored
    }

    pub fn expanded(&self) -> &RationalPolynomial {
        &self.expanded
    }

    pub fn degree(&self) -> usize {
        self.factored.degree()
    }

    pub fn eval(&self, s: &Rational) -> Rational {
        self.factored.eval(s)
    }

    pub fn eval_real(&self, s: f64) -> f64 {
        self.factored.eval_real(s)
    }

    pub fn at_zero(&self) -> Rational {
        self.eval(&Rational::zero())
    }
}

/// `prod_{j=1}^{r} (s + 1 + (j-1) a/2)_{1 + b + (r-j) a}` from the invariants.
pub fn chi_from_invariants(inv: &Invariants) -> FactorizedPoly {
    let (r, a, b) = (inv.rank, inv.a, inv.b);
    FactorizedPoly::from_pairs((1..=r).map(|j| {
        let shift = int(1) + rat(((j - 1) * a) as i64, 2);
        (shift, 1 + b + (r - j) * a)
    }))
}

/// Per-type closed forms of `chi`.
pub fn chi_from_table(d: DomainType) -> FactorizedPoly {
    match d {
        DomainType::I { m, n } => FactorizedPoly::from_pairs((1..=m).map(|j| (int(j as i64), n))),
        DomainType::II { n } if n % 2 == 0 => {
            let p = n / 2;
            FactorizedPoly::from_pairs((1..=p).map(|j| (int(2 * j as i64 - 1), 2 * p - 1)))
        }
        DomainType::II { n } => {
            let p = n / 2;
            FactorizedPoly::from_pairs((1..=p).map(|j| (int(2 * j as i64 - 1), 2 * p + 1)))
        }
        DomainType::III { n } => {
            FactorizedPoly::from_pairs((1..=n).map(|j| (rat(j as i64 + 1, 2), 1 + n - j)))
        }
        DomainType::IV { n } => FactorizedPoly::from_pairs([(int(1), n - 1), (rat(n as i64, 2), 1)]),
        DomainType::V => FactorizedPoly::from_pairs([(int(1), 8), (int(4), 8)]),
        DomainType::VI => FactorizedPoly::from_pairs([(int(1), 9), (int(5), 9), (int(9), 9)]),
    }
}

/// Builds `chi` from both the invariant formula and the per-type table and
/// checks that they expand to the same polynomial of degree `dim`.
pub fn chi_polynomial(d: DomainType) -> Result<ChiPolynomial> {
    d.validate()?;
    let inv = d.invariants();
    let factored = chi_from_table(d);
    let expanded = factored.expand();
    let generic = chi_from_invariants(&inv).expand();
    assert_eq!(expanded, generic, "chi table and invariant formula disagree for {d}");
    assert_eq!(expanded.degree(), Some(inv.dim as usize), "deg chi != dim for {d}");
    Ok(ChiPolynomial { domain: d, factored, expanded })
}

/// `chi(0) / chi(s)`, the Hua integral normalized by the volume. Requires `s > -1`.
pub fn hua_ratio(d: DomainType, s: &Rational) -> Result<Rational> {
    if *s <= -Rational::one() {
        return Err(Error::Parameter(format!(
            "Hua integral needs s > -1, got {}",
            crate::polyalg::format_rational(s)
        )));
    }
    let chi = chi_polynomial(d)?;
    Ok(chi.at_zero() / chi.eval(s))
}

pub fn hua_ratio_real(d: DomainType, s: f64) -> Result<f64> {
    if !(s > -1.0) {
        return Err(Error::Parameter(format!("Hua integral needs s > -1, got {s}")));
    }
    let chi = chi_polynomial(d)?;
    Ok(chi.eval_real(0.0) / chi.eval_real(s))
}
