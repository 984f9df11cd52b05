//! Exact univariate polynomial algebra over arbitrary-precision rationals.
//!
//! Polynomials are stored densely (`coeffs[i]` multiplies `x^i`) and are always
//! trimmed, so structural equality is mathematical equality. A
//! [`FactorizedPoly`] is a product of rising factorials `(x + shift)_length`
//! and expands to a [`RationalPolynomial`].
//!
//! [`binomial_basis_decompose`] rewrites a polynomial `q(k)` in the basis
//! `(k+1)_j / j! = binom(k+j, j)`, which is the basis in which the generating
//! function `sum_k q(k) t^k` becomes a sum of poles `(1-t)^-(j+1)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Shorthand constructor for small rationals. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Nearest `f64` to an exact rational.
pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Both parts overflow f64; fall back to a ratio of scaled values.
        let n = q.numer().bits() as i64;
        let d = q.denom().bits() as i64;
        let shift = (n.max(d) - 1000).max(0) as u64;
        let nf = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let df = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        nf / df
    })
}

/// Parses `"p/q"`, integers and finite decimals (`"0.25"`, `"-1.5"`, `"2e-3"`)
/// into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{whole}{frac}");
    let mut value = Rational::from_integer(BigInt::from_str(&all_digits).map_err(|_| bad())?);
    let scale = exponent - frac.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Ok(if negative { -value } else { value })
}

/// Renders a rational as `"p"` or `"p/q"`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `s (s+1) ... (s+k-1)`; the empty product when `k == 0`.
pub fn rising_factorial(s: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    let mut term = s.clone();
    for _ in 0..k {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

/// `binom(n, k)` as an exact integer-valued rational.
pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

/// Dense polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `x + shift`.
    pub fn linear(shift: Rational) -> Self {
        Self::from_coeffs(vec![shift, Rational::one()])
    }

    /// Builds a polynomial from coefficients (index = degree), stripping
    /// trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation in `f64`.
    pub fn eval_real(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + to_f64(c))
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// `p(factor * x)`.
    pub fn compose_scale(&self, factor: &Rational) -> Self {
        let mut power = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &power);
            power *= factor;
        }
        Self::from_coeffs(out)
    }

    /// `p(x + shift)`.
    pub fn compose_shift(&self, shift: &Rational) -> Self {
        let x_plus = Self::linear(shift.clone());
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * &x_plus) + &Self::constant(c.clone()))
    }

    /// The expanded rising factorial `(x + shift)_length`.
    pub fn rising_factorial(shift: &Rational, length: u32) -> Self {
        let mut acc = Self::one();
        for i in 0..length {
            acc = &acc * &Self::linear(shift + int(i as i64));
        }
        acc
    }

    /// Pretty form such as `s^3 + 9/2 s^2 + 13/2 s + 3`, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_owned();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let monomial = match i {
                0 => String::new(),
                1 => var.to_owned(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                out.push_str(&format_rational(&magnitude));
            } else if magnitude.is_one() {
                out.push_str(&monomial);
            } else {
                out.push_str(&format!("{} {monomial}", format_rational(&magnitude)));
            }
        }
        out
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("s"))
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn add(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn sub(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn neg(self) -> RationalPolynomial {
        RationalPolynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn mul(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPolynomial::from_coeffs(out)
    }
}

/// One rising-factorial factor `(x + shift)_length`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RisingFactor {
    pub shift: Rational,
    pub length: u32,
}

impl RisingFactor {
    pub fn new(shift: Rational, length: u32) -> Self {
        Self { shift, length }
    }

    fn shift_text(&self, var: &str) -> String {
        if self.shift.is_zero() {
            var.to_owned()
        } else if self.shift.is_negative() {
            format!("{var}-{}", format_rational(&-&self.shift))
        } else {
            format!("{var}+{}", format_rational(&self.shift))
        }
    }
}

/// Product of rising factorials `prod_i (x + shift_i)_{length_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FactorizedPoly {
    factors: Vec<RisingFactor>,
}

impl FactorizedPoly {
    pub fn new(factors: Vec<RisingFactor>) -> Self {
        Self { factors }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Rational, u32)>) -> Self {
        Self::new(
            pairs
                .into_iter()
                .map(|(shift, length)| RisingFactor::new(shift, length))
                .collect(),
        )
    }

    pub fn factors(&self) -> &[RisingFactor] {
        &self.factors
    }

    /// Total degree, `sum of lengths`.
    pub fn degree(&self) -> usize {
        self.factors.iter().map(|f| f.length as usize).sum()
    }

    /// Exact value as a product of rising factorials (no expansion).
    pub fn eval(&self, x: &Rational) -> Rational {
        self.factors
            .iter()
            .map(|f| rising_factorial(&(x + &f.shift), f.length))
            .product()
    }

    pub fn eval_real(&self, x: f64) -> f64 {
        self.factors
            .iter()
            .map(|f| {
                let base = x + to_f64(&f.shift);
                (0..f.length).map(|i| base + i as f64).product::<f64>()
            })
            .product()
    }

    pub fn expand(&self) -> RationalPolynomial {
        expand(self)
    }

    /// Plain-text form, e.g. `(s+1)_8 (s+4)_8`.
    pub fn display_in(&self, var: &str) -> String {
        if self.factors.is_empty() {
            return "1".to_owned();
        }
        self.factors
            .iter()
            .map(|f| format!("({})_{}", f.shift_text(var), f.length))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// LaTeX form, e.g. `(s+1)_{8}(s+4)_{8}`.
    pub fn latex_in(&self, var: &str) -> String {
        if self.factors.is_empty() {
            return "1".to_owned();
        }
        self.factors
            .iter()
            .map(|f| {
                let shift = if f.shift.is_integer() || f.shift.is_zero() {
                    f.shift_text(var)
                } else {
                    let sign = if f.shift.is_negative() { '-' } else { '+' };
                    let a = f.shift.abs();
                    format!("{var}{sign}\\frac{{{}}}{{{}}}", a.numer(), a.denom())
                };
                format!("\\left({shift}\\right)_{{{}}}", f.length)
            })
            .collect()
    }
}

impl fmt::Display for FactorizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("s"))
    }
}

/// Expands a product of rising factorials into coefficient form.
pub fn expand(f: &FactorizedPoly) -> RationalPolynomial {
    f.factors.iter().fold(RationalPolynomial::one(), |acc, factor| {
        &acc * &RationalPolynomial::rising_factorial(&factor.shift, factor.length)
    })
}

/// The basis polynomial `(k+1)_j / j! = binom(k+j, j)` in the variable `k`.
pub fn binomial_basis_element(j: usize) -> RationalPolynomial {
    let j_fact: Rational = (1..=j as i64).map(int).product();
    RationalPolynomial::rising_factorial(&Rational::one(), j as u32).scale(&j_fact.recip())
}

/// Writes `q(k) = sum_j c_j (k+1)_j / j!` for `j = 0..=deg q`.
///
/// The coefficients come from the exact linear system `q(k) = sum_j c_j binom(k+j, j)`
/// at `k = 0..=deg q`; its matrix is the symmetric Pascal matrix, which has
/// determinant one. The identity is re-checked at `k = deg q + 1, deg q + 2`.
pub fn binomial_basis_decompose(q: &RationalPolynomial) -> Vec<Rational> {
    let Some(deg) = q.degree() else {
        return Vec::new();
    };
    let size = deg + 1;
    let mut rows: Vec<Vec<Rational>> = (0..size)
        .map(|k| {
            let mut row: Vec<Rational> = (0..size)
                .map(|j| binomial((k + j) as u64, j as u64))
                .collect();
            row.push(q.eval(&int(k as i64)));
            row
        })
        .collect();

    // Exact Gauss-Jordan elimination; any nonzero pivot is fine.
    for col in 0..size {
        let pivot = (col..size)
            .find(|&r| !rows[r][col].is_zero())
            .expect("Pascal matrix is nonsingular");
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        for entry in rows[col].iter_mut() {
            *entry *= &inv;
        }
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (entry, p) in row.iter_mut().zip(&pivot_row) {
                *entry -= &factor * p;
            }
        }
    }
    let coeffs: Vec<Rational> = rows.into_iter().map(|mut row| row.pop().unwrap()).collect();

    for k in [size, size + 1] {
        let k = int(k as i64);
        assert_eq!(
            binomial_basis_eval(&coeffs, &k),
            q.eval(&k),
            "binomial-basis decomposition failed its extrapolation check"
        );
    }
    coeffs
}

/// `sum_j c_j binom(k+j, j)` for a rational `k`.
pub fn binomial_basis_eval(coeffs: &[Rational], k: &Rational) -> Rational {
    let k1 = k + Rational::one();
    let mut basis = Rational::one();
    let mut acc = Rational::zero();
    for (j, c) in coeffs.iter().enumerate() {
        if j > 0 {
            basis = basis * (&k1 + int(j as i64 - 1)) / int(j as i64);
        }
        acc += c * &basis;
    }
    acc
}

/// Inverse of [`binomial_basis_decompose`].
pub fn binomial_basis_synthesize(coeffs: &[Rational]) -> RationalPolynomial {
    coeffs
        .iter()
        .enumerate()
        .fold(RationalPolynomial::zero(), |acc, (j, c)| {
            &acc + &binomial_basis_element(j).scale(c)
        })
}
