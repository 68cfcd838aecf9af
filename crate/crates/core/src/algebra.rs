//! Exact scalar and polynomial arithmetic.
//!
//! Scalars are arbitrary precision rationals. `num_rational::BigRational`
//! keeps every value reduced with a positive denominator, and zero as `0/1`,
//! so structural equality is value equality.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::error::{Error, Result};

/// Exact rational scalar in canonical form.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal {0:?}: expected [-]digits[/digits]")]
    Syntax(String),
    #[error("invalid rational literal {0:?}: denominator must be positive")]
    ZeroDenominator(String),
}

/// Parses `[-]digits[/digits]`, e.g. `"-3/4"`, `"2"`, `"10/4"`.
///
/// The result is reduced. A leading `+`, embedded whitespace or a signed
/// denominator are rejected.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, ParseRationalError> {
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let syntax = || ParseRationalError::Syntax(s.to_owned());
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |t: &str| -> Option<BigUint> {
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        BigUint::parse_bytes(t.as_bytes(), 10)
    };
    let num = digits(num).ok_or_else(syntax)?;
    let den = match den {
        Some(d) => digits(d).ok_or_else(syntax)?,
        None => BigUint::one(),
    };
    if den.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(s.to_owned()));
    }
    let mut num = BigInt::from(num);
    if negative {
        num = -num;
    }
    Ok(Rational::new(num, BigInt::from(den)))
}

/// `a^k` for a nonnegative exponent.
pub fn rational_pow(a: &Rational, k: usize) -> Rational {
    num_traits::pow(a.clone(), k)
}

/// Binomial coefficient `n choose k` over big integers; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // exact at every step: acc = C(n, i) and C(n, i) * (n - i) is divisible by i + 1
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// A nonzero univariate polynomial with rational coefficients.
///
/// Coefficients are stored in ascending order: `coeffs()[k]` multiplies `x^k`.
/// The leading (last) coefficient is never zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Result<Self> {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Polynomial { coeffs })
    }

    /// Convenience constructor for integer coefficients.
    pub fn from_integers(coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    /// The monomial `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading_coeff(&self) -> &Rational {
        &self.coeffs[self.degree()]
    }

    /// Evaluates at `x` by Horner's rule.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Multiplies every coefficient by a nonzero scalar.
    pub fn scale(&self, c: &Rational) -> Result<Self> {
        Self::from_coeffs(self.coeffs.iter().map(|k| k * c).collect())
    }

    /// Returns `q(x) = p(a*x - shift)` by binomial expansion of each
    /// `(a*x - shift)^k`.
    ///
    /// The inner sums `sum_k p_k binom(k, j) (-shift)^(k-j)` run over
    /// integers after clearing the common denominator of `p`. The degree is
    /// preserved since `a != 0` keeps the leading coefficient `p_n * a^n` nonzero.
    pub fn affine_compose(&self, a: &Rational, shift: i64) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroDilation);
        }
        let n = self.degree();
        let denom = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom / c.denom()))
            .collect();
        let shift_pows: Vec<BigInt> = successive_powers(BigInt::from(-i128::from(shift)), n);

        let mut out = Vec::with_capacity(n + 1);
        let mut a_pow = Rational::one();
        for j in 0..=n {
            let mut sum = BigInt::zero();
            for k in j..=n {
                if !scaled[k].is_zero() {
                    sum += &scaled[k] * binomial(k, j) * &shift_pows[k - j];
                }
            }
            out.push(Rational::new(sum, denom.clone()) * &a_pow);
            a_pow *= a;
        }
        Ok(Polynomial { coeffs: out })
    }
}

fn successive_powers<T>(base: T, n: usize) -> Vec<T>
where
    T: Clone + One + for<'a> std::ops::Mul<&'a T, Output = T>,
{
    let mut pows = Vec::with_capacity(n + 1);
    pows.push(T::one());
    for k in 1..=n {
        let next = pows[k - 1].clone() * &base;
        pows.push(next);
    }
    pows
}

/// Computes `sum_i c_i * q_i`.
///
/// Returns `None` when every coefficient cancels (including an empty term
/// list), which keeps cancellation distinct from a genuine polynomial.
pub fn poly_linear_combination<'a, I>(terms: I) -> Option<Polynomial>
where
    I: IntoIterator<Item = (&'a Rational, &'a Polynomial)>,
{
    // per coefficient: unreduced products c * q_k, summed over their lcm and reduced once
    let mut slots: Vec<Vec<(BigInt, BigInt)>> = Vec::new();
    for (c, q) in terms {
        if slots.len() < q.coeffs.len() {
            slots.resize_with(q.coeffs.len(), Vec::new);
        }
        if c.is_zero() {
            continue;
        }
        for (slot, qk) in slots.iter_mut().zip(&q.coeffs) {
            if !qk.is_zero() {
                slot.push((c.numer() * qk.numer(), c.denom() * qk.denom()));
            }
        }
    }
    let coeffs = slots
        .into_iter()
        .map(|terms| {
            let lcm = terms.iter().fold(BigInt::one(), |acc, (_, d)| acc.lcm(d));
            let sum = terms
                .iter()
                .fold(BigInt::zero(), |acc, (n, d)| acc + n * (&lcm / d));
            Rational::new(sum, lcm)
        })
        .collect();
    Polynomial::from_coeffs(coeffs).ok()
}

impl fmt::Display for Polynomial {
    /// Descending human-readable form, e.g. `4x^2 - 4x + 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) if mag.is_integer() => write!(f, "{mag}")?,
                (_, false) => write!(f, "({mag})")?,
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}
