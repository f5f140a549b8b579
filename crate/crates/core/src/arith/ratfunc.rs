//! Rational functions `p(t)/q(t)` over `Z[t]` in canonical form.
//!
//! Canonical form:
//! - the denominator is nonzero and its lowest nonzero coefficient is positive
//! - the integer content of numerator and denominator taken together is 1
//! - numerator and denominator share no polynomial factor of positive degree
//! - zero is `0/1`
//!
//! Two rational functions are equal iff their canonical forms are identical,
//! so `PartialEq` is structural.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::poly::IntPolynomial;
use super::series::TruncatedSeries;
use super::ArithError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntPolynomial,
    den: IntPolynomial,
}

/// Brings `num/den` into canonical form.
pub fn rational_normalize(
    num: IntPolynomial,
    den: IntPolynomial,
) -> Result<RationalFunction, ArithError> {
    if den.is_zero() {
        return Err(ArithError::ZeroDenominator);
    }
    if num.is_zero() {
        return Ok(RationalFunction {
            num: IntPolynomial::zero(),
            den: IntPolynomial::one(),
        });
    }
    let g = num.gcd(&den);
    let (mut num, mut den) = if g.degree().unwrap_or(0) > 0 {
        (
            // Primitive divisors divide exactly over Z (Gauss's lemma).
            num.div_exact_poly(&g).expect("primitive gcd divides numerator"),
            den.div_exact_poly(&g).expect("primitive gcd divides denominator"),
        )
    } else {
        (num, den)
    };
    let mut content = num.content().gcd(&den.content());
    if den.lowest_nonzero().is_some_and(|c| c.is_negative()) {
        content = -content;
    }
    num = num.div_exact(&content);
    den = den.div_exact(&content);
    Ok(RationalFunction { num, den })
}

impl RationalFunction {
    pub fn new(num: IntPolynomial, den: IntPolynomial) -> Result<Self, ArithError> {
        rational_normalize(num, den)
    }

    pub fn from_polynomial(p: IntPolynomial) -> Self {
        rational_normalize(p, IntPolynomial::one()).expect("denominator is one")
    }

    pub fn one() -> Self {
        Self::from_polynomial(IntPolynomial::one())
    }

    /// `1 / (1 + sign * t^k)`.
    pub fn geometric(sign: i64, k: usize) -> Self {
        rational_normalize(IntPolynomial::one(), IntPolynomial::one_plus(sign, k))
            .expect("nonzero denominator")
    }

    pub fn num(&self) -> &IntPolynomial {
        &self.num
    }

    pub fn den(&self) -> &IntPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is the constant 1.
    pub fn is_polynomial(&self) -> bool {
        self.den == IntPolynomial::one()
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        rational_normalize(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Power-series expansion to order `order`.
    pub fn expand(&self, order: usize) -> Result<TruncatedSeries, ArithError> {
        expand_rational(self, order)
    }
}

/// Unique power-series expansion of `f` modulo `t^(order+1)`.
pub fn expand_rational(f: &RationalFunction, order: usize) -> Result<TruncatedSeries, ArithError> {
    let d0 = f.den.coeff(0);
    if d0.is_zero() {
        return Err(ArithError::PoleAtZero);
    }
    let d0 = BigRational::from_integer(d0);
    let den: Vec<BigInt> = f.den.coeffs().to_vec();
    let mut out: Vec<BigRational> = Vec::with_capacity(order + 1);
    // den * out = num, solved term by term.
    for k in 0..=order {
        let mut acc = BigRational::from_integer(f.num.coeff(k));
        for (j, dj) in den.iter().enumerate().skip(1).take(k) {
            if !dj.is_zero() {
                acc -= &out[k - j] * BigRational::from_integer(dj.clone());
            }
        }
        out.push(acc / &d0);
    }
    Ok(TruncatedSeries::from_coeffs(out, order))
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        rational_normalize(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("product of nonzero denominators is nonzero")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
