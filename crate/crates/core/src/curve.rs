//! Ground fields and curve data.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("NotPrimePower: q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("BadLPolynomial: {0}")]
    BadLPolynomial(String),
    #[error("BadFunctionalEquation: coefficient {index} is {found}, expected q^(g-i) * a_(2g-{index}) = {expected}")]
    BadFunctionalEquation {
        index: usize,
        found: BigInt,
        expected: BigInt,
    },
    #[error("NotWeil: reciprocal root {root} has |root|^2 = {modulus_sq}, expected q = {q}")]
    NotWeil {
        root: String,
        modulus_sq: String,
        q: u64,
    },
}

/// The finite field with `q` elements, identified by its order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GroundField {
    q: u64,
}

impl GroundField {
    pub fn new(q: u64) -> Result<Self, CurveError> {
        if prime_power_base(q).is_none() {
            return Err(CurveError::NotPrimePower(q));
        }
        Ok(Self { q })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        prime_power_base(self.q).expect("validated at construction")
    }
}

/// Smallest prime factor `p` of `q` if `q` is a power of `p`.
pub fn prime_power_base(q: u64) -> Option<u64> {
    if q < 2 {
        return None;
    }
    let p = (2..)
        .take_while(|d| d * d <= q)
        .find(|d| q % d == 0)
        .unwrap_or(q);
    let mut r = q;
    while r % p == 0 {
        r /= p;
    }
    (r == 1).then_some(p)
}

/// A smooth projective curve over `F_q`, known through its genus and the
/// numerator `L(t) = prod_j (1 - lambda_j t)` of its zeta function.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveData {
    genus: u32,
    field: GroundField,
    l_poly: IntPolynomial,
}

impl CurveData {
    /// Validates degree `2g`, `L(0) = 1` and the functional equation
    /// `a_(2g-i) = q^(g-i) a_i`. The Riemann hypothesis is checked separately
    /// by [`crate::frobenius::weil_numbers`].
    pub fn new(genus: u32, q: u64, l_poly: Option<IntPolynomial>) -> Result<Self, CurveError> {
        let field = GroundField::new(q)?;
        let l_poly = match l_poly {
            Some(p) => p,
            None if genus == 0 => IntPolynomial::one(),
            None => {
                return Err(CurveError::BadLPolynomial(format!(
                    "genus {genus} needs an L-polynomial of degree {}",
                    2 * genus
                )))
            }
        };
        let g = genus as usize;
        if l_poly.degree() != Some(2 * g) {
            return Err(CurveError::BadLPolynomial(format!(
                "expected degree {}, got {}",
                2 * g,
                l_poly.degree().map_or("-inf".to_string(), |d| d.to_string())
            )));
        }
        if !l_poly.coeff(0).is_one() {
            return Err(CurveError::BadLPolynomial(format!(
                "L(0) must be 1, got {}",
                l_poly.coeff(0)
            )));
        }
        let qb = BigInt::from(q);
        for i in 0..=g {
            let expected = num_traits::pow(qb.clone(), g - i) * l_poly.coeff(i);
            let found = l_poly.coeff(2 * g - i);
            if found != expected {
                return Err(CurveError::BadFunctionalEquation {
                    index: 2 * g - i,
                    found,
                    expected,
                });
            }
        }
        Ok(Self {
            genus,
            field,
            l_poly,
        })
    }

    pub fn projective_line(q: u64) -> Result<Self, CurveError> {
        Self::new(0, q, None)
    }

    /// `(1 + q t^2)^g`: a valid Weil polynomial for any genus, used when only
    /// the genus matters (Poincare series) or as a default test curve.
    pub fn supersingular(genus: u32, q: u64) -> Result<Self, CurveError> {
        let base = IntPolynomial::new(vec![BigInt::one(), BigInt::zero(), BigInt::from(q)]);
        Self::new(genus, q, Some(base.pow(genus)))
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    pub fn field(&self) -> GroundField {
        self.field
    }

    pub fn l_poly(&self) -> &IntPolynomial {
        &self.l_poly
    }

    /// Number of `F_q`-points, `q + 1 - sum_j lambda_j = q + 1 + a_1`.
    pub fn point_count(&self) -> BigInt {
        BigInt::from(self.q()) + 1 + self.l_poly.coeff(1)
    }
}
