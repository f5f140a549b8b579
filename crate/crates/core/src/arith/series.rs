//! Truncated formal power series in `t` with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::IntPolynomial;

/// Default truncation order used across the crate.
pub const DEFAULT_ORDER: usize = 40;

/// A power series known modulo `t^(order+1)`.
///
/// `coeffs` always has exactly `order + 1` entries. Binary operations
/// return a series carrying the smaller of the two orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            order,
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// Pads or truncates `coeffs` to `order + 1` entries.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        Self { order, coeffs }
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(coeffs: I, order: usize) -> Self {
        Self::from_coeffs(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
            order,
        )
    }

    pub fn from_polynomial(p: &IntPolynomial, order: usize) -> Self {
        Self::from_coeffs(
            p.coeffs()
                .iter()
                .take(order + 1)
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
            order,
        )
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order, "cannot raise the order of a truncated series");
        Self {
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Multiplies by `t^k`; the order is kept, high terms fall off.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut c = vec![BigRational::zero(); k.min(self.order + 1)];
        c.extend(self.coeffs.iter().take((self.order + 1).saturating_sub(k)).cloned());
        Self::from_coeffs(c, self.order)
    }

    /// Divides by `t^k`, dropping the first `k` coefficients; the order drops by `k`.
    pub fn shift_down(&self, k: usize) -> Self {
        assert!(k <= self.order);
        Self {
            order: self.order - k,
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplicative inverse; `None` when the constant term vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return None;
        }
        let inv0 = c0.recip();
        let mut out = vec![BigRational::zero(); self.order + 1];
        out[0] = inv0.clone();
        for k in 1..=self.order {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out[k - j];
                }
            }
            out[k] = -(acc * &inv0);
        }
        Some(Self {
            order: self.order,
            coeffs: out,
        })
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients, `None` if any coefficient is fractional.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Index of the highest nonzero coefficient.
    pub fn last_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// First degree at which two series differ, up to the smaller order.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        let order = self.order.min(other.order);
        (0..=order).find(|&k| self.coeffs[k] != other.coeffs[k])
    }

    /// Sum of the coefficients, i.e. evaluation at `t = 1` of the truncation.
    pub fn sum(&self) -> BigRational {
        self.coeffs.iter().fold(BigRational::zero(), |a, c| a + c)
    }
}

/// Cauchy product truncated at the smaller order.
pub fn series_multiply(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    let order = a.order.min(b.order);
    let mut out = vec![BigRational::zero(); order + 1];
    for (i, x) in a.coeffs.iter().take(order + 1).enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().take(order + 1 - i).enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    TruncatedSeries { order, coeffs: out }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(rhs.order);
        TruncatedSeries {
            order,
            coeffs: (0..=order).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(rhs.order);
        TruncatedSeries {
            order,
            coeffs: (0..=order).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        series_multiply(self, rhs)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| {
                assert!(c.is_integer());
                i64::try_from(c.to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn difference_of_squares() {
        let a = TruncatedSeries::from_integers([1, 1], 4);
        let b = TruncatedSeries::from_integers([1, -1], 4);
        assert_eq!(ints(&series_multiply(&a, &b)), vec![1, 0, -1, 0, 0]);
    }

    #[test]
    fn identity_is_neutral() {
        let f = TruncatedSeries::from_integers([3, -1, 4, 1, -5], 4);
        assert_eq!(series_multiply(&f, &TruncatedSeries::one(4)), f);
    }

    #[test]
    fn geometric_square_matches_direct_convolution() {
        let g = TruncatedSeries::from_integers([1; 5], 4);
        // Oracle: c_k = #{(i, j) : i + j = k} = k + 1.
        let expected: Vec<i64> = (0..=4).map(|k| (0..=k).count() as i64).collect();
        assert_eq!(ints(&series_multiply(&g, &g)), expected);
    }

    #[test]
    fn result_carries_minimum_order() {
        let a = TruncatedSeries::one(3);
        let b = TruncatedSeries::one(7);
        assert_eq!(series_multiply(&a, &b).order(), 3);
        assert_eq!((&a + &b).order(), 3);
    }

    #[test]
    fn inverse_of_one_minus_t() {
        let s = TruncatedSeries::from_integers([1, -1], 5);
        assert_eq!(ints(&s.inverse().unwrap()), vec![1; 6]);
        assert!(TruncatedSeries::from_integers([0, 1], 3).inverse().is_none());
    }

    #[test]
    fn shifts() {
        let s = TruncatedSeries::from_integers([1, 2, 3], 2);
        assert_eq!(ints(&s.shift_up(1)), vec![0, 1, 2]);
        assert_eq!(ints(&s.shift_down(1)), vec![2, 3]);
    }
}
