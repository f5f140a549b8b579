//! Semistable series from the t-adic stratification identity
//! `P_total(n) = sum_tau t^(2 codim tau) prod_i P_ss(n_i, d_i)`.

use std::collections::HashMap;
use std::sync::Mutex;

use num_integer::Integer;
use num_traits::Zero;
use serde_json::Value;

use super::hn::{codim, enumerate_all_types, enumerate_types, HNType};
use super::StrataError;
use crate::arith::{series_multiply, IntPolynomial, RationalFunction, TruncatedSeries};

/// `prod_{k=1}^n (1+t^(2k-1))^(2g) / (1-t^(2k)) * prod_{k=1}^(n-1) 1/(1-t^(2k))`.
pub fn total_series_unfixed(n: u32, g: u32) -> Result<RationalFunction, StrataError> {
    if n == 0 {
        return Err(StrataError::InvalidRank);
    }
    let mut num = IntPolynomial::one();
    let mut den = IntPolynomial::one();
    for k in 1..=n as usize {
        num = &num * &IntPolynomial::one_plus(1, 2 * k - 1).pow(2 * g);
        den = &den * &IntPolynomial::one_plus(-1, 2 * k);
        if k < n as usize {
            den = &den * &IntPolynomial::one_plus(-1, 2 * k);
        }
    }
    Ok(RationalFunction::new(num, den).expect("nonzero denominator"))
}

/// `(1 - t^2) / (1 + t)^(2g)`: removes one Jacobian and one classifying-line factor.
pub fn fixed_det_correction(g: u32) -> RationalFunction {
    RationalFunction::new(IntPolynomial::one_plus(-1, 2), IntPolynomial::one_plus(1, 1).pow(2 * g))
        .expect("nonzero denominator")
}

/// Memoized solver for the semistable series. The cache holds, per
/// `(n, d, g)`, the longest expansion computed so far.
#[derive(Debug, Default)]
pub struct Stratifier {
    memo: Mutex<HashMap<(u32, i64, u32), TruncatedSeries>>,
}

impl Stratifier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ss_series(&self, n: u32, d: i64, g: u32, order: usize) -> Result<TruncatedSeries, StrataError> {
        if n == 0 {
            return Err(StrataError::InvalidRank);
        }
        if let Some(s) = self.memo.lock().unwrap().get(&(n, d, g)) {
            if s.order() >= order {
                return Ok(s.truncate(order));
            }
        }
        let total = total_series_unfixed(n, g)?
            .expand(order)
            .expect("total series has no pole at 0");
        let mut ss = total;
        for tau in enumerate_types(n, d, g, (order / 2) as i64) {
            let contribution = self.stratum_series(&tau, g, order)?;
            ss = &ss - &contribution;
        }
        let mut memo = self.memo.lock().unwrap();
        let slot = memo.entry((n, d, g)).or_insert_with(|| ss.clone());
        if slot.order() < ss.order() {
            *slot = ss.clone();
        }
        Ok(ss)
    }

    /// `t^(2 codim) prod_i P_ss(n_i, d_i)` to order `order`. Negative
    /// codimension (empty strata at `g = 0`) is handled by expanding the
    /// product further and dividing by a power of `t`.
    pub fn stratum_series(&self, tau: &HNType, g: u32, order: usize) -> Result<TruncatedSeries, StrataError> {
        let c2 = 2 * codim(tau, g);
        let inner = order as i64 - c2;
        if inner < 0 {
            return Ok(TruncatedSeries::zero(order));
        }
        let inner = inner as usize;
        let mut prod = TruncatedSeries::one(inner);
        for &(ni, di) in tau.blocks() {
            prod = series_multiply(&prod, &self.ss_series(ni, di, g, inner)?);
        }
        Ok(if c2 >= 0 {
            prod.shift_up_to(c2 as usize, order)
        } else {
            let k = (-c2) as usize;
            debug_assert!(prod.coeffs()[..k].iter().all(Zero::is_zero));
            prod.shift_down(k)
        })
    }

    pub fn coarse_moduli_series(&self, n: u32, d: i64, g: u32, order: usize) -> Result<TruncatedSeries, StrataError> {
        check_coprime(n, d)?;
        let ss = self.ss_series(n, d, g, order + 2)?;
        let factor = TruncatedSeries::from_polynomial(&IntPolynomial::one_plus(-1, 2), order + 2);
        Ok(series_multiply(&ss, &factor).truncate(order))
    }

    pub fn fixed_det_coarse_series(
        &self,
        n: u32,
        d: i64,
        g: u32,
        order: usize,
    ) -> Result<TruncatedSeries, StrataError> {
        check_coprime(n, d)?;
        let ss = self.ss_series(n, d, g, order)?;
        let factor = fixed_det_correction(g).expand(order).expect("no pole at 0");
        let out = series_multiply(&ss, &factor);
        let bound = 2 * (n as i64 * n as i64 - 1) * (g as i64 - 1);
        for (k, c) in out.coeffs().iter().enumerate() {
            if k as i64 > bound && !c.is_zero() {
                return Err(StrataError::NonPolynomialResult {
                    degree: k,
                    coeff: c.to_string(),
                    bound,
                });
            }
        }
        Ok(out)
    }

    /// Both sides of the stratification identity at order `order`: the
    /// expanded total series and the sum over all types including the
    /// semistable one.
    pub fn recursion_identity(
        &self,
        n: u32,
        d: i64,
        g: u32,
        order: usize,
    ) -> Result<(TruncatedSeries, TruncatedSeries), StrataError> {
        let lhs = total_series_unfixed(n, g)?.expand(order).expect("no pole at 0");
        let mut rhs = TruncatedSeries::zero(order);
        for tau in enumerate_all_types(n, d, g, (order / 2) as i64) {
            rhs = &rhs + &self.stratum_series(&tau, g, order)?;
        }
        Ok((lhs, rhs))
    }
}

trait ShiftInto {
    fn shift_up_to(&self, k: usize, order: usize) -> TruncatedSeries;
}

impl ShiftInto for TruncatedSeries {
    /// `t^k * self` as a series of order `order >= k + self.order()`.
    fn shift_up_to(&self, k: usize, order: usize) -> TruncatedSeries {
        let mut c = vec![num_rational::BigRational::zero(); k];
        c.extend(self.coeffs().iter().cloned());
        TruncatedSeries::from_coeffs(c, order)
    }
}

fn check_coprime(n: u32, d: i64) -> Result<(), StrataError> {
    if n == 0 {
        return Err(StrataError::InvalidRank);
    }
    let gcd = (n as i64).gcd(&d) as u64;
    if gcd != 1 {
        return Err(StrataError::NotCoprime { n, d, gcd });
    }
    Ok(())
}

pub fn ss_series(n: u32, d: i64, g: u32, order: usize) -> Result<TruncatedSeries, StrataError> {
    Stratifier::new().ss_series(n, d, g, order)
}

pub fn coarse_moduli_series(n: u32, d: i64, g: u32, order: usize) -> Result<TruncatedSeries, StrataError> {
    Stratifier::new().coarse_moduli_series(n, d, g, order)
}

pub fn fixed_det_coarse_series(n: u32, d: i64, g: u32, order: usize) -> Result<TruncatedSeries, StrataError> {
    Stratifier::new().fixed_det_coarse_series(n, d, g, order)
}

pub fn recursion_identity(
    n: u32,
    d: i64,
    g: u32,
    order: usize,
) -> Result<(TruncatedSeries, TruncatedSeries), StrataError> {
    Stratifier::new().recursion_identity(n, d, g, order)
}

/// Strata report: one object per type.
pub fn strata_json(types: &[HNType], g: u32) -> Value {
    Value::Array(types.iter().map(|t| t.to_json(g)).collect())
}
