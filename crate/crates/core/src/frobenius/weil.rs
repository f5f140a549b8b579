use std::sync::Mutex;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::curve::{CurveData, CurveError};

/// Tolerance on `| |lambda|^2 - q |` for the numeric Riemann-hypothesis check.
pub const WEIL_TOLERANCE: f64 = 1e-6;

/// The Weil numbers of a curve, accessed through their integer power sums
/// `p_m = sum_j lambda_j^m`.
#[derive(Debug)]
pub struct WeilNumberSet {
    curve: CurveData,
    roots: Vec<Complex64>,
    power_sums: Mutex<Vec<BigInt>>,
}

impl Clone for WeilNumberSet {
    fn clone(&self) -> Self {
        Self {
            curve: self.curve.clone(),
            roots: self.roots.clone(),
            power_sums: Mutex::new(self.power_sums.lock().unwrap().clone()),
        }
    }
}

/// Validates the curve's L-polynomial and returns its power-sum engine.
pub fn weil_numbers(curve: &CurveData) -> Result<WeilNumberSet, CurveError> {
    // Re-run the exact structural checks in case the data was built by hand.
    let curve = CurveData::new(curve.genus(), curve.q(), Some(curve.l_poly().clone()))?;
    let q = curve.q() as f64;
    let roots = if curve.genus() == 0 {
        Vec::new()
    } else {
        // Squarefree part of t^(2g) L(1/t), whose roots are the lambda_j.
        let monic = curve.l_poly().reversed(2 * curve.genus() as usize);
        let sf = monic.squarefree_part();
        let coeffs: Vec<f64> = sf
            .coeffs()
            .iter()
            .map(|c| c.to_f64().expect("coefficient fits in f64"))
            .collect();
        durand_kerner(&coeffs, q.sqrt())
    };
    for r in &roots {
        let m = r.norm_sqr();
        if (m - q).abs() > WEIL_TOLERANCE {
            return Err(CurveError::NotWeil {
                root: format!("{:.6}{:+.6}i", r.re, r.im),
                modulus_sq: format!("{m:.9}"),
                q: curve.q(),
            });
        }
    }
    Ok(WeilNumberSet {
        power_sums: Mutex::new(vec![BigInt::from(2 * curve.genus())]),
        curve,
        roots,
    })
}

impl WeilNumberSet {
    pub fn curve(&self) -> &CurveData {
        &self.curve
    }

    pub fn genus(&self) -> u32 {
        self.curve.genus()
    }

    /// Distinct reciprocal roots, numerically. For display only.
    pub fn approximate_roots(&self) -> &[Complex64] {
        &self.roots
    }

    /// `p_m = sum_j lambda_j^m` via Newton's identities on `L(t)`:
    /// `p_m = -m a_m - sum_{i=1}^{m-1} a_i p_(m-i)`.
    pub fn power_sum(&self, m: usize) -> BigInt {
        let mut ps = self.power_sums.lock().unwrap();
        let l = self.curve.l_poly();
        while ps.len() <= m {
            let k = ps.len();
            let mut p = -BigInt::from(k) * l.coeff(k);
            for i in 1..k {
                let a = l.coeff(i);
                if !a.is_zero() {
                    p -= a * &ps[k - i];
                }
            }
            ps.push(p);
        }
        ps[m].clone()
    }

    /// Coefficients `e_0..e_2g` of `prod_j (1 - lambda_j^m x)`, i.e. signed
    /// elementary symmetric functions of the `m`-th powers.
    pub fn power_block(&self, m: usize) -> Vec<BigInt> {
        let two_g = 2 * self.genus() as usize;
        let sums: Vec<BigInt> = (0..=two_g).map(|k| self.power_sum(k * m)).collect();
        let mut c = vec![BigInt::from(1)];
        for k in 1..=two_g {
            let mut acc = BigInt::zero();
            for i in 1..=k {
                acc += &c[k - i] * &sums[i];
            }
            let (quot, rem) = (-acc).div_rem(&BigInt::from(k));
            debug_assert!(rem.is_zero(), "Newton division is exact for integer power sums");
            c.push(quot);
        }
        c
    }
}

/// All roots of the real polynomial `coeffs` (ascending) by Durand-Kerner.
fn durand_kerner(coeffs: &[f64], radius: f64) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    let lead = coeffs[deg];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |z: Complex64| {
        monic
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, &c| acc * z + c)
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| seed.powu(k as u32 + 1) * radius.max(1.0))
        .collect();
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for i in 0..deg {
            let denom = (0..deg)
                .filter(|&j| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            let step = eval(z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * radius.max(1.0) {
            break;
        }
    }
    z
}
