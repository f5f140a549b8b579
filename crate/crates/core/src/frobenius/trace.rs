//! The alternating formal trace of `phi^r x psi^s` on a free graded ring.
//!
//! An even generator with eigenvalue `x` contributes the geometric series
//! `sum_m x^m = (1 - x)^-1`; an odd generator contributes `1 - x`. The
//! exterior generators `a_i^(j), j = 1..2g` share the factor
//! `prod_j (1 - lambda_j^(r+s) q^(-is))`, which is evaluated exactly from the
//! integer power sums of the Weil numbers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::eigen::EigenMonomial;
use super::weil::{weil_numbers, WeilNumberSet};
use super::FrobeniusError;
use crate::arith::{json as aj, qpow};
use crate::ring::{GeneratorKind, GradedRingSpec, Parity};

/// One factor of the product formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceFactor {
    pub text: String,
    /// `+1` or `-1`.
    pub exp: i32,
    /// Value of the base (before applying `exp`).
    pub base: BigRational,
}

impl TraceFactor {
    pub fn value(&self) -> BigRational {
        if self.exp < 0 {
            self.base.recip()
        } else {
            self.base.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceResult {
    pub factors: Vec<TraceFactor>,
    pub value: Option<BigRational>,
    pub convergent: bool,
    pub majorant: Option<BigRational>,
}

impl TraceResult {
    pub fn divergent() -> Self {
        Self {
            factors: Vec::new(),
            value: None,
            convergent: false,
            majorant: None,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "convergent": self.convergent,
            "value": self.value.as_ref().map(aj::rational_value),
            "factors": self.factors.iter().map(|f| json!({"text": f.text, "exp": f.exp})).collect::<Vec<_>>(),
            "majorant": self.majorant.as_ref().map(aj::rational_value),
        })
    }
}

/// `(phi, psi)` eigenvalues of the named generator.
pub fn generator_eigenvalues(
    spec: &GradedRingSpec,
    name: &str,
) -> Result<(EigenMonomial, EigenMonomial), FrobeniusError> {
    spec.generator(name)
        .map(|g| (g.phi_eigen, g.psi_eigen))
        .ok_or_else(|| FrobeniusError::UnknownGenerator(name.to_string()))
}

/// The trace converges iff `s >= 1` and `s > r`.
pub fn check_convergence(r: u32, s: u32) -> Result<(), FrobeniusError> {
    if s == 0 || s <= r {
        Err(FrobeniusError::Divergent { r, s })
    } else {
        Ok(())
    }
}

/// Eigenvalue of `phi^r x psi^s` on a generator.
pub(crate) fn combined_eigen(phi: &EigenMonomial, psi: &EigenMonomial, r: u32, s: u32) -> EigenMonomial {
    phi.pow(r as i64)
        .checked_mul(&psi.pow(s as i64))
        .expect("phi and psi of a generator involve the same Weil number")
}

pub(crate) fn ground_q(spec: &GradedRingSpec) -> Result<u64, FrobeniusError> {
    spec.curve
        .as_ref()
        .map(|c| c.q())
        .ok_or(FrobeniusError::MissingCurveData)
}

/// Smallest integer `u` with `u^2 >= q^m`, an upper bound for `|lambda|^m`.
pub fn weil_modulus_bound(q: u64, m: u32) -> BigInt {
    let qm = num_traits::pow(BigInt::from(q), m as usize);
    let root = qm.sqrt();
    if &root * &root == qm {
        root
    } else {
        root + 1
    }
}

struct ExteriorBlock {
    i: u32,
    q_exp: i64,
    lambda_exp: i64,
    members: usize,
}

/// Splits the generators into even factors and exterior blocks keyed by `i`.
fn classify(spec: &GradedRingSpec, r: u32, s: u32) -> (Vec<(String, EigenMonomial)>, Vec<ExteriorBlock>) {
    let mut even = Vec::new();
    let mut blocks: BTreeMap<u32, ExteriorBlock> = BTreeMap::new();
    for g in &spec.generators {
        let ev = combined_eigen(&g.phi_eigen, &g.psi_eigen, r, s);
        match (g.parity, g.kind) {
            (Parity::Even, _) => even.push((g.name.clone(), ev)),
            (Parity::Odd, GeneratorKind::A { i, .. }) => {
                let b = blocks.entry(i).or_insert(ExteriorBlock {
                    i,
                    q_exp: ev.q_exp,
                    lambda_exp: ev.lambda_exp(),
                    members: 0,
                });
                debug_assert_eq!((b.q_exp, b.lambda_exp), (ev.q_exp, ev.lambda_exp()));
                b.members += 1;
            }
            (Parity::Odd, _) => unreachable!("only a-generators are odd"),
        }
    }
    (even, blocks.into_values().collect())
}

fn exterior_weil(spec: &GradedRingSpec, blocks: &[ExteriorBlock]) -> Result<Option<WeilNumberSet>, FrobeniusError> {
    if blocks.is_empty() {
        return Ok(None);
    }
    let curve = spec.curve.as_ref().ok_or(FrobeniusError::MissingCurveData)?;
    for b in blocks {
        assert_eq!(
            b.members,
            2 * curve.genus() as usize,
            "exterior block a_{}^(*) must contain all 2g Weil indices",
            b.i
        );
    }
    Ok(Some(weil_numbers(curve)?))
}

/// Exact alternating trace of `phi^r x psi^s` with its majorant.
pub fn formal_trace(spec: &GradedRingSpec, r: u32, s: u32) -> Result<TraceResult, FrobeniusError> {
    check_convergence(r, s)?;
    let q = ground_q(spec)?;
    let (even, blocks) = classify(spec, r, s);
    let weil = exterior_weil(spec, &blocks)?;

    let mut factors = Vec::new();
    for (name, ev) in &even {
        debug_assert!(ev.q_exp < 0, "{name} has a non-contracting eigenvalue {ev}");
        factors.push(TraceFactor {
            text: format!("1 - q^{}", ev.q_exp),
            exp: -1,
            base: BigRational::one() - qpow(q, ev.q_exp),
        });
    }
    for b in &blocks {
        let w = weil.as_ref().expect("blocks imply a curve");
        let m = b.lambda_exp as usize;
        let x = qpow(q, b.q_exp);
        let coeffs = w.power_block(m);
        let mut base = BigRational::zero();
        let mut xp = BigRational::one();
        for c in &coeffs {
            base += BigRational::from_integer(c.clone()) * &xp;
            xp *= &x;
        }
        factors.push(TraceFactor {
            text: format!("prod_j (1 - λ_j^{m} q^{})", b.q_exp),
            exp: 1,
            base,
        });
    }
    let value = factors
        .iter()
        .fold(BigRational::one(), |acc, f| acc * f.value());
    let majorant = majorant_from_parts(q, &even, &blocks);
    Ok(TraceResult {
        factors,
        value: Some(value),
        convergent: true,
        majorant: Some(majorant),
    })
}

fn majorant_from_parts(q: u64, even: &[(String, EigenMonomial)], blocks: &[ExteriorBlock]) -> BigRational {
    let mut acc = BigRational::one();
    for (_, ev) in even {
        acc /= BigRational::one() - qpow(q, ev.q_exp);
    }
    for b in blocks {
        let u = BigRational::from_integer(weil_modulus_bound(q, b.lambda_exp as u32));
        let f = BigRational::one() + u * qpow(q, b.q_exp);
        acc *= num_traits::pow(f, b.members);
    }
    acc
}

/// Absolute-convergence majorant: every exterior factor taken as
/// `1 + |lambda_j|^(r+s) q^(-is)` with `|lambda_j|^(r+s)` rounded up to an integer
/// when `r + s` is odd.
pub fn trace_majorant(spec: &GradedRingSpec, r: u32, s: u32) -> Result<BigRational, FrobeniusError> {
    check_convergence(r, s)?;
    let q = ground_q(spec)?;
    let (even, blocks) = classify(spec, r, s);
    Ok(majorant_from_parts(q, &even, &blocks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{ratio, IntPolynomial};
    use crate::curve::CurveData;
    use crate::ring::{ring_preset, Convention, RingKind};

    fn p1(q: u64, n: u32) -> GradedRingSpec {
        let c = CurveData::projective_line(q).unwrap();
        ring_preset(
            RingKind::ModuliFixedDet { genus: 0, rank: n, convention: Convention::SignFixed },
            Some(&c),
        )
        .unwrap()
    }

    fn g1(q: u64, l: &[i64], n: u32, conv: Convention) -> GradedRingSpec {
        let c = CurveData::new(1, q, Some(IntPolynomial::from_i64s(l))).unwrap();
        ring_preset(RingKind::ModuliFixedDet { genus: 1, rank: n, convention: conv }, Some(&c)).unwrap()
    }

    #[test]
    fn eigenvalue_lookup() {
        let spec = g1(2, &[1, 0, 2], 3, Convention::SignFixed);
        let (phi, psi) = generator_eigenvalues(&spec, "c_3").unwrap();
        assert_eq!((phi, psi), (EigenMonomial::ONE, EigenMonomial::q_power(-3)));
        let (phi, psi) = generator_eigenvalues(&spec, "b_2").unwrap();
        assert_eq!((phi, psi), (EigenMonomial::q_power(1), EigenMonomial::q_power(-2)));
        let (phi, psi) = generator_eigenvalues(&spec, "a_2^(1)").unwrap();
        assert_eq!((phi, psi), (EigenMonomial::lambda(1, 1, 0), EigenMonomial::lambda(1, 1, -2)));
        assert!(matches!(
            generator_eigenvalues(&spec, "c_9"),
            Err(FrobeniusError::UnknownGenerator(_))
        ));
    }

    #[test]
    fn psi_inverts_geometric_frobenius() {
        let spec = g1(3, &[1, 0, 3], 4, Convention::SignFixed);
        for g in &spec.generators {
            let prod = g.psi_eigen.checked_mul(&g.kind.geometric_weight()).unwrap();
            assert!(prod.is_one(), "{}", g.name);
        }
    }

    #[test]
    fn p1_rank_two_value() {
        let t = formal_trace(&p1(2, 2), 0, 1).unwrap();
        assert_eq!(t.value, Some(ratio(8, 3)));
        assert_eq!(t.majorant, Some(ratio(8, 3)));
        let product = t.factors.iter().fold(BigRational::one(), |a, f| a * f.value());
        assert_eq!(Some(product), t.value);
    }

    #[test]
    fn divergence() {
        assert_eq!(
            formal_trace(&p1(2, 2), 1, 1).unwrap_err(),
            FrobeniusError::Divergent { r: 1, s: 1 }
        );
        assert!(trace_majorant(&p1(2, 2), 2, 1).is_err());
        assert!(formal_trace(&p1(2, 2), 0, 0).is_err());
    }

    #[test]
    fn genus_one_value() {
        let spec = g1(2, &[1, 0, 2], 2, Convention::SlStrict);
        // (4/3) * 2 * (1 - 0/4 + 2/16)
        assert_eq!(formal_trace(&spec, 0, 1).unwrap().value, Some(ratio(3, 1)));
    }

    #[test]
    fn majorant_examples() {
        let spec = g1(2, &[1, 0, 2], 2, Convention::SlStrict);
        let m = trace_majorant(&spec, 0, 2).unwrap();
        // c_2: (1-2^-4)^-1, b_1: (1-2^-2)^-1, two exterior factors (1 + 2 * 2^-4).
        let expected = ratio(16, 15) * ratio(4, 3) * ratio(9, 8) * ratio(9, 8);
        assert_eq!(m, expected);
        assert_eq!(weil_modulus_bound(2, 1), BigInt::from(2));
        assert_eq!(weil_modulus_bound(2, 2), BigInt::from(2));
        assert_eq!(weil_modulus_bound(3, 3), BigInt::from(6));
    }
}
