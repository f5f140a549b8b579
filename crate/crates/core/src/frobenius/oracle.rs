//! Brute-force trace by monomial enumeration.
//!
//! Sums `(-1)^deg * eigenvalue(m)` over every monomial `m` of total degree at
//! most `D`. Exterior generators `a_i^(1..2g)` enter through the subset sums
//! `sum_{|S| = k} prod_{j in S} lambda_j^(r+s)`, computed as sums of principal
//! `k x k` minors of `C^(r+s)` where `C` is the companion matrix of the Weil
//! polynomial. This avoids the power-sum route used by the product formula.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::trace::{check_convergence, combined_eigen, ground_q, weil_modulus_bound};
use super::FrobeniusError;
use crate::arith::{json as aj, qpow};
use crate::ring::{GeneratorKind, GradedRingSpec, Parity};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteTrace {
    pub partial: BigRational,
    pub tail_bound: BigRational,
    pub monomials: u64,
}

impl BruteTrace {
    pub fn to_json(&self) -> Value {
        json!({
            "partial": aj::rational_value(&self.partial),
            "tail_bound": aj::rational_value(&self.tail_bound),
            "monomials": self.monomials,
        })
    }
}

/// A generator group contributing a finite or geometric family of terms.
enum Piece {
    /// Even generator: exponent `e >= 0`, weight `x^e`, degree `d e`.
    Poly { degree: u32, x: BigRational },
    /// Exterior block: `k = 0..=2g` members chosen, weight `e_k * x^k`.
    Block {
        degree: u32,
        x: BigRational,
        sums: Vec<BigInt>,
        abs_sums: Vec<BigRational>,
    },
}

fn integer_matrix_pow(c: &[Vec<BigInt>], m: u32) -> Vec<Vec<BigInt>> {
    let n = c.len();
    let mut acc: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect();
    for _ in 0..m {
        acc = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| &acc[i][k] * &c[k][j]).sum())
                    .collect()
            })
            .collect();
    }
    acc
}

/// Determinant by fraction-free (Bareiss) elimination.
fn determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `e_k` of the `m`-th powers of the Weil numbers, `k = 0..=2g`.
fn subset_sums(l_poly_desc: &[BigInt], m: u32) -> Vec<BigInt> {
    // Companion matrix of x^N + a_1 x^(N-1) + ... + a_N.
    let n = l_poly_desc.len() - 1;
    let mut c = vec![vec![BigInt::zero(); n]; n];
    for i in 1..n {
        c[i][i - 1] = BigInt::one();
    }
    for i in 0..n {
        c[i][n - 1] = -&l_poly_desc[n - i];
    }
    let cm = integer_matrix_pow(&c, m);
    let mut sums = vec![BigInt::zero(); n + 1];
    for mask in 0u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|b| mask & (1 << b) != 0).collect();
        let minor: Vec<Vec<BigInt>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| cm[i][j].clone()).collect())
            .collect();
        sums[idx.len()] += determinant(minor);
    }
    sums
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Enumerates monomials of degree `<= max_degree` and bounds the omitted tail.
pub fn brute_trace(
    spec: &GradedRingSpec,
    r: u32,
    s: u32,
    max_degree: u32,
) -> Result<BruteTrace, FrobeniusError> {
    check_convergence(r, s)?;
    let q = ground_q(spec)?;
    let mut pieces = Vec::new();
    let mut seen_blocks = Vec::new();
    for g in &spec.generators {
        let ev = combined_eigen(&g.phi_eigen, &g.psi_eigen, r, s);
        match (g.parity, g.kind) {
            (Parity::Even, _) => pieces.push(Piece::Poly {
                degree: g.degree,
                x: qpow(q, ev.q_exp),
            }),
            (Parity::Odd, GeneratorKind::A { i, .. }) => {
                if seen_blocks.contains(&i) {
                    continue;
                }
                seen_blocks.push(i);
                let curve = spec.curve.as_ref().ok_or(FrobeniusError::MissingCurveData)?;
                let two_g = 2 * curve.genus() as usize;
                let m = ev.lambda_exp() as u32;
                // Descending coefficients of the monic Weil polynomial = ascending L.
                let desc: Vec<BigInt> = (0..=two_g).map(|k| curve.l_poly().coeff(k)).collect();
                let sums = subset_sums(&desc, m);
                let u = BigRational::from_integer(weil_modulus_bound(q, m));
                let abs_sums = (0..=two_g)
                    .map(|k| BigRational::from_integer(binomial(two_g, k)) * num_traits::pow(u.clone(), k))
                    .collect();
                pieces.push(Piece::Block {
                    degree: g.degree,
                    x: qpow(q, ev.q_exp),
                    sums,
                    abs_sums,
                });
            }
            (Parity::Odd, _) => unreachable!("only a-generators are odd"),
        }
    }

    let mut acc = Enumeration {
        partial: BigRational::zero(),
        partial_abs: BigRational::zero(),
        monomials: 0,
    };
    enumerate(&pieces, 0, max_degree, 0, BigRational::one(), BigRational::one(), &mut acc);

    let mut total_abs = BigRational::one();
    for p in &pieces {
        match p {
            Piece::Poly { x, .. } => total_abs /= BigRational::one() - x.abs(),
            Piece::Block { x, abs_sums, .. } => {
                let mut s = BigRational::zero();
                let mut xp = BigRational::one();
                for a in abs_sums {
                    s += a * &xp;
                    xp *= x.abs();
                }
                total_abs *= s;
            }
        }
    }
    Ok(BruteTrace {
        partial: acc.partial,
        tail_bound: total_abs - acc.partial_abs,
        monomials: acc.monomials,
    })
}

struct Enumeration {
    partial: BigRational,
    partial_abs: BigRational,
    monomials: u64,
}

fn enumerate(
    pieces: &[Piece],
    idx: usize,
    budget: u32,
    degree: u32,
    weight: BigRational,
    abs_weight: BigRational,
    acc: &mut Enumeration,
) {
    let Some(piece) = pieces.get(idx) else {
        if degree % 2 == 1 {
            acc.partial -= weight;
        } else {
            acc.partial += weight;
        }
        acc.partial_abs += abs_weight;
        acc.monomials += 1;
        return;
    };
    match piece {
        Piece::Poly { degree: d, x } => {
            let mut w = weight;
            let mut aw = abs_weight;
            let mut used = 0;
            while used <= budget {
                enumerate(pieces, idx + 1, budget - used, degree + used, w.clone(), aw.clone(), acc);
                used += d;
                w *= x;
                aw *= x.abs();
            }
        }
        Piece::Block { degree: d, x, sums, abs_sums } => {
            let mut xp = BigRational::one();
            for (k, (e, a)) in sums.iter().zip(abs_sums).enumerate() {
                let used = d * k as u32;
                if used > budget {
                    break;
                }
                if !e.is_zero() || !a.is_zero() {
                    let e = BigRational::from_integer(e.clone());
                    enumerate(
                        pieces,
                        idx + 1,
                        budget - used,
                        degree + used,
                        &weight * &e * &xp,
                        &abs_weight * a * xp.abs(),
                        acc,
                    );
                }
                xp *= x;
            }
        }
    }
}
