//! Bundles on the projective line over `F_q`: split types, automorphism
//! groups and the groupoid mass `sum 1/|Aut^0(E)|`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::arith::{json as aj, qpow};
use crate::curve::{CurveData, CurveError, GroundField};
use crate::frobenius::{formal_trace, FrobeniusError};
use crate::ring::{ring_preset, Convention, RingError, RingKind};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PointCountError {
    #[error("InvalidRank: rank {0} (need n >= 2)")]
    InvalidRank(u32),
    #[error("InvalidS: s = {0} (need s >= 2)")]
    InvalidS(u32),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Frobenius(#[from] FrobeniusError),
}

/// `O(a_1) + ... + O(a_n)` with `a_1 >= ... >= a_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplittingType {
    exponents: Vec<i64>,
}

impl SplittingType {
    /// Sorts the exponents into weakly decreasing order.
    pub fn new(mut exponents: Vec<i64>) -> Self {
        assert!(!exponents.is_empty(), "a splitting type needs at least one summand");
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        Self { exponents }
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> i64 {
        self.exponents.iter().sum()
    }

    pub fn height(&self) -> i64 {
        self.exponents[0] - self.exponents[self.exponents.len() - 1]
    }

    /// Distinct exponents with their multiplicities, largest first.
    pub fn blocks(&self) -> Vec<(i64, usize)> {
        let mut out: Vec<(i64, usize)> = Vec::new();
        for &a in &self.exponents {
            match out.last_mut() {
                Some((e, m)) if *e == a => *m += 1,
                _ => out.push((a, 1)),
            }
        }
        out
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exponents.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Weakly decreasing `n`-tuples with sum `d` and height at most `h`, in
/// ascending lexicographic order.
pub fn enumerate_splittings(n: usize, d: i64, h: i64) -> Vec<SplittingType> {
    assert!(n >= 1 && h >= 0);
    let mut out = Vec::new();
    let lo_top = d.div_euclid(n as i64) + i64::from(d.rem_euclid(n as i64) != 0);
    let hi_top = d.div_euclid(n as i64) + h;
    let mut cur = Vec::with_capacity(n);
    for top in lo_top..=hi_top {
        cur.push(top);
        fill(n, d - top, top - h, top, &mut cur, &mut out);
        cur.pop();
    }
    out.sort();
    out
}

fn fill(n: usize, rest: i64, floor: i64, cap: i64, cur: &mut Vec<i64>, out: &mut Vec<SplittingType>) {
    let left = (n - cur.len()) as i64;
    if left == 0 {
        if rest == 0 {
            out.push(SplittingType { exponents: cur.clone() });
        }
        return;
    }
    if rest < left * floor || rest > left * cap {
        return;
    }
    for a in (floor..=cap).rev() {
        cur.push(a);
        fill(n, rest - a, floor, a, cur, out);
        cur.pop();
    }
}

/// `|GL_m(F_q)| = prod_{k<m} (q^m - q^k)`.
pub fn gl_order(m: usize, q: u64) -> BigInt {
    let qb = BigInt::from(q);
    let qm = num_traits::pow(qb.clone(), m);
    (0..m).fold(BigInt::one(), |acc, k| acc * (&qm - num_traits::pow(qb.clone(), k)))
}

/// `(|Aut(E)|, |Aut^0(E)|)` for the split bundle `E` over `F_q`.
pub fn aut_orders(split: &SplittingType, field: GroundField) -> (BigInt, BigInt) {
    let q = field.q();
    let blocks = split.blocks();
    let mut aut = blocks.iter().fold(BigInt::one(), |acc, &(_, m)| acc * gl_order(m, q));
    let mut u: u64 = 0;
    for (k, &(ek, mk)) in blocks.iter().enumerate() {
        for &(el, ml) in &blocks[k + 1..] {
            u += (mk * ml) as u64 * (ek - el + 1) as u64;
        }
    }
    aut *= num_traits::pow(BigInt::from(q), u as usize);
    let aut0 = &aut / BigInt::from(q - 1);
    (aut, aut0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MassReport {
    pub rank: u32,
    pub q: u64,
    pub height: i64,
    pub partial: BigRational,
    pub tail_bound: BigRational,
    /// Rank 2 only: the remaining geometric tail summed exactly.
    pub exact_tail: Option<BigRational>,
    /// Rank 2 only: `1/((q-1)(q^2-1))`.
    pub closed_form: Option<BigRational>,
}

impl MassReport {
    pub fn to_json(&self) -> Value {
        json!({
            "rank": self.rank,
            "q": self.q,
            "height": self.height,
            "partial": aj::rational_value(&self.partial),
            "tail_bound": aj::rational_value(&self.tail_bound),
            "exact_tail": self.exact_tail.as_ref().map(aj::rational_value),
            "closed_form": self.closed_form.as_ref().map(aj::rational_value),
        })
    }
}

/// Upper bound for `sum_{h > height} n (h+1)^(n-2) q^-h (q-1)^-(n-1)`.
pub fn mass_tail_bound(n: u32, q: u64, height: i64) -> BigRational {
    let nb = BigRational::from_integer(BigInt::from(n));
    let scale = qpow(q - 1, -(n as i64 - 1));
    let term = |h: i64| {
        &nb * num_traits::pow(BigRational::from_integer(BigInt::from(h + 1)), n as usize - 2) * qpow(q, -h) * &scale
    };
    let qr = BigRational::from_integer(BigInt::from(q));
    let mut acc = BigRational::zero();
    let mut h = height + 1;
    loop {
        // Ratio of consecutive terms from h on is at most rho, which decreases in h.
        let rho = num_traits::pow(
            BigRational::new(BigInt::from(h + 2), BigInt::from(h + 1)),
            n as usize - 2,
        ) / &qr;
        if rho < BigRational::one() {
            return acc + term(h) / (BigRational::one() - rho);
        }
        acc += term(h);
        h += 1;
    }
}

/// Mass of degree-0 bundles of rank `n` on the line, up to the given height.
pub fn mass_sl(n: u32, field: GroundField, height: i64) -> Result<MassReport, PointCountError> {
    if n < 2 {
        return Err(PointCountError::InvalidRank(n));
    }
    let q = field.q();
    let partial = enumerate_splittings(n as usize, 0, height)
        .iter()
        .map(|s| BigRational::new(BigInt::one(), aut_orders(s, field).1))
        .fold(BigRational::zero(), |a, b| a + b);
    let (exact_tail, closed_form) = if n == 2 {
        // Types (a, -a) with 2a > height have |Aut^0| = (q-1) q^(2a+1).
        let a0 = height.div_euclid(2) + 1;
        let first = qpow(q, -(2 * a0 + 1)) * qpow(q - 1, -1);
        let tail = first / (BigRational::one() - qpow(q, -2));
        let closed = qpow(q - 1, -1) * qpow(q * q - 1, -1);
        (Some(tail), Some(closed))
    } else {
        (None, None)
    };
    Ok(MassReport {
        rank: n,
        q,
        height,
        partial,
        tail_bound: mass_tail_bound(n, q, height),
        exact_tail,
        closed_form,
    })
}

/// Formal trace of `phi^r psi^s` on the trivial-determinant moduli stack of the line.
pub fn p1_trace(n: u32, q: u64, r: u32, s: u32) -> Result<BigRational, PointCountError> {
    let curve = CurveData::projective_line(q)?;
    let spec = ring_preset(
        RingKind::ModuliFixedDet {
            genus: 0,
            rank: n,
            convention: Convention::SignFixed,
        },
        Some(&curve),
    )?;
    Ok(formal_trace(&spec, r, s)?.value.expect("convergent trace has a value"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LefschetzReport {
    pub mass: MassReport,
    pub lhs: BigRational,
    pub difference: BigRational,
    pub exact: bool,
    pub pass: bool,
}

impl LefschetzReport {
    pub fn to_json(&self) -> Value {
        json!({
            "rank": self.mass.rank,
            "q": self.mass.q,
            "height": self.mass.height,
            "lhs": aj::rational_value(&self.lhs),
            "rhs_partial": aj::rational_value(&self.mass.partial),
            "tail_bound": aj::rational_value(&self.mass.tail_bound),
            "closed_form": self.mass.closed_form.as_ref().map(aj::rational_value),
            "difference": aj::rational_value(&self.difference),
            "exact": self.exact,
            "pass": self.pass,
        })
    }
}

/// Compares `q^(1-n^2) tr(psi)` with the mass. Exact when a closed form exists.
pub fn verify_lefschetz(n: u32, field: GroundField, height: i64) -> Result<LefschetzReport, PointCountError> {
    let mass = mass_sl(n, field, height)?;
    let q = field.q();
    let lhs = qpow(q, 1 - (n as i64) * (n as i64)) * p1_trace(n, q, 0, 1)?;
    let difference = &lhs - &mass.partial;
    let (exact, pass) = match (&mass.closed_form, &mass.exact_tail) {
        (Some(closed), Some(tail)) => (true, lhs == *closed && &mass.partial + tail == *closed),
        _ => (false, !difference.is_negative() && difference <= mass.tail_bound),
    };
    Ok(LefschetzReport {
        mass,
        lhs,
        difference,
        exact,
        pass,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointRow {
    pub r: u32,
    pub trace: BigRational,
    pub naive: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointDemo {
    pub q: u64,
    pub s: u32,
    pub rows: Vec<FixedPointRow>,
    /// Every pair of trace values differs.
    pub trace_varies: bool,
    pub naive_constant: bool,
}

impl FixedPointDemo {
    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q,
            "s": self.s,
            "rows": self.rows.iter().map(|row| json!({
                "r": row.r,
                "trace": aj::rational_value(&row.trace),
                "naive": aj::rational_value(&row.naive),
            })).collect::<Vec<_>>(),
            "trace_varies": self.trace_varies,
            "naive_constant": self.naive_constant,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("q = {}, s = {}\n{:>3}  {:>24}  {:>24}\n", self.q, self.s, "r", "T(r,s)", "1/|SL_2(F_q^s)|");
        for row in &self.rows {
            out.push_str(&format!("{:>3}  {:>24}  {:>24}\n", row.r, row.trace.to_string(), row.naive.to_string()));
        }
        out.push_str(&format!(
            "trace varies with r: {}\nnaive mass constant: {}\n",
            self.trace_varies, self.naive_constant
        ));
        out
    }
}

/// `1/|SL_2(F_(q^s))| = 1/(q^s (q^(2s) - 1))`.
pub fn naive_fixed_point_mass(q: u64, s: u32) -> BigRational {
    let qs = num_traits::pow(BigInt::from(q), s as usize);
    BigRational::new(BigInt::one(), &qs * (&qs * &qs - 1))
}

/// Traces `T(r, s)` for `r < s` on the rank-2 line stack next to the naive
/// fixed-point mass, which does not depend on `r`.
pub fn fixed_point_demo(field: GroundField, s: u32) -> Result<FixedPointDemo, PointCountError> {
    if s < 2 {
        return Err(PointCountError::InvalidS(s));
    }
    let q = field.q();
    let naive = naive_fixed_point_mass(q, s);
    let rows = (0..s)
        .map(|r| {
            Ok(FixedPointRow {
                r,
                trace: p1_trace(2, q, r, s)?,
                naive: naive.clone(),
            })
        })
        .collect::<Result<Vec<_>, PointCountError>>()?;
    let trace_varies = rows
        .iter()
        .enumerate()
        .all(|(i, a)| rows[i + 1..].iter().all(|b| a.trace != b.trace));
    let naive_constant = rows.iter().all(|row| row.naive == naive);
    Ok(FixedPointDemo {
        q,
        s,
        rows,
        trace_varies,
        naive_constant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    fn st(v: &[i64]) -> SplittingType {
        SplittingType::new(v.to_vec())
    }

    fn field(q: u64) -> GroundField {
        GroundField::new(q).unwrap()
    }

    #[test]
    fn splitting_lists() {
        assert_eq!(enumerate_splittings(2, 0, 2), vec![st(&[0, 0]), st(&[1, -1])]);
        assert_eq!(enumerate_splittings(2, 0, 4), vec![st(&[0, 0]), st(&[1, -1]), st(&[2, -2])]);
        assert_eq!(enumerate_splittings(3, 0, 2), vec![st(&[0, 0, 0]), st(&[1, 0, -1])]);
        assert_eq!(enumerate_splittings(2, 1, 1), vec![st(&[1, 0])]);
        assert_eq!(enumerate_splittings(1, -4, 0), vec![st(&[-4])]);
    }

    #[test]
    fn splitting_count_matches_filter() {
        for n in 1..=4usize {
            for d in -2..=2i64 {
                let got = enumerate_splittings(n, d, 4);
                let mut brute = Vec::new();
                let range: Vec<i64> = (-6..=6).collect();
                let mut idx = vec![0usize; n];
                loop {
                    let v: Vec<i64> = idx.iter().map(|&i| range[i]).collect();
                    if v.windows(2).all(|w| w[0] >= w[1]) && v.iter().sum::<i64>() == d && v[0] - v[n - 1] <= 4 {
                        brute.push(SplittingType { exponents: v });
                    }
                    let mut k = 0;
                    while k < n && idx[k] + 1 == range.len() {
                        idx[k] = 0;
                        k += 1;
                    }
                    if k == n {
                        break;
                    }
                    idx[k] += 1;
                }
                brute.sort();
                assert_eq!(got, brute, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn aut_examples() {
        assert_eq!(aut_orders(&st(&[0, 0]), field(3)), (BigInt::from(48), BigInt::from(24)));
        assert_eq!(aut_orders(&st(&[1, -1]), field(2)), (BigInt::from(8), BigInt::from(8)));
        assert_eq!(aut_orders(&st(&[1, 1, -2]), field(2)), (BigInt::from(1536), BigInt::from(1536)));
        assert_eq!(gl_order(3, 2), BigInt::from(168));
    }

    #[test]
    fn rank_two_mass() {
        let m = mass_sl(2, field(2), 10).unwrap();
        assert_eq!(m.closed_form, Some(ratio(1, 3)));
        assert_eq!(&m.partial + m.exact_tail.as_ref().unwrap(), ratio(1, 3));
        assert_eq!(mass_sl(2, field(3), 0).unwrap().closed_form, Some(ratio(1, 16)));
        assert!(mass_sl(1, field(2), 3).is_err());
    }

    #[test]
    fn rank_three_tail() {
        let m = mass_sl(3, field(2), 40).unwrap();
        assert!(m.tail_bound < ratio(1, 1_000_000_000));
    }

    #[test]
    fn tail_bound_with_slow_start() {
        // n = 6, q = 2: the term ratio exceeds 1 for small h, so the bound
        // starts with explicit terms.
        let b = mass_tail_bound(6, 2, 0);
        let direct: BigRational = (1..200)
            .map(|h| {
                BigRational::from_integer(BigInt::from(6 * (h + 1i64).pow(4))) * qpow(2, -h)
            })
            .fold(BigRational::zero(), |a, b| a + b);
        assert!(b >= direct);
    }

    #[test]
    fn lefschetz_examples() {
        let r = verify_lefschetz(2, field(2), 8).unwrap();
        assert!(r.exact && r.pass);
        assert_eq!(r.lhs, ratio(1, 3));
        assert_eq!(verify_lefschetz(2, field(5), 4).unwrap().lhs, ratio(1, 96));
        let r3 = verify_lefschetz(3, field(2), 60).unwrap();
        assert!(!r3.exact && r3.pass);
    }

    #[test]
    fn demo_examples() {
        let d = fixed_point_demo(field(2), 2).unwrap();
        assert_eq!(d.rows[0].naive, ratio(1, 60));
        assert_eq!(d.rows[0].trace, ratio(64, 45));
        assert_eq!(d.rows[1].trace, ratio(32, 15));
        assert!(d.trace_varies && d.naive_constant);
        assert_eq!(naive_fixed_point_mass(2, 3), ratio(1, 504));
        assert!(fixed_point_demo(field(2), 1).is_err());
    }
}
