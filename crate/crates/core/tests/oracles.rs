//! Independent brute-force checks of the strata and trace machinery.

use std::collections::BTreeSet;

use mstack_core::arith::{qpow, ratio, BigRational, IntPolynomial};
use mstack_core::curve::{CurveData, GroundField};
use mstack_core::frobenius::{formal_trace, trace_majorant};
use mstack_core::p1::{mass_sl, verify_lefschetz};
use mstack_core::ring::{ring_preset, Convention, RingKind};
use mstack_core::strata::{codim, enumerate_types, polygon_leq, polygon_of, ss_series, HNType, Stratifier};
use num_traits::{One, Signed};

/// All compositions of `n` with degrees in a wide box, filtered by the
/// definitions directly.
fn scan_types(n: u32, d: i64, g: u32, c: i64, box_: i64) -> BTreeSet<Vec<(u32, i64)>> {
    fn rec(
        n_left: u32,
        blocks: &mut Vec<(u32, i64)>,
        box_: i64,
        out: &mut Vec<Vec<(u32, i64)>>,
    ) {
        if n_left == 0 {
            out.push(blocks.clone());
            return;
        }
        for ni in 1..=n_left {
            for di in -box_ * ni as i64..=box_ * ni as i64 {
                blocks.push((ni, di));
                rec(n_left - ni, blocks, box_, out);
                blocks.pop();
            }
        }
    }
    let mut all = Vec::new();
    rec(n, &mut Vec::new(), box_, &mut all);
    all.into_iter()
        .filter(|b| b.len() >= 2 && b.iter().map(|x| x.1).sum::<i64>() == d)
        .filter_map(|b| HNType::new(b).ok())
        .filter(|t| codim(t, g) <= c)
        .map(|t| t.blocks().to_vec())
        .collect()
}

#[test]
fn enumeration_matches_scan() {
    for n in 2..=3 {
        for d in -1..=2 {
            for g in 0..=2 {
                for c in 0..=5 {
                    let got: BTreeSet<_> = enumerate_types(n, d, g, c).iter().map(|t| t.blocks().to_vec()).collect();
                    let scan = scan_types(n, d, g, c, 12);
                    assert_eq!(got, scan, "n={n} d={d} g={g} C={c}");
                }
            }
        }
    }
}

#[test]
fn enumeration_order_is_deterministic() {
    let a = enumerate_types(4, 1, 1, 6);
    let b = enumerate_types(4, 1, 1, 6);
    assert_eq!(a, b);
    let keys: Vec<_> = a.iter().map(|t| (t.len(), t.blocks().to_vec())).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn polygon_leq_agrees_with_dense_sampling() {
    let types = mstack_core::strata::enumerate_all_types(3, 1, 1, 6);
    for a in &types {
        for b in &types {
            let (pa, pb) = (polygon_of(a), polygon_of(b));
            // Sample at x = k/12, comparing exact cross-multiplied values.
            let dense = (0..=36).all(|k| {
                let value = |p: &mstack_core::strata::HNPolygon| {
                    let v = p.vertices();
                    let w = v.windows(2).find(|w| 12 * w[0].0 <= k && k <= 12 * w[1].0).unwrap();
                    let (x0, y0, x1, y1) = (w[0].0 as i128, w[0].1 as i128, w[1].0 as i128, w[1].1 as i128);
                    // y = y0 + (y1-y0)(k/12 - x0)/(x1-x0), scaled by 12 (x1-x0)
                    (12 * y0 * (x1 - x0) + (y1 - y0) * (k as i128 - 12 * x0), 12 * (x1 - x0))
                };
                let (na, da) = value(&pa);
                let (nb, db) = value(&pb);
                na * db <= nb * da
            });
            assert_eq!(polygon_leq(&pa, &pb).unwrap(), dense, "{a} vs {b}");
        }
    }
}

#[test]
fn semistable_series_are_nonnegative_integers() {
    let st = Stratifier::new();
    for (n, d, g) in [(2, 0, 0), (2, 0, 1), (2, 1, 1), (2, 1, 2), (3, 0, 1), (3, 1, 1), (3, 2, 2)] {
        let s = st.ss_series(n, d, g, 30).unwrap();
        assert!(s.is_integral(), "({n},{d},{g})");
        assert!(s.coeffs().iter().all(|c| !c.is_negative()), "({n},{d},{g}): {s}");
    }
    assert_ne!(ss_series(2, 0, 1, 20).unwrap(), ss_series(2, 1, 1, 20).unwrap());
}

#[test]
fn coarse_moduli_degree_matches_dimension() {
    let st = Stratifier::new();
    for (n, d, g) in [(2, 1, 1), (2, 1, 2), (2, 1, 3), (3, 1, 2), (3, 2, 2)] {
        let c = st.coarse_moduli_series(n, d, g, 60).unwrap();
        let dim = (n * n) as usize * (g as usize - 1) + 1;
        assert_eq!(c.last_nonzero(), Some(2 * dim), "({n},{d},{g})");
        let f = st.fixed_det_coarse_series(n, d, g, 60).unwrap();
        let top = 2 * ((n * n - 1) * (g - 1)) as usize;
        assert_eq!(f.last_nonzero(), Some(top));
        assert!((0..=top).all(|k| f.coeff(k) == f.coeff(top - k)), "({n},{d},{g}) palindrome");
    }
}

#[test]
fn trace_factors_multiply_to_value_and_majorant_dominates() {
    for (g, q, l) in [(0u32, 3u64, vec![1i64]), (1, 2, vec![1, -2, 2]), (2, 3, vec![1, 2, 3, 6, 9])] {
        let curve = CurveData::new(g, q, Some(IntPolynomial::from_i64s(&l))).unwrap();
        for conv in Convention::ALL {
            let spec = ring_preset(RingKind::ModuliFixedDet { genus: g, rank: 3, convention: conv }, Some(&curve)).unwrap();
            for (r, s) in [(0, 1), (1, 2), (0, 3), (2, 3)] {
                let t = formal_trace(&spec, r, s).unwrap();
                let v = t.value.clone().unwrap();
                let prod = t.factors.iter().fold(BigRational::one(), |a, f| a * f.value());
                assert_eq!(prod, v);
                assert!(v.abs() <= trace_majorant(&spec, r, s).unwrap());
            }
        }
    }
}

#[test]
fn mass_partial_sums_increase_towards_the_closed_form() {
    for q in [2u64, 3, 7] {
        let field = GroundField::new(q).unwrap();
        let mut prev = BigRational::from_integer(0.into());
        for h in 0..10 {
            let m = mass_sl(2, field, h).unwrap();
            assert!(m.partial >= prev);
            assert!(m.partial <= m.closed_form.clone().unwrap());
            assert!(&m.partial + &m.tail_bound >= m.closed_form.clone().unwrap());
            prev = m.partial;
        }
    }
}

#[test]
fn lefschetz_rank_three_small_height() {
    // Even a coarse truncation brackets the trace.
    let r = verify_lefschetz(3, GroundField::new(3).unwrap(), 6).unwrap();
    assert!(r.pass);
    assert_eq!(r.lhs, qpow(3, -8) * formal_lhs(3));
    assert!(ratio(0, 1) <= r.difference);
}

fn formal_lhs(q: u64) -> BigRational {
    // n = 3 on the line: b_1, b_2, c_2, c_3 with psi-weights q^-1, q^-2, q^-2, q^-3.
    [1i64, 2, 2, 3]
        .iter()
        .fold(BigRational::one(), |acc, &w| acc / (BigRational::one() - qpow(q, -w)))
}
