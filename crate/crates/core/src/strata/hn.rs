//! Harder-Narasimhan types, their polygons and stratum codimensions.

use std::cmp::Ordering;
use std::fmt;

use serde_json::{json, Value};

use super::StrataError;

/// Ranks and degrees of the semistable subquotients of an HN filtration,
/// with strictly decreasing slopes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HNType {
    blocks: Vec<(u32, i64)>,
}

/// Compares `d1/n1` with `d2/n2` exactly.
pub fn cmp_slope(a: (u32, i64), b: (u32, i64)) -> Ordering {
    (a.1 as i128 * b.0 as i128).cmp(&(b.1 as i128 * a.0 as i128))
}

impl HNType {
    pub fn new(blocks: Vec<(u32, i64)>) -> Result<Self, StrataError> {
        if blocks.is_empty() {
            return Err(StrataError::InvalidType("a type needs at least one block".into()));
        }
        if let Some(&(n, d)) = blocks.iter().find(|b| b.0 == 0) {
            return Err(StrataError::InvalidType(format!("block ({n}, {d}) has rank zero")));
        }
        for w in blocks.windows(2) {
            if cmp_slope(w[0], w[1]) != Ordering::Greater {
                return Err(StrataError::InvalidType(format!(
                    "slopes must strictly decrease: {}/{} then {}/{}",
                    w[0].1, w[0].0, w[1].1, w[1].0
                )));
            }
        }
        Ok(Self { blocks })
    }

    pub fn semistable(rank: u32, degree: i64) -> Self {
        Self::new(vec![(rank, degree)]).expect("one positive-rank block is a valid type")
    }

    pub fn blocks(&self) -> &[(u32, i64)] {
        &self.blocks
    }

    pub fn rank(&self) -> u32 {
        self.blocks.iter().map(|b| b.0).sum()
    }

    pub fn degree(&self) -> i64 {
        self.blocks.iter().map(|b| b.1).sum()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_semistable(&self) -> bool {
        self.blocks.len() == 1
    }

    /// Key used for the deterministic listing order: block count, then blocks.
    fn sort_key(&self) -> (usize, &[(u32, i64)]) {
        (self.blocks.len(), &self.blocks)
    }

    pub fn to_json(&self, genus: u32) -> Value {
        json!({
            "blocks": self.blocks.iter().map(|&(n, d)| json!([n, d])).collect::<Vec<_>>(),
            "codim": codim(self, genus),
            "polygon": polygon_of(self).vertices().iter().map(|&(x, y)| json!([x, y])).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for HNType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, (n, d)) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "({n},{d})")?;
        }
        write!(f, ")")
    }
}

/// Concave lattice polygon from `(0, 0)` to `(rank, degree)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HNPolygon {
    vertices: Vec<(i64, i64)>,
}

impl HNPolygon {
    pub fn vertices(&self) -> &[(i64, i64)] {
        &self.vertices
    }

    pub fn rank(&self) -> i64 {
        self.vertices.last().unwrap().0
    }

    pub fn degree(&self) -> i64 {
        self.vertices.last().unwrap().1
    }

    /// Value at integer abscissa `x` as an exact fraction `(num, den)`, `den > 0`.
    pub fn value_at(&self, x: i64) -> (i128, i128) {
        assert!((0..=self.rank()).contains(&x));
        let k = self
            .vertices
            .windows(2)
            .position(|w| w[0].0 <= x && x <= w[1].0)
            .expect("x lies in [0, rank]");
        let (x0, y0) = self.vertices[k];
        let (x1, y1) = self.vertices[k + 1];
        let den = (x1 - x0) as i128;
        ((y0 as i128) * den + (y1 - y0) as i128 * (x - x0) as i128, den)
    }

    /// Back to the HN type with these vertices.
    pub fn to_type(&self) -> HNType {
        HNType::new(
            self.vertices
                .windows(2)
                .map(|w| ((w[1].0 - w[0].0) as u32, w[1].1 - w[0].1))
                .collect(),
        )
        .expect("polygon vertices have strictly decreasing slopes")
    }
}

/// Partial sums of ranks and degrees.
pub fn polygon_of(t: &HNType) -> HNPolygon {
    let mut vertices = vec![(0i64, 0i64)];
    let (mut x, mut y) = (0i64, 0i64);
    for &(n, d) in t.blocks() {
        x += n as i64;
        y += d;
        vertices.push((x, y));
    }
    HNPolygon { vertices }
}

/// `p <= p2` pointwise on `[0, n]`. Both are piecewise linear with integer
/// breakpoints, so integer abscissae suffice.
pub fn polygon_leq(p: &HNPolygon, p2: &HNPolygon) -> Result<bool, StrataError> {
    if p.rank() != p2.rank() || p.degree() != p2.degree() {
        return Err(StrataError::RankDegreeMismatch {
            left: (p.rank(), p.degree()),
            right: (p2.rank(), p2.degree()),
        });
    }
    Ok((0..=p.rank()).all(|x| {
        let (a, da) = p.value_at(x);
        let (b, db) = p2.value_at(x);
        a * db <= b * da
    }))
}

/// Codimension of the stratum of type `t` on a genus `g` curve:
/// `sum_{i<j} [n_i n_j (g - 1) + n_j d_i - n_i d_j]`.
///
/// Negative values occur at `g = 0` only for types with a block whose
/// semistable locus is empty (e.g. rank 2, odd degree on the line).
pub fn codim(t: &HNType, g: u32) -> i64 {
    let b = t.blocks();
    let mut c = 0i64;
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            let (ni, di) = (b[i].0 as i64, b[i].1);
            let (nj, dj) = (b[j].0 as i64, b[j].1);
            c += ni * nj * (g as i64 - 1) + nj * di - ni * dj;
        }
    }
    c
}

fn compositions(n: u32, out: &mut Vec<Vec<u32>>, prefix: &mut Vec<u32>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for first in 1..=n {
        prefix.push(first);
        compositions(n - first, out, prefix);
        prefix.pop();
    }
}

fn floor_div(a: i128, b: i128) -> i128 {
    a.div_euclid(b)
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -(-a).div_euclid(b)
}

/// HN types of total `(n, d)` with at least two blocks and codimension `<= max_codim`,
/// ordered by block count then lexicographically.
pub fn enumerate_types(n: u32, d: i64, g: u32, max_codim: i64) -> Vec<HNType> {
    let mut found = Vec::new();
    let mut comps = Vec::new();
    compositions(n, &mut comps, &mut Vec::new());
    for ranks in comps.into_iter().filter(|c| c.len() >= 2) {
        let pair_rank: i64 = (0..ranks.len())
            .flat_map(|i| (i + 1..ranks.len()).map(move |j| (i, j)))
            .map(|(i, j)| ranks[i] as i64 * ranks[j] as i64)
            .sum();
        // Every pair term n_j d_i - n_i d_j is a positive integer and the
        // outermost pair alone is at least mu_1 - mu_r, so the slope spread is
        // at most `spread`.
        let spread = max_codim - pair_rank * (g as i64 - 1);
        if spread < ranks.len() as i64 - 1 {
            continue;
        }
        let mut degrees = Vec::with_capacity(ranks.len());
        fill_degrees(&ranks, n, d, spread, g, max_codim, &mut degrees, &mut found);
    }
    found.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    found
}

#[allow(clippy::too_many_arguments)]
fn fill_degrees(
    ranks: &[u32],
    n: u32,
    d: i64,
    spread: i64,
    g: u32,
    max_codim: i64,
    degrees: &mut Vec<i64>,
    found: &mut Vec<HNType>,
) {
    let k = degrees.len();
    let ni = ranks[k] as i128;
    // mu_i in [d/n - spread, d/n + spread]
    let lo = ceil_div(ni * (d as i128 - spread as i128 * n as i128), n as i128);
    let hi = floor_div(ni * (d as i128 + spread as i128 * n as i128), n as i128);
    let candidates: Vec<i64> = if k + 1 == ranks.len() {
        let last = d - degrees.iter().sum::<i64>();
        if (lo..=hi).contains(&(last as i128)) {
            vec![last]
        } else {
            vec![]
        }
    } else {
        (lo as i64..=hi as i64).collect()
    };
    for di in candidates {
        if k > 0 && cmp_slope((ranks[k - 1], degrees[k - 1]), (ranks[k], di)) != Ordering::Greater {
            continue;
        }
        degrees.push(di);
        if k + 1 == ranks.len() {
            let t = HNType {
                blocks: ranks.iter().copied().zip(degrees.iter().copied()).collect(),
            };
            if codim(&t, g) <= max_codim {
                found.push(t);
            }
        } else {
            fill_degrees(ranks, n, d, spread, g, max_codim, degrees, found);
        }
        degrees.pop();
    }
}

/// Like [`enumerate_types`] but with the semistable one-block type first
/// (codimension 0, included when `max_codim >= 0`).
pub fn enumerate_all_types(n: u32, d: i64, g: u32, max_codim: i64) -> Vec<HNType> {
    let mut v = Vec::new();
    if max_codim >= 0 {
        v.push(HNType::semistable(n, d));
    }
    v.extend(enumerate_types(n, d, g, max_codim));
    v
}

/// All HN types of total `(n, d)` whose polygon lies below `bound`, the
/// semistable type included.
pub fn enumerate_types_below(n: u32, d: i64, bound: &HNPolygon) -> Result<Vec<HNType>, StrataError> {
    if bound.rank() != n as i64 || bound.degree() != d {
        return Err(StrataError::RankDegreeMismatch {
            left: (n as i64, d),
            right: (bound.rank(), bound.degree()),
        });
    }
    let mut found = Vec::new();
    let mut verts = vec![(0i64, 0i64)];
    extend_below(n as i64, d, bound, &mut verts, &mut found);
    found.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(found)
}

fn extend_below(n: i64, d: i64, bound: &HNPolygon, verts: &mut Vec<(i64, i64)>, found: &mut Vec<HNType>) {
    let &(x, y) = verts.last().unwrap();
    if x == n {
        if y == d {
            let poly = HNPolygon { vertices: verts.clone() };
            if polygon_leq(&poly, bound).expect("same endpoints") {
                found.push(poly.to_type());
            }
        }
        return;
    }
    for nx in x + 1..=n {
        // Concave polygons through (0,0) and (n,d) stay on or above the chord.
        let lo = ceil_div(nx as i128 * d as i128, n as i128) as i64;
        let (bnum, bden) = bound.value_at(nx);
        let hi = floor_div(bnum, bden) as i64;
        let candidates: Vec<i64> = if nx == n { vec![d] } else { (lo..=hi).collect() };
        for ny in candidates {
            if verts.len() >= 2 {
                let (px, py) = verts[verts.len() - 2];
                let prev = ((x - px) as u32, y - py);
                if cmp_slope(prev, ((nx - x) as u32, ny - y)) != Ordering::Greater {
                    continue;
                }
            }
            verts.push((nx, ny));
            extend_below(n, d, bound, verts, found);
            verts.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(b: &[(u32, i64)]) -> HNType {
        HNType::new(b.to_vec()).unwrap()
    }

    #[test]
    fn invalid_types() {
        assert!(HNType::new(vec![]).is_err());
        assert!(HNType::new(vec![(1, 0), (1, 0)]).is_err());
        assert!(HNType::new(vec![(1, -1), (1, 1)]).is_err());
        assert!(HNType::new(vec![(0, 1)]).is_err());
        // 1/2 vs 1/2
        assert!(HNType::new(vec![(2, 1), (2, 1)]).is_err());
    }

    #[test]
    fn polygons() {
        assert_eq!(polygon_of(&t(&[(1, 1), (1, -1)])).vertices(), &[(0, 0), (1, 1), (2, 0)]);
        assert_eq!(polygon_of(&t(&[(2, 0)])).vertices(), &[(0, 0), (2, 0)]);
        assert_eq!(
            polygon_of(&t(&[(1, 2), (2, 1), (1, -3)])).vertices(),
            &[(0, 0), (1, 2), (3, 3), (4, 0)]
        );
    }

    #[test]
    fn polygon_order() {
        let flat = polygon_of(&t(&[(2, 0)]));
        let one = polygon_of(&t(&[(1, 1), (1, -1)]));
        let two = polygon_of(&t(&[(1, 2), (1, -2)]));
        assert!(polygon_leq(&flat, &one).unwrap());
        assert!(!polygon_leq(&two, &one).unwrap());
        assert!(polygon_leq(&one, &two).unwrap());
        assert!(polygon_leq(&one, &one).unwrap());
        let other = polygon_of(&t(&[(3, 0)]));
        assert!(matches!(
            polygon_leq(&flat, &other),
            Err(StrataError::RankDegreeMismatch { .. })
        ));
    }

    #[test]
    fn codimension_formula() {
        assert_eq!(codim(&t(&[(1, 1), (1, -1)]), 0), 1);
        for d1 in 1..6 {
            assert_eq!(codim(&t(&[(1, d1), (1, 1 - d1)]), 2), 2 * d1);
        }
        assert_eq!(codim(&t(&[(2, 1), (1, -1)]), 2), 5);
        assert_eq!(codim(&t(&[(3, 7)]), 4), 0);
        // Empty stratum on the line: rank-2 odd-degree block.
        assert_eq!(codim(&t(&[(2, 1), (1, 0)]), 0), -1);
    }

    #[test]
    fn enumerate_rank_two() {
        let v = enumerate_types(2, 0, 0, 5);
        assert_eq!(v, vec![t(&[(1, 1), (1, -1)]), t(&[(1, 2), (1, -2)]), t(&[(1, 3), (1, -3)])]);
        assert_eq!(v.iter().map(|x| codim(x, 0)).collect::<Vec<_>>(), vec![1, 3, 5]);
        assert!(enumerate_types(2, 0, 1, -1).is_empty());
        assert_eq!(enumerate_all_types(2, 0, 0, 0), vec![t(&[(2, 0)])]);
    }

    #[test]
    fn enumerate_rank_three() {
        assert_eq!(
            enumerate_types(3, 0, 0, 2),
            vec![t(&[(1, 1), (2, -1)]), t(&[(2, 1), (1, -1)]), t(&[(1, 1), (1, 0), (1, -1)])]
        );
    }

    #[test]
    fn below_bounds() {
        let b = polygon_of(&t(&[(1, 2), (1, -2)]));
        assert_eq!(
            enumerate_types_below(2, 0, &b).unwrap(),
            vec![t(&[(2, 0)]), t(&[(1, 1), (1, -1)]), t(&[(1, 2), (1, -2)])]
        );
        let flat = polygon_of(&t(&[(2, 0)]));
        assert_eq!(enumerate_types_below(2, 0, &flat).unwrap(), vec![t(&[(2, 0)])]);
        let one = polygon_of(&t(&[(1, 1), (1, -1)]));
        assert_eq!(
            enumerate_types_below(2, 0, &one).unwrap(),
            vec![t(&[(2, 0)]), t(&[(1, 1), (1, -1)])]
        );
        assert!(enumerate_types_below(3, 0, &one).is_err());
    }

    #[test]
    fn below_bound_with_fractional_vertex() {
        // Bound ((1,1),(2,-1)) on (3,0): every type whose polygon stays under it.
        let b = polygon_of(&t(&[(1, 1), (2, -1)]));
        let v = enumerate_types_below(3, 0, &b).unwrap();
        for ty in &v {
            assert!(polygon_leq(&polygon_of(ty), &b).unwrap());
        }
        assert!(v.contains(&t(&[(3, 0)])));
        assert!(v.contains(&t(&[(1, 1), (2, -1)])));
        // (2,1),(1,-1) has value 1/2 at x = 1 and 1 at x = 2 > 1/2: above the bound.
        assert!(!v.contains(&t(&[(2, 1), (1, -1)])));
    }
}
