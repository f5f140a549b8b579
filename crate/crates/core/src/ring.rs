//! Cohomology rings presented by free graded-commutative generators.
//!
//! Every ring handled here is free: polynomial on its even generators and
//! exterior on its odd ones, so its Poincare series is a product of
//! `1/(1 - t^d)` and `(1 + t^d)` factors. Each generator also carries the
//! eigenvalue of the curve Frobenius pullback (`phi`) and of the arithmetic
//! Frobenius (`psi`, the inverse of the geometric Frobenius weight).
//!
//! Three readings of the trivial-determinant moduli ring are supported:
//!
//! | convention   | exterior classes `a_i^(j)` | `c_i` factor in the closed form |
//! |--------------|----------------------------|---------------------------------|
//! | `as-printed` | `i = 1..n`                 | `1/(1 + t^(2i))`                |
//! | `sign-fixed` | `i = 1..n`                 | `1/(1 - t^(2i))`                |
//! | `sl-strict`  | `i = 2..n`                 | `1/(1 - t^(2i))`                |

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{json as aj, IntPolynomial, RationalFunction, TruncatedSeries};
use crate::curve::{CurveData, CurveError};
use crate::frobenius::EigenMonomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("InvalidRank: rank {0} is not allowed here (moduli kinds need n >= 2)")]
    InvalidRank(u32),
    #[error("MissingCurveData: genus {0} ring has exterior generators and needs an L-polynomial")]
    MissingCurveData(u32),
    #[error("GenusMismatch: preset asks for genus {preset}, curve has genus {curve}")]
    GenusMismatch { preset: u32, curve: u32 },
    #[error("UnknownConvention: {0:?} (expected as-printed, sign-fixed or sl-strict)")]
    UnknownConvention(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    AsPrinted,
    SignFixed,
    SlStrict,
}

impl Convention {
    pub const ALL: [Convention; 3] = [Convention::AsPrinted, Convention::SignFixed, Convention::SlStrict];

    pub fn as_str(self) -> &'static str {
        match self {
            Convention::AsPrinted => "as-printed",
            Convention::SignFixed => "sign-fixed",
            Convention::SlStrict => "sl-strict",
        }
    }

    /// Lowest index `i` of the exterior classes `a_i^(j)` and of `c_i` on the open curve.
    fn first_index(self) -> u32 {
        match self {
            Convention::SlStrict => 2,
            _ => 1,
        }
    }
}

impl Default for Convention {
    fn default() -> Self {
        Convention::SignFixed
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Convention {
    type Err = RingError;
    fn from_str(s: &str) -> Result<Self, RingError> {
        Convention::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| RingError::UnknownConvention(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Which family a generator belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum GeneratorKind {
    /// Chern class `c_i`, degree `2i`.
    C { i: u32 },
    /// Class `b_i` from the fundamental-class component, degree `2i`.
    B { i: u32 },
    /// Class `a_i^(j)` from the `H^1` component, degree `2i - 1`.
    A { i: u32, j: u32 },
}

impl GeneratorKind {
    pub fn degree(self) -> u32 {
        match self {
            GeneratorKind::C { i } | GeneratorKind::B { i } => 2 * i,
            GeneratorKind::A { i, .. } => 2 * i - 1,
        }
    }

    pub fn name(self) -> String {
        match self {
            GeneratorKind::C { i } => format!("c_{i}"),
            GeneratorKind::B { i } => format!("b_{i}"),
            GeneratorKind::A { i, j } => format!("a_{i}^({j})"),
        }
    }

    /// `(phi, psi)` eigenvalues.
    pub fn eigenvalues(self) -> (EigenMonomial, EigenMonomial) {
        match self {
            GeneratorKind::C { i } => (EigenMonomial::ONE, EigenMonomial::q_power(-(i as i64))),
            GeneratorKind::B { i } => (EigenMonomial::q_power(1), EigenMonomial::q_power(-(i as i64))),
            GeneratorKind::A { i, j } => (
                EigenMonomial::lambda(j, 1, 0),
                EigenMonomial::lambda(j, 1, -(i as i64)),
            ),
        }
    }

    /// Eigenvalue of the geometric Frobenius; inverse of `psi`.
    pub fn geometric_weight(self) -> EigenMonomial {
        match self {
            GeneratorKind::C { i } | GeneratorKind::B { i } => EigenMonomial::q_power(i as i64),
            GeneratorKind::A { i, j } => EigenMonomial::lambda(j, -1, i as i64),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorDescriptor {
    pub name: String,
    pub kind: GeneratorKind,
    pub degree: u32,
    pub parity: Parity,
    pub phi_eigen: EigenMonomial,
    pub psi_eigen: EigenMonomial,
}

impl GeneratorDescriptor {
    pub fn new(kind: GeneratorKind) -> Self {
        let degree = kind.degree();
        let (phi_eigen, psi_eigen) = kind.eigenvalues();
        Self {
            name: kind.name(),
            kind,
            degree,
            parity: if degree % 2 == 0 { Parity::Even } else { Parity::Odd },
            phi_eigen,
            psi_eigen,
        }
    }
}

/// The ring presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingKind {
    ModuliFixedDet { genus: u32, rank: u32, convention: Convention },
    Bgl { rank: u32 },
    Bgm,
    /// Derived preset, not listed verbatim in the source material.
    Bsl { rank: u32 },
    Grassmannian { rank: u32 },
    OpenCurve { genus: u32, rank: u32, convention: Convention },
    /// Derived preset, not listed verbatim in the source material.
    PicardStack { genus: u32 },
}

impl RingKind {
    pub fn label(&self) -> String {
        match self {
            RingKind::ModuliFixedDet { genus, rank, convention } => {
                format!("moduli-fixed-det(g={genus}, n={rank}, {convention})")
            }
            RingKind::Bgl { rank } => format!("bgl({rank})"),
            RingKind::Bgm => "bgm".to_string(),
            RingKind::Bsl { rank } => format!("bsl({rank})"),
            RingKind::Grassmannian { rank } => format!("grassmannian({rank})"),
            RingKind::OpenCurve { genus, rank, convention } => {
                format!("open-curve(g={genus}, n={rank}, {convention})")
            }
            RingKind::PicardStack { genus } => format!("picard-stack(g={genus})"),
        }
    }

    /// Genus parameter of the curve-dependent kinds.
    fn genus_param(&self) -> Option<u32> {
        match *self {
            RingKind::ModuliFixedDet { genus, .. }
            | RingKind::OpenCurve { genus, .. }
            | RingKind::PicardStack { genus } => Some(genus),
            _ => None,
        }
    }

    fn genus(&self) -> u32 {
        self.genus_param().unwrap_or(0)
    }

    fn convention(&self) -> Option<Convention> {
        match *self {
            RingKind::ModuliFixedDet { convention, .. } | RingKind::OpenCurve { convention, .. } => {
                Some(convention)
            }
            _ => None,
        }
    }

    fn generator_kinds(&self) -> Result<Vec<GeneratorKind>, RingError> {
        let exterior = |g: u32, is: std::ops::RangeInclusive<u32>| {
            is.flat_map(move |i| (1..=2 * g).map(move |j| GeneratorKind::A { i, j }))
                .collect::<Vec<_>>()
        };
        let kinds = match *self {
            RingKind::ModuliFixedDet { genus, rank, convention } => {
                if rank < 2 {
                    return Err(RingError::InvalidRank(rank));
                }
                let mut v: Vec<_> = (1..rank).map(|i| GeneratorKind::B { i }).collect();
                v.extend((2..=rank).map(|i| GeneratorKind::C { i }));
                v.extend(exterior(genus, convention.first_index()..=rank));
                v
            }
            RingKind::OpenCurve { genus, rank, convention } => {
                if rank < 2 {
                    return Err(RingError::InvalidRank(rank));
                }
                let mut v: Vec<_> = (convention.first_index()..=rank)
                    .map(|i| GeneratorKind::C { i })
                    .collect();
                v.extend(exterior(genus, convention.first_index()..=rank));
                v
            }
            RingKind::Bgl { rank } | RingKind::Bsl { rank } | RingKind::Grassmannian { rank }
                if rank == 0 =>
            {
                return Err(RingError::InvalidRank(0))
            }
            RingKind::Bgl { rank } => (1..=rank).map(|i| GeneratorKind::C { i }).collect(),
            RingKind::Bgm => vec![GeneratorKind::C { i: 1 }],
            RingKind::Bsl { rank } => (2..=rank).map(|i| GeneratorKind::C { i }).collect(),
            RingKind::Grassmannian { rank } => (1..rank).map(|i| GeneratorKind::B { i }).collect(),
            RingKind::PicardStack { genus } => {
                let mut v = vec![GeneratorKind::C { i: 1 }];
                v.extend(exterior(genus, 1..=1));
                v
            }
        };
        Ok(kinds)
    }
}

/// A free graded-commutative ring given by its generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedRingSpec {
    pub label: String,
    pub generators: Vec<GeneratorDescriptor>,
    pub curve: Option<CurveData>,
    pub convention: Option<Convention>,
}

impl GradedRingSpec {
    pub fn generator(&self, name: &str) -> Option<&GeneratorDescriptor> {
        self.generators.iter().find(|g| g.name == name)
    }

    pub fn has_exterior(&self) -> bool {
        self.generators.iter().any(|g| g.parity == Parity::Odd)
    }

    pub fn genus(&self) -> u32 {
        self.curve.as_ref().map_or(0, CurveData::genus)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "convention": self.convention.map(Convention::as_str),
            "generators": self.generators.iter().map(|g| json!({
                "name": g.name,
                "degree": g.degree,
                "parity": g.parity,
                "phi": g.phi_eigen.to_string(),
                "psi": g.psi_eigen.to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Builds one of the preset rings. Kinds with exterior generators need `curve`.
pub fn ring_preset(kind: RingKind, curve: Option<&CurveData>) -> Result<GradedRingSpec, RingError> {
    let kinds = kind.generator_kinds()?;
    let needs_curve = kinds.iter().any(|k| matches!(k, GeneratorKind::A { .. }));
    let curve = match curve {
        Some(c) if kind.genus_param().is_some_and(|g| g != c.genus()) => {
            return Err(RingError::GenusMismatch {
                preset: kind.genus(),
                curve: c.genus(),
            })
        }
        Some(c) => Some(c.clone()),
        None if needs_curve => return Err(RingError::MissingCurveData(kind.genus())),
        None => None,
    };
    Ok(GradedRingSpec {
        label: kind.label(),
        generators: kinds.into_iter().map(GeneratorDescriptor::new).collect(),
        curve,
        convention: kind.convention(),
    })
}

/// Preset whose eigenvalue data is irrelevant; a generic curve of the right
/// genus stands in for the L-polynomial.
pub fn ring_preset_for_series(kind: RingKind) -> Result<GradedRingSpec, RingError> {
    let g = kind.genus();
    let curve = (g > 0)
        .then(|| CurveData::supersingular(g, 2))
        .transpose()?;
    ring_preset(kind, curve.as_ref())
}

/// Poincare series of the free ring: `prod 1/(1 - t^d)` over even generators
/// times `prod (1 + t^d)` over odd ones.
pub fn poincare_from_generators(spec: &GradedRingSpec, order: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(order);
    for g in &spec.generators {
        let d = g.degree as usize;
        let factor = match g.parity {
            Parity::Even => {
                TruncatedSeries::from_integers((0..=order).map(|k| i64::from(k % d == 0)), order)
            }
            Parity::Odd => {
                let mut c = vec![0i64; order + 1];
                c[0] = 1;
                if d <= order {
                    c[d] = 1;
                }
                TruncatedSeries::from_integers(c, order)
            }
        };
        acc = &acc * &factor;
    }
    acc
}

/// Closed-form Poincare series of the trivial-determinant moduli stack.
pub fn poincare_closed_form(genus: u32, rank: u32, convention: Convention) -> Result<RationalFunction, RingError> {
    if rank < 2 {
        return Err(RingError::InvalidRank(rank));
    }
    let two_g = 2 * genus;
    let n = rank as usize;
    let mut num = IntPolynomial::one();
    for i in convention.first_index() as usize..=n {
        num = &num * &IntPolynomial::one_plus(1, 2 * i - 1).pow(two_g);
    }
    let c_sign = match convention {
        Convention::AsPrinted => 1,
        _ => -1,
    };
    let mut den = IntPolynomial::one();
    for i in 2..=n {
        den = &den * &IntPolynomial::one_plus(c_sign, 2 * i);
        den = &den * &IntPolynomial::one_plus(-1, 2 * i - 2);
    }
    Ok(RationalFunction::new(num, den).expect("nonzero denominator"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationReport {
    pub holds: bool,
    pub lhs: TruncatedSeries,
    pub rhs: TruncatedSeries,
    pub first_mismatch_degree: Option<usize>,
}

impl FactorizationReport {
    pub fn to_json(&self) -> Value {
        json!({
            "holds": self.holds,
            "lhs": aj::series_value(&self.lhs),
            "rhs": aj::series_value(&self.rhs),
            "first_mismatch_degree": self.first_mismatch_degree,
        })
    }
}

/// Compares the closed form with `P(Grassmannian) * P(open curve)`.
pub fn grassmann_factorization_check(
    genus: u32,
    rank: u32,
    convention: Convention,
    order: usize,
) -> Result<FactorizationReport, RingError> {
    let lhs = poincare_closed_form(genus, rank, convention)?
        .expand(order)
        .expect("closed-form denominators have constant term 1");
    let gr = ring_preset_for_series(RingKind::Grassmannian { rank })?;
    let open = ring_preset_for_series(RingKind::OpenCurve { genus, rank, convention })?;
    let rhs = &poincare_from_generators(&gr, order) * &poincare_from_generators(&open, order);
    let first_mismatch_degree = lhs.first_mismatch(&rhs);
    Ok(FactorizationReport {
        holds: first_mismatch_degree.is_none(),
        lhs,
        rhs,
        first_mismatch_degree,
    })
}
