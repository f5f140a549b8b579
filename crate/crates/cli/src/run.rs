use std::fmt::Write as _;

use mstack_core::arith::json::{rational_function_value, rational_value, series_value};
use mstack_core::arith::{IntPolynomial, TruncatedSeries};
use mstack_core::curve::{CurveData, GroundField};
use mstack_core::frobenius::{brute_trace, formal_trace, weil_numbers};
use mstack_core::p1::{fixed_point_demo, mass_sl, verify_lefschetz};
use mstack_core::ring::{poincare_closed_form, poincare_from_generators, ring_preset, ring_preset_for_series, RingKind};
use mstack_core::strata::{enumerate_types, polygon_of, strata_json, Stratifier};
use mstack_core::verify::{run_suite, verify_all, VerifyReport};
use mstack_core::Error;
use serde_json::{json, Value};

use crate::{CoarseArgs, CurveArgs, DemoArgs, MassArgs, PoincareArgs, Preset, SeriesArgs, StrataArgs, Suite, TraceArgs, VerifyArgs};

pub struct Report {
    pub text: String,
    pub json: Value,
    /// `Some(false)` when an identity check failed.
    pub verified: Option<bool>,
}

fn coeff_list(s: &TruncatedSeries) -> String {
    let c: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
    format!("[{}]", c.join(", "))
}

fn curve_from(args: &CurveArgs) -> Result<CurveData, Error> {
    let curve = match (&args.l_poly, args.genus) {
        (Some(c), g) => CurveData::new(g, args.q, Some(IntPolynomial::from_i64s(c)))?,
        (None, 0) => CurveData::projective_line(args.q)?,
        (None, g) => CurveData::supersingular(g, args.q)?,
    };
    weil_numbers(&curve)?;
    Ok(curve)
}

pub fn poincare(a: &PoincareArgs) -> Result<Report, Error> {
    let kind = match a.preset {
        Preset::Moduli => RingKind::ModuliFixedDet { genus: a.genus, rank: a.rank, convention: a.convention },
        Preset::Bgl => RingKind::Bgl { rank: a.rank },
        Preset::Bgm => RingKind::Bgm,
        Preset::Bsl => RingKind::Bsl { rank: a.rank },
        Preset::Grassmannian => RingKind::Grassmannian { rank: a.rank },
        Preset::OpenCurve => RingKind::OpenCurve { genus: a.genus, rank: a.rank, convention: a.convention },
        Preset::Picard => RingKind::PicardStack { genus: a.genus },
    };
    let spec = ring_preset_for_series(kind)?;
    let gens = poincare_from_generators(&spec, a.order);
    let mut text = format!("ring: {}\ngenerators:", spec.label);
    for g in &spec.generators {
        write!(text, " {}(deg {})", g.name, g.degree).unwrap();
    }
    writeln!(text, "\nfrom generators: {gens}\ncoefficients: {}", coeff_list(&gens)).unwrap();
    let mut json = json!({
        "ring": spec.to_json(),
        "from_generators": series_value(&gens),
    });
    if a.preset == Preset::Moduli {
        let closed = poincare_closed_form(a.genus, a.rank, a.convention)?;
        let expanded = closed.expand(a.order)?;
        let agree = expanded == gens;
        writeln!(text, "closed form ({}): {closed}\nagrees with generators: {agree}", a.convention).unwrap();
        json["closed_form"] = rational_function_value(&closed);
        json["closed_form_expansion"] = series_value(&expanded);
        json["agrees"] = json!(agree);
    }
    Ok(Report { text, json, verified: None })
}

pub fn trace(a: &TraceArgs) -> Result<Report, Error> {
    let curve = curve_from(&a.curve)?;
    let spec = ring_preset(
        RingKind::ModuliFixedDet { genus: a.curve.genus, rank: a.rank, convention: a.convention },
        Some(&curve),
    )?;
    let t = formal_trace(&spec, a.r, a.s)?;
    let value = t.value.clone().expect("convergent trace has a value");
    let mut text = format!("ring: {}\ntrace of phi^{} x psi^{}\nfactors:\n", spec.label, a.r, a.s);
    for f in &t.factors {
        let shown = if f.exp < 0 { format!("({})^-1", f.text) } else { format!("({})", f.text) };
        writeln!(text, "  {shown} = {}", f.value()).unwrap();
    }
    writeln!(text, "value: {value}").unwrap();
    if let Some(m) = &t.majorant {
        writeln!(text, "majorant: {m}").unwrap();
    }
    let mut json = t.to_json();
    if let Some(d) = a.brute {
        let b = brute_trace(&spec, a.r, a.s, d)?;
        writeln!(
            text,
            "brute (degree <= {d}): partial {}, tail bound {}, {} monomials",
            b.partial, b.tail_bound, b.monomials
        )
        .unwrap();
        json["brute"] = b.to_json();
    }
    Ok(Report { text, json, verified: None })
}

fn series_report(label: &str, s: &TruncatedSeries) -> Report {
    Report {
        text: format!("{label}: {s}\ncoefficients: {}\n", coeff_list(s)),
        json: json!({ "series": label, "value": series_value(s) }),
        verified: None,
    }
}

pub fn ss(a: &SeriesArgs) -> Result<Report, Error> {
    let s = Stratifier::new().ss_series(a.rank, a.degree, a.genus, a.order)?;
    Ok(series_report(&format!("ss(n={}, d={}, g={})", a.rank, a.degree, a.genus), &s))
}

pub fn coarse(a: &CoarseArgs) -> Result<Report, Error> {
    let st = Stratifier::new();
    let p = &a.series;
    let (label, s) = if a.fixed_det {
        ("fixed-det-coarse", st.fixed_det_coarse_series(p.rank, p.degree, p.genus, p.order)?)
    } else {
        ("coarse", st.coarse_moduli_series(p.rank, p.degree, p.genus, p.order)?)
    };
    Ok(series_report(&format!("{label}(n={}, d={}, g={})", p.rank, p.degree, p.genus), &s))
}

pub fn strata(a: &StrataArgs) -> Result<Report, Error> {
    if a.rank == 0 {
        return Err(mstack_core::StrataError::InvalidRank.into());
    }
    let types = enumerate_types(a.rank, a.degree, a.genus, a.max_codim);
    let mut text = format!(
        "HN types of (n={}, d={}) at g={} with codim <= {}: {}\n",
        a.rank,
        a.degree,
        a.genus,
        a.max_codim,
        types.len()
    );
    for t in &types {
        let poly: Vec<String> = polygon_of(t).vertices().iter().map(|(x, y)| format!("({x},{y})")).collect();
        writeln!(
            text,
            "  {t}  codim {}  polygon {}",
            mstack_core::strata::codim(t, a.genus),
            poly.join(" ")
        )
        .unwrap();
    }
    Ok(Report { text, json: strata_json(&types, a.genus), verified: None })
}

pub fn mass(a: &MassArgs) -> Result<Report, Error> {
    let m = mass_sl(a.rank, GroundField::new(a.q)?, a.height)?;
    let mut text = format!(
        "mass of rank-{} degree-0 bundles on P^1 over F_{} (height <= {})\npartial: {}\ntail bound: {}\n",
        m.rank, m.q, m.height, m.partial, m.tail_bound
    );
    if let Some(c) = &m.closed_form {
        writeln!(text, "closed form: {c}").unwrap();
    }
    Ok(Report { text, json: m.to_json(), verified: None })
}

pub fn verify(a: &VerifyArgs) -> Result<Report, Error> {
    if let (Suite::Lefschetz, Some(n)) = (a.suite, a.rank) {
        let r = verify_lefschetz(n, GroundField::new(a.q)?, a.height)?;
        let text = format!(
            "Lefschetz check, n={n}, q={}, height {}\nlhs: {}\nrhs partial: {}\ntail bound: {}\nexact: {}\n{}\n",
            a.q,
            a.height,
            r.lhs,
            r.mass.partial,
            r.mass.tail_bound,
            r.exact,
            if r.pass { "PASS" } else { "FAIL" }
        );
        return Ok(Report { text, json: r.to_json(), verified: Some(r.pass) });
    }
    let reports: Vec<VerifyReport> = if a.suite == Suite::All {
        verify_all(a.order)?
    } else {
        vec![run_suite(a.suite.name(), a.order)?]
    };
    let pass = reports.iter().all(VerifyReport::pass);
    let mut text: String = reports.iter().map(VerifyReport::to_text).collect();
    if reports.len() > 1 {
        writeln!(text, "overall: {}", if pass { "PASS" } else { "FAIL" }).unwrap();
    }
    let json = if reports.len() == 1 {
        reports[0].to_json()
    } else {
        json!({
            "pass": pass,
            "suites": reports.iter().map(VerifyReport::to_json).collect::<Vec<_>>(),
        })
    };
    Ok(Report { text, json, verified: Some(pass) })
}

pub fn demo(a: &DemoArgs) -> Result<Report, Error> {
    let d = fixed_point_demo(GroundField::new(a.q)?, a.s)?;
    let mut json = d.to_json();
    json["naive_measure"] = json!("1/|SL_2(F_{q^s})|");
    json["naive_value"] = rational_value(&d.rows[0].naive);
    Ok(Report { text: d.to_text(), json, verified: None })
}
