//! JSON encodings shared by every module.
//!
//! Integers are written as decimal strings; a rational is `["num", "den"]`.
//! A series is `{"order": K, "coeffs": [["num", "den"], ...]}` and a rational
//! function is `{"num": ["c0", ...], "den": ["c0", ...]}`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{IntPolynomial, RationalFunction, TruncatedSeries};

/// Wire form of a rational number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson(pub String, pub String);

impl From<&BigRational> for RationalJson {
    fn from(r: &BigRational) -> Self {
        RationalJson(r.numer().to_string(), r.denom().to_string())
    }
}

impl TryFrom<&RationalJson> for BigRational {
    type Error = String;
    fn try_from(r: &RationalJson) -> Result<Self, String> {
        let n = BigInt::from_str(&r.0).map_err(|e| format!("bad numerator {:?}: {e}", r.0))?;
        let d = BigInt::from_str(&r.1).map_err(|e| format!("bad denominator {:?}: {e}", r.1))?;
        if d == BigInt::from(0) {
            return Err("zero denominator".into());
        }
        Ok(BigRational::new(n, d))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub order: usize,
    pub coeffs: Vec<RationalJson>,
}

impl From<&TruncatedSeries> for SeriesJson {
    fn from(s: &TruncatedSeries) -> Self {
        SeriesJson {
            order: s.order(),
            coeffs: s.coeffs().iter().map(RationalJson::from).collect(),
        }
    }
}

impl TryFrom<&SeriesJson> for TruncatedSeries {
    type Error = String;
    fn try_from(s: &SeriesJson) -> Result<Self, String> {
        if s.coeffs.len() != s.order + 1 {
            return Err(format!(
                "series of order {} needs {} coefficients, got {}",
                s.order,
                s.order + 1,
                s.coeffs.len()
            ));
        }
        let coeffs = s
            .coeffs
            .iter()
            .map(BigRational::try_from)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TruncatedSeries::from_coeffs(coeffs, s.order))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalFunctionJson {
    pub num: Vec<String>,
    pub den: Vec<String>,
}

fn poly_strings(p: &IntPolynomial) -> Vec<String> {
    p.coeffs().iter().map(ToString::to_string).collect()
}

fn parse_poly(c: &[String]) -> Result<IntPolynomial, String> {
    c.iter()
        .map(|s| BigInt::from_str(s).map_err(|e| format!("bad coefficient {s:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()
        .map(IntPolynomial::new)
}

impl From<&RationalFunction> for RationalFunctionJson {
    fn from(f: &RationalFunction) -> Self {
        RationalFunctionJson {
            num: poly_strings(f.num()),
            den: poly_strings(f.den()),
        }
    }
}

impl TryFrom<&RationalFunctionJson> for RationalFunction {
    type Error = String;
    fn try_from(f: &RationalFunctionJson) -> Result<Self, String> {
        RationalFunction::new(parse_poly(&f.num)?, parse_poly(&f.den)?).map_err(|e| e.to_string())
    }
}

pub fn rational_value(r: &BigRational) -> Value {
    json!([r.numer().to_string(), r.denom().to_string()])
}

pub fn series_value(s: &TruncatedSeries) -> Value {
    serde_json::to_value(SeriesJson::from(s)).expect("series serializes")
}

pub fn rational_function_value(f: &RationalFunction) -> Value {
    serde_json::to_value(RationalFunctionJson::from(f)).expect("rational function serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    #[test]
    fn series_encoding_shape() {
        let s = TruncatedSeries::from_coeffs(vec![ratio(1, 1), ratio(-2, 3)], 1);
        let v = series_value(&s);
        assert_eq!(v, json!({"order": 1, "coeffs": [["1", "1"], ["-2", "3"]]}));
        let back: SeriesJson = serde_json::from_value(v).unwrap();
        assert_eq!(TruncatedSeries::try_from(&back).unwrap(), s);
    }

    #[test]
    fn rational_function_encoding_shape() {
        let f = RationalFunction::geometric(-1, 2);
        assert_eq!(
            rational_function_value(&f),
            json!({"num": ["1"], "den": ["1", "0", "-1"]})
        );
    }

    #[test]
    fn rejects_wrong_length() {
        let bad = SeriesJson {
            order: 2,
            coeffs: vec![RationalJson("1".into(), "1".into())],
        };
        assert!(TruncatedSeries::try_from(&bad).is_err());
    }
}
