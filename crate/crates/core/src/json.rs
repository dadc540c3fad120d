//! JSON schemas for configurations, classifications, certificates and
//! residue problems. Rationals travel as `"p/q"` strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactalg::IntMatrix;
use crate::polytope::Configuration;
use crate::residue::ResidueProblem;

pub(crate) fn ser_bigint<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub(crate) fn ser_bigints<S: Serializer>(xs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(ToString::to_string))
}

pub(crate) fn ser_point_sets<S: Serializer>(sets: &[Vec<Vec<BigInt>>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let text: Vec<Vec<Vec<String>>> =
        sets.iter().map(|set| set.iter().map(|p| p.iter().map(ToString::to_string).collect()).collect()).collect();
    text.serialize(s)
}

pub(crate) fn ser_rationals<S: Serializer>(xs: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(ToString::to_string))
}

pub(crate) fn ser_optional_rationals<S: Serializer>(
    xs: &Option<Vec<BigRational>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match xs {
        Some(v) => ser_rationals(v, s),
        None => s.serialize_none(),
    }
}

pub(crate) fn ser_display<T: std::fmt::Display, S: Serializer>(x: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

/// Parses `"p/q"` or `"n"`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: {text:?}"));
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// `{"d": int, "s": int, "matrix": [[int, ...], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationJson {
    pub d: usize,
    pub s: usize,
    pub matrix: Vec<Vec<i64>>,
}

impl ConfigurationJson {
    pub fn from_configuration(a: &Configuration) -> Result<Self> {
        let matrix = a
            .matrix()
            .to_rows()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| i64::try_from(x).map_err(|_| Error::InvalidInput("entry exceeds 64 bits".into())))
                    .collect()
            })
            .collect::<Result<Vec<Vec<i64>>>>()?;
        Ok(Self { d: a.d(), s: a.s(), matrix })
    }

    pub fn to_configuration(&self) -> Result<Configuration> {
        if self.matrix.len() != self.d || self.matrix.iter().any(|r| r.len() != self.s) {
            return Err(Error::InvalidConfiguration(format!(
                "matrix shape does not match d = {}, s = {}",
                self.d, self.s
            )));
        }
        Configuration::new(IntMatrix::from_rows(&self.matrix))
    }
}

pub fn configuration_from_str(text: &str) -> Result<Configuration> {
    let parsed: ConfigurationJson =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("configuration JSON: {e}")))?;
    parsed.to_configuration()
}

pub fn configuration_to_string(a: &Configuration) -> Result<String> {
    serde_json::to_string(&ConfigurationJson::from_configuration(a)?).map_err(|e| Error::Internal(e.to_string()))
}

/// `{"r": int, "m": int, "coeffs": [["p/q", ...], ...], "a": [int, ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueProblemJson {
    pub r: usize,
    pub m: u32,
    pub coeffs: Vec<Vec<String>>,
    pub a: Vec<i64>,
}

impl ResidueProblemJson {
    pub fn from_problem(p: &ResidueProblem) -> Self {
        Self {
            r: p.r,
            m: p.m,
            coeffs: p.coeffs.iter().map(|row| row.iter().map(ToString::to_string).collect()).collect(),
            a: p.a.clone(),
        }
    }

    pub fn to_problem(&self) -> Result<ResidueProblem> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| row.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        ResidueProblem::new(self.r, self.m, coeffs, self.a.clone())
    }
}

pub fn residue_problem_from_str(text: &str) -> Result<ResidueProblem> {
    let parsed: ResidueProblemJson =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("residue problem JSON: {e}")))?;
    parsed.to_problem()
}

pub fn residue_problem_to_string(p: &ResidueProblem) -> Result<String> {
    serde_json::to_string(&ResidueProblemJson::from_problem(p)).map_err(|e| Error::Internal(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn configuration_round_trip() {
        let a = catalog::scroll();
        let text = configuration_to_string(&a).unwrap();
        assert_eq!(text, r#"{"d":3,"s":6,"matrix":[[1,1,1,0,0,0],[0,0,0,1,1,1],[0,1,2,0,1,2]]}"#);
        assert_eq!(configuration_from_str(&text).unwrap(), a);
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        assert!(configuration_from_str(r#"{"d":2,"s":2,"matrix":[[1,1]]}"#).is_err());
        assert!(configuration_from_str("not json").is_err());
    }

    #[test]
    fn residue_problem_round_trip() {
        let text = r#"{"r":1,"m":2,"coeffs":[["1","1","1"],["2","1/2","3"]],"a":[2]}"#;
        let p = residue_problem_from_str(text).unwrap();
        assert_eq!(p.coeffs[1][1].to_string(), "1/2");
        assert_eq!(residue_problem_to_string(&p).unwrap(), text);
        assert!(residue_problem_from_str(r#"{"r":1,"m":2,"coeffs":[["1","1","1"],["2","1","3"]],"a":[4]}"#).is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/6").unwrap().to_string(), "-1/2");
        assert_eq!(parse_rational("4").unwrap().to_string(), "4");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
