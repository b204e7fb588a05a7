//! JSON encodings shared by atlases, reports and series files.
//!
//! Rationals travel as `[numerator, denominator]` integer pairs of any size.

use std::str::FromStr;

use num::{BigInt, BigRational, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Number;

use super::complex_rational::ComplexRational;
use super::series::{LaurentSeries, EXACT};
use crate::error::AlgebraError;

#[derive(Clone, Debug, PartialEq)]
pub struct RationalWire(pub BigRational);

fn int_to_number(n: &BigInt) -> Number {
    Number::from_str(&n.to_string()).expect("integer literal")
}

fn number_to_int<E: serde::de::Error>(n: &Number) -> Result<BigInt, E> {
    let s = n.to_string();
    BigInt::from_str(&s).map_err(|_| E::custom(format!("expected an integer, found {s}")))
}

impl Serialize for RationalWire {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [int_to_number(self.0.numer()), int_to_number(self.0.denom())].serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalWire {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pair = <[Number; 2]>::deserialize(d)?;
        let num = number_to_int::<D::Error>(&pair[0])?;
        let den = number_to_int::<D::Error>(&pair[1])?;
        if den.is_zero() {
            return Err(D::Error::custom("rational with zero denominator"));
        }
        Ok(RationalWire(BigRational::new(num, den)))
    }
}

/// One series term: `{exp:[int], re:[num,den], im:[num,den]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TermWire {
    pub exp: Vec<i64>,
    pub re: RationalWire,
    pub im: RationalWire,
}

/// Series payload `{terms:[...]}`, with optional `vars` and `truncation`
/// for standalone series files.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SeriesWire {
    pub terms: Vec<TermWire>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<Vec<i64>>,
}

impl SeriesWire {
    /// Terms only; the variables are implied by the enclosing document.
    pub fn from_series(s: &LaurentSeries) -> Self {
        SeriesWire {
            terms: s
                .terms()
                .map(|(e, c)| TermWire { exp: e.clone(), re: RationalWire(c.re.clone()), im: RationalWire(c.im.clone()) })
                .collect(),
            vars: None,
            truncation: None,
        }
    }

    /// Self-describing form with variables and (finite) truncation.
    pub fn from_series_standalone(s: &LaurentSeries) -> Self {
        let mut w = Self::from_series(s);
        w.vars = Some(s.vars().to_vec());
        if !s.is_exact() {
            w.truncation = Some(s.truncation().iter().map(|&t| if t == EXACT { i64::MAX } else { t }).collect());
        }
        w
    }

    pub fn to_series<S: AsRef<str>>(&self, vars: &[S]) -> Result<LaurentSeries, AlgebraError> {
        for t in &self.terms {
            if t.exp.len() != vars.len() {
                return Err(AlgebraError::ExponentArity { expected: vars.len(), got: t.exp.len() });
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|t| (t.exp.clone(), ComplexRational::new(t.re.0.clone(), t.im.0.clone())));
        match &self.truncation {
            Some(tr) => LaurentSeries::from_terms_truncated(vars, terms, tr.clone()),
            None => Ok(LaurentSeries::from_terms(vars, terms)),
        }
    }

    /// Uses the embedded `vars`, or `y1..yk` inferred from the exponent arity.
    pub fn to_standalone_series(&self) -> Result<LaurentSeries, AlgebraError> {
        let vars = match &self.vars {
            Some(v) => v.clone(),
            None => {
                let k = self.terms.first().map(|t| t.exp.len()).unwrap_or(1);
                if k == 1 {
                    vec!["y".to_string()]
                } else {
                    (1..=k).map(|i| format!("y{i}")).collect()
                }
            }
        };
        self.to_series(&vars)
    }
}

/// Exact complex value `{re:[num,den], im:[num,den]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ComplexWire {
    pub re: RationalWire,
    pub im: RationalWire,
}

impl From<&ComplexRational> for ComplexWire {
    fn from(c: &ComplexRational) -> Self {
        ComplexWire { re: RationalWire(c.re.clone()), im: RationalWire(c.im.clone()) }
    }
}

impl From<&ComplexWire> for ComplexRational {
    fn from(w: &ComplexWire) -> Self {
        ComplexRational::new(w.re.0.clone(), w.im.0.clone())
    }
}

/// Serializes any value as canonical JSON: sorted keys, two-space indent,
/// trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable value");
    let mut s = serde_json::to_string_pretty(&v).expect("json value");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_integer_pairs() {
        let w = RationalWire(BigRational::new((-6).into(), 4.into()));
        assert_eq!(serde_json::to_string(&w).unwrap(), "[-3,2]");
        let back: RationalWire = serde_json::from_str("[10, -4]").unwrap();
        assert_eq!(back.0, BigRational::new((-5).into(), 2.into()));
        assert!(serde_json::from_str::<RationalWire>("[1, 0]").is_err());
        assert!(serde_json::from_str::<RationalWire>("[1.5, 2]").is_err());
    }

    #[test]
    fn big_integers_survive() {
        let big: BigInt = num::pow(BigInt::from(10), 40) + 7;
        let w = RationalWire(BigRational::new(big.clone(), 3.into()));
        let s = serde_json::to_string(&w).unwrap();
        let back: RationalWire = serde_json::from_str(&s).unwrap();
        assert_eq!(back.0, BigRational::new(big, 3.into()));
    }

    #[test]
    fn canonical_json_sorts_keys() {
        let t = TermWire { exp: vec![1], re: RationalWire(BigRational::from_integer(1.into())), im: RationalWire(BigRational::zero()) };
        let s = to_canonical_json(&t);
        let e = s.find("\"exp\"").unwrap();
        let i = s.find("\"im\"").unwrap();
        let r = s.find("\"re\"").unwrap();
        assert!(e < i && i < r);
    }
}
