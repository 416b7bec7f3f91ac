//! Text and JSON renderings of ring elements.
//!
//! Text: terms `c*q^a*r^b` in descending `(r, q)` order, e.g.
//! `q^5+q^4+q+1+q^-1+q^-4+q^-5`; a non-trivial denominator is written
//! `(num)/(den)`.
//!
//! JSON: `{"num": [[a, b, "c"], ...], "den": [...]}` where `a` is the
//! q-exponent, `b` the r-exponent and `c` a decimal rational string.

use std::fmt::{self, Write};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::FieldValue;
use super::poly::{LaurentPoly, Monomial};
use super::RingError;

fn write_term(out: &mut String, m: Monomial, c: &BigRational, first: bool) {
    if c.is_negative() {
        out.push('-');
    } else if !first {
        out.push('+');
    }
    let abs = c.abs();
    let mut factors = Vec::new();
    for (var, e) in [('q', m.q), ('r', m.r)] {
        match e {
            0 => {}
            1 => factors.push(var.to_string()),
            _ => factors.push(format!("{var}^{e}")),
        }
    }
    if factors.is_empty() {
        write!(out, "{abs}").unwrap();
    } else {
        if !abs.is_one() {
            write!(out, "{abs}*").unwrap();
        }
        out.push_str(&factors.join("*"));
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms().iter().rev().enumerate() {
            write_term(&mut out, *m, c, i == 0);
        }
        f.write_str(&out)
    }
}

impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "({})/({})", self.numer(), self.denom())
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational, RingError> {
    let bad = || RingError::Parse(format!("invalid coefficient `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n).map_err(|_| bad())?;
            let d = BigInt::from_str(d).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

fn parse_term(s: &str) -> Result<(Monomial, BigRational), RingError> {
    let (neg, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    if body.is_empty() {
        return Err(RingError::Parse(format!("empty term in `{s}`")));
    }
    let mut coeff = BigRational::one();
    let mut m = Monomial::ONE;
    for factor in body.split('*') {
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => {
                let e: i32 = e
                    .parse()
                    .map_err(|_| RingError::Parse(format!("invalid exponent in `{factor}`")))?;
                (b, e)
            }
            None => (factor, 1),
        };
        match base {
            "q" => m.q += exp,
            "r" => m.r += exp,
            _ if factor.contains('^') => {
                return Err(RingError::Parse(format!("unknown variable in `{factor}`")))
            }
            _ => coeff *= parse_rational(factor)?,
        }
    }
    if neg {
        coeff = -coeff;
    }
    Ok((m, coeff))
}

impl FromStr for LaurentPoly {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(RingError::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                terms.push(parse_term(&s[start..i])?);
                start = i;
            }
        }
        terms.push(parse_term(&s[start..])?);
        Ok(LaurentPoly::from_terms(terms))
    }
}

impl FromStr for FieldValue {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('(') {
            let (num, den) = rest
                .split_once(")/(")
                .ok_or_else(|| RingError::Parse(format!("expected `(num)/(den)`: `{s}`")))?;
            let den = den
                .strip_suffix(')')
                .ok_or_else(|| RingError::Parse(format!("unbalanced parentheses: `{s}`")))?;
            FieldValue::new(num.parse()?, den.parse()?)
        } else {
            Ok(FieldValue::from_poly(s.parse()?))
        }
    }
}

type JsonTerms = Vec<(i32, i32, String)>;

#[derive(Serialize, Deserialize)]
struct FieldValueJson {
    num: JsonTerms,
    den: JsonTerms,
}

fn json_terms(p: &LaurentPoly) -> JsonTerms {
    p.terms()
        .iter()
        .rev()
        .map(|(m, c)| (m.q, m.r, c.to_string()))
        .collect()
}

fn from_json_terms(terms: &JsonTerms) -> Result<LaurentPoly, RingError> {
    let parsed = terms
        .iter()
        .map(|(q, r, c)| Ok((Monomial::new(*q, *r), parse_rational(c)?)))
        .collect::<Result<Vec<_>, RingError>>()?;
    Ok(LaurentPoly::from_terms(parsed))
}

impl Serialize for FieldValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FieldValueJson {
            num: json_terms(self.numer()),
            den: json_terms(self.denom()),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FieldValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = FieldValueJson::deserialize(deserializer)?;
        let num = from_json_terms(&raw.num).map_err(serde::de::Error::custom)?;
        let den = from_json_terms(&raw.den).map_err(serde::de::Error::custom)?;
        FieldValue::new(num, den).map_err(serde::de::Error::custom)
    }
}

impl FieldValue {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("field values always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, RingError> {
        serde_json::from_str(s).map_err(|e| RingError::Parse(e.to_string()))
    }
}
