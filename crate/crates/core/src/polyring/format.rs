//! Text and JSON encodings for polynomials and truncated series.
//!
//! Text: `c*z1^a1*...*zn^an` terms in canonical order joined by ` + ` or
//! ` - `, with unit coefficients and unit exponents elided.
//!
//! JSON: `{"num_vars":n,"max_total_degree":D|null,"terms":[{"e":[..],"c":".."}]}`
//! with coefficients as decimal strings.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Coefficient;

use super::{ExponentVector, Polynomial, Series};

fn write_terms<C: Coefficient>(f: &mut fmt::Formatter<'_>, terms: &[(&ExponentVector, &C)]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (k, (e, c)) in terms.iter().enumerate() {
        let negative = c.is_negative();
        let magnitude = c.abs();
        match (k, negative) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        let is_constant = e.degree() == 0;
        let mut wrote = false;
        if is_constant || !magnitude.is_one() {
            write!(f, "{magnitude}")?;
            wrote = true;
        }
        for (var, &power) in e.as_slice().iter().enumerate() {
            if power == 0 {
                continue;
            }
            if wrote {
                write!(f, "*")?;
            }
            write!(f, "z{}", var + 1)?;
            if power > 1 {
                write!(f, "^{power}")?;
            }
            wrote = true;
        }
    }
    Ok(())
}

impl<C: Coefficient> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms())
    }
}

impl<C: Coefficient> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms())?;
        write!(f, " + O(deg > {})", self.cap())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub e: Vec<u32>,
    pub c: String,
}

/// Shared JSON form for polynomials (`max_total_degree: null`) and series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub num_vars: usize,
    pub max_total_degree: Option<u32>,
    pub terms: Vec<TermJson>,
}

fn encode<C: Coefficient>(num_vars: usize, cap: Option<u32>, terms: Vec<(&ExponentVector, &C)>) -> PolynomialJson {
    PolynomialJson {
        num_vars,
        max_total_degree: cap,
        terms: terms.into_iter().map(|(e, c)| TermJson { e: e.as_slice().to_vec(), c: c.to_string() }).collect(),
    }
}

fn decode_terms<C: Coefficient>(json: &PolynomialJson) -> Result<Vec<(ExponentVector, C)>> {
    json.terms
        .iter()
        .map(|t| {
            let c =
                t.c.parse::<C>()
                    .map_err(|_| Error::Parse { position: 0, message: format!("bad coefficient {:?}", t.c) })?;
            Ok((ExponentVector::new(t.e.clone()), c))
        })
        .collect()
}

impl<C: Coefficient> Polynomial<C> {
    pub fn to_json(&self) -> PolynomialJson {
        encode(self.num_vars(), None, self.terms())
    }

    pub fn from_json(json: &PolynomialJson) -> Result<Self> {
        if json.max_total_degree.is_some() {
            return Err(Error::Parse { position: 0, message: "polynomial JSON must have a null degree cap".into() });
        }
        Polynomial::from_terms(json.num_vars, decode_terms(json)?)
    }
}

impl<C: Coefficient> Series<C> {
    pub fn to_json(&self) -> PolynomialJson {
        encode(self.num_vars(), Some(self.cap()), self.terms())
    }

    pub fn from_json(json: &PolynomialJson) -> Result<Self> {
        let cap = json
            .max_total_degree
            .ok_or_else(|| Error::Parse { position: 0, message: "series JSON needs max_total_degree".into() })?;
        Series::from_terms(json.num_vars, cap, decode_terms(json)?)
    }
}

/// Parses the text format. `first_index` is the subscript of the first
/// variable (1 for `z1..zn`, 0 for inputs written with `z0..z{n-1}`).
pub fn parse_polynomial<C: Coefficient>(text: &str, num_vars: usize, first_index: usize) -> Result<Polynomial<C>> {
    Parser { src: text.as_bytes(), pos: 0, num_vars, first_index }.polynomial()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    num_vars: usize,
    first_index: usize,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn polynomial<C: Coefficient>(&mut self) -> Result<Polynomial<C>> {
        let mut terms = Vec::new();
        let mut negative = false;
        if self.peek() == Some(b'-') {
            negative = true;
            self.pos += 1;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        loop {
            let (e, c) = self.term::<C>()?;
            terms.push((e, if negative { -c } else { c }));
            match self.peek() {
                None => break,
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(other) => return self.err(format!("unexpected {:?}", other as char)),
            }
            self.pos += 1;
        }
        Polynomial::from_terms(self.num_vars, terms)
    }

    fn term<C: Coefficient>(&mut self) -> Result<(ExponentVector, C)> {
        let mut e = ExponentVector::zeros(self.num_vars);
        let mut coeff = C::one();
        let mut first = true;
        loop {
            match self.peek() {
                Some(b'0'..=b'9') => {
                    let at = self.pos;
                    let text = self.digits();
                    let value = text
                        .parse::<C>()
                        .map_err(|_| Error::Parse { position: at, message: format!("bad coefficient {text:?}") })?;
                    coeff = coeff * value;
                }
                Some(b'z') => {
                    self.pos += 1;
                    let at = self.pos;
                    let index: usize = match self.digits().parse() {
                        Ok(i) => i,
                        Err(_) => return Err(Error::Parse { position: at, message: "missing variable index".into() }),
                    };
                    if index < self.first_index || index - self.first_index >= self.num_vars {
                        return Err(Error::Parse { position: at, message: format!("variable z{index} out of range") });
                    }
                    let mut power = 1;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        let at = self.pos;
                        power = self
                            .digits()
                            .parse()
                            .map_err(|_| Error::Parse { position: at, message: "missing exponent".into() })?;
                    }
                    e.bump(index - self.first_index, power);
                }
                _ if first => return self.err("expected a term"),
                _ => return self.err("expected a factor after '*'"),
            }
            first = false;
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((e, coeff));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type P = Polynomial<BigInt>;

    #[test]
    fn prints_canonically() {
        let p: P = parse_polynomial("z2^2 - z1*z2*z3*z4 + 1", 4, 1).unwrap();
        assert_eq!(p.to_string(), "1 + z2^2 - z1*z2*z3*z4");
        let q: P = parse_polynomial("-3*z1 + 2", 2, 1).unwrap();
        assert_eq!(q.to_string(), "2 - 3*z1");
        assert_eq!((&q - &q).to_string(), "0");
        let r: P = parse_polynomial("-z1^2", 1, 1).unwrap();
        assert_eq!(r.to_string(), "-z1^2");
    }

    #[test]
    fn zero_based_input() {
        let p: P = parse_polynomial("1 - z0*z1*z2*z3", 4, 0).unwrap();
        assert_eq!(p.to_string(), "1 - z1*z2*z3*z4");
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert!(matches!(parse_polynomial::<BigInt>("1 + z9", 3, 1), Err(Error::Parse { position: 5, .. })));
        assert!(matches!(parse_polynomial::<BigInt>("1 + ", 3, 1), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial::<BigInt>("z1 ** z2", 3, 1), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial::<BigInt>("z1 z2", 3, 1), Err(Error::Parse { .. })));
    }

    #[test]
    fn big_coefficients_survive_json() {
        let huge: BigInt = "123456789012345678901234567890".parse().unwrap();
        let p = P::monomial(ExponentVector::new(vec![1, 0]), huge.clone());
        let json = serde_json::to_string(&p.to_json()).unwrap();
        assert_eq!(
            json,
            r#"{"num_vars":2,"max_total_degree":null,"terms":[{"e":[1,0],"c":"123456789012345678901234567890"}]}"#
        );
        let back = P::from_json(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back.coefficient(&ExponentVector::new(vec![1, 0])), huge);
    }

    #[test]
    fn series_json_requires_cap() {
        let s = Series::<BigInt>::one(2, 3);
        let json = s.to_json();
        assert_eq!(json.max_total_degree, Some(3));
        assert_eq!(Series::<BigInt>::from_json(&json).unwrap(), s);
        assert!(P::from_json(&json).is_err());
        assert!(Series::<BigInt>::from_json(&P::one(2).to_json()).is_err());
    }

    proptest! {
        #[test]
        fn text_and_json_roundtrip(ts in prop::collection::vec((prop::collection::vec(0u32..4, 3), -50i64..50), 0..8)) {
            let p = P::from_terms(3, ts.into_iter().map(|(e, c)| (ExponentVector::new(e), BigInt::from(c)))).unwrap();
            let text = p.to_string();
            prop_assert_eq!(parse_polynomial::<BigInt>(&text, 3, 1).unwrap(), p.clone());
            let json = serde_json::to_string(&p.to_json()).unwrap();
            prop_assert_eq!(P::from_json(&serde_json::from_str(&json).unwrap()).unwrap(), p);
        }
    }
}
