//! JSON form and field files.
//!
//! A form is `{"n", "r", "terms": [{"idx", "exp", "num", "den"}]}` and a field
//! is `{"n", "components": [[{"exp", "num", "den"}], ...]}`, with rationals as
//! decimal strings. Terms are written in canonical order.

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use pfaff_core::polyforms::FormError;
use pfaff_core::{Monomial, Poly, PolyForm, PolyVectorField};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum SerialError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad rational {num}/{den}")]
    BadRational { num: String, den: String },
    #[error("field on P^{n} needs {expected} components, got {got}")]
    ComponentCount { n: usize, expected: usize, got: usize },
    #[error("monomial has {got} exponents, expected {expected}")]
    ExponentCount { expected: usize, got: usize },
    #[error(transparent)]
    Form(#[from] FormError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub idx: Vec<usize>,
    pub exp: Vec<u32>,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormJson {
    pub n: usize,
    pub r: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialJson {
    pub exp: Vec<u32>,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldJson {
    pub n: usize,
    pub components: Vec<Vec<MonomialJson>>,
}

fn parse_rational(num: &str, den: &str) -> Result<BigRational, SerialError> {
    let bad = || SerialError::BadRational {
        num: num.to_owned(),
        den: den.to_owned(),
    };
    let a: BigInt = num.trim().parse().map_err(|_| bad())?;
    let b: BigInt = den.trim().parse().map_err(|_| bad())?;
    if b.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(a, b))
}

impl FormJson {
    pub fn from_form(w: &PolyForm) -> Self {
        FormJson {
            n: w.n(),
            r: w.degree(),
            terms: w
                .terms()
                .map(|(idx, m, c)| TermJson {
                    idx: idx.clone(),
                    exp: m.exponents().to_vec(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }

    pub fn to_form(&self) -> Result<PolyForm, SerialError> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((t.idx.clone(), t.exp.clone(), parse_rational(&t.num, &t.den)?)))
            .collect::<Result<Vec<_>, SerialError>>()?;
        Ok(PolyForm::from_terms(self.n, self.r, terms)?)
    }
}

impl FieldJson {
    pub fn from_field(x: &PolyVectorField) -> Self {
        FieldJson {
            n: x.n(),
            components: x
                .components()
                .iter()
                .map(|p| {
                    p.terms()
                        .map(|(m, c)| MonomialJson {
                            exp: m.exponents().to_vec(),
                            num: c.numer().to_string(),
                            den: c.denom().to_string(),
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_field(&self) -> Result<PolyVectorField, SerialError> {
        let nv = self.n + 1;
        if self.components.len() != nv {
            return Err(SerialError::ComponentCount {
                n: self.n,
                expected: nv,
                got: self.components.len(),
            });
        }
        let mut comps = Vec::with_capacity(nv);
        for c in &self.components {
            let mut p = Poly::zero(nv);
            for t in c {
                if t.exp.len() != nv {
                    return Err(SerialError::ExponentCount {
                        expected: nv,
                        got: t.exp.len(),
                    });
                }
                p.add_term(Monomial::new(t.exp.clone()), parse_rational(&t.num, &t.den)?);
            }
            comps.push(p);
        }
        Ok(PolyVectorField::new(comps)?)
    }
}

fn read(path: &Path) -> Result<String, SerialError> {
    std::fs::read_to_string(path).map_err(|source| SerialError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// The object itself, or its `key` member when the file is a command report
/// such as the output of `pfaffcount example`.
fn unwrap_member(text: &str, key: &str) -> Result<serde_json::Value, SerialError> {
    let mut v: serde_json::Value = serde_json::from_str(text)?;
    if v.get("schema").is_some() {
        if let Some(inner) = v.get_mut(key) {
            return Ok(inner.take());
        }
    }
    Ok(v)
}

pub fn read_form(path: &Path) -> Result<PolyForm, SerialError> {
    serde_json::from_value::<FormJson>(unwrap_member(&read(path)?, "form")?)?.to_form()
}

pub fn read_field(path: &Path) -> Result<PolyVectorField, SerialError> {
    serde_json::from_value::<FieldJson>(unwrap_member(&read(path)?, "field")?)?.to_field()
}
