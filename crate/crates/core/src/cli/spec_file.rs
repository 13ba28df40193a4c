//! Plain-text input files.
//!
//! One `key = value` field per line, `#` starts a comment. Values are
//! integers, names, or bracketed lists of either:
//!
//! ```text
//! characteristic = 3
//! variables = [X, Y]
//! quotient = [[1, 1]]
//! map = [[3, 0], [0, 3]]        # columns: the exponents of φ(X), φ(Y)
//! sequence = [[1, 0], [0, 1]]
//! ```
//!
//! Square files name both rings and all three maps with dotted keys:
//! `source.variables`, `source.map`, `target.variables`, `target.quotient`,
//! `target.map`, `xi`, plus a shared `characteristic`.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::endo::{MonomialMap, TransferSquare};
use crate::error::{Error, Result};
use crate::monomial::{is_prime, ExponentVector, MonomialIdeal, RingSpec};

const SPEC_KEYS: &[&str] = &[
    "characteristic",
    "variables",
    "quotient",
    "map",
    "ideal",
    "sequence",
];
const SQUARE_KEYS: &[&str] = &[
    "characteristic",
    "source.variables",
    "source.quotient",
    "source.map",
    "target.variables",
    "target.quotient",
    "target.map",
    "xi",
];

#[derive(Clone, Debug, PartialEq, Eq)]
enum Value {
    Int(BigUint),
    Name(String),
    List(Vec<Value>),
}

/// A ring, an optional endomorphism, and the optional ideal and sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecFile {
    pub variables: Vec<String>,
    pub ring: RingSpec,
    pub map: Option<MonomialMap>,
    pub ideal: Option<MonomialIdeal>,
    pub sequence: Option<Vec<ExponentVector>>,
}

impl SpecFile {
    pub fn map(&self) -> Result<&MonomialMap> {
        self.map.as_ref().ok_or(Error::MissingField("map"))
    }
}

/// Fields by key, each with its 1-based line.
struct Fields {
    entries: BTreeMap<String, (usize, Value)>,
}

impl Fields {
    fn parse(text: &str, allowed: &[&str]) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| Error::Parse {
                line,
                message: format!("expected `key = value`, found `{content}`"),
            })?;
            let key = key.trim();
            if !allowed.contains(&key) {
                return Err(Error::Parse {
                    line,
                    message: format!("unknown field `{key}`"),
                });
            }
            let value = parse_value(value.trim()).map_err(|message| Error::Parse {
                line,
                message: format!("field `{key}`: {message}"),
            })?;
            if let Some((first, _)) = entries.insert(key.to_string(), (line, value)) {
                return Err(Error::Parse {
                    line,
                    message: format!("field `{key}` repeats the one on line {first}"),
                });
            }
        }
        Ok(Fields { entries })
    }

    fn get(&self, key: &'static str) -> Option<(usize, &Value)> {
        self.entries.get(key).map(|(l, v)| (*l, v))
    }

    fn require(&self, key: &'static str) -> Result<(usize, &Value)> {
        self.get(key).ok_or(Error::MissingField(key))
    }

    fn characteristic(&self) -> Result<u64> {
        let (line, v) = self.require("characteristic")?;
        let err = |message: &str| Error::Parse {
            line,
            message: format!("field `characteristic`: {message}"),
        };
        let Value::Int(p) = v else {
            return Err(err("expected an integer"));
        };
        let p = p
            .to_u64()
            .ok_or_else(|| err("value does not fit in 64 bits"))?;
        if p != 0 && !is_prime(p) {
            return Err(err(&format!("{p} is neither 0 nor a prime")));
        }
        Ok(p)
    }

    fn variables(&self, key: &'static str) -> Result<Vec<String>> {
        let (line, v) = self.require(key)?;
        let err = |message: String| Error::Parse {
            line,
            message: format!("field `{key}`: {message}"),
        };
        let Value::List(items) = v else {
            return Err(err("expected a bracketed list of names".into()));
        };
        let mut seen = HashSet::new();
        let mut names = Vec::with_capacity(items.len());
        for item in items {
            let Value::Name(n) = item else {
                return Err(err("expected a bracketed list of names".into()));
            };
            if !seen.insert(n.clone()) {
                return Err(err(format!("variable `{n}` is repeated")));
            }
            names.push(n.clone());
        }
        if names.is_empty() {
            return Err(err("at least one variable is required".into()));
        }
        Ok(names)
    }

    fn vectors(
        &self,
        key: &'static str,
        dim: usize,
    ) -> Result<Option<(usize, Vec<ExponentVector>)>> {
        let Some((line, v)) = self.get(key) else {
            return Ok(None);
        };
        let err = |message: String| Error::Parse {
            line,
            message: format!("field `{key}`: {message}"),
        };
        let Value::List(items) = v else {
            return Err(err("expected a bracketed list of exponent vectors".into()));
        };
        let mut out = Vec::with_capacity(items.len());
        for (k, item) in items.iter().enumerate() {
            let Value::List(entries) = item else {
                return Err(err(format!(
                    "entry {} is not a bracketed exponent vector",
                    k + 1
                )));
            };
            if entries.len() != dim {
                return Err(err(format!(
                    "entry {} has {} exponents, expected {dim}",
                    k + 1,
                    entries.len()
                )));
            }
            let exps = entries
                .iter()
                .map(|e| match e {
                    Value::Int(a) => Ok(a.clone()),
                    _ => Err(err(format!("entry {} has a non-integer exponent", k + 1))),
                })
                .collect::<Result<Vec<_>>>()?;
            out.push(ExponentVector::new(exps));
        }
        Ok(Some((line, out)))
    }

    fn ring(
        &self,
        variables_key: &'static str,
        quotient_key: &'static str,
    ) -> Result<(Vec<String>, RingSpec)> {
        let p = self.characteristic()?;
        let names = self.variables(variables_key)?;
        let d = names.len();
        let (line, gens) = match self.vectors(quotient_key, d)? {
            Some((line, g)) => (line, g),
            None => (self.require("characteristic")?.0, Vec::new()),
        };
        let anchored = |e: Error| Error::Parse {
            line,
            message: e.to_string(),
        };
        let quotient = MonomialIdeal::minimalize(d, gens).map_err(anchored)?;
        let ring = RingSpec::new(p, d, quotient).map_err(anchored)?;
        Ok((names, ring))
    }

    fn map(&self, key: &'static str, ring: &RingSpec) -> Result<Option<MonomialMap>> {
        let Some((line, cols)) = self.vectors(key, ring.dim_ambient())? else {
            return Ok(None);
        };
        MonomialMap::new(ring.clone(), cols)
            .map(Some)
            .map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })
    }
}

pub fn parse_spec(text: &str) -> Result<SpecFile> {
    let fields = Fields::parse(text, SPEC_KEYS)?;
    let (variables, ring) = fields.ring("variables", "quotient")?;
    let d = ring.dim_ambient();
    let map = fields.map("map", &ring)?;
    let ideal = match fields.vectors("ideal", d)? {
        Some((line, gens)) => {
            if gens.iter().any(ExponentVector::is_zero) {
                return Err(Error::Parse {
                    line,
                    message: "field `ideal`: the unit ideal has no local entropy".into(),
                });
            }
            Some(MonomialIdeal::minimalize(d, gens)?)
        }
        None => None,
    };
    let sequence = fields.vectors("sequence", d)?.map(|(_, s)| s);
    Ok(SpecFile {
        variables,
        ring,
        map,
        ideal,
        sequence,
    })
}

pub fn parse_square(text: &str) -> Result<TransferSquare> {
    let fields = Fields::parse(text, SQUARE_KEYS)?;
    let (_, source) = fields.ring("source.variables", "source.quotient")?;
    let (_, target) = fields.ring("target.variables", "target.quotient")?;
    let psi = fields
        .map("source.map", &source)?
        .ok_or(Error::MissingField("source.map"))?;
    let phi = fields
        .map("target.map", &target)?
        .ok_or(Error::MissingField("target.map"))?;
    let (line, xi) = fields
        .vectors("xi", target.dim_ambient())?
        .ok_or(Error::MissingField("xi"))?;
    if xi.len() != source.dim_ambient() {
        return Err(Error::Parse {
            line,
            message: format!(
                "field `xi`: {} images given for {} source variables",
                xi.len(),
                source.dim_ambient()
            ),
        });
    }
    TransferSquare::new(xi, psi, phi)
}

fn parse_value(s: &str) -> std::result::Result<Value, String> {
    let mut p = ValueParser {
        chars: s.chars().collect(),
        pos: 0,
    };
    let v = p.value()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(format!(
            "unexpected `{}`",
            p.chars[p.pos..].iter().collect::<String>()
        ));
    }
    Ok(v)
}

struct ValueParser {
    chars: Vec<char>,
    pos: usize,
}

impl ValueParser {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn value(&mut self) -> std::result::Result<Value, String> {
        self.skip_ws();
        match self.chars.get(self.pos) {
            None => Err("missing value".into()),
            Some('[') => {
                self.pos += 1;
                let mut items = Vec::new();
                self.skip_ws();
                if self.chars.get(self.pos) == Some(&']') {
                    self.pos += 1;
                    return Ok(Value::List(items));
                }
                loop {
                    items.push(self.value()?);
                    self.skip_ws();
                    match self.chars.get(self.pos) {
                        Some(',') => self.pos += 1,
                        Some(']') => {
                            self.pos += 1;
                            return Ok(Value::List(items));
                        }
                        Some(c) => return Err(format!("expected `,` or `]`, found `{c}`")),
                        None => return Err("unclosed `[`".into()),
                    }
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                Ok(Value::Int(digits.parse().expect("ascii digits")))
            }
            Some(c) if c.is_alphabetic() || *c == '_' => {
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .is_some_and(|c| c.is_alphanumeric() || *c == '_')
                {
                    self.pos += 1;
                }
                Ok(Value::Name(self.chars[start..self.pos].iter().collect()))
            }
            Some(c) => Err(format!("unexpected `{c}`")),
        }
    }
}
