//! Platform fixture documents.
//!
//! A fixture is a TOML table:
//!
//! ```toml
//! name = "x2-x-1"
//! polynomial = [-1, -1, 1]      # constant term first, leading 1 included
//! units = [[-1, 0], [0, 1]]     # power-basis coordinates; "p/q" strings allowed
//! torsion_order = 2
//! signature = [2, 0]            # optional
//! expected_hirsch_length = 3    # optional
//! basis = [[1, 0], [0, 1]]      # optional, defaults to the power basis
//! ```

use std::path::{Path, PathBuf};
use std::str::FromStr;

use cke_core::field::{FieldError, MonicIntPolynomial};
use cke_core::linalg::{BigRational, QVector};
use cke_core::platform::{PlatformData, PlatformError, PlatformSpec};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Environment variable naming a directory searched before the built-in fixtures.
pub const FIXTURE_DIR_ENV: &str = "CKE_FIXTURE_DIR";

/// `(name, document)` for every shipped fixture.
pub const BUILTIN_FIXTURES: &[(&str, &str)] = &[
    ("x2-x-1", include_str!("../fixtures/x2-x-1.toml")),
    ("x5-x3-1", include_str!("../fixtures/x5-x3-1.toml")),
    ("x7-x3-1", include_str!("../fixtures/x7-x3-1.toml")),
    ("x9-7x3-1", include_str!("../fixtures/x9-7x3-1.toml")),
    ("x11-x3-1", include_str!("../fixtures/x11-x3-1.toml")),
    ("x15-x-2", include_str!("../fixtures/x15-x-2.toml")),
    ("x20-x-1", include_str!("../fixtures/x20-x-1.toml")),
];

/// The fixtures small enough for routine benchmarking.
pub const SMALL_FIXTURES: &[&str] = &["x2-x-1", "x5-x3-1", "x7-x3-1", "x9-7x3-1", "x11-x3-1"];

const ALIASES: &[(&str, &str)] = &[("golden", "x2-x-1")];

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("fixture `{0}` not found (no such file, built-in name or alias)")]
    NotFound(String),
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed fixture: {0}")]
    Syntax(#[from] toml::de::Error),
    #[error("bad rational `{0}`")]
    Rational(String),
    #[error("polynomial must be monic with degree at least 2, got {0:?}")]
    NotMonic(Vec<i64>),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Platform(#[from] PlatformError),
}

/// An integer or a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalRepr {
    Int(i64),
    Text(String),
}

impl RationalRepr {
    pub fn to_rational(&self) -> Result<BigRational, FixtureError> {
        match self {
            RationalRepr::Int(v) => Ok(BigRational::from_integer(BigInt::from(*v))),
            RationalRepr::Text(s) => {
                BigRational::from_str(s.trim()).map_err(|_| FixtureError::Rational(s.clone()))
            }
        }
    }

    pub fn from_rational(q: &BigRational) -> Self {
        if q.is_integer() {
            if let Ok(v) = i64::try_from(q.numer()) {
                return RationalRepr::Int(v);
            }
        }
        RationalRepr::Text(q.to_string())
    }
}

pub fn vector_from_repr(v: &[RationalRepr]) -> Result<QVector, FixtureError> {
    Ok(QVector::new(
        v.iter()
            .map(RationalRepr::to_rational)
            .collect::<Result<_, _>>()?,
    ))
}

pub fn vector_to_repr(v: &QVector) -> Vec<RationalRepr> {
    v.iter().map(RationalRepr::from_rational).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureDoc {
    pub name: String,
    pub polynomial: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<RationalRepr>>>,
    pub units: Vec<Vec<RationalRepr>>,
    pub torsion_order: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<(u32, u32)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_hirsch_length: Option<usize>,
}

impl FixtureDoc {
    pub fn into_data(self) -> Result<PlatformData, FixtureError> {
        let (lead, lower) = self
            .polynomial
            .split_last()
            .ok_or_else(|| FixtureError::NotMonic(self.polynomial.clone()))?;
        if *lead != 1 || lower.len() < 2 {
            return Err(FixtureError::NotMonic(self.polynomial.clone()));
        }
        let polynomial = MonicIntPolynomial::from_ints(lower)?;
        let basis = match &self.basis {
            Some(rows) => Some(
                rows.iter()
                    .map(|r| vector_from_repr(r))
                    .collect::<Result<_, _>>()?,
            ),
            None => None,
        };
        let units = self
            .units
            .iter()
            .map(|r| vector_from_repr(r))
            .collect::<Result<_, _>>()?;
        Ok(PlatformData {
            name: self.name,
            polynomial,
            basis,
            units,
            torsion_order: self.torsion_order,
            signature: self.signature,
            expected_hirsch_length: self.expected_hirsch_length,
        })
    }
}

/// Parses and validates one fixture document.
pub fn parse_platform(text: &str) -> Result<PlatformSpec, FixtureError> {
    let doc: FixtureDoc = toml::from_str(text)?;
    Ok(PlatformSpec::new(doc.into_data()?)?)
}

fn canonical_name(name: &str) -> &str {
    ALIASES
        .iter()
        .find(|(alias, _)| *alias == name)
        .map_or(name, |(_, target)| target)
}

fn read(path: &Path) -> Result<String, FixtureError> {
    std::fs::read_to_string(path).map_err(|source| FixtureError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Resolves `spec` as, in order: an existing file path, `<name>.toml` in
/// `$CKE_FIXTURE_DIR`, a built-in fixture name or alias.
pub fn fixture_text(spec: &str) -> Result<String, FixtureError> {
    let path = Path::new(spec);
    if path.is_file() {
        return read(path);
    }
    let name = canonical_name(spec);
    if let Some(dir) = std::env::var_os(FIXTURE_DIR_ENV) {
        let candidate = Path::new(&dir).join(format!("{name}.toml"));
        if candidate.is_file() {
            return read(&candidate);
        }
    }
    BUILTIN_FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| (*text).to_owned())
        .ok_or_else(|| FixtureError::NotFound(spec.to_owned()))
}

pub fn load_platform(spec: &str) -> Result<PlatformSpec, FixtureError> {
    parse_platform(&fixture_text(spec)?)
}
