//! Datum files and run configuration.
//!
//! A datum file is TOML:
//!
//! ```toml
//! name = "even"
//! matrix = [[2, -1], [-1, 2]]
//!
//! [[vertex]]
//! name = "i"
//! parity = 0
//! r = 1
//!
//! [[vertex]]
//! name = "j"
//! parity = 0
//! r = 1
//!
//! # optional overrides of the default tables
//! [[q]]
//! i = "i"
//! j = "j"
//! terms = [[1, 0, 1], [0, 1, 1]]   # (a, b, t): t u^a v^b
//!
//! [[gamma]]
//! i = "i"
//! j = "j"
//! value = "1"
//! ```
//!
//! Unknown keys are rejected. A `[[q]]` entry sets `Q_ij` and the mirrored `Q_ji`.

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;
use thiserror::Error;

use qhsa_core::datum::{HeckeDatum, QTerm, Superdatum, Violation};
use qhsa_core::scalar::PiMode;
use qhsa_core::superpoly::{Reading, READING};

use crate::data;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed datum file: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("bad gamma value {0:?}")]
    BadGamma(String),
    #[error("datum {name}: {violation}")]
    Invalid { name: String, violation: Violation },
    #[error("no bundled datum named {0:?} (known: {known})", known = data::NAMES.join(", "))]
    UnknownBundled(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("{0} must be positive")]
    NotPositive(&'static str),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DatumFile {
    name: String,
    matrix: Vec<Vec<i64>>,
    vertex: Vec<VertexSpec>,
    #[serde(default)]
    q: Vec<QSpec>,
    #[serde(default)]
    gamma: Vec<GammaSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexSpec {
    name: String,
    parity: u8,
    r: i64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct QSpec {
    i: String,
    j: String,
    terms: Vec<(u32, u32, i64)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GammaSpec {
    i: String,
    j: String,
    value: String,
}

/// A named datum with its `Q` and `γ` tables. Not validated on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedDatum {
    pub name: String,
    pub hecke: HeckeDatum,
}

impl LoadedDatum {
    pub fn datum(&self) -> &Superdatum {
        &self.hecke.datum
    }
}

/// Parses a datum file; unlisted tables take their defaults.
pub fn parse_datum(text: &str) -> Result<LoadedDatum, ConfigError> {
    let file: DatumFile = toml::from_str(text)?;
    let names = file.vertex.iter().map(|v| v.name.clone()).collect();
    let parity = file.vertex.iter().map(|v| v.parity).collect();
    let r = file.vertex.iter().map(|v| v.r).collect();
    let datum = Superdatum::new(names, parity, r, file.matrix);
    if let Err(violation) = datum.validate() {
        // Default tables need a well-formed datum; report the axiom instead.
        return Err(ConfigError::Invalid { name: file.name, violation });
    }
    let mut hecke = HeckeDatum::with_defaults(datum);
    let index =
        |name: &str, d: &Superdatum| d.index_of(name).ok_or_else(|| ConfigError::UnknownVertex(name.to_string()));
    for q in &file.q {
        let (i, j) = (index(&q.i, &hecke.datum)?, index(&q.j, &hecke.datum)?);
        let terms = q.terms.iter().map(|&(a, b, t)| QTerm { a, b, t: BigInt::from(t) }).collect();
        hecke.qtable.set(i, j, terms);
    }
    for g in &file.gamma {
        let (i, j) = (index(&g.i, &hecke.datum)?, index(&g.j, &hecke.datum)?);
        let value = BigRational::from_str(g.value.trim()).map_err(|_| ConfigError::BadGamma(g.value.clone()))?;
        hecke.gamma.set(i, j, value);
    }
    Ok(LoadedDatum { name: file.name, hecke })
}

/// `bundled:NAME` or a file path.
pub fn load_datum(spec: &str) -> Result<LoadedDatum, ConfigError> {
    if let Some(name) = spec.strip_prefix("bundled:") {
        return data::bundled(name);
    }
    let path = Path::new(spec);
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })?;
    parse_datum(&text)
}

/// The fixed suite registry, in run order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    DatumValidate,
    CoveringGram,
    SerreRadical,
    BosonIdentities,
    RepVerify,
    QhsaDifferential,
    Onh,
    Pairing,
    SerreCat,
    Mackey,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::DatumValidate,
        Suite::CoveringGram,
        Suite::SerreRadical,
        Suite::BosonIdentities,
        Suite::RepVerify,
        Suite::QhsaDifferential,
        Suite::Onh,
        Suite::Pairing,
        Suite::SerreCat,
        Suite::Mackey,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::DatumValidate => "datum-validate",
            Suite::CoveringGram => "covering-gram",
            Suite::SerreRadical => "serre-radical",
            Suite::BosonIdentities => "boson-identities",
            Suite::RepVerify => "rep-verify",
            Suite::QhsaDifferential => "qhsa-differential",
            Suite::Onh => "onh",
            Suite::Pairing => "pairing",
            Suite::SerreCat => "serre-cat",
            Suite::Mackey => "mackey",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| ConfigError::UnknownSuite(s.to_string()))
    }
}

/// `generic`, `plus` or `minus`.
pub fn parse_pi(s: &str) -> Result<PiMode, String> {
    match s {
        "generic" => Ok(PiMode::Generic),
        "plus" => Ok(PiMode::Plus),
        "minus" => Ok(PiMode::Minus),
        _ => Err(format!("expected generic, plus or minus, got {s:?}")),
    }
}

pub fn pi_name(mode: PiMode) -> &'static str {
    match mode {
        PiMode::Generic => "generic",
        PiMode::Plus => "plus",
        PiMode::Minus => "minus",
    }
}

/// Everything one batch run needs.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub datums: Vec<LoadedDatum>,
    pub suites: BTreeSet<Suite>,
    /// Overrides every suite's height bound when set.
    pub max_height: Option<u32>,
    /// Overrides every suite's series order when set.
    pub order: Option<i64>,
    pub pi: PiMode,
    pub seed: u64,
    pub jobs: usize,
    pub out: Option<PathBuf>,
    /// Relation reading used by `rep-verify`; mutated only by test fixtures.
    pub reading: Reading,
}

impl RunConfig {
    /// All suites on the given data, π = −1, seed 0, one job.
    pub fn new(datums: Vec<LoadedDatum>) -> Self {
        RunConfig {
            datums,
            suites: Suite::ALL.into_iter().collect(),
            max_height: None,
            order: None,
            pi: PiMode::Minus,
            seed: 0,
            jobs: 1,
            out: None,
            reading: READING,
        }
    }

    pub fn with_suites(mut self, suites: &[Suite]) -> Self {
        self.suites = suites.iter().copied().collect();
        self
    }

    /// Bounds positive and every datum valid with its tables.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.max_height == Some(0) {
            return Err(ConfigError::NotPositive("max height"));
        }
        if matches!(self.order, Some(n) if n <= 0) {
            return Err(ConfigError::NotPositive("order"));
        }
        if self.jobs == 0 {
            return Err(ConfigError::NotPositive("jobs"));
        }
        for d in &self.datums {
            d.hecke.validate().map_err(|violation| ConfigError::Invalid { name: d.name.clone(), violation })?;
        }
        Ok(())
    }
}
