//! Run configuration: which root datum, how far to truncate, which curve model.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use nilkoszul::curve_factorization::CurveModel;
use nilkoszul::{CartanMatrix, RootSystem};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Kostant,
    H2,
    Cobracket,
    BarKoszul,
    CharacterInversion,
    Hilbert,
    Tor,
    Gl2,
    Structural,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Kostant,
        Suite::H2,
        Suite::Cobracket,
        Suite::BarKoszul,
        Suite::CharacterInversion,
        Suite::Hilbert,
        Suite::Tor,
        Suite::Gl2,
        Suite::Structural,
    ];

    pub fn parse(s: &str) -> Result<Suite, ConfigError> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| ConfigError::new("suites", format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    pub field: &'static str,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: &'static str, message: impl Into<String>) -> Self {
        ConfigError { field, message: message.into() }
    }
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invalid config field `{}`: {}", self.field, self.message)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// Preset name such as `A2` or `G2`.
    #[serde(rename = "type")]
    pub root_type: Option<String>,
    pub cartan: Option<Vec<Vec<i64>>>,
    pub bound: Option<u32>,
    pub genus: Option<u32>,
    pub h1: Option<u64>,
    /// Highest weights in fundamental-weight coordinates.
    pub eta: Vec<Vec<i64>>,
    /// `None` runs every suite.
    pub suites: Option<BTreeSet<Suite>>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub fn from_json_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::new("config", format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| ConfigError::new("config", e.to_string()))
    }

    /// Fields set in `other` take precedence.
    pub fn merged(mut self, other: RunConfig) -> RunConfig {
        if other.root_type.is_some() || other.cartan.is_some() {
            self.root_type = other.root_type;
            self.cartan = other.cartan;
        }
        self.bound = other.bound.or(self.bound);
        if other.genus.is_some() || other.h1.is_some() {
            self.genus = other.genus;
            self.h1 = other.h1;
        }
        if !other.eta.is_empty() {
            self.eta = other.eta;
        }
        self.suites = other.suites.or(self.suites);
        self.out = other.out.or(self.out);
        self.jobs = other.jobs.or(self.jobs);
        self
    }

    pub fn root_system(&self) -> Result<RootSystem, ConfigError> {
        let cartan = match (&self.root_type, &self.cartan) {
            (Some(t), None) => CartanMatrix::preset(t).map_err(|e| ConfigError::new("type", e.to_string()))?,
            (None, Some(m)) => CartanMatrix::new(m.clone()).map_err(|e| ConfigError::new("cartan", e.to_string()))?,
            (Some(_), Some(_)) => return Err(ConfigError::new("type", "give either a preset or a Cartan matrix, not both")),
            (None, None) => return Err(ConfigError::new("type", "a preset or a Cartan matrix is required")),
        };
        RootSystem::new(cartan).map_err(|e| ConfigError::new("cartan", e.to_string()))
    }

    pub fn bound(&self) -> Result<u32, ConfigError> {
        self.bound.ok_or_else(|| ConfigError::new("bound", "a truncation bound is required"))
    }

    pub fn curve(&self) -> Result<CurveModel, ConfigError> {
        match (self.genus, self.h1) {
            (Some(g), None) => CurveModel::regular(g).map_err(|e| ConfigError::new("genus", e.to_string())),
            (None, Some(h)) => Ok(CurveModel::with_h1(h)),
            (Some(_), Some(_)) => Err(ConfigError::new("genus", "give either a genus or h1, not both")),
            (None, None) => Err(ConfigError::new("genus", "a genus or h1 is required")),
        }
    }

    pub fn etas(&self, rank: usize) -> Result<Vec<Vec<i64>>, ConfigError> {
        for e in &self.eta {
            if e.len() != rank {
                return Err(ConfigError::new("eta", format!("expected {rank} coordinates, got {}", e.len())));
            }
            if e.iter().any(|&c| c < 0) {
                return Err(ConfigError::new("eta", "highest weights must be dominant"));
            }
        }
        Ok(self.eta.clone())
    }

    pub fn suites(&self) -> BTreeSet<Suite> {
        self.suites.clone().unwrap_or_else(|| Suite::ALL.into_iter().collect())
    }

    pub fn jobs(&self) -> Result<usize, ConfigError> {
        match self.jobs {
            Some(0) => Err(ConfigError::new("jobs", "must be at least 1")),
            Some(j) => Ok(j),
            None => Ok(1),
        }
    }
}

/// Parses `1,0,2` into fundamental-weight coordinates.
pub fn parse_coords(s: &str) -> Result<Vec<i64>, ConfigError> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| ConfigError::new("eta", format!("`{s}`: {e}"))))
        .collect()
}
