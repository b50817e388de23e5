use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Byline weighting percentages used by position-weighted credit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CreditWeights {
    /// First and last author share when the whole byline is from one university.
    pub intramural_endpoint: f64,
    /// Pool split among the remaining authors in the intramural case.
    pub intramural_pool: f64,
    /// First and last author share when the byline spans universities.
    pub extramural_endpoint: f64,
    /// Second and second-to-last author share in the extramural case.
    pub extramural_adjacent: f64,
    /// Pool split among the remaining authors in the extramural case.
    pub extramural_pool: f64,
}

impl Default for CreditWeights {
    fn default() -> Self {
        CreditWeights {
            intramural_endpoint: 0.40,
            intramural_pool: 0.20,
            extramural_endpoint: 0.30,
            extramural_adjacent: 0.15,
            extramural_pool: 0.10,
        }
    }
}

impl CreditWeights {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("intramural_endpoint", self.intramural_endpoint),
            ("intramural_pool", self.intramural_pool),
            ("extramural_endpoint", self.extramural_endpoint),
            ("extramural_adjacent", self.extramural_adjacent),
            ("extramural_pool", self.extramural_pool),
        ];
        for (name, v) in fields {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "credit.{name} must be a non-negative number, got {v}"
                )));
            }
        }
        if 2.0 * self.intramural_endpoint + self.intramural_pool <= 0.0 {
            return Err(Error::InvalidConfig(
                "intramural credit weights sum to zero".into(),
            ));
        }
        if 2.0 * (self.extramural_endpoint + self.extramural_adjacent) + self.extramural_pool <= 0.0
        {
            return Err(Error::InvalidConfig(
                "extramural credit weights sum to zero".into(),
            ));
        }
        Ok(())
    }
}

/// Observation window, filter thresholds and credit weights for a run.
///
/// Loadable from a TOML file; every field falls back to its default when
/// absent, and the staff/tenure thresholds can additionally be overridden
/// from the command line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DatasetConfig {
    pub window_start: i32,
    pub window_end: i32,
    /// Professors on staff fewer years than this are dropped.
    pub min_tenure_years: u32,
    /// Document types excluded from scoring (matched case-insensitively).
    pub excluded_doc_types: Vec<String>,
    /// Minimum staff for a (university, SDS) pair to be ranked.
    pub min_staff_sds: usize,
    /// Minimum staff for a (university, UDA) pair to be ranked.
    pub min_staff_uda: usize,
    /// Minimum staff for a university to be ranked overall.
    pub min_staff_overall: usize,
    pub credit: CreditWeights,
}

impl Default for DatasetConfig {
    fn default() -> Self {
        DatasetConfig {
            window_start: 2008,
            window_end: 2012,
            min_tenure_years: 3,
            excluded_doc_types: vec![
                "editorial material".into(),
                "meeting abstract".into(),
                "reply to letter".into(),
            ],
            min_staff_sds: 2,
            min_staff_uda: 10,
            min_staff_overall: 30,
            credit: CreditWeights::default(),
        }
    }
}

impl DatasetConfig {
    pub fn from_toml_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let config: DatasetConfig =
            toml::from_str(&text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.window_end < self.window_start {
            return Err(Error::InvalidConfig(format!(
                "window_end {} precedes window_start {}",
                self.window_end, self.window_start
            )));
        }
        if self.min_tenure_years < 1 {
            return Err(Error::InvalidConfig("min_tenure_years must be >= 1".into()));
        }
        for (name, v) in [
            ("min_staff_sds", self.min_staff_sds),
            ("min_staff_uda", self.min_staff_uda),
            ("min_staff_overall", self.min_staff_overall),
        ] {
            if v < 1 {
                return Err(Error::InvalidConfig(format!("{name} must be >= 1")));
            }
        }
        self.credit.validate()
    }

    /// Number of calendar years covered by the observation window.
    pub fn window_years(&self) -> u32 {
        (self.window_end - self.window_start + 1) as u32
    }

    /// True when `doc_type` is on the exclusion list.
    pub fn is_excluded_doc_type(&self, doc_type: &str) -> bool {
        let needle = doc_type.trim().to_ascii_lowercase();
        self.excluded_doc_types
            .iter()
            .any(|d| d.trim().to_ascii_lowercase() == needle)
    }
}
