//! Python bindings: corpus loading, the credit/percentile/quartile
//! primitives, ranking comparison, and the synthetic-corpus generator.

// The #[pymethods]/#[pyfunction] expansions convert PyErr to PyErr.
#![allow(clippy::useless_conversion)]

use std::path::PathBuf;
use std::str::FromStr;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use fssrank::config::DatasetConfig;
use fssrank::credit::{credit_alphabetical, credit_positional, BylineKind};
use fssrank::indicators::{Indicator, Scoreboard};
use fssrank::model::{apply_filters, Dataset, Scope};
use fssrank::normalize::{build_baselines, Baselines};
use fssrank::ranking::{compare, rank, ComparisonReport, RankingRow};
use fssrank::report::cmd_synth;
use fssrank::synth::SynthSpec;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_indicator(s: &str) -> PyResult<Indicator> {
    Indicator::from_str(s).map_err(value_error)
}

fn parse_scope(s: &str) -> PyResult<Scope> {
    Scope::from_str(s).map_err(value_error)
}

fn load_config(path: Option<PathBuf>) -> PyResult<DatasetConfig> {
    match path {
        Some(path) => DatasetConfig::from_toml_file(&path).map_err(value_error),
        None => Ok(DatasetConfig::default()),
    }
}

fn ranking_of(scores: &[(String, f64)]) -> PyResult<Vec<RankingRow>> {
    rank(scores).map_err(value_error)
}

type ComparisonRow = (String, f64, usize, f64, f64, usize, f64, i64, f64);

fn report_dict(py: Python<'_>, report: &ComparisonReport) -> PyResult<PyObject> {
    let s = &report.summary;
    let dict = PyDict::new_bound(py);
    dict.set_item("population", s.population)?;
    dict.set_item("pct_shifting", s.pct_shifting)?;
    dict.set_item("avg_shift_positions", s.avg_shift_positions)?;
    dict.set_item("avg_shift_percentiles", s.avg_shift_percentiles)?;
    dict.set_item("median_shift_positions", s.median_shift_positions)?;
    dict.set_item("median_shift_percentiles", s.median_shift_percentiles)?;
    dict.set_item("max_shift_positions", s.max_shift_positions)?;
    dict.set_item("max_shift_percentiles", s.max_shift_percentiles)?;
    dict.set_item("spearman_rho", s.spearman_rho)?;
    let rows: Vec<ComparisonRow> = report
        .rows
        .iter()
        .map(|r| {
            (
                r.entity.clone(),
                r.value_a,
                r.rank_a,
                r.pct_a,
                r.value_b,
                r.rank_b,
                r.pct_b,
                r.rank_shift,
                r.pct_shift,
            )
        })
        .collect();
    dict.set_item("rows", rows)?;
    Ok(dict.into())
}

/// A validated, filtered corpus ready for scoring.
#[pyclass]
struct Corpus {
    dataset: Dataset,
    config: DatasetConfig,
    baselines: Baselines,
}

impl Corpus {
    fn board(&self) -> PyResult<Scoreboard<'_>> {
        Scoreboard::new(&self.dataset, &self.config, &self.baselines).map_err(value_error)
    }
}

#[pymethods]
impl Corpus {
    /// Load a corpus directory (the six CSV files). Applies the tenure
    /// and document-type filters; takes ingested baselines when
    /// baselines.csv is present and builds them from the corpus
    /// otherwise.
    #[staticmethod]
    #[pyo3(signature = (path, config=None))]
    fn load(path: PathBuf, config: Option<PathBuf>) -> PyResult<Corpus> {
        let config = load_config(config)?;
        let raw = fssrank::csv_io::load_dataset(&path, &config).map_err(value_error)?;
        let (dataset, _) = apply_filters(&raw, &config);
        let baselines = match &raw.baselines {
            Some(b) => b.clone(),
            None => build_baselines(&raw.publications),
        };
        Ok(Corpus {
            dataset,
            config,
            baselines,
        })
    }

    #[getter]
    fn professor_count(&self) -> usize {
        self.dataset.professors.len()
    }

    #[getter]
    fn publication_count(&self) -> usize {
        self.dataset.publications.len()
    }

    #[getter]
    fn authorship_count(&self) -> usize {
        self.dataset.authorships.len()
    }

    /// (professor_id, score) pairs; professors without publications are
    /// omitted for mncs and score 0 for fss.
    #[pyo3(signature = (indicator="fss"))]
    fn professor_scores(&self, indicator: &str) -> PyResult<Vec<(String, f64)>> {
        let family = parse_indicator(indicator)?;
        let board = self.board()?;
        let rows = board.all_scores(family, &[]).map_err(value_error)?;
        Ok(rows.into_iter().map(|r| (r.entity_id, r.value)).collect())
    }

    /// (entity, staff, individual-average score, black-box score) for
    /// every eligible entity at the scope.
    #[pyo3(signature = (indicator="fss", scope="sds"))]
    fn entity_scores(
        &self,
        indicator: &str,
        scope: &str,
    ) -> PyResult<Vec<(String, usize, f64, f64)>> {
        let family = parse_indicator(indicator)?;
        let scope = parse_scope(scope)?;
        let board = self.board()?;
        let pairs = board.scores_for_scope(family, scope).map_err(value_error)?;
        Ok(pairs
            .into_iter()
            .map(|p| (p.entity.label(), p.staff, p.individual, p.black_box))
            .collect())
    }

    /// Rank the two aggregation methods at a scope and summarize their
    /// divergence; same shape as `compare_rankings`.
    #[pyo3(signature = (indicator="fss", scope="sds"))]
    fn compare_methods(&self, py: Python<'_>, indicator: &str, scope: &str) -> PyResult<PyObject> {
        let family = parse_indicator(indicator)?;
        let scope = parse_scope(scope)?;
        let board = self.board()?;
        let pairs = board.scores_for_scope(family, scope).map_err(value_error)?;
        let scores_a: Vec<(String, f64)> = pairs
            .iter()
            .map(|p| (p.entity.label(), p.individual))
            .collect();
        let scores_b: Vec<(String, f64)> = pairs
            .iter()
            .map(|p| (p.entity.label(), p.black_box))
            .collect();
        let report =
            compare(&ranking_of(&scores_a)?, &ranking_of(&scores_b)?).map_err(value_error)?;
        report_dict(py, &report)
    }
}

/// Author credit shares for a byline of `total_authors`.
/// `convention` is "alphabetical" (uniform 1/n) or "position-weighted";
/// `intramural` selects the weight set for the positional convention.
#[pyfunction]
#[pyo3(signature = (total_authors, convention="position-weighted", intramural=false))]
fn credit_weights(total_authors: u32, convention: &str, intramural: bool) -> PyResult<Vec<f64>> {
    if total_authors == 0 {
        return Err(value_error("a byline has at least one author"));
    }
    let vector = match convention {
        "alphabetical" => credit_alphabetical(total_authors),
        "position-weighted" => {
            let kind = if intramural { BylineKind::Intramural } else { BylineKind::Extramural };
            credit_positional(total_authors, kind, &fssrank::config::CreditWeights::default())
        }
        other => {
            return Err(value_error(format!(
                "unknown counting convention '{other}' (expected 'alphabetical' or 'position-weighted')"
            )))
        }
    };
    Ok(vector.weights().to_vec())
}

/// "intramural" when the first and last byline slots resolve to the same
/// university (or the byline is a single author), else "extramural".
/// Unknown affiliations are passed as None.
#[pyfunction]
fn classify_byline(affiliations: Vec<Option<String>>) -> PyResult<&'static str> {
    if affiliations.is_empty() {
        return Err(value_error("a byline has at least one author"));
    }
    let slots: Vec<Option<&str>> = affiliations.iter().map(|a| a.as_deref()).collect();
    Ok(match fssrank::credit::classify_byline(&slots) {
        BylineKind::Intramural => "intramural",
        BylineKind::Extramural => "extramural",
    })
}

/// 100·(N − rank)/(N − 1): top rank 100, bottom rank 0.
#[pyfunction]
fn percentile(rank: usize, population: usize) -> f64 {
    fssrank::ranking::percentile(rank, population)
}

/// ceil(4·rank/N): 1 for the top quarter through 4 for the bottom.
#[pyfunction]
fn quartile(rank: usize, population: usize) -> u8 {
    fssrank::ranking::quartile(rank, population)
}

/// Competition-rank (entity, score) pairs, descending score; returns
/// (entity, score, rank, percentile) sorted by rank.
#[pyfunction]
fn rank_scores(scores: Vec<(String, f64)>) -> PyResult<Vec<(String, f64, usize, f64)>> {
    Ok(ranking_of(&scores)?
        .into_iter()
        .map(|r| (r.entity, r.value, r.rank, r.percentile))
        .collect())
}

/// Spearman rank correlation between two scorings of the same entities
/// (ties get fractional ranks).
#[pyfunction]
fn spearman_rho(scores_a: Vec<(String, f64)>, scores_b: Vec<(String, f64)>) -> PyResult<f64> {
    fssrank::ranking::spearman(&ranking_of(&scores_a)?, &ranking_of(&scores_b)?)
        .map_err(value_error)
}

/// Full two-ranking comparison: summary statistics plus one
/// (entity, value_A, rank_A, pct_A, value_B, rank_B, pct_B,
/// rank_shift, pct_shift) row per entity.
#[pyfunction]
fn compare_rankings(
    py: Python<'_>,
    scores_a: Vec<(String, f64)>,
    scores_b: Vec<(String, f64)>,
) -> PyResult<PyObject> {
    let report = compare(&ranking_of(&scores_a)?, &ranking_of(&scores_b)?).map_err(value_error)?;
    report_dict(py, &report)
}

/// Write a seeded synthetic corpus (and optionally the independent
/// oracle's ground_truth.csv) into `out_dir`; returns the run log.
#[pyfunction]
#[pyo3(signature = (out_dir, seed=0, universities=6, udas=2, sds_per_uda=3,
                    professors_min=4, professors_max=10, pubs_per_professor=3.0,
                    ground_truth=false, config=None))]
#[allow(clippy::too_many_arguments)]
fn synth_corpus(
    out_dir: PathBuf,
    seed: u64,
    universities: usize,
    udas: usize,
    sds_per_uda: usize,
    professors_min: usize,
    professors_max: usize,
    pubs_per_professor: f64,
    ground_truth: bool,
    config: Option<PathBuf>,
) -> PyResult<String> {
    let config = load_config(config)?;
    let spec = SynthSpec {
        universities,
        udas,
        sds_per_uda,
        professors_min,
        professors_max,
        pubs_per_professor,
        seed,
        ..SynthSpec::default()
    };
    cmd_synth(&spec, &config, &out_dir, ground_truth).map_err(value_error)
}

/// Load and filter a corpus directory, returning the validation log.
#[pyfunction]
#[pyo3(signature = (path, config=None))]
fn validate_dir(path: PathBuf, config: Option<PathBuf>) -> PyResult<String> {
    let config = load_config(config)?;
    fssrank::report::cmd_validate(&path, &config).map_err(value_error)
}

#[pymodule]
fn fssrank_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Corpus>()?;
    m.add_function(wrap_pyfunction!(credit_weights, m)?)?;
    m.add_function(wrap_pyfunction!(classify_byline, m)?)?;
    m.add_function(wrap_pyfunction!(percentile, m)?)?;
    m.add_function(wrap_pyfunction!(quartile, m)?)?;
    m.add_function(wrap_pyfunction!(rank_scores, m)?)?;
    m.add_function(wrap_pyfunction!(spearman_rho, m)?)?;
    m.add_function(wrap_pyfunction!(compare_rankings, m)?)?;
    m.add_function(wrap_pyfunction!(synth_corpus, m)?)?;
    m.add_function(wrap_pyfunction!(validate_dir, m)?)?;
    Ok(())
}
