//! Run orchestration: load → filter → score → rank → compare, with all
//! results written as UTF-8 CSV. Score and comparison files carry full
//! float precision; the human-readable log lines round the way the
//! tables are usually printed (scores 3 decimals, percentiles 1, ρ 3).

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::config::DatasetConfig;
use crate::csv_io::load_dataset;
use crate::error::{Error, Result};
use crate::indicators::{Indicator, IndicatorScore, Scoreboard};
use crate::model::{apply_filters, Dataset, Scope};
use crate::normalize::{build_baselines, Baselines};
use crate::ranking::{compare, rank, shift_histogram, ComparisonReport};
use crate::synth::{generate, ground_truth, SynthSpec};

/// Where a run finds its citation baselines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BaselineMode {
    /// baselines.csv when present, otherwise built from the corpus.
    #[default]
    Auto,
    /// baselines.csv, required.
    Ingest,
    /// Always built from the corpus publications.
    Build,
}

impl FromStr for BaselineMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ingest" => Ok(BaselineMode::Ingest),
            "build" => Ok(BaselineMode::Build),
            other => Err(Error::InvalidConfig(format!(
                "unknown baseline mode {other:?} (expected ingest or build)"
            ))),
        }
    }
}

/// One scoring or comparison run.
#[derive(Debug, Clone)]
pub struct RunSpec {
    pub data_dir: PathBuf,
    pub out_dir: PathBuf,
    pub config: DatasetConfig,
    pub indicator: Indicator,
    pub scopes: Vec<Scope>,
    pub baselines: BaselineMode,
}

impl RunSpec {
    pub fn validate(&self) -> Result<()> {
        if self.scopes.is_empty() {
            return Err(Error::InvalidConfig(
                "at least one scope is required".into(),
            ));
        }
        self.config.validate()
    }
}

pub fn format_score(value: f64) -> String {
    format!("{value:.3}")
}

pub fn format_percentile(value: f64) -> String {
    format!("{value:.1}")
}

pub fn format_rho(value: f64) -> String {
    format!("{value:.3}")
}

fn resolve_baselines(raw: &Dataset, mode: BaselineMode) -> Result<Baselines> {
    match mode {
        BaselineMode::Build => Ok(build_baselines(&raw.publications)),
        BaselineMode::Ingest => raw.baselines.clone().ok_or_else(|| {
            Error::InvalidConfig("baseline ingestion requested but baselines.csv is missing".into())
        }),
        BaselineMode::Auto => Ok(raw
            .baselines
            .clone()
            .unwrap_or_else(|| build_baselines(&raw.publications))),
    }
}

fn csv_writer(path: &Path) -> Result<csv::Writer<fs::File>> {
    let file = fs::File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(csv::Writer::from_writer(file))
}

fn csv_row(writer: &mut csv::Writer<fs::File>, path: &Path, fields: &[&str]) -> Result<()> {
    writer.write_record(fields).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e.into(),
    })
}

fn csv_finish(mut writer: csv::Writer<fs::File>, path: &Path) -> Result<()> {
    writer.flush().map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

const SCORE_HEADER: [&str; 6] = [
    "indicator",
    "scope",
    "university_id",
    "field_id",
    "entity_id",
    "value",
];

fn write_scores(path: &Path, records: &[&IndicatorScore]) -> Result<()> {
    let mut writer = csv_writer(path)?;
    csv_row(&mut writer, path, &SCORE_HEADER)?;
    for record in records {
        csv_row(
            &mut writer,
            path,
            &[
                record.indicator.as_str(),
                record.scope,
                &record.university_id,
                record.field_id.as_deref().unwrap_or(""),
                &record.entity_id,
                &record.value.to_string(),
            ],
        )?;
    }
    csv_finish(writer, path)
}

/// Check a dataset directory: load errors surface as `Err`, a clean load
/// reports zero errors plus what the configured filters would drop.
pub fn cmd_validate(data_dir: &Path, config: &DatasetConfig) -> Result<String> {
    let dataset = load_dataset(data_dir, config)?;
    let (_, impact) = apply_filters(&dataset, config);
    let mut log = String::new();
    let _ = writeln!(log, "0 errors");
    let _ = writeln!(
        log,
        "{} professors, {} publications, {} authorship rows",
        dataset.professors.len(),
        dataset.publications.len(),
        dataset.authorships.len()
    );
    let _ = writeln!(
        log,
        "{} professors excluded (tenure)",
        impact.professors_removed
    );
    let _ = writeln!(
        log,
        "{} publications excluded (document type)",
        impact.publications_removed
    );
    let _ = writeln!(
        log,
        "{} authorship rows removed with their publication",
        impact.authorships_removed
    );
    let _ = writeln!(
        log,
        "{} authorship rows unlinked from excluded professors",
        impact.authorships_unlinked
    );
    Ok(log)
}

/// Score the corpus and write one CSV per requested scope plus the
/// professor-level file. Returns the run log.
pub fn cmd_compute(spec: &RunSpec) -> Result<String> {
    spec.validate()?;
    let raw = load_dataset(&spec.data_dir, &spec.config)?;
    let (dataset, _) = apply_filters(&raw, &spec.config);
    let baselines = resolve_baselines(&raw, spec.baselines)?;
    let board = Scoreboard::new(&dataset, &spec.config, &baselines)?;
    let records = board.all_scores(spec.indicator, &spec.scopes)?;

    fs::create_dir_all(&spec.out_dir).map_err(|source| Error::Io {
        path: spec.out_dir.clone(),
        source,
    })?;

    let mut log = String::new();
    let professor_rows: Vec<&IndicatorScore> =
        records.iter().filter(|r| r.scope == "professor").collect();
    let path = spec.out_dir.join("scores_professor.csv");
    write_scores(&path, &professor_rows)?;
    let _ = writeln!(log, "{}: {} rows", path.display(), professor_rows.len());

    for &scope in &spec.scopes {
        let rows: Vec<&IndicatorScore> = records
            .iter()
            .filter(|r| r.scope == scope.as_str())
            .collect();
        let path = spec.out_dir.join(format!("scores_{}.csv", scope.as_str()));
        write_scores(&path, &rows)?;
        if rows.is_empty() {
            let _ = writeln!(
                log,
                "warning: no eligible entities at {} scope (staff threshold)",
                scope.as_str()
            );
        }
        let _ = writeln!(log, "{}: {} rows", path.display(), rows.len());
    }
    Ok(log)
}

fn write_comparison(out_dir: &Path, scope: Scope, report: &ComparisonReport) -> Result<()> {
    let path = out_dir.join(format!("comparison_{}.csv", scope.as_str()));
    let mut writer = csv_writer(&path)?;
    csv_row(
        &mut writer,
        &path,
        &[
            "entity",
            "value_A",
            "rank_A",
            "pct_A",
            "value_B",
            "rank_B",
            "pct_B",
            "rank_shift",
            "pct_shift",
        ],
    )?;
    for row in &report.rows {
        csv_row(
            &mut writer,
            &path,
            &[
                &row.entity,
                &row.value_a.to_string(),
                &row.rank_a.to_string(),
                &row.pct_a.to_string(),
                &row.value_b.to_string(),
                &row.rank_b.to_string(),
                &row.pct_b.to_string(),
                &row.rank_shift.to_string(),
                &row.pct_shift.to_string(),
            ],
        )?;
    }
    csv_finish(writer, &path)?;

    let path = out_dir.join(format!("slopegraph_{}.csv", scope.as_str()));
    let mut writer = csv_writer(&path)?;
    csv_row(&mut writer, &path, &["entity", "pct_A", "pct_B"])?;
    for row in &report.rows {
        csv_row(
            &mut writer,
            &path,
            &[&row.entity, &row.pct_a.to_string(), &row.pct_b.to_string()],
        )?;
    }
    csv_finish(writer, &path)?;

    let path = out_dir.join(format!("shift_histogram_{}.csv", scope.as_str()));
    let mut writer = csv_writer(&path)?;
    csv_row(&mut writer, &path, &["shift", "frequency"])?;
    for (shift, frequency) in shift_histogram(&report.rows) {
        csv_row(
            &mut writer,
            &path,
            &[&shift.to_string(), &frequency.to_string()],
        )?;
    }
    csv_finish(writer, &path)
}

/// Rank both aggregation methods of the indicator at each scope, compare
/// them, and write comparison, slopegraph, histogram and summary files.
/// Returns the run log with one display line per scope.
pub fn cmd_compare(spec: &RunSpec) -> Result<String> {
    spec.validate()?;
    let raw = load_dataset(&spec.data_dir, &spec.config)?;
    let (dataset, _) = apply_filters(&raw, &spec.config);
    let baselines = resolve_baselines(&raw, spec.baselines)?;
    let board = Scoreboard::new(&dataset, &spec.config, &baselines)?;

    fs::create_dir_all(&spec.out_dir).map_err(|source| Error::Io {
        path: spec.out_dir.clone(),
        source,
    })?;

    let summary_path = spec.out_dir.join("summary.csv");
    let mut summary = csv_writer(&summary_path)?;
    csv_row(
        &mut summary,
        &summary_path,
        &[
            "scope",
            "population",
            "pct_shifting",
            "avg_shift_positions",
            "avg_shift_percentiles",
            "median_shift_positions",
            "median_shift_percentiles",
            "max_shift_positions",
            "max_shift_percentiles",
            "spearman_rho",
            "pct_changing_quartile",
            "avg_quartile_shift",
            "max_quartile_shift",
            "pct_top_to_non_top",
        ],
    )?;

    let mut log = String::new();
    for &scope in &spec.scopes {
        let pairs = board.scores_for_scope(spec.indicator, scope)?;
        let scores_a: Vec<(String, f64)> = pairs
            .iter()
            .map(|p| (p.entity.label(), p.individual))
            .collect();
        let scores_b: Vec<(String, f64)> = pairs
            .iter()
            .map(|p| (p.entity.label(), p.black_box))
            .collect();
        let ranking_a = rank(&scores_a)?;
        let ranking_b = rank(&scores_b)?;
        let report = compare(&ranking_a, &ranking_b)?;
        write_comparison(&spec.out_dir, scope, &report)?;

        let s = &report.summary;
        let quartile_fields = match &report.quartiles {
            Some(q) => [
                q.pct_changing.to_string(),
                q.avg_shift.to_string(),
                q.max_shift.to_string(),
                q.pct_top_to_non_top.to_string(),
            ],
            None => [String::new(), String::new(), String::new(), String::new()],
        };
        csv_row(
            &mut summary,
            &summary_path,
            &[
                scope.as_str(),
                &s.population.to_string(),
                &s.pct_shifting.to_string(),
                &s.avg_shift_positions.to_string(),
                &s.avg_shift_percentiles.to_string(),
                &s.median_shift_positions.to_string(),
                &s.median_shift_percentiles.to_string(),
                &s.max_shift_positions.to_string(),
                &s.max_shift_percentiles.to_string(),
                &s.spearman_rho.to_string(),
                &quartile_fields[0],
                &quartile_fields[1],
                &quartile_fields[2],
                &quartile_fields[3],
            ],
        )?;

        let _ = writeln!(
            log,
            "{}: {} entities, {}% shifting, avg shift {:.2} ({}), median {:.1} ({}), max {} ({}), rho {}",
            scope.as_str(),
            s.population,
            format_percentile(s.pct_shifting),
            s.avg_shift_positions,
            format_percentile(s.avg_shift_percentiles),
            s.median_shift_positions,
            format_percentile(s.median_shift_percentiles),
            s.max_shift_positions,
            format_percentile(s.max_shift_percentiles),
            format_rho(s.spearman_rho),
        );
    }
    csv_finish(summary, &summary_path)?;
    Ok(log)
}

/// Generate a synthetic corpus into `out_dir`; optionally also write the
/// oracle's independently computed scores as ground_truth.csv.
pub fn cmd_synth(
    spec: &SynthSpec,
    config: &DatasetConfig,
    out_dir: &Path,
    with_ground_truth: bool,
) -> Result<String> {
    let dataset = generate(spec, config)?;
    crate::csv_io::save_dataset(&dataset, out_dir)?;
    let mut log = String::new();
    let _ = writeln!(
        log,
        "{} professors, {} publications, {} authorship rows -> {}",
        dataset.professors.len(),
        dataset.publications.len(),
        dataset.authorships.len(),
        out_dir.display()
    );

    if with_ground_truth {
        let (filtered, _) = apply_filters(&dataset, config);
        let baselines = dataset
            .baselines
            .as_ref()
            .expect("generator always fills baselines");
        let truth = ground_truth(&filtered, config, baselines)?;
        let path = out_dir.join("ground_truth.csv");
        let mut writer = csv_writer(&path)?;
        csv_row(
            &mut writer,
            &path,
            &["indicator", "scope", "entity", "value"],
        )?;
        for ((indicator, scope, entity), value) in &truth {
            csv_row(
                &mut writer,
                &path,
                &[indicator, scope, entity, &value.to_string()],
            )?;
        }
        csv_finish(writer, &path)?;
        let _ = writeln!(log, "{}: {} rows", path.display(), truth.len());
    }
    Ok(log)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    fn synth_dirs() -> (tempfile::TempDir, PathBuf, DatasetConfig) {
        let root = tempdir().unwrap();
        let data = root.path().join("data");
        let config = DatasetConfig::default();
        let spec = SynthSpec {
            seed: 5,
            ..SynthSpec::default()
        };
        cmd_synth(&spec, &config, &data, false).unwrap();
        (root, data, config)
    }

    #[test]
    fn synth_output_validates_cleanly() {
        let (_root, data, config) = synth_dirs();
        let log = cmd_validate(&data, &config).unwrap();
        assert!(log.starts_with("0 errors"), "{log}");
        assert!(log.contains("3 professors excluded (tenure)"), "{log}");
        assert!(
            log.contains("2 publications excluded (document type)"),
            "{log}"
        );
    }

    #[test]
    fn compute_writes_expected_files() {
        let (root, data, config) = synth_dirs();
        let out = root.path().join("scores");
        let spec = RunSpec {
            data_dir: data,
            out_dir: out.clone(),
            config,
            indicator: Indicator::Fss,
            scopes: vec![Scope::Sds, Scope::Overall],
            baselines: BaselineMode::Auto,
        };
        let log = cmd_compute(&spec).unwrap();
        assert!(log.contains("scores_professor.csv"));
        for name in [
            "scores_professor.csv",
            "scores_sds.csv",
            "scores_overall.csv",
        ] {
            let body = fs::read_to_string(out.join(name)).unwrap();
            assert!(
                body.starts_with("indicator,scope,university_id,field_id,entity_id,value"),
                "{name}: {body}"
            );
            assert!(body.lines().count() > 1, "{name} should not be empty");
        }
    }

    #[test]
    fn compute_is_byte_deterministic() {
        let (root, data, config) = synth_dirs();
        let spec = RunSpec {
            data_dir: data,
            out_dir: root.path().join("a"),
            config,
            indicator: Indicator::Fss,
            scopes: vec![Scope::Sds],
            baselines: BaselineMode::Auto,
        };
        cmd_compute(&spec).unwrap();
        let again = RunSpec {
            out_dir: root.path().join("b"),
            ..spec
        };
        cmd_compute(&again).unwrap();
        let a = fs::read(spec.out_dir.join("scores_sds.csv")).unwrap();
        let b = fs::read(again.out_dir.join("scores_sds.csv")).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn compare_writes_tables_and_plot_data() {
        let (root, data, config) = synth_dirs();
        let out = root.path().join("cmp");
        let spec = RunSpec {
            data_dir: data,
            out_dir: out.clone(),
            config,
            indicator: Indicator::Fss,
            scopes: vec![Scope::Sds, Scope::Overall],
            baselines: BaselineMode::Auto,
        };
        let log = cmd_compare(&spec).unwrap();
        assert!(log.contains("rho"), "{log}");
        let comparison = fs::read_to_string(out.join("comparison_sds.csv")).unwrap();
        assert!(comparison
            .starts_with("entity,value_A,rank_A,pct_A,value_B,rank_B,pct_B,rank_shift,pct_shift"));
        let slope = fs::read_to_string(out.join("slopegraph_overall.csv")).unwrap();
        assert!(slope.starts_with("entity,pct_A,pct_B"));
        let histogram = fs::read_to_string(out.join("shift_histogram_sds.csv")).unwrap();
        assert!(histogram.starts_with("shift,frequency"));
        let summary = fs::read_to_string(out.join("summary.csv")).unwrap();
        assert!(summary.lines().count() == 3, "{summary}");
        // Shift histogram frequencies cover the whole population.
        let population: usize = comparison.lines().count() - 1;
        let total: usize = histogram
            .lines()
            .skip(1)
            .map(|line| line.rsplit(',').next().unwrap().parse::<usize>().unwrap())
            .sum();
        assert_eq!(total, population);
    }

    #[test]
    fn empty_scope_writes_header_and_warns() {
        let (root, data, config) = synth_dirs();
        let out = root.path().join("empty");
        let spec = RunSpec {
            data_dir: data,
            out_dir: out.clone(),
            config: DatasetConfig {
                min_staff_overall: 100_000,
                ..config
            },
            indicator: Indicator::Fss,
            scopes: vec![Scope::Overall],
            baselines: BaselineMode::Auto,
        };
        let log = cmd_compute(&spec).unwrap();
        assert!(
            log.contains("warning: no eligible entities at overall scope"),
            "{log}"
        );
        let body = fs::read_to_string(out.join("scores_overall.csv")).unwrap();
        assert_eq!(body.lines().count(), 1, "{body}");
    }

    #[test]
    fn ingest_mode_requires_baseline_file() {
        let (root, data, config) = synth_dirs();
        fs::remove_file(data.join("baselines.csv")).unwrap();
        let spec = RunSpec {
            data_dir: data,
            out_dir: root.path().join("x"),
            config,
            indicator: Indicator::Mncs,
            scopes: vec![Scope::Sds],
            baselines: BaselineMode::Ingest,
        };
        assert!(matches!(
            cmd_compute(&spec).unwrap_err(),
            Error::InvalidConfig(_)
        ));
        // Auto falls back to building from the corpus.
        let auto = RunSpec {
            baselines: BaselineMode::Auto,
            ..spec
        };
        cmd_compute(&auto).unwrap();
    }

    #[test]
    fn ground_truth_file_is_emitted_on_request() {
        let root = tempdir().unwrap();
        let data = root.path().join("data");
        let config = DatasetConfig::default();
        let spec = SynthSpec {
            seed: 9,
            ..SynthSpec::default()
        };
        let log = cmd_synth(&spec, &config, &data, true).unwrap();
        assert!(log.contains("ground_truth.csv"), "{log}");
        let body = fs::read_to_string(data.join("ground_truth.csv")).unwrap();
        assert!(body.starts_with("indicator,scope,entity,value"));
        assert!(body.contains("FSS_US"));
    }

    #[test]
    fn display_rounding_matches_table_conventions() {
        assert_eq!(format_score(0.6644), "0.664");
        assert_eq!(format_percentile(95.83), "95.8");
        assert_eq!(format_rho(0.9601), "0.960");
    }
}
