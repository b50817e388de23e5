//! Core data model: professors, publications, byline slots, the field
//! scheme and salary table, plus the dataset-level filters applied before
//! any score is computed.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::config::DatasetConfig;
use crate::error::{Error, Result};
use crate::normalize::Baselines;

/// Counting convention attached to an SDS.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    /// Every author gets 1/n.
    Alphabetical,
    /// First/last-emphasis weighting.
    PositionWeighted,
}

impl Convention {
    pub fn as_str(&self) -> &'static str {
        match self {
            Convention::Alphabetical => "alphabetical",
            Convention::PositionWeighted => "position-weighted",
        }
    }
}

impl FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "alphabetical" => Ok(Convention::Alphabetical),
            "position-weighted" => Ok(Convention::PositionWeighted),
            other => Err(format!(
                "unknown counting convention '{other}' (expected 'alphabetical' or 'position-weighted')"
            )),
        }
    }
}

/// Aggregation level at which universities are scored and ranked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Scope {
    Sds,
    Uda,
    Overall,
}

impl Scope {
    pub const ALL: [Scope; 3] = [Scope::Sds, Scope::Uda, Scope::Overall];

    pub fn as_str(&self) -> &'static str {
        match self {
            Scope::Sds => "sds",
            Scope::Uda => "uda",
            Scope::Overall => "overall",
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "sds" => Ok(Scope::Sds),
            "uda" => Ok(Scope::Uda),
            "overall" => Ok(Scope::Overall),
            other => Err(format!(
                "unknown scope '{other}' (expected 'sds', 'uda' or 'overall')"
            )),
        }
    }
}

/// A professor on an evaluated university's staff.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Professor {
    pub id: String,
    pub university_id: String,
    pub sds_id: String,
    pub rank: String,
    /// Years on staff during the observation window (at least 1).
    pub years_active: u32,
}

/// One publication of the corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Publication {
    pub id: String,
    pub year: i32,
    pub citations: u32,
    pub doc_type: String,
    /// One or more subject categories.
    pub subject_categories: Vec<String>,
}

/// One byline slot of a publication. Every slot of a byline has a row;
/// slots held by people outside the evaluated staff leave `professor_id`
/// empty, and `author_university_id` is empty when the affiliation is
/// unknown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Authorship {
    pub publication_id: String,
    /// 1-based position in the byline.
    pub byline_position: u32,
    pub total_authors: u32,
    pub professor_id: Option<String>,
    pub author_university_id: Option<String>,
}

/// One SDS of the field scheme: its discipline (UDA) and the counting
/// convention its literature uses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldScheme {
    pub sds_id: String,
    pub uda_id: String,
    pub convention: Convention,
}

/// Average yearly salary per academic rank.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SalaryTable {
    salaries: BTreeMap<String, f64>,
}

impl SalaryTable {
    pub fn new() -> SalaryTable {
        SalaryTable::default()
    }

    /// Returns false when the rank was already present.
    pub fn insert(&mut self, rank: &str, yearly_salary: f64) -> bool {
        self.salaries
            .insert(rank.to_string(), yearly_salary)
            .is_none()
    }

    pub fn get(&self, rank: &str) -> Result<f64> {
        self.salaries
            .get(rank)
            .copied()
            .ok_or_else(|| Error::MissingSalary {
                rank: rank.to_string(),
            })
    }

    pub fn contains(&self, rank: &str) -> bool {
        self.salaries.contains_key(rank)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, f64)> {
        self.salaries.iter().map(|(k, v)| (k, *v))
    }

    pub fn len(&self) -> usize {
        self.salaries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.salaries.is_empty()
    }

    /// Copy with every salary multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> SalaryTable {
        SalaryTable {
            salaries: self
                .salaries
                .iter()
                .map(|(k, v)| (k.clone(), v * factor))
                .collect(),
        }
    }
}

/// An in-memory corpus: staff, publications, byline slots, field scheme,
/// salary table and (when supplied) ingested citation baselines.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Dataset {
    pub professors: Vec<Professor>,
    pub publications: Vec<Publication>,
    pub authorships: Vec<Authorship>,
    pub field_scheme: Vec<FieldScheme>,
    pub salaries: SalaryTable,
    pub baselines: Option<Baselines>,
}

impl Dataset {
    /// SDS id -> field scheme row.
    pub fn scheme_by_sds(&self) -> BTreeMap<&str, &FieldScheme> {
        self.field_scheme
            .iter()
            .map(|row| (row.sds_id.as_str(), row))
            .collect()
    }
}

/// Row counts removed (or unlinked) by `apply_filters`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FilterImpact {
    /// Professors dropped for short tenure.
    pub professors_removed: usize,
    /// Publications dropped for an excluded document type.
    pub publications_removed: usize,
    /// Byline rows dropped together with their publication.
    pub authorships_removed: usize,
    /// Byline rows kept but detached from a dropped professor. The slot
    /// still occupies its position (so co-author credit is unchanged) and
    /// keeps its affiliation; it just no longer earns a score.
    pub authorships_unlinked: usize,
}

/// Drop short-tenure professors and excluded document types.
///
/// Removing a professor never removes byline rows: deleting a slot would
/// change co-authors' positional credit and break byline completeness, so
/// the slot is kept and only its staff link is cleared. Removing a
/// publication removes all of its byline rows. Idempotent.
pub fn apply_filters(dataset: &Dataset, config: &DatasetConfig) -> (Dataset, FilterImpact) {
    let mut impact = FilterImpact::default();

    let mut dropped_professors: HashSet<&str> = HashSet::new();
    let professors: Vec<Professor> = dataset
        .professors
        .iter()
        .filter(|p| {
            if p.years_active < config.min_tenure_years {
                dropped_professors.insert(p.id.as_str());
                false
            } else {
                true
            }
        })
        .cloned()
        .collect();
    impact.professors_removed = dropped_professors.len();

    let mut dropped_publications: HashSet<&str> = HashSet::new();
    let publications: Vec<Publication> = dataset
        .publications
        .iter()
        .filter(|p| {
            if config.is_excluded_doc_type(&p.doc_type) {
                dropped_publications.insert(p.id.as_str());
                false
            } else {
                true
            }
        })
        .cloned()
        .collect();
    impact.publications_removed = dropped_publications.len();

    let mut authorships = Vec::with_capacity(dataset.authorships.len());
    for row in &dataset.authorships {
        if dropped_publications.contains(row.publication_id.as_str()) {
            impact.authorships_removed += 1;
            continue;
        }
        let mut row = row.clone();
        if let Some(professor_id) = &row.professor_id {
            if dropped_professors.contains(professor_id.as_str()) {
                row.professor_id = None;
                impact.authorships_unlinked += 1;
            }
        }
        authorships.push(row);
    }

    let filtered = Dataset {
        professors,
        publications,
        authorships,
        field_scheme: dataset.field_scheme.clone(),
        salaries: dataset.salaries.clone(),
        baselines: dataset.baselines.clone(),
    };
    (filtered, impact)
}

/// One rankable entity of a scope: a university together with the SDS or
/// UDA it is evaluated in (`None` at overall scope).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PopulationEntity {
    pub university_id: String,
    pub field_id: Option<String>,
}

impl PopulationEntity {
    pub fn label(&self) -> String {
        match &self.field_id {
            Some(field) => format!("{}:{}", self.university_id, field),
            None => self.university_id.clone(),
        }
    }
}

/// (university, entity) pairs meeting the staff threshold at `scope`,
/// sorted, each with its staff count. Staff are counted after filtering,
/// and professors without publications count like any other staff member.
pub fn eligible_population(
    dataset: &Dataset,
    scope: Scope,
    config: &DatasetConfig,
) -> Vec<(PopulationEntity, usize)> {
    let scheme = dataset.scheme_by_sds();
    let mut counts: BTreeMap<PopulationEntity, usize> = BTreeMap::new();
    for professor in &dataset.professors {
        let field_id = match scope {
            Scope::Sds => Some(professor.sds_id.clone()),
            Scope::Uda => scheme
                .get(professor.sds_id.as_str())
                .map(|row| row.uda_id.clone()),
            Scope::Overall => None,
        };
        if scope == Scope::Uda && field_id.is_none() {
            // Loading rejects professors whose SDS is missing from the
            // scheme, so this only happens on hand-built datasets.
            continue;
        }
        let entity = PopulationEntity {
            university_id: professor.university_id.clone(),
            field_id,
        };
        *counts.entry(entity).or_insert(0) += 1;
    }

    let threshold = staff_threshold(scope, config);
    counts
        .into_iter()
        .filter(|(_, staff)| *staff >= threshold)
        .collect()
}

/// Minimum staff required for an entity to be ranked at `scope`.
pub fn staff_threshold(scope: Scope, config: &DatasetConfig) -> usize {
    match scope {
        Scope::Sds => config.min_staff_sds,
        Scope::Uda => config.min_staff_uda,
        Scope::Overall => config.min_staff_overall,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn professor(id: &str, university: &str, sds: &str, years: u32) -> Professor {
        Professor {
            id: id.into(),
            university_id: university.into(),
            sds_id: sds.into(),
            rank: "full".into(),
            years_active: years,
        }
    }

    fn tiny_dataset() -> Dataset {
        let mut salaries = SalaryTable::new();
        salaries.insert("full", 100_000.0);
        Dataset {
            professors: vec![
                professor("P1", "U1", "S1", 5),
                professor("P2", "U1", "S1", 2),
                professor("P3", "U2", "S2", 4),
            ],
            publications: vec![
                Publication {
                    id: "W1".into(),
                    year: 2010,
                    citations: 3,
                    doc_type: "article".into(),
                    subject_categories: vec!["C1".into()],
                },
                Publication {
                    id: "W2".into(),
                    year: 2011,
                    citations: 0,
                    doc_type: "meeting abstract".into(),
                    subject_categories: vec!["C1".into()],
                },
            ],
            authorships: vec![
                Authorship {
                    publication_id: "W1".into(),
                    byline_position: 1,
                    total_authors: 2,
                    professor_id: Some("P1".into()),
                    author_university_id: Some("U1".into()),
                },
                Authorship {
                    publication_id: "W1".into(),
                    byline_position: 2,
                    total_authors: 2,
                    professor_id: Some("P2".into()),
                    author_university_id: Some("U1".into()),
                },
                Authorship {
                    publication_id: "W2".into(),
                    byline_position: 1,
                    total_authors: 1,
                    professor_id: Some("P3".into()),
                    author_university_id: Some("U2".into()),
                },
            ],
            field_scheme: vec![
                FieldScheme {
                    sds_id: "S1".into(),
                    uda_id: "D1".into(),
                    convention: Convention::PositionWeighted,
                },
                FieldScheme {
                    sds_id: "S2".into(),
                    uda_id: "D1".into(),
                    convention: Convention::Alphabetical,
                },
            ],
            salaries,
            baselines: None,
        }
    }

    #[test]
    fn short_tenure_professor_removed_and_slot_unlinked() {
        let dataset = tiny_dataset();
        let (filtered, impact) = apply_filters(&dataset, &DatasetConfig::default());
        assert_eq!(impact.professors_removed, 1);
        assert_eq!(filtered.professors.len(), 2);
        // P2's slot survives with its affiliation but without the staff link.
        let slot = filtered
            .authorships
            .iter()
            .find(|a| a.publication_id == "W1" && a.byline_position == 2)
            .unwrap();
        assert_eq!(slot.professor_id, None);
        assert_eq!(slot.author_university_id.as_deref(), Some("U1"));
        assert_eq!(impact.authorships_unlinked, 1);
    }

    #[test]
    fn excluded_doc_type_removed_with_byline() {
        let dataset = tiny_dataset();
        let (filtered, impact) = apply_filters(&dataset, &DatasetConfig::default());
        assert_eq!(impact.publications_removed, 1);
        assert_eq!(impact.authorships_removed, 1);
        assert!(filtered.publications.iter().all(|p| p.id != "W2"));
        assert!(filtered
            .authorships
            .iter()
            .all(|a| a.publication_id != "W2"));
    }

    #[test]
    fn compliant_dataset_untouched() {
        let mut dataset = tiny_dataset();
        dataset.professors[1].years_active = 3;
        dataset.publications[1].doc_type = "article".into();
        let (filtered, impact) = apply_filters(&dataset, &DatasetConfig::default());
        assert_eq!(impact, FilterImpact::default());
        assert_eq!(filtered, dataset);
    }

    #[test]
    fn filtering_is_idempotent() {
        let dataset = tiny_dataset();
        let config = DatasetConfig::default();
        let (once, _) = apply_filters(&dataset, &config);
        let (twice, impact) = apply_filters(&once, &config);
        assert_eq!(once, twice);
        assert_eq!(impact, FilterImpact::default());
    }

    #[test]
    fn eligibility_respects_thresholds() {
        let dataset = tiny_dataset();
        let config = DatasetConfig {
            min_staff_sds: 2,
            min_staff_uda: 2,
            min_staff_overall: 2,
            ..DatasetConfig::default()
        };
        // Unfiltered: U1/S1 has 2 staff, U2/S2 has 1.
        let sds = eligible_population(&dataset, Scope::Sds, &config);
        assert_eq!(sds.len(), 1);
        assert_eq!(sds[0].0.university_id, "U1");
        assert_eq!(sds[0].0.field_id.as_deref(), Some("S1"));
        assert_eq!(sds[0].1, 2);

        let uda = eligible_population(&dataset, Scope::Uda, &config);
        assert_eq!(uda.len(), 1);
        assert_eq!(uda[0].0.field_id.as_deref(), Some("D1"));

        let overall = eligible_population(&dataset, Scope::Overall, &config);
        assert_eq!(overall.len(), 1);
        assert_eq!(overall[0].0.field_id, None);
    }

    #[test]
    fn empty_population_when_nothing_qualifies() {
        let dataset = tiny_dataset();
        let config = DatasetConfig {
            min_staff_sds: 10,
            ..DatasetConfig::default()
        };
        assert!(eligible_population(&dataset, Scope::Sds, &config).is_empty());
    }

    #[test]
    fn zero_publication_professors_count_as_staff() {
        let mut dataset = tiny_dataset();
        dataset.professors.push(professor("P4", "U2", "S2", 5));
        let config = DatasetConfig {
            min_staff_sds: 2,
            ..DatasetConfig::default()
        };
        let sds = eligible_population(&dataset, Scope::Sds, &config);
        assert!(sds
            .iter()
            .any(|(e, staff)| e.university_id == "U2" && *staff == 2));
    }
}
