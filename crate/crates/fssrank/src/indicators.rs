//! Productivity and citation-impact indicators.
//!
//! Two families are computed. FSS is labor productivity: field-normalized,
//! fractionally credited citation impact per unit salary per year. MNCS is
//! the salary- and credit-free alternative: the plain mean of normalized
//! citation ratios over a portfolio.
//!
//! Each family is aggregated to university level by two methods. Method A
//! averages individual scores (standardized against the national mean of
//! each professor's SDS, so fields are comparable). Method B treats each
//! university-SDS unit as a black box — one score from the unit's pooled
//! output — and, above SDS level, combines units standardized against
//! national unit means and weighted by their share of the salary mass.
//! Quantifying how the two methods disagree is the point of the library.
//!
//! National references are means over productive entities only: professors
//! with positive scores, units with positive scores weighted by salary
//! mass. Zero-output staff still count in method A's denominator, and a
//! unit's salary mass still counts in method B's weights.

use std::collections::BTreeMap;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::config::DatasetConfig;
use crate::credit::{
    classify_byline, credit_alphabetical, credit_positional, BylineKind, CreditVector,
};
use crate::error::{Error, Result};
use crate::model::{
    eligible_population, staff_threshold, Convention, Dataset, PopulationEntity, Scope,
};
use crate::normalize::{normalized_impact, Baselines};
use crate::util::Sum;

/// Indicator family selectable on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Indicator {
    Fss,
    Mncs,
}

impl Indicator {
    pub fn as_str(&self) -> &'static str {
        match self {
            Indicator::Fss => "fss",
            Indicator::Mncs => "mncs",
        }
    }
}

impl fmt::Display for Indicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Indicator {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "fss" => Ok(Indicator::Fss),
            "mncs" => Ok(Indicator::Mncs),
            other => Err(format!(
                "unknown indicator '{other}' (expected 'fss' or 'mncs')"
            )),
        }
    }
}

/// Every score the engine can emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoreKind {
    FssP,
    FssUp,
    FssS,
    FssUs,
    MncsP,
    MncsUp,
    MncsS,
    MncsUs,
}

impl ScoreKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ScoreKind::FssP => "FSS_P",
            ScoreKind::FssUp => "FSS_UP",
            ScoreKind::FssS => "FSS_S",
            ScoreKind::FssUs => "FSS_US",
            ScoreKind::MncsP => "MNCS_P",
            ScoreKind::MncsUp => "MNCS_UP",
            ScoreKind::MncsS => "MNCS_S",
            ScoreKind::MncsUs => "MNCS_US",
        }
    }

    /// Method-A (individual averaging) kind for a family.
    pub fn individual(family: Indicator) -> ScoreKind {
        match family {
            Indicator::Fss => ScoreKind::FssUp,
            Indicator::Mncs => ScoreKind::MncsUp,
        }
    }

    /// Method-B (black box) kind for a family at a scope.
    pub fn black_box(family: Indicator, scope: Scope) -> ScoreKind {
        match (family, scope) {
            (Indicator::Fss, Scope::Sds) => ScoreKind::FssS,
            (Indicator::Fss, _) => ScoreKind::FssUs,
            (Indicator::Mncs, Scope::Sds) => ScoreKind::MncsS,
            (Indicator::Mncs, _) => ScoreKind::MncsUs,
        }
    }
}

impl fmt::Display for ScoreKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One exportable score record.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorScore {
    pub indicator: ScoreKind,
    /// "professor", "sds", "uda" or "overall".
    pub scope: &'static str,
    pub university_id: String,
    pub field_id: Option<String>,
    /// Professor id, or the university/field label for entity scores.
    pub entity_id: String,
    pub value: f64,
}

/// Both methods' scores for one eligible entity at one scope.
#[derive(Debug, Clone, PartialEq)]
pub struct ScorePair {
    pub entity: PopulationEntity,
    pub staff: usize,
    /// Method A: average of (standardized) individual scores.
    pub individual: f64,
    /// Method B: black-box unit score.
    pub black_box: f64,
}

#[derive(Debug, Clone, Copy)]
struct ProfessorStat {
    /// Productivity per unit salary per year; 0 without publications.
    fss: f64,
    /// Mean normalized citation ratio; undefined without publications.
    mncs: Option<f64>,
}

#[derive(Debug, Clone, Default)]
struct Unit {
    members: Vec<usize>,
    /// Total salary over the observed period: Σ salary(rank)·years.
    salary_mass: f64,
    fss: f64,
    mncs: Option<f64>,
}

/// All indicator values for one filtered dataset, computed eagerly.
pub struct Scoreboard<'a> {
    dataset: &'a Dataset,
    config: &'a DatasetConfig,
    uda_of_sds: BTreeMap<&'a str, &'a str>,
    professor_index: HashMap<&'a str, usize>,
    stats: Vec<ProfessorStat>,
    units: BTreeMap<(&'a str, &'a str), Unit>,
    units_of_university: BTreeMap<&'a str, Vec<&'a str>>,
    staff_of_university: BTreeMap<&'a str, Vec<usize>>,
    fss_p_ref: BTreeMap<&'a str, f64>,
    fss_s_ref: BTreeMap<&'a str, f64>,
    mncs_p_ref: BTreeMap<&'a str, f64>,
    mncs_s_ref: BTreeMap<&'a str, f64>,
}

impl<'a> Scoreboard<'a> {
    /// Compute per-professor and per-unit scores plus national references
    /// for an already-filtered dataset. Publications outside the
    /// observation window are ignored.
    pub fn new(
        dataset: &'a Dataset,
        config: &'a DatasetConfig,
        baselines: &'a Baselines,
    ) -> Result<Scoreboard<'a>> {
        let scheme = dataset.scheme_by_sds();
        let uda_of_sds: BTreeMap<&str, &str> = scheme
            .iter()
            .map(|(sds, row)| (*sds, row.uda_id.as_str()))
            .collect();

        let publication_by_id: HashMap<&str, &crate::model::Publication> = dataset
            .publications
            .iter()
            .map(|p| (p.id.as_str(), p))
            .collect();
        let professor_index: HashMap<&str, usize> = dataset
            .professors
            .iter()
            .enumerate()
            .map(|(i, p)| (p.id.as_str(), i))
            .collect();

        // Byline shape per publication: total authors and whether the
        // first and last slots share a university.
        let mut byline: HashMap<&str, Vec<Option<&str>>> = HashMap::new();
        for row in &dataset.authorships {
            let slots = byline.entry(row.publication_id.as_str()).or_default();
            let needed = (row.total_authors as usize).max(row.byline_position as usize);
            if slots.len() < needed {
                slots.resize(needed, None);
            }
            slots[row.byline_position as usize - 1] = row.author_university_id.as_deref();
        }
        let byline_kind: HashMap<&str, BylineKind> = byline
            .iter()
            .map(|(id, slots)| (*id, classify_byline(slots)))
            .collect();

        // Normalized impact per publication, computed on demand: only
        // staff-authored publications in the window need a baseline.
        let mut impact_cache: HashMap<&str, f64> = HashMap::new();
        let mut impact_of = |id: &'a str| -> Result<f64> {
            if let Some(v) = impact_cache.get(id) {
                return Ok(*v);
            }
            let publication = publication_by_id[id];
            let v = normalized_impact(publication, baselines)?;
            impact_cache.insert(id, v);
            Ok(v)
        };
        let mut credit_cache: HashMap<(Convention, BylineKind, u32), CreditVector> = HashMap::new();

        let n = dataset.professors.len();
        let mut fss_numerator = vec![Sum::new(); n];
        let mut mncs_sum = vec![Sum::new(); n];
        let mut mncs_count = vec![0usize; n];
        let mut unit_fss_numerator: BTreeMap<(&str, &str), Sum> = BTreeMap::new();
        let mut unit_mncs: BTreeMap<(&str, &str), (Sum, usize)> = BTreeMap::new();
        let mut unit_seen_pubs: HashSet<(usize, &str)> = HashSet::new();
        let mut unit_key_order: BTreeMap<(&str, &str), usize> = BTreeMap::new();

        for row in &dataset.authorships {
            let Some(professor_id) = row.professor_id.as_deref() else {
                continue;
            };
            let Some(&pi) = professor_index.get(professor_id) else {
                continue;
            };
            let professor = &dataset.professors[pi];
            let Some(publication) = publication_by_id.get(row.publication_id.as_str()) else {
                continue;
            };
            if publication.year < config.window_start || publication.year > config.window_end {
                continue;
            }
            let Some(scheme_row) = scheme.get(professor.sds_id.as_str()) else {
                continue;
            };

            let impact = impact_of(publication.id.as_str())?;
            let kind = byline_kind[row.publication_id.as_str()];
            let convention = scheme_row.convention;
            let vector = credit_cache
                .entry((convention, kind, row.total_authors))
                .or_insert_with(|| match convention {
                    Convention::Alphabetical => credit_alphabetical(row.total_authors),
                    Convention::PositionWeighted => {
                        credit_positional(row.total_authors, kind, &config.credit)
                    }
                });
            let share = vector.weight(row.byline_position).unwrap_or(0.0);

            fss_numerator[pi].add(impact * share);
            mncs_sum[pi].add(impact);
            mncs_count[pi] += 1;

            let key = (professor.university_id.as_str(), professor.sds_id.as_str());
            unit_fss_numerator
                .entry(key)
                .or_default()
                .add(impact * share);
            let next = unit_key_order.len();
            let unit_ordinal = *unit_key_order.entry(key).or_insert(next);
            if unit_seen_pubs.insert((unit_ordinal, publication.id.as_str())) {
                let entry = unit_mncs.entry(key).or_insert_with(|| (Sum::new(), 0));
                entry.0.add(impact);
                entry.1 += 1;
            }
        }

        let mut stats = Vec::with_capacity(n);
        let mut units: BTreeMap<(&str, &str), Unit> = BTreeMap::new();
        let mut staff_of_university: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
        let mut unit_salary: BTreeMap<(&str, &str), Sum> = BTreeMap::new();

        for (pi, professor) in dataset.professors.iter().enumerate() {
            let salary = dataset.salaries.get(&professor.rank)?;
            let years = professor.years_active as f64;
            let fss = fss_numerator[pi].value() / (salary * years);
            let mncs = if mncs_count[pi] > 0 {
                Some(mncs_sum[pi].value() / mncs_count[pi] as f64)
            } else {
                None
            };
            stats.push(ProfessorStat { fss, mncs });

            let key = (professor.university_id.as_str(), professor.sds_id.as_str());
            units.entry(key).or_default().members.push(pi);
            unit_salary.entry(key).or_default().add(salary * years);
            staff_of_university
                .entry(professor.university_id.as_str())
                .or_default()
                .push(pi);
        }

        let mut units_of_university: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for (&(university, sds), unit) in units.iter_mut() {
            unit.salary_mass = unit_salary[&(university, sds)].value();
            unit.fss = unit_fss_numerator
                .get(&(university, sds))
                .map(|s| s.value() / unit.salary_mass)
                .unwrap_or(0.0);
            unit.mncs = unit_mncs
                .get(&(university, sds))
                .map(|(sum, count)| sum.value() / *count as f64);
            units_of_university.entry(university).or_default().push(sds);
        }

        // National references, per SDS, over productive entities only.
        let mut fss_p_parts: BTreeMap<&str, (Sum, usize)> = BTreeMap::new();
        let mut mncs_p_parts: BTreeMap<&str, (Sum, usize)> = BTreeMap::new();
        for (pi, professor) in dataset.professors.iter().enumerate() {
            let sds = professor.sds_id.as_str();
            if stats[pi].fss > 0.0 {
                let entry = fss_p_parts.entry(sds).or_insert_with(|| (Sum::new(), 0));
                entry.0.add(stats[pi].fss);
                entry.1 += 1;
            }
            if let Some(v) = stats[pi].mncs {
                if v > 0.0 {
                    let entry = mncs_p_parts.entry(sds).or_insert_with(|| (Sum::new(), 0));
                    entry.0.add(v);
                    entry.1 += 1;
                }
            }
        }
        let fss_p_ref = fss_p_parts
            .into_iter()
            .map(|(sds, (sum, count))| (sds, sum.value() / count as f64))
            .collect();
        let mncs_p_ref = mncs_p_parts
            .into_iter()
            .map(|(sds, (sum, count))| (sds, sum.value() / count as f64))
            .collect();

        let mut fss_s_parts: BTreeMap<&str, (Sum, Sum)> = BTreeMap::new();
        let mut mncs_s_parts: BTreeMap<&str, (Sum, Sum)> = BTreeMap::new();
        for (&(_, sds), unit) in &units {
            if unit.fss > 0.0 {
                let entry = fss_s_parts
                    .entry(sds)
                    .or_insert_with(|| (Sum::new(), Sum::new()));
                entry.0.add(unit.fss * unit.salary_mass);
                entry.1.add(unit.salary_mass);
            }
            if let Some(v) = unit.mncs {
                if v > 0.0 {
                    let entry = mncs_s_parts
                        .entry(sds)
                        .or_insert_with(|| (Sum::new(), Sum::new()));
                    entry.0.add(v * unit.salary_mass);
                    entry.1.add(unit.salary_mass);
                }
            }
        }
        let fss_s_ref = fss_s_parts
            .into_iter()
            .map(|(sds, (num, den))| (sds, num.value() / den.value()))
            .collect();
        let mncs_s_ref = mncs_s_parts
            .into_iter()
            .map(|(sds, (num, den))| (sds, num.value() / den.value()))
            .collect();

        Ok(Scoreboard {
            dataset,
            config,
            uda_of_sds,
            professor_index,
            stats,
            units,
            units_of_university,
            staff_of_university,
            fss_p_ref,
            fss_s_ref,
            mncs_p_ref,
            mncs_s_ref,
        })
    }

    /// Individual productivity: normalized, credited citation impact per
    /// unit salary per year. 0 without publications; None for an unknown
    /// professor id.
    pub fn fss_professor(&self, id: &str) -> Option<f64> {
        self.professor_index.get(id).map(|&i| self.stats[i].fss)
    }

    /// Mean normalized citation ratio of a professor's portfolio; None
    /// for an unknown id or an empty portfolio.
    pub fn mncs_professor(&self, id: &str) -> Option<f64> {
        self.professor_index
            .get(id)
            .and_then(|&i| self.stats[i].mncs)
    }

    /// National mean individual productivity in an SDS, over professors
    /// with positive productivity.
    pub fn national_mean_fss_p(&self, sds: &str) -> Result<f64> {
        self.fss_p_ref
            .get(sds)
            .copied()
            .ok_or_else(|| Error::UndefinedReference {
                indicator: "FSS_P",
                sds: sds.to_string(),
            })
    }

    /// National salary-weighted mean unit productivity in an SDS, over
    /// units with positive productivity.
    pub fn national_weighted_mean_fss_s(&self, sds: &str) -> Result<f64> {
        self.fss_s_ref
            .get(sds)
            .copied()
            .ok_or_else(|| Error::UndefinedReference {
                indicator: "FSS_S",
                sds: sds.to_string(),
            })
    }

    /// Method A at any scope: mean over the entity's whole staff of
    /// individual productivity standardized by the SDS national mean.
    /// Zero-productivity staff contribute 0 but count in the denominator.
    pub fn fss_university_individual(
        &self,
        university: &str,
        scope: Scope,
        field: Option<&str>,
    ) -> Result<f64> {
        let members = self.checked_members(university, scope, field)?;
        Ok(self
            .individual_value(Indicator::Fss, scope, &members)?
            .expect("FSS individual value is always defined"))
    }

    /// Method B at SDS scope: the unit's pooled credited impact over its
    /// total salary mass.
    pub fn fss_sds(&self, university: &str, sds: &str) -> Result<f64> {
        let members = self.checked_members(university, Scope::Sds, Some(sds))?;
        debug_assert!(!members.is_empty());
        Ok(self
            .black_box_value(Indicator::Fss, Scope::Sds, university, Some(sds))?
            .expect("FSS unit value is always defined"))
    }

    /// Method B above SDS scope: unit scores standardized by the SDS
    /// national weighted mean, weighted by the unit's share of the
    /// entity's salary mass.
    pub fn fss_university_field(
        &self,
        university: &str,
        scope: Scope,
        field: Option<&str>,
    ) -> Result<f64> {
        self.checked_members(university, scope, field)?;
        Ok(self
            .black_box_value(Indicator::Fss, scope, university, field)?
            .expect("FSS black-box value is always defined"))
    }

    /// Method A for MNCS: plain mean of defined individual scores at SDS
    /// scope, standardized mean above it. None when no staff member has a
    /// publication.
    pub fn mncs_university_individual(
        &self,
        university: &str,
        scope: Scope,
        field: Option<&str>,
    ) -> Result<Option<f64>> {
        let members = self.checked_members(university, scope, field)?;
        self.individual_value(Indicator::Mncs, scope, &members)
    }

    /// Method B for MNCS: pooled mean over the unit's distinct
    /// publications at SDS scope, Eq-4-shaped combination above it. None
    /// when the staff has no publications.
    pub fn mncs_university_field(
        &self,
        university: &str,
        scope: Scope,
        field: Option<&str>,
    ) -> Result<Option<f64>> {
        self.checked_members(university, scope, field)?;
        self.black_box_value(Indicator::Mncs, scope, university, field)
    }

    /// Both methods for every eligible entity at a scope. Entities whose
    /// MNCS is undefined (no publications) are omitted — symmetrically,
    /// since one method's MNCS is undefined exactly when the other's is.
    pub fn scores_for_scope(&self, family: Indicator, scope: Scope) -> Result<Vec<ScorePair>> {
        let population = eligible_population(self.dataset, scope, self.config);
        let mut pairs = Vec::with_capacity(population.len());
        for (entity, staff) in population {
            let members =
                self.scope_members(&entity.university_id, scope, entity.field_id.as_deref());
            debug_assert_eq!(members.len(), staff);
            let individual = self.individual_value(family, scope, &members)?;
            let black_box = self.black_box_value(
                family,
                scope,
                &entity.university_id,
                entity.field_id.as_deref(),
            )?;
            match (individual, black_box) {
                (Some(individual), Some(black_box)) => pairs.push(ScorePair {
                    entity,
                    staff,
                    individual,
                    black_box,
                }),
                (None, None) => {}
                (a, b) => unreachable!(
                    "one-sided undefined score for {}: {a:?} vs {b:?}",
                    entity.label()
                ),
            }
        }
        Ok(pairs)
    }

    /// Flat score records: professor-level scores plus both methods'
    /// entity scores at each requested scope.
    pub fn all_scores(&self, family: Indicator, scopes: &[Scope]) -> Result<Vec<IndicatorScore>> {
        let mut rows = Vec::new();
        let mut order: Vec<usize> = (0..self.dataset.professors.len()).collect();
        order.sort_by_key(|&i| self.dataset.professors[i].id.as_str());
        for i in order {
            let professor = &self.dataset.professors[i];
            let value = match family {
                Indicator::Fss => Some(self.stats[i].fss),
                Indicator::Mncs => self.stats[i].mncs,
            };
            let Some(value) = value else { continue };
            rows.push(IndicatorScore {
                indicator: match family {
                    Indicator::Fss => ScoreKind::FssP,
                    Indicator::Mncs => ScoreKind::MncsP,
                },
                scope: "professor",
                university_id: professor.university_id.clone(),
                field_id: Some(professor.sds_id.clone()),
                entity_id: professor.id.clone(),
                value,
            });
        }

        for &scope in scopes {
            for pair in self.scores_for_scope(family, scope)? {
                let field_id = pair.entity.field_id.clone();
                rows.push(IndicatorScore {
                    indicator: ScoreKind::individual(family),
                    scope: scope.as_str(),
                    university_id: pair.entity.university_id.clone(),
                    field_id: field_id.clone(),
                    entity_id: pair.entity.label(),
                    value: pair.individual,
                });
                rows.push(IndicatorScore {
                    indicator: ScoreKind::black_box(family, scope),
                    scope: scope.as_str(),
                    university_id: pair.entity.university_id.clone(),
                    field_id,
                    entity_id: pair.entity.label(),
                    value: pair.black_box,
                });
            }
        }
        Ok(rows)
    }

    fn sds_in_scope(&self, sds: &str, scope: Scope, field: Option<&str>) -> bool {
        match scope {
            Scope::Sds => Some(sds) == field,
            Scope::Uda => self.uda_of_sds.get(sds).copied() == field,
            Scope::Overall => true,
        }
    }

    fn scope_members(&self, university: &str, scope: Scope, field: Option<&str>) -> Vec<usize> {
        match scope {
            Scope::Overall => self
                .staff_of_university
                .get(university)
                .cloned()
                .unwrap_or_default(),
            _ => {
                let mut members = Vec::new();
                for sds in self
                    .units_of_university
                    .get(university)
                    .into_iter()
                    .flatten()
                {
                    if self.sds_in_scope(sds, scope, field) {
                        members.extend_from_slice(&self.units[&(university, *sds)].members);
                    }
                }
                members
            }
        }
    }

    fn checked_members(
        &self,
        university: &str,
        scope: Scope,
        field: Option<&str>,
    ) -> Result<Vec<usize>> {
        let members = self.scope_members(university, scope, field);
        let needed = staff_threshold(scope, self.config);
        if members.len() < needed {
            return Err(Error::ThresholdNotMet {
                university: university.to_string(),
                entity: field.unwrap_or("overall").to_string(),
                needed,
                got: members.len(),
            });
        }
        Ok(members)
    }

    fn individual_value(
        &self,
        family: Indicator,
        scope: Scope,
        members: &[usize],
    ) -> Result<Option<f64>> {
        match family {
            Indicator::Fss => {
                let mut sum = Sum::new();
                for &i in members {
                    let score = self.stats[i].fss;
                    if score > 0.0 {
                        let sds = self.dataset.professors[i].sds_id.as_str();
                        let reference = self.fss_p_ref[sds];
                        sum.add(score / reference);
                    }
                }
                Ok(Some(sum.value() / members.len() as f64))
            }
            Indicator::Mncs => {
                let mut sum = Sum::new();
                let mut defined = 0usize;
                for &i in members {
                    let Some(score) = self.stats[i].mncs else {
                        continue;
                    };
                    defined += 1;
                    if score > 0.0 {
                        let standardized = if scope == Scope::Sds {
                            score
                        } else {
                            let sds = self.dataset.professors[i].sds_id.as_str();
                            score / self.mncs_p_ref[sds]
                        };
                        sum.add(standardized);
                    }
                }
                if defined == 0 {
                    return Ok(None);
                }
                Ok(Some(sum.value() / defined as f64))
            }
        }
    }

    fn black_box_value(
        &self,
        family: Indicator,
        scope: Scope,
        university: &str,
        field: Option<&str>,
    ) -> Result<Option<f64>> {
        if scope == Scope::Sds {
            let Some(sds) = field else { return Ok(None) };
            let Some(unit) = self.units.get(&(university, sds)) else {
                return Ok(None);
            };
            return match family {
                Indicator::Fss => Ok(Some(unit.fss)),
                Indicator::Mncs => Ok(unit.mncs),
            };
        }

        let in_scope: Vec<&str> = self
            .units_of_university
            .get(university)
            .into_iter()
            .flatten()
            .filter(|sds| self.sds_in_scope(sds, scope, field))
            .copied()
            .collect();

        if family == Indicator::Mncs
            && in_scope
                .iter()
                .all(|sds| self.units[&(university, *sds)].mncs.is_none())
        {
            return Ok(None);
        }

        let mut salary_mass = Sum::new();
        let mut weighted = Sum::new();
        for sds in &in_scope {
            let unit = &self.units[&(university, *sds)];
            salary_mass.add(unit.salary_mass);
            let (score, reference, indicator) = match family {
                Indicator::Fss => (unit.fss, self.fss_s_ref.get(sds), "FSS_S"),
                Indicator::Mncs => (unit.mncs.unwrap_or(0.0), self.mncs_s_ref.get(sds), "MNCS_S"),
            };
            let reference = reference
                .copied()
                .ok_or_else(|| Error::UndefinedReference {
                    indicator,
                    sds: sds.to_string(),
                })?;
            weighted.add(score / reference * unit.salary_mass);
        }
        Ok(Some(weighted.value() / salary_mass.value()))
    }
}
