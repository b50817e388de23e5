//! Seeded synthetic-corpus generator and an independent scoring oracle.
//!
//! The generator draws per-professor latent productivity from a two-level
//! model — a university effect plus an individual effect — so dispersion
//! between universities and within a university are tunable separately.
//! It always plants three short-tenure professors, two excluded-document-
//! type publications, and two pre-window publications so validation
//! reports have something to count.
//!
//! `ground_truth` recomputes every indicator with plain nested loops and
//! closed-form credit weights, sharing no aggregation code with
//! [`crate::indicators::Scoreboard`]; agreement between the two within
//! 1e-9 is an acceptance gate.

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, Poisson};

use crate::config::{CreditWeights, DatasetConfig};
use crate::error::{Error, Result};
use crate::model::{
    staff_threshold, Authorship, Convention, Dataset, FieldScheme, Professor, Publication,
    SalaryTable, Scope,
};
use crate::normalize::{build_baselines, Baselines};

/// Shape of a synthetic corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub universities: usize,
    pub udas: usize,
    pub sds_per_uda: usize,
    /// Inclusive range of professors per (university, SDS) cell.
    pub professors_min: usize,
    pub professors_max: usize,
    /// Mean publications per professor across the corpus.
    pub pubs_per_professor: f64,
    /// Spread of the university-level productivity effect (log scale).
    pub between_sd: f64,
    /// Spread of the professor-level productivity effect (log scale).
    pub within_sd: f64,
    pub seed: u64,
}

impl Default for SynthSpec {
    fn default() -> Self {
        SynthSpec {
            universities: 6,
            udas: 2,
            sds_per_uda: 3,
            professors_min: 4,
            professors_max: 10,
            pubs_per_professor: 3.0,
            between_sd: 0.4,
            within_sd: 0.8,
            seed: 0,
        }
    }
}

impl SynthSpec {
    pub fn validate(&self) -> Result<()> {
        if self.universities < 1 || self.udas < 1 || self.sds_per_uda < 1 {
            return Err(Error::InvalidConfig(
                "universities, udas and sds_per_uda must each be at least 1".into(),
            ));
        }
        if self.professors_min < 1 {
            return Err(Error::InvalidConfig(
                "professors_min must be at least 1".into(),
            ));
        }
        if self.professors_max < self.professors_min {
            return Err(Error::InvalidConfig(
                "professors_max must not be below professors_min".into(),
            ));
        }
        if !(self.pubs_per_professor.is_finite() && self.pubs_per_professor >= 0.0) {
            return Err(Error::InvalidConfig(
                "pubs_per_professor must be finite and >= 0".into(),
            ));
        }
        for (name, value) in [
            ("between_sd", self.between_sd),
            ("within_sd", self.within_sd),
        ] {
            if !(value.is_finite() && value >= 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be finite and >= 0"
                )));
            }
        }
        Ok(())
    }
}

pub const SHORT_TENURE_PLANTS: usize = 3;
pub const EXCLUDED_DOC_PLANTS: usize = 2;
pub const PRE_WINDOW_PLANTS: usize = 2;

const RANKS: [(&str, f64, u32); 3] = [
    ("assistant", 35_000.0, 40),
    ("associate", 50_000.0, 35),
    ("full", 70_000.0, 25),
];

fn draw_normal(rng: &mut ChaCha8Rng, sd: f64) -> f64 {
    if sd <= 0.0 {
        return 0.0;
    }
    Normal::new(0.0, sd).expect("validated sd").sample(rng)
}

fn draw_poisson(rng: &mut ChaCha8Rng, lambda: f64) -> usize {
    if lambda <= 0.0 {
        return 0;
    }
    Poisson::new(lambda).expect("positive lambda").sample(rng) as usize
}

struct PublicationSink {
    publications: Vec<Publication>,
    authorships: Vec<Authorship>,
    externals: Vec<String>,
    next: usize,
}

impl PublicationSink {
    fn new() -> Self {
        PublicationSink {
            publications: Vec::new(),
            authorships: Vec::new(),
            externals: (1..=20).map(|i| format!("EXT_{i:02}")).collect(),
            next: 0,
        }
    }

    /// One publication led by `lead`, with co-author slots filled from the
    /// lead's unit or outside staff.
    #[allow(clippy::too_many_arguments)]
    fn emit(
        &mut self,
        rng: &mut ChaCha8Rng,
        professors: &[Professor],
        lead: usize,
        lead_unit: &[usize],
        year: i32,
        doc_type: &str,
        total_authors: u32,
    ) {
        self.next += 1;
        let id = format!("PUB{:06}", self.next);
        let lead_professor = &professors[lead];
        let sds = &lead_professor.sds_id;
        let uda = sds.split('_').next().unwrap_or(sds).replace("SDS", "UDA");

        let citations = if rng.gen_bool(0.3) {
            0
        } else {
            1 + draw_poisson(rng, 4.0) as u32
        };
        let mut categories = vec![format!("C_{sds}")];
        if rng.gen_bool(0.25) {
            categories.push(format!("C_{uda}"));
        }
        self.publications.push(Publication {
            id: id.clone(),
            year,
            citations,
            doc_type: doc_type.to_string(),
            subject_categories: categories,
        });

        let lead_position = rng.gen_range(1..=total_authors);
        let home = lead_professor.university_id.clone();
        let mut used: HashSet<usize> = HashSet::new();
        used.insert(lead);
        for position in 1..=total_authors {
            let (professor_id, affiliation) = if position == lead_position {
                (Some(lead_professor.id.clone()), Some(home.clone()))
            } else {
                let coauthor = if rng.gen_bool(0.15) && lead_unit.len() > 1 {
                    let pick = lead_unit[rng.gen_range(0..lead_unit.len())];
                    (!used.contains(&pick)).then_some(pick)
                } else {
                    None
                };
                match coauthor {
                    Some(pick) => {
                        used.insert(pick);
                        (
                            Some(professors[pick].id.clone()),
                            Some(professors[pick].university_id.clone()),
                        )
                    }
                    None => match rng.gen_range(0..10u32) {
                        0..=3 => (None, Some(home.clone())),
                        4..=6 => {
                            let org = &self.externals[rng.gen_range(0..self.externals.len())];
                            (None, Some(org.clone()))
                        }
                        _ => (None, None),
                    },
                }
            };
            self.authorships.push(Authorship {
                publication_id: id.clone(),
                byline_position: position,
                total_authors,
                professor_id,
                author_university_id: affiliation,
            });
        }
    }
}

/// Generate a corpus. Same spec and config always produce the same
/// dataset, bit for bit; `dataset.baselines` is filled from the generated
/// publications.
pub fn generate(spec: &SynthSpec, config: &DatasetConfig) -> Result<Dataset> {
    spec.validate()?;
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let mut salaries = SalaryTable::default();
    for (rank, salary, _) in RANKS {
        salaries.insert(rank, salary);
    }

    let mut field_scheme = Vec::new();
    let mut sds_ids = Vec::new();
    for uda in 1..=spec.udas {
        for k in 1..=spec.sds_per_uda {
            let sds_id = format!("SDS{uda}_{k}");
            field_scheme.push(FieldScheme {
                sds_id: sds_id.clone(),
                uda_id: format!("UDA{uda}"),
                convention: if (uda + k) % 2 == 0 {
                    Convention::Alphabetical
                } else {
                    Convention::PositionWeighted
                },
            });
            sds_ids.push(sds_id);
        }
    }

    let window_years = config.window_years();
    let tenure_lo = config.min_tenure_years.clamp(1, window_years);

    let universities: Vec<String> = (1..=spec.universities)
        .map(|i| format!("UNIV_{i:02}"))
        .collect();
    let university_effect: Vec<f64> = (0..spec.universities)
        .map(|_| draw_normal(&mut rng, spec.between_sd))
        .collect();

    // E[exp(between + within)] — divides the publication rate so the
    // corpus-wide mean stays at pubs_per_professor.
    let latent_mean =
        ((spec.between_sd * spec.between_sd + spec.within_sd * spec.within_sd) / 2.0).exp();

    let mut professors: Vec<Professor> = Vec::new();
    let mut latent = Vec::new();
    let mut unit_of: Vec<(usize, usize)> = Vec::new();
    let mut unit_members: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (ui, university) in universities.iter().enumerate() {
        for (si, sds) in sds_ids.iter().enumerate() {
            let count = rng.gen_range(spec.professors_min..=spec.professors_max);
            for _ in 0..count {
                let roll = rng.gen_range(0..100u32);
                let mut acc = 0;
                let mut rank = RANKS[0].0;
                for (name, _, share) in RANKS {
                    acc += share;
                    if roll < acc {
                        rank = name;
                        break;
                    }
                }
                let index = professors.len();
                professors.push(Professor {
                    id: format!("P{:05}", index + 1),
                    university_id: university.clone(),
                    sds_id: sds.clone(),
                    rank: rank.to_string(),
                    years_active: rng.gen_range(tenure_lo..=window_years),
                });
                latent.push((university_effect[ui] + draw_normal(&mut rng, spec.within_sd)).exp());
                unit_of.push((ui, si));
                unit_members.entry((ui, si)).or_default().push(index);
            }
        }
    }

    let mut sink = PublicationSink::new();
    for index in 0..professors.len() {
        let lambda = spec.pubs_per_professor * latent[index] / latent_mean;
        let count = draw_poisson(&mut rng, lambda);
        for _ in 0..count {
            let year = rng.gen_range(config.window_start..=config.window_end);
            let doc_type = if rng.gen_bool(0.9) {
                "article"
            } else {
                "review"
            };
            let total_authors = rng.gen_range(1..=8u32);
            sink.emit(
                &mut rng,
                &professors,
                index,
                &unit_members[&unit_of[index]],
                year,
                doc_type,
                total_authors,
            );
        }
    }

    // Plants: professors below the tenure cutoff (when the config has
    // one), each with one in-window publication that ends up unlinked;
    // publications of an excluded document type; publications dated
    // before the window.
    if config.min_tenure_years >= 2 {
        for i in 1..=SHORT_TENURE_PLANTS {
            let index = professors.len();
            professors.push(Professor {
                id: format!("P_TENURE_{i}"),
                university_id: universities[0].clone(),
                sds_id: sds_ids[0].clone(),
                rank: "assistant".to_string(),
                years_active: (config.min_tenure_years - 1).clamp(1, window_years),
            });
            latent.push(1.0);
            unit_of.push((0, 0));
            unit_members.entry((0, 0)).or_default().push(index);
            sink.emit(
                &mut rng,
                &professors,
                index,
                &unit_members[&(0, 0)],
                config.window_end,
                "article",
                1,
            );
        }
    }
    if let Some(excluded) = config.excluded_doc_types.first().cloned() {
        for _ in 0..EXCLUDED_DOC_PLANTS {
            let lead = rng.gen_range(0..professors.len());
            sink.emit(
                &mut rng,
                &professors,
                lead,
                &unit_members[&unit_of[lead]],
                config.window_end,
                &excluded,
                2,
            );
        }
    }
    for _ in 0..PRE_WINDOW_PLANTS {
        let lead = rng.gen_range(0..professors.len());
        sink.emit(
            &mut rng,
            &professors,
            lead,
            &unit_members[&unit_of[lead]],
            config.window_start - 3,
            "article",
            1,
        );
    }

    let baselines = build_baselines(&sink.publications);
    Ok(Dataset {
        professors,
        publications: sink.publications,
        authorships: sink.authorships,
        field_scheme,
        salaries,
        baselines: Some(baselines),
    })
}

// ---------------------------------------------------------------------
// Independent oracle: closed-form credit weights and plain-loop sums.
// ---------------------------------------------------------------------

fn oracle_weights(intramural: bool, n: usize, w: &CreditWeights) -> Vec<f64> {
    if n == 1 {
        return vec![1.0];
    }
    let mut weights = vec![0.0; n];
    if intramural {
        weights[0] = w.intramural_endpoint;
        weights[n - 1] = w.intramural_endpoint;
        if n > 2 {
            for slot in weights.iter_mut().take(n - 1).skip(1) {
                *slot = w.intramural_pool / (n - 2) as f64;
            }
        }
    } else {
        match n {
            2 => {
                weights[0] = w.extramural_endpoint + w.extramural_adjacent;
                weights[1] = w.extramural_endpoint + w.extramural_adjacent;
            }
            3 => {
                weights[0] = w.extramural_endpoint;
                weights[1] = 2.0 * w.extramural_adjacent;
                weights[2] = w.extramural_endpoint;
            }
            _ => {
                weights[0] = w.extramural_endpoint;
                weights[1] = w.extramural_adjacent;
                weights[n - 2] = w.extramural_adjacent;
                weights[n - 1] = w.extramural_endpoint;
                for slot in weights.iter_mut().take(n - 2).skip(2) {
                    *slot = w.extramural_pool / (n - 4) as f64;
                }
            }
        }
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-9 && total > 0.0 {
        for slot in &mut weights {
            *slot /= total;
        }
    }
    weights
}

fn oracle_impact(publication: &Publication, baselines: &Baselines) -> Result<f64> {
    if publication.citations == 0 {
        return Ok(0.0);
    }
    let mut total = 0.0;
    for category in &publication.subject_categories {
        let baseline = baselines
            .get(publication.year, category)
            .ok_or(Error::MissingBaseline {
                year: publication.year,
                category: category.clone(),
            })?;
        total += baseline;
    }
    let mean_baseline = total / publication.subject_categories.len() as f64;
    Ok(publication.citations as f64 / mean_baseline)
}

/// Indicator values recomputed the slow, obvious way. Keys are
/// (indicator, scope, entity): professors under scope "professor" by id,
/// universities under "sds"/"uda"/"overall" by "UNIV" or "UNIV:field"
/// label. Covers FSS at every scope, MNCS at professor and SDS scope.
pub fn ground_truth(
    dataset: &Dataset,
    config: &DatasetConfig,
    baselines: &Baselines,
) -> Result<BTreeMap<(String, String, String), f64>> {
    let scheme: HashMap<&str, &FieldScheme> = dataset
        .field_scheme
        .iter()
        .map(|s| (s.sds_id.as_str(), s))
        .collect();
    let publication_by_id: HashMap<&str, &Publication> = dataset
        .publications
        .iter()
        .map(|p| (p.id.as_str(), p))
        .collect();
    let professor_by_id: HashMap<&str, usize> = dataset
        .professors
        .iter()
        .enumerate()
        .map(|(i, p)| (p.id.as_str(), i))
        .collect();

    // Byline affiliations per publication: single author, or first and
    // last sharing a known university, makes it intramural.
    let mut slots: HashMap<&str, Vec<Option<String>>> = HashMap::new();
    for row in &dataset.authorships {
        let entry = slots.entry(row.publication_id.as_str()).or_default();
        let needed = (row.total_authors as usize).max(row.byline_position as usize);
        if entry.len() < needed {
            entry.resize(needed, None);
        }
        entry[row.byline_position as usize - 1] = row.author_university_id.clone();
    }
    let intramural: HashMap<&str, bool> = slots
        .iter()
        .map(|(id, byline)| {
            let flag = byline.len() <= 1
                || matches!((byline.first(), byline.last()),
                    (Some(Some(first)), Some(Some(last))) if first == last);
            (*id, flag)
        })
        .collect();

    let wage: Vec<f64> = dataset
        .professors
        .iter()
        .map(|p| Ok(dataset.salaries.get(&p.rank)? * p.years_active as f64))
        .collect::<Result<_>>()?;

    let in_window = |p: &Publication| p.year >= config.window_start && p.year <= config.window_end;

    // Per-professor and per-unit accumulation in one pass over the rows.
    let unit_key = |i: usize| -> (&str, &str) {
        let p = &dataset.professors[i];
        (p.university_id.as_str(), p.sds_id.as_str())
    };
    let mut fss_numerator = vec![0.0f64; dataset.professors.len()];
    let mut mncs_sum = vec![0.0f64; dataset.professors.len()];
    let mut mncs_count = vec![0usize; dataset.professors.len()];
    let mut unit_pubs: BTreeMap<(&str, &str), HashSet<&str>> = BTreeMap::new();
    for row in &dataset.authorships {
        let Some(professor_id) = row.professor_id.as_deref() else {
            continue;
        };
        let Some(&pi) = professor_by_id.get(professor_id) else {
            continue;
        };
        let Some(&publication) = publication_by_id.get(row.publication_id.as_str()) else {
            continue;
        };
        if !in_window(publication) {
            continue;
        }
        let professor = &dataset.professors[pi];
        let Some(field) = scheme.get(professor.sds_id.as_str()) else {
            continue;
        };
        let impact = oracle_impact(publication, baselines)?;
        let n = row.total_authors as usize;
        let share = match field.convention {
            Convention::Alphabetical => 1.0 / n as f64,
            Convention::PositionWeighted => {
                let weights =
                    oracle_weights(intramural[row.publication_id.as_str()], n, &config.credit);
                weights[row.byline_position as usize - 1]
            }
        };
        fss_numerator[pi] += impact * share;
        mncs_sum[pi] += impact;
        mncs_count[pi] += 1;
        unit_pubs
            .entry(unit_key(pi))
            .or_default()
            .insert(publication.id.as_str());
    }
    let fss_p: Vec<f64> = (0..dataset.professors.len())
        .map(|i| fss_numerator[i] / wage[i])
        .collect();

    let mut units: BTreeMap<(&str, &str), Vec<usize>> = BTreeMap::new();
    for i in 0..dataset.professors.len() {
        units.entry(unit_key(i)).or_default().push(i);
    }
    let mut unit_fss: BTreeMap<(&str, &str), f64> = BTreeMap::new();
    let mut unit_wage: BTreeMap<(&str, &str), f64> = BTreeMap::new();
    let mut unit_mncs: BTreeMap<(&str, &str), Option<f64>> = BTreeMap::new();
    for (&key, members) in &units {
        let mass: f64 = members.iter().map(|&i| wage[i]).sum();
        let numerator: f64 = members.iter().map(|&i| fss_numerator[i]).sum();
        unit_wage.insert(key, mass);
        unit_fss.insert(key, numerator / mass);
        let pooled = match unit_pubs.get(&key) {
            Some(ids) if !ids.is_empty() => {
                let mut total = 0.0;
                for id in ids {
                    total += oracle_impact(publication_by_id[id], baselines)?;
                }
                Some(total / ids.len() as f64)
            }
            _ => None,
        };
        unit_mncs.insert(key, pooled);
    }

    // National references.
    let mut fss_p_ref: BTreeMap<&str, f64> = BTreeMap::new();
    {
        let mut sums: BTreeMap<&str, (f64, usize)> = BTreeMap::new();
        for (i, professor) in dataset.professors.iter().enumerate() {
            if fss_p[i] > 0.0 {
                let slot = sums.entry(professor.sds_id.as_str()).or_insert((0.0, 0));
                slot.0 += fss_p[i];
                slot.1 += 1;
            }
        }
        for (sds, (total, count)) in sums {
            fss_p_ref.insert(sds, total / count as f64);
        }
    }
    let mut fss_s_ref: BTreeMap<&str, f64> = BTreeMap::new();
    {
        let mut sums: BTreeMap<&str, (f64, f64)> = BTreeMap::new();
        for (key, &value) in &unit_fss {
            if value > 0.0 {
                let mass = unit_wage[key];
                let slot = sums.entry(key.1).or_insert((0.0, 0.0));
                slot.0 += value * mass;
                slot.1 += mass;
            }
        }
        for (sds, (weighted, mass)) in sums {
            fss_s_ref.insert(sds, weighted / mass);
        }
    }

    let uda_of: HashMap<&str, &str> = dataset
        .field_scheme
        .iter()
        .map(|s| (s.sds_id.as_str(), s.uda_id.as_str()))
        .collect();

    let mut out: BTreeMap<(String, String, String), f64> = BTreeMap::new();
    for (i, professor) in dataset.professors.iter().enumerate() {
        out.insert(
            ("FSS_P".into(), "professor".into(), professor.id.clone()),
            fss_p[i],
        );
        if mncs_count[i] > 0 {
            out.insert(
                ("MNCS_P".into(), "professor".into(), professor.id.clone()),
                mncs_sum[i] / mncs_count[i] as f64,
            );
        }
    }

    let universities: Vec<&str> = {
        let mut list: Vec<&str> = dataset
            .professors
            .iter()
            .map(|p| p.university_id.as_str())
            .collect();
        list.sort_unstable();
        list.dedup();
        list
    };

    for scope in Scope::ALL {
        let threshold = staff_threshold(scope, config);
        for &university in &universities {
            let fields: Vec<Option<&str>> = match scope {
                Scope::Sds => units
                    .keys()
                    .filter(|(u, _)| *u == university)
                    .map(|(_, s)| Some(*s))
                    .collect(),
                Scope::Uda => {
                    let mut list: Vec<&str> = units
                        .keys()
                        .filter(|(u, _)| *u == university)
                        .filter_map(|(_, s)| uda_of.get(s).copied())
                        .collect();
                    list.sort_unstable();
                    list.dedup();
                    list.into_iter().map(Some).collect()
                }
                Scope::Overall => vec![None],
            };
            for field in fields {
                let members: Vec<usize> = dataset
                    .professors
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| {
                        p.university_id == university
                            && match (scope, field) {
                                (Scope::Sds, Some(f)) => p.sds_id == f,
                                (Scope::Uda, Some(f)) => {
                                    uda_of.get(p.sds_id.as_str()).copied() == Some(f)
                                }
                                (Scope::Overall, None) => true,
                                _ => false,
                            }
                    })
                    .map(|(i, _)| i)
                    .collect();
                if members.len() < threshold {
                    continue;
                }
                let label = match field {
                    Some(f) => format!("{university}:{f}"),
                    None => university.to_string(),
                };

                // Method A: standardized productive scores averaged over
                // the full roster.
                let mut standardized = 0.0;
                for &i in &members {
                    if fss_p[i] > 0.0 {
                        standardized += fss_p[i] / fss_p_ref[dataset.professors[i].sds_id.as_str()];
                    }
                }
                out.insert(
                    ("FSS_UP".into(), scope.as_str().into(), label.clone()),
                    standardized / members.len() as f64,
                );

                // Method B: the unit itself at SDS scope, salary-weighted
                // standardized units above it.
                match scope {
                    Scope::Sds => {
                        let key = (university, field.unwrap());
                        out.insert(
                            ("FSS_S".into(), scope.as_str().into(), label.clone()),
                            unit_fss[&key],
                        );
                        let defined: Vec<f64> = members
                            .iter()
                            .filter(|&&i| mncs_count[i] > 0)
                            .map(|&i| mncs_sum[i] / mncs_count[i] as f64)
                            .collect();
                        if !defined.is_empty() {
                            out.insert(
                                ("MNCS_UP".into(), scope.as_str().into(), label.clone()),
                                defined.iter().sum::<f64>() / defined.len() as f64,
                            );
                        }
                        if let Some(value) = unit_mncs[&key] {
                            out.insert(
                                ("MNCS_S".into(), scope.as_str().into(), label.clone()),
                                value,
                            );
                        }
                    }
                    Scope::Uda | Scope::Overall => {
                        let in_scope: Vec<(&str, &str)> = units
                            .keys()
                            .filter(|(u, s)| {
                                *u == university
                                    && match (scope, field) {
                                        (Scope::Uda, Some(f)) => uda_of.get(*s).copied() == Some(f),
                                        (Scope::Overall, None) => true,
                                        _ => false,
                                    }
                            })
                            .copied()
                            .collect();
                        let mut weighted = 0.0;
                        let mut mass = 0.0;
                        let mut defined = true;
                        for key in &in_scope {
                            let Some(&reference) = fss_s_ref.get(key.1) else {
                                defined = false;
                                break;
                            };
                            weighted += unit_fss[key] / reference * unit_wage[key];
                            mass += unit_wage[key];
                        }
                        if defined {
                            out.insert(
                                ("FSS_US".into(), scope.as_str().into(), label.clone()),
                                weighted / mass,
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}
