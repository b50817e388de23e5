//! Citation normalization. A publication's impact is its citation count
//! divided by the mean citations of *cited* publications from the same
//! year and subject category; publications carrying several categories
//! are scored against the mean of their per-category baselines.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::Publication;
use crate::util;

/// Mean citations of cited publications per (year, subject category).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Baselines {
    cells: HashMap<(i32, String), f64>,
}

impl Baselines {
    pub fn new() -> Baselines {
        Baselines::default()
    }

    /// Returns false when the cell was already present.
    pub fn insert(&mut self, year: i32, category: &str, mean_citations: f64) -> bool {
        self.cells
            .insert((year, category.to_string()), mean_citations)
            .is_none()
    }

    pub fn get(&self, year: i32, category: &str) -> Option<f64> {
        self.cells.get(&(year, category.to_string())).copied()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Cells in (year, category) order.
    pub fn sorted_cells(&self) -> Vec<(i32, &str, f64)> {
        let mut cells: Vec<(i32, &str, f64)> = self
            .cells
            .iter()
            .map(|((year, category), value)| (*year, category.as_str(), *value))
            .collect();
        cells.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        cells
    }

    /// Baseline for a publication's cell set: the mean of the per-category
    /// baselines for its year. Errors name the first missing cell.
    pub fn mean_for(&self, year: i32, categories: &[String]) -> Result<f64> {
        let mut acc = util::Sum::new();
        for category in categories {
            let value = self
                .get(year, category)
                .ok_or_else(|| Error::MissingBaseline {
                    year,
                    category: category.clone(),
                })?;
            acc.add(value);
        }
        Ok(acc.value() / categories.len() as f64)
    }
}

/// Build baselines from a corpus: for every (year, category) cell, the
/// mean citation count over publications with at least one citation.
/// Cells with no cited publications do not appear. A multi-category
/// publication contributes to each of its categories' cells.
pub fn build_baselines(publications: &[Publication]) -> Baselines {
    let mut sums: HashMap<(i32, String), (util::Sum, u64)> = HashMap::new();
    for publication in publications {
        if publication.citations == 0 {
            continue;
        }
        for category in &publication.subject_categories {
            let entry = sums
                .entry((publication.year, category.clone()))
                .or_insert_with(|| (util::Sum::new(), 0));
            entry.0.add(publication.citations as f64);
            entry.1 += 1;
        }
    }
    let mut baselines = Baselines::new();
    for ((year, category), (sum, count)) in sums {
        baselines.insert(year, &category, sum.value() / count as f64);
    }
    baselines
}

/// c / c-bar for one publication. Uncited publications score 0 without
/// consulting the baselines, so corpora may omit cells that only uncited
/// publications would hit.
pub fn normalized_impact(publication: &Publication, baselines: &Baselines) -> Result<f64> {
    if publication.citations == 0 {
        return Ok(0.0);
    }
    let baseline = baselines.mean_for(publication.year, &publication.subject_categories)?;
    Ok(publication.citations as f64 / baseline)
}
