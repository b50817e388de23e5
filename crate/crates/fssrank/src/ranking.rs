//! Rankings and ranking-divergence statistics.
//!
//! Scores become competition-ranked lists ("1224": ties share the best
//! rank, the next entity skips). Percentiles follow 100·(N−rank)/(N−1),
//! so rank 1 is 100 and rank N is 0. Two rankings of the same population
//! are compared entity by entity (rank and percentile shifts), in
//! aggregate (share shifting, average/median/max absolute shift, Spearman
//! correlation), and by quartile migration. Spearman uses tie-averaged
//! fractional ranks, the statistically standard treatment, while display
//! ranks stay competition-style.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::util::{sum, Sum};

/// One entity of a ranked population.
#[derive(Debug, Clone, PartialEq)]
pub struct RankingRow {
    pub entity: String,
    pub value: f64,
    /// Competition rank, 1 = best.
    pub rank: usize,
    /// 100·(N−rank)/(N−1).
    pub percentile: f64,
}

/// Per-entity comparison of two rankings (A and B) of one population.
#[derive(Debug, Clone, PartialEq)]
pub struct EntityComparison {
    pub entity: String,
    pub value_a: f64,
    pub rank_a: usize,
    pub pct_a: f64,
    pub value_b: f64,
    pub rank_b: usize,
    pub pct_b: f64,
    /// rank_A − rank_B; positive means the entity improves under B.
    pub rank_shift: i64,
    /// pct_B − pct_A, unrounded; positive means improvement under B.
    pub pct_shift: f64,
}

/// Aggregate divergence statistics over one comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonSummary {
    pub population: usize,
    /// Share of entities whose rank changes, in percent.
    pub pct_shifting: f64,
    pub avg_shift_positions: f64,
    pub avg_shift_percentiles: f64,
    pub median_shift_positions: f64,
    pub median_shift_percentiles: f64,
    pub max_shift_positions: u64,
    pub max_shift_percentiles: f64,
    pub spearman_rho: f64,
}

/// Quartile-migration statistics (populations of at least 4).
#[derive(Debug, Clone, PartialEq)]
pub struct QuartileStats {
    /// Share of entities changing quartile, in percent.
    pub pct_changing: f64,
    pub avg_shift: f64,
    pub max_shift: u64,
    /// Share of entities leaving the top quartile, in percent.
    pub pct_top_to_non_top: f64,
}

/// Full report for one ranking pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    /// Ordered by rank under A, then entity id.
    pub rows: Vec<EntityComparison>,
    pub summary: ComparisonSummary,
    /// Absent for populations smaller than 4.
    pub quartiles: Option<QuartileStats>,
}

/// Rank a population by descending value. Ties share the minimum rank and
/// are listed in entity-id order. Requires at least 2 entities and finite
/// values.
pub fn rank(scores: &[(String, f64)]) -> Result<Vec<RankingRow>> {
    if scores.len() < 2 {
        return Err(Error::PopulationTooSmall {
            needed: 2,
            got: scores.len(),
        });
    }
    for (entity, value) in scores {
        if !value.is_finite() {
            return Err(Error::NonFiniteScore(entity.clone()));
        }
    }

    let mut ordered: Vec<(&str, f64)> = scores.iter().map(|(e, v)| (e.as_str(), *v)).collect();
    ordered.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then_with(|| a.0.cmp(b.0)));

    let n = ordered.len();
    let mut rows = Vec::with_capacity(n);
    let mut rank = 1usize;
    for (position, (entity, value)) in ordered.iter().enumerate() {
        if position > 0 && *value < ordered[position - 1].1 {
            rank = position + 1;
        }
        rows.push(RankingRow {
            entity: entity.to_string(),
            value: *value,
            rank,
            percentile: percentile(rank, n),
        });
    }
    Ok(rows)
}

/// Percentile of a rank in a population of `n`: top 100, bottom 0.
pub fn percentile(rank: usize, n: usize) -> f64 {
    100.0 * (n - rank) as f64 / (n - 1) as f64
}

/// Quartile of a rank in a population of `n`: ceil(4·rank/n), 1 = top.
pub fn quartile(rank: usize, n: usize) -> u8 {
    ((4 * rank).div_ceil(n)) as u8
}

/// Quartile per entity; population must have at least 4 entities.
pub fn quartiles(ranking: &[RankingRow]) -> Result<Vec<(String, u8)>> {
    if ranking.len() < 4 {
        return Err(Error::PopulationTooSmall {
            needed: 4,
            got: ranking.len(),
        });
    }
    let n = ranking.len();
    Ok(ranking
        .iter()
        .map(|row| (row.entity.clone(), quartile(row.rank, n)))
        .collect())
}

/// Tie-averaged (fractional) ranks: a group of m entities sharing
/// competition rank r averages the positions r … r+m−1.
fn fractional_ranks(ranking: &[RankingRow]) -> HashMap<&str, f64> {
    let mut group_sizes: HashMap<usize, usize> = HashMap::new();
    for row in ranking {
        *group_sizes.entry(row.rank).or_insert(0) += 1;
    }
    ranking
        .iter()
        .map(|row| {
            let m = group_sizes[&row.rank] as f64;
            (row.entity.as_str(), row.rank as f64 + (m - 1.0) / 2.0)
        })
        .collect()
}

fn check_same_population(a: &[RankingRow], b: &[RankingRow]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::PopulationMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let mut left: Vec<&str> = a.iter().map(|r| r.entity.as_str()).collect();
    let mut right: Vec<&str> = b.iter().map(|r| r.entity.as_str()).collect();
    left.sort_unstable();
    right.sort_unstable();
    if left != right {
        return Err(Error::PopulationMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(())
}

/// Spearman rank correlation between two rankings of the same population,
/// with ties handled by fractional ranks (Pearson correlation of the
/// tie-adjusted rank vectors).
pub fn spearman(a: &[RankingRow], b: &[RankingRow]) -> Result<f64> {
    check_same_population(a, b)?;
    if a.len() < 2 {
        return Err(Error::PopulationTooSmall {
            needed: 2,
            got: a.len(),
        });
    }
    let ranks_a = fractional_ranks(a);
    let ranks_b = fractional_ranks(b);

    let n = a.len() as f64;
    let mut sum_a = Sum::new();
    let mut sum_b = Sum::new();
    for row in a {
        sum_a.add(ranks_a[row.entity.as_str()]);
        sum_b.add(ranks_b[row.entity.as_str()]);
    }
    let mean_a = sum_a.value() / n;
    let mean_b = sum_b.value() / n;

    let mut covariance = Sum::new();
    let mut variance_a = Sum::new();
    let mut variance_b = Sum::new();
    for row in a {
        let da = ranks_a[row.entity.as_str()] - mean_a;
        let db = ranks_b[row.entity.as_str()] - mean_b;
        covariance.add(da * db);
        variance_a.add(da * da);
        variance_b.add(db * db);
    }
    let denominator = (variance_a.value() * variance_b.value()).sqrt();
    if denominator == 0.0 {
        return Err(Error::ZeroRankVariance);
    }
    Ok(covariance.value() / denominator)
}

fn median_of_sorted(values: &[f64]) -> f64 {
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}

/// Compare two rankings of the same population.
pub fn compare(a: &[RankingRow], b: &[RankingRow]) -> Result<ComparisonReport> {
    check_same_population(a, b)?;
    let by_entity_b: HashMap<&str, &RankingRow> =
        b.iter().map(|row| (row.entity.as_str(), row)).collect();

    let mut rows: Vec<EntityComparison> = a
        .iter()
        .map(|row_a| {
            let row_b = by_entity_b[row_a.entity.as_str()];
            EntityComparison {
                entity: row_a.entity.clone(),
                value_a: row_a.value,
                rank_a: row_a.rank,
                pct_a: row_a.percentile,
                value_b: row_b.value,
                rank_b: row_b.rank,
                pct_b: row_b.percentile,
                rank_shift: row_a.rank as i64 - row_b.rank as i64,
                pct_shift: row_b.percentile - row_a.percentile,
            }
        })
        .collect();
    rows.sort_by(|x, y| {
        x.rank_a
            .cmp(&y.rank_a)
            .then_with(|| x.entity.cmp(&y.entity))
    });

    let n = rows.len();
    let shifting = rows.iter().filter(|r| r.rank_shift != 0).count();
    let mut abs_positions: Vec<f64> = rows
        .iter()
        .map(|r| r.rank_shift.unsigned_abs() as f64)
        .collect();
    let mut abs_percentiles: Vec<f64> = rows.iter().map(|r| r.pct_shift.abs()).collect();
    abs_positions.sort_by(|x, y| x.partial_cmp(y).unwrap());
    abs_percentiles.sort_by(|x, y| x.partial_cmp(y).unwrap());

    let summary = ComparisonSummary {
        population: n,
        pct_shifting: 100.0 * shifting as f64 / n as f64,
        avg_shift_positions: sum(abs_positions.iter().copied()) / n as f64,
        avg_shift_percentiles: sum(abs_percentiles.iter().copied()) / n as f64,
        median_shift_positions: median_of_sorted(&abs_positions),
        median_shift_percentiles: median_of_sorted(&abs_percentiles),
        max_shift_positions: abs_positions.last().map(|v| *v as u64).unwrap_or(0),
        max_shift_percentiles: abs_percentiles.last().copied().unwrap_or(0.0),
        spearman_rho: spearman(a, b)?,
    };

    let quartiles = if n >= 4 {
        Some(quartile_migration(a, b)?)
    } else {
        None
    };

    Ok(ComparisonReport {
        rows,
        summary,
        quartiles,
    })
}

/// Quartile-migration statistics between two rankings of the same
/// population of at least 4.
pub fn quartile_migration(a: &[RankingRow], b: &[RankingRow]) -> Result<QuartileStats> {
    check_same_population(a, b)?;
    if a.len() < 4 {
        return Err(Error::PopulationTooSmall {
            needed: 4,
            got: a.len(),
        });
    }
    let n = a.len();
    let quartile_b: HashMap<&str, u8> = b
        .iter()
        .map(|row| (row.entity.as_str(), quartile(row.rank, n)))
        .collect();

    let mut changing = 0usize;
    let mut top_exits = 0usize;
    let mut max_shift = 0u64;
    let mut shift_sum = Sum::new();
    for row in a {
        let qa = quartile(row.rank, n);
        let qb = quartile_b[row.entity.as_str()];
        let shift = qa.abs_diff(qb) as u64;
        if shift > 0 {
            changing += 1;
        }
        if qa == 1 && qb > 1 {
            top_exits += 1;
        }
        max_shift = max_shift.max(shift);
        shift_sum.add(shift as f64);
    }
    Ok(QuartileStats {
        pct_changing: 100.0 * changing as f64 / n as f64,
        avg_shift: shift_sum.value() / n as f64,
        max_shift,
        pct_top_to_non_top: 100.0 * top_exits as f64 / n as f64,
    })
}

/// Frequency of each signed rank shift, ordered by shift.
pub fn shift_histogram(rows: &[EntityComparison]) -> Vec<(i64, usize)> {
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for row in rows {
        *counts.entry(row.rank_shift).or_insert(0) += 1;
    }
    counts.into_iter().collect()
}
