//! Research-productivity indicators for universities, under two
//! aggregation methods, with ranking-comparison statistics.

pub mod config;
pub mod credit;
pub mod csv_io;
pub mod error;
pub mod indicators;
pub mod model;
pub mod normalize;
pub mod ranking;
pub mod report;
pub mod synth;
pub mod util;

pub use config::{CreditWeights, DatasetConfig};
pub use credit::{
    classify_byline, credit_alphabetical, credit_positional, fractional_share, BylineKind,
    CreditVector,
};
pub use csv_io::{load_baselines, load_dataset, save_baselines, save_dataset};
pub use error::{Error, Result};
pub use indicators::{Indicator, IndicatorScore, ScoreKind, ScorePair, Scoreboard};
pub use model::{
    apply_filters, eligible_population, staff_threshold, Authorship, Convention, Dataset,
    FieldScheme, FilterImpact, PopulationEntity, Professor, Publication, SalaryTable, Scope,
};
pub use normalize::{build_baselines, normalized_impact, Baselines};
pub use ranking::{
    compare, percentile, quartile, quartile_migration, rank, shift_histogram, spearman,
    ComparisonReport, ComparisonSummary, EntityComparison, QuartileStats, RankingRow,
};
pub use report::{cmd_compare, cmd_compute, cmd_synth, cmd_validate, BaselineMode, RunSpec};
pub use synth::{generate, ground_truth, SynthSpec};
