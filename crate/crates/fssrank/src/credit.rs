//! Fractional authorship credit.
//!
//! Two conventions are supported. Alphabetical-tradition fields split
//! credit evenly. Position-weighted fields emphasize the first and last
//! authors: when the whole byline is from one university, first and last
//! receive 40% each and the remaining 20% is split among the others; when
//! the byline spans universities, first and last receive 30% each, the
//! second and second-to-last 15% each, and the remaining 10% is split
//! among the others. The percentages are configurable.
//!
//! Short bylines make the positional roles overlap (in a two-author
//! paper the first author is also the second-to-last). An author holding
//! several roles receives the sum of the role weights; if no author is
//! left for the residual pool, the pool is dropped; the vector is then
//! renormalized to sum to 1. The familiar degenerate results fall out of
//! that one rule: a single author gets 1.0 and a two-author byline splits
//! 0.5/0.5 under either convention.

use crate::config::CreditWeights;
use crate::model::Convention;

/// Whether the credited endpoints of a byline sit at one university.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BylineKind {
    /// First and last author from the same university.
    Intramural,
    /// Byline spans universities (or endpoint affiliations are unknown).
    Extramural,
}

/// Byline-position weights for one publication; non-negative and summing
/// to 1 (within 1e-9) for every byline size.
#[derive(Debug, Clone, PartialEq)]
pub struct CreditVector {
    weights: Vec<f64>,
}

impl CreditVector {
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Weight of the author at a 1-based byline position.
    pub fn weight(&self, position: u32) -> Option<f64> {
        if position == 0 {
            return None;
        }
        self.weights.get(position as usize - 1).copied()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Equal split: every one of `total_authors` authors receives 1/n.
pub fn credit_alphabetical(total_authors: u32) -> CreditVector {
    let n = total_authors as usize;
    CreditVector {
        weights: vec![1.0 / total_authors as f64; n],
    }
}

/// First/last-emphasis split for a byline of `total_authors`.
pub fn credit_positional(
    total_authors: u32,
    kind: BylineKind,
    weights: &CreditWeights,
) -> CreditVector {
    let n = total_authors as usize;
    if n == 0 {
        return CreditVector {
            weights: Vec::new(),
        };
    }

    let mut raw = vec![0.0f64; n];
    let mut has_role = vec![false; n];
    let assign = |raw: &mut Vec<f64>, has_role: &mut Vec<bool>, index: usize, w: f64| {
        raw[index] += w;
        has_role[index] = true;
    };

    let pool = match kind {
        BylineKind::Intramural => {
            assign(&mut raw, &mut has_role, 0, weights.intramural_endpoint);
            assign(&mut raw, &mut has_role, n - 1, weights.intramural_endpoint);
            weights.intramural_pool
        }
        BylineKind::Extramural => {
            assign(&mut raw, &mut has_role, 0, weights.extramural_endpoint);
            assign(&mut raw, &mut has_role, n - 1, weights.extramural_endpoint);
            if n >= 2 {
                assign(&mut raw, &mut has_role, 1, weights.extramural_adjacent);
                assign(&mut raw, &mut has_role, n - 2, weights.extramural_adjacent);
            }
            weights.extramural_pool
        }
    };

    let pool_members: Vec<usize> = (0..n).filter(|&i| !has_role[i]).collect();
    if !pool_members.is_empty() {
        let share = pool / pool_members.len() as f64;
        for i in pool_members {
            raw[i] = share;
        }
    }

    let total: f64 = raw.iter().sum();
    if (total - 1.0).abs() > 1e-9 && total > 0.0 {
        for w in &mut raw {
            *w /= total;
        }
    }

    CreditVector { weights: raw }
}

/// Classify a byline from its per-slot affiliations (index 0 = first
/// author). Intramural means the first and last author carry the same
/// university identifier; a single author is always intramural. Slots
/// with unknown affiliation are treated as external, so a byline whose
/// endpoints cannot be matched is extramural.
pub fn classify_byline(affiliations: &[Option<&str>]) -> BylineKind {
    match affiliations {
        [] => BylineKind::Extramural,
        [_single] => BylineKind::Intramural,
        [first, .., last] => match (first, last) {
            (Some(a), Some(b)) if a == b => BylineKind::Intramural,
            _ => BylineKind::Extramural,
        },
    }
}

/// Credit earned by the author at `position` (1-based) in a byline of
/// `total_authors`, under the given counting convention.
pub fn fractional_share(
    convention: Convention,
    total_authors: u32,
    position: u32,
    kind: BylineKind,
    weights: &CreditWeights,
) -> Option<f64> {
    let vector = match convention {
        Convention::Alphabetical => credit_alphabetical(total_authors),
        Convention::PositionWeighted => credit_positional(total_authors, kind, weights),
    };
    vector.weight(position)
}
