//! Location estimators: the unweighted and weighted baselines, the classical
//! Hodges–Lehmann estimator, and the two weighted Hodges–Lehmann families.
//!
//! `WHL1` is the plain median of the pairwise weighted averages; `WHL2` is
//! their weighted median with pair weights `w_i + w_j` renormalized over the
//! scheme. Both come in the three index schemes of [`PairScheme`].
//!
//! Conventions:
//!
//! * An even count median averages the two middle order statistics.
//! * The weighted median returns `z_(k+1)` where `k` is the largest count of
//!   leading sorted weights whose sum does not exceed 1/2. With equal weights
//!   and an even count this is the upper-middle element, so it differs from
//!   [`median`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sample::{build_pairs, order_by_value, pair_values, OrderedWeightedSet, PairScheme, WeightedSample};

/// Slack on comparisons of a cumulative weight against 1/2.
///
/// Normalized weights sum to one only up to rounding, so a cumulative sum that
/// is 1/2 in exact arithmetic can land a few ulps either side of it.
pub const HALF_TOLERANCE: f64 = 1e-12;

/// One of the thirteen estimator variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EstimatorKind {
    Mean,
    Median,
    WeightedMean,
    WeightedMedian,
    Hl(PairScheme),
    Whl1(PairScheme),
    Whl2(PairScheme),
}

impl EstimatorKind {
    /// All thirteen variants, baselines first, then HL, WHL1, WHL2 by scheme.
    pub fn all() -> Vec<EstimatorKind> {
        let mut kinds = vec![
            EstimatorKind::Mean,
            EstimatorKind::Median,
            EstimatorKind::WeightedMean,
            EstimatorKind::WeightedMedian,
        ];
        kinds.extend(PairScheme::ALL.map(EstimatorKind::Hl));
        kinds.extend(PairScheme::ALL.map(EstimatorKind::Whl1));
        kinds.extend(PairScheme::ALL.map(EstimatorKind::Whl2));
        kinds
    }

    /// Weighted mean, weighted median, WHL1 and WHL2 for `schemes`: the
    /// columns of the replication-study tables.
    pub fn replication_roster(schemes: &[PairScheme]) -> Vec<EstimatorKind> {
        let mut kinds = vec![EstimatorKind::WeightedMean, EstimatorKind::WeightedMedian];
        kinds.extend(schemes.iter().map(|&s| EstimatorKind::Whl1(s)));
        kinds.extend(schemes.iter().map(|&s| EstimatorKind::Whl2(s)));
        kinds
    }

    /// Weighted mean, HL, WHL1 and WHL2 for `schemes`: the estimators of the
    /// contamination study.
    pub fn sensitivity_roster(schemes: &[PairScheme]) -> Vec<EstimatorKind> {
        let mut kinds = vec![EstimatorKind::WeightedMean];
        kinds.extend(schemes.iter().map(|&s| EstimatorKind::Hl(s)));
        kinds.extend(schemes.iter().map(|&s| EstimatorKind::Whl1(s)));
        kinds.extend(schemes.iter().map(|&s| EstimatorKind::Whl2(s)));
        kinds
    }

    /// Family name without the scheme, e.g. `whl2`.
    pub fn name(self) -> &'static str {
        match self {
            EstimatorKind::Mean => "mean",
            EstimatorKind::Median => "median",
            EstimatorKind::WeightedMean => "weighted_mean",
            EstimatorKind::WeightedMedian => "weighted_median",
            EstimatorKind::Hl(_) => "hl",
            EstimatorKind::Whl1(_) => "whl1",
            EstimatorKind::Whl2(_) => "whl2",
        }
    }

    pub fn scheme(self) -> Option<PairScheme> {
        match self {
            EstimatorKind::Hl(s) | EstimatorKind::Whl1(s) | EstimatorKind::Whl2(s) => Some(s),
            _ => None,
        }
    }

    /// Scheme name, or the empty string for non-pairwise estimators.
    pub fn scheme_name(self) -> &'static str {
        self.scheme().map_or("", PairScheme::name)
    }
}

impl fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.scheme() {
            Some(s) => f.pad(&format!("{}:{}", self.name(), s)),
            None => f.pad(self.name()),
        }
    }
}

impl FromStr for EstimatorKind {
    type Err = Error;

    /// Parses `mean`, `weighted_median`, `whl2:all` and similar.
    fn from_str(s: &str) -> Result<Self> {
        let (family, scheme) = match s.split_once(':') {
            Some((f, sch)) => (f, Some(sch.parse::<PairScheme>()?)),
            None => (s, None),
        };
        let kind = match (family.trim(), scheme) {
            ("mean", None) => EstimatorKind::Mean,
            ("median", None) => EstimatorKind::Median,
            ("weighted_mean", None) => EstimatorKind::WeightedMean,
            ("weighted_median", None) => EstimatorKind::WeightedMedian,
            ("hl", Some(s)) => EstimatorKind::Hl(s),
            ("whl1", Some(s)) => EstimatorKind::Whl1(s),
            ("whl2", Some(s)) => EstimatorKind::Whl2(s),
            _ => return Err(Error::BadParameters(format!("unknown estimator '{s}'"))),
        };
        Ok(kind)
    }
}

/// Median of a slice, reordering it in place.
pub fn median_in_place(values: &mut [f64]) -> Result<f64> {
    let n = values.len();
    if n == 0 {
        return Err(Error::EmptySample);
    }
    let mid = n / 2;
    let (lower, upper_mid, _) = values.select_nth_unstable_by(mid, f64::total_cmp);
    let upper_mid = *upper_mid;
    if n % 2 == 1 {
        return Ok(upper_mid);
    }
    let lower_mid = lower.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok((lower_mid + upper_mid) / 2.0)
}

pub fn mean(sample: &WeightedSample) -> f64 {
    sample.values().iter().sum::<f64>() / sample.len() as f64
}

pub fn median(sample: &WeightedSample) -> f64 {
    let mut v = sample.values().to_vec();
    median_in_place(&mut v).expect("sample is non-empty")
}

/// `Σ w_i x_i` with normalized weights.
pub fn weighted_mean(sample: &WeightedSample) -> f64 {
    sample.values().iter().zip(sample.weights()).map(|(x, w)| w * x).sum()
}

/// Weighted median of an ordered set, `z_(k+1)` with
/// `k = max{k : Σ_{i<=k} ω_(i) <= 1/2}`.
pub fn weighted_median(set: &OrderedWeightedSet) -> Result<f64> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let k = set
        .cumulative()
        .iter()
        .take_while(|&&c| c <= 0.5 + HALF_TOLERANCE)
        .count();
    Ok(set.values()[k.min(set.len() - 1)])
}

/// Sort-then-scan weighted median over unsorted `(value, weight)` pairs.
///
/// Same accumulation order as [`order_by_value`] followed by
/// [`weighted_median`], without building the cumulative vector.
fn weighted_median_of_pairs(mut pairs: Vec<(f64, f64)>) -> Result<f64> {
    if pairs.is_empty() {
        return Err(Error::EmptySet);
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut acc = 0.0;
    for &(value, weight) in &pairs {
        acc += weight;
        if acc > 0.5 + HALF_TOLERANCE {
            return Ok(value);
        }
    }
    Ok(pairs[pairs.len() - 1].0)
}

/// Weighted median of the observations themselves.
pub fn sample_weighted_median(sample: &WeightedSample) -> f64 {
    let pairs = sample
        .values()
        .iter()
        .copied()
        .zip(sample.weights().iter().copied())
        .collect();
    weighted_median_of_pairs(pairs).expect("sample is non-empty")
}

fn empty_pairs(sample: &WeightedSample, scheme: PairScheme) -> Error {
    Error::EmptyPairSet {
        n: sample.len(),
        scheme: scheme.name(),
    }
}

/// Hodges–Lehmann: median of `(x_i + x_j)/2` over the scheme; weights ignored.
pub fn hl(sample: &WeightedSample, scheme: PairScheme) -> Result<f64> {
    let x = sample.values();
    let mut averages: Vec<f64> = scheme.indices(x.len()).map(|(i, j)| (x[i] + x[j]) / 2.0).collect();
    median_in_place(&mut averages).map_err(|_| empty_pairs(sample, scheme))
}

/// Median of the pairwise weighted averages.
pub fn whl1(sample: &WeightedSample, scheme: PairScheme) -> Result<f64> {
    let mut values = pair_values(sample, scheme);
    median_in_place(&mut values).map_err(|_| empty_pairs(sample, scheme))
}

/// Weighted median of the pairwise weighted averages with renormalized
/// pair weights.
pub fn whl2(sample: &WeightedSample, scheme: PairScheme) -> Result<f64> {
    let (values, weights) = build_pairs(sample, scheme).into_parts();
    weighted_median_of_pairs(values.into_iter().zip(weights).collect()).map_err(|_| empty_pairs(sample, scheme))
}

/// WHL2 via the explicit [`order_by_value`] → [`weighted_median`] route.
pub fn whl2_ordered(sample: &WeightedSample, scheme: PairScheme) -> Result<f64> {
    let pairs = build_pairs(sample, scheme);
    let ordered = order_by_value(pairs.values(), pairs.weights())?;
    weighted_median(&ordered).map_err(|_| empty_pairs(sample, scheme))
}

/// Dispatches to the estimator named by `kind`.
pub fn estimate(sample: &WeightedSample, kind: EstimatorKind) -> Result<f64> {
    match kind {
        EstimatorKind::Mean => Ok(mean(sample)),
        EstimatorKind::Median => Ok(median(sample)),
        EstimatorKind::WeightedMean => Ok(weighted_mean(sample)),
        EstimatorKind::WeightedMedian => Ok(sample_weighted_median(sample)),
        EstimatorKind::Hl(s) => hl(sample, s),
        EstimatorKind::Whl1(s) => whl1(sample, s),
        EstimatorKind::Whl2(s) => whl2(sample, s),
    }
}
