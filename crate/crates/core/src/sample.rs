//! Weighted samples, index schemes and pairwise value/weight sets.
//!
//! Every estimator in the crate consumes a [`WeightedSample`]. The pairwise
//! estimators additionally materialize a [`PairSet`]: one weighted average
//! per index pair, together with the pair weight `w_i + w_j` renormalized
//! over the scheme's index set.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Observations with strictly positive weights that sum to one.
///
/// Raw weights are accepted in any positive scale and normalized on
/// construction, so `weights()` always sums to 1 (up to rounding).
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSample {
    values: Vec<f64>,
    weights: Vec<f64>,
}

impl WeightedSample {
    /// Validates `values` and `weights` and normalizes the weights.
    pub fn new(values: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if values.len() != weights.len() {
            return Err(Error::LengthMismatch {
                values: values.len(),
                weights: weights.len(),
            });
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFiniteValue { index, value });
        }
        let weights = normalize_weights(&weights)?;
        Ok(Self { values, weights })
    }

    /// Sample with every weight equal to `1/n`.
    pub fn equal_weights(values: Vec<f64>) -> Result<Self> {
        let weights = vec![1.0; values.len()];
        Self::new(values, weights)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Normalized weights.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false: construction rejects empty samples.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Same weights, new values. Used by contamination and affine maps.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        if values.len() != self.weights.len() {
            return Err(Error::LengthMismatch {
                values: values.len(),
                weights: self.weights.len(),
            });
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFiniteValue { index, value });
        }
        Ok(Self {
            values,
            weights: self.weights.clone(),
        })
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Divides positive weights by their sum.
pub fn normalize_weights(weights: &[f64]) -> Result<Vec<f64>> {
    if weights.is_empty() {
        return Err(Error::EmptySample);
    }
    if let Some((index, &weight)) = weights.iter().enumerate().find(|(_, w)| !(w.is_finite() && **w > 0.0)) {
        return Err(Error::NonPositiveWeight { index, weight });
    }
    let total: f64 = weights.iter().sum();
    Ok(weights.iter().map(|w| w / total).collect())
}

/// Which `(i, j)` index pairs enter a pairwise estimator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairScheme {
    /// `i < j`
    Strict,
    /// `i <= j`
    WithDiagonal,
    /// every ordered pair
    All,
}

impl PairScheme {
    pub const ALL: [PairScheme; 3] = [PairScheme::Strict, PairScheme::WithDiagonal, PairScheme::All];

    /// Closed-form pair count: `(n²−n)/2`, `(n²+n)/2` or `n²`.
    pub fn pair_count(self, n: usize) -> usize {
        match self {
            PairScheme::Strict => n * n.saturating_sub(1) / 2,
            PairScheme::WithDiagonal => n * (n + 1) / 2,
            PairScheme::All => n * n,
        }
    }

    /// Short name used in CSV output.
    pub fn name(self) -> &'static str {
        match self {
            PairScheme::Strict => "strict",
            PairScheme::WithDiagonal => "diag",
            PairScheme::All => "all",
        }
    }

    /// Index pairs in row-major order.
    pub fn indices(self, n: usize) -> impl Iterator<Item = (usize, usize)> {
        (0..n).flat_map(move |i| {
            let start = match self {
                PairScheme::Strict => i + 1,
                PairScheme::WithDiagonal => i,
                PairScheme::All => 0,
            };
            (start..n).map(move |j| (i, j))
        })
    }
}

impl fmt::Display for PairScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PairScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "strict" | "i<j" => Ok(PairScheme::Strict),
            "diag" | "diagonal" | "i<=j" => Ok(PairScheme::WithDiagonal),
            "all" => Ok(PairScheme::All),
            other => Err(Error::BadParameters(format!("unknown pair scheme '{other}'"))),
        }
    }
}

/// Weighted average of one pair, `(w_i x_i + w_j x_j) / (w_i + w_j)`.
///
/// Equal weights reduce to `(x_i + x_j) / 2` bit-for-bit, and the result is
/// clamped into `[min(x_i, x_j), max(x_i, x_j)]` against rounding.
#[inline]
pub fn pair_average(xi: f64, wi: f64, xj: f64, wj: f64) -> f64 {
    if wi == wj {
        return (xi + xj) / 2.0;
    }
    let v = (wi * xi + wj * xj) / (wi + wj);
    let (lo, hi) = if xi <= xj { (xi, xj) } else { (xj, xi) };
    v.clamp(lo, hi)
}

/// Pairwise weighted averages and renormalized pair weights for one scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct PairSet {
    scheme: PairScheme,
    values: Vec<f64>,
    weights: Vec<f64>,
}

impl PairSet {
    pub fn scheme(&self) -> PairScheme {
        self.scheme
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Pair count `m`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_parts(self) -> (Vec<f64>, Vec<f64>) {
        (self.values, self.weights)
    }
}

/// Enumerates the scheme's pairs in row-major `(i, j)` order.
pub fn build_pairs(sample: &WeightedSample, scheme: PairScheme) -> PairSet {
    let n = sample.len();
    let x = sample.values();
    let w = sample.weights();
    let m = scheme.pair_count(n);
    let mut values = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for (i, j) in scheme.indices(n) {
        values.push(pair_average(x[i], w[i], x[j], w[j]));
        weights.push(w[i] + w[j]);
    }
    let total: f64 = weights.iter().sum();
    for pw in &mut weights {
        *pw /= total;
    }
    PairSet {
        scheme,
        values,
        weights,
    }
}

/// Pair values only, for estimators that ignore pair weights.
pub(crate) fn pair_values(sample: &WeightedSample, scheme: PairScheme) -> Vec<f64> {
    let x = sample.values();
    let w = sample.weights();
    scheme
        .indices(sample.len())
        .map(|(i, j)| pair_average(x[i], w[i], x[j], w[j]))
        .collect()
}

/// Values sorted ascending with their weights carried along, plus the
/// running sum of the sorted weights.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderedWeightedSet {
    values: Vec<f64>,
    weights: Vec<f64>,
    cumulative: Vec<f64>,
}

impl OrderedWeightedSet {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn cumulative(&self) -> &[f64] {
        &self.cumulative
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Stable ascending sort by value; equal values keep their input order.
pub fn order_by_value(values: &[f64], weights: &[f64]) -> Result<OrderedWeightedSet> {
    if values.len() != weights.len() {
        return Err(Error::LengthMismatch {
            values: values.len(),
            weights: weights.len(),
        });
    }
    let mut pairs: Vec<(f64, f64)> = values.iter().copied().zip(weights.iter().copied()).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut acc = 0.0;
    let mut cumulative = Vec::with_capacity(pairs.len());
    for &(_, w) in &pairs {
        acc += w;
        cumulative.push(acc);
    }
    let (values, weights) = pairs.into_iter().unzip();
    Ok(OrderedWeightedSet {
        values,
        weights,
        cumulative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_examples() {
        let s = WeightedSample::new(vec![1.0, 2.0], vec![2.0, 2.0]).unwrap();
        assert_eq!(s.weights(), &[0.5, 0.5]);

        let s = WeightedSample::new(vec![4.0, 3.0, 2.0, 1.0], vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        for (w, expected) in s.weights().iter().zip([0.1, 0.2, 0.3, 0.4]) {
            assert!((w - expected).abs() < 1e-15);
        }
        assert_eq!(s.values(), &[4.0, 3.0, 2.0, 1.0]);
    }

    #[test]
    fn normalize_errors() {
        assert_eq!(
            WeightedSample::new(vec![1.0, 2.0], vec![1.0, -1.0]),
            Err(Error::NonPositiveWeight { index: 1, weight: -1.0 })
        );
        assert!(matches!(
            WeightedSample::new(vec![1.0], vec![0.0]),
            Err(Error::NonPositiveWeight { .. })
        ));
        assert_eq!(WeightedSample::new(vec![], vec![]), Err(Error::EmptySample));
        assert_eq!(
            WeightedSample::new(vec![1.0, 2.0], vec![1.0]),
            Err(Error::LengthMismatch { values: 2, weights: 1 })
        );
        assert!(matches!(
            WeightedSample::new(vec![f64::NAN], vec![1.0]),
            Err(Error::NonFiniteValue { index: 0, .. })
        ));
    }

    #[test]
    fn pair_counts_for_n5() {
        let s = WeightedSample::equal_weights((0..5).map(f64::from).collect()).unwrap();
        assert_eq!(build_pairs(&s, PairScheme::Strict).len(), 10);
        assert_eq!(build_pairs(&s, PairScheme::WithDiagonal).len(), 15);
        assert_eq!(build_pairs(&s, PairScheme::All).len(), 25);
    }

    #[test]
    fn pair_counts_match_closed_form() {
        for n in 1..=50 {
            let s = WeightedSample::equal_weights(vec![0.0; n]).unwrap();
            for scheme in PairScheme::ALL {
                assert_eq!(build_pairs(&s, scheme).len(), scheme.pair_count(n), "n={n} {scheme}");
                assert_eq!(scheme.indices(n).count(), scheme.pair_count(n));
            }
        }
    }

    #[test]
    fn two_point_diagonal_pairs() {
        let s = WeightedSample::new(vec![0.0, 10.0], vec![0.9, 0.1]).unwrap();
        let p = build_pairs(&s, PairScheme::WithDiagonal);
        assert_eq!(p.values(), &[0.0, 1.0, 10.0]);
        for (w, expected) in p.weights().iter().zip([0.6, 1.0 / 3.0, 1.0 / 15.0]) {
            assert!((w - expected).abs() < 1e-15, "{w} vs {expected}");
        }
    }

    #[test]
    fn row_major_order() {
        let idx: Vec<_> = PairScheme::WithDiagonal.indices(3).collect();
        assert_eq!(idx, vec![(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]);
        assert_eq!(PairScheme::Strict.indices(1).count(), 0);
    }

    #[test]
    fn ordering_examples() {
        let o = order_by_value(&[3.0, 1.0, 2.0], &[0.5, 0.2, 0.3]).unwrap();
        assert_eq!(o.values(), &[1.0, 2.0, 3.0]);
        assert_eq!(o.weights(), &[0.2, 0.3, 0.5]);
        assert_eq!(o.cumulative(), &[0.2, 0.5, 1.0]);

        let o = order_by_value(&[2.0, 2.0], &[0.4, 0.6]).unwrap();
        assert_eq!(o.weights(), &[0.4, 0.6]);

        assert!(matches!(order_by_value(&[1.0], &[]), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn ordering_is_identity_on_sorted_input() {
        let v = [1.0, 2.0, 5.0];
        let w = [0.25, 0.25, 0.5];
        let o = order_by_value(&v, &w).unwrap();
        assert_eq!(o.values(), &v);
        assert_eq!(o.weights(), &w);
    }

    #[test]
    fn scheme_names_round_trip() {
        for s in PairScheme::ALL {
            assert_eq!(s.name().parse::<PairScheme>().unwrap(), s);
        }
        assert!("both".parse::<PairScheme>().is_err());
    }
}
