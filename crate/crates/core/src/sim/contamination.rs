//! Outlier injection: an additive shift on a random subset of observations.

use rand::seq::index;

use super::rng::{stream, Purpose};
use crate::error::{Error, Result};
use crate::sample::WeightedSample;

/// Largest supported outlier proportion.
pub const MAX_PROPORTION: f64 = 0.25;

/// Shift applied to each selected observation, in population standard
/// deviations, unless overridden.
pub const DEFAULT_SHIFT_MULTIPLIER: f64 = 5.0;

/// Human-readable mechanism, recorded in CSV metadata.
pub const MECHANISM: &str =
    "additive one-sided shift x_i + multiplier*population_sd on ceil(p*n) indices drawn uniformly without replacement";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContaminationSpec {
    proportion: f64,
    shift_multiplier: f64,
}

impl ContaminationSpec {
    pub fn new(proportion: f64, shift_multiplier: f64) -> Result<Self> {
        if !(0.0..=MAX_PROPORTION).contains(&proportion) {
            return Err(Error::BadProportion(proportion));
        }
        if !(shift_multiplier.is_finite() && shift_multiplier > 0.0) {
            return Err(Error::BadParameters(format!(
                "shift multiplier {shift_multiplier} must be > 0"
            )));
        }
        Ok(Self {
            proportion,
            shift_multiplier,
        })
    }

    pub fn with_proportion(proportion: f64) -> Result<Self> {
        Self::new(proportion, DEFAULT_SHIFT_MULTIPLIER)
    }

    pub fn proportion(&self) -> f64 {
        self.proportion
    }

    pub fn shift_multiplier(&self) -> f64 {
        self.shift_multiplier
    }

    /// `ceil(p·n)`, with a small guard so that e.g. `0.07 · 100` is 7.
    pub fn count(&self, n: usize) -> usize {
        let raw = self.proportion * n as f64;
        ((raw - 1e-9).ceil().max(0.0) as usize).min(n)
    }
}

/// Shifts `ceil(p·n)` uniformly chosen observations by
/// `shift_multiplier · population_sd`. Weights are untouched.
///
/// `context` separates independent studies sharing a seed (the sensitivity
/// case id, for instance).
pub fn inject_outliers(
    sample: &WeightedSample,
    contamination: &ContaminationSpec,
    population_sd: f64,
    seed: u64,
    context: u64,
    replication: u64,
) -> Result<WeightedSample> {
    let n = sample.len();
    let k = contamination.count(n);
    if k == 0 {
        return Ok(sample.clone());
    }
    let mut rng = stream(
        seed,
        Purpose::Contamination,
        context,
        replication,
        contamination.proportion.to_bits(),
    );
    let shift = contamination.shift_multiplier * population_sd;
    let mut values = sample.values().to_vec();
    for i in index::sample(&mut rng, n, k) {
        values[i] += shift;
    }
    sample.with_values(values)
}
