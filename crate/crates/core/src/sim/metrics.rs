//! Bias and relative efficiency over seeded replications.

use rayon::prelude::*;

use super::samples::SampleSpec;
use crate::error::{Error, Result};
use crate::estimators::{estimate, EstimatorKind};

/// One estimator's summary over a replication run.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRow {
    pub estimator: EstimatorKind,
    pub n: usize,
    pub replications: usize,
    /// True weighted mean.
    pub theta: f64,
    /// `|mean of estimates − theta|`.
    pub bias: f64,
    /// Unbiased sample variance of the estimates.
    pub var_hat: f64,
    /// Variance of the weighted mean under the generative model.
    pub var_theta: f64,
    /// `100 · var_theta / var_hat`.
    pub relative_efficiency: f64,
    pub seed: u64,
}

/// Mean and unbiased variance, summed in slice order.
pub(crate) fn mean_and_variance(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let ss: f64 = xs.iter().map(|x| (x - mean) * (x - mean)).sum();
    (mean, if xs.len() > 1 { ss / (n - 1.0) } else { 0.0 })
}

/// Runs `reps` replications of `spec` and summarizes every estimator in
/// `kinds`.
///
/// Replications run on the current rayon pool. Estimates are gathered in
/// replication order and reduced sequentially, so the output does not
/// depend on the number of threads.
pub fn run_replications(spec: &SampleSpec, kinds: &[EstimatorKind], reps: usize, seed: u64) -> Result<Vec<MetricsRow>> {
    if reps < 2 {
        return Err(Error::InsufficientReplications(reps));
    }
    let per_rep: Vec<Vec<f64>> = (0..reps as u64)
        .into_par_iter()
        .map(|r| {
            let sample = spec.generate(seed, r)?;
            kinds
                .iter()
                .map(|&k| estimate(&sample, k))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;

    let theta = spec.true_theta();
    let var_theta = spec.true_var();
    let mut column = vec![0.0; reps];
    Ok(kinds
        .iter()
        .enumerate()
        .map(|(k, &estimator)| {
            for (slot, row) in column.iter_mut().zip(&per_rep) {
                *slot = row[k];
            }
            let (mean, var_hat) = mean_and_variance(&column);
            MetricsRow {
                estimator,
                n: spec.len(),
                replications: reps,
                theta,
                bias: (mean - theta).abs(),
                var_hat,
                var_theta,
                relative_efficiency: 100.0 * var_theta / var_hat,
                seed,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_replication_is_rejected() {
        let spec = SampleSpec::preset(2, 4).unwrap();
        assert_eq!(
            run_replications(&spec, &[EstimatorKind::WeightedMean], 1, 1),
            Err(Error::InsufficientReplications(1))
        );
    }

    #[test]
    fn mean_and_variance_small() {
        assert_eq!(mean_and_variance(&[1.0, 2.0, 3.0, 4.0]), (2.5, 5.0 / 3.0));
    }

    #[test]
    fn weighted_mean_is_efficient_against_itself() {
        let spec = SampleSpec::preset(1, 4).unwrap();
        let rows = run_replications(&spec, &[EstimatorKind::WeightedMean], 4000, 11).unwrap();
        let re = rows[0].relative_efficiency;
        assert!((90.0..110.0).contains(&re), "RE {re}");
        assert_eq!(rows[0].theta, 2.0);
        assert_eq!(rows[0].var_theta, 15.0);
    }
}
