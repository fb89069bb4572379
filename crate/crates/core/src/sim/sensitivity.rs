//! Contamination sweep over the twelve distribution/weight cases.
//!
//! Each case draws `n = 100` observations from one of four families and
//! attaches weights that are independent of the values (W1), increase with
//! them (W2) or decrease with them (W3). For every replication the clean
//! weighted mean is the reference; each outlier proportion then contaminates
//! the same clean sample and records `|estimate − reference|`.

use rand_distr::{Distribution, Uniform};
use rayon::prelude::*;

use super::contamination::{inject_outliers, ContaminationSpec, DEFAULT_SHIFT_MULTIPLIER};
use super::dist::DistributionSpec;
use super::metrics::mean_and_variance;
use super::rng::{stream, Purpose};
use crate::error::{Error, Result};
use crate::estimators::{estimate, weighted_mean, EstimatorKind};
use crate::sample::{PairScheme, WeightedSample};

/// Observations per sensitivity sample.
pub const CASE_SIZE: usize = 100;

/// Floor for value-derived weights.
pub const MIN_WEIGHT: f64 = 1e-6;

/// The default proportion grid, 0 to 25% in steps of 5%.
pub const DEFAULT_GRID: [f64; 6] = [0.0, 0.05, 0.10, 0.15, 0.20, 0.25];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightConstruction {
    /// W1: independent `U(10, 100)`.
    Independent,
    /// W2: `value / 100`.
    Increasing,
    /// W3: `3 − value / 100`.
    Decreasing,
}

impl WeightConstruction {
    pub fn label(self) -> &'static str {
        match self {
            WeightConstruction::Independent => "W1",
            WeightConstruction::Increasing => "W2",
            WeightConstruction::Decreasing => "W3",
        }
    }

    /// True for the value-ordered constructions W2 and W3.
    pub fn is_ordered(self) -> bool {
        !matches!(self, WeightConstruction::Independent)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensitivityCase {
    pub id: u32,
    pub distribution: DistributionSpec,
    pub weights: WeightConstruction,
}

impl SensitivityCase {
    /// Cases 1–3 uniform, 4–6 normal, 7–9 chi-square, 10–12 Poisson; within
    /// each block W1, W2, W3.
    pub fn new(id: u32) -> Result<Self> {
        if !(1..=12).contains(&id) {
            return Err(Error::BadCase(id));
        }
        let distribution = match (id - 1) / 3 {
            0 => DistributionSpec::Uniform { lo: 50.0, hi: 150.0 },
            1 => DistributionSpec::Normal { mean: 100.0, sd: 20.0 },
            2 => DistributionSpec::ChiSquare { df: 100.0 },
            _ => DistributionSpec::Poisson { lambda: 100.0 },
        };
        let weights = match (id - 1) % 3 {
            0 => WeightConstruction::Independent,
            1 => WeightConstruction::Increasing,
            _ => WeightConstruction::Decreasing,
        };
        Ok(Self {
            id,
            distribution,
            weights,
        })
    }

    pub fn all() -> Vec<SensitivityCase> {
        (1..=12).map(|id| Self::new(id).expect("ids in range")).collect()
    }

    /// Clean sample for one replication.
    pub fn generate(&self, seed: u64, replication: u64) -> Result<WeightedSample> {
        let draw = self.distribution.sampler()?;
        let ctx = u64::from(self.id);
        let values: Vec<f64> = (0..CASE_SIZE as u64)
            .map(|i| draw.draw(&mut stream(seed, Purpose::Observation, ctx, replication, i)))
            .collect();
        let weights: Vec<f64> = match self.weights {
            WeightConstruction::Independent => {
                let u = Uniform::new(10.0, 100.0).expect("valid bounds");
                (0..CASE_SIZE as u64)
                    .map(|i| u.sample(&mut stream(seed, Purpose::Weight, ctx, replication, i)))
                    .collect()
            }
            WeightConstruction::Increasing => values.iter().map(|v| (v / 100.0).max(MIN_WEIGHT)).collect(),
            WeightConstruction::Decreasing => values.iter().map(|v| (3.0 - v / 100.0).max(MIN_WEIGHT)).collect(),
        };
        WeightedSample::new(values, weights)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SensitivityConfig {
    pub grid: Vec<f64>,
    pub reps: usize,
    pub seed: u64,
    pub kinds: Vec<EstimatorKind>,
    pub shift_multiplier: f64,
}

impl SensitivityConfig {
    /// Default grid and shift, weighted mean plus HL/WHL1/WHL2 for `schemes`.
    pub fn new(reps: usize, seed: u64, schemes: &[PairScheme]) -> Self {
        Self {
            grid: DEFAULT_GRID.to_vec(),
            reps,
            seed,
            kinds: EstimatorKind::sensitivity_roster(schemes),
            shift_multiplier: DEFAULT_SHIFT_MULTIPLIER,
        }
    }
}

/// Average bias of one estimator at one proportion.
#[derive(Debug, Clone, PartialEq)]
pub struct SensitivityRow {
    pub case: u32,
    pub proportion: f64,
    pub estimator: EstimatorKind,
    pub avg_bias: f64,
    /// Standard error of `avg_bias` over replications.
    pub stderr: f64,
    pub reps: usize,
    pub seed: u64,
}

/// Runs one case over the proportion grid. Rows are ordered by proportion,
/// then by `config.kinds`.
pub fn sensitivity_sweep(case_id: u32, config: &SensitivityConfig) -> Result<Vec<SensitivityRow>> {
    let case = SensitivityCase::new(case_id)?;
    if config.reps < 2 {
        return Err(Error::InsufficientReplications(config.reps));
    }
    let specs = config
        .grid
        .iter()
        .map(|&p| ContaminationSpec::new(p, config.shift_multiplier))
        .collect::<Result<Vec<_>>>()?;
    let sd = case.distribution.sd();
    let kinds = &config.kinds;
    let width = specs.len() * kinds.len();

    let per_rep: Vec<Vec<f64>> = (0..config.reps as u64)
        .into_par_iter()
        .map(|r| {
            let clean = case.generate(config.seed, r)?;
            let reference = weighted_mean(&clean);
            let mut biases = Vec::with_capacity(width);
            for spec in &specs {
                let dirty = inject_outliers(&clean, spec, sd, config.seed, u64::from(case.id), r)?;
                for &k in kinds {
                    biases.push((estimate(&dirty, k)? - reference).abs());
                }
            }
            Ok(biases)
        })
        .collect::<Result<_>>()?;

    let mut column = vec![0.0; config.reps];
    let mut rows = Vec::with_capacity(width);
    for (pi, spec) in specs.iter().enumerate() {
        for (ki, &estimator) in kinds.iter().enumerate() {
            let slot = pi * kinds.len() + ki;
            for (c, rep) in column.iter_mut().zip(&per_rep) {
                *c = rep[slot];
            }
            let (avg, var) = mean_and_variance(&column);
            rows.push(SensitivityRow {
                case: case.id,
                proportion: spec.proportion(),
                estimator,
                avg_bias: avg,
                stderr: (var / config.reps as f64).sqrt(),
                reps: config.reps,
                seed: config.seed,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_table() {
        let c = SensitivityCase::new(5).unwrap();
        assert_eq!(c.distribution, DistributionSpec::Normal { mean: 100.0, sd: 20.0 });
        assert_eq!(c.weights, WeightConstruction::Increasing);
        let c = SensitivityCase::new(12).unwrap();
        assert_eq!(c.distribution, DistributionSpec::Poisson { lambda: 100.0 });
        assert_eq!(c.weights, WeightConstruction::Decreasing);
        assert_eq!(SensitivityCase::new(13), Err(Error::BadCase(13)));
        assert_eq!(SensitivityCase::new(0), Err(Error::BadCase(0)));
    }

    #[test]
    fn weights_follow_construction() {
        let c = SensitivityCase::new(2).unwrap();
        let raw = c.generate(3, 0).unwrap();
        // W2 normalizes value/100, so weights are proportional to values
        let ratio = raw.weights()[0] / raw.values()[0];
        for (w, v) in raw.weights().iter().zip(raw.values()) {
            assert!((w / v - ratio).abs() < 1e-12 * ratio);
        }
        let c = SensitivityCase::new(3).unwrap();
        let s = c.generate(3, 0).unwrap();
        let mut order: Vec<usize> = (0..CASE_SIZE).collect();
        order.sort_by(|&a, &b| s.values()[a].total_cmp(&s.values()[b]));
        assert!(order.windows(2).all(|p| s.weights()[p[0]] >= s.weights()[p[1]]));
    }

    #[test]
    fn grid_outside_range_is_rejected() {
        let mut cfg = SensitivityConfig::new(4, 1, &[PairScheme::All]);
        cfg.grid = vec![0.0, 0.3];
        assert_eq!(sensitivity_sweep(1, &cfg), Err(Error::BadProportion(0.3)));
        assert_eq!(sensitivity_sweep(13, &cfg), Err(Error::BadCase(13)));
    }

    #[test]
    fn clean_weighted_mean_has_zero_bias() {
        let mut cfg = SensitivityConfig::new(3, 1, &[PairScheme::All]);
        cfg.grid = vec![0.0, 0.25];
        let rows = sensitivity_sweep(4, &cfg).unwrap();
        assert_eq!(rows.len(), 2 * 4);
        assert_eq!(rows[0].estimator, EstimatorKind::WeightedMean);
        assert_eq!(rows[0].avg_bias, 0.0);
        assert!(rows[4].avg_bias > 10.0);
    }
}
