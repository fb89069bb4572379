//! Seeded Monte Carlo engine: samplers, sample designs, replication
//! metrics, outlier injection and the contamination sweep.

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20240101;

pub mod contamination;
pub mod dist;
pub mod metrics;
pub mod rng;
pub mod samples;
pub mod sensitivity;

pub use contamination::{inject_outliers, ContaminationSpec};
pub use dist::{sampler, DistributionSpec};
pub use metrics::{run_replications, MetricsRow};
pub use samples::{generate_sample, SampleSpec};
pub use sensitivity::{sensitivity_sweep, SensitivityCase, SensitivityConfig, SensitivityRow, WeightConstruction};
