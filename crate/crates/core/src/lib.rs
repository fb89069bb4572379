//! Weighted Hodges–Lehmann location estimators.
//!
//! Given observations `x_i` with positive weights `w_i`, the pairwise
//! weighted averages `(w_i x_i + w_j x_j) / (w_i + w_j)` generalize the
//! Walsh averages behind the classical Hodges–Lehmann estimator. Two
//! estimators are built from them:
//!
//! * **WHL1** — the ordinary median of the pairwise averages;
//! * **WHL2** — their weighted median, each pair weighted by `w_i + w_j`.
//!
//! Each comes in three pair schemes ([`PairScheme`]): strict `i < j`,
//! with the diagonal `i ≤ j`, and all ordered pairs.
//!
//! The crate also provides the baseline estimators, finite-sample breakdown
//! points ([`breakdown`]), a seeded Monte Carlo harness ([`sim`]) and CSV
//! output helpers ([`report`]).
//!
//! ```
//! use whl::{estimate, EstimatorKind, PairScheme, WeightedSample};
//!
//! let s = WeightedSample::new(vec![1.0, 2.0, 10.0], vec![1.0, 1.0, 2.0]).unwrap();
//! let whl2 = estimate(&s, EstimatorKind::Whl2(PairScheme::Strict)).unwrap();
//! assert!(whl2 >= 1.0 && whl2 <= 10.0);
//! ```

pub mod breakdown;
pub mod error;
pub mod estimators;
pub mod report;
pub mod sample;
pub mod sim;

pub use breakdown::{
    bp_median, bp_table, bp_weighted_median, bp_whl1, bp_whl2, empirical_breakdown, Adversary, Breakdown,
    BreakdownReport, BreakdownRow, WeightFamily,
};
pub use error::{Error, Result};
pub use estimators::{
    estimate, hl, mean, median, sample_weighted_median, weighted_mean, weighted_median, whl1, whl2, EstimatorKind,
};
pub use sample::{build_pairs, order_by_value, pair_average, OrderedWeightedSet, PairScheme, PairSet, WeightedSample};
