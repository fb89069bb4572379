//! Finite-sample breakdown points.
//!
//! Closed forms for the median and the three WHL1 schemes, best/worst-case
//! bounds for weighted medians (observation level or pair level), an
//! exhaustive contamination oracle, and the size tabulation behind the
//! `breakdown` subcommand.

use crate::error::{Error, Result};
use crate::estimators::{estimate, EstimatorKind, HALF_TOLERANCE};
use crate::sample::{build_pairs, normalize_weights, PairScheme, WeightedSample};

/// Largest `n` accepted by [`empirical_breakdown`].
pub const MAX_EXHAUSTIVE_N: usize = 12;

/// Default contamination magnitude for [`empirical_breakdown`].
pub const DEFAULT_MAGNITUDE: f64 = 1e12;

/// Breakdown value: exact, or a `[lower, upper]` bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Breakdown {
    Exact(f64),
    Bounds { lower: f64, upper: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BreakdownReport {
    pub estimator: EstimatorKind,
    pub n: usize,
    /// Number of elements the breakdown fraction is counted over: `n` for
    /// observation-level estimators, the pair count otherwise.
    pub m: usize,
    pub bp: Breakdown,
}

/// Order in which contamination consumes the sorted weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Adversary {
    /// Smallest weights first; gives the upper bound.
    BestCase,
    /// Largest weights first; gives the lower bound.
    WorstCase,
}

/// `floor((n-1)/2) / n`.
pub fn bp_median(n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    ((n - 1) / 2) as f64 / n as f64
}

/// Closed-form WHL1 (equivalently HL) breakdown point. Both the inner and
/// the outer bracket are floors; negative results clamp to zero.
pub fn bp_whl1(n: usize, scheme: PairScheme) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let ni = n as i64;
    let nf = n as f64;
    let k = match scheme {
        PairScheme::Strict => {
            let q = (ni * ni - ni - 2).div_euclid(4) as f64;
            let c = nf - 0.5;
            (c - (c * c - 2.0 * q).sqrt()).floor()
        }
        PairScheme::WithDiagonal => {
            let q = (ni * ni + ni - 2).div_euclid(4) as f64;
            let c = nf + 0.5;
            (c - (c * c - 2.0 * q).sqrt()).floor()
        }
        PairScheme::All => {
            let q = (ni * ni - 1).div_euclid(2) as f64;
            (nf - (nf * nf - q).sqrt()).floor()
        }
    };
    k.max(0.0) / nf
}

/// `max{k <= m-1 : Σ_{i<=k} ω_i < 1/2} / m` for weights already in the
/// order contamination takes them.
pub fn breakdown_kernel(weights_in_order: &[f64]) -> Result<f64> {
    let m = weights_in_order.len();
    if m == 0 {
        return Err(Error::EmptySet);
    }
    let mut acc = 0.0;
    let mut k = 0;
    for &w in &weights_in_order[..m - 1] {
        acc += w;
        if acc < 0.5 - HALF_TOLERANCE {
            k += 1;
        } else {
            break;
        }
    }
    Ok(k as f64 / m as f64)
}

/// Breakdown of a weighted median whose contaminated elements take the
/// weights in the adversary's order.
pub fn bp_weighted_median(weights: &[f64], adversary: Adversary) -> Result<f64> {
    let mut sorted = weights.to_vec();
    match adversary {
        Adversary::BestCase => sorted.sort_by(f64::total_cmp),
        Adversary::WorstCase => sorted.sort_by(|a, b| b.total_cmp(a)),
    }
    breakdown_kernel(&sorted)
}

fn bounds_of(weights: &[f64]) -> Result<Breakdown> {
    Ok(Breakdown::Bounds {
        lower: bp_weighted_median(weights, Adversary::WorstCase)?,
        upper: bp_weighted_median(weights, Adversary::BestCase)?,
    })
}

pub fn median_report(n: usize) -> BreakdownReport {
    BreakdownReport {
        estimator: EstimatorKind::Median,
        n,
        m: n,
        bp: Breakdown::Exact(bp_median(n)),
    }
}

pub fn whl1_report(n: usize, scheme: PairScheme) -> BreakdownReport {
    BreakdownReport {
        estimator: EstimatorKind::Whl1(scheme),
        n,
        m: scheme.pair_count(n),
        bp: Breakdown::Exact(bp_whl1(n, scheme)),
    }
}

/// Observation-level bounds for the sample weighted median.
pub fn bp_sample_weighted_median(sample: &WeightedSample) -> BreakdownReport {
    BreakdownReport {
        estimator: EstimatorKind::WeightedMedian,
        n: sample.len(),
        m: sample.len(),
        bp: bounds_of(sample.weights()).expect("sample is non-empty"),
    }
}

/// Pair-level `[lower, upper]` bounds for WHL2 from the sample's
/// renormalized pair weights.
pub fn bp_whl2(sample: &WeightedSample, scheme: PairScheme) -> Result<BreakdownReport> {
    let pairs = build_pairs(sample, scheme);
    if pairs.is_empty() {
        return Err(Error::EmptyPairSet {
            n: sample.len(),
            scheme: scheme.name(),
        });
    }
    Ok(BreakdownReport {
        estimator: EstimatorKind::Whl2(scheme),
        n: sample.len(),
        m: pairs.len(),
        bp: bounds_of(pairs.weights())?,
    })
}

/// Lexicographic k-subsets of `0..n`.
struct Combinations {
    n: usize,
    next: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            next: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let k = current.len();
        let mut idx = current.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if idx[i] < self.n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                self.next = Some(idx);
                break;
            }
        }
        Some(current)
    }
}

/// Exhaustive contamination oracle.
///
/// Returns the largest `k/n` such that every choice of `k` observations,
/// replaced by `+magnitude`, leaves the estimate bounded. A subset breaks the
/// estimator when the estimate moves by more than `1e-6 * magnitude` between
/// contamination at `magnitude` and at `10 * magnitude`; an estimate pinned
/// to clean order statistics does not move at all.
pub fn empirical_breakdown(sample: &WeightedSample, kind: EstimatorKind, magnitude: f64) -> Result<f64> {
    let n = sample.len();
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::SampleTooLarge {
            n,
            max: MAX_EXHAUSTIVE_N,
        });
    }
    if !(magnitude.is_finite() && magnitude > 0.0) {
        return Err(Error::BadParameters(format!("contamination magnitude {magnitude}")));
    }
    let far = 10.0 * magnitude;
    let threshold = 1e-6 * magnitude;
    let clean = sample.values();
    let mut best = 0;
    let mut buf = clean.to_vec();
    for k in 1..n {
        let mut all_bounded = true;
        for subset in Combinations::new(n, k) {
            buf.copy_from_slice(clean);
            for &i in &subset {
                buf[i] = magnitude;
            }
            let near = estimate(&sample.with_values(buf.clone())?, kind)?;
            for &i in &subset {
                buf[i] = far;
            }
            let farther = estimate(&sample.with_values(buf.clone())?, kind)?;
            if (farther - near).abs() > threshold {
                all_bounded = false;
                break;
            }
        }
        if all_bounded {
            best = k;
        }
    }
    Ok(best as f64 / n as f64)
}

/// Weight vectors used to tabulate breakdown bounds by sample size.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightFamily {
    Equal,
    /// Increasing arithmetic weights `(1-t) + t*i`, `i = 0..n`, swept over
    /// `t = j/grid` for `j = 0..grid`. `t = 0` is the equal-weight case and
    /// `t → 1` drives the smallest weight to zero.
    Arithmetic {
        grid: usize,
    },
    /// Row `n` uses the first `n` weights.
    Explicit(Vec<f64>),
}

impl WeightFamily {
    pub const DEFAULT_GRID: usize = 100;

    pub fn explicit(weights: Vec<f64>) -> Result<Self> {
        normalize_weights(&weights)?;
        Ok(WeightFamily::Explicit(weights))
    }

    /// Short label for CSV metadata.
    pub fn describe(&self) -> String {
        match self {
            WeightFamily::Equal => "equal".to_string(),
            WeightFamily::Arithmetic { grid } => format!("arithmetic (1-t)+t*i, t=j/{grid}, j=0..{grid}"),
            WeightFamily::Explicit(w) => format!("explicit ({} weights)", w.len()),
        }
    }

    /// Raw (unnormalized) weight vectors for sample size `n`.
    pub fn vectors(&self, n: usize) -> Result<Vec<Vec<f64>>> {
        match self {
            WeightFamily::Equal => Ok(vec![vec![1.0; n]]),
            WeightFamily::Arithmetic { grid } => {
                if *grid < 1 {
                    return Err(Error::BadParameters("arithmetic grid must be >= 1".into()));
                }
                Ok((0..*grid)
                    .map(|j| {
                        let t = j as f64 / *grid as f64;
                        (0..n).map(|i| (1.0 - t) + t * i as f64).collect()
                    })
                    .collect())
            }
            WeightFamily::Explicit(w) => {
                if w.len() < n {
                    return Err(Error::BadParameters(format!(
                        "explicit family has {} weights, row n = {n} needs {n}",
                        w.len()
                    )));
                }
                Ok(vec![w[..n].to_vec()])
            }
        }
    }
}

/// One row of the breakdown table.
#[derive(Debug, Clone, PartialEq)]
pub struct BreakdownRow {
    pub n: usize,
    pub median: f64,
    /// Observation-level weighted-median bounds.
    pub weighted_median: (f64, f64),
    /// Strict, with-diagonal, all.
    pub pairs: [usize; 3],
    pub whl1: [f64; 3],
    /// `None` when the scheme has no pairs (`n = 1`, strict).
    pub whl2: [Option<(f64, f64)>; 3],
}

impl BreakdownRow {
    pub fn reports(&self) -> Vec<BreakdownReport> {
        let mut out = vec![
            median_report(self.n),
            BreakdownReport {
                estimator: EstimatorKind::WeightedMedian,
                n: self.n,
                m: self.n,
                bp: Breakdown::Bounds {
                    lower: self.weighted_median.0,
                    upper: self.weighted_median.1,
                },
            },
        ];
        out.extend(PairScheme::ALL.iter().map(|&s| whl1_report(self.n, s)));
        for (idx, &s) in PairScheme::ALL.iter().enumerate() {
            if let Some((lower, upper)) = self.whl2[idx] {
                out.push(BreakdownReport {
                    estimator: EstimatorKind::Whl2(s),
                    n: self.n,
                    m: self.pairs[idx],
                    bp: Breakdown::Bounds { lower, upper },
                });
            }
        }
        out
    }
}

fn widen(acc: Option<(f64, f64)>, bp: Breakdown) -> Option<(f64, f64)> {
    let Breakdown::Bounds { lower, upper } = bp else {
        return acc;
    };
    Some(match acc {
        None => (lower, upper),
        Some((lo, hi)) => (lo.min(lower), hi.max(upper)),
    })
}

/// Breakdown properties for `n = 1..=n_max`. Weighted-median and WHL2
/// bounds are the widest `[min lower, max upper]` over the family's vectors.
pub fn bp_table(n_max: usize, family: &WeightFamily) -> Result<Vec<BreakdownRow>> {
    if n_max == 0 {
        return Err(Error::BadParameters("n_max must be >= 1".into()));
    }
    (1..=n_max)
        .map(|n| {
            let mut wm = None;
            let mut whl2 = [None; 3];
            for raw in family.vectors(n)? {
                let sample = WeightedSample::new(vec![0.0; n], raw)?;
                wm = widen(wm, bp_sample_weighted_median(&sample).bp);
                for (idx, &scheme) in PairScheme::ALL.iter().enumerate() {
                    if scheme.pair_count(n) > 0 {
                        whl2[idx] = widen(whl2[idx], bp_whl2(&sample, scheme)?.bp);
                    }
                }
            }
            Ok(BreakdownRow {
                n,
                median: bp_median(n),
                weighted_median: wm.expect("family yields at least one vector"),
                pairs: PairScheme::ALL.map(|s| s.pair_count(n)),
                whl1: PairScheme::ALL.map(|s| bp_whl1(n, s)),
                whl2,
            })
        })
        .collect()
}
