//! Heteroscedastic normal sample designs for the replication study.

use rand_distr::{Distribution, Normal};

use super::rng::{stream, Purpose};
use crate::error::{Error, Result};
use crate::sample::WeightedSample;

/// Per-observation means, standard deviations and raw weights.
///
/// Observation `i` is drawn from `N(mus[i], sigmas[i])`; the weights are
/// normalized when a sample is generated.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSpec {
    pub id: Option<String>,
    mus: Vec<f64>,
    sigmas: Vec<f64>,
    weights: Vec<f64>,
}

impl SampleSpec {
    pub fn new(id: Option<String>, mus: Vec<f64>, sigmas: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        let n = mus.len();
        if n == 0 {
            return Err(Error::EmptySample);
        }
        if sigmas.len() != n || weights.len() != n {
            return Err(Error::BadParameters(format!(
                "sample spec lengths differ: {} means, {} sds, {} weights",
                n,
                sigmas.len(),
                weights.len()
            )));
        }
        if let Some(m) = mus.iter().find(|m| !m.is_finite()) {
            return Err(Error::BadParameters(format!("mean {m} is not finite")));
        }
        if let Some(s) = sigmas.iter().find(|s| !(s.is_finite() && **s > 0.0)) {
            return Err(Error::BadParameters(format!("standard deviation {s} must be > 0")));
        }
        if let Some((index, &weight)) = weights.iter().enumerate().find(|(_, w)| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::NonPositiveWeight { index, weight });
        }
        Ok(Self {
            id,
            mus,
            sigmas,
            weights,
        })
    }

    /// Built-in designs 1..=6. Design 1 has a fixed size of 4 and ignores `n`.
    ///
    /// | id | means      | sds     | raw weights       |
    /// |----|------------|---------|-------------------|
    /// | 1  | 4, 3, 2, 1 | 10, 5, 10, 5 | 1, 2, 3, 4   |
    /// | 2  | 1..n       | 1..n    | 1                 |
    /// | 3  | n..1       | 1..n    | 1                 |
    /// | 4  | 1..n       | 1..n    | 1/i               |
    /// | 5  | n..1       | 1..n    | 1/i               |
    /// | 6  | 5          | 1..n    | 1/i²              |
    pub fn preset(id: u32, n: usize) -> Result<Self> {
        let up: Vec<f64> = (1..=n).map(|i| i as f64).collect();
        let down: Vec<f64> = up.iter().rev().copied().collect();
        let harmonic: Vec<f64> = up.iter().map(|i| 1.0 / i).collect();
        let (mus, sigmas, weights) = match id {
            1 => (
                vec![4.0, 3.0, 2.0, 1.0],
                vec![10.0, 5.0, 10.0, 5.0],
                vec![1.0, 2.0, 3.0, 4.0],
            ),
            2 => (up.clone(), up.clone(), vec![1.0; n]),
            3 => (down, up.clone(), vec![1.0; n]),
            4 => (up.clone(), up.clone(), harmonic),
            5 => (down, up.clone(), harmonic),
            6 => (vec![5.0; n], up.clone(), up.iter().map(|i| 1.0 / (i * i)).collect()),
            other => {
                return Err(Error::BadParameters(format!(
                    "unknown sample design {other} (expected 1..=6)"
                )))
            }
        };
        Self::new(Some(format!("sample{id}")), mus, sigmas, weights)
    }

    pub fn len(&self) -> usize {
        self.mus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mus.is_empty()
    }

    pub fn mus(&self) -> &[f64] {
        &self.mus
    }

    pub fn sigmas(&self) -> &[f64] {
        &self.sigmas
    }

    /// Raw weights as given.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn label(&self) -> &str {
        self.id.as_deref().unwrap_or("custom")
    }

    /// True weighted mean `Σ w_i μ_i / Σ w_i`.
    pub fn true_theta(&self) -> f64 {
        let total: f64 = self.weights.iter().sum();
        self.weights.iter().zip(&self.mus).map(|(w, m)| w * m).sum::<f64>() / total
    }

    /// Variance of the weighted mean, `Σ (w_i σ_i)² / (Σ w_i)²`.
    pub fn true_var(&self) -> f64 {
        let total: f64 = self.weights.iter().sum();
        self.weights
            .iter()
            .zip(&self.sigmas)
            .map(|(w, s)| (w * s).powi(2))
            .sum::<f64>()
            / (total * total)
    }

    /// Draws one replication; observation `i` uses its own stream.
    pub fn generate(&self, seed: u64, replication: u64) -> Result<WeightedSample> {
        let values = self
            .mus
            .iter()
            .zip(&self.sigmas)
            .enumerate()
            .map(|(i, (&mu, &sigma))| {
                let normal = Normal::new(mu, sigma).map_err(|e| Error::BadParameters(e.to_string()))?;
                Ok(normal.sample(&mut stream(seed, Purpose::Observation, 0, replication, i as u64)))
            })
            .collect::<Result<Vec<f64>>>()?;
        WeightedSample::new(values, self.weights.clone())
    }
}

/// Free-function form of [`SampleSpec::generate`].
pub fn generate_sample(spec: &SampleSpec, seed: u64, replication: u64) -> Result<WeightedSample> {
    spec.generate(seed, replication)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample1_constants_are_exact() {
        let s = SampleSpec::preset(1, 99).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.true_theta(), 2.0);
        assert_eq!(s.true_var(), 15.0);
        let x = s.generate(1, 0).unwrap();
        for (w, e) in x.weights().iter().zip([0.1, 0.2, 0.3, 0.4]) {
            assert!((w - e).abs() < 1e-15);
        }
    }

    #[test]
    fn sample6_layout() {
        let s = SampleSpec::preset(6, 5).unwrap();
        assert_eq!(s.mus(), &[5.0; 5]);
        assert_eq!(s.sigmas(), &[1.0, 2.0, 3.0, 4.0, 5.0]);
        assert_eq!(s.weights(), &[1.0, 0.25, 1.0 / 9.0, 1.0 / 16.0, 1.0 / 25.0]);
    }

    #[test]
    fn sample2_small_n() {
        let s = SampleSpec::preset(2, 3).unwrap();
        assert_eq!(s.true_theta(), 2.0);
        assert!((s.true_var() - 14.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn equal_weights_equal_sigma_variance() {
        let s = SampleSpec::new(None, vec![0.0; 8], vec![3.0; 8], vec![1.0; 8]).unwrap();
        assert!((s.true_var() - 9.0 / 8.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_zero_sigma_and_unknown_ids() {
        assert!(matches!(
            SampleSpec::new(None, vec![1.0], vec![0.0], vec![1.0]),
            Err(Error::BadParameters(_))
        ));
        assert!(SampleSpec::preset(7, 5).is_err());
        assert!(SampleSpec::preset(0, 5).is_err());
    }

    #[test]
    fn generation_is_deterministic() {
        let s = SampleSpec::preset(4, 9).unwrap();
        assert_eq!(s.generate(5, 17).unwrap(), s.generate(5, 17).unwrap());
        assert_ne!(s.generate(5, 17).unwrap(), s.generate(5, 18).unwrap());
    }
}
