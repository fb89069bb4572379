//! Distribution families used by the simulation studies.

use rand::Rng;
use rand_distr::{ChiSquared, Distribution, Normal, Poisson, Uniform};

use super::rng::{stream, Purpose};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistributionSpec {
    /// Uniform on `[lo, hi)`.
    Uniform {
        lo: f64,
        hi: f64,
    },
    Normal {
        mean: f64,
        sd: f64,
    },
    ChiSquare {
        df: f64,
    },
    Poisson {
        lambda: f64,
    },
}

impl DistributionSpec {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            DistributionSpec::Uniform { lo, hi } => lo.is_finite() && hi.is_finite() && hi > lo,
            DistributionSpec::Normal { mean, sd } => mean.is_finite() && sd.is_finite() && sd > 0.0,
            DistributionSpec::ChiSquare { df } => df.is_finite() && df > 0.0,
            DistributionSpec::Poisson { lambda } => lambda.is_finite() && lambda > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::BadParameters(format!("invalid distribution {self:?}")))
        }
    }

    pub fn mean(&self) -> f64 {
        match *self {
            DistributionSpec::Uniform { lo, hi } => (lo + hi) / 2.0,
            DistributionSpec::Normal { mean, .. } => mean,
            DistributionSpec::ChiSquare { df } => df,
            DistributionSpec::Poisson { lambda } => lambda,
        }
    }

    pub fn variance(&self) -> f64 {
        match *self {
            DistributionSpec::Uniform { lo, hi } => (hi - lo).powi(2) / 12.0,
            DistributionSpec::Normal { sd, .. } => sd * sd,
            DistributionSpec::ChiSquare { df } => 2.0 * df,
            DistributionSpec::Poisson { lambda } => lambda,
        }
    }

    pub fn sd(&self) -> f64 {
        self.variance().sqrt()
    }

    pub fn label(&self) -> String {
        match *self {
            DistributionSpec::Uniform { lo, hi } => format!("U({lo}, {hi})"),
            DistributionSpec::Normal { mean, sd } => format!("N({mean}, {sd})"),
            DistributionSpec::ChiSquare { df } => format!("ChiSq({df})"),
            DistributionSpec::Poisson { lambda } => format!("Poisson({lambda})"),
        }
    }

    pub fn sampler(&self) -> Result<Sampler> {
        self.validate()?;
        let bad = |e: &dyn std::fmt::Display| Error::BadParameters(e.to_string());
        Ok(match *self {
            DistributionSpec::Uniform { lo, hi } => Sampler::Uniform(Uniform::new(lo, hi).map_err(|e| bad(&e))?),
            DistributionSpec::Normal { mean, sd } => Sampler::Normal(Normal::new(mean, sd).map_err(|e| bad(&e))?),
            DistributionSpec::ChiSquare { df } => Sampler::ChiSquare(ChiSquared::new(df).map_err(|e| bad(&e))?),
            DistributionSpec::Poisson { lambda } => Sampler::Poisson(Poisson::new(lambda).map_err(|e| bad(&e))?),
        })
    }
}

/// A validated, ready-to-draw distribution.
#[derive(Debug, Clone, Copy)]
pub enum Sampler {
    Uniform(Uniform<f64>),
    Normal(Normal<f64>),
    ChiSquare(ChiSquared<f64>),
    Poisson(Poisson<f64>),
}

impl Sampler {
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            Sampler::Uniform(d) => d.sample(rng),
            Sampler::Normal(d) => d.sample(rng),
            Sampler::ChiSquare(d) => d.sample(rng),
            Sampler::Poisson(d) => d.sample(rng),
        }
    }
}

/// `count` draws from one seeded stream.
pub fn sampler(spec: &DistributionSpec, seed: u64, count: usize) -> Result<Vec<f64>> {
    let s = spec.sampler()?;
    let mut rng = stream(seed, Purpose::Sampler, 0, 0, 0);
    Ok((0..count).map(|_| s.draw(&mut rng)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        for spec in [
            DistributionSpec::Uniform { lo: 1.0, hi: 1.0 },
            DistributionSpec::Normal { mean: 0.0, sd: 0.0 },
            DistributionSpec::ChiSquare { df: -1.0 },
            DistributionSpec::Poisson { lambda: 0.0 },
        ] {
            assert!(matches!(sampler(&spec, 1, 3), Err(Error::BadParameters(_))), "{spec:?}");
        }
    }

    #[test]
    fn deterministic_stream() {
        let spec = DistributionSpec::ChiSquare { df: 100.0 };
        assert_eq!(sampler(&spec, 9, 50).unwrap(), sampler(&spec, 9, 50).unwrap());
        assert_ne!(sampler(&spec, 9, 50).unwrap(), sampler(&spec, 10, 50).unwrap());
    }

    #[test]
    fn closed_form_moments() {
        let u = DistributionSpec::Uniform { lo: 50.0, hi: 150.0 };
        assert_eq!(u.mean(), 100.0);
        assert!((u.variance() - 10_000.0 / 12.0).abs() < 1e-9);
        assert_eq!(DistributionSpec::ChiSquare { df: 100.0 }.variance(), 200.0);
        assert_eq!(DistributionSpec::Poisson { lambda: 100.0 }.sd(), 10.0);
    }
}
