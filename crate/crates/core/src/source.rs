//! Gauss-Markov (AR(1)) test source.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Stationary AR(1) process parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SourceSpec {
    pub rho: f64,
    pub mean: f64,
    pub variance: f64,
}

impl Default for SourceSpec {
    /// Zero mean, unit variance, correlation 0.9.
    fn default() -> Self {
        SourceSpec {
            rho: 0.9,
            mean: 0.0,
            variance: 1.0,
        }
    }
}

impl SourceSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.rho.abs() < 1.0) {
            return Err(Error::Config(format!("source rho must satisfy |rho| < 1, got {}", self.rho)));
        }
        if !(self.variance > 0.0) || !self.variance.is_finite() || !self.mean.is_finite() {
            return Err(Error::Config(format!(
                "source needs a finite mean and positive variance, got mean {} variance {}",
                self.mean, self.variance
            )));
        }
        Ok(())
    }
}

/// Draws `len` samples of the stationary process.
///
/// `x_0 ~ N(mean, variance)` and
/// `x_t = mean + rho (x_{t-1} - mean) + sqrt(variance (1 - rho^2)) w_t`.
pub fn gauss_markov<R: Rng + ?Sized>(spec: &SourceSpec, len: usize, rng: &mut R) -> Result<Vec<f64>> {
    spec.validate()?;
    let mut out = Vec::with_capacity(len);
    let sd = spec.variance.sqrt();
    let innov = (spec.variance * (1.0 - spec.rho * spec.rho)).sqrt();
    let mut prev = 0.0;
    for i in 0..len {
        let w: f64 = rng.sample(StandardNormal);
        prev = if i == 0 { sd * w } else { spec.rho * prev + innov * w };
        out.push(spec.mean + prev);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn moments(x: &[f64]) -> (f64, f64, f64) {
        let n = x.len() as f64;
        let mean = x.iter().sum::<f64>() / n;
        let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        let lag1 = x.windows(2).map(|w| (w[0] - mean) * (w[1] - mean)).sum::<f64>() / (n - 1.0) / var;
        (mean, var, lag1)
    }

    #[test]
    fn white_case() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let spec = SourceSpec { rho: 0.0, ..SourceSpec::default() };
        let x = gauss_markov(&spec, 1_000_000, &mut rng).unwrap();
        let (_, var, lag1) = moments(&x);
        assert!(lag1.abs() < 0.01);
        assert!((var - 1.0).abs() < 0.03);
    }

    #[test]
    fn default_moments_and_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x = gauss_markov(&SourceSpec::default(), 1_000_000, &mut rng).unwrap();
        let (mean, var, lag1) = moments(&x);
        assert!(mean.abs() < 0.05);
        assert!((var - 1.0).abs() < 0.03, "{var}");
        assert!((lag1 - 0.9).abs() < 0.01, "{lag1}");
        // P(|N(0,1)| <= 4) = 0.999937.
        let inside = x.iter().filter(|v| v.abs() <= 4.0).count() as f64 / x.len() as f64;
        assert!(inside > 0.9998, "{inside}");
    }

    #[test]
    fn stationary_halves_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = gauss_markov(&SourceSpec::default(), 400_000, &mut rng).unwrap();
        let (_, v_all, _) = moments(&x);
        let (_, v_half, _) = moments(&x[200_000..]);
        assert!((v_all - v_half).abs() < 0.05);
    }

    #[test]
    fn mean_and_variance_are_applied() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let spec = SourceSpec { rho: 0.5, mean: 3.0, variance: 4.0 };
        let x = gauss_markov(&spec, 400_000, &mut rng).unwrap();
        let (mean, var, _) = moments(&x);
        assert!((mean - 3.0).abs() < 0.05);
        assert!((var - 4.0).abs() < 0.12);
    }

    #[test]
    fn seeded_runs_repeat() {
        let a = gauss_markov(&SourceSpec::default(), 100, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let b = gauss_markov(&SourceSpec::default(), 100, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn invalid_spec() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let bad = SourceSpec { rho: 1.0, ..SourceSpec::default() };
        assert!(gauss_markov(&bad, 10, &mut rng).is_err());
        let bad = SourceSpec { variance: 0.0, ..SourceSpec::default() };
        assert!(gauss_markov(&bad, 10, &mut rng).is_err());
    }
}
