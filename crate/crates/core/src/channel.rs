//! Error models for the correlation channel `y = x + e` and for transmission errors.

use rand::seq::index;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Three-component Gaussian mixture for the correlation noise.
///
/// Each sample is `N(0, sigma_e2)` with probability `q1`,
/// `N(0, sigma_e2 + sigma_i2)` with probability `q2` and zero otherwise.
/// `q1 = 1` gives the plain Gaussian channel, `q2 = 0` the Gilbert-Elliott
/// style sparse channel, and both nonzero the Gaussian-Bernoulli-Gaussian one.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationModel {
    pub q1: f64,
    pub q2: f64,
    pub sigma_e2: f64,
    pub sigma_i2: f64,
}

impl CorrelationModel {
    pub fn validate(&self) -> Result<()> {
        let prob = |p: f64| (0.0..=1.0).contains(&p);
        if !prob(self.q1) || !prob(self.q2) || self.q1 + self.q2 > 1.0 {
            return Err(Error::Config(format!(
                "mixture weights need 0 <= q1, q2 and q1 + q2 <= 1, got q1 = {}, q2 = {}",
                self.q1, self.q2
            )));
        }
        if !(self.sigma_e2 >= 0.0) || !(self.sigma_i2 >= 0.0) {
            return Err(Error::Config(format!(
                "variances must be non-negative, got sigma_e2 = {}, sigma_i2 = {}",
                self.sigma_e2, self.sigma_i2
            )));
        }
        if self.q2 > 0.0 && self.sigma_i2 < 10.0 * self.sigma_e2 {
            return Err(Error::Config(format!(
                "impulsive variance sigma_i2 = {} must be at least 10 sigma_e2 = {}",
                self.sigma_i2,
                10.0 * self.sigma_e2
            )));
        }
        Ok(())
    }
}

/// Draws `n` i.i.d. samples from the mixture.
pub fn draw_error<R: Rng + ?Sized>(model: &CorrelationModel, n: usize, rng: &mut R) -> Result<Vec<f64>> {
    model.validate()?;
    let sd1 = model.sigma_e2.sqrt();
    let sd2 = (model.sigma_e2 + model.sigma_i2).sqrt();
    Ok((0..n)
        .map(|_| {
            let u: f64 = rng.gen();
            let z: f64 = rng.sample(StandardNormal);
            if u < model.q1 {
                sd1 * z
            } else if u < model.q1 + model.q2 {
                sd2 * z
            } else {
                0.0
            }
        })
        .collect())
}

/// Exactly `nu` errors at distinct uniformly chosen positions, magnitudes `N(0, sigma_e^2)`.
pub fn draw_sparse_error<R: Rng + ?Sized>(n: usize, nu: usize, sigma_e: f64, rng: &mut R) -> Result<Vec<f64>> {
    let positions = sparse_positions(n, nu, rng)?;
    let mut e = vec![0.0; n];
    for p in positions {
        let z: f64 = rng.sample(StandardNormal);
        e[p] = sigma_e * z;
    }
    Ok(e)
}

/// Exactly `nu` errors of magnitude `amplitude` with random signs.
pub fn draw_sparse_error_fixed<R: Rng + ?Sized>(n: usize, nu: usize, amplitude: f64, rng: &mut R) -> Result<Vec<f64>> {
    let positions = sparse_positions(n, nu, rng)?;
    let mut e = vec![0.0; n];
    for p in positions {
        e[p] = if rng.gen::<bool>() { amplitude } else { -amplitude };
    }
    Ok(e)
}

fn sparse_positions<R: Rng + ?Sized>(n: usize, nu: usize, rng: &mut R) -> Result<Vec<usize>> {
    if nu > n {
        return Err(Error::Config(format!("cannot place {nu} errors in a block of {n}")));
    }
    let mut pos = index::sample(rng, n, nu).into_vec();
    pos.sort_unstable();
    Ok(pos)
}

/// Sorted indices of the nonzero entries.
pub fn support(e: &[f64]) -> Vec<usize> {
    e.iter()
        .enumerate()
        .filter(|(_, v)| **v != 0.0)
        .map(|(i, _)| i)
        .collect()
}
