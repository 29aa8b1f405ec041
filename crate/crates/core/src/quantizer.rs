//! Uniform scalar quantization.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A uniform midrise quantizer with `2^bits` cells covering `[lo, hi)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuantizerSpec {
    pub bits: u32,
    pub lo: f64,
    pub hi: f64,
}

impl Default for QuantizerSpec {
    /// Six bits over `[-4, 4]`, a step of `0.125`.
    fn default() -> Self {
        QuantizerSpec {
            bits: 6,
            lo: -4.0,
            hi: 4.0,
        }
    }
}

impl QuantizerSpec {
    pub fn new(bits: u32, lo: f64, hi: f64) -> Result<Self> {
        let spec = QuantizerSpec { bits, lo, hi };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite()) || self.hi <= self.lo {
            return Err(Error::Config(format!(
                "quantizer range [{}, {}] is empty or not finite",
                self.lo, self.hi
            )));
        }
        if self.bits == 0 || self.bits > 52 {
            return Err(Error::Config(format!(
                "quantizer bits must be in 1..=52, got {}",
                self.bits
            )));
        }
        Ok(())
    }

    /// Cell width `(hi - lo) / 2^bits`.
    pub fn delta(&self) -> f64 {
        (self.hi - self.lo) / (1u64 << self.bits) as f64
    }

    /// Noise variance `delta^2 / 12` of a fine uniform quantizer.
    ///
    /// ```
    /// let q = wzdft::QuantizerSpec::default();
    /// assert!((q.noise_var() - 1.3021e-3).abs() < 1e-7);
    /// ```
    pub fn noise_var(&self) -> f64 {
        let d = self.delta();
        d * d / 12.0
    }

    /// Maps one sample to the center of its cell, saturating outside the range.
    pub fn quantize_sample(&self, x: f64) -> f64 {
        let cells = 1u64 << self.bits;
        let delta = self.delta();
        let idx = ((x - self.lo) / delta).floor();
        let idx = if idx.is_nan() {
            0.0
        } else {
            idx.clamp(0.0, (cells - 1) as f64)
        };
        self.lo + (idx + 0.5) * delta
    }

    pub fn quantize(&self, x: &[f64]) -> Vec<f64> {
        x.iter().map(|&v| self.quantize_sample(v)).collect()
    }
}

/// Quantizes a vector, or passes it through when no quantizer is configured.
pub fn quantize_opt(spec: Option<&QuantizerSpec>, x: &[f64]) -> Vec<f64> {
    match spec {
        Some(q) => q.quantize(x),
        None => x.to_vec(),
    }
}
