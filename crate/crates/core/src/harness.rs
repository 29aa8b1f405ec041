//! Monte-Carlo experiment runner.
//!
//! An [`ExperimentConfig`] fixes a code, a pipeline, the quantizer, the
//! correlation channel and the source. [`run_experiment`] calibrates the
//! detection threshold once on error-free blocks, then sweeps the
//! channel-error-to-quantization-noise ratio (CEQNR, `sigma_e^2 / sigma_q^2`)
//! and records one [`ExperimentResult`] per grid point.
//!
//! # Randomness
//!
//! All draws come from ChaCha8 generators seeded with the configured 64-bit
//! seed. The source is a single Gauss-Markov stream (stream id 0) cut into
//! consecutive blocks and shared by every grid point; the calibration source
//! is a second stream (id 1). Channel errors for block `b` at grid point `g`
//! use seed `seed + b` on stream `2 + g`, so results do not depend on thread
//! scheduling.
//!
//! # Output
//!
//! The CSV has the header `ceqnr_db,mse,p_detect,p_localize,failure_rate,theta`.
//! `p_detect` is the fraction of blocks whose detected error count equals the
//! true count. `p_localize` is the fraction where, in addition, the reported
//! location set equals the true one. `failure_rate` counts blocks where the
//! decoder fell back to the side information or clamped the error count.

use std::fs;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{draw_error, draw_sparse_error, draw_sparse_error_fixed, support, CorrelationModel};
use crate::codec;
use crate::decoder::{calibrate_threshold, Localizer};
use crate::dft_code::{best_systematic, make_code, DftCode, Syndrome, SystematicDftCode};
use crate::error::{Error, Result};
use crate::quantizer::{quantize_opt, QuantizerSpec};
use crate::source::{gauss_markov, SourceSpec};

/// Default CEQNR grid in dB.
pub const DEFAULT_GRID_DB: [f64; 11] = [-10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0];

/// Blocks per grid point in quick mode.
pub const QUICK_BLOCKS: usize = 10_000;

const SOURCE_STREAM: u64 = 0;
const CALIBRATION_STREAM: u64 = 1;
const CHANNEL_STREAM_BASE: u64 = 2;

/// End-to-end pipeline under test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pipeline {
    /// Syndrome-approach Wyner-Ziv coding of `n`-sample blocks.
    Syndrome,
    /// Parity-approach Wyner-Ziv coding of `k`-sample blocks.
    Parity,
    /// Parity approach with the error search restricted to systematic rows.
    ParityAdapted,
    /// Joint source-channel coding: errors hit side information and parity.
    Jscc,
    /// Quantized codewords reconstructed through the frame pseudoinverse.
    FrameReconstruct,
}

impl std::str::FromStr for Pipeline {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "syndrome" => Ok(Pipeline::Syndrome),
            "parity" => Ok(Pipeline::Parity),
            "parity-adapted" => Ok(Pipeline::ParityAdapted),
            "jscc" => Ok(Pipeline::Jscc),
            "frame-reconstruct" => Ok(Pipeline::FrameReconstruct),
            other => Err(Error::Config(format!(
                "unknown pipeline {other:?}, expected syndrome, parity, parity-adapted, jscc or frame-reconstruct"
            ))),
        }
    }
}

/// Divisor of the per-block squared error.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MseNormalization {
    /// Divide by the number of source samples per block.
    Source,
    /// Divide by the codeword length `n`.
    Codeword,
}

/// How many errors a sparse channel inserts per block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorCount {
    /// Exactly `errors`.
    Exact,
    /// Uniform over `0 ..= errors`.
    Uniform,
}

/// Magnitude law of sparse errors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Amplitude {
    /// `N(0, sigma_e^2)`.
    Gaussian,
    /// `+- sigma_e` with random sign.
    Fixed,
}

/// Correlation (and, for JSCC, transmission) error model.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ChannelConfig {
    /// A fixed or random number of errors at uniformly drawn positions.
    Sparse {
        errors: usize,
        #[serde(default = "default_count")]
        count: ErrorCount,
        #[serde(default = "default_amplitude")]
        amplitude: Amplitude,
    },
    /// I.i.d. Gaussian mixture; `sigma_i2 = impulse_ratio * sigma_e2`.
    Mixture {
        q1: f64,
        #[serde(default)]
        q2: f64,
        #[serde(default = "default_impulse_ratio")]
        impulse_ratio: f64,
    },
}

fn default_count() -> ErrorCount {
    ErrorCount::Exact
}

fn default_amplitude() -> Amplitude {
    Amplitude::Gaussian
}

fn default_impulse_ratio() -> f64 {
    100.0
}

impl Default for ChannelConfig {
    fn default() -> Self {
        ChannelConfig::Sparse {
            errors: 1,
            count: ErrorCount::Exact,
            amplitude: Amplitude::Gaussian,
        }
    }
}

/// Quantizer settings; `enabled = false` transmits exact values.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuantizerConfig {
    pub enabled: bool,
    pub bits: u32,
    pub lo: f64,
    pub hi: f64,
}

impl Default for QuantizerConfig {
    fn default() -> Self {
        let q = QuantizerSpec::default();
        QuantizerConfig {
            enabled: true,
            bits: q.bits,
            lo: q.lo,
            hi: q.hi,
        }
    }
}

impl QuantizerConfig {
    pub fn spec(&self) -> QuantizerSpec {
        QuantizerSpec {
            bits: self.bits,
            lo: self.lo,
            hi: self.hi,
        }
    }
}

/// Full description of one experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n: usize,
    pub k: usize,
    pub pipeline: Pipeline,
    pub localizer: Localizer,
    pub quantizer: QuantizerConfig,
    pub channel: ChannelConfig,
    pub source: SourceSpec,
    pub ceqnr_db: Vec<f64>,
    pub blocks: usize,
    pub p_d: f64,
    pub calibration_trials: usize,
    pub seed: u64,
    /// Fixed threshold; calibrated when absent.
    pub theta: Option<f64>,
    /// JSCC only: supply the true error locations to the decoder.
    pub oracle_locations: bool,
    /// Pipeline default when absent: `codeword` for JSCC and frame
    /// reconstruction, `source` otherwise.
    pub mse_normalization: Option<MseNormalization>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            n: 7,
            k: 5,
            pipeline: Pipeline::Syndrome,
            localizer: Localizer::Music,
            quantizer: QuantizerConfig::default(),
            channel: ChannelConfig::default(),
            source: SourceSpec::default(),
            ceqnr_db: DEFAULT_GRID_DB.to_vec(),
            blocks: 100_000,
            p_d: 0.9,
            calibration_trials: 10_000,
            seed: 1,
            theta: None,
            oracle_locations: false,
            mse_normalization: None,
        }
    }
}

impl ExperimentConfig {
    /// Reads a TOML config file. Missing keys take their defaults.
    pub fn from_toml_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        toml::from_str(&text).map_err(|e| Error::Format {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }

    pub fn validate(&self) -> Result<()> {
        make_code(self.n, self.k)?;
        if self.blocks == 0 {
            return Err(Error::Config("blocks must be at least 1".into()));
        }
        if self.ceqnr_db.is_empty() {
            return Err(Error::Config("the CEQNR grid is empty".into()));
        }
        if let Some(v) = self.ceqnr_db.iter().find(|v| !v.is_finite()) {
            return Err(Error::Config(format!("CEQNR grid value {v} is not finite")));
        }
        if !(self.p_d > 0.0 && self.p_d <= 1.0) {
            return Err(Error::Config(format!("p_d must be in (0, 1], got {}", self.p_d)));
        }
        if let Some(theta) = self.theta {
            if !(theta >= 0.0) {
                return Err(Error::Config(format!("theta must be non-negative, got {theta}")));
            }
        }
        self.quantizer.spec().validate()?;
        self.source.validate()?;
        if self.oracle_locations && self.pipeline != Pipeline::Jscc {
            return Err(Error::Config("oracle_locations is only supported by the jscc pipeline".into()));
        }
        let domain = self.error_domain();
        match self.channel {
            ChannelConfig::Sparse { errors, .. } => {
                if errors > domain && self.pipeline != Pipeline::FrameReconstruct {
                    return Err(Error::Config(format!(
                        "{errors} errors do not fit in the {domain} positions the {:?} pipeline exposes",
                        self.pipeline
                    )));
                }
            }
            ChannelConfig::Mixture { q1, q2, impulse_ratio } => {
                CorrelationModel {
                    q1,
                    q2,
                    sigma_e2: 1.0,
                    sigma_i2: impulse_ratio,
                }
                .validate()?;
            }
        }
        Ok(())
    }

    fn source_len(&self) -> usize {
        match self.pipeline {
            Pipeline::Syndrome => self.n,
            _ => self.k,
        }
    }

    fn error_domain(&self) -> usize {
        match self.pipeline {
            Pipeline::Syndrome | Pipeline::Jscc => self.n,
            Pipeline::Parity | Pipeline::ParityAdapted => self.k,
            Pipeline::FrameReconstruct => 0,
        }
    }

    pub fn normalization(&self) -> MseNormalization {
        self.mse_normalization.unwrap_or(match self.pipeline {
            Pipeline::Jscc | Pipeline::FrameReconstruct => MseNormalization::Codeword,
            _ => MseNormalization::Source,
        })
    }

    fn quantizer_opt(&self) -> Option<QuantizerSpec> {
        self.quantizer.enabled.then(|| self.quantizer.spec())
    }

    fn needs_threshold(&self) -> bool {
        !(self.pipeline == Pipeline::FrameReconstruct || self.oracle_locations)
    }
}

/// Statistics of one grid point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub ceqnr_db: f64,
    pub mse: f64,
    pub p_detect: f64,
    pub p_localize: f64,
    pub failure_rate: f64,
    pub theta: f64,
}

struct Setup {
    code: DftCode,
    sys: SystematicDftCode,
    q: Option<QuantizerSpec>,
}

impl Setup {
    fn new(cfg: &ExperimentConfig) -> Result<Self> {
        let code = make_code(cfg.n, cfg.k)?;
        let sys = best_systematic(&code);
        Ok(Setup {
            code,
            sys,
            q: cfg.quantizer_opt(),
        })
    }

    /// The syndrome the decoder sees for an error-free block.
    fn clean_syndrome(&self, cfg: &ExperimentConfig, x: &[f64]) -> Result<Syndrome> {
        match cfg.pipeline {
            Pipeline::Syndrome => {
                let sent = codec::wz_syndrome_encode(&self.code, x, self.q.as_ref())?;
                codec::wz_syndrome_error_syndrome(&self.code, &sent, x)
            }
            _ => {
                let p = codec::wz_parity_encode(&self.sys, x, self.q.as_ref())?;
                codec::parity_syndrome(&self.sys, &p, x)
            }
        }
    }
}

fn source_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Calibrates the detection threshold for the configured pipeline.
///
/// Uses `calibration_trials` error-free blocks from the calibration source
/// stream and returns the `p_d`-quantile of the largest covariance eigenvalue.
pub fn calibrate(cfg: &ExperimentConfig) -> Result<f64> {
    cfg.validate()?;
    if cfg.pipeline == Pipeline::FrameReconstruct {
        return Err(Error::Config("the frame-reconstruct pipeline has no detector to calibrate".into()));
    }
    let setup = Setup::new(cfg)?;
    let len = cfg.source_len();
    let mut rng = source_rng(cfg.seed, CALIBRATION_STREAM);
    let stream = gauss_markov(&cfg.source, len * cfg.calibration_trials, &mut rng)?;
    let mut blocks = stream.chunks_exact(len);
    calibrate_threshold(
        |_: &mut ChaCha8Rng| {
            let x = blocks.next().expect("one block per trial");
            setup.clean_syndrome(cfg, x)
        },
        setup.code.params().t,
        cfg.p_d,
        cfg.calibration_trials,
        &mut rng,
    )
}

#[derive(Clone, Copy, Default)]
struct BlockOutcome {
    se: f64,
    detected: bool,
    localized: bool,
    failed: bool,
}

/// Runs the sweep and returns one result per CEQNR grid point.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ExperimentResult>> {
    cfg.validate()?;
    let setup = Setup::new(cfg)?;
    let theta = match (cfg.theta, cfg.needs_threshold()) {
        (_, false) => 0.0,
        (Some(theta), true) => theta,
        (None, true) => calibrate(cfg)?,
    };
    let len = cfg.source_len();
    let stream = gauss_markov(&cfg.source, len * cfg.blocks, &mut source_rng(cfg.seed, SOURCE_STREAM))?;
    let sigma_q2 = cfg.quantizer.spec().noise_var();

    let mut results = Vec::with_capacity(cfg.ceqnr_db.len());
    for (g, &db) in cfg.ceqnr_db.iter().enumerate() {
        let sigma_e2 = 10f64.powf(db / 10.0) * sigma_q2;
        let outcomes: Vec<BlockOutcome> = (0..cfg.blocks)
            .into_par_iter()
            .map(|b| {
                let x = &stream[b * len..(b + 1) * len];
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(b as u64));
                rng.set_stream(CHANNEL_STREAM_BASE + g as u64);
                run_block(cfg, &setup, x, sigma_e2, theta, &mut rng)
            })
            .collect::<Result<_>>()?;

        let blocks = cfg.blocks as f64;
        let mut se = 0.0;
        let (mut det, mut loc, mut fail) = (0usize, 0usize, 0usize);
        for o in &outcomes {
            se += o.se;
            det += o.detected as usize;
            loc += o.localized as usize;
            fail += o.failed as usize;
        }
        results.push(ExperimentResult {
            ceqnr_db: db,
            mse: se / blocks,
            p_detect: det as f64 / blocks,
            p_localize: loc as f64 / blocks,
            failure_rate: fail as f64 / blocks,
            theta,
        });
    }
    Ok(results)
}

fn draw_channel(cfg: &ExperimentConfig, len: usize, sigma_e2: f64, rng: &mut ChaCha8Rng) -> Result<Vec<f64>> {
    match cfg.channel {
        ChannelConfig::Sparse { errors, count, amplitude } => {
            let nu = match count {
                ErrorCount::Exact => errors,
                ErrorCount::Uniform => rand::Rng::gen_range(rng, 0..=errors),
            };
            match amplitude {
                Amplitude::Gaussian => draw_sparse_error(len, nu, sigma_e2.sqrt(), rng),
                Amplitude::Fixed => draw_sparse_error_fixed(len, nu, sigma_e2.sqrt(), rng),
            }
        }
        ChannelConfig::Mixture { q1, q2, impulse_ratio } => draw_error(
            &CorrelationModel {
                q1,
                q2,
                sigma_e2,
                sigma_i2: impulse_ratio * sigma_e2,
            },
            len,
            rng,
        ),
    }
}

fn squared_error(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q).powi(2)).sum()
}

fn run_block(
    cfg: &ExperimentConfig,
    setup: &Setup,
    x: &[f64],
    sigma_e2: f64,
    theta: f64,
    rng: &mut ChaCha8Rng,
) -> Result<BlockOutcome> {
    let n = cfg.n as f64;
    let divisor = match cfg.normalization() {
        MseNormalization::Source => x.len() as f64,
        MseNormalization::Codeword => n,
    };
    let sys = &setup.sys;
    let q = setup.q.as_ref();

    if cfg.pipeline == Pipeline::FrameReconstruct {
        let c = setup.code.encode(x)?;
        let u_hat = setup.code.frame_reconstruct(&quantize_opt(q, &c))?;
        let se = match cfg.normalization() {
            MseNormalization::Codeword => squared_error(&setup.code.encode(&u_hat)?, &c),
            MseNormalization::Source => squared_error(&u_hat, x),
        };
        return Ok(BlockOutcome {
            se: se / divisor,
            detected: true,
            localized: true,
            failed: false,
        });
    }

    let e = draw_channel(cfg, cfg.error_domain(), sigma_e2, rng)?;
    let err_locs = support(&e);
    let (decoded, true_locs) = match cfg.pipeline {
        Pipeline::Syndrome => {
            let y: Vec<f64> = x.iter().zip(&e).map(|(a, b)| a + b).collect();
            let sent = codec::wz_syndrome_encode(&setup.code, x, q)?;
            (codec::wz_syndrome_decode(&setup.code, &sent, &y, theta, cfg.localizer)?, err_locs)
        }
        Pipeline::Parity | Pipeline::ParityAdapted => {
            let y: Vec<f64> = x.iter().zip(&e).map(|(a, b)| a + b).collect();
            let p = codec::wz_parity_encode(sys, x, q)?;
            let adapted = cfg.pipeline == Pipeline::ParityAdapted;
            let mut rows: Vec<usize> = err_locs.iter().map(|&j| sys.systematic_rows()[j]).collect();
            rows.sort_unstable();
            (codec::wz_parity_decode(sys, &p, &y, theta, adapted, cfg.localizer)?, rows)
        }
        Pipeline::Jscc => {
            let y: Vec<f64> = x.iter().zip(sys.systematic_part(&e)).map(|(a, b)| a + b).collect();
            let p = codec::wz_parity_encode(sys, x, q)?;
            let p_tilde: Vec<f64> = p.iter().zip(sys.parity_rows()).map(|(v, &r)| v + e[r]).collect();
            if cfg.oracle_locations {
                let x_hat = codec::jscc_decode_known(sys, &p_tilde, &y, &err_locs)?;
                return Ok(BlockOutcome {
                    se: squared_error(&x_hat, x) / divisor,
                    detected: true,
                    localized: true,
                    failed: false,
                });
            }
            (codec::jscc_decode(sys, &p_tilde, &y, theta, cfg.localizer)?, err_locs)
        }
        Pipeline::FrameReconstruct => unreachable!("handled above"),
    };
    let detected = decoded.detection.count == true_locs.len();
    Ok(BlockOutcome {
        se: squared_error(&decoded.x_hat, x) / divisor,
        detected,
        localized: detected && !decoded.failed && decoded.estimate.locations == true_locs,
        failed: decoded.failed || decoded.detection.clamped,
    })
}

/// Writes the CSV and a JSON sidecar (same path, `.json` extension) holding
/// the full configuration.
pub fn write_results(results: &[ExperimentResult], cfg: &ExperimentConfig, path: &Path) -> Result<()> {
    let io_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source| Error::Io { path, source }
    };
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
    w.write_record(["ceqnr_db", "mse", "p_detect", "p_localize", "failure_rate", "theta"])
        .map_err(|e| csv_error(path, e))?;
    for r in results {
        w.serialize((r.ceqnr_db, r.mse, r.p_detect, r.p_localize, r.failure_rate, r.theta))
            .map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(io_err(path))?;

    let side = sidecar_path(path);
    let json = serde_json::to_string_pretty(&Sidecar {
        version: env!("CARGO_PKG_VERSION"),
        seed: cfg.seed,
        config: cfg,
    })
    .expect("config serializes");
    fs::write(&side, json + "\n").map_err(io_err(&side))
}

#[derive(Serialize)]
struct Sidecar<'a> {
    version: &'a str,
    seed: u64,
    config: &'a ExperimentConfig,
}

/// Path of the JSON sidecar that accompanies a results CSV.
pub fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    Error::Format {
        path: path.to_path_buf(),
        message: e.to_string(),
    }
}

/// Reads a results CSV written by [`write_results`].
pub fn parse_results(path: &Path) -> Result<Vec<ExperimentResult>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_error(path, e))?;
    r.deserialize().map(|row| row.map_err(|e| csv_error(path, e))).collect()
}
