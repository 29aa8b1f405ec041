use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use wzdft::harness::{self, ExperimentConfig, Pipeline, QUICK_BLOCKS};
use wzdft::{best_systematic, make_code, Localizer};

/// Wyner-Ziv coding with real BCH-DFT codes: experiment runner.
#[derive(Parser)]
#[command(name = "wzdft", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Calibrate the threshold and sweep the CEQNR grid, writing CSV + JSON.
    Run {
        #[command(flatten)]
        opts: ConfigArgs,
        /// Use 10000 blocks per grid point.
        #[arg(long)]
        quick: bool,
        /// Output CSV path; the JSON sidecar goes next to it.
        #[arg(long, default_value = "results.csv")]
        out: PathBuf,
    },
    /// Print the calibrated detection threshold.
    Calibrate {
        #[command(flatten)]
        opts: ConfigArgs,
    },
    /// Print the parameters of an (n, k) code and its best systematic pattern.
    CodeInfo {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

/// Config file plus flag overrides.
#[derive(Args)]
struct ConfigArgs {
    /// TOML config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// syndrome, parity, parity-adapted, jscc or frame-reconstruct.
    #[arg(long)]
    pipeline: Option<Pipeline>,
    /// Quantizer bits.
    #[arg(long)]
    bits: Option<u32>,
    /// Quantizer range as `lo,hi`.
    #[arg(long, value_delimiter = ',', num_args = 2, allow_hyphen_values = true)]
    range: Option<Vec<f64>>,
    /// Target probability of correct detection on error-free blocks.
    #[arg(long)]
    pd: Option<f64>,
    #[arg(long)]
    blocks: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated CEQNR grid in dB.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    ceqnr: Option<Vec<f64>>,
    /// music or pgz.
    #[arg(long)]
    localizer: Option<Localizer>,
}

impl ConfigArgs {
    fn load(&self) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::from_toml_file(path)?,
            None => ExperimentConfig::default(),
        };
        if let Some(v) = self.n {
            cfg.n = v;
        }
        if let Some(v) = self.k {
            cfg.k = v;
        }
        if let Some(v) = self.pipeline {
            cfg.pipeline = v;
        }
        if let Some(v) = self.bits {
            cfg.quantizer.bits = v;
        }
        if let Some(v) = &self.range {
            cfg.quantizer.lo = v[0];
            cfg.quantizer.hi = v[1];
        }
        if let Some(v) = self.pd {
            cfg.p_d = v;
        }
        if let Some(v) = self.blocks {
            cfg.blocks = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = &self.ceqnr {
            cfg.ceqnr_db = v.clone();
        }
        if let Some(v) = self.localizer {
            cfg.localizer = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Run { opts, quick, out } => {
            let mut cfg = opts.load()?;
            if quick {
                cfg.blocks = QUICK_BLOCKS;
            }
            let results = harness::run_experiment(&cfg)?;
            harness::write_results(&results, &cfg, &out)
                .with_context(|| format!("writing results to {}", out.display()))?;
            println!("ceqnr_db      mse         p_detect  p_localize  failures  theta");
            for r in &results {
                println!(
                    "{:8.1}  {:11.4e}  {:8.4}  {:10.4}  {:8.4}  {:.4e}",
                    r.ceqnr_db, r.mse, r.p_detect, r.p_localize, r.failure_rate, r.theta
                );
            }
            println!("wrote {} and {}", out.display(), harness::sidecar_path(&out).display());
        }
        Command::Calibrate { opts } => {
            let cfg = opts.load()?;
            println!("{}", harness::calibrate(&cfg)?);
        }
        Command::CodeInfo { n, k } => {
            let code = make_code(n, k)?;
            let p = code.params();
            let sys = best_systematic(&code);
            println!("n = {}, k = {}", p.n, p.k);
            println!("d = {}, t = {}", p.d, p.t);
            println!("alpha = {}, beta = {}", p.alpha, p.beta);
            println!("zero bins = {:?}", code.zero_bins());
            println!("systematic rows = {:?}", sys.systematic_rows());
            println!("parity rows = {:?}", sys.parity_rows());
            println!("gamma = {:.10}", sys.gamma());
            println!("parity variance ratio = {:.10}", sys.parity_variance_ratio());
        }
    }
    Ok(())
}
