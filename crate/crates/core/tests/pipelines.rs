//! Statistical end-to-end checks of the experiment harness.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use wzdft::harness::{run_experiment, Amplitude, ChannelConfig, ErrorCount, ExperimentConfig, Pipeline};
use wzdft::{best_systematic, make_code, QuantizerSpec};

fn config(errors: usize, grid: &[f64]) -> ExperimentConfig {
    ExperimentConfig {
        n: 7,
        k: 5,
        pipeline: Pipeline::Syndrome,
        channel: ChannelConfig::Sparse { errors, count: ErrorCount::Exact, amplitude: Amplitude::Gaussian },
        ceqnr_db: grid.to_vec(),
        blocks: 10_000,
        seed: 11,
        ..ExperimentConfig::default()
    }
}

#[test]
fn false_alarms_obey_the_quantization_bound() {
    // With no correlation errors the syndrome seen by the decoder is the
    // syndrome of the packed quantization noise, whose energy is at most
    // delta^2 / n. A false alarm on a one-error code corrects one sample by
    // the least-squares magnitude, bounded by that energy over the squared
    // norm d / n of a parity-check column. Each false alarm therefore costs
    // at most delta^2 / (d n) in per-sample MSE.
    let cfg = config(0, &[20.0]);
    let r = run_experiment(&cfg).unwrap().remove(0);
    let delta = QuantizerSpec::default().delta();
    let false_alarm = 1.0 - r.p_detect;
    assert!((false_alarm - 0.1).abs() <= 0.02, "false-alarm rate {false_alarm}");
    let bound = false_alarm * delta * delta / (2.0 * 7.0);
    assert!(r.mse <= bound, "mse {} above bound {bound}", r.mse);
    assert!(r.mse < 1e-4, "mse {}", r.mse);
}

#[test]
fn large_single_errors_are_detected_and_localized() {
    let res = run_experiment(&config(1, &[30.0, 40.0])).unwrap();
    for r in &res {
        assert!(r.p_detect >= 0.9, "{r:?}");
    }
    assert!(res[1].p_localize >= 0.95, "{:?}", res[1]);
}

#[test]
fn localization_improves_with_ceqnr() {
    let res = run_experiment(&config(1, &[0.0, 10.0, 20.0, 30.0, 40.0])).unwrap();
    for w in res.windows(2) {
        assert!(w[1].p_localize >= w[0].p_localize - 0.02, "{:?} then {:?}", w[0], w[1]);
    }
}

#[test]
fn parity_variance_follows_gamma() {
    let sys = best_systematic(&make_code(7, 5).unwrap());
    let predicted = (sys.gamma() * 7.0 - 5.0) / 2.0;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let trials = 100_000;
    let mut sum_sq = 0.0;
    for _ in 0..trials {
        let x: Vec<f64> = (0..5).map(|_| StandardNormal.sample(&mut rng)).collect();
        sum_sq += sys.parity_of(&x).unwrap().iter().map(|p| p * p).sum::<f64>();
    }
    let measured = sum_sq / (2.0 * trials as f64);
    assert!((measured / predicted - 1.0).abs() < 0.03, "measured {measured}, predicted {predicted}");
}
