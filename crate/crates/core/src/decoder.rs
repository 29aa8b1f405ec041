//! Syndrome decoding in the presence of quantization noise.
//!
//! The decoder follows the Peterson-Gorenstein-Zierler outline with two
//! modifications for noisy syndromes: the number of errors is the number of
//! eigenvalues of the syndrome covariance above a calibrated threshold, and
//! locations may be found either from the error-locator polynomial or by
//! subspace (MUSIC) projection. Magnitudes come from least squares.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dft_code::{DftCode, Syndrome};
use crate::error::{Error, Result};
use crate::numerics::{hermitian_eig, lstsq, solve, CMat};

/// Smallest number of error-free trials accepted for threshold calibration.
pub const MIN_CALIBRATION_TRIALS: usize = 1000;

/// Relative pivot tolerance of the error-locator system.
pub const PGZ_PIVOT_TOL: f64 = 1e-12;

/// Error-location method.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Localizer {
    /// Subspace projection onto the noise eigenvectors.
    #[default]
    Music,
    /// Roots of the error-locator polynomial.
    Pgz,
}

impl std::str::FromStr for Localizer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "music" => Ok(Localizer::Music),
            "pgz" => Ok(Localizer::Pgz),
            other => Err(Error::Config(format!("unknown localizer {other:?}, expected music or pgz"))),
        }
    }
}

/// Estimated error pattern of one block.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ErrorEstimate {
    /// Estimated number of errors, at most `t`.
    pub count: usize,
    /// Sorted sample positions.
    pub locations: Vec<usize>,
    /// Real error values at `locations`.
    pub magnitudes: Vec<f64>,
    /// Set when more than `t` eigenvalues exceeded the threshold.
    pub clamped: bool,
}

/// Outcome of the eigenvalue detector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Detection {
    pub count: usize,
    pub clamped: bool,
}

/// The `m x (d - m + 1)` Hankel matrix with entry `(i, j) = s[i + j]`.
///
/// ```
/// use num_complex::Complex64;
/// let s: Vec<Complex64> = (1..=5).map(|v| Complex64::new(v as f64, 0.0)).collect();
/// let sm = wzdft::decoder::syndrome_matrix(&s, 3).unwrap();
/// assert_eq!((sm.rows(), sm.cols()), (3, 3));
/// assert_eq!(sm[(2, 0)].re, 3.0);
/// assert_eq!(sm[(2, 2)].re, 5.0);
/// ```
pub fn syndrome_matrix(s: &[Complex64], m: usize) -> Result<CMat> {
    let d = s.len();
    if m == 0 || m > d {
        return Err(Error::Dimension(format!(
            "syndrome matrix order {m} is outside 1..={d}"
        )));
    }
    Ok(CMat::from_fn(m, d - m + 1, |i, j| s[i + j]))
}

/// `S S^H`.
pub fn covariance(s: &CMat) -> CMat {
    s.matmul(&s.adjoint()).expect("S and S^H are always conformable")
}

fn covariance_of(s: &[Complex64], t: usize) -> Result<CMat> {
    Ok(covariance(&syndrome_matrix(s, t + 1)?))
}

/// Largest eigenvalue of the order-`t+1` syndrome covariance.
pub fn lambda_max(s: &[Complex64], t: usize) -> Result<f64> {
    Ok(hermitian_eig(&covariance_of(s, t)?)?.values[0])
}

/// The empirical `p_d`-quantile of `lambda_max` over error-free syndromes.
///
/// `pipeline` must produce the syndrome the target decoder would see for a
/// block without correlation or channel errors, so that only quantization
/// noise remains. The returned threshold is the `ceil(p_d N)`-th smallest
/// statistic, so at least a fraction `p_d` of the trials fall at or below it.
pub fn calibrate_threshold<R, F>(mut pipeline: F, t: usize, p_d: f64, trials: usize, rng: &mut R) -> Result<f64>
where
    R: Rng + ?Sized,
    F: FnMut(&mut R) -> Result<Syndrome>,
{
    if trials < MIN_CALIBRATION_TRIALS {
        return Err(Error::Config(format!(
            "threshold calibration needs at least {MIN_CALIBRATION_TRIALS} trials, got {trials}"
        )));
    }
    if !(p_d > 0.0 && p_d <= 1.0) {
        return Err(Error::Config(format!("detection probability must be in (0, 1], got {p_d}")));
    }
    let mut stats = Vec::with_capacity(trials);
    for _ in 0..trials {
        let s = pipeline(rng)?;
        stats.push(lambda_max(&s, t)?);
    }
    stats.sort_by(f64::total_cmp);
    let idx = ((p_d * trials as f64).ceil() as usize).clamp(1, trials) - 1;
    Ok(stats[idx])
}

/// Counts covariance eigenvalues above `theta`, clamped to `t`.
pub fn detect_errors(s: &[Complex64], theta: f64, t: usize) -> Result<Detection> {
    if t == 0 {
        return Ok(Detection { count: 0, clamped: false });
    }
    let eig = hermitian_eig(&covariance_of(s, t)?)?;
    let raw = eig.values.iter().filter(|&&l| l > theta).count();
    Ok(Detection {
        count: raw.min(t),
        clamped: raw > t,
    })
}

/// Classic PGZ error count: the largest `nu <= t` whose `nu x nu` syndrome
/// matrix is nonsingular at relative pivot tolerance `tol`.
pub fn pgz_rank(s: &[Complex64], t: usize, tol: f64) -> usize {
    (1..=t)
        .rev()
        .find(|&nu| {
            let m = CMat::from_fn(nu, nu, |i, j| s[i + j]);
            solve(&m, &CMat::identity(nu), tol).is_ok()
        })
        .unwrap_or(0)
}

fn root(n: usize, i: usize) -> Complex64 {
    Complex64::from_polar(1.0, -2.0 * PI * i as f64 / n as f64)
}

fn candidates(n: usize, nu: usize, excluded: &[usize]) -> Result<Vec<usize>> {
    let cand: Vec<usize> = (0..n).filter(|i| !excluded.contains(i)).collect();
    if cand.len() < nu {
        return Err(Error::Localization(format!(
            "{nu} errors cannot be placed among {} candidate positions",
            cand.len()
        )));
    }
    Ok(cand)
}

/// The `nu` candidates with the smallest score; ties go to the lower index.
fn smallest(cand: &[usize], score: &[f64], nu: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..cand.len()).collect();
    order.sort_by(|&a, &b| score[a].total_cmp(&score[b]).then(cand[a].cmp(&cand[b])));
    let mut locs: Vec<usize> = order[..nu].iter().map(|&o| cand[o]).collect();
    locs.sort_unstable();
    locs
}

fn check_nu(nu: usize, t: usize) -> Result<()> {
    if nu == 0 || nu > t {
        return Err(Error::Localization(format!("error count {nu} is outside 1..={t}")));
    }
    Ok(())
}

/// Locates `nu` errors from the error-locator polynomial.
///
/// Solves `sum_{l=1}^{nu} Lambda_l s_{j-l} = -s_j` for `j = nu+1 ..= 2 nu`
/// (one-based), then evaluates `Lambda(x) = 1 + sum Lambda_l x^l` at the
/// inverse roots `exp(+j 2 pi i / n)` of every candidate position `i` and keeps
/// the `nu` smallest moduli.
pub fn localize_pgz(s: &[Complex64], nu: usize, n: usize, excluded: &[usize]) -> Result<Vec<usize>> {
    check_nu(nu, s.len() / 2)?;
    let cand = candidates(n, nu, excluded)?;
    // Zero-based: rows j = nu..2nu-1, columns l = 1..=nu use s[j - l].
    let a = CMat::from_fn(nu, nu, |r, c| s[nu + r - (c + 1)]);
    let b = CMat::from_fn(nu, 1, |r, _| -s[nu + r]);
    let lambda = solve(&a, &b, PGZ_PIVOT_TOL)
        .map_err(|e| Error::Localization(format!("error-locator system: {e}")))?
        .column(0);
    let score: Vec<f64> = cand
        .iter()
        .map(|&i| {
            let x = root(n, i).conj();
            let mut acc = Complex64::new(1.0, 0.0);
            let mut p = Complex64::new(1.0, 0.0);
            for l in &lambda {
                p *= x;
                acc += l * p;
            }
            acc.norm()
        })
        .collect();
    Ok(smallest(&cand, &score, nu))
}

/// Locates `nu` errors by projecting steering vectors onto the noise subspace.
///
/// The noise subspace is spanned by the `t + 1 - nu` eigenvectors of the
/// order-`t+1` covariance with the smallest eigenvalues. A candidate `i` scores
/// `sum_u |u^H g(i)|^2` with `g(i) = [1, X_i, ..., X_i^t] / sqrt(t+1)`.
pub fn localize_music(s: &[Complex64], nu: usize, n: usize, excluded: &[usize]) -> Result<Vec<usize>> {
    let t = s.len() / 2;
    check_nu(nu, t)?;
    let cand = candidates(n, nu, excluded)?;
    let eig = hermitian_eig(&covariance_of(s, t)?)?;
    let m = t + 1;
    let noise: Vec<Vec<Complex64>> = (nu..m).map(|j| eig.vectors.column(j)).collect();
    let norm = 1.0 / (m as f64).sqrt();
    let score: Vec<f64> = cand
        .iter()
        .map(|&i| {
            let x = root(n, i);
            let g: Vec<Complex64> = (0..m).map(|p| x.powu(p as u32) * norm).collect();
            noise
                .iter()
                .map(|u| u.iter().zip(&g).map(|(a, b)| a.conj() * b).sum::<Complex64>().norm_sqr())
                .sum()
        })
        .collect();
    Ok(smallest(&cand, &score, nu))
}

/// Least-squares error values at `locations`, restricted to real numbers.
///
/// Solves `H_e e = s` over the complex field and keeps the real part, which
/// is the solution of the stacked real system because `H_e` and `s` are
/// conjugate-symmetric.
pub fn calculate_errors(code: &DftCode, locations: &[usize], s: &[Complex64]) -> Result<Vec<f64>> {
    let n = code.params().n;
    for (idx, &l) in locations.iter().enumerate() {
        if l >= n || locations[..idx].contains(&l) {
            return Err(Error::Magnitude(format!("invalid location set {locations:?}")));
        }
    }
    if locations.is_empty() {
        return Ok(Vec::new());
    }
    let he = code.parity_check().select_columns(locations);
    let e = lstsq(&he, s).map_err(|e| Error::Magnitude(e.to_string()))?;
    Ok(e.into_iter().map(|z| z.re).collect())
}

/// Subtracts the estimated errors from `y`.
pub fn correct(y: &[f64], est: &ErrorEstimate) -> Vec<f64> {
    let mut x = y.to_vec();
    for (&l, &m) in est.locations.iter().zip(&est.magnitudes) {
        x[l] -= m;
    }
    x
}

/// Detects, localizes and sizes the errors behind a distorted syndrome.
///
/// Positions in `excluded` are never reported. A count of zero yields an
/// empty estimate.
pub fn estimate_errors(
    code: &DftCode,
    s: &[Complex64],
    theta: f64,
    localizer: Localizer,
    excluded: &[usize],
) -> Result<ErrorEstimate> {
    let p = code.params();
    let det = detect_errors(s, theta, p.t)?;
    estimate_with_detection(code, s, det, localizer, excluded)
}

/// Localizes and sizes `det.count` errors; an empty estimate when the count is zero.
pub fn estimate_with_detection(
    code: &DftCode,
    s: &[Complex64],
    det: Detection,
    localizer: Localizer,
    excluded: &[usize],
) -> Result<ErrorEstimate> {
    if det.count == 0 {
        return Ok(ErrorEstimate {
            clamped: det.clamped,
            ..ErrorEstimate::default()
        });
    }
    let n = code.params().n;
    let locations = match localizer {
        Localizer::Music => localize_music(s, det.count, n, excluded)?,
        Localizer::Pgz => localize_pgz(s, det.count, n, excluded)?,
    };
    let magnitudes = calculate_errors(code, &locations, s)?;
    Ok(ErrorEstimate {
        count: det.count,
        locations,
        magnitudes,
        clamped: det.clamped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dft_code::make_code;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn error_at(n: usize, locs: &[usize], mags: &[f64]) -> Vec<f64> {
        let mut e = vec![0.0; n];
        for (&l, &m) in locs.iter().zip(mags) {
            e[l] = m;
        }
        e
    }

    #[test]
    fn syndrome_matrix_shapes() {
        let s2 = [c(1.0), c(2.0)];
        let m = syndrome_matrix(&s2, 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 2));
        assert_eq!(m.row(0), &s2);

        let s5: Vec<_> = (1..=5).map(|v| c(v as f64)).collect();
        let m = syndrome_matrix(&s5, 3).unwrap();
        assert_eq!(m.row(0), &s5[0..3]);
        assert_eq!(m.row(2), &s5[2..5]);
        for i in 1..3 {
            for j in 0..2 {
                assert_eq!(m[(i, j)], m[(i - 1, j + 1)]);
            }
        }
        // d = 2t gives a (t+1) x t matrix.
        let s4: Vec<_> = (1..=4).map(|v| c(v as f64)).collect();
        let m = syndrome_matrix(&s4, 3).unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 2));
        assert!(syndrome_matrix(&s4, 0).is_err());
        assert!(syndrome_matrix(&s4, 5).is_err());
    }

    #[test]
    fn covariance_examples() {
        assert_eq!(covariance(&CMat::zeros(2, 3)).max_abs(), 0.0);
        let row = CMat::from_vec(1, 2, vec![Complex64::new(1.0, 1.0), c(2.0)]).unwrap();
        let r = covariance(&row);
        assert!((r[(0, 0)] - c(6.0)).norm() < 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s: Vec<_> = (0..5).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let r = covariance(&syndrome_matrix(&s, 3).unwrap());
        assert!(r.sub(&r.adjoint()).unwrap().max_abs() < 1e-12);
        assert!(hermitian_eig(&r).unwrap().values.iter().all(|&l| l >= -1e-10));
    }

    #[test]
    fn zero_syndrome_detects_nothing() {
        let d = detect_errors(&[c(0.0); 5], 0.0, 2).unwrap();
        assert_eq!(d, Detection { count: 0, clamped: false });
    }

    #[test]
    fn clamping_flag() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        // A generic (non-syndrome) vector gives a full-rank covariance.
        let s: Vec<_> = (0..5).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let d = detect_errors(&s, 1e-9, 2).unwrap();
        assert_eq!(d, Detection { count: 2, clamped: true });
    }

    #[test]
    fn calibration_needs_trials() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r = calibrate_threshold(|_: &mut ChaCha8Rng| Ok(vec![c(0.0); 2]), 1, 0.9, 999, &mut rng);
        assert!(matches!(r, Err(Error::Config(_))));
        let theta = calibrate_threshold(|_: &mut ChaCha8Rng| Ok(vec![c(0.0); 2]), 1, 0.9, 1000, &mut rng).unwrap();
        assert!(theta.abs() < 1e-12);
    }

    #[test]
    fn calibration_quantile() {
        // lambda_max of [a, a] with t = 1 is 2 a^2; a runs over 1..=1000 in order.
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut k = 0.0;
        let theta = calibrate_threshold(
            |_: &mut ChaCha8Rng| {
                k += 1.0;
                Ok(vec![c(k), c(k)])
            },
            1,
            0.9,
            1000,
            &mut rng,
        )
        .unwrap();
        assert!((theta - 2.0 * 900.0f64.powi(2)).abs() < 1e-6);
    }

    #[test]
    fn exact_localization_and_magnitudes() {
        for (n, k) in [(7, 5), (10, 5), (13, 9)] {
            let code = make_code(n, k).unwrap();
            let t = code.params().t;
            let locs: Vec<usize> = (0..t).map(|p| (3 * p + 1) % n).collect();
            let mut sorted = locs.clone();
            sorted.sort();
            let mags: Vec<f64> = (0..t).map(|p| 0.7 - 0.4 * p as f64).collect();
            let s = code.syndrome(&error_at(n, &locs, &mags)).unwrap();
            assert_eq!(localize_pgz(&s, t, n, &[]).unwrap(), sorted);
            assert_eq!(localize_music(&s, t, n, &[]).unwrap(), sorted);
            let est = calculate_errors(&code, &locs, &s).unwrap();
            for (a, b) in est.iter().zip(&mags) {
                assert!((a - b).abs() < 1e-9);
            }
        }
    }

    /// Brute force: the single position whose least-squares fit leaves the smallest residual.
    fn brute_force_single(code: &DftCode, s: &[Complex64]) -> usize {
        let n = code.params().n;
        (0..n)
            .map(|i| {
                let h = code.parity_check().column(i);
                let num: Complex64 = h.iter().zip(s).map(|(a, b)| a.conj() * b).sum();
                let den: f64 = h.iter().map(|a| a.norm_sqr()).sum();
                let e = num / den;
                let res: f64 = h.iter().zip(s).map(|(a, b)| (b - a * e).norm_sqr()).sum();
                (res, i)
            })
            .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
            .unwrap()
            .1
    }

    #[test]
    fn single_error_matches_brute_force() {
        let code = make_code(7, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let pos = rng.gen_range(0..7);
            let mut r: Vec<f64> = (0..7).map(|_| rng.gen_range(-0.02..0.02)).collect();
            r[pos] += rng.gen_range(0.2..1.0);
            let s = code.syndrome(&r).unwrap();
            let oracle = brute_force_single(&code, &s);
            assert_eq!(localize_pgz(&s, 1, 7, &[]).unwrap(), vec![oracle]);
            assert_eq!(localize_music(&s, 1, 7, &[]).unwrap(), vec![oracle]);
        }
    }

    #[test]
    fn excluded_positions_are_never_returned() {
        let code = make_code(7, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..100 {
            let r: Vec<f64> = (0..7).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let s = code.syndrome(&r).unwrap();
            for loc in [localize_pgz(&s, 1, 7, &[3, 6]).unwrap(), localize_music(&s, 1, 7, &[3, 6]).unwrap()] {
                assert!(loc[0] != 3 && loc[0] != 6);
            }
        }
        let s = code.syndrome(&error_at(7, &[2], &[1.0])).unwrap();
        assert_eq!(localize_music(&s, 1, 7, &[3, 6]).unwrap(), vec![2]);
    }

    #[test]
    fn music_needs_noise_subspace() {
        let s = vec![c(1.0); 5];
        assert!(matches!(localize_music(&s, 3, 10, &[]), Err(Error::Localization(_))));
        assert!(matches!(localize_pgz(&s, 0, 10, &[]), Err(Error::Localization(_))));
    }

    #[test]
    fn pgz_reports_singular_system() {
        let s = vec![c(0.0); 5];
        assert!(matches!(localize_pgz(&s, 2, 10, &[]), Err(Error::Localization(_))));
    }

    #[test]
    fn scalar_least_squares_closed_form() {
        let code = make_code(7, 5).unwrap();
        let s = vec![Complex64::new(0.3, -0.1), Complex64::new(0.3, 0.1)];
        let h = code.parity_check().column(4);
        let num: Complex64 = h.iter().zip(&s).map(|(a, b)| a.conj() * b).sum();
        let den: f64 = h.iter().map(|a| a.norm_sqr()).sum();
        let e = calculate_errors(&code, &[4], &s).unwrap();
        assert!((e[0] - (num / den).re).abs() < 1e-12);
    }

    #[test]
    fn magnitudes_with_quantization_noise_stay_near_oracle() {
        let code = make_code(10, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut err2 = 0.0;
        let trials = 2000;
        for _ in 0..trials {
            let e = error_at(10, &[1, 6], &[0.8, -0.5]);
            let q: Vec<f64> = (0..10).map(|_| rng.gen_range(-0.0625..0.0625)).collect();
            let r: Vec<f64> = e.iter().zip(&q).map(|(a, b)| a + b).collect();
            let s = code.syndrome(&r).unwrap();
            let est = calculate_errors(&code, &[1, 6], &s).unwrap();
            // Oracle: the same system with the noise syndrome removed.
            let sq = code.syndrome(&q).unwrap();
            let clean: Vec<_> = s.iter().zip(&sq).map(|(a, b)| a - b).collect();
            let oracle = calculate_errors(&code, &[1, 6], &clean).unwrap();
            assert!((oracle[0] - 0.8).abs() < 1e-9 && (oracle[1] + 0.5).abs() < 1e-9);
            err2 += (est[0] - 0.8).powi(2) + (est[1] + 0.5).powi(2);
        }
        // The estimator is linear, so each magnitude error is sum_j Re(P_ij) q_j
        // with P = pinv(H_e) H. Its variance is sigma_q^2 sum_j Re(P_ij)^2.
        let sigma2 = 0.125f64.powi(2) / 12.0;
        let mut floor = 0.0;
        for j in 0..10 {
            let col = calculate_errors(&code, &[1, 6], &code.syndrome(&error_at(10, &[j], &[1.0])).unwrap()).unwrap();
            floor += col.iter().map(|v| v * v).sum::<f64>();
        }
        let floor = sigma2 * floor / 2.0;
        let per = err2 / (2.0 * trials as f64);
        assert!((per / floor - 1.0).abs() < 0.1, "{per} vs {floor}");
    }

    #[test]
    fn correct_examples() {
        let y = [1.0, 2.0, 3.0];
        assert_eq!(correct(&y, &ErrorEstimate::default()), y.to_vec());
        let est = ErrorEstimate { count: 1, locations: vec![1], magnitudes: vec![0.5], clamped: false };
        assert_eq!(correct(&y, &est), vec![1.0, 1.5, 3.0]);

        // Wrong location: both the true error and the bogus correction remain.
        let x = [0.0; 3];
        let y = [0.0, 0.0, 0.4];
        let est = ErrorEstimate { count: 1, locations: vec![0], magnitudes: vec![0.3], clamped: false };
        let xh = correct(&y, &est);
        let se: f64 = xh.iter().zip(&x).map(|(a, b)| (a - b).powi(2)).sum();
        assert!((se - (0.4f64.powi(2) + 0.3f64.powi(2))).abs() < 1e-15);
    }

    #[test]
    fn pgz_rank_counts_errors() {
        let code = make_code(10, 5).unwrap();
        let s = code.syndrome(&error_at(10, &[2], &[1.0])).unwrap();
        assert_eq!(pgz_rank(&s, 2, 1e-9), 1);
        let s = code.syndrome(&error_at(10, &[2, 7], &[1.0, 0.5])).unwrap();
        assert_eq!(pgz_rank(&s, 2, 1e-9), 2);
        assert_eq!(pgz_rank(&[c(0.0); 5], 2, 1e-9), 0);
    }

    #[test]
    fn estimate_pipeline_is_exact_without_noise() {
        let code = make_code(13, 9).unwrap();
        let y_err = error_at(13, &[0, 12], &[1.5, -0.25]);
        let s = code.syndrome(&y_err).unwrap();
        for loc in [Localizer::Music, Localizer::Pgz] {
            let est = estimate_errors(&code, &s, 1e-9, loc, &[]).unwrap();
            assert_eq!(est.locations, vec![0, 12]);
            let fixed = correct(&y_err, &est);
            assert!(fixed.iter().all(|v| v.abs() < 1e-9));
        }
    }

    #[test]
    fn localizer_parsing() {
        assert_eq!("music".parse::<Localizer>().unwrap(), Localizer::Music);
        assert_eq!("pgz".parse::<Localizer>().unwrap(), Localizer::Pgz);
        assert!("esprit".parse::<Localizer>().is_err());
    }
}
