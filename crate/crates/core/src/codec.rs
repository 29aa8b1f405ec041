//! End-to-end pipelines: syndrome and parity Wyner-Ziv coding and joint
//! source-channel coding with side information at the decoder.

use num_complex::Complex64;

use crate::dft_code::{CodeParams, DftCode, Syndrome, SystematicDftCode};
use crate::decoder::{
    calculate_errors, correct, detect_errors, estimate_with_detection, Detection, ErrorEstimate, Localizer,
};
use crate::error::{Error, Result};
use crate::quantizer::{quantize_opt, QuantizerSpec};

/// Tolerance of the conjugate-symmetry check in [`pack_syndrome`].
pub const SYMMETRY_TOL: f64 = 1e-8;

/// The real-valued transmission form of a syndrome.
///
/// Values are coefficients of the unnormalized DFT, i.e. `sqrt(n) s_m`:
///
/// * `k` odd: `Re s_1, Im s_1, ..., Re s_h, Im s_h` for `h = floor(d/2)`,
///   followed by the real middle sample `s_{(d+1)/2}` when `d` is odd. That
///   is `d` values.
/// * `k` even: the `(d-1)/2` pairs `s_m = conj(s_{d-m})` contribute
///   `Re s_m, Im s_m` for `m = 1 ..= (d-1)/2`, followed by `Re s_d, Im s_d` of
///   the unpaired last sample. That is `d + 1` values.
#[derive(Clone, Debug, PartialEq)]
pub struct PackedSyndrome {
    pub values: Vec<f64>,
    pub k_odd: bool,
}

/// Index of the conjugate partner of zero-based sample `m`, if any.
fn partner(params: &CodeParams, m: usize) -> Option<usize> {
    let d = params.d;
    if params.k % 2 == 1 {
        Some(d - 1 - m)
    } else if m + 1 < d {
        Some(d - 2 - m)
    } else {
        None
    }
}

/// Largest deviation from the conjugate symmetry of real-input syndromes.
pub fn symmetry_defect(params: &CodeParams, s: &[Complex64]) -> f64 {
    (0..s.len())
        .filter_map(|m| partner(params, m).map(|p| (s[m] - s[p].conj()).norm()))
        .fold(0.0, f64::max)
}

/// Packs a syndrome into `d` (odd `k`) or `d + 1` (even `k`) real numbers.
///
/// ```
/// let code = wzdft::make_code(10, 5).unwrap();
/// let x = [0.3, -1.0, 0.2, 0.9, 1.4, -0.6, 0.0, 0.5, -0.2, 0.1];
/// let s = code.syndrome(&x).unwrap();
/// let packed = wzdft::codec::pack_syndrome(code.params(), &s).unwrap();
/// assert_eq!(packed.values.len(), 5);
/// let back = wzdft::codec::unpack_syndrome(code.params(), &packed).unwrap();
/// assert!(back.iter().zip(&s).all(|(a, b)| (a - b).norm() < 1e-12));
/// ```
pub fn pack_syndrome(params: &CodeParams, s: &[Complex64]) -> Result<PackedSyndrome> {
    let d = params.d;
    if s.len() != d {
        return Err(Error::Dimension(format!("syndrome of length {} for d = {d}", s.len())));
    }
    let scale = s.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let defect = symmetry_defect(params, s);
    if defect > SYMMETRY_TOL * scale {
        return Err(Error::Integrity(format!(
            "conjugate symmetry violated by {defect:.3e} (tolerance {SYMMETRY_TOL:e})"
        )));
    }
    let root_n = (params.n as f64).sqrt();
    let mut values = Vec::with_capacity(params.packed_len());
    if params.k % 2 == 1 {
        for z in &s[..d / 2] {
            values.extend([z.re * root_n, z.im * root_n]);
        }
        if d % 2 == 1 {
            values.push(s[d / 2].re * root_n);
        }
    } else {
        for z in &s[..(d - 1) / 2] {
            values.extend([z.re * root_n, z.im * root_n]);
        }
        values.extend([s[d - 1].re * root_n, s[d - 1].im * root_n]);
    }
    Ok(PackedSyndrome {
        values,
        k_odd: params.k % 2 == 1,
    })
}

/// Rebuilds all `d` syndrome samples from their packed form.
pub fn unpack_syndrome(params: &CodeParams, ps: &PackedSyndrome) -> Result<Syndrome> {
    let d = params.d;
    let want = params.packed_len();
    if ps.values.len() != want || ps.k_odd != (params.k % 2 == 1) {
        return Err(Error::Dimension(format!(
            "packed syndrome has {} values (k odd: {}), expected {want} for the ({},{}) code",
            ps.values.len(),
            ps.k_odd,
            params.n,
            params.k
        )));
    }
    let inv = 1.0 / (params.n as f64).sqrt();
    let v = &ps.values;
    let mut s = vec![Complex64::new(0.0, 0.0); d];
    let pairs = if params.k % 2 == 1 { d / 2 } else { (d - 1) / 2 };
    for m in 0..pairs {
        s[m] = Complex64::new(v[2 * m], v[2 * m + 1]) * inv;
        let p = partner(params, m).expect("paired sample");
        s[p] = s[m].conj();
    }
    if params.k % 2 == 1 {
        if d % 2 == 1 {
            s[d / 2] = Complex64::new(v[d - 1] * inv, 0.0);
        }
    } else {
        s[d - 1] = Complex64::new(v[d - 1], v[d]) * inv;
    }
    Ok(s)
}

/// Result of decoding one block.
#[derive(Clone, Debug, PartialEq)]
pub struct Decoded {
    /// Reconstructed source samples.
    pub x_hat: Vec<f64>,
    /// Output of the eigenvalue detector.
    pub detection: Detection,
    /// Error estimate in codeword coordinates; empty after a failure.
    pub estimate: ErrorEstimate,
    /// Set when localization or magnitude estimation failed and `x_hat` fell
    /// back to the side information.
    pub failed: bool,
}

/// Runs detection and estimation, turning localization and magnitude
/// failures into an empty estimate with the failure flag set.
fn decode_syndrome(
    code: &DftCode,
    s: &[Complex64],
    theta: f64,
    localizer: Localizer,
    excluded: &[usize],
) -> Result<(Detection, ErrorEstimate, bool)> {
    let det = detect_errors(s, theta, code.params().t)?;
    match estimate_with_detection(code, s, det, localizer, excluded) {
        Ok(est) => Ok((det, est, false)),
        Err(Error::Localization(_) | Error::Magnitude(_)) => Ok((
            det,
            ErrorEstimate {
                count: det.count,
                clamped: det.clamped,
                ..ErrorEstimate::default()
            },
            true,
        )),
        Err(e) => Err(e),
    }
}

fn check_len(what: &str, got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(Error::Dimension(format!("{what} has length {got}, expected {want}")));
    }
    Ok(())
}

/// Syndrome-approach encoder: `quantize(pack(H x))`.
///
/// `q = None` disables quantization.
pub fn wz_syndrome_encode(code: &DftCode, x: &[f64], q: Option<&QuantizerSpec>) -> Result<PackedSyndrome> {
    check_len("source block", x.len(), code.params().n)?;
    let mut packed = pack_syndrome(code.params(), &code.syndrome(x)?)?;
    packed.values = quantize_opt(q, &packed.values);
    debug_assert_eq!(packed.values.len(), code.params().packed_len());
    Ok(packed)
}

/// The distorted error syndrome `H y - unpack(s_hat)` seen by the syndrome decoder.
pub fn wz_syndrome_error_syndrome(code: &DftCode, s_hat: &PackedSyndrome, y: &[f64]) -> Result<Syndrome> {
    check_len("side information", y.len(), code.params().n)?;
    let sx = unpack_syndrome(code.params(), s_hat)?;
    Ok(code.syndrome(y)?.iter().zip(&sx).map(|(a, b)| a - b).collect())
}

/// Syndrome-approach decoder: corrects the side information `y` using the
/// difference between its syndrome and the received one.
pub fn wz_syndrome_decode(
    code: &DftCode,
    s_hat: &PackedSyndrome,
    y: &[f64],
    theta: f64,
    localizer: Localizer,
) -> Result<Decoded> {
    let s = wz_syndrome_error_syndrome(code, s_hat, y)?;
    let (detection, estimate, failed) = decode_syndrome(code, &s, theta, localizer, &[])?;
    Ok(Decoded {
        x_hat: correct(y, &estimate),
        detection,
        estimate,
        failed,
    })
}

/// Parity-approach encoder: `quantize(parity_of(x))`, `d` reals per `k` samples.
pub fn wz_parity_encode(sys: &SystematicDftCode, x: &[f64], q: Option<&QuantizerSpec>) -> Result<Vec<f64>> {
    check_len("source block", x.len(), sys.params().k)?;
    Ok(quantize_opt(q, &sys.parity_of(x)?))
}

/// The syndrome `H z` of side information and received parity placed at their codeword rows.
pub fn parity_syndrome(sys: &SystematicDftCode, p: &[f64], y: &[f64]) -> Result<Syndrome> {
    sys.base().syndrome(&sys.assemble(y, p)?)
}

fn decode_assembled(
    sys: &SystematicDftCode,
    p: &[f64],
    y: &[f64],
    theta: f64,
    localizer: Localizer,
    excluded: &[usize],
) -> Result<Decoded> {
    let z = sys.assemble(y, p)?;
    let s = sys.base().syndrome(&z)?;
    let (detection, estimate, failed) = decode_syndrome(sys.base(), &s, theta, localizer, excluded)?;
    let x_hat = sys.systematic_part(&correct(&z, &estimate));
    Ok(Decoded {
        x_hat,
        detection,
        estimate,
        failed,
    })
}

/// Parity-approach decoder.
///
/// With `adapted` set, errors are only searched for at systematic rows, since
/// the parity arrives without correlation noise.
pub fn wz_parity_decode(
    sys: &SystematicDftCode,
    p_hat: &[f64],
    y: &[f64],
    theta: f64,
    adapted: bool,
    localizer: Localizer,
) -> Result<Decoded> {
    let excluded: &[usize] = if adapted { sys.parity_rows() } else { &[] };
    decode_assembled(sys, p_hat, y, theta, localizer, excluded)
}

/// Joint source-channel decoder: the parity may carry channel errors too, so
/// every codeword row is a candidate location.
pub fn jscc_decode(
    sys: &SystematicDftCode,
    p_tilde: &[f64],
    y: &[f64],
    theta: f64,
    localizer: Localizer,
) -> Result<Decoded> {
    decode_assembled(sys, p_tilde, y, theta, localizer, &[])
}

/// Joint source-channel decoding with the error locations supplied (in
/// codeword coordinates). Only the magnitudes are estimated.
pub fn jscc_decode_known(sys: &SystematicDftCode, p_tilde: &[f64], y: &[f64], locations: &[usize]) -> Result<Vec<f64>> {
    let z = sys.assemble(y, p_tilde)?;
    let s = sys.base().syndrome(&z)?;
    let mut locations = locations.to_vec();
    locations.sort_unstable();
    let magnitudes = calculate_errors(sys.base(), &locations, &s)?;
    let est = ErrorEstimate {
        count: locations.len(),
        locations,
        magnitudes,
        clamped: false,
    };
    Ok(sys.systematic_part(&correct(&z, &est)))
}
