//! Real BCH-DFT codes and their systematic variants.
//!
//! An `(n, k)` code is built as `G = sqrt(n/k) W_n^H Σ W_k`, where `Σ`
//! inserts `d = n - k` zero bins into the middle of the `k`-point spectrum.
//! Every codeword therefore has `d` consecutive zero DFT coefficients, at bins
//! `alpha .. alpha + d - 1`. The parity-check matrix `H` is made of exactly
//! those rows of the unitary `n`-point DFT, so `H c = 0` for every codeword.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{dft_matrix, solve, CMat, RMat};

/// A complex syndrome vector of length `d`.
pub type Syndrome = Vec<Complex64>;

/// Tolerance for the realness of the generator.
const REAL_TOL: f64 = 1e-10;

/// Relative pivot tolerance used when inverting `G_k`.
const GK_PIVOT_TOL: f64 = 1e-10;

/// Size parameters of an `(n, k)` DFT code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    /// Number of parity samples, `n - k`.
    pub d: usize,
    /// Error-correcting capability, `floor(d / 2)`.
    pub t: usize,
    /// Index of the first zero bin, `ceil(n/2) - floor(d/2)`.
    pub alpha: usize,
    /// Number of spectral samples after the zero block, `k - alpha`.
    pub beta: usize,
}

impl CodeParams {
    /// Validates `1 <= k < n` and rejects `n` and `k` both even.
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::InvalidCode(format!(
                "need 1 <= k < n, got n = {n}, k = {k}"
            )));
        }
        if n % 2 == 0 && k % 2 == 0 {
            return Err(Error::InvalidCode(format!(
                "n = {n} and k = {k} are both even; a real DFT code needs at least one of them odd"
            )));
        }
        let d = n - k;
        let alpha = n.div_ceil(2) - d / 2;
        Ok(CodeParams {
            n,
            k,
            d,
            t: d / 2,
            alpha,
            beta: k - alpha,
        })
    }

    /// Number of real values needed to transmit a syndrome: `d` for odd `k`, `d + 1` otherwise.
    pub fn packed_len(&self) -> usize {
        if self.k % 2 == 1 {
            self.d
        } else {
            self.d + 1
        }
    }
}

/// An `(n, k)` real BCH-DFT code.
#[derive(Clone, Debug)]
pub struct DftCode {
    params: CodeParams,
    g: RMat,
    h: CMat,
    zero_bins: Vec<usize>,
}

/// Builds the `(n, k)` real DFT code.
///
/// Only odd `k` yields a real generator: with `k` even the bin `k/2` of the
/// message spectrum is its own conjugate partner but lands on a bin of the
/// `n`-point spectrum that is not, so `G` picks up an imaginary part. Such
/// parameters are rejected.
///
/// ```
/// let code = wzdft::make_code(7, 5).unwrap();
/// let p = code.params();
/// assert_eq!((p.alpha, p.beta, p.d, p.t), (3, 2, 2, 1));
/// assert_eq!(code.zero_bins(), &[3, 4]);
/// ```
pub fn make_code(n: usize, k: usize) -> Result<DftCode> {
    let params = CodeParams::new(n, k)?;
    if k % 2 == 0 {
        return Err(Error::InvalidCode(format!(
            "k = {k} is even, which makes the generator of the ({n},{k}) code complex; only real codes are supported"
        )));
    }
    let CodeParams { d, alpha, beta, .. } = params;

    let mut sigma = CMat::zeros(n, k);
    for i in 0..alpha {
        sigma[(i, i)] = Complex64::new(1.0, 0.0);
    }
    for j in 0..beta {
        sigma[(n - beta + j, alpha + j)] = Complex64::new(1.0, 0.0);
    }
    let wn = dft_matrix(n);
    let wk = dft_matrix(k);
    let g = wn.adjoint().matmul(&sigma)?.matmul(&wk)?;
    let scale = (n as f64 / k as f64).sqrt();
    let imag = g.max_imag() * scale;
    if imag > REAL_TOL {
        return Err(Error::InvalidCode(format!(
            "generator of the ({n},{k}) code has imaginary part {imag:.3e}"
        )));
    }
    let g = RMat::from_fn(n, k, |i, j| g[(i, j)].re * scale);
    let zero_bins: Vec<usize> = (alpha..alpha + d).collect();
    let h = CMat::from_fn(d, n, |m, i| wn[(alpha + m, i)]);
    Ok(DftCode {
        params,
        g,
        h,
        zero_bins,
    })
}

impl DftCode {
    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    /// The `n x k` real generator.
    pub fn generator(&self) -> &RMat {
        &self.g
    }

    /// The `d x n` parity-check matrix; row `m` is DFT row `alpha + m`.
    pub fn parity_check(&self) -> &CMat {
        &self.h
    }

    /// Zero-indexed spectral bins on which every codeword vanishes.
    pub fn zero_bins(&self) -> &[usize] {
        &self.zero_bins
    }

    /// Codeword `c = G u`.
    pub fn encode(&self, u: &[f64]) -> Result<Vec<f64>> {
        self.g.mul_vec(u)
    }

    /// Syndrome `s = H r`.
    pub fn syndrome(&self, r: &[f64]) -> Result<Syndrome> {
        self.h.mul_real_vec(r)
    }

    /// Least-squares message estimate `(k/n) G^T c_hat`.
    ///
    /// Since `G^T G = (n/k) I`, this is the pseudoinverse of `G` applied to
    /// `c_hat`, and it averages away part of any noise added to the codeword.
    pub fn frame_reconstruct(&self, c_hat: &[f64]) -> Result<Vec<f64>> {
        let CodeParams { n, k, .. } = self.params;
        let r = k as f64 / n as f64;
        Ok(self
            .g
            .transpose()
            .mul_vec(c_hat)?
            .into_iter()
            .map(|v| v * r)
            .collect())
    }
}

/// A DFT code with `k` of its codeword rows carrying the message verbatim.
#[derive(Clone, Debug)]
pub struct SystematicDftCode {
    base: DftCode,
    systematic_rows: Vec<usize>,
    parity_rows: Vec<usize>,
    g_sys: RMat,
    gamma: f64,
}

/// Builds `G_sys = G G_k^{-1}`, with `G_k` the rows of `G` at `systematic_rows`.
///
/// Message sample `j` appears at codeword row `systematic_rows[j]`. Parity rows
/// are the remaining indices in ascending order.
pub fn make_systematic(code: &DftCode, systematic_rows: &[usize]) -> Result<SystematicDftCode> {
    let CodeParams { n, k, .. } = *code.params();
    if systematic_rows.len() != k {
        return Err(Error::InvalidRows(format!(
            "expected {k} systematic rows, got {}",
            systematic_rows.len()
        )));
    }
    let mut seen = vec![false; n];
    for &r in systematic_rows {
        if r >= n {
            return Err(Error::InvalidRows(format!("row {r} is outside 0..{n}")));
        }
        if seen[r] {
            return Err(Error::InvalidRows(format!("row {r} appears twice")));
        }
        seen[r] = true;
    }
    let parity_rows: Vec<usize> = (0..n).filter(|&r| !seen[r]).collect();

    let g = CMat::from_real(code.generator());
    let gk = CMat::from_real(&code.generator().select_rows(systematic_rows));
    let gk_inv = solve(&gk, &CMat::identity(k), GK_PIVOT_TOL)?;
    let g_sys = g.matmul(&gk_inv)?.real_part();
    let gamma = g_sys.transpose().matmul(&g_sys)?.trace() / n as f64;
    Ok(SystematicDftCode {
        base: code.clone(),
        systematic_rows: systematic_rows.to_vec(),
        parity_rows,
        g_sys,
        gamma,
    })
}

/// Evenly spaced systematic rows: row `j` is `floor(j n / k)`.
///
/// For `(10,5)` this gives every other row and for `(7,5)` the pattern
/// `xxx-xx-`. If a row were already taken the next free index is used, which
/// keeps the rule total even though `n > k` rules out collisions.
pub fn best_systematic(code: &DftCode) -> SystematicDftCode {
    let CodeParams { n, k, .. } = *code.params();
    let mut taken = vec![false; n];
    let mut rows = Vec::with_capacity(k);
    for j in 0..k {
        let mut r = j * n / k;
        while taken[r] {
            r = (r + 1) % n;
        }
        taken[r] = true;
        rows.push(r);
    }
    make_systematic(code, &rows).expect("a DFT code has invertible G_k for any row subset")
}

impl SystematicDftCode {
    pub fn base(&self) -> &DftCode {
        &self.base
    }

    pub fn params(&self) -> &CodeParams {
        self.base.params()
    }

    pub fn systematic_rows(&self) -> &[usize] {
        &self.systematic_rows
    }

    pub fn parity_rows(&self) -> &[usize] {
        &self.parity_rows
    }

    /// The `n x k` systematic generator.
    pub fn generator(&self) -> &RMat {
        &self.g_sys
    }

    /// Variance expansion factor `tr(G_sys^T G_sys) / n`.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Parity variance relative to an i.i.d. message variance, `(gamma n - k) / (n - k)`.
    pub fn parity_variance_ratio(&self) -> f64 {
        let CodeParams { n, k, d, .. } = *self.params();
        (self.gamma * n as f64 - k as f64) / d as f64
    }

    /// Systematic codeword `G_sys x`.
    pub fn encode(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.g_sys.mul_vec(x)
    }

    /// Parity samples: the entries of `G_sys x` at the parity rows.
    pub fn parity_of(&self, x: &[f64]) -> Result<Vec<f64>> {
        let c = self.encode(x)?;
        Ok(self.parity_rows.iter().map(|&r| c[r]).collect())
    }

    /// Places message-side and parity-side samples at their codeword rows.
    pub fn assemble(&self, systematic: &[f64], parity: &[f64]) -> Result<Vec<f64>> {
        let CodeParams { n, k, d, .. } = *self.params();
        if systematic.len() != k || parity.len() != d {
            return Err(Error::Dimension(format!(
                "assembly needs {k} systematic and {d} parity samples, got {} and {}",
                systematic.len(),
                parity.len()
            )));
        }
        let mut z = vec![0.0; n];
        for (&r, &v) in self.systematic_rows.iter().zip(systematic) {
            z[r] = v;
        }
        for (&r, &v) in self.parity_rows.iter().zip(parity) {
            z[r] = v;
        }
        Ok(z)
    }

    /// Extracts the systematic samples of a codeword-ordered vector.
    pub fn systematic_part(&self, z: &[f64]) -> Vec<f64> {
        self.systematic_rows.iter().map(|&r| z[r]).collect()
    }
}
