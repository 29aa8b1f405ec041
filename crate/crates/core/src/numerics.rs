//! Small dense complex linear algebra.
//!
//! Everything here is sized for the matrices a short DFT code produces:
//! generators of at most a few dozen rows and syndrome covariances of size
//! `(t+1) x (t+1)`. The routines favour clarity over blocking or SIMD.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix stored in row-major order.
#[derive(Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries cannot fill a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(CMat { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMat { rows, cols, data }
    }

    pub fn from_real(m: &RMat) -> Self {
        CMat::from_fn(m.rows(), m.cols(), |i, j| Complex64::new(m[(i, j)], 0.0))
    }

    /// Diagonal matrix with the given real entries.
    pub fn diag(values: &[f64]) -> Self {
        let mut m = CMat::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Submatrix made of the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> CMat {
        CMat::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])])
    }

    pub fn matmul(&self, rhs: &CMat) -> Result<CMat> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = CMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(l, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} does not match {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Product with a real vector.
    pub fn mul_real_vec(&self, v: &[f64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} does not match {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, &b)| a * b).sum())
            .collect())
    }

    pub fn sub(&self, rhs: &CMat) -> Result<CMat> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Dimension(format!(
                "cannot subtract {}x{} from {}x{}",
                rhs.rows, rhs.cols, self.rows, self.cols
            )));
        }
        Ok(CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest imaginary-part modulus.
    pub fn max_imag(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Real parts, as a real matrix.
    pub fn real_part(&self) -> RMat {
        RMat::from_fn(self.rows, self.cols, |i, j| self[(i, j)].re)
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Dense real matrix stored in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct RMat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RMat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> RMat {
        RMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn mul_vec(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} does not match {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn matmul(&self, rhs: &RMat) -> Result<RMat> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(RMat::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).map(|l| self[(i, l)] * rhs[(l, j)]).sum()
        }))
    }

    /// Submatrix made of the listed rows, in order.
    pub fn select_rows(&self, rows: &[usize]) -> RMat {
        RMat::from_fn(rows.len(), self.cols, |i, j| self[(rows[i], j)])
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }
}

impl Index<(usize, usize)> for RMat {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// The unitary `m`-point DFT matrix, entry `(a, b) = exp(-j 2 pi a b / m) / sqrt(m)`.
pub fn dft_matrix(m: usize) -> CMat {
    let scale = 1.0 / (m as f64).sqrt();
    CMat::from_fn(m, m, |a, b| {
        // Reduce the exponent first so large products keep full precision.
        let e = (a * b) % m;
        Complex64::from_polar(scale, -2.0 * PI * e as f64 / m as f64)
    })
}

/// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Real eigenvalues, sorted in descending order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, matching `values`.
    pub vectors: CMat,
}

const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues (descending) and orthonormal eigenvectors of a Hermitian matrix.
///
/// The input is symmetrized as `(R + R^H) / 2` before iterating, so slightly
/// non-Hermitian round-off in `R` is tolerated.
pub fn hermitian_eig(r: &CMat) -> Result<HermitianEigen> {
    if !r.is_square() {
        return Err(Error::Dimension(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            r.rows(),
            r.cols()
        )));
    }
    let n = r.rows();
    let mut a = CMat::from_fn(n, n, |i, j| (r[(i, j)] + r[(j, i)].conj()) * 0.5);
    for i in 0..n {
        a[(i, i)].im = 0.0;
    }
    let mut v = CMat::identity(n);
    let scale = a.frobenius_norm();

    if scale > 0.0 {
        for _ in 0..JACOBI_MAX_SWEEPS {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a[(i, j)].norm_sqr())
                .sum::<f64>()
                .sqrt();
            if off <= f64::EPSILON * scale {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    jacobi_rotate(&mut a, &mut v, p, q);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&x, &y| diag[y].total_cmp(&diag[x]).then(x.cmp(&y)));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = CMat::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(HermitianEigen { values, vectors })
}

/// Annihilates `a[p][q]` with a unitary plane rotation `J` (`a <- J^H a J`, `v <- v J`).
fn jacobi_rotate(a: &mut CMat, v: &mut CMat, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Negligible against both diagonal entries: zero it and move on.
    if g <= f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = Complex64::new(0.0, 0.0);
        a[(q, p)] = Complex64::new(0.0, 0.0);
        return;
    }
    // Phase that makes the (p, q) entry real, then a real symmetric rotation.
    let phase = apq / g;
    let tau = (aqq - app) / (2.0 * g);
    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
    let t = if tau == 0.0 { 1.0 } else { t };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // J = [[c, s], [-s conj(phase), c conj(phase)]] on the (p, q) plane.
    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    let n = a.rows();
    for i in 0..n {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = aip * jpp + aiq * jqp;
        a[(i, q)] = aip * jpq + aiq * jqq;
    }
    for j in 0..n {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = jpp.conj() * apj + jqp.conj() * aqj;
        a[(q, j)] = jpq.conj() * apj + jqq.conj() * aqj;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;
    for i in 0..n {
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * jpp + viq * jqp;
        v[(i, q)] = vip * jpq + viq * jqq;
    }
}

/// Relative pivot tolerance below which a least-squares system is rejected.
pub const LSTSQ_RANK_TOL: f64 = 1e-10;

/// Least-squares solution of `A x = b` by Householder QR with column pivoting.
///
/// Fails with [`Error::Singular`] when a diagonal entry of `R` drops below
/// `LSTSQ_RANK_TOL` times the largest one.
pub fn lstsq(a: &CMat, b: &[Complex64]) -> Result<Vec<Complex64>> {
    let (m, n) = (a.rows(), a.cols());
    if b.len() != m {
        return Err(Error::Dimension(format!(
            "right-hand side of length {} for a {m}x{n} system",
            b.len()
        )));
    }
    if m < n {
        return Err(Error::Dimension(format!(
            "least squares needs at least as many rows as columns, got {m}x{n}"
        )));
    }
    let mut r = a.clone();
    let mut rhs = b.to_vec();
    let mut perm: Vec<usize> = (0..n).collect();

    for j in 0..n {
        // Pivot on the remaining column with the largest trailing norm.
        let col_norm = |r: &CMat, c: usize| (j..m).map(|i| r[(i, c)].norm_sqr()).sum::<f64>();
        let best = (j..n)
            .max_by(|&x, &y| col_norm(&r, x).total_cmp(&col_norm(&r, y)).then(y.cmp(&x)))
            .unwrap_or(j);
        if best != j {
            for i in 0..m {
                let tmp = r[(i, j)];
                r[(i, j)] = r[(i, best)];
                r[(i, best)] = tmp;
            }
            perm.swap(j, best);
        }

        let norm = col_norm(&r, j).sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = r[(j, j)];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm;
        let mut v: Vec<Complex64> = (j..m).map(|i| r[(i, j)]).collect();
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in &mut v {
            *z /= vnorm;
        }
        // Apply I - 2 v v^H to the trailing block and the right-hand side.
        for c in j..n {
            let dot: Complex64 = v.iter().enumerate().map(|(l, vl)| vl.conj() * r[(j + l, c)]).sum();
            for (l, vl) in v.iter().enumerate() {
                r[(j + l, c)] -= *vl * dot * 2.0;
            }
        }
        let dot: Complex64 = v.iter().enumerate().map(|(l, vl)| vl.conj() * rhs[j + l]).sum();
        for (l, vl) in v.iter().enumerate() {
            rhs[j + l] -= *vl * dot * 2.0;
        }
    }

    let largest = (0..n).map(|i| r[(i, i)].norm()).fold(0.0, f64::max);
    for i in 0..n {
        let d = r[(i, i)].norm();
        if largest == 0.0 || d <= LSTSQ_RANK_TOL * largest {
            return Err(Error::Singular(format!(
                "least-squares matrix is rank deficient: pivot {d:.3e} is at most {LSTSQ_RANK_TOL:e} times the largest pivot {largest:.3e}"
            )));
        }
    }

    let mut z = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let mut acc = rhs[i];
        for c in i + 1..n {
            acc -= r[(i, c)] * z[c];
        }
        z[i] = acc / r[(i, i)];
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for (pos, &col) in perm.iter().enumerate() {
        x[col] = z[pos];
    }
    Ok(x)
}

/// Solves the square system `A X = B` by Gaussian elimination with partial pivoting.
///
/// A pivot whose modulus is at most `pivot_tol` times the largest entry of `A`
/// is reported as [`Error::Singular`].
pub fn solve(a: &CMat, b: &CMat, pivot_tol: f64) -> Result<CMat> {
    if !a.is_square() || b.rows() != a.rows() {
        return Err(Error::Dimension(format!(
            "cannot solve a {}x{} system with a {}x{} right-hand side",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let n = a.rows();
    let scale = a.max_abs();
    let mut m = a.clone();
    let mut x = b.clone();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[(i, col)].norm().total_cmp(&m[(j, col)].norm()).then(j.cmp(&i)))
            .unwrap_or(col);
        let pv = m[(piv, col)].norm();
        if scale == 0.0 || pv <= pivot_tol * scale {
            return Err(Error::Singular(format!(
                "pivot {pv:.3e} in column {col} is at most {pivot_tol:e} times the largest entry {scale:.3e}"
            )));
        }
        if piv != col {
            for c in 0..n {
                let tmp = m[(col, c)];
                m[(col, c)] = m[(piv, c)];
                m[(piv, c)] = tmp;
            }
            for c in 0..x.cols() {
                let tmp = x[(col, c)];
                x[(col, c)] = x[(piv, c)];
                x[(piv, c)] = tmp;
            }
        }
        let inv = m[(col, col)].inv();
        for i in col + 1..n {
            let f = m[(i, col)] * inv;
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            for c in col..n {
                let v = m[(col, c)];
                m[(i, c)] -= f * v;
            }
            for c in 0..x.cols() {
                let v = x[(col, c)];
                x[(i, c)] -= f * v;
            }
        }
    }
    for c in 0..x.cols() {
        for i in (0..n).rev() {
            let mut acc = x[(i, c)];
            for l in i + 1..n {
                acc -= m[(i, l)] * x[(l, c)];
            }
            x[(i, c)] = acc / m[(i, i)];
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_cmat(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> CMat {
        CMat::from_fn(rows, cols, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> CMat {
        let a = random_cmat(n, n, rng);
        CMat::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5)
    }

    #[test]
    fn dft_small_cases() {
        let w1 = dft_matrix(1);
        assert!((w1[(0, 0)] - c(1.0, 0.0)).norm() < 1e-15);

        let w2 = dft_matrix(2);
        let h = 1.0 / 2f64.sqrt();
        let expected = [c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)];
        for (got, want) in w2.as_slice().iter().zip(expected) {
            assert!((got - want).norm() < 1e-15);
        }
    }

    #[test]
    fn dft_is_unitary_up_to_64() {
        for m in 1..=64 {
            let w = dft_matrix(m);
            let g = w.adjoint().matmul(&w).unwrap();
            let dev = g.sub(&CMat::identity(m)).unwrap().max_abs();
            assert!(dev < 1e-12, "m={m}: deviation {dev:e}");
        }
    }

    #[test]
    fn eig_diagonal_and_rank_one() {
        let d = CMat::diag(&[3.0, 1.0, 2.0]);
        let e = hermitian_eig(&d).unwrap();
        assert_eq!(e.values.len(), 3);
        for (got, want) in e.values.iter().zip([3.0, 2.0, 1.0]) {
            assert!((got - want).abs() < 1e-14);
        }

        let v = [c(0.5, 0.5), c(0.0, -0.5), c(0.5, 0.0)];
        let r = CMat::from_fn(3, 3, |i, j| v[i] * v[j].conj());
        let e = hermitian_eig(&r).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-12);
        assert!(e.values[1].abs() < 1e-12 && e.values[2].abs() < 1e-12);
    }

    #[test]
    fn eig_reconstructs_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=6 {
            let r = random_hermitian(n, &mut rng);
            let e = hermitian_eig(&r).unwrap();
            let lam = CMat::diag(&e.values);
            let back = e.vectors.matmul(&lam).unwrap().matmul(&e.vectors.adjoint()).unwrap();
            assert!(back.sub(&r).unwrap().max_abs() < 1e-8 * r.frobenius_norm().max(1.0));

            let gram = e.vectors.adjoint().matmul(&e.vectors).unwrap();
            assert!(gram.sub(&CMat::identity(n)).unwrap().max_abs() < 1e-8);

            let tr: f64 = e.values.iter().sum();
            assert!((tr - r.trace().re).abs() < 1e-8);
            assert!(e.values.windows(2).all(|w| w[0] >= w[1]));

            for (j, &l) in e.values.iter().enumerate() {
                let col = e.vectors.column(j);
                let rv = r.mul_vec(&col).unwrap();
                for (a, b) in rv.iter().zip(&col) {
                    assert!((a - b * l).norm() < 1e-8 * r.frobenius_norm().max(1.0));
                }
            }
        }
    }

    #[test]
    fn eig_rejects_non_square() {
        assert!(matches!(hermitian_eig(&CMat::zeros(2, 3)), Err(Error::Dimension(_))));
    }

    #[test]
    fn lstsq_identity_and_mean() {
        let b = [c(1.0, 2.0), c(-3.0, 0.5)];
        let x = lstsq(&CMat::identity(2), &b).unwrap();
        assert!((x[0] - b[0]).norm() < 1e-14 && (x[1] - b[1]).norm() < 1e-14);

        let a = CMat::from_vec(2, 1, vec![c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let x = lstsq(&a, &[c(0.0, 0.0), c(2.0, 0.0)]).unwrap();
        assert!((x[0] - c(1.0, 0.0)).norm() < 1e-14);
    }

    /// Normal-equations oracle: solve (A^H A) x = A^H b by Gaussian elimination.
    fn normal_equations(a: &CMat, b: &[Complex64]) -> Vec<Complex64> {
        let ah = a.adjoint();
        let lhs = ah.matmul(a).unwrap();
        let rhs = ah.mul_vec(b).unwrap();
        let rhs = CMat::from_vec(rhs.len(), 1, rhs).unwrap();
        solve(&lhs, &rhs, 1e-14).unwrap().column(0)
    }

    #[test]
    fn lstsq_matches_normal_equations() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let a = random_cmat(6, 3, &mut rng);
            let b: Vec<_> = (0..6).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let x = lstsq(&a, &b).unwrap();
            let oracle = normal_equations(&a, &b);
            for (p, q) in x.iter().zip(&oracle) {
                assert!((p - q).norm() < 1e-8);
            }
            // Residual is orthogonal to the column space.
            let ax = a.mul_vec(&x).unwrap();
            let res: Vec<_> = b.iter().zip(&ax).map(|(p, q)| p - q).collect();
            let proj = a.adjoint().mul_vec(&res).unwrap();
            assert!(proj.iter().all(|z| z.norm() < 1e-8));
        }
    }

    #[test]
    fn lstsq_square_equals_exact_solve() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = random_cmat(4, 4, &mut rng);
        let b: Vec<_> = (0..4).map(|_| c(rng.gen_range(-1.0..1.0), 0.0)).collect();
        let x = lstsq(&a, &b).unwrap();
        let exact = solve(&a, &CMat::from_vec(4, 1, b.clone()).unwrap(), 1e-14).unwrap().column(0);
        for (p, q) in x.iter().zip(&exact) {
            assert!((p - q).norm() < 1e-8);
        }
    }

    #[test]
    fn lstsq_rejects_rank_deficiency() {
        let a = CMat::from_vec(3, 2, vec![c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0), c(3.0, 0.0), c(6.0, 0.0)]).unwrap();
        let err = lstsq(&a, &[c(1.0, 0.0); 3]).unwrap_err();
        match err {
            Error::Singular(msg) => assert!(msg.contains("1e-10")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn solve_rejects_singular() {
        let a = CMat::from_vec(2, 2, vec![c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(matches!(solve(&a, &CMat::identity(2), 1e-12), Err(Error::Singular(_))));
    }
}
