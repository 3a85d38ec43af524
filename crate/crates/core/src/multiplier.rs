//! Shift-invariant operators on the cyclic group of order `N`.
//!
//! Every operator here is a Fourier multiplier: `A x = idft(m . dft(x))`
//! with the unitary DFT. It commutes with the cyclic shift, and it maps real
//! signals to real signals iff `m[k] = conj(m[N-k])`.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Complex64, ComplexMatrix, RealMatrix, Tolerance, IMAG};

fn transform(x: &[Complex64], inverse: bool) -> Vec<Complex64> {
    let n = x.len();
    if n == 0 {
        return Vec::new();
    }
    let mut planner = FftPlanner::new();
    let fft = if inverse {
        planner.plan_fft_inverse(n)
    } else {
        planner.plan_fft_forward(n)
    };
    let mut buf = x.to_vec();
    fft.process(&mut buf);
    let scale = 1.0 / (n as f64).sqrt();
    buf.iter_mut().for_each(|v| *v *= scale);
    buf
}

/// Unitary DFT: `X[k] = N^{-1/2} sum_j x[j] exp(-2 pi i jk / N)`.
pub fn dft(x: &[Complex64]) -> Vec<Complex64> {
    transform(x, false)
}

pub fn idft(x: &[Complex64]) -> Vec<Complex64> {
    transform(x, true)
}

pub fn real_signal(x: &[f64]) -> Vec<Complex64> {
    x.iter().map(|&v| Complex64::new(v, 0.0)).collect()
}

/// The cyclic shift `(Tx)[j] = x[j-1]`.
pub fn shift_matrix(n: usize) -> RealMatrix {
    let mut t = RealMatrix::zeros(n, n);
    for j in 0..n {
        t[((j + 1) % n, j)] = 1.0;
    }
    t
}

/// Frequency-domain symbol of a shift-invariant operator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Multiplier {
    values: Vec<Complex64>,
}

impl Multiplier {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidMatrix);
        }
        if !values.len().is_multiple_of(2) {
            return Err(Error::OddLength(values.len()));
        }
        Ok(Self { values })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(real_signal(values))
    }

    pub fn constant(n: usize, value: Complex64) -> Result<Self> {
        Self::new(vec![value; n])
    }

    /// Symbol of the cyclic shift.
    pub fn shift(n: usize) -> Result<Self> {
        Self::new(
            (0..n)
                .map(|k| Complex64::from_polar(1.0, -2.0 * PI * k as f64 / n as f64))
                .collect(),
        )
    }

    /// `+1` on frequencies `|k| <= cutoff`, `-1` elsewhere.
    pub fn low_pass_sign(n: usize, cutoff: usize) -> Result<Self> {
        Self::from_real(
            &(0..n)
                .map(|k| if k.min(n - k) <= cutoff { 1.0 } else { -1.0 })
                .collect::<Vec<_>>(),
        )
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// `m[k] = conj(m[N-k])` for all `k`.
    pub fn conjugate_symmetry_defect(&self) -> f64 {
        let n = self.len();
        (0..n)
            .map(|k| (self.values[k] - self.values[(n - k) % n].conj()).norm())
            .fold(0.0, f64::max)
    }

    /// The `N x N` matrix of the operator.
    pub fn matrix(&self) -> ComplexMatrix {
        let n = self.len();
        let mut out = ComplexMatrix::zeros(n, n);
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..n {
            e[j] = Complex64::new(1.0, 0.0);
            let col = self.apply_unchecked(&e);
            e[j] = Complex64::new(0.0, 0.0);
            for (i, v) in col.into_iter().enumerate() {
                out[(i, j)] = v;
            }
        }
        out
    }

    fn apply_unchecked(&self, x: &[Complex64]) -> Vec<Complex64> {
        let spectrum: Vec<_> = dft(x)
            .iter()
            .zip(&self.values)
            .map(|(a, b)| a * b)
            .collect();
        idft(&spectrum)
    }
}

pub fn apply_multiplier(m: &Multiplier, x: &[Complex64]) -> Result<Vec<Complex64>> {
    if x.len() != m.len() {
        return Err(Error::LengthMismatch {
            left: m.len(),
            right: x.len(),
        });
    }
    Ok(m.apply_unchecked(x))
}

/// Outcome of the rebricking-multiplier test, with one reason per failed clause.
#[derive(Debug, Clone, Serialize)]
pub struct MultiplierValidation {
    pub valid: bool,
    pub reasons: Vec<String>,
}

/// A multiplier rebricks every orthonormal basis of translates iff it is
/// real, even and takes only the values `+1` and `-1`.
pub fn validate_rebrick_multiplier(m: &Multiplier, tol: &Tolerance) -> MultiplierValidation {
    let eps = tol.equality_abs;
    let n = m.len();
    let v = m.values();
    let mut reasons = Vec::new();
    if let Some(k) = (0..n).find(|&k| v[k].im.abs() > eps) {
        reasons.push(format!("not real: m[{k}] = {}", v[k]));
    }
    if let Some(k) = (0..n).find(|&k| (v[k] - v[(n - k) % n]).norm() > eps) {
        reasons.push(format!("not even: m[{k}] != m[{}]", (n - k) % n));
    }
    if let Some(k) = (0..n).find(|&k| (v[k].norm() - 1.0).abs() > eps) {
        reasons.push(format!("not unimodular: |m[{k}]| = {}", v[k].norm()));
    }
    MultiplierValidation {
        valid: reasons.is_empty(),
        reasons,
    }
}

/// Translates `T^n (Bx)` of the rebricked generator, `B = (Id + iA)/sqrt 2`,
/// and whether they form an orthonormal basis.
///
/// The translates of `x` are an orthonormal basis iff every unitary DFT
/// coefficient of `x` has modulus `N^{-1/2}`.
pub fn rebrick_translates(
    x: &[f64],
    m: &Multiplier,
    tol: &Tolerance,
) -> Result<(ComplexMatrix, bool)> {
    let n = m.len();
    if x.len() != n {
        return Err(Error::LengthMismatch {
            left: n,
            right: x.len(),
        });
    }
    let spectrum = dft(&real_signal(x));
    let level = (n as f64).sqrt();
    if spectrum
        .iter()
        .any(|c| (c.norm() * level - 1.0).abs() > tol.equality_abs)
    {
        return Err(Error::GeneratorNotOnb);
    }
    let symbol: Vec<_> = m
        .values()
        .iter()
        .map(|&v| (Complex64::new(1.0, 0.0) + IMAG * v) * FRAC_1_SQRT_2)
        .collect();
    let y = idft(
        &spectrum
            .iter()
            .zip(&symbol)
            .map(|(a, b)| a * b)
            .collect::<Vec<_>>(),
    );
    let mut out = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            out[((i + j) % n, j)] = y[i];
        }
    }
    let unitary = linalg::unitarity_defect(&out)? <= tol.equality_abs;
    Ok((out, unitary))
}

/// Symbol of the discrete Hilbert transform: `-i` on positive frequencies,
/// `+i` on negative ones, `0` at DC and Nyquist.
pub fn discrete_hilbert(n: usize) -> Result<Multiplier> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::OddLength(n));
    }
    let half = n / 2;
    Multiplier::new(
        (0..n)
            .map(|k| match k {
                0 => Complex64::new(0.0, 0.0),
                k if k < half => -IMAG,
                k if k == half => Complex64::new(0.0, 0.0),
                _ => IMAG,
            })
            .collect(),
    )
}

/// Rank and kernel dimension of `Id + iH`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AnalyticDefect {
    pub n: usize,
    pub rank: usize,
    pub kernel_dim: usize,
}

/// The symbol of `Id + iH` is 2 on positive frequencies, 1 at DC and
/// Nyquist, and vanishes on the `N/2 - 1` negative frequencies.
pub fn analytic_defect(n: usize, tol: &Tolerance) -> Result<AnalyticDefect> {
    let h = discrete_hilbert(n)?;
    let op = ComplexMatrix::identity(n, n) + h.matrix() * IMAG;
    let rank = linalg::rank(&op, tol)?;
    Ok(AnalyticDefect {
        n,
        rank,
        kernel_dim: n - rank,
    })
}

/// `f - iHf` for the DC- and Nyquist-free part `f` of `x`, a kernel vector of `Id + iH`.
///
/// On that subspace `H^2 = -Id`; the DC and Nyquist components of `x`
/// would otherwise survive in `(Id + iH)(x - iHx)`.
pub fn analytic_witness(x: &[f64]) -> Result<Vec<Complex64>> {
    let n = x.len();
    let h = discrete_hilbert(n)?;
    let mut spectrum = dft(&real_signal(x));
    spectrum[0] = Complex64::new(0.0, 0.0);
    spectrum[n / 2] = Complex64::new(0.0, 0.0);
    let f = idft(&spectrum);
    let hf = apply_multiplier(&h, &f)?;
    Ok(f.iter().zip(&hf).map(|(a, b)| a - IMAG * b).collect())
}

/// Check of the rebricked trigonometric basis on a uniform grid.
#[derive(Debug, Clone, Serialize)]
pub struct TrigReport {
    pub k: usize,
    pub grid: usize,
    /// Grid-norm distance of `(b_j + i c_j)/sqrt 2` to its predicted form, per `j`.
    pub deviations: Vec<f64>,
    pub max_deviation: f64,
    /// Phase `p_j` with `(b_j + i c_j)/sqrt 2 = p_j exp(2 pi i s_j k x)`.
    pub phases: Vec<Complex64>,
    pub unimodular: bool,
    /// Max entry of `Gram - Id` for the cosine-first and sine-first systems.
    pub gram_defect_b: f64,
    pub gram_defect_c: f64,
}

/// Rebrick `{1, sqrt2 cos, sqrt2 sin, ..}` with `{1, sqrt2 sin, sqrt2 cos, ..}`
/// up to frequency `k` and compare against the complex exponentials.
pub fn trig_rebrick_demo(k: usize, grid: usize) -> Result<TrigReport> {
    let needed = 4 * k + 2;
    if grid < needed {
        return Err(Error::GridTooSmall { grid, k, needed });
    }
    let xs: Vec<f64> = (0..grid).map(|j| j as f64 / grid as f64).collect();
    let count = 2 * k + 1;
    let mut b = RealMatrix::zeros(grid, count);
    let mut c = RealMatrix::zeros(grid, count);
    for (row, &x) in xs.iter().enumerate() {
        b[(row, 0)] = 1.0;
        c[(row, 0)] = 1.0;
        for f in 1..=k {
            let (s, co) = (2.0 * PI * f as f64 * x).sin_cos();
            b[(row, 2 * f - 1)] = SQRT_2 * co;
            b[(row, 2 * f)] = SQRT_2 * s;
            c[(row, 2 * f - 1)] = SQRT_2 * s;
            c[(row, 2 * f)] = SQRT_2 * co;
        }
    }
    let grid_norm =
        |v: &[Complex64]| (v.iter().map(|z| z.norm_sqr()).sum::<f64>() / grid as f64).sqrt();
    let mut deviations = Vec::with_capacity(count);
    let mut phases = Vec::with_capacity(count);
    for j in 0..count {
        let (phase, freq) = match j {
            0 => (Complex64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2), 0.0),
            j if j % 2 == 1 => (Complex64::new(1.0, 0.0), j.div_ceil(2) as f64),
            j => (IMAG, -((j / 2) as f64)),
        };
        let diff: Vec<Complex64> = xs
            .iter()
            .enumerate()
            .map(|(row, &x)| {
                let got = Complex64::new(b[(row, j)], c[(row, j)]) * FRAC_1_SQRT_2;
                got - phase * Complex64::from_polar(1.0, 2.0 * PI * freq * x)
            })
            .collect();
        deviations.push(grid_norm(&diff));
        phases.push(phase);
    }
    let gram_defect = |m: &RealMatrix| {
        let g = m.transpose() * m / grid as f64;
        linalg::max_abs_diff(&g, &RealMatrix::identity(count, count))
    };
    Ok(TrigReport {
        k,
        grid,
        max_deviation: deviations.iter().copied().fold(0.0, f64::max),
        deviations,
        unimodular: phases.iter().all(|p| (p.norm() - 1.0).abs() < 1e-15),
        phases,
        gram_defect_b: gram_defect(&b),
        gram_defect_c: gram_defect(&c),
    })
}

/// Sampled symbol for the conditioning sweep.
///
/// Bin `k` in `1..N/2` carries frequency `w = k`, with `m(w) = i - i/w` for
/// `w >= 2` and `m(w) = i/2` below. Negative bins hold the conjugates, DC holds
/// `1/2` and Nyquist `1`. Then `|1 + i m|` is `1/w` on the positive band, so its
/// minimum over the grid is `1/(N/2 - 1)`.
pub fn sweep_symbol(n: usize) -> Result<Multiplier> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::OddLength(n));
    }
    if n < 6 {
        return Err(Error::TooSmall(n));
    }
    let half = n / 2;
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    v[0] = Complex64::new(0.5, 0.0);
    v[half] = Complex64::new(1.0, 0.0);
    for k in 1..half {
        let w = k as f64;
        let m = if w >= 2.0 {
            IMAG - IMAG / w
        } else {
            IMAG * 0.5
        };
        v[k] = m;
        v[n - k] = m.conj();
    }
    Multiplier::new(v)
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub n: usize,
    /// Smallest singular value of the matrix `Id + iA_N`.
    pub sigma_min: f64,
    /// `min_k |1 + i m_N[k]|`.
    pub symbol_min: f64,
    pub kernel_dim: usize,
}

/// `sigma_min(Id + iA_N)` for the sampled symbol at each grid size.
pub fn conditioning_sweep(ns: &[usize], tol: &Tolerance) -> Result<Vec<SweepRow>> {
    ns.iter()
        .map(|&n| {
            let m = sweep_symbol(n)?;
            let full = m.matrix();
            let imag_defect = linalg::imag_part(&full).amax();
            if imag_defect > tol.equality_abs {
                return Err(Error::Inconsistent(format!(
                    "sampled operator is not real (imaginary part {imag_defect:e})"
                )));
            }
            let a = linalg::real_part(&full);
            let op = linalg::id_plus_i(&a);
            let sv = linalg::singular_values(&op)?;
            let sigma_min = sv[n - 1];
            let symbol_min = m
                .values()
                .iter()
                .map(|&v| (Complex64::new(1.0, 0.0) + IMAG * v).norm())
                .fold(f64::INFINITY, f64::min);
            if (sigma_min - symbol_min).abs() > tol.equality_abs {
                return Err(Error::Inconsistent(format!(
                    "sigma_min {sigma_min:e} and symbol minimum {symbol_min:e} disagree"
                )));
            }
            let kernel_dim = n - linalg::rank_from_singular_values(&sv, n, n, tol);
            Ok(SweepRow {
                n,
                sigma_min,
                symbol_min,
                kernel_dim,
            })
        })
        .collect()
}
