//! Dense real/complex matrix kernel.
//!
//! Everything here is generic over [`Scalar`], which is implemented for `f64`
//! and [`Complex64`]. Rank, kernel and invertibility decisions all go through
//! singular values compared against [`Tolerance::rank_threshold`]; eigenvalues
//! are computed for reporting only.

use nalgebra::{ComplexField, DMatrix, Schur, SVD};
pub use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type RealMatrix = DMatrix<f64>;
pub type ComplexMatrix = DMatrix<Complex64>;

/// The imaginary unit.
pub const IMAG: Complex64 = Complex64::new(0.0, 1.0);

const MAX_ITER: usize = 10_000;

/// Thresholds used for every numerical decision.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Relative singular-value cutoff, scaled by `max(rows, cols) * sigma_max`.
    pub rank_rel: f64,
    /// Absolute eigenvalue proximity threshold.
    pub eig_abs: f64,
    /// Absolute threshold for matrix equality assertions.
    pub equality_abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rank_rel: 64.0 * f64::EPSILON,
            eig_abs: 1e-8,
            equality_abs: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn new(rank_rel: f64, eig_abs: f64, equality_abs: f64) -> Result<Self> {
        let tol = Self {
            rank_rel,
            eig_abs,
            equality_abs,
        };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(self.rank_rel) || !positive(self.eig_abs) || !positive(self.equality_abs) {
            return Err(Error::InvalidTolerance(
                "all thresholds must be finite and positive",
            ));
        }
        if self.rank_rel >= 1.0 {
            return Err(Error::InvalidTolerance("rank_rel must be below 1"));
        }
        Ok(())
    }

    /// Singular values at or below this value count as zero.
    pub fn rank_threshold(&self, rows: usize, cols: usize, sigma_max: f64) -> f64 {
        self.rank_rel * rows.max(cols) as f64 * sigma_max
    }
}

/// Field of matrix entries: `f64` or [`Complex64`].
pub trait Scalar: ComplexField<RealField = f64> + Copy {
    fn to_c64(self) -> Complex64;

    #[doc(hidden)]
    fn spectrum(m: DMatrix<Self>) -> Result<Vec<Complex64>>;
}

impl Scalar for f64 {
    fn to_c64(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }

    // Real Schur form: 2x2 blocks yield exact conjugate pairs.
    fn spectrum(m: DMatrix<Self>) -> Result<Vec<Complex64>> {
        with_similarity_retries(m, |m| {
            Schur::try_new(m, f64::EPSILON, MAX_ITER)
                .map(|s| s.complex_eigenvalues().iter().copied().collect())
        })
    }
}

impl Scalar for Complex64 {
    fn to_c64(self) -> Complex64 {
        self
    }

    fn spectrum(m: DMatrix<Self>) -> Result<Vec<Complex64>> {
        with_similarity_retries(m, |m| {
            Schur::try_new(m, f64::EPSILON, MAX_ITER)
                .and_then(|s| s.eigenvalues())
                .map(|e| e.iter().copied().collect())
        })
    }
}

// Francis iterations can stall on highly structured input such as permutation
// matrices. Retry on H M H for a few fixed Householder reflectors H.
fn with_similarity_retries<T: Scalar>(
    m: DMatrix<T>,
    eig: impl Fn(DMatrix<T>) -> Option<Vec<Complex64>>,
) -> Result<Vec<Complex64>> {
    if let Some(ev) = eig(m.clone()) {
        return Ok(ev);
    }
    let n = m.nrows();
    for attempt in 1..=4 {
        let v = nalgebra::DVector::<f64>::from_fn(n, |j, _| {
            ((attempt * (j + 1)) as f64 * 0.7 + 0.3).sin()
        });
        let h = DMatrix::<f64>::identity(n, n) - (&v * v.transpose()) * (2.0 / v.norm_squared());
        let h = h.map(|x| T::from_real(x));
        if let Some(ev) = eig(&h * &m * &h) {
            return Ok(ev);
        }
    }
    Err(Error::NoConvergence)
}

/// Thin singular value decomposition `M = U diag(S) V*` with `S` descending.
#[derive(Debug, Clone)]
pub struct Svd<T: Scalar> {
    pub u: DMatrix<T>,
    pub singular_values: Vec<f64>,
    pub v: DMatrix<T>,
}

impl<T: Scalar> Svd<T> {
    pub fn sigma_max(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }

    pub fn sigma_min(&self) -> f64 {
        self.singular_values.last().copied().unwrap_or(0.0)
    }

    pub fn reconstruct(&self) -> DMatrix<T> {
        let mut us = self.u.clone();
        for (j, &s) in self.singular_values.iter().enumerate() {
            us.column_mut(j).scale_mut(s);
        }
        us * self.v.adjoint()
    }
}

pub fn ensure_finite<T: Scalar>(m: &DMatrix<T>) -> Result<()> {
    if m.nrows() == 0 || m.ncols() == 0 || m.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidMatrix);
    }
    Ok(())
}

pub fn ensure_square<T: Scalar>(m: &DMatrix<T>) -> Result<usize> {
    let (r, c) = m.shape();
    if r != c {
        return Err(Error::ShapeMismatch {
            expected: (r, r),
            found: (r, c),
        });
    }
    Ok(r)
}

pub fn ensure_same_shape<S: Scalar, T: Scalar>(a: &DMatrix<S>, b: &DMatrix<T>) -> Result<()> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch {
            expected: a.shape(),
            found: b.shape(),
        });
    }
    Ok(())
}

pub fn svd<T: Scalar>(m: &DMatrix<T>) -> Result<Svd<T>> {
    ensure_finite(m)?;
    let raw = SVD::try_new_unordered(m.clone(), true, true, f64::EPSILON, MAX_ITER)
        .ok_or(Error::NoConvergence)?;
    let (u_raw, v_t_raw) = match (raw.u, raw.v_t) {
        (Some(u), Some(v_t)) => (u, v_t),
        _ => return Err(Error::NoConvergence),
    };
    let order = descending_order(raw.singular_values.as_slice());
    let k = order.len();
    let mut u = DMatrix::zeros(m.nrows(), k);
    let mut v = DMatrix::zeros(m.ncols(), k);
    let v_raw = v_t_raw.adjoint();
    for (dst, &src) in order.iter().enumerate() {
        u.set_column(dst, &u_raw.column(src));
        v.set_column(dst, &v_raw.column(src));
    }
    let singular_values = order.iter().map(|&i| raw.singular_values[i]).collect();
    Ok(Svd {
        u,
        singular_values,
        v,
    })
}

/// Singular values only, sorted descending.
pub fn singular_values<T: Scalar>(m: &DMatrix<T>) -> Result<Vec<f64>> {
    ensure_finite(m)?;
    let raw = SVD::try_new_unordered(m.clone(), false, false, f64::EPSILON, MAX_ITER)
        .ok_or(Error::NoConvergence)?;
    let mut s: Vec<f64> = raw.singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    Ok(s)
}

fn descending_order(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    idx
}

pub fn sigma_min<T: Scalar>(m: &DMatrix<T>) -> Result<f64> {
    Ok(singular_values(m)?.last().copied().unwrap_or(0.0))
}

/// Spectral norm.
pub fn operator_norm<T: Scalar>(m: &DMatrix<T>) -> Result<f64> {
    Ok(singular_values(m)?.first().copied().unwrap_or(0.0))
}

/// Number of singular values above the rank threshold.
pub fn rank<T: Scalar>(m: &DMatrix<T>, tol: &Tolerance) -> Result<usize> {
    let s = singular_values(m)?;
    Ok(rank_from_singular_values(&s, m.nrows(), m.ncols(), tol))
}

pub fn rank_from_singular_values(s: &[f64], rows: usize, cols: usize, tol: &Tolerance) -> usize {
    let thr = tol.rank_threshold(rows, cols, s.first().copied().unwrap_or(0.0));
    s.iter().filter(|&&x| x > thr).count()
}

/// Whether `sigma_min` clears the rank threshold of a square `n x n` matrix.
pub fn is_invertible_sv(s: &[f64], n: usize, tol: &Tolerance) -> bool {
    rank_from_singular_values(s, n, n, tol) == n
}

/// Orthonormal basis of the null space, one column per kernel dimension.
///
/// Columns are right singular vectors; each is scaled so that its
/// largest-magnitude entry is real and positive.
pub fn kernel_basis<T: Scalar>(m: &DMatrix<T>, tol: &Tolerance) -> Result<DMatrix<T>> {
    ensure_finite(m)?;
    let (rows, cols) = m.shape();
    // pad wide matrices so the thin SVD yields a full set of right vectors
    let square;
    let work = if rows < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.rows_mut(0, rows).copy_from(m);
        square = p;
        &square
    } else {
        m
    };
    let dec = svd(work)?;
    let r = rank_from_singular_values(&dec.singular_values, rows, cols, tol);
    let mut k = dec.v.columns(r, cols - r).into_owned();
    for mut col in k.column_iter_mut() {
        let pivot = col
            .iter()
            .copied()
            .max_by(|a, b| a.modulus().total_cmp(&b.modulus()))
            .unwrap_or_else(T::zero);
        if pivot.modulus() > 0.0 {
            let phase = pivot.signum().conjugate();
            col.iter_mut().for_each(|x| *x *= phase);
        }
    }
    Ok(k)
}

/// Inverse of a square matrix; fails when `sigma_min` is at or below the rank threshold.
pub fn invert<T: Scalar>(m: &DMatrix<T>, tol: &Tolerance) -> Result<DMatrix<T>> {
    let n = ensure_square(m)?;
    let s = singular_values(m)?;
    let sigma_min = s.last().copied().unwrap_or(0.0);
    if !is_invertible_sv(&s, n, tol) {
        return Err(Error::Singular { sigma_min });
    }
    m.clone().try_inverse().ok_or(Error::Singular { sigma_min })
}

pub fn eigenvalues<T: Scalar>(m: &DMatrix<T>) -> Result<Vec<Complex64>> {
    ensure_square(m)?;
    ensure_finite(m)?;
    T::spectrum(m.clone())
}

pub fn to_complex<T: Scalar>(m: &DMatrix<T>) -> ComplexMatrix {
    m.map(|x| x.to_c64())
}

/// `re + i*im`.
pub fn complexify(re: &RealMatrix, im: &RealMatrix) -> Result<ComplexMatrix> {
    ensure_same_shape(re, im)?;
    Ok(re.zip_map(im, Complex64::new))
}

pub fn real_part(m: &ComplexMatrix) -> RealMatrix {
    m.map(|z| z.re)
}

pub fn imag_part(m: &ComplexMatrix) -> RealMatrix {
    m.map(|z| z.im)
}

/// `Id + i*A` for a real square `A`.
pub fn id_plus_i(a: &RealMatrix) -> ComplexMatrix {
    let n = a.nrows();
    DMatrix::from_fn(n, a.ncols(), |r, c| {
        Complex64::new(if r == c { 1.0 } else { 0.0 }, a[(r, c)])
    })
}

/// Largest entry modulus of `a - b`.
pub fn max_abs_diff<T: Scalar>(a: &DMatrix<T>, b: &DMatrix<T>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(&x, &y)| (x - y).modulus())
        .fold(0.0, f64::max)
}

/// Spectral norm of `M* M - Id`.
pub fn unitarity_defect<T: Scalar>(m: &DMatrix<T>) -> Result<f64> {
    let g = m.adjoint() * m - DMatrix::<T>::identity(m.ncols(), m.ncols());
    operator_norm(&g)
}

pub fn is_orthogonal(m: &RealMatrix, tol: &Tolerance) -> Result<bool> {
    ensure_square(m)?;
    Ok(unitarity_defect(m)? <= tol.equality_abs)
}

/// Counter-clockwise rotation of the plane by `theta`.
pub fn rotation(theta: f64) -> RealMatrix {
    let (s, c) = theta.sin_cos();
    RealMatrix::from_row_slice(2, 2, &[c, -s, s, c])
}

pub fn block_diag<T: Scalar>(a: &DMatrix<T>, b: &DMatrix<T>) -> DMatrix<T> {
    let (ra, ca) = a.shape();
    let (rb, cb) = b.shape();
    let mut out = DMatrix::zeros(ra + rb, ca + cb);
    out.view_mut((0, 0), (ra, ca)).copy_from(a);
    out.view_mut((ra, ca), (rb, cb)).copy_from(b);
    out
}

/// Smallest `|lambda - target|` over a spectrum.
pub fn min_distance(eigenvalues: &[Complex64], target: Complex64) -> f64 {
    eigenvalues
        .iter()
        .map(|&z| (z - target).norm())
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn identity_singular_values() {
        let s = singular_values(&RealMatrix::identity(3, 3)).unwrap();
        assert_eq!(s.len(), 3);
        for x in s {
            assert!((x - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn orthogonal_matrix_has_unit_singular_values() {
        let s = singular_values(&rotation(std::f64::consts::FRAC_PI_2)).unwrap();
        assert!(s.iter().all(|x| (x - 1.0).abs() < 1e-14));
    }

    #[test]
    fn svd_orders_descending_and_reconstructs() {
        let m = RealMatrix::from_row_slice(3, 2, &[1.0, 7.0, 0.5, -2.0, 3.0, 0.0]);
        let d = svd(&m).unwrap();
        assert!(d.singular_values.windows(2).all(|w| w[0] >= w[1]));
        assert!(max_abs_diff(&d.reconstruct(), &m) < 1e-13);
        assert!(unitarity_defect(&d.u).unwrap() < 1e-13);
        assert!(unitarity_defect(&d.v).unwrap() < 1e-13);
    }

    #[test]
    fn non_finite_input_is_rejected() {
        let mut m = RealMatrix::identity(2, 2);
        m[(0, 1)] = f64::NAN;
        assert_eq!(svd(&m).unwrap_err(), Error::InvalidMatrix);
        m[(0, 1)] = f64::INFINITY;
        assert_eq!(
            rank(&m, &Tolerance::default()).unwrap_err(),
            Error::InvalidMatrix
        );
    }

    #[test]
    fn quarter_turn_eigenvalues() {
        let ev = sorted(eigenvalues(&rotation(std::f64::consts::FRAC_PI_2)).unwrap());
        assert!((ev[0] - c(0.0, -1.0)).norm() < 1e-14);
        assert!((ev[1] - c(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn eighth_turn_eigenvalues() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let ev = sorted(eigenvalues(&rotation(std::f64::consts::FRAC_PI_4)).unwrap());
        assert!((ev[0] - c(h, -h)).norm() < 1e-14);
        assert!((ev[1] - c(h, h)).norm() < 1e-14);
    }

    #[test]
    fn identity_eigenvalues() {
        let ev = eigenvalues(&RealMatrix::identity(5, 5)).unwrap();
        assert!(ev.iter().all(|z| (z - c(1.0, 0.0)).norm() < 1e-15));
    }

    #[test]
    fn eigenvalues_require_square() {
        let err = eigenvalues(&RealMatrix::zeros(2, 3)).unwrap_err();
        assert!(matches!(err, Error::ShapeMismatch { .. }));
    }

    #[test]
    fn complex_eigenvalues_of_triangular() {
        let m = ComplexMatrix::from_row_slice(
            2,
            2,
            &[c(1.0, 1.0), c(3.0, 0.0), c(0.0, 0.0), c(-2.0, 0.5)],
        );
        let ev = sorted(eigenvalues(&m).unwrap());
        assert!((ev[0] - c(-2.0, 0.5)).norm() < 1e-13);
        assert!((ev[1] - c(1.0, 1.0)).norm() < 1e-13);
    }

    #[test]
    fn rank_cases() {
        let tol = Tolerance::default();
        assert_eq!(rank(&RealMatrix::identity(4, 4), &tol).unwrap(), 4);
        let b = ComplexMatrix::from_row_slice(
            2,
            2,
            &[c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(1.0, 0.0)],
        );
        assert_eq!(rank(&b, &tol).unwrap(), 1);
        assert_eq!(rank(&RealMatrix::zeros(3, 4), &tol).unwrap(), 0);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let k = kernel_basis(&RealMatrix::identity(3, 3), &Tolerance::default()).unwrap();
        assert_eq!(k.shape(), (3, 0));
    }

    #[test]
    fn kernel_of_row_of_ones() {
        let k = kernel_basis(
            &RealMatrix::from_row_slice(1, 2, &[1.0, 1.0]),
            &Tolerance::default(),
        )
        .unwrap();
        assert_eq!(k.ncols(), 1);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        // sign fixed by the largest-magnitude entry; both have equal modulus
        assert!((k[(0, 0)].abs() - h).abs() < 1e-14);
        assert!((k[(0, 0)] + k[(1, 0)]).abs() < 1e-14);
    }

    #[test]
    fn kernel_of_duplicated_first_vector() {
        // columns e1, e1, e2, e3
        let mut s = RealMatrix::zeros(3, 4);
        s[(0, 0)] = 1.0;
        s[(0, 1)] = 1.0;
        s[(1, 2)] = 1.0;
        s[(2, 3)] = 1.0;
        let k = kernel_basis(&s, &Tolerance::default()).unwrap();
        assert_eq!(k.ncols(), 1);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = [h, -h, 0.0, 0.0];
        let flip = k[(0, 0)].signum();
        for (i, e) in expected.iter().enumerate() {
            assert!((flip * k[(i, 0)] - e).abs() < 1e-14);
        }
    }

    #[test]
    fn invert_diagonal_complex() {
        let m = ComplexMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c(1.0, -1.0),
            c(1.0, 1.0),
        ]));
        let inv = invert(&m, &Tolerance::default()).unwrap();
        assert!((inv[(0, 0)] - c(1.0, 0.0) / c(1.0, -1.0)).norm() < 1e-15);
        assert!((inv[(1, 1)] - c(1.0, 0.0) / c(1.0, 1.0)).norm() < 1e-15);
        assert!(inv[(0, 1)].norm() < 1e-15);
    }

    #[test]
    fn invert_detects_singular() {
        let b = ComplexMatrix::from_row_slice(
            2,
            2,
            &[c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(1.0, 0.0)],
        );
        assert!(matches!(
            invert(&b, &Tolerance::default()),
            Err(Error::Singular { .. })
        ));
    }

    #[test]
    fn tolerance_validation() {
        assert!(Tolerance::new(1e-12, 1e-8, 1e-9).is_ok());
        assert!(Tolerance::new(0.0, 1e-8, 1e-9).is_err());
        assert!(Tolerance::new(1.0, 1e-8, 1e-9).is_err());
        assert!(Tolerance::new(1e-12, f64::NAN, 1e-9).is_err());
    }

    #[test]
    fn block_diag_layout() {
        let a = RealMatrix::from_element(1, 1, 2.0);
        let b = rotation(0.0);
        let d = block_diag(&a, &b);
        assert_eq!(d.shape(), (3, 3));
        assert_eq!(d[(0, 0)], 2.0);
        assert_eq!(d[(1, 1)], 1.0);
        assert_eq!(d[(0, 2)], 0.0);
    }
}
