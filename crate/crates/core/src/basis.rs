//! Rebricking of real bases into complex bases.
//!
//! A pair of real bases, stored as the columns of square matrices `V1` and `V2`,
//! rebricks to a complex basis exactly when `V1 + i V2` is invertible. With the
//! transfer operator `A = V2 V1^{-1}` this is the same as `Id + iA` being
//! invertible, as `Id + A^2` being invertible, and as `i` not being an
//! eigenvalue of `A`. [`RebrickVerdict`] records all three, but only the
//! singular-value test decides.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Complex64, ComplexMatrix, RealMatrix, Tolerance, IMAG};

/// Factor defining the warning band `[threshold, NEAR_BAND * threshold]` for `sigma_min`.
pub const NEAR_BAND: f64 = 100.0;

/// Certificate for one rebricking decision.
#[derive(Debug, Clone, Serialize)]
pub struct RebrickVerdict {
    pub rebrickable: bool,
    /// Smallest singular value of `V1 + iV2` (or `Id + iA`).
    pub sigma_min_b: f64,
    /// The rank threshold `sigma_min_b` was compared against.
    pub threshold: f64,
    pub eigenvalues_a: Vec<Complex64>,
    /// `min |lambda - i|` over the eigenvalues of `A`.
    pub min_dist_to_i: f64,
    /// Smallest singular value of `Id + A^2`.
    pub ida2_sigma_min: f64,
    pub condition_number: f64,
    /// The singular-value, `Id + A^2` and eigenvalue tests all agree.
    pub consistent: bool,
    /// Inside the warning band, or the three tests disagree.
    pub near_degenerate: bool,
}

impl RebrickVerdict {
    /// Assemble the verdict for `B` where `B = V(Id + iA)`-like and `A` is the transfer operator.
    pub(crate) fn assess(b: &ComplexMatrix, a: &RealMatrix, tol: &Tolerance) -> Result<Self> {
        let n = linalg::ensure_square(b)?;
        let sv = linalg::singular_values(b)?;
        let sigma_max = sv[0];
        let sigma_min_b = sv[n - 1];
        let threshold = tol.rank_threshold(n, n, sigma_max);
        let rebrickable = sigma_min_b > threshold;

        let eigenvalues_a = linalg::eigenvalues(a)?;
        let min_dist_to_i = linalg::min_distance(&eigenvalues_a, IMAG);

        let id_a2 = RealMatrix::identity(n, n) + a * a;
        let sv2 = linalg::singular_values(&id_a2)?;
        let ida2_sigma_min = sv2[n - 1];
        // Id + A^2 can vanish outright, so scale by 1 + ||A||^2 rather than its own sigma_max
        let norm_a = linalg::operator_norm(a)?;
        let ida2_ok = ida2_sigma_min > tol.rank_threshold(n, n, 1.0 + norm_a * norm_a);
        let eig_ok = min_dist_to_i > tol.eig_abs;

        let consistent = rebrickable == ida2_ok && rebrickable == eig_ok;
        let near_degenerate = !consistent || (rebrickable && sigma_min_b <= NEAR_BAND * threshold);
        let condition_number = if sigma_min_b > 0.0 {
            sigma_max / sigma_min_b
        } else {
            f64::INFINITY
        };
        Ok(Self {
            rebrickable,
            sigma_min_b,
            threshold,
            eigenvalues_a,
            min_dist_to_i,
            ida2_sigma_min,
            condition_number,
            consistent,
            near_degenerate,
        })
    }
}

/// Exact and estimated frame bounds of a rebricked Riesz basis `(Id + iA) V`.
#[derive(Debug, Clone, Serialize)]
pub struct RieszBoundReport {
    /// Lower bound of the real basis, `sigma_min(V)^2`.
    pub c: f64,
    /// Upper bound of the real basis, `sigma_max(V)^2`.
    pub big_c: f64,
    /// `sigma_min(BV)^2`.
    pub c_exact: f64,
    /// `sigma_max(BV)^2`.
    pub big_c_exact: f64,
    /// `c * ||B^{-1}||^{-2}`.
    pub c_lower_estimate: f64,
    /// `||B||^2 * C`.
    pub big_c_upper_estimate: f64,
    /// Spectral norm of `B = Id + iA` on the complex space.
    pub norm_b: f64,
    /// `sqrt(1 + ||A||^2)`, the norm of `B` restricted to real vectors.
    pub norm_b_closed_form: f64,
}

impl RieszBoundReport {
    pub fn sandwich_holds(&self, slack: f64) -> bool {
        self.c_lower_estimate <= self.c_exact * (1.0 + slack)
            && self.c_exact <= self.big_c_exact * (1.0 + slack)
            && self.big_c_exact <= self.big_c_upper_estimate * (1.0 + slack)
    }

    /// `|norm_b^2 - (1 + ||A||^2)|`.
    pub fn norm_identity_defect(&self) -> f64 {
        (self.norm_b.powi(2) - self.norm_b_closed_form.powi(2)).abs()
    }
}

/// Result of rebricking two orthonormal bases.
#[derive(Debug, Clone)]
pub struct OnbCheck {
    /// `(E1 + iE2) / sqrt(2)`.
    pub rebricked: ComplexMatrix,
    pub is_onb: bool,
    /// `A = E2 E1^T`.
    pub transfer: RealMatrix,
    /// Spectral norm of `A - A^T`.
    pub symmetry_defect: f64,
    /// Spectral norm of `Phi* Phi - Id`.
    pub unitarity_defect: f64,
}

fn ensure_basis(v: &RealMatrix, which: &'static str, tol: &Tolerance) -> Result<usize> {
    let n = linalg::ensure_square(v)?;
    let sv = linalg::singular_values(v)?;
    if !linalg::is_invertible_sv(&sv, n, tol) {
        return Err(Error::NotABasis { which });
    }
    Ok(n)
}

fn ensure_orthogonal(e: &RealMatrix, which: &'static str, tol: &Tolerance) -> Result<()> {
    match linalg::is_orthogonal(e, tol) {
        Ok(true) => Ok(()),
        Ok(false) => Err(Error::NotOrthogonal { which }),
        Err(Error::ShapeMismatch { .. }) => Err(Error::NotOrthogonal { which }),
        Err(e) => Err(e),
    }
}

/// `A = V2 V1^{-1}`, the operator mapping each column of `V1` onto the matching column of `V2`.
pub fn transfer_operator(v1: &RealMatrix, v2: &RealMatrix, tol: &Tolerance) -> Result<RealMatrix> {
    linalg::ensure_square(v1)?;
    linalg::ensure_same_shape(v1, v2)?;
    let inv = linalg::invert(v1, tol)?;
    Ok(v2 * inv)
}

/// Form `V1 + iV2` and decide whether its columns are a basis of `C^n`.
pub fn rebrick_pair(
    v1: &RealMatrix,
    v2: &RealMatrix,
    tol: &Tolerance,
) -> Result<(ComplexMatrix, RebrickVerdict)> {
    linalg::ensure_square(v1)?;
    linalg::ensure_same_shape(v1, v2)?;
    ensure_basis(v1, "V1", tol)?;
    ensure_basis(v2, "V2", tol)?;
    let a = transfer_operator(v1, v2, tol)?;
    let b = linalg::complexify(v1, v2)?;
    let verdict = RebrickVerdict::assess(&b, &a, tol)?;
    Ok((b, verdict))
}

/// Rebrick the basis `V` with operator `A`: returns `(Id + iA) V`.
///
/// The verdict is taken on `Id + iA` alone, so it does not depend on `V`.
pub fn rebrick_with_operator(
    a: &RealMatrix,
    v: &RealMatrix,
    tol: &Tolerance,
) -> Result<(ComplexMatrix, RebrickVerdict)> {
    let n = ensure_basis(v, "V", tol)?;
    linalg::ensure_square(a)?;
    if a.nrows() != n {
        return Err(Error::ShapeMismatch {
            expected: (n, n),
            found: a.shape(),
        });
    }
    let b = linalg::id_plus_i(a);
    let verdict = RebrickVerdict::assess(&b, a, tol)?;
    Ok((&b * linalg::to_complex(v), verdict))
}

/// Two rebricking operators whose product is not one.
///
/// Both are `rotation(pi/4) (+) Id_{dim-2}`: each has eigenvalue `(1+i)/sqrt(2)`
/// on the same plane, and the product rotates that plane by a quarter turn.
pub fn non_transitivity_witness(dim: usize) -> Result<(RealMatrix, RealMatrix)> {
    if dim < 2 {
        return Err(Error::TooSmall(dim));
    }
    let block = linalg::rotation(std::f64::consts::FRAC_PI_4);
    let a = if dim == 2 {
        block
    } else {
        linalg::block_diag(&block, &RealMatrix::identity(dim - 2, dim - 2))
    };
    Ok((a.clone(), a))
}

/// Rebrick two orthonormal bases to `(E1 + iE2)/sqrt(2)` and decide whether
/// the result is orthonormal.
///
/// The symmetry of `A = E2 E1^T` and the unitarity of the result are tested
/// independently; if they disagree an [`Error::Inconsistent`] is returned.
pub fn onb_rebrick_check(e1: &RealMatrix, e2: &RealMatrix, tol: &Tolerance) -> Result<OnbCheck> {
    ensure_orthogonal(e1, "E1", tol)?;
    ensure_orthogonal(e2, "E2", tol)?;
    linalg::ensure_same_shape(e1, e2)?;
    let transfer = e2 * e1.transpose();
    let symmetry_defect = linalg::operator_norm(&(&transfer - transfer.transpose()))?;
    let rebricked =
        linalg::complexify(e1, e2)? * Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let unitarity_defect = linalg::unitarity_defect(&rebricked)?;
    let symmetric = symmetry_defect <= tol.equality_abs;
    let unitary = unitarity_defect <= tol.equality_abs;
    if symmetric != unitary {
        return Err(Error::Inconsistent(format!(
            "symmetry defect {symmetry_defect:e} and unitarity defect {unitarity_defect:e} disagree"
        )));
    }
    Ok(OnbCheck {
        rebricked,
        is_onb: symmetric,
        transfer,
        symmetry_defect,
        unitarity_defect,
    })
}

/// Tests `<d_n, e_k> = <d_k, e_n>` for all `n, k`, where `e_n` are the columns
/// of `E1` and `d_n` those of `E2`.
pub fn symmetry_condition_check(e1: &RealMatrix, e2: &RealMatrix, tol: &Tolerance) -> Result<bool> {
    ensure_orthogonal(e1, "E1", tol)?;
    ensure_orthogonal(e2, "E2", tol)?;
    linalg::ensure_same_shape(e1, e2)?;
    // gram[(n, k)] = <d_n, e_k>
    let gram = e2.transpose() * e1;
    let defect = linalg::operator_norm(&(&gram - gram.transpose()))?;
    Ok(defect <= tol.equality_abs)
}

/// Rebricked basis `BV` and its rebricked dual `(B*)^{-1} (V^T)^{-1}`, with `B = Id + iA`.
pub fn rebricked_dual(
    v: &RealMatrix,
    a: &RealMatrix,
    tol: &Tolerance,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let (primal, verdict) = rebrick_with_operator(a, v, tol)?;
    if !verdict.rebrickable {
        return Err(Error::NotRebrickable {
            sigma_min: verdict.sigma_min_b,
        });
    }
    let b = linalg::id_plus_i(a);
    let b_adj_inv = linalg::invert(&b.adjoint(), tol)?;
    let dual_real = linalg::invert(&v.transpose(), tol)?;
    let dual = b_adj_inv * linalg::to_complex(&dual_real);
    Ok((primal, dual))
}

/// The `lambda` with `A^{-1} = lambda/(1 - lambda) A`, if any.
///
/// Such `lambda` exists iff `A^2 = mu Id` for a real `mu != -1`, and then
/// `lambda = 1 / (1 + mu)`. In that case the real part of every rebricked dual
/// vector is `lambda` times the original dual vector.
pub fn real_part_preservation_lambda(a: &RealMatrix, tol: &Tolerance) -> Result<Option<f64>> {
    let n = linalg::ensure_square(a)?;
    linalg::invert(a, tol)?;
    let a2 = a * a;
    let mu = a2.trace() / n as f64;
    let residual = linalg::max_abs_diff(&a2, &(RealMatrix::identity(n, n) * mu));
    if residual > tol.equality_abs * mu.abs().max(1.0) {
        return Ok(None);
    }
    if (1.0 + mu).abs() <= tol.equality_abs {
        return Ok(None);
    }
    Ok(Some(1.0 / (1.0 + mu)))
}

/// Frame bounds of `(Id + iA) V` against the estimates derived from the bounds of `V`.
pub fn rebricked_frame_bounds(
    v: &RealMatrix,
    a: &RealMatrix,
    tol: &Tolerance,
) -> Result<RieszBoundReport> {
    let (bv, verdict) = rebrick_with_operator(a, v, tol)?;
    if !verdict.rebrickable {
        return Err(Error::NotRebrickable {
            sigma_min: verdict.sigma_min_b,
        });
    }
    let sv_v = linalg::singular_values(v)?;
    let sv_bv = linalg::singular_values(&bv)?;
    let sv_b = linalg::singular_values(&linalg::id_plus_i(a))?;
    let norm_a = linalg::operator_norm(a)?;
    let (c, big_c) = (sv_v[sv_v.len() - 1].powi(2), sv_v[0].powi(2));
    let norm_b = sv_b[0];
    let inv_norm_b_inv = sv_b[sv_b.len() - 1];
    Ok(RieszBoundReport {
        c,
        big_c,
        c_exact: sv_bv[sv_bv.len() - 1].powi(2),
        big_c_exact: sv_bv[0].powi(2),
        c_lower_estimate: c * inv_norm_b_inv.powi(2),
        big_c_upper_estimate: norm_b.powi(2) * big_c,
        norm_b,
        norm_b_closed_form: (1.0 + norm_a * norm_a).sqrt(),
    })
}

/// Factor an orthogonal symmetric `A` as `R D R^T` with `D = diag(+1.., -1..)`.
///
/// Columns of `R` are eigenvectors; each is signed so its largest-magnitude
/// entry is positive.
pub fn spectral_factorize_orthosym(
    a: &RealMatrix,
    tol: &Tolerance,
) -> Result<(RealMatrix, RealMatrix)> {
    let n = linalg::ensure_square(a).map_err(|_| Error::NotOrthogonalSymmetric)?;
    linalg::ensure_finite(a)?;
    let sym_defect = linalg::max_abs_diff(a, &a.transpose());
    if sym_defect > tol.equality_abs || !linalg::is_orthogonal(a, tol)? {
        return Err(Error::NotOrthogonalSymmetric);
    }
    let sym = (a + a.transpose()) * 0.5;
    let eig = nalgebra::SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let mut r = RealMatrix::zeros(n, n);
    let mut d = RealMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = eig.eigenvectors.column(src).into_owned();
        let pivot = col
            .iter()
            .copied()
            .max_by(|x, y| x.abs().total_cmp(&y.abs()))
            .unwrap_or(1.0);
        if pivot < 0.0 {
            col.neg_mut();
        }
        r.set_column(dst, &col);
        d[(dst, dst)] = eig.eigenvalues[src].signum();
    }
    Ok((r, d))
}
