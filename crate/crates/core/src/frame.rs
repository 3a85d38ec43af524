//! Finite frames, their partial order and frame rebricking.
//!
//! A frame of `m` vectors for `K^n` is stored through its synthesis matrix
//! (`n x m`, one frame vector per column), which must have rank `n`.
//! Frames `F` and `G` with the same index set satisfy `F <= G` when
//! `F = T G` for a surjection `T`, which happens exactly when
//! `ker G` is contained in `ker F`.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::basis::RebrickVerdict;
use crate::error::{Error, Result};
use crate::linalg::{self, Complex64, ComplexMatrix, RealMatrix, Scalar, Tolerance};

#[derive(Debug, Clone)]
pub struct FiniteFrame<T: Scalar> {
    synthesis: DMatrix<T>,
    label: String,
}

impl<T: Scalar> FiniteFrame<T> {
    /// Wrap a synthesis matrix, checking that its columns span `K^n`.
    pub fn new(synthesis: DMatrix<T>, label: impl Into<String>, tol: &Tolerance) -> Result<Self> {
        linalg::ensure_finite(&synthesis)?;
        let dim = synthesis.nrows();
        let rank = linalg::rank(&synthesis, tol)?;
        if rank < dim {
            return Err(Error::NotAFrame { rank, dim });
        }
        Ok(Self {
            synthesis,
            label: label.into(),
        })
    }

    pub fn synthesis(&self) -> &DMatrix<T> {
        &self.synthesis
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Dimension `n` of the space.
    pub fn dim(&self) -> usize {
        self.synthesis.nrows()
    }

    /// Number `m` of frame vectors.
    pub fn len(&self) -> usize {
        self.synthesis.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `S S*`.
    pub fn frame_operator(&self) -> DMatrix<T> {
        &self.synthesis * self.synthesis.adjoint()
    }
}

/// Optimal frame bounds: the extreme eigenvalues of the frame operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
}

pub fn frame_bounds<T: Scalar>(f: &FiniteFrame<T>) -> Result<FrameBounds> {
    let s = linalg::singular_values(f.synthesis())?;
    Ok(FrameBounds {
        lower: s[f.dim() - 1].powi(2),
        upper: s[0].powi(2),
    })
}

pub fn is_parseval<T: Scalar>(f: &FiniteFrame<T>, tol: &Tolerance) -> bool {
    let n = f.dim();
    linalg::max_abs_diff(&f.frame_operator(), &DMatrix::identity(n, n)) <= tol.equality_abs
}

/// Orthonormal basis of the kernel of the synthesis operator, as columns.
pub fn frame_kernel<T: Scalar>(f: &FiniteFrame<T>, tol: &Tolerance) -> Result<DMatrix<T>> {
    linalg::kernel_basis(f.synthesis(), tol)
}

/// `cols - rank`.
pub fn kernel_dim<T: Scalar>(m: &DMatrix<T>, tol: &Tolerance) -> Result<usize> {
    Ok(m.ncols() - linalg::rank(m, tol)?)
}

/// Comparison of two frames in the partial order.
#[derive(Debug, Clone, Serialize)]
pub struct OrderVerdict {
    /// `F <= G`, i.e. `ker G` lies in `ker F`.
    pub leq: bool,
    /// `G <= F`.
    pub geq: bool,
    pub equivalent: bool,
    pub ker_dim_f: usize,
    pub ker_dim_g: usize,
    /// Spectral norm of the part of `ker G` outside `ker F`.
    pub residual_leq: f64,
    /// Spectral norm of the part of `ker F` outside `ker G`.
    pub residual_geq: f64,
}

/// `||(Id - P_outer) inner||` for orthonormal column sets.
fn containment_residual<T: Scalar>(inner: &DMatrix<T>, outer: &DMatrix<T>) -> Result<f64> {
    if inner.ncols() == 0 {
        return Ok(0.0);
    }
    let projected = outer * (outer.adjoint() * inner);
    linalg::operator_norm(&(inner - projected))
}

/// Compare frames with the same index count. Their dimensions may differ.
pub fn frame_leq<T: Scalar>(
    f: &FiniteFrame<T>,
    g: &FiniteFrame<T>,
    tol: &Tolerance,
) -> Result<OrderVerdict> {
    if f.len() != g.len() {
        return Err(Error::IndexCountMismatch {
            left: f.len(),
            right: g.len(),
        });
    }
    let kf = frame_kernel(f, tol)?;
    let kg = frame_kernel(g, tol)?;
    let residual_leq = containment_residual(&kg, &kf)?;
    let residual_geq = containment_residual(&kf, &kg)?;
    let leq = residual_leq <= tol.equality_abs;
    let geq = residual_geq <= tol.equality_abs;
    Ok(OrderVerdict {
        leq,
        geq,
        equivalent: leq && geq,
        ker_dim_f: kf.ncols(),
        ker_dim_g: kg.ncols(),
        residual_leq,
        residual_geq,
    })
}

/// Right inverse `S* (S S*)^{-1}` of a full-row-rank matrix.
fn right_inverse<T: Scalar>(s: &DMatrix<T>, tol: &Tolerance) -> Result<DMatrix<T>> {
    let gram = s * s.adjoint();
    Ok(s.adjoint() * linalg::invert(&gram, tol)?)
}

/// The surjection `T` with `S_F = T S_G`, or `None` when `F <= G` fails.
///
/// `T` is `n_F x n_G` and has rank `n_F`.
pub fn compatibility_operator<T: Scalar>(
    f: &FiniteFrame<T>,
    g: &FiniteFrame<T>,
    tol: &Tolerance,
) -> Result<Option<DMatrix<T>>> {
    if !frame_leq(f, g, tol)?.leq {
        return Ok(None);
    }
    let t = f.synthesis() * right_inverse(g.synthesis(), tol)?;
    let defect = linalg::max_abs_diff(&(&t * g.synthesis()), f.synthesis());
    let scale = 1.0 + linalg::operator_norm(f.synthesis())?;
    if defect > tol.equality_abs * scale {
        return Err(Error::Inconsistent(format!(
            "compatibility operator misses F by {defect:e}"
        )));
    }
    Ok(Some(t))
}

/// Rebrick two real frames with the same index set: `f_k + i g_k`.
pub fn rebrick_frames(
    f: &FiniteFrame<f64>,
    g: &FiniteFrame<f64>,
    tol: &Tolerance,
) -> Result<(FiniteFrame<Complex64>, FrameBounds)> {
    if f.len() != g.len() {
        return Err(Error::IndexCountMismatch {
            left: f.len(),
            right: g.len(),
        });
    }
    let synthesis = linalg::complexify(f.synthesis(), g.synthesis())?;
    let label = format!("{} + i {}", f.label(), g.label());
    let frame = FiniteFrame::new(synthesis, label, tol)?;
    let bounds = frame_bounds(&frame)?;
    Ok((frame, bounds))
}

/// A frame rebricked through an operator, with the verdict on `Id + iA`.
#[derive(Debug, Clone)]
pub struct OperatorRebrick {
    pub frame: FiniteFrame<Complex64>,
    pub bounds: FrameBounds,
    pub verdict: RebrickVerdict,
}

/// The frame `(Id + iA) f_k`.
pub fn operator_rebrick_frame(
    f: &FiniteFrame<f64>,
    a: &RealMatrix,
    tol: &Tolerance,
) -> Result<OperatorRebrick> {
    let n = linalg::ensure_square(a)?;
    if n != f.dim() {
        return Err(Error::ShapeMismatch {
            expected: (f.dim(), f.dim()),
            found: a.shape(),
        });
    }
    let b = linalg::id_plus_i(a);
    let verdict = RebrickVerdict::assess(&b, a, tol)?;
    if !verdict.rebrickable {
        return Err(Error::NotRebrickable {
            sigma_min: verdict.sigma_min_b,
        });
    }
    let synthesis = b * linalg::to_complex(f.synthesis());
    let frame = FiniteFrame::new(synthesis, format!("(Id + iA) {}", f.label()), tol)?;
    let bounds = frame_bounds(&frame)?;
    Ok(OperatorRebrick {
        frame,
        bounds,
        verdict,
    })
}

/// Whether `A (Id + iS)` is onto, decided two ways.
#[derive(Debug, Clone, Serialize)]
pub struct FrRebrickReport {
    pub holds: bool,
    /// Rank of `[Id + iS | ker A]`, compared against `p`.
    pub rank_concat: usize,
    /// Rank of `A (Id + iS)`, compared against `n`.
    pub rank_product: usize,
    pub n: usize,
    pub p: usize,
    pub kernel_dim: usize,
}

/// For a surjective `n x p` matrix `A` and an invertible `p x p` matrix `S`,
/// decide whether `A (Id + iS)` is surjective.
///
/// This is the case iff `ran(Id + iS) + ker A` is everything, so `Id + iS`
/// may be singular as long as `ker A` fills the gap.
pub fn frrebrick_check(a: &RealMatrix, s: &RealMatrix, tol: &Tolerance) -> Result<FrRebrickReport> {
    let p = linalg::ensure_square(s)?;
    let n = a.nrows();
    if a.ncols() != p {
        return Err(Error::ShapeMismatch {
            expected: (n, p),
            found: a.shape(),
        });
    }
    if linalg::rank(a, tol)? != n {
        return Err(Error::RankDeficientInput { which: "A" });
    }
    if linalg::rank(s, tol)? != p {
        return Err(Error::RankDeficientInput { which: "S" });
    }
    let id_is = linalg::id_plus_i(s);
    let k = linalg::to_complex(&linalg::kernel_basis(a, tol)?);
    let mut concat = ComplexMatrix::zeros(p, p + k.ncols());
    concat.columns_mut(0, p).copy_from(&id_is);
    concat.columns_mut(p, k.ncols()).copy_from(&k);
    let rank_concat = linalg::rank(&concat, tol)?;
    let rank_product = linalg::rank(&(linalg::to_complex(a) * &id_is), tol)?;
    let holds = rank_concat == p;
    if holds != (rank_product == n) {
        return Err(Error::Inconsistent(format!(
            "rank of [Id + iS | ker A] is {rank_concat} of {p} but rank of A(Id + iS) is {rank_product} of {n}"
        )));
    }
    Ok(FrRebrickReport {
        holds,
        rank_concat,
        rank_product,
        n,
        p,
        kernel_dim: k.ncols(),
    })
}

/// A surjection `T` with `A = B T`, if one exists.
///
/// `A` is `n x p` and `B` is `n x q`, both of rank `n`. With `k = p - n` and
/// `l = q - n` the kernel dimensions, `T` exists iff `k >= l`, and then
/// `dim ker T = k - l`. The construction is `T = C (BC)^+ A + C K_{BC} K_A^T`
/// with `C = [Id_q | 0]` and `K_M` an orthonormal kernel basis of `M`.
pub fn surjective_factor(
    a: &RealMatrix,
    b: &RealMatrix,
    tol: &Tolerance,
) -> Result<Option<RealMatrix>> {
    let n = a.nrows();
    if b.nrows() != n {
        return Err(Error::ShapeMismatch {
            expected: (n, b.ncols()),
            found: b.shape(),
        });
    }
    if linalg::rank(a, tol)? != n {
        return Err(Error::RankDeficientInput { which: "A" });
    }
    if linalg::rank(b, tol)? != n {
        return Err(Error::RankDeficientInput { which: "B" });
    }
    let (p, q) = (a.ncols(), b.ncols());
    if p < q {
        return Ok(None);
    }
    let mut bc = RealMatrix::zeros(n, p);
    bc.columns_mut(0, q).copy_from(b);
    let k_a = linalg::kernel_basis(a, tol)?;
    let k_bc = linalg::kernel_basis(&bc, tol)?;
    if k_a.ncols() != k_bc.ncols() {
        return Err(Error::Inconsistent(format!(
            "kernel dimensions {} and {} differ",
            k_a.ncols(),
            k_bc.ncols()
        )));
    }
    let bijection = right_inverse(&bc, tol)? * a + k_bc * k_a.transpose();
    let t = bijection.rows(0, q).into_owned();
    let defect = linalg::max_abs_diff(&(b * &t), a);
    if defect > tol.equality_abs * (1.0 + linalg::operator_norm(a)?) {
        return Err(Error::Inconsistent(format!("B T misses A by {defect:e}")));
    }
    Ok(Some(t))
}

/// `(Id + iA) f_k / sqrt(2)` for a Parseval frame `f`, and whether the result is Parseval.
///
/// It is Parseval iff `A` is orthogonal and symmetric; both sides are
/// computed and a disagreement is reported as [`Error::Inconsistent`].
pub fn parseval_rebrick(
    f: &FiniteFrame<f64>,
    a: &RealMatrix,
    tol: &Tolerance,
) -> Result<(FiniteFrame<Complex64>, bool)> {
    if !is_parseval(f, tol) {
        return Err(Error::NotParsevalInput);
    }
    let n = linalg::ensure_square(a)?;
    if n != f.dim() {
        return Err(Error::ShapeMismatch {
            expected: (f.dim(), f.dim()),
            found: a.shape(),
        });
    }
    let scale = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let synthesis = linalg::id_plus_i(a) * linalg::to_complex(f.synthesis()) * scale;
    let frame = FiniteFrame::new(synthesis, format!("(Id + iA) {} / sqrt 2", f.label()), tol)?;
    let parseval = is_parseval(&frame, tol);
    let orthosym = linalg::max_abs_diff(a, &a.transpose()) <= tol.equality_abs
        && linalg::is_orthogonal(a, tol)?;
    if parseval != orthosym {
        return Err(Error::Inconsistent(format!(
            "rebricked frame Parseval = {parseval}, A orthogonal and symmetric = {orthosym}"
        )));
    }
    Ok((frame, parseval))
}

/// Small frames and operators with known behaviour.
pub mod catalog {
    use crate::linalg::RealMatrix;

    fn with_columns(n: usize, cols: &[Option<usize>], weights: &[f64]) -> RealMatrix {
        let mut s = RealMatrix::zeros(n, cols.len());
        for (k, (&c, &w)) in cols.iter().zip(weights).enumerate() {
            if let Some(j) = c {
                s[(j, k)] = w;
            }
        }
        s
    }

    /// `{e_1, .., e_n}`.
    pub fn canonical(n: usize) -> RealMatrix {
        RealMatrix::identity(n, n)
    }

    /// `{e_1, e_1, e_2, .., e_n}`.
    pub fn duplicated_first(n: usize) -> RealMatrix {
        let cols: Vec<_> = std::iter::once(Some(0)).chain((0..n).map(Some)).collect();
        with_columns(n, &cols, &vec![1.0; n + 1])
    }

    /// `{e_1, e_2, e_2, e_3, .., e_n}`, for `n >= 2`.
    pub fn duplicated_second(n: usize) -> RealMatrix {
        let cols: Vec<_> = (0..=n)
            .map(|k| Some(if k < 2 { k } else { k - 1 }))
            .collect();
        with_columns(n, &cols, &vec![1.0; n + 1])
    }

    /// `{e_1/sqrt 2, e_1/sqrt 2, e_2, .., e_n}`, a Parseval frame.
    pub fn halved_first(n: usize) -> RealMatrix {
        let mut s = duplicated_first(n);
        s[(0, 0)] = std::f64::consts::FRAC_1_SQRT_2;
        s[(0, 1)] = std::f64::consts::FRAC_1_SQRT_2;
        s
    }

    /// `{0, e_1, .., e_n}`.
    pub fn zero_padded(n: usize) -> RealMatrix {
        let cols: Vec<_> = std::iter::once(None).chain((0..n).map(Some)).collect();
        with_columns(n, &cols, &vec![1.0; n + 1])
    }

    /// The `n x (n + 2)` shift `e_{j+2} -> e_j`, whose kernel is `span{e_1, e_2}`.
    pub fn two_step_shift(n: usize) -> RealMatrix {
        let mut a = RealMatrix::zeros(n, n + 2);
        for j in 0..n {
            a[(j, j + 2)] = 1.0;
        }
        a
    }

    /// `[[0, 1], [-1, 0]] (+) Id_{p-2}`.
    pub fn quarter_turn_block(p: usize) -> RealMatrix {
        let mut s = RealMatrix::identity(p, p);
        s[(0, 0)] = 0.0;
        s[(1, 1)] = 0.0;
        s[(0, 1)] = 1.0;
        s[(1, 0)] = -1.0;
        s
    }
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn frame(s: RealMatrix, label: &str) -> FiniteFrame<f64> {
        FiniteFrame::new(s, label, &tol()).unwrap()
    }

    fn random(rng: &mut ChaCha8Rng, r: usize, c: usize) -> RealMatrix {
        RealMatrix::from_fn(r, c, |_, _| rng.random_range(-1.0..1.0))
    }

    #[test]
    fn catalog_frames_have_expected_vectors() {
        let f = duplicated_first(3);
        let g = duplicated_second(3);
        assert_eq!(f.column(0), f.column(1));
        assert_eq!(g.column(1), g.column(2));
        assert_eq!(g[(0, 0)], 1.0);
        assert_eq!(g[(2, 3)], 1.0);
        assert_eq!(zero_padded(3).column(0).norm(), 0.0);
    }

    #[test]
    fn rank_deficient_synthesis_is_not_a_frame() {
        let mut s = canonical(3);
        s[(2, 2)] = 0.0;
        assert_eq!(
            FiniteFrame::new(s, "x", &tol()).unwrap_err(),
            Error::NotAFrame { rank: 2, dim: 3 }
        );
    }

    #[test]
    fn bounds_and_parseval() {
        let b = frame_bounds(&frame(canonical(4), "e")).unwrap();
        assert!((b.lower - 1.0).abs() < 1e-14 && (b.upper - 1.0).abs() < 1e-14);
        let dup = frame(duplicated_first(4), "f");
        let b = frame_bounds(&dup).unwrap();
        assert!((b.lower - 1.0).abs() < 1e-14 && (b.upper - 2.0).abs() < 1e-14);
        assert!(!is_parseval(&dup, &tol()));
        assert!(is_parseval(&frame(halved_first(4), "h"), &tol()));
        assert!(is_parseval(&frame(zero_padded(4), "z"), &tol()));
    }

    #[test]
    fn duplicated_frames_are_incomparable_and_rebrick_to_bounds_two_four() {
        let f = frame(duplicated_first(5), "f");
        let g = frame(duplicated_second(5), "g");
        let v = frame_leq(&f, &g, &tol()).unwrap();
        assert!(!v.leq && !v.geq);
        assert_eq!((v.ker_dim_f, v.ker_dim_g), (1, 1));
        assert!(compatibility_operator(&f, &g, &tol()).unwrap().is_none());
        let (_, b) = rebrick_frames(&f, &g, &tol()).unwrap();
        assert!((b.lower - 2.0).abs() < 1e-12, "{b:?}");
        assert!((b.upper - 4.0).abs() < 1e-12, "{b:?}");
    }

    #[test]
    fn frame_is_equivalent_to_itself() {
        let f = frame(duplicated_first(3), "f");
        let v = frame_leq(&f, &f, &tol()).unwrap();
        assert!(v.equivalent);
        let t = compatibility_operator(&f, &f, &tol()).unwrap().unwrap();
        assert!(linalg::max_abs_diff(&t, &canonical(3)) < 1e-12);
    }

    #[test]
    fn index_count_mismatch() {
        let f = frame(canonical(3), "e");
        let g = frame(duplicated_first(3), "f");
        assert_eq!(
            frame_leq(&f, &g, &tol()).unwrap_err(),
            Error::IndexCountMismatch { left: 3, right: 4 }
        );
    }

    #[test]
    fn nested_chain_is_ordered_and_transitive() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = 7;
        let mut chain = vec![frame(random(&mut rng, m, m), "g0")];
        for k in 1..4 {
            let prev = chain[k - 1].synthesis().clone();
            let t = random(&mut rng, prev.nrows() - 1, prev.nrows());
            chain.push(frame(t * prev, "gk"));
        }
        for i in 0..4 {
            for j in 0..4 {
                let v = frame_leq(&chain[j], &chain[i], &tol()).unwrap();
                assert_eq!(v.leq, j >= i, "g{j} <= g{i}");
                assert_eq!(v.ker_dim_f, j);
                if v.leq {
                    let t = compatibility_operator(&chain[j], &chain[i], &tol())
                        .unwrap()
                        .unwrap();
                    assert_eq!(t.shape(), (m - j, m - i));
                    assert_eq!(kernel_dim(&t, &tol()).unwrap(), j - i);
                }
            }
        }
    }

    #[test]
    fn zero_operator_leaves_frame_unchanged() {
        let f = frame(duplicated_first(3), "f");
        let r = operator_rebrick_frame(&f, &RealMatrix::zeros(3, 3), &tol()).unwrap();
        let expected = linalg::to_complex(f.synthesis());
        assert!(linalg::max_abs_diff(r.frame.synthesis(), &expected) == 0.0);
        assert!(r.verdict.rebrickable);
    }

    #[test]
    fn quarter_turn_does_not_rebrick_a_frame() {
        let f = frame(duplicated_first(2), "f");
        let a = linalg::rotation(std::f64::consts::FRAC_PI_2);
        assert!(matches!(
            operator_rebrick_frame(&f, &a, &tol()),
            Err(Error::NotRebrickable { .. })
        ));
    }

    #[test]
    fn frrebrick_shift_example_holds_although_id_plus_is_is_singular() {
        let n = 4;
        let s = quarter_turn_block(n + 2);
        assert!(linalg::sigma_min(&linalg::id_plus_i(&s)).unwrap() < 1e-12);
        let r = frrebrick_check(&two_step_shift(n), &s, &tol()).unwrap();
        assert!(r.holds);
        assert_eq!((r.rank_concat, r.rank_product, r.kernel_dim), (n + 2, n, 2));
    }

    #[test]
    fn frrebrick_fails_when_kernel_misses_the_gap() {
        // kernel span{e_5, e_6} cannot repair the defect of Id + iS in the first plane
        let n = 4;
        let mut a = RealMatrix::zeros(n, n + 2);
        for j in 0..n {
            a[(j, j)] = 1.0;
        }
        let r = frrebrick_check(&a, &quarter_turn_block(n + 2), &tol()).unwrap();
        assert!(!r.holds);
        assert_eq!(r.rank_product, n - 1);
    }

    #[test]
    fn frrebrick_rejects_rank_deficient_inputs() {
        let s = quarter_turn_block(4);
        let mut a = two_step_shift(2);
        a[(1, 3)] = 0.0;
        assert_eq!(
            frrebrick_check(&a, &s, &tol()).unwrap_err(),
            Error::RankDeficientInput { which: "A" }
        );
        assert_eq!(
            frrebrick_check(&two_step_shift(2), &RealMatrix::zeros(4, 4), &tol()).unwrap_err(),
            Error::RankDeficientInput { which: "S" }
        );
    }

    #[test]
    fn surjective_factor_equal_kernels_gives_bijection() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random(&mut rng, 3, 5);
        let b = random(&mut rng, 3, 5);
        let t = surjective_factor(&a, &b, &tol()).unwrap().unwrap();
        assert!(linalg::max_abs_diff(&(&b * &t), &a) < 1e-10);
        assert_eq!(kernel_dim(&t, &tol()).unwrap(), 0);
    }

    #[test]
    fn surjective_factor_riesz_b_and_one_dim_kernel_a() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random(&mut rng, 4, 5);
        let b = random(&mut rng, 4, 4);
        let t = surjective_factor(&a, &b, &tol()).unwrap().unwrap();
        assert_eq!(t.shape(), (4, 5));
        assert_eq!(kernel_dim(&t, &tol()).unwrap(), 1);
        assert!(linalg::max_abs_diff(&(&b * &t), &a) < 1e-10);
    }

    #[test]
    fn surjective_factor_smaller_kernel_has_no_solution() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = random(&mut rng, 3, 3);
        let b = random(&mut rng, 3, 5);
        assert!(surjective_factor(&a, &b, &tol()).unwrap().is_none());
    }

    #[test]
    fn parseval_rebrick_needs_orthogonal_symmetric_operator() {
        let f = frame(halved_first(3), "h");
        let d = RealMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, -1.0, 1.0]));
        assert!(parseval_rebrick(&f, &d, &tol()).unwrap().1);
        let rot = linalg::block_diag(&linalg::rotation(0.3), &canonical(1));
        assert!(!parseval_rebrick(&f, &rot, &tol()).unwrap().1);
        let sym = RealMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![2.0, 1.0, 1.0]));
        assert!(!parseval_rebrick(&f, &sym, &tol()).unwrap().1);
        let g = frame(duplicated_first(3), "f");
        assert_eq!(
            parseval_rebrick(&g, &d, &tol()).unwrap_err(),
            Error::NotParsevalInput
        );
    }
}
