//! When does `(E + iAE)/sqrt 2` stay orthonormal?
//!
//! Exactly when the orthogonal `A` is also symmetric, i.e. a reflection
//! `R D R^T` with `D = diag(+-1)`.

use std::f64::consts::FRAC_PI_4;

use rebrick::basis::{onb_rebrick_check, spectral_factorize_orthosym, symmetry_condition_check};
use rebrick::linalg::{block_diag, rotation, RealMatrix, Tolerance};

fn main() -> rebrick::Result<()> {
    let tol = Tolerance::default();
    let e = block_diag(&rotation(0.4), &RealMatrix::identity(1, 1));

    let r = block_diag(&RealMatrix::identity(1, 1), &rotation(1.1));
    let d = RealMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, -1.0, -1.0]));
    let reflection = &r * d * r.transpose();
    let turn = block_diag(&rotation(FRAC_PI_4), &RealMatrix::identity(1, 1));

    for (name, a) in [("reflection", &reflection), ("eighth turn", &turn)] {
        let e2 = a * &e;
        let check = onb_rebrick_check(&e, &e2, &tol)?;
        println!(
            "{name}: orthonormal={} unitarity defect={:.2e} symmetry defect={:.2e} gram test={}",
            check.is_onb,
            check.unitarity_defect,
            check.symmetry_defect,
            symmetry_condition_check(&e, &e2, &tol)?
        );
    }

    let (r, d) = spectral_factorize_orthosym(&reflection, &tol)?;
    println!("D = {:?}", d.diagonal().as_slice());
    println!(
        "|R D R^T - A| = {:.1e}",
        (&r * &d * r.transpose() - &reflection).amax()
    );
    Ok(())
}
