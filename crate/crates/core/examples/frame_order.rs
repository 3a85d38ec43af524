//! The partial order on frames with a common index set.
//!
//! `F <= G` when `F = T G` for a surjection `T`, which happens exactly when
//! the kernel of G's synthesis map sits inside that of F.

use rebrick::frame::{
    catalog, compatibility_operator, frame_leq, kernel_dim, surjective_factor, FiniteFrame,
};
use rebrick::linalg::{RealMatrix, Tolerance};

fn main() -> rebrick::Result<()> {
    let tol = Tolerance::default();
    let f = FiniteFrame::new(catalog::duplicated_first(3), "{e1,e1,e2,e3}", &tol)?;
    let g = FiniteFrame::new(catalog::duplicated_second(3), "{e1,e2,e2,e3}", &tol)?;
    let v = frame_leq(&f, &g, &tol)?;
    println!(
        "F <= G: {}, G <= F: {} (residuals {:.2}, {:.2})",
        v.leq, v.geq, v.residual_leq, v.residual_geq
    );

    // project the second frame down to the plane: its kernel grows by one
    let drop_last = RealMatrix::from_row_slice(2, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
    let smaller = FiniteFrame::new(&drop_last * g.synthesis(), "P G", &tol)?;
    let v = frame_leq(&smaller, &g, &tol)?;
    println!(
        "PG <= G: {} with kernel dimensions {} and {}",
        v.leq, v.ker_dim_f, v.ker_dim_g
    );
    if let Some(t) = compatibility_operator(&smaller, &g, &tol)? {
        println!("T = {t}");
    }

    // A = B T with T onto, for A with a bigger kernel than B
    let a = RealMatrix::from_row_slice(2, 4, &[1.0, 0.0, 2.0, -1.0, 0.0, 1.0, 1.0, 1.0]);
    let b = RealMatrix::from_row_slice(2, 3, &[1.0, 1.0, 0.0, 0.0, 1.0, 1.0]);
    let t = surjective_factor(&a, &b, &tol)?.expect("dim ker A >= dim ker B");
    println!(
        "|A - BT| = {:.1e}, dim ker T = {}",
        (&a - &b * &t).amax(),
        kernel_dim(&t, &tol)?
    );
    println!(
        "reversed: {:?}",
        surjective_factor(&b, &a, &tol)?.map(|t| t.shape())
    );
    Ok(())
}
