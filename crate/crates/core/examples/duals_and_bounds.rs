use rebrick::basis::{real_part_preservation_lambda, rebricked_dual, rebricked_frame_bounds};
use rebrick::linalg::{max_abs_diff, ComplexMatrix, RealMatrix, Tolerance};

fn main() -> rebrick::Result<()> {
    let tol = Tolerance::default();
    let v = RealMatrix::from_row_slice(3, 3, &[2.0, 1.0, 0.0, 0.0, 1.0, 1.0, 1.0, 0.0, 3.0]);
    // A^2 = 4 Id, so real parts of the dual survive up to the factor 1/5
    let a = RealMatrix::from_row_slice(3, 3, &[0.0, 4.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 2.0]);

    let (primal, dual) = rebricked_dual(&v, &a, &tol)?;
    let biorth = max_abs_diff(&(dual.adjoint() * &primal), &ComplexMatrix::identity(3, 3));
    println!("|dual* primal - Id| = {biorth:.1e}");

    if let Some(lambda) = real_part_preservation_lambda(&a, &tol)? {
        let plain = v.transpose().try_inverse().expect("V is invertible");
        let re = dual.map(|z| z.re);
        println!(
            "lambda = {lambda}, |Re(dual) - lambda (V^T)^-1| = {:.1e}",
            (re - plain * lambda).amax()
        );
    }

    let b = rebricked_frame_bounds(&v, &a, &tol)?;
    println!("real basis bounds  c = {:.4}, C = {:.4}", b.c, b.big_c);
    println!(
        "rebricked bounds   {:.4} <= {:.4} <= {:.4} <= {:.4}",
        b.c_lower_estimate, b.c_exact, b.big_c_exact, b.big_c_upper_estimate
    );
    // sqrt(1 + |A|^2) is the norm of Id + iA on real vectors; on C^n it can be larger
    println!(
        "|Id + iA| = {:.4}, sqrt(1 + |A|^2) = {:.4}",
        b.norm_b, b.norm_b_closed_form
    );
    Ok(())
}
