use rebrick::frame::{
    catalog, frame_bounds, frrebrick_check, operator_rebrick_frame, parseval_rebrick,
    rebrick_frames, FiniteFrame,
};
use rebrick::linalg::{self, RealMatrix, Tolerance};

fn main() -> rebrick::Result<()> {
    let tol = Tolerance::default();
    let n = 5;

    // two frames that are incomparable in the order still rebrick to a frame
    let f = FiniteFrame::new(catalog::duplicated_first(n), "f", &tol)?;
    let g = FiniteFrame::new(catalog::duplicated_second(n), "g", &tol)?;
    let (_, b) = rebrick_frames(&f, &g, &tol)?;
    println!("f + ig: bounds ({:.6}, {:.6})", b.lower, b.upper);

    let a = linalg::block_diag(&linalg::rotation(0.7), &RealMatrix::identity(n - 2, n - 2));
    let r = operator_rebrick_frame(&f, &a, &tol)?;
    let before = frame_bounds(&f)?;
    println!(
        "(Id + iA) f: bounds ({:.4}, {:.4}) from ({:.4}, {:.4})",
        r.bounds.lower, r.bounds.upper, before.lower, before.upper
    );

    // Id + iS is singular here, yet A(Id + iS) is onto because ker A covers the defect
    let s = catalog::quarter_turn_block(n + 2);
    let check = frrebrick_check(&catalog::two_step_shift(n), &s, &tol)?;
    println!(
        "rank(Id + iS) = {}, rank A(Id + iS) = {} of {}: holds = {}",
        linalg::rank(&linalg::id_plus_i(&s), &tol)?,
        check.rank_product,
        check.n,
        check.holds
    );

    let parseval = FiniteFrame::new(catalog::halved_first(n), "h", &tol)?;
    let flip = RealMatrix::from_diagonal(&nalgebra::DVector::from_fn(n, |i, _| {
        if i % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }));
    println!(
        "Parseval after a reflection: {}",
        parseval_rebrick(&parseval, &flip, &tol)?.1
    );
    println!(
        "Parseval after a rotation:   {}",
        parseval_rebrick(&parseval, &a, &tol)?.1
    );
    Ok(())
}
