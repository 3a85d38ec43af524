//! Three bases of the plane: the identity, an eighth turn and a quarter turn.
//!
//! Neighbouring pairs rebrick, the outer pair does not. The transfer operator
//! of the outer pair is the quarter turn, whose eigenvalues are `+-i`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use rebrick::basis::{non_transitivity_witness, rebrick_pair};
use rebrick::linalg::{rotation, RealMatrix, Tolerance};

fn main() -> rebrick::Result<()> {
    let tol = Tolerance::default();
    let v1 = RealMatrix::identity(2, 2);
    let v2 = rotation(FRAC_PI_4);
    let v3 = rotation(FRAC_PI_2);

    for (name, a, b) in [
        ("V1,V2", &v1, &v2),
        ("V2,V3", &v2, &v3),
        ("V1,V3", &v1, &v3),
    ] {
        let (_, verdict) = rebrick_pair(a, b, &tol)?;
        let eig: Vec<String> = verdict
            .eigenvalues_a
            .iter()
            .map(|z| format!("{:+.4}{:+.4}i", z.re, z.im))
            .collect();
        println!(
            "{name}: rebrickable={} sigma_min={:.3e} eigenvalues of A = [{}]",
            verdict.rebrickable,
            verdict.sigma_min_b,
            eig.join(", ")
        );
    }

    // the same failure in any dimension: two eighth turns on a shared plane
    let (a1, a2) = non_transitivity_witness(4)?;
    let f = RealMatrix::identity(4, 4);
    let g = &a1 * &f;
    let h = &a2 * &g;
    let verdicts = [
        rebrick_pair(&f, &g, &tol)?.1.rebrickable,
        rebrick_pair(&g, &h, &tol)?.1.rebrickable,
        rebrick_pair(&f, &h, &tol)?.1.rebrickable,
    ];
    println!("f~g, g~h, f~h in dimension 4: {verdicts:?}");
    Ok(())
}
