//! Repairing a failing pair by reordering one basis.
//!
//! `V + iAV` fails when `A` has eigenvalue `i`, but some column permutation
//! `P` always makes `V + iAVP` a basis again.

use std::f64::consts::FRAC_PI_2;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rebrick::linalg::{self, rotation, RealMatrix, Tolerance};
use rebrick::permutation::{
    change_of_basis, invariant_eigenvalue_candidates, rebrick_with_permutation, repair_permutation,
    summed_char_poly,
};

fn main() -> rebrick::Result<()> {
    let tol = Tolerance::default();

    let v = RealMatrix::identity(2, 2);
    let a = rotation(FRAC_PI_2);
    let found = repair_permutation(&change_of_basis(&v, &a, &tol)?, &tol, 0)?;
    let repaired = rebrick_with_permutation(&v, &a, &found.permutation, &tol)?;
    println!(
        "quarter turn: permutation {} after {} trials",
        found.permutation, found.trials
    );
    for row in repaired.row_iter() {
        let cells: Vec<String> = row
            .iter()
            .map(|z| format!("{:+.3}{:+.3}i", z.re, z.im))
            .collect();
        println!("  [{}]", cells.join(", "));
    }

    // past eight dimensions, seeded random draws follow the transpositions; here a swap suffices
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n = 9;
    let q = {
        let m = RealMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
        m.qr().q()
    };
    let core = linalg::block_diag(
        &rotation(FRAC_PI_2),
        &RealMatrix::from_fn(n - 2, n - 2, |_, _| rng.random_range(-1.0..1.0)),
    );
    let planted = &q * core * q.transpose();
    println!(
        "planted: sigma_min(Id + iA) = {:.2e}",
        linalg::sigma_min(&linalg::id_plus_i(&planted))?
    );
    for seed in [1, 2] {
        let r = repair_permutation(&planted, &tol, seed)?;
        println!(
            "seed {seed}: {} image {:?}, sigma_min after = {:.3e}",
            r.permutation,
            r.permutation.one_based_image(),
            r.sigma_min_after
        );
    }

    // why it works: summing over all permutations leaves only 0 and the mean entry as shared roots
    let small = RealMatrix::from_row_slice(3, 3, &[1.0, 2.0, 0.0, -1.0, 0.5, 3.0, 2.0, 0.0, 1.0]);
    println!(
        "sum of char polys over S_3: {:?}",
        summed_char_poly(&small)?.coefficients
    );
    println!(
        "possible common eigenvalues: {:?}",
        invariant_eigenvalue_candidates(&small)?
    );
    Ok(())
}
