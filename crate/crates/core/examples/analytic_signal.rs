//! The analytic signal `f + iHf` cannot span the complex signals.
//!
//! The symbol of `Id + iH` doubles positive frequencies and removes negative
//! ones, so every negative-frequency exponential is in its kernel.

use rebrick::linalg::{ComplexMatrix, Tolerance, IMAG};
use rebrick::multiplier::{
    analytic_defect, analytic_witness, apply_multiplier, discrete_hilbert, real_signal,
};

fn main() -> rebrick::Result<()> {
    let tol = Tolerance::default();
    for n in [8, 16, 64] {
        let d = analytic_defect(n, &tol)?;
        println!(
            "N = {n:>2}: rank(Id + iH) = {}, kernel dimension = {}",
            d.rank, d.kernel_dim
        );
    }

    let n = 16;
    let h = discrete_hilbert(n)?;
    let t: Vec<f64> = (0..n)
        .map(|j| (2.0 * std::f64::consts::PI * 3.0 * j as f64 / n as f64).cos())
        .collect();
    let ht = apply_multiplier(&h, &real_signal(&t))?;
    println!(
        "H cos(3t) at t = 1: {:.4} (sin = {:.4})",
        ht[1].re,
        (2.0 * std::f64::consts::PI * 3.0 / n as f64).sin()
    );

    let x: Vec<f64> = (0..n).map(|j| ((j * j) % 7) as f64 - 3.0).collect();
    let w = nalgebra::DVector::from_vec(analytic_witness(&x)?);
    let op = ComplexMatrix::identity(n, n) + h.matrix() * IMAG;
    println!(
        "|w| = {:.3}, |(Id + iH) w| = {:.1e}",
        w.norm(),
        (op * w).norm()
    );
    Ok(())
}
