//! An operator without eigenvalue `i` whose symbol approaches `i`.
//!
//! Every finite `Id + iA_N` is invertible, but its smallest singular value
//! goes to zero as the grid grows, so no uniform bound survives the limit.

use rebrick::linalg::Tolerance;
use rebrick::multiplier::conditioning_sweep;

fn main() -> rebrick::Result<()> {
    let rows = conditioning_sweep(&[16, 32, 64, 128, 256, 512], &Tolerance::default())?;
    println!("{:>5} {:>12} {:>8}", "N", "sigma_min", "kernel");
    for r in rows {
        println!("{:>5} {:>12.6} {:>8}", r.n, r.sigma_min, r.kernel_dim);
    }
    Ok(())
}
