#![allow(dead_code)]

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rebrick::linalg::{self, RealMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> RealMatrix {
    RealMatrix::from_fn(rows, cols, |_, _| rng.random_range(-1.0..1.0))
}

/// Orthogonal matrix from the QR factor of a random matrix, with `R` given a positive diagonal.
pub fn orthogonal(rng: &mut ChaCha8Rng, n: usize) -> RealMatrix {
    let qr = uniform(rng, n, n).qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

pub fn special_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> RealMatrix {
    let mut q = orthogonal(rng, n);
    if q.determinant() < 0.0 {
        q.column_mut(0).neg_mut();
    }
    q
}

/// A well-conditioned random basis.
pub fn basis(rng: &mut ChaCha8Rng, n: usize) -> RealMatrix {
    loop {
        let v = uniform(rng, n, n);
        let s = linalg::singular_values(&v).unwrap();
        if s[n - 1] > 1e-2 * s[0] {
            return v;
        }
    }
}

/// `Q (rotation(pi/2) (+) M) Q^T` with `M` random, so `i` is an eigenvalue.
pub fn planted_quarter_turn(rng: &mut ChaCha8Rng, n: usize) -> RealMatrix {
    let block = linalg::rotation(std::f64::consts::FRAC_PI_2);
    let core = if n == 2 {
        block
    } else {
        linalg::block_diag(&block, &uniform(rng, n - 2, n - 2))
    };
    let q = orthogonal(rng, n);
    &q * core * q.transpose()
}

pub fn eye(n: usize) -> RealMatrix {
    RealMatrix::identity(n, n)
}
