//! Complex bases and frames assembled from pairs of real ones.
//!
//! Given real systems `{f_n}` and `{g_n}`, the complex system `{f_n + i g_n}`
//! is their rebricking. The crate decides when the result is again a basis
//! or frame, builds it, repairs failing pairs by permuting columns, and
//! certifies bounds, duals and orthonormality.
//!
//! - [`linalg`]: SVD-based rank, kernel and invertibility decisions.
//! - [`basis`]: rebricking of bases, orthonormal bases and duals.
//! - [`permutation`]: characteristic polynomials and permutation repair.
//! - [`frame`]: finite frames, their partial order and frame rebricking.
//! - [`multiplier`]: shift-invariant operators on cyclic signals.
//! - [`io`], [`report`], [`cli`]: files, reports and the `rebrick` binary.
//!
//! ```
//! use rebrick::basis::rebrick_pair;
//! use rebrick::linalg::{rotation, RealMatrix, Tolerance};
//!
//! let tol = Tolerance::default();
//! let id = RealMatrix::identity(2, 2);
//! let (_, quarter) = rebrick_pair(&id, &rotation(std::f64::consts::FRAC_PI_2), &tol).unwrap();
//! assert!(!quarter.rebrickable);
//! let (_, eighth) = rebrick_pair(&id, &rotation(std::f64::consts::FRAC_PI_4), &tol).unwrap();
//! assert!(eighth.rebrickable);
//! ```

pub mod basis;
pub mod cli;
pub mod error;
pub mod frame;
pub mod io;
pub mod linalg;
pub mod multiplier;
pub mod permutation;
pub mod report;

pub use error::{Error, Result};
