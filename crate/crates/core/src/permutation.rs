//! Column permutations, characteristic polynomials and permutation repair.
//!
//! If a real matrix has eigenvalue `i`, permuting its columns almost always
//! removes it: the only values that can be eigenvalues of `A P_pi` for every
//! `pi` are `0` and the mean row sum `(1/n) sum_{l,m} a_{l,m}`, both real.
//! [`repair_permutation`] searches for such a `pi`.

use std::fmt;

use rand::{seq::SliceRandom, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, RealMatrix, Tolerance, IMAG};

/// Largest dimension for which the principal-minor expansion is used.
pub const MINOR_PATH_MAX_DIM: usize = 12;
/// Largest dimension searched exhaustively.
pub const EXHAUSTIVE_MAX_DIM: usize = 8;
/// Trial cap for the randomized search.
pub const RANDOM_TRIAL_CAP: u64 = 1_000_000;

/// A permutation of `0..n`, stored by its images: `pi(k) = image[k]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &k in &image {
            if k >= n || seen[k] {
                return Err(Error::NotAPermutation(n));
            }
            seen[k] = true;
        }
        Ok(Self(image))
    }

    /// Build from one-based images, as written in reports.
    pub fn from_one_based(image: &[usize]) -> Result<Self> {
        let n = image.len();
        let zero_based = image
            .iter()
            .map(|&k| k.checked_sub(1).ok_or(Error::NotAPermutation(n)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(zero_based)
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// Swap of `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i >= n || j >= n {
            return Err(Error::NotAPermutation(n));
        }
        let mut p = Self::identity(n);
        p.0.swap(i, j);
        Ok(p)
    }

    /// Build from disjoint cycles of zero-based indices.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut image: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (pos, &k) in cycle.iter().enumerate() {
                if k >= n || touched[k] {
                    return Err(Error::NotAPermutation(n));
                }
                touched[k] = true;
                image[k] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Self::new(image)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self) -> &[usize] {
        &self.0
    }

    pub fn one_based_image(&self) -> Vec<usize> {
        self.0.iter().map(|k| k + 1).collect()
    }

    pub fn apply(&self, k: usize) -> usize {
        self.0[k]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (k, &pk) in self.0.iter().enumerate() {
            inv[pk] = k;
        }
        Self(inv)
    }

    /// `other . self`, so that `P_self P_other = P_{self.then(other)}`.
    pub fn then(&self, other: &Self) -> Self {
        Self(self.0.iter().map(|&k| other.0[k]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &pk)| k == pk)
    }

    /// Number of moved points.
    pub fn support(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .filter(|(k, &pk)| *k != pk)
            .count()
    }

    /// `P[k, pi(k)] = 1`; right multiplication sends column `k` to column `pi(k)`.
    pub fn matrix(&self) -> RealMatrix {
        let n = self.len();
        let mut p = RealMatrix::zeros(n, n);
        for (k, &pk) in self.0.iter().enumerate() {
            p[(k, pk)] = 1.0;
        }
        p
    }

    /// Disjoint cycles of length at least two, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut k = self.0[start];
            while k != start {
                seen[k] = true;
                cycle.push(k);
                k = self.0[k];
            }
            out.push(cycle);
        }
        out
    }

    /// All permutations of `0..n`, in lexicographic order of their image vectors.
    pub fn all(n: usize) -> impl Iterator<Item = Self> {
        std::iter::successors(Some(Self::identity(n)), Self::next_lexicographic)
    }

    /// Lexicographic successor of the image vector, `None` after the last one.
    fn next_lexicographic(&self) -> Option<Self> {
        let mut v = self.0.clone();
        let i = (1..v.len()).rev().find(|&i| v[i - 1] < v[i])? - 1;
        let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i])?;
        v.swap(i, j);
        v[i + 1..].reverse();
        Some(Self(v))
    }
}

/// One-based cycle notation, e.g. `(2 3 4)`; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            let body: Vec<String> = cycle.iter().map(|k| (k + 1).to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based_image().serialize(serializer)
    }
}

/// `A P_pi`: column `k` of `A` becomes column `pi(k)` of the result.
pub fn apply_column_permutation(a: &RealMatrix, pi: &Permutation) -> Result<RealMatrix> {
    if pi.len() != a.ncols() {
        return Err(Error::NotAPermutation(a.ncols()));
    }
    let mut out = RealMatrix::zeros(a.nrows(), a.ncols());
    for (k, &pk) in pi.image().iter().enumerate() {
        out.set_column(pk, &a.column(k));
    }
    Ok(out)
}

/// Real polynomial, `coefficients[k]` multiplies `lambda^k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Polynomial {
    pub coefficients: Vec<f64>,
}

impl Polynomial {
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coefficients.last() == Some(&1.0)
    }

    pub fn eval(&self, x: linalg::Complex64) -> linalg::Complex64 {
        self.coefficients
            .iter()
            .rev()
            .fold(linalg::Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
    }

    /// Largest coefficient deviation relative to the largest coefficient magnitude.
    pub fn relative_distance(&self, other: &Self) -> f64 {
        let len = self.coefficients.len().max(other.coefficients.len());
        let get = |p: &Self, k: usize| p.coefficients.get(k).copied().unwrap_or(0.0);
        let scale = (0..len)
            .map(|k| get(self, k).abs().max(get(other, k).abs()))
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
        (0..len)
            .map(|k| (get(self, k) - get(other, k)).abs())
            .fold(0.0, f64::max)
            / scale
    }
}

impl std::ops::AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        if rhs.coefficients.len() > self.coefficients.len() {
            self.coefficients.resize(rhs.coefficients.len(), 0.0);
        }
        for (a, b) in self.coefficients.iter_mut().zip(&rhs.coefficients) {
            *a += b;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharPolyMethod {
    /// Signed sums of principal minors; reference path for `n <= MINOR_PATH_MAX_DIM`.
    PrincipalMinors,
    /// Faddeev-LeVerrier trace recursion.
    TraceRecursion,
}

/// Monic characteristic polynomial `det(lambda Id - A)` via trace recursion.
pub fn char_poly(a: &RealMatrix) -> Result<Polynomial> {
    char_poly_with(a, CharPolyMethod::TraceRecursion)
}

/// The minor path falls back to trace recursion above [`MINOR_PATH_MAX_DIM`].
pub fn char_poly_with(a: &RealMatrix, method: CharPolyMethod) -> Result<Polynomial> {
    let n = linalg::ensure_square(a)?;
    linalg::ensure_finite(a)?;
    match method {
        CharPolyMethod::PrincipalMinors if n <= MINOR_PATH_MAX_DIM => Ok(principal_minor_poly(a)),
        _ => Ok(trace_recursion_poly(a)),
    }
}

// c_k = (-1)^{n-k} * sum of the principal minors left after deleting k rows/columns
fn principal_minor_poly(a: &RealMatrix) -> Polynomial {
    let n = a.nrows();
    let mut coefficients = vec![0.0; n + 1];
    coefficients[n] = 1.0;
    for keep_mask in 1u32..(1u32 << n) {
        let keep: Vec<usize> = (0..n).filter(|&i| keep_mask & (1 << i) != 0).collect();
        let m = keep.len();
        let sub = RealMatrix::from_fn(m, m, |r, c| a[(keep[r], keep[c])]);
        let k = n - m;
        let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
        coefficients[k] += sign * sub.determinant();
    }
    Polynomial { coefficients }
}

fn trace_recursion_poly(a: &RealMatrix) -> Polynomial {
    let n = a.nrows();
    let mut coefficients = vec![0.0; n + 1];
    coefficients[n] = 1.0;
    let id = RealMatrix::identity(n, n);
    let mut m = RealMatrix::zeros(n, n);
    for k in 1..=n {
        m = a * &m + &id * coefficients[n - k + 1];
        coefficients[n - k] = -(a * &m).trace() / k as f64;
    }
    Polynomial { coefficients }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Closed form of `sum_{pi in S_n} det(lambda Id - A P_pi)`:
/// `n! lambda^n - (n-1)! (sum_{l,m} a_{l,m}) lambda^{n-1}`.
pub fn summed_char_poly(a: &RealMatrix) -> Result<Polynomial> {
    let n = linalg::ensure_square(a)?;
    linalg::ensure_finite(a)?;
    let mut coefficients = vec![0.0; n + 1];
    coefficients[n] = factorial(n);
    coefficients[n - 1] = -factorial(n - 1) * a.sum();
    Ok(Polynomial { coefficients })
}

/// The only values that can be eigenvalues of `A P_pi` for all `pi`: `(0, sum(A)/n)`.
pub fn invariant_eigenvalue_candidates(a: &RealMatrix) -> Result<(f64, f64)> {
    let n = linalg::ensure_square(a)?;
    linalg::ensure_finite(a)?;
    Ok((0.0, a.sum() / n as f64))
}

/// A permutation making `Id + i A P_pi` invertible, with its certificate.
#[derive(Debug, Clone, Serialize)]
pub struct PermutationRepair {
    pub permutation: Permutation,
    /// Candidates evaluated, including the successful one.
    pub trials: u64,
    pub min_dist_to_i_after: f64,
    pub sigma_min_after: f64,
    /// `sigma_min_after` sits in the warning band or an eigenvalue is within `eig_abs` of `i`.
    pub degenerate: bool,
}

struct Candidate {
    sigma_min: f64,
    threshold: f64,
}

fn evaluate(a: &RealMatrix, pi: &Permutation, tol: &Tolerance) -> Result<Candidate> {
    let ap = apply_column_permutation(a, pi)?;
    let sv = linalg::singular_values(&linalg::id_plus_i(&ap))?;
    let n = a.nrows();
    Ok(Candidate {
        sigma_min: sv[n - 1],
        threshold: tol.rank_threshold(n, n, sv[0]),
    })
}

/// Search for `pi` with `Id + i A P_pi` invertible.
///
/// Order: identity, then transpositions `(i j)` with `i < j` in lexicographic
/// order, then (for `n <= 8`) every permutation in lexicographic order of its
/// image vector. Larger `n` draws uniform permutations from a ChaCha8 stream
/// seeded with `seed`, up to [`RANDOM_TRIAL_CAP`] trials.
pub fn repair_permutation(a: &RealMatrix, tol: &Tolerance, seed: u64) -> Result<PermutationRepair> {
    let n = linalg::ensure_square(a)?;
    linalg::ensure_finite(a)?;
    let mut trials = 0u64;
    let try_one = |pi: &Permutation, trials: &mut u64| -> Result<Option<PermutationRepair>> {
        *trials += 1;
        let cand = evaluate(a, pi, tol)?;
        if cand.sigma_min <= cand.threshold {
            return Ok(None);
        }
        let eig = linalg::eigenvalues(&apply_column_permutation(a, pi)?)?;
        let min_dist = linalg::min_distance(&eig, IMAG);
        Ok(Some(PermutationRepair {
            permutation: pi.clone(),
            trials: *trials,
            min_dist_to_i_after: min_dist,
            sigma_min_after: cand.sigma_min,
            degenerate: cand.sigma_min <= crate::basis::NEAR_BAND * cand.threshold
                || min_dist <= tol.eig_abs,
        }))
    };

    if let Some(found) = try_one(&Permutation::identity(n), &mut trials)? {
        return Ok(found);
    }
    for i in 0..n {
        for j in i + 1..n {
            if let Some(found) = try_one(&Permutation::transposition(n, i, j)?, &mut trials)? {
                return Ok(found);
            }
        }
    }
    if n <= EXHAUSTIVE_MAX_DIM {
        let mut pi = Permutation::identity(n);
        while let Some(next) = pi.next_lexicographic() {
            pi = next;
            if pi.support() <= 2 {
                continue;
            }
            if let Some(found) = try_one(&pi, &mut trials)? {
                return Ok(found);
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut image: Vec<usize> = (0..n).collect();
        while trials < RANDOM_TRIAL_CAP {
            image.shuffle(&mut rng);
            if let Some(found) = try_one(&Permutation(image.clone()), &mut trials)? {
                return Ok(found);
            }
        }
    }
    Err(Error::SearchExhausted { trials })
}

/// `V^{-1} A V`, the operator expressed in the basis `V`.
pub fn change_of_basis(v: &RealMatrix, a: &RealMatrix, tol: &Tolerance) -> Result<RealMatrix> {
    linalg::ensure_square(v)?;
    linalg::ensure_same_shape(v, a)?;
    let v_inv = linalg::invert(v, tol).map_err(|_| Error::NotABasis { which: "V" })?;
    Ok(v_inv * a * v)
}

/// `V + i A V P_pi`, checked to be invertible.
pub fn rebrick_with_permutation(
    v: &RealMatrix,
    a: &RealMatrix,
    pi: &Permutation,
    tol: &Tolerance,
) -> Result<ComplexMatrix> {
    change_of_basis(v, a, tol)?;
    let avp = apply_column_permutation(&(a * v), pi)?;
    let out = linalg::complexify(v, &avp)?;
    let n = v.nrows();
    let sv = linalg::singular_values(&out)?;
    if !linalg::is_invertible_sv(&sv, n, tol) {
        return Err(Error::NotRepaired {
            sigma_min: sv[n - 1],
        });
    }
    Ok(out)
}
