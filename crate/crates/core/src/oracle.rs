//! Brute-force grid oracle.
//!
//! Max-min products never invent values, so solution regions are unions
//! of boxes whose faces sit at the input values. Enumerating all vectors
//! over the breakpoint grid — the matrix entries, `0`, `λ`, `1`, plus
//! the midpoint of every consecutive pair — therefore probes every face
//! and every interior of a candidate description. Midpoints are what
//! catch open/closed-face mistakes that a pure breakpoint grid would
//! miss. Agreement on the grid is strong evidence for a description,
//! not a proof over the whole cube, and the report says so.

use std::fmt;

use crate::algebra::{Matrix, Vector};
use crate::eigenspace::EigenspaceDescription;
use crate::error::Error;
use crate::scalar::Scalar;

/// Default ceiling on the number of grid points an enumeration may visit.
pub const DEFAULT_GRID_CAP: u128 = 1_000_000;

/// A sorted, duplicate-free list of scalar values with the midpoint of
/// every consecutive pair inserted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueGrid {
    values: Vec<Scalar>,
}

impl ValueGrid {
    /// Builds a grid from arbitrary values; `0` and `1` are always
    /// included, and midpoints of consecutive values are added.
    pub fn from_values(values: impl IntoIterator<Item = Scalar>) -> Self {
        let mut v: Vec<Scalar> = values.into_iter().collect();
        v.push(Scalar::zero());
        v.push(Scalar::one());
        v.sort_unstable();
        v.dedup();
        let midpoints: Vec<Scalar> = v.windows(2).map(|p| p[0].midpoint(p[1])).collect();
        v.extend(midpoints);
        v.sort_unstable();
        v.dedup();
        ValueGrid { values: v }
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Number of grid points in dimension `n`.
    pub fn point_count(&self, n: usize) -> u128 {
        (self.values.len() as u128).saturating_pow(n as u32)
    }

    /// Calls `visit` for every vector in `gridⁿ`, in lexicographic
    /// order, unless that would exceed `cap` points.
    pub fn for_each_vector(
        &self,
        n: usize,
        cap: u128,
        mut visit: impl FnMut(&Vector),
    ) -> Result<(), Error> {
        let points = self.point_count(n);
        if points > cap {
            return Err(Error::GridTooLarge { points, cap });
        }
        let mut counters = vec![0usize; n];
        loop {
            let x = Vector::new(counters.iter().map(|&c| self.values[c]).collect());
            visit(&x);
            let mut pos = n;
            loop {
                if pos == 0 {
                    return Ok(());
                }
                pos -= 1;
                counters[pos] += 1;
                if counters[pos] < self.values.len() {
                    break;
                }
                counters[pos] = 0;
            }
        }
    }
}

/// The breakpoint grid of an eigenproblem instance: entries of `A`,
/// `0`, `λ`, `1`, and all midpoints.
pub fn breakpoints(a: &Matrix, lambda: Scalar) -> ValueGrid {
    ValueGrid::from_values(a.entries().chain([lambda]))
}

/// True iff `A⊗x = λ⊗x` holds exactly, componentwise.
pub fn check_eigen(a: &Matrix, lambda: Scalar, x: &Vector) -> Result<bool, Error> {
    Ok(a.mul_vec(x)? == x.scale(lambda))
}

/// All grid vectors satisfying `A⊗x = λ⊗x`, in lexicographic order.
pub fn grid_eigenvectors(
    a: &Matrix,
    lambda: Scalar,
    grid: &ValueGrid,
    cap: u128,
) -> Result<Vec<Vector>, Error> {
    if !a.is_square() {
        return Err(Error::shape(format!(
            "eigenproblem requires a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let mut found = Vec::new();
    let mut first_error = None;
    grid.for_each_vector(a.rows(), cap, |x| match check_eigen(a, lambda, x) {
        Ok(true) => found.push(x.clone()),
        Ok(false) => {}
        Err(e) => first_error = Some(e),
    })?;
    match first_error {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

/// Outcome of checking a symbolic description against the grid oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossValidationReport {
    pub pass: bool,
    /// Grid eigenvectors covered by no piece (soundness gap of the
    /// description; must be empty).
    pub uncovered: Vec<Vector>,
    /// Sampled piece members that fail the eigenvector equation, with
    /// the index of the offending piece (must be empty).
    pub invalid_samples: Vec<(usize, Vector)>,
    pub grid_points: u128,
    pub eigenvector_count: usize,
    pub piece_count: usize,
    pub samples_per_piece: usize,
}

impl fmt::Display for CrossValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "cross-validation: {}",
            if self.pass { "PASS" } else { "FAIL" }
        )?;
        writeln!(
            f,
            "  grid points visited: {} ({} eigenvectors on the grid)",
            self.grid_points, self.eigenvector_count
        )?;
        writeln!(
            f,
            "  pieces: {} ({} samples each)",
            self.piece_count, self.samples_per_piece
        )?;
        if self.uncovered.is_empty() {
            writeln!(f, "  every grid eigenvector is covered by some piece")?;
        } else {
            writeln!(
                f,
                "  {} grid eigenvectors are covered by no piece:",
                self.uncovered.len()
            )?;
            for x in &self.uncovered {
                writeln!(f, "    {x}")?;
            }
        }
        if self.invalid_samples.is_empty() {
            writeln!(f, "  every sampled piece member satisfies the equation")?;
        } else {
            writeln!(
                f,
                "  {} sampled members fail the equation:",
                self.invalid_samples.len()
            )?;
            for (piece, x) in &self.invalid_samples {
                writeln!(f, "    piece {}: {x}", piece + 1)?;
            }
        }
        write!(
            f,
            "  note: grid agreement is strong evidence on the breakpoint/midpoint \
             grid, not a proof over the whole unit cube"
        )
    }
}

/// Checks a description both ways against the grid: every grid
/// eigenvector must lie in some piece, and sampled members of every
/// piece must satisfy the equation. Sampling is deterministic in `seed`.
pub fn cross_validate(
    a: &Matrix,
    lambda: Scalar,
    description: &EigenspaceDescription,
    grid: &ValueGrid,
    cap: u128,
    samples_per_piece: usize,
    seed: u64,
) -> Result<CrossValidationReport, Error> {
    let eigenvectors = grid_eigenvectors(a, lambda, grid, cap)?;
    let mut uncovered = Vec::new();
    for x in &eigenvectors {
        if !description.contains(x)? {
            uncovered.push(x.clone());
        }
    }

    let mut invalid_samples = Vec::new();
    for (index, piece) in description.pieces.iter().enumerate() {
        for x in piece.set.sample(samples_per_piece, seed ^ index as u64) {
            if !check_eigen(a, lambda, &x)? {
                invalid_samples.push((index, x));
            }
        }
    }

    Ok(CrossValidationReport {
        pass: uncovered.is_empty() && invalid_samples.is_empty(),
        eigenvector_count: eigenvectors.len(),
        uncovered,
        invalid_samples,
        grid_points: grid.point_count(a.rows()),
        piece_count: description.pieces.len(),
        samples_per_piece,
    })
}
