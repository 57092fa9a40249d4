//! Parametric solution sets `{offset ⊕ G⊗z : z ∈ [0,1]^k}`.
//!
//! Every solution set in the crate — Bellman solutions, covering boxes,
//! eigenspace pieces — is reported in this one shape. Membership is
//! decided exactly by residuation: the greatest `z` with `G⊗z ≤ x` is
//! `ẑ_j = min {x_i : g_ij > x_i}` (an empty min is `1`), and `x` belongs
//! to the set iff `offset ≤ x` and `offset ⊕ G⊗ẑ = x`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Matrix, Vector};
use crate::error::Error;
use crate::scalar::Scalar;

/// The set `{offset ⊕ generators ⊗ z : z ∈ [0,1]^k}`.
///
/// The offset itself is always a member (take `z = 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParametricSet {
    offset: Vector,
    generators: Matrix,
}

impl ParametricSet {
    pub fn new(offset: Vector, generators: Matrix) -> Result<Self, Error> {
        if generators.rows() != offset.dim() {
            return Err(Error::shape(format!(
                "offset has dimension {} but the generator matrix has {} rows",
                offset.dim(),
                generators.rows()
            )));
        }
        Ok(ParametricSet { offset, generators })
    }

    /// The one-point set `{v}`.
    pub fn point(v: Vector) -> Self {
        let generators = Matrix::zeros(v.dim(), 0);
        ParametricSet {
            offset: v,
            generators,
        }
    }

    pub fn dim(&self) -> usize {
        self.offset.dim()
    }

    /// Number of free parameters.
    pub fn param_count(&self) -> usize {
        self.generators.cols()
    }

    pub fn offset(&self) -> &Vector {
        &self.offset
    }

    pub fn generators(&self) -> &Matrix {
        &self.generators
    }

    /// The member selected by a parameter vector: `offset ⊕ G⊗z`.
    pub fn member(&self, z: &Vector) -> Result<Vector, Error> {
        self.offset.oplus(&self.generators.mul_vec(z)?)
    }

    /// The greatest `z` with `G⊗z ≤ x` (principal solution).
    pub fn principal_parameter(&self, x: &Vector) -> Result<Vector, Error> {
        if x.dim() != self.dim() {
            return Err(Error::shape(format!(
                "membership query of dimension {} against a set of dimension {}",
                x.dim(),
                self.dim()
            )));
        }
        let g = &self.generators;
        Ok(Vector::new(
            (0..g.cols())
                .map(|j| {
                    (0..g.rows())
                        .filter(|&i| g.get(i, j) > x.get(i))
                        .map(|i| x.get(i))
                        .fold(Scalar::one(), Scalar::otimes)
                })
                .collect(),
        ))
    }

    /// Exact membership test.
    pub fn contains(&self, x: &Vector) -> Result<bool, Error> {
        let z = self.principal_parameter(x)?;
        if !self.offset.le(x) {
            return Ok(false);
        }
        Ok(self.member(&z)? == *x)
    }

    /// Per-coordinate bounds `[offset_i, offset_i ⊕ max_j g_ij]` of the
    /// denoted set. Both bounds are attained (at `z = 0` and `z = 1`);
    /// the set itself need not fill the whole box.
    pub fn bounds(&self) -> Vec<(Scalar, Scalar)> {
        (0..self.dim())
            .map(|i| {
                let lo = self.offset.get(i);
                let hi = lo.oplus(self.generators.row_max(i));
                (lo, hi)
            })
            .collect()
    }

    /// Deterministic pseudo-random members, reproducible from `seed`.
    /// Parameter values are drawn from the set's own breakpoint values
    /// (offset and generator entries, 0, 1, and midpoints), so samples
    /// land on faces as well as interiors.
    pub fn sample(&self, count: usize, seed: u64) -> Vec<Vector> {
        let mut pool: Vec<Scalar> = vec![Scalar::zero(), Scalar::one()];
        pool.extend(self.offset.entries().iter().copied());
        pool.extend(self.generators.entries());
        pool.sort_unstable();
        pool.dedup();
        let midpoints: Vec<Scalar> = pool
            .windows(2)
            .map(|pair| pair[0].midpoint(pair[1]))
            .collect();
        pool.extend(midpoints);
        pool.sort_unstable();
        pool.dedup();

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let z = Vector::new(
                    (0..self.param_count())
                        .map(|_| pool[rng.gen_range(0..pool.len())])
                        .collect(),
                );
                self.member(&z).expect("parameter dimension is correct")
            })
            .collect()
    }
}
