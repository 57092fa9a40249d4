//! The algebraic Bellman equation `x = A⊗x ⊕ b`.
//!
//! Over the max-min algebra this equation always has solutions: the least
//! one is `A*⊗b`, and the full solution set is `{A*⊗b ⊕ v : A⊗v = v}`,
//! so it is generated by the least solution together with the principal
//! eigenvectors of `A`.

use crate::algebra::{Matrix, Vector};
use crate::closure::{kleene_star, principal_generator_matrix};
use crate::error::Error;
use crate::sets::ParametricSet;

/// The least solution `A*⊗b` of `x = A⊗x ⊕ b`.
pub fn least_solution(a: &Matrix, b: &Vector) -> Result<Vector, Error> {
    kleene_star(a)?.mul_vec(b)
}

/// The full solution set: offset `A*⊗b`, generated by the principal
/// eigenvectors of `A`.
pub fn bellman_solution_set(a: &Matrix, b: &Vector) -> Result<ParametricSet, Error> {
    let offset = least_solution(a, b)?;
    ParametricSet::new(offset, principal_generator_matrix(a)?)
}

/// True iff `x = A⊗x ⊕ b` holds exactly.
pub fn is_bellman_solution(a: &Matrix, b: &Vector, x: &Vector) -> Result<bool, Error> {
    if b.dim() != a.rows() {
        return Err(Error::shape(format!(
            "matrix is {}x{} but the right-hand side has dimension {}",
            a.rows(),
            a.cols(),
            b.dim()
        )));
    }
    Ok(a.mul_vec(x)?.oplus(b)? == *x)
}
