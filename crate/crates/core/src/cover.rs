//! Minimal-covering solver for `A⊗z ⊕ b = λ·1`.
//!
//! Under the precondition that every coefficient of `A` and `b` is `≤ λ`,
//! row `i` of the equation can only reach `λ` through a column `j` with
//! `a_ij = λ` and `z_j ≥ λ`, unless `b_i = λ` already. With
//! `I₀ = {i : b_i < λ}` and `C_j = {i ∈ I₀ : a_ij = λ}`, the vector `z`
//! solves the system iff `z ≥ z^W` for some `W` whose sets `{C_j : j ∈ W}`
//! form a minimal (irredundant) covering of `I₀`; here `z^W` carries `λ`
//! on `W` and `0` elsewhere. The solution set is the union of the boxes
//! `{z : z^W ≤ z ≤ 1}`, one per minimal covering.

use std::collections::BTreeSet;

use crate::algebra::{lambda_w_matrix, IndexSet, Matrix, Vector};
use crate::error::Error;
use crate::scalar::Scalar;
use crate::sets::ParametricSet;

/// The covering data extracted from an instance of `A⊗z ⊕ b = λ·1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringProblem {
    /// Number of rows of `A` (equations).
    pub rows: usize,
    /// Number of columns of `A` (unknowns).
    pub cols: usize,
    pub lambda: Scalar,
    /// Rows that `b` leaves deficient: `I₀ = {i : b_i < λ}`.
    pub i0: IndexSet,
    /// Per column `j`, the deficient rows it can serve:
    /// `C_j = {i ∈ I₀ : a_ij = λ}`.
    pub cj: Vec<IndexSet>,
}

/// A subset `W` of columns whose sets `C_j` cover `I₀`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Covering {
    pub w: IndexSet,
    /// Whether no proper subset of `w` still covers.
    pub minimal: bool,
}

impl CoveringProblem {
    pub fn is_covering(&self, w: &IndexSet) -> bool {
        let mut covered = IndexSet::empty();
        for j in w.iter() {
            covered = covered.union(&self.cj[j]);
        }
        covered == self.i0
    }

    pub fn is_minimal_covering(&self, w: &IndexSet) -> bool {
        self.is_covering(w)
            && w.iter().all(|j| {
                let rest: IndexSet = w.iter().filter(|&k| k != j).collect();
                !self.is_covering(&rest)
            })
    }

    /// Enumerates every minimal covering, ordered lexicographically by
    /// `W`. Returns exactly `[∅]` when `I₀ = ∅` and an empty list when no
    /// covering exists.
    ///
    /// Depth-first branching: pick the smallest uncovered row and branch
    /// on every column that serves it, then discard redundant results and
    /// deduplicate. Columns with `C_j = ∅` never enter any branch.
    pub fn minimal_coverings(&self) -> Vec<Covering> {
        if self.i0.is_empty() {
            return vec![Covering {
                w: IndexSet::empty(),
                minimal: true,
            }];
        }
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut chosen: Vec<usize> = Vec::new();
        self.branch(&IndexSet::empty(), &mut chosen, &mut found);

        found
            .into_iter()
            .map(IndexSet::new)
            .filter(|w| self.is_minimal_covering(w))
            .map(|w| Covering { w, minimal: true })
            .collect()
    }

    fn branch(
        &self,
        covered: &IndexSet,
        chosen: &mut Vec<usize>,
        found: &mut BTreeSet<Vec<usize>>,
    ) {
        let uncovered = match self.i0.iter().find(|&i| !covered.contains(i)) {
            None => {
                let mut w = chosen.clone();
                w.sort_unstable();
                found.insert(w);
                return;
            }
            Some(i) => i,
        };
        for j in 0..self.cols {
            if self.cj[j].contains(uncovered) && !chosen.contains(&j) {
                chosen.push(j);
                self.branch(&covered.union(&self.cj[j]), chosen, found);
                chosen.pop();
            }
        }
    }
}

/// Extracts `I₀` and the `C_j` from an instance, enforcing the
/// `a_ij ≤ λ`, `b_i ≤ λ` precondition.
pub fn build_cover_problem(
    a: &Matrix,
    b: &Vector,
    lambda: Scalar,
) -> Result<CoveringProblem, Error> {
    if b.dim() != a.rows() {
        return Err(Error::shape(format!(
            "matrix is {}x{} but the right-hand side has dimension {}",
            a.rows(),
            a.cols(),
            b.dim()
        )));
    }
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if a.get(i, j) > lambda {
                return Err(Error::EntryAboveLambda {
                    row: i,
                    col: j,
                    value: a.get(i, j),
                    lambda,
                });
            }
        }
        if b.get(i) > lambda {
            return Err(Error::RhsAboveLambda {
                row: i,
                value: b.get(i),
                lambda,
            });
        }
    }
    let i0: IndexSet = (0..a.rows()).filter(|&i| b.get(i) < lambda).collect();
    let cj = (0..a.cols())
        .map(|j| i0.iter().filter(|&i| a.get(i, j) == lambda).collect())
        .collect();
    Ok(CoveringProblem {
        rows: a.rows(),
        cols: a.cols(),
        lambda,
        i0,
        cj,
    })
}

/// The minimal solution `z^W`: `λ` on `W`, `0` elsewhere.
pub fn minimal_solution(covering: &Covering, lambda: Scalar, n: usize) -> Vector {
    Vector::new(
        (0..n)
            .map(|j| {
                if covering.w.contains(j) {
                    lambda
                } else {
                    Scalar::zero()
                }
            })
            .collect(),
    )
}

/// The box `{z : z^W ≤ z ≤ 1}` as a parametric set: offset `z^W`,
/// generators `Λ^W`.
pub fn solution_set_for_covering(covering: &Covering, lambda: Scalar, n: usize) -> ParametricSet {
    let zw = minimal_solution(covering, lambda, n);
    let generators = lambda_w_matrix(&zw);
    ParametricSet::new(zw, generators).expect("matching dimensions by construction")
}

/// Solves `A⊗z ⊕ b = λ·1` under the `≤ λ` precondition. One parametric
/// box per minimal covering; the union of the boxes is the exact
/// solution set, and an empty list means the system is unsolvable.
pub fn solve_special(a: &Matrix, b: &Vector, lambda: Scalar) -> Result<Vec<ParametricSet>, Error> {
    let problem = build_cover_problem(a, b, lambda)?;
    Ok(problem
        .minimal_coverings()
        .iter()
        .map(|w| solution_set_for_covering(w, lambda, a.cols()))
        .collect())
}
