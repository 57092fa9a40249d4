//! The λ-eigenspace `A ⊗ x = λ ⊗ x`, decomposed by partitions.
//!
//! For a partition of the indices into `K` and `L`, a (K, L)-eigenvector
//! is a λ-eigenvector with `x_i ≤ λ` on `K` (where `λ ⊗ x_i = x_i`) and
//! `x_i ≥ λ` on `L` (where `λ ⊗ x_i = λ`). Two partitions are special:
//! `K = N` gives the pure eigenvectors (`A⊗x = x`, `x ≤ λ·1`), generated
//! by the λ-capped principal generators, and `L = N` gives the background
//! eigenvectors (`A⊗x = λ·1`, `x ≥ λ·1`), a box pinned to `λ` on every
//! column that can exceed `λ`.
//!
//! For a general partition the two halves reduce to a system
//! `A'⊗z ⊕ b' = λ·1` over the free parameters, solved by minimal
//! coverings; each covering contributes one parametric piece in which the
//! `K`- and `L`-blocks share a single parameter vector. The full
//! eigenspace is the union of the pure piece, the background piece and
//! the pieces of every proper partition. Pieces overlap freely; the
//! union is reported redundantly and membership takes the disjunction.

use crate::algebra::{lambda_matrix, lambda_w_matrix, IndexSet, Matrix, Vector};
use crate::closure::principal_generator_matrix;
use crate::cover::{build_cover_problem, minimal_solution, Covering};
use crate::error::Error;
use crate::scalar::Scalar;
use crate::sets::ParametricSet;

/// A partition of `{0, ..., n-1}` into the low side `K` (`x_i ≤ λ`) and
/// the high side `L` (`x_i ≥ λ`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    k: IndexSet,
    l: IndexSet,
    n: usize,
}

impl Partition {
    /// Builds the partition with the given `K`; `L` is the complement.
    pub fn from_k(k: IndexSet, n: usize) -> Result<Self, Error> {
        let k = IndexSet::checked(k.iter().collect(), n)?;
        let l = k.complement(n);
        Ok(Partition { k, l, n })
    }

    /// `K = N`: the pure side.
    pub fn pure(n: usize) -> Self {
        Partition {
            k: IndexSet::full(n),
            l: IndexSet::empty(),
            n,
        }
    }

    /// `L = N`: the background side.
    pub fn background(n: usize) -> Self {
        Partition {
            k: IndexSet::empty(),
            l: IndexSet::full(n),
            n,
        }
    }

    pub fn k(&self) -> &IndexSet {
        &self.k
    }

    pub fn l(&self) -> &IndexSet {
        &self.l
    }

    pub fn dim(&self) -> usize {
        self.n
    }
}

/// Which specialized machinery produced a piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PieceKind {
    Pure,
    Background,
    Kl,
}

/// One parametric piece of the eigenspace. Every member satisfies
/// `A⊗x = λ⊗x` together with the partition's side constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenspacePiece {
    pub kind: PieceKind,
    pub partition: Partition,
    /// The minimal covering that produced a (K, L)-piece; absent for
    /// pure and background pieces and when the reduced system was empty.
    /// Indices refer to the original coordinates.
    pub covering: Option<Covering>,
    pub set: ParametricSet,
}

/// The computed description of a λ-eigenspace: a redundant union of
/// pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenspaceDescription {
    pub matrix: Matrix,
    pub lambda: Scalar,
    pub pieces: Vec<EigenspacePiece>,
}

impl EigenspaceDescription {
    /// Exact membership: `x` lies in some piece.
    pub fn contains(&self, x: &Vector) -> Result<bool, Error> {
        for piece in &self.pieces {
            if piece.set.contains(x)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn require_square(a: &Matrix) -> Result<usize, Error> {
    if !a.is_square() {
        return Err(Error::shape(format!(
            "eigenproblem requires a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    Ok(a.rows())
}

/// Splits the column indices by whether the column maximum exceeds `λ`:
/// returns `(above, at_or_below)`. A coordinate in `above` must be pinned
/// to `λ` in any vector `x ≥ λ·1` with `A⊗x ≤ λ·1`.
pub fn column_split(a: &Matrix, lambda: Scalar) -> Result<(IndexSet, IndexSet), Error> {
    let n = require_square(a)?;
    let above: IndexSet = (0..n).filter(|&j| a.col_max(j) > lambda).collect();
    let rest = above.complement(n);
    Ok((above, rest))
}

/// The background eigenvectors: solutions of `A⊗x = λ·1` with
/// `x ≥ λ·1`. `None` iff some row maximum is below `λ` (that row can
/// never reach `λ`); otherwise the box with `x_j = λ` on columns whose
/// maximum exceeds `λ` and `x_j ∈ [λ, 1]` elsewhere.
pub fn background_eigenvectors(a: &Matrix, lambda: Scalar) -> Result<Option<ParametricSet>, Error> {
    let n = require_square(a)?;
    if (0..n).any(|i| a.row_max(i) < lambda) {
        return Ok(None);
    }
    let (_, free) = column_split(a, lambda)?;
    let generators = lambda_matrix(lambda, n, &free)?;
    Ok(Some(ParametricSet::new(
        Vector::constant(n, lambda),
        generators,
    )?))
}

/// The pure eigenvectors: solutions of `A⊗x = x` with `x ≤ λ·1`. Their
/// space is the column space of the λ-capped principal generators
/// `λ ⊗ a⁺_ii ⊗ (A*)_·i`.
pub fn pure_eigenvectors(a: &Matrix, lambda: Scalar) -> Result<ParametricSet, Error> {
    let n = require_square(a)?;
    let generators = principal_generator_matrix(a)?.scale(lambda);
    ParametricSet::new(Vector::zeros(n), generators)
}

/// Everything a (K, L)-partition needs: the split of `L` into rows that
/// reach `λ` inside `L` and rows that depend on the `K`-side, the `L`
/// coordinates pinned to `λ`, and the reduced system `A'⊗z ⊕ b' = λ·1`
/// over the free parameters.
#[derive(Debug, Clone)]
pub struct KlContext {
    pub partition: Partition,
    pub lambda: Scalar,
    /// Rows `i ∈ L` with `max_{j ∈ L} a_ij ≥ λ`: saturated from within
    /// the `L`-block.
    pub l_saturated: IndexSet,
    /// The other `L` rows; they must be saturated through `K`.
    pub l_deficient: IndexSet,
    /// Columns `k ∈ L` with `max_{i ∈ l_saturated} a_ik > λ`.
    pub l_pinned_by_l: IndexSet,
    /// Columns `ℓ ∈ L` where `(A_KK)* A_KL` exceeds `λ`, pinned so the
    /// `K`-side equation stays solvable.
    pub l_pinned_by_k: IndexSet,
    /// All pinned `L` coordinates (forced to equal `λ`).
    pub l_pinned: IndexSet,
    /// The free `L` coordinates (range over `[λ, 1]`).
    pub l_free: IndexSet,
    /// Parameter indices of the reduced system: `l_free ∪ K`, sorted.
    pub reduced_columns: IndexSet,
    /// Coefficients of the reduced system, rows indexed by
    /// `l_deficient`, columns by `reduced_columns`. Every entry is `≤ λ`.
    pub reduced_matrix: Matrix,
    /// Right-hand side of the reduced system; every entry is `≤ λ`.
    pub reduced_rhs: Vector,
    // closure data of the K-block, reused by the assembly
    a_kk_star: Matrix,
    star_lambda: Matrix,
    /// `(A_KK)* ⊗ A_KL`, columns indexed by `L`.
    t_kl: Matrix,
    /// `(A_KK)* ⊗ A_{K,l_free} ⊗ Λ_{l_free,l_free}`.
    m_free: Matrix,
    /// `λ ⊗ (A_KK)* ⊗ A_KL ⊗ 1_L`: the constant part of the K-block.
    k_offset_base: Vector,
}

/// Builds the reduced-system context for a partition.
pub fn kl_context(a: &Matrix, partition: &Partition, lambda: Scalar) -> Result<KlContext, Error> {
    let n = require_square(a)?;
    if partition.dim() != n {
        return Err(Error::shape(format!(
            "partition is over dimension {} but the matrix is {}x{}",
            partition.dim(),
            n,
            n
        )));
    }
    let (k, l) = (partition.k(), partition.l());
    let a_ll = a.submatrix(l, l);
    let l_members: Vec<usize> = l.iter().collect();

    let l_saturated: IndexSet = l_members
        .iter()
        .enumerate()
        .filter(|&(p, _)| a_ll.row_max(p) >= lambda)
        .map(|(_, &i)| i)
        .collect();
    let l_deficient = l.minus(&l_saturated);

    let saturated_pos = l_saturated.positions_in(l);
    let a_sat_l = a_ll.select(&saturated_pos, &(0..l.len()).collect::<Vec<_>>());
    let l_pinned_by_l: IndexSet = l_members
        .iter()
        .enumerate()
        .filter(|&(q, _)| a_sat_l.col_max(q) > lambda)
        .map(|(_, &i)| i)
        .collect();

    let a_kk = a.submatrix(k, k);
    let a_kl = a.submatrix(k, l);
    let a_kk_star = crate::closure::kleene_star(&a_kk)?;
    let star_lambda = principal_generator_matrix(&a_kk)?.scale(lambda);
    let t_kl = a_kk_star.mul(&a_kl)?;

    let l_pinned_by_k: IndexSet = l_members
        .iter()
        .enumerate()
        .filter(|&(q, _)| t_kl.col_max(q) > lambda)
        .map(|(_, &i)| i)
        .collect();

    let l_pinned = l_pinned_by_l.union(&l_pinned_by_k);
    let l_free = l.minus(&l_pinned);
    let reduced_columns = l_free.union(k);

    // blocks of the reduced system
    let free_pos_in_l = l_free.positions_in(l);
    let t_free = t_kl.select(&(0..k.len()).collect::<Vec<_>>(), &free_pos_in_l);
    let lam_free_free = lambda_matrix(lambda, l_free.len(), &IndexSet::full(l_free.len()))?;
    let m_free = t_free.mul(&lam_free_free)?;
    let k_offset_base = t_kl.mul_vec(&Vector::ones(l.len()))?.scale(lambda);

    let a_deficient_k = a.submatrix(&l_deficient, k);
    let rows_block_free = a_deficient_k.mul(&m_free)?;
    let rows_block_k = a_deficient_k.mul(&star_lambda)?;
    let reduced_rhs = a_deficient_k.mul_vec(&k_offset_base)?;

    // interleave the two column blocks at their positions among the
    // sorted reduced columns
    let free_pos_in_reduced = l_free.positions_in(&reduced_columns);
    let k_pos_in_reduced = k.positions_in(&reduced_columns);
    let mut data_cols: Vec<Vector> = vec![Vector::zeros(l_deficient.len()); reduced_columns.len()];
    for (q, &pos) in free_pos_in_reduced.iter().enumerate() {
        data_cols[pos] = rows_block_free.column(q);
    }
    for (p, &pos) in k_pos_in_reduced.iter().enumerate() {
        data_cols[pos] = rows_block_k.column(p);
    }
    let reduced_matrix = Matrix::from_columns(l_deficient.len(), &data_cols);

    // structural invariant of the reduction
    assert!(
        reduced_matrix.entries().all(|e| e <= lambda),
        "reduced system coefficient exceeds lambda"
    );
    assert!(
        reduced_rhs.entries().iter().all(|&e| e <= lambda),
        "reduced right-hand side exceeds lambda"
    );

    Ok(KlContext {
        partition: partition.clone(),
        lambda,
        l_saturated,
        l_deficient,
        l_pinned_by_l,
        l_pinned_by_k,
        l_pinned,
        l_free,
        reduced_columns,
        reduced_matrix,
        reduced_rhs,
        a_kk_star,
        star_lambda,
        t_kl,
        m_free,
        k_offset_base,
    })
}

impl KlContext {
    /// `(A_KK)*`, the Kleene star of the K-block.
    pub fn k_block_star(&self) -> &Matrix {
        &self.a_kk_star
    }

    /// `(A_KK)* ⊗ A_KL`, columns indexed by `L`.
    pub fn k_from_l(&self) -> &Matrix {
        &self.t_kl
    }

    /// The λ-capped principal generators of the K-block.
    pub fn k_block_generators(&self) -> &Matrix {
        &self.star_lambda
    }
}

/// Feasible values of the `L`-block: `λ` on the pinned coordinates,
/// anything in `[λ, 1]` on the free ones. Indexed by `L` (dimension
/// `|L|`).
pub fn l_block_solutions(ctx: &KlContext) -> ParametricSet {
    let l = ctx.partition.l();
    let free_pos = IndexSet::new(ctx.l_free.positions_in(l));
    let generators = lambda_matrix(ctx.lambda, l.len(), &free_pos).expect("positions lie inside L");
    ParametricSet::new(Vector::constant(l.len(), ctx.lambda), generators)
        .expect("matching dimensions")
}

/// Solutions of the `K`-block equation for a fixed `x_L`, or `None` when
/// `(A_KK)* A_KL x_L` exceeds `λ` somewhere and no solution with
/// `x_K ≤ λ·1` exists. Indexed by `K`.
pub fn k_block_solutions(ctx: &KlContext, x_l: &Vector) -> Result<Option<ParametricSet>, Error> {
    let offset = ctx.t_kl.mul_vec(x_l)?;
    let bound = Vector::constant(ctx.partition.k().len(), ctx.lambda);
    if !offset.le(&bound) {
        return Ok(None);
    }
    Ok(Some(ParametricSet::new(offset, ctx.star_lambda.clone())?))
}

/// Assembles the eigenspace piece for one minimal covering of the
/// reduced system. `w_positions` indexes the sorted reduced columns.
///
/// With `z^W` the minimal solution and `Λ^W` its box matrix, the piece
/// stacks
/// `x_L = λ·1_L ⊕ Λ_{L,L̃}(z^W_L̃ ⊕ Λ^W_L̃ v)` and
/// `x_K = λ(A_KK)*A_KL·1_L ⊕ M(z^W_L̃ ⊕ Λ^W_L̃ v) ⊕ G_λ(z^W_K ⊕ Λ^W_K v)`
/// over a single shared parameter vector `v`; the matrix products are
/// distributed so the result is one offset and one generator matrix.
fn assemble_piece(ctx: &KlContext, w_positions: &IndexSet) -> EigenspacePiece {
    let n = ctx.partition.dim();
    let (k, l) = (ctx.partition.k(), ctx.partition.l());
    let reduced_len = ctx.reduced_columns.len();

    let covering = Covering {
        w: w_positions.clone(),
        minimal: true,
    };
    let z_w = minimal_solution(&covering, ctx.lambda, reduced_len);
    let lam_w = lambda_w_matrix(&z_w);

    let all_cols: Vec<usize> = (0..reduced_len).collect();
    let free_pos = ctx.l_free.positions_in(&ctx.reduced_columns);
    let k_pos = k.positions_in(&ctx.reduced_columns);
    let z_free = z_w.select(&free_pos);
    let z_k = z_w.select(&k_pos);
    let lam_w_free = lam_w.select(&free_pos, &all_cols);
    let lam_w_k = lam_w.select(&k_pos, &all_cols);

    let free_pos_in_l = IndexSet::new(ctx.l_free.positions_in(l));
    let lam_l_free =
        lambda_matrix(ctx.lambda, l.len(), &free_pos_in_l).expect("positions lie inside L");

    let off_l = Vector::constant(l.len(), ctx.lambda)
        .oplus(&lam_l_free.mul_vec(&z_free).expect("free block dims"))
        .expect("L dims");
    let gen_l = lam_l_free.mul(&lam_w_free).expect("free block dims");

    let off_k = ctx
        .k_offset_base
        .oplus(&ctx.m_free.mul_vec(&z_free).expect("free block dims"))
        .expect("K dims")
        .oplus(&ctx.star_lambda.mul_vec(&z_k).expect("K block dims"))
        .expect("K dims");
    let gen_k = ctx
        .m_free
        .mul(&lam_w_free)
        .expect("free block dims")
        .oplus(&ctx.star_lambda.mul(&lam_w_k).expect("K block dims"))
        .expect("K dims");

    let offset = Vector::scatter(n, l.as_slice(), &off_l)
        .oplus(&Vector::scatter(n, k.as_slice(), &off_k))
        .expect("scatter dims");
    let generators = Matrix::scatter_rows(n, l.as_slice(), &gen_l)
        .oplus(&Matrix::scatter_rows(n, k.as_slice(), &gen_k))
        .expect("scatter dims");

    let mapped_w: IndexSet = w_positions
        .iter()
        .map(|p| ctx.reduced_columns.as_slice()[p])
        .collect();

    EigenspacePiece {
        kind: PieceKind::Kl,
        partition: ctx.partition.clone(),
        covering: Some(Covering {
            w: mapped_w,
            minimal: true,
        }),
        set: ParametricSet::new(offset, generators).expect("matching dimensions"),
    }
}

/// All (K, L)-eigenvector pieces of a partition.
///
/// `K = N` routes to the pure machinery and `K = ∅` to the background
/// machinery. Otherwise the reduced system is solved by minimal
/// coverings: one piece per covering, an empty list iff no covering of
/// its deficient rows exists. When every `L`-row is saturated from
/// within `L` the reduced system is empty and a single piece with
/// independent parameters is returned.
pub fn kl_eigenvectors(
    a: &Matrix,
    partition: &Partition,
    lambda: Scalar,
) -> Result<Vec<EigenspacePiece>, Error> {
    let n = require_square(a)?;
    if partition.dim() != n {
        return Err(Error::shape(format!(
            "partition is over dimension {} but the matrix is {}x{}",
            partition.dim(),
            n,
            n
        )));
    }
    if partition.l().is_empty() {
        return Ok(vec![EigenspacePiece {
            kind: PieceKind::Pure,
            partition: partition.clone(),
            covering: None,
            set: pure_eigenvectors(a, lambda)?,
        }]);
    }
    if partition.k().is_empty() {
        return Ok(match background_eigenvectors(a, lambda)? {
            Some(set) => vec![EigenspacePiece {
                kind: PieceKind::Background,
                partition: partition.clone(),
                covering: None,
                set,
            }],
            None => Vec::new(),
        });
    }

    let ctx = kl_context(a, partition, lambda)?;
    if ctx.l_deficient.is_empty() {
        let mut piece = assemble_piece(&ctx, &IndexSet::empty());
        piece.covering = None;
        return Ok(vec![piece]);
    }
    let problem = build_cover_problem(&ctx.reduced_matrix, &ctx.reduced_rhs, lambda)
        .expect("reduced system coefficients stay below lambda");
    Ok(problem
        .minimal_coverings()
        .iter()
        .map(|covering| assemble_piece(&ctx, &covering.w))
        .collect())
}

/// Computes the whole λ-eigenspace as a union of pieces: the pure piece
/// (`K = N`), the background piece (`L = N`) when it exists, and the
/// pieces of every proper partition.
///
/// At `λ = 0` the side constraints degenerate (`x ≥ 0` always) and the
/// background machinery alone describes the eigenspace; at `λ = 1` the
/// pure machinery does, with the background piece kept alongside when
/// nonempty. Pieces are sorted by kind, partition and covering.
pub fn full_eigenspace(a: &Matrix, lambda: Scalar) -> Result<EigenspaceDescription, Error> {
    let n = require_square(a)?;
    let mut pieces = Vec::new();

    if lambda.is_zero() {
        let set = background_eigenvectors(a, lambda)?.expect("every row maximum is >= 0");
        pieces.push(EigenspacePiece {
            kind: PieceKind::Background,
            partition: Partition::background(n),
            covering: None,
            set,
        });
        return Ok(EigenspaceDescription {
            matrix: a.clone(),
            lambda,
            pieces,
        });
    }

    pieces.push(EigenspacePiece {
        kind: PieceKind::Pure,
        partition: Partition::pure(n),
        covering: None,
        set: pure_eigenvectors(a, lambda)?,
    });
    if let Some(set) = background_eigenvectors(a, lambda)? {
        pieces.push(EigenspacePiece {
            kind: PieceKind::Background,
            partition: Partition::background(n),
            covering: None,
            set,
        });
    }

    if !lambda.is_one() {
        // partition enumeration is exponential; refuse anything beyond
        // desk scale instead of looping for years
        const MAX_ENUMERATED_DIM: usize = 24;
        if n > MAX_ENUMERATED_DIM {
            return Err(Error::GridTooLarge {
                points: (2u128).pow(n.min(127) as u32),
                cap: (2u128).pow(MAX_ENUMERATED_DIM as u32),
            });
        }
        for mask in 1u64..((1u64 << n) - 1) {
            let k: IndexSet = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let partition = Partition::from_k(k, n)?;
            pieces.extend(kl_eigenvectors(a, &partition, lambda)?);
        }
    }

    pieces.sort_by(|x, y| {
        let key = |p: &EigenspacePiece| {
            (
                p.kind,
                p.partition.k().as_slice().to_vec(),
                p.covering.as_ref().map(|c| c.w.as_slice().to_vec()),
            )
        };
        key(x).cmp(&key(y))
    });

    Ok(EigenspaceDescription {
        matrix: a.clone(),
        lambda,
        pieces,
    })
}
