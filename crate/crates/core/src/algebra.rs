//! Dense max-min vectors and matrices.
//!
//! Addition of matrices is entrywise `⊕` and the product is
//! `(A ⊗ B)_ij = ⊕_k a_ik ⊗ b_kj`, i.e. the best bottleneck value over
//! all one-step paths. Vectors are column vectors; a matrix-vector product
//! is the `n × 1` special case, so no transpose machinery exists.
//!
//! [`IndexSet`] carries the many index subsets the eigenproblem juggles
//! (`K`, `L`, coverings, column selections, ...): always sorted, always
//! duplicate-free, 0-based.

use std::fmt;

use crate::error::Error;
use crate::scalar::Scalar;

/// A sorted, duplicate-free set of 0-based indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSet {
    indices: Vec<usize>,
}

impl IndexSet {
    /// Builds a set from arbitrary indices, sorting and deduplicating.
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        IndexSet { indices }
    }

    /// Like [`IndexSet::new`] but verifies every member is `< ambient`.
    pub fn checked(indices: Vec<usize>, ambient: usize) -> Result<Self, Error> {
        let set = IndexSet::new(indices);
        if let Some(&bad) = set.indices.iter().find(|&&i| i >= ambient) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                dim: ambient,
            });
        }
        Ok(set)
    }

    pub fn empty() -> Self {
        IndexSet {
            indices: Vec::new(),
        }
    }

    /// The full set `{0, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        IndexSet {
            indices: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.binary_search(&index).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.indices
    }

    /// Complement within `{0, ..., n-1}`.
    pub fn complement(&self, n: usize) -> IndexSet {
        IndexSet {
            indices: (0..n).filter(|i| !self.contains(*i)).collect(),
        }
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        let mut v = self.indices.clone();
        v.extend(other.iter());
        IndexSet::new(v)
    }

    pub fn minus(&self, other: &IndexSet) -> IndexSet {
        IndexSet {
            indices: self.iter().filter(|i| !other.contains(*i)).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &IndexSet) -> bool {
        self.iter().all(|i| other.contains(i))
    }

    /// Position of `index` within this (sorted) set.
    pub fn position_of(&self, index: usize) -> Option<usize> {
        self.indices.binary_search(&index).ok()
    }

    /// Positions of this set's members inside `superset`, in order.
    /// Panics if some member is missing from `superset`.
    pub fn positions_in(&self, superset: &IndexSet) -> Vec<usize> {
        self.iter()
            .map(|i| superset.position_of(i).expect("positions_in: not a subset"))
            .collect()
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.indices.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        IndexSet::new(iter.into_iter().collect())
    }
}

/// A column vector over the max-min algebra.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vector {
    entries: Vec<Scalar>,
}

impl Vector {
    pub fn new(entries: Vec<Scalar>) -> Self {
        Vector { entries }
    }

    pub fn zeros(n: usize) -> Self {
        Vector {
            entries: vec![Scalar::zero(); n],
        }
    }

    /// The constant vector `c·1`.
    pub fn constant(n: usize, c: Scalar) -> Self {
        Vector {
            entries: vec![c; n],
        }
    }

    pub fn ones(n: usize) -> Self {
        Vector::constant(n, Scalar::one())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.entries[i]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    /// Entrywise `⊕`.
    pub fn oplus(&self, other: &Vector) -> Result<Vector, Error> {
        if self.dim() != other.dim() {
            return Err(Error::shape(format!(
                "cannot add vectors of dimensions {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(Vector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.oplus(*b))
                .collect(),
        })
    }

    /// Scalar product `c ⊗ x`, entrywise min with `c`.
    pub fn scale(&self, c: Scalar) -> Vector {
        Vector {
            entries: self.entries.iter().map(|a| a.otimes(c)).collect(),
        }
    }

    /// Entrywise `self <= other`; false on dimension mismatch.
    pub fn le(&self, other: &Vector) -> bool {
        self.dim() == other.dim() && self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }

    /// Subvector at the given positions.
    pub fn select(&self, positions: &[usize]) -> Vector {
        Vector {
            entries: positions.iter().map(|&p| self.entries[p]).collect(),
        }
    }

    /// Subvector indexed by an [`IndexSet`].
    pub fn restrict(&self, set: &IndexSet) -> Vector {
        self.select(set.as_slice())
    }

    /// Places `values` at `positions` of an otherwise-zero vector of
    /// dimension `n`.
    pub fn scatter(n: usize, positions: &[usize], values: &Vector) -> Vector {
        assert_eq!(positions.len(), values.dim(), "scatter length mismatch");
        let mut entries = vec![Scalar::zero(); n];
        for (&p, &v) in positions.iter().zip(values.entries.iter()) {
            entries[p] = v;
        }
        Vector { entries }
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A dense row-major matrix over the max-min algebra.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    /// Builds from rows, checking rectangularity.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::shape(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    c
                )));
            }
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i * self.cols + j]
    }

    /// `(A ⊗ B)_ij = ⊕_k a_ik ⊗ b_kj`. An empty inner dimension yields
    /// the zero matrix (empty `⊕`).
    pub fn mul(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.cols != other.rows {
            return Err(Error::shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols)
                .map(|k| self.get(i, k).otimes(other.get(k, j)))
                .fold(Scalar::zero(), Scalar::oplus)
        }))
    }

    /// Matrix-vector product `A ⊗ x`, treating `x` as an `n × 1` matrix.
    pub fn mul_vec(&self, x: &Vector) -> Result<Vector, Error> {
        if self.cols != x.dim() {
            return Err(Error::shape(format!(
                "cannot multiply {}x{} by a vector of dimension {}",
                self.rows,
                self.cols,
                x.dim()
            )));
        }
        Ok(Vector::new(
            (0..self.rows)
                .map(|i| {
                    (0..self.cols)
                        .map(|k| self.get(i, k).otimes(x.get(k)))
                        .fold(Scalar::zero(), Scalar::oplus)
                })
                .collect(),
        ))
    }

    /// Entrywise `⊕`.
    pub fn oplus(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).oplus(other.get(i, j))
        }))
    }

    /// `A^k` with `A^0 = I`; requires a square matrix.
    pub fn power(&self, k: usize) -> Result<Matrix, Error> {
        if !self.is_square() {
            return Err(Error::shape(format!(
                "power of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Scalar product `c ⊗ A`, entrywise min with `c`.
    pub fn scale(&self, c: Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.otimes(c)).collect(),
        }
    }

    /// Entrywise `self <= other`; false on shape mismatch.
    pub fn le(&self, other: &Matrix) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a <= b)
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector::new((0..self.rows).map(|i| self.get(i, j)).collect())
    }

    pub fn row_vector(&self, i: usize) -> Vector {
        Vector::new((0..self.cols).map(|j| self.get(i, j)).collect())
    }

    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        for c in columns {
            assert_eq!(c.dim(), rows, "column length mismatch");
        }
        Matrix::from_fn(rows, columns.len(), |i, j| columns[j].get(i))
    }

    pub fn col_max(&self, j: usize) -> Scalar {
        (0..self.rows)
            .map(|i| self.get(i, j))
            .fold(Scalar::zero(), Scalar::oplus)
    }

    pub fn row_max(&self, i: usize) -> Scalar {
        (0..self.cols)
            .map(|j| self.get(i, j))
            .fold(Scalar::zero(), Scalar::oplus)
    }

    /// Submatrix with rows and columns taken at the given positions.
    pub fn select(&self, row_positions: &[usize], col_positions: &[usize]) -> Matrix {
        Matrix::from_fn(row_positions.len(), col_positions.len(), |i, j| {
            self.get(row_positions[i], col_positions[j])
        })
    }

    /// Submatrix indexed by row and column [`IndexSet`]s.
    pub fn submatrix(&self, rows: &IndexSet, cols: &IndexSet) -> Matrix {
        self.select(rows.as_slice(), cols.as_slice())
    }

    /// Places the rows of `values` at `positions` of an otherwise-zero
    /// matrix with `n` rows.
    pub fn scatter_rows(n: usize, positions: &[usize], values: &Matrix) -> Matrix {
        assert_eq!(positions.len(), values.rows(), "scatter length mismatch");
        let mut out = Matrix::zeros(n, values.cols());
        for (i, &p) in positions.iter().enumerate() {
            for j in 0..values.cols() {
                out.data[p * out.cols + j] = values.get(i, j);
            }
        }
        out
    }

    pub fn entries(&self) -> impl Iterator<Item = Scalar> + '_ {
        self.data.iter().copied()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// The `n × |columns|` selection of the matrix `Λ` whose diagonal is `1`
/// and whose off-diagonal entries are `λ`: column `q` has a `1` in the row
/// equal to the q-th selected index and `λ` elsewhere.
pub fn lambda_matrix(lambda: Scalar, n: usize, columns: &IndexSet) -> Result<Matrix, Error> {
    if let Some(bad) = columns.iter().find(|&i| i >= n) {
        return Err(Error::IndexOutOfRange { index: bad, dim: n });
    }
    let cols: Vec<usize> = columns.iter().collect();
    Ok(Matrix::from_fn(n, cols.len(), |i, q| {
        if i == cols[q] {
            Scalar::one()
        } else {
            lambda
        }
    }))
}

/// The square matrix `Λ^W` with diagonal `1` and off-diagonal entries in
/// row `i` equal to `z_i`, for the given vector `z`.
pub fn lambda_w_matrix(z: &Vector) -> Matrix {
    let n = z.dim();
    Matrix::from_fn(n, n, |i, j| if i == j { Scalar::one() } else { z.get(i) })
}
