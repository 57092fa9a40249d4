//! JSON file formats.
//!
//! Numbers travel as decimal strings and are converted to exact
//! rationals on parse, so files round-trip without any precision loss
//! (values with no finite decimal expansion fall back to `"p/q"`).
//! All indices in files are 1-based; the library is 0-based internally.

use serde::{Deserialize, Serialize};

use crate::algebra::{IndexSet, Matrix, Vector};
use crate::cover::Covering;
use crate::eigenspace::{EigenspaceDescription, EigenspacePiece, Partition, PieceKind};
use crate::error::Error;
use crate::scalar::Scalar;
use crate::sets::ParametricSet;

/// An input problem: a matrix, optionally a right-hand side `b`, a
/// value `lambda`, and a candidate vector `x` for verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemFile {
    pub matrix: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<String>>,
}

fn parse_entry(token: &str, context: &str) -> Result<Scalar, Error> {
    token.trim().parse::<Scalar>().map_err(|e| match e {
        Error::Parse { token, reason } => Error::Parse {
            token,
            reason: format!("{context}: {reason}"),
        },
        other => other,
    })
}

fn parse_vector(tokens: &[String], what: &str) -> Result<Vector, Error> {
    let mut entries = Vec::with_capacity(tokens.len());
    for (i, token) in tokens.iter().enumerate() {
        entries.push(parse_entry(token, &format!("{what}, entry {}", i + 1))?);
    }
    Ok(Vector::new(entries))
}

fn parse_matrix_rows(rows: &[Vec<String>]) -> Result<Matrix, Error> {
    let mut parsed = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let mut r = Vec::with_capacity(row.len());
        for (j, token) in row.iter().enumerate() {
            r.push(parse_entry(
                token,
                &format!("matrix row {}, column {}", i + 1, j + 1),
            )?);
        }
        parsed.push(r);
    }
    Matrix::from_rows(parsed)
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::parse("<input>", e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn matrix(&self) -> Result<Matrix, Error> {
        parse_matrix_rows(&self.matrix)
    }

    pub fn b_vector(&self) -> Result<Option<Vector>, Error> {
        self.b
            .as_ref()
            .map(|b| parse_vector(b, "right-hand side b"))
            .transpose()
    }

    pub fn x_vector(&self) -> Result<Option<Vector>, Error> {
        self.x
            .as_ref()
            .map(|x| parse_vector(x, "vector x"))
            .transpose()
    }

    pub fn lambda(&self) -> Result<Option<Scalar>, Error> {
        self.lambda
            .as_ref()
            .map(|t| parse_entry(t, "lambda"))
            .transpose()
    }
}

pub fn vector_strings(v: &Vector) -> Vec<String> {
    v.entries().iter().map(Scalar::to_string).collect()
}

pub fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

/// Columns of a matrix as string vectors (generator matrices are stored
/// column-major: one inner array per generator).
pub fn matrix_columns(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.cols())
        .map(|j| (0..m.rows()).map(|i| m.get(i, j).to_string()).collect())
        .collect()
}

fn one_based(set: &IndexSet) -> Vec<usize> {
    set.iter().map(|i| i + 1).collect()
}

fn zero_based(indices: &[usize], what: &str) -> Result<Vec<usize>, Error> {
    indices
        .iter()
        .map(|&i| {
            i.checked_sub(1)
                .ok_or_else(|| Error::parse("0", format!("{what}: indices are 1-based")))
        })
        .collect()
}

/// A parametric set in a file: offset plus column-major generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetFile {
    pub offset: Vec<String>,
    pub generators: Vec<Vec<String>>,
}

impl SetFile {
    pub fn from_set(set: &ParametricSet) -> Self {
        SetFile {
            offset: vector_strings(set.offset()),
            generators: matrix_columns(set.generators()),
        }
    }

    pub fn to_set(&self) -> Result<ParametricSet, Error> {
        let offset = parse_vector(&self.offset, "offset")?;
        let mut columns = Vec::with_capacity(self.generators.len());
        for (j, col) in self.generators.iter().enumerate() {
            columns.push(parse_vector(col, &format!("generator {}", j + 1))?);
        }
        for col in &columns {
            if col.dim() != offset.dim() {
                return Err(Error::shape(format!(
                    "generator column of dimension {} against an offset of dimension {}",
                    col.dim(),
                    offset.dim()
                )));
            }
        }
        ParametricSet::new(offset.clone(), Matrix::from_columns(offset.dim(), &columns))
    }
}

/// One eigenspace piece in a file. `k`, `l` and `covering` are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceFile {
    pub kind: String,
    pub k: Vec<usize>,
    pub l: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covering: Option<Vec<usize>>,
    pub offset: Vec<String>,
    pub generators: Vec<Vec<String>>,
}

/// A computed eigenspace description in a file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescriptionFile {
    pub lambda: String,
    pub pieces: Vec<PieceFile>,
}

fn kind_name(kind: PieceKind) -> &'static str {
    match kind {
        PieceKind::Pure => "pure",
        PieceKind::Background => "background",
        PieceKind::Kl => "kl",
    }
}

fn kind_from_name(name: &str) -> Result<PieceKind, Error> {
    match name {
        "pure" => Ok(PieceKind::Pure),
        "background" => Ok(PieceKind::Background),
        "kl" => Ok(PieceKind::Kl),
        other => Err(Error::parse(
            other,
            "piece kind must be one of pure, background, kl",
        )),
    }
}

impl DescriptionFile {
    pub fn from_description(desc: &EigenspaceDescription) -> Self {
        DescriptionFile {
            lambda: desc.lambda.to_string(),
            pieces: desc
                .pieces
                .iter()
                .map(|p| PieceFile {
                    kind: kind_name(p.kind).to_string(),
                    k: one_based(p.partition.k()),
                    l: one_based(p.partition.l()),
                    covering: p.covering.as_ref().map(|c| one_based(&c.w)),
                    offset: vector_strings(p.set.offset()),
                    generators: matrix_columns(p.set.generators()),
                })
                .collect(),
        }
    }

    /// Parses back into `(lambda, pieces)`; the source matrix is not
    /// stored in the file.
    pub fn to_pieces(&self) -> Result<(Scalar, Vec<EigenspacePiece>), Error> {
        let lambda = parse_entry(&self.lambda, "lambda")?;
        let mut pieces = Vec::with_capacity(self.pieces.len());
        for piece in &self.pieces {
            let kind = kind_from_name(&piece.kind)?;
            let n = piece.k.len() + piece.l.len();
            let k = IndexSet::checked(zero_based(&piece.k, "K")?, n)?;
            let l = IndexSet::checked(zero_based(&piece.l, "L")?, n)?;
            let partition = Partition::from_k(k, n)?;
            if partition.l() != &l {
                return Err(Error::shape(
                    "K and L of a piece do not partition the index set",
                ));
            }
            let covering = piece
                .covering
                .as_ref()
                .map(|w| -> Result<Covering, Error> {
                    Ok(Covering {
                        w: IndexSet::new(zero_based(w, "covering")?),
                        minimal: true,
                    })
                })
                .transpose()?;
            let set = SetFile {
                offset: piece.offset.clone(),
                generators: piece.generators.clone(),
            }
            .to_set()?;
            if set.dim() != n {
                return Err(Error::shape(format!(
                    "piece partitions {} indices but its set has dimension {}",
                    n,
                    set.dim()
                )));
            }
            pieces.push(EigenspacePiece {
                kind,
                partition,
                covering,
                set,
            });
        }
        Ok((lambda, pieces))
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::parse("<input>", e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

/// Output of the closure command: metric matrix and Kleene star,
/// row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarFile {
    pub metric: Vec<Vec<String>>,
    pub star: Vec<Vec<String>>,
}

impl StarFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::parse("<input>", e.to_string()))
    }
}

/// Output of the Bellman command: least solution and the full solution
/// set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BellmanFile {
    pub least: Vec<String>,
    pub solution_set: SetFile,
}

impl BellmanFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::parse("<input>", e.to_string()))
    }
}

/// One minimal covering with its least solution and solution box.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverBlockFile {
    /// 1-based column indices of the covering.
    pub w: Vec<usize>,
    pub minimal_solution: Vec<String>,
    pub solution_set: SetFile,
}

/// Output of the covering command. `solvable: false` (with no blocks)
/// marks an unsolvable system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverFile {
    pub lambda: String,
    pub solvable: bool,
    pub coverings: Vec<CoverBlockFile>,
}

impl CoverFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::parse("<input>", e.to_string()))
    }
}
