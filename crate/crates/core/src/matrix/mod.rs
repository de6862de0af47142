//! Dense matrices over a semiring and the evaluation of terms into them.
//!
//! Basis vectors of `A ⊗ B` are flattened row-major: `e_i ⊗ e_j` sits at
//! index `i * dim(B) + j`. Duals share the basis of the original object.

mod dense;
mod eval;
mod model;

use serde_json::{json, Value};
use thiserror::Error;

use crate::kernel::TypeError;
use crate::scalars::{ScalarError, Semiring};

pub use dense::{inner_product, Matrix};
pub use eval::{
    coname_matrix, counit_vector, dist_right_matrix, evaluate, injection_matrix, name_matrix, scalar_dimension,
    swap_matrix, unit_vector,
};
pub use model::{float_model, Model, ModelKind, ModelScalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatrixError {
    #[error("{rows}x{cols} matrix needs {} entries, found {found}", rows * cols)]
    Length { rows: usize, cols: usize, found: usize },
    #[error("ragged rows: expected {expected} columns, found {found}")]
    Ragged { expected: usize, found: usize },
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    Shape { op: &'static str, left: (usize, usize), right: (usize, usize) },
    #[error("matrix of shape {0:?} is not square")]
    NotSquare((usize, usize)),
    #[error("matrix of shape {0:?} is not a scalar")]
    NotScalar((usize, usize)),
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("model assigns a matrix to undeclared generator `{0}`")]
    UnknownGenerator(String),
    #[error("model has no matrix for generator `{0}`")]
    MissingGenerator(String),
    #[error("generator `{name}` should be {expected:?}, found {found:?}")]
    GeneratorShape { name: String, expected: (usize, usize), found: (usize, usize) },
    #[error("semiring mismatch: expected {expected}, found {found}")]
    Semiring { expected: String, found: String },
    #[error("malformed matrix JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// `{rows, cols, semiring, entries}` with nested row arrays.
pub fn matrix_to_json<S: Semiring>(m: &Matrix<S>) -> Value {
    let entries: Vec<Value> =
        (0..m.rows()).map(|i| Value::Array(m.row_vec(i).iter().map(S::to_json).collect())).collect();
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "semiring": S::NAME,
        "entries": entries,
    })
}

pub fn matrix_from_json<S: Semiring>(v: &Value) -> Result<Matrix<S>, MatrixError> {
    let field = |k: &str| v.get(k).ok_or_else(|| MatrixError::Json(format!("missing `{k}`")));
    let semiring = field("semiring")?.as_str().unwrap_or_default();
    if semiring != S::NAME {
        return Err(MatrixError::Semiring { expected: S::NAME.into(), found: semiring.into() });
    }
    let dim = |k: &str| -> Result<usize, MatrixError> {
        field(k)?
            .as_u64()
            .map(|n| n as usize)
            .ok_or_else(|| MatrixError::Json(format!("`{k}` is not a natural number")))
    };
    let (rows, cols) = (dim("rows")?, dim("cols")?);
    let entries = field("entries")?.as_array().ok_or_else(|| MatrixError::Json("`entries` is not an array".into()))?;
    if entries.len() != rows {
        return Err(MatrixError::Json(format!("expected {rows} rows, found {}", entries.len())));
    }
    let mut flat = Vec::with_capacity(rows * cols);
    for row in entries {
        let row = row.as_array().ok_or_else(|| MatrixError::Json("row is not an array".into()))?;
        if row.len() != cols {
            return Err(MatrixError::Ragged { expected: cols, found: row.len() });
        }
        for x in row {
            flat.push(S::from_json(x)?);
        }
    }
    Matrix::new(rows, cols, flat)
}
