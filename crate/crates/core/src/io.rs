//! Text formats for matrices.
//!
//! JSON: `{"n": 3, "rows": [["1/2","1/2","0"], ...]}` with each entry a `"p/q"`
//! or integer string. Non-square matrices use `"n_rows"`/`"n_cols"` in place
//! of `"n"`. CSV: one row per line, comma separated `p/q` cells; blank lines
//! and lines starting with `#` are skipped.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::idempotents::Idempotent;
use crate::partitions::IntShape;
use crate::ratmat::{parse_rational, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_rows: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_cols: Option<usize>,
    pub rows: Vec<Vec<String>>,
}

impl From<&Matrix> for MatrixJson {
    fn from(m: &Matrix) -> Self {
        let rows = m
            .rows()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        if m.is_square() {
            MatrixJson {
                n: Some(m.n_rows()),
                n_rows: None,
                n_cols: None,
                rows,
            }
        } else {
            MatrixJson {
                n: None,
                n_rows: Some(m.n_rows()),
                n_cols: Some(m.n_cols()),
                rows,
            }
        }
    }
}

impl TryFrom<MatrixJson> for Matrix {
    type Error = Error;
    fn try_from(json: MatrixJson) -> Result<Matrix> {
        let mut rows = Vec::with_capacity(json.rows.len());
        for (i, row) in json.rows.iter().enumerate() {
            let parsed = row
                .iter()
                .enumerate()
                .map(|(j, cell)| {
                    parse_rational(cell).map_err(|e| {
                        Error::InvalidMatrix(format!("row {}, entry {}: {e}", i + 1, j + 1))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(parsed);
        }
        let m = Matrix::from_rows(rows)?;
        let expect = |field: &str, declared: Option<usize>, actual: usize| match declared {
            Some(d) if d != actual => Err(Error::InvalidMatrix(format!(
                "{field} = {d} but the grid has {actual}"
            ))),
            _ => Ok(()),
        };
        expect("n", json.n, m.n_rows())?;
        if json.n.is_some() && !m.is_square() {
            return Err(Error::InvalidMatrix(
                "\"n\" given for a non-square grid".into(),
            ));
        }
        expect("n_rows", json.n_rows, m.n_rows())?;
        expect("n_cols", json.n_cols, m.n_cols())?;
        Ok(m)
    }
}

pub fn matrix_to_json(m: &Matrix) -> String {
    serde_json::to_string(&MatrixJson::from(m)).expect("matrix JSON serializes")
}

pub fn matrix_from_json(text: &str) -> Result<Matrix> {
    let json: MatrixJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    json.try_into()
}

/// Idempotent record: its partition JSON plus shape, rank and optional matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentJson {
    pub n: usize,
    pub blocks: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<IntShape>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixJson>,
}

impl IdempotentJson {
    pub fn new(e: &Idempotent, with_matrix: bool) -> Self {
        IdempotentJson {
            n: e.n(),
            blocks: e.partition().blocks().to_vec(),
            shape: Some(e.shape()),
            rank: Some(e.rank()),
            matrix: with_matrix.then(|| e.matrix().into()),
        }
    }

    /// Rebuilds the idempotent, checking the matrix when present.
    pub fn to_idempotent(&self) -> Result<Idempotent> {
        let p = crate::partitions::SetPartition::from_blocks(self.n, self.blocks.clone())?;
        let e = crate::idempotents::idempotent_from_partition(&p);
        if let Some(m) = &self.matrix {
            let m: Matrix = m.clone().try_into()?;
            if m != *e.matrix() {
                return Err(Error::NotIdempotent(
                    "matrix does not match the blocks".into(),
                ));
            }
        }
        Ok(e)
    }
}

pub fn matrix_to_csv(m: &Matrix) -> String {
    let mut out = String::new();
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn matrix_from_csv(text: &str) -> Result<Matrix> {
    let mut rows = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        let mut column = 1;
        for cell in line.split(',') {
            let value = parse_rational(cell).map_err(|message| Error::Parse {
                line: line_no + 1,
                column,
                message,
            })?;
            row.push(value);
            column += cell.chars().count() + 1;
        }
        if let Some(first) = rows.first().map(Vec::len) {
            if row.len() != first {
                return Err(Error::Parse {
                    line: line_no + 1,
                    column: 1,
                    message: format!("expected {first} cells, found {}", row.len()),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "no rows".into(),
        });
    }
    Matrix::from_rows(rows)
}

/// Reads JSON when the text starts with `{`, CSV otherwise.
pub fn matrix_from_text(text: &str) -> Result<Matrix> {
    if text.trim_start().starts_with('{') {
        matrix_from_json(text)
    } else {
        matrix_from_csv(text)
    }
}
