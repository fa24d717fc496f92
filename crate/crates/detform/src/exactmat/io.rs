//! JSON matrix files: dimensions, variable count, optional discriminant,
//! and row-major entry strings in the exact text syntax.

use super::ExactMatrix;
use crate::error::{Error, Result};
use crate::laurent::{parse_poly, parse_quadext};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Serialized matrix: `entries[i][j]` is the entry in row i, column j,
/// written in the exact scalar syntax (`sqrtD` refers to
/// `discriminant`).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    /// Row count.
    pub rows: usize,
    /// Column count.
    pub cols: usize,
    /// Number of indeterminates t1..td.
    pub d: usize,
    /// Discriminant polynomial for `sqrtD`, if any entry needs one.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub discriminant: Option<String>,
    /// Row-major entry strings.
    pub entries: Vec<Vec<String>>,
}

/// Parses a deserialized matrix file into an exact matrix.
pub fn matrix_from_file(file: &MatrixFile) -> Result<ExactMatrix> {
    if file.entries.len() != file.rows {
        return Err(Error::Parse(format!(
            "matrix file declares {} rows but has {} entry rows",
            file.rows,
            file.entries.len()
        )));
    }
    let disc = match &file.discriminant {
        None => None,
        Some(s) => {
            let p = parse_poly(s, file.d)?;
            if p.is_zero() {
                return Err(Error::Parse("discriminant must be nonzero".into()));
            }
            Some(p)
        }
    };
    let mut entries = Vec::with_capacity(file.rows * file.cols);
    for (i, row) in file.entries.iter().enumerate() {
        if row.len() != file.cols {
            return Err(Error::Parse(format!(
                "row {} has {} entries, expected {}",
                i + 1,
                row.len(),
                file.cols
            )));
        }
        for (j, s) in row.iter().enumerate() {
            let value = parse_quadext(s, file.d, disc.as_ref()).map_err(|e| {
                Error::Parse(format!("entry ({},{}): {e}", i + 1, j + 1))
            })?;
            entries.push(value);
        }
    }
    ExactMatrix::new(file.rows, file.cols, file.d, disc, entries)
}

/// Serializes an exact matrix into the file structure.
pub fn matrix_to_file(m: &ExactMatrix) -> MatrixFile {
    let entries = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| m.entry(i, j).to_string())
                .collect()
        })
        .collect();
    MatrixFile {
        rows: m.rows(),
        cols: m.cols(),
        d: m.nvars(),
        discriminant: m.disc().map(|p| p.to_string()),
        entries,
    }
}

/// Reads a matrix from a JSON file.
pub fn read_matrix(path: &Path) -> Result<ExactMatrix> {
    let text = std::fs::read_to_string(path)?;
    let file: MatrixFile = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    matrix_from_file(&file)
}

/// Writes a matrix to a JSON file.
pub fn write_matrix(path: &Path, m: &ExactMatrix) -> Result<()> {
    let file = matrix_to_file(m);
    let text = serde_json::to_string_pretty(&file)
        .map_err(|e| Error::Parse(format!("serialize: {e}")))?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

/// Serialized polynomial: variable count and one expression string.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyFile {
    /// Number of indeterminates t1..td.
    pub d: usize,
    /// Polynomial in the exact text syntax.
    pub poly: String,
}

/// Parses a deserialized polynomial file.
pub fn poly_from_file(file: &PolyFile) -> Result<crate::laurent::LaurentPoly> {
    parse_poly(&file.poly, file.d)
}

/// Reads a polynomial from a JSON file.
pub fn read_poly(path: &Path) -> Result<crate::laurent::LaurentPoly> {
    let text = std::fs::read_to_string(path)?;
    let file: PolyFile = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    poly_from_file(&file)
}
