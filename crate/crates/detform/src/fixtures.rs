//! Built-in demonstration inputs, embedded from the JSON files under
//! `fixtures/`. The files double as documentation of the matrix and
//! polynomial file formats.

use crate::error::{Error, Result};
use crate::exactmat::io::{
    matrix_from_file, poly_from_file, MatrixFile, PolyFile,
};
use crate::exactmat::ExactMatrix;
use crate::laurent::LaurentPoly;

/// Identifiers accepted by `demo`.
pub const DEMO_IDS: [&str; 4] = ["1.2", "4.1", "5.3", "5.9"];

fn load_matrix(text: &str) -> Result<ExactMatrix> {
    let file: MatrixFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("fixture: {e}")))?;
    matrix_from_file(&file)
}

/// The matrix pair behind a pair-based demo id ("1.2", "4.1", "5.9").
pub fn demo_pair(id: &str) -> Result<(ExactMatrix, ExactMatrix)> {
    let (l, r) = match id {
        "1.2" => (
            include_str!("../fixtures/example_1_2_left.json"),
            include_str!("../fixtures/example_1_2_right.json"),
        ),
        "4.1" => (
            include_str!("../fixtures/example_4_1_left.json"),
            include_str!("../fixtures/example_4_1_right.json"),
        ),
        "5.9" => (
            include_str!("../fixtures/example_5_9_left.json"),
            include_str!("../fixtures/example_5_9_right.json"),
        ),
        other => {
            return Err(Error::Parse(format!(
                "no matrix-pair fixture with id {other:?}"
            )))
        }
    };
    Ok((load_matrix(l)?, load_matrix(r)?))
}

/// The polynomial behind the factorization demo id ("5.3").
pub fn demo_poly(id: &str) -> Result<LaurentPoly> {
    match id {
        "5.3" => {
            let file: PolyFile =
                serde_json::from_str(include_str!("../fixtures/example_5_3_b.json"))
                    .map_err(|e| Error::Parse(format!("fixture: {e}")))?;
            poly_from_file(&file)
        }
        other => Err(Error::Parse(format!(
            "no polynomial fixture with id {other:?}"
        ))),
    }
}
