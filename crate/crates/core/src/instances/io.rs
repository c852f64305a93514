//! JSON instance files.
//!
//! ```json
//! {"n": 2, "m": 1, "W": [[1, 0], [0, 1]], "c": [0, 0], "A": [[1, 1]], "b": [0]}
//! ```
//!
//! Matrices are row-major lists of rows.

use std::fs;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::QpInstance;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QpFile {
    n: usize,
    m: usize,
    #[serde(rename = "W")]
    w: Vec<Vec<f64>>,
    c: Vec<f64>,
    #[serde(rename = "A")]
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
}

fn matrix(name: &str, rows: &[Vec<f64>], nrows: usize, ncols: usize) -> Result<DMatrix<f64>> {
    if rows.len() != nrows {
        return Err(Error::Parse(format!(
            "field \"{name}\": expected {nrows} rows, found {}",
            rows.len()
        )));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != ncols {
            return Err(Error::Parse(format!(
                "field \"{name}\": row {i} has {} entries, expected {ncols}",
                row.len()
            )));
        }
        if let Some(j) = row.iter().position(|x| !x.is_finite()) {
            return Err(Error::Parse(format!(
                "field \"{name}\": entry ({i}, {j}) is not finite"
            )));
        }
    }
    Ok(DMatrix::from_row_iterator(
        nrows,
        ncols,
        rows.iter().flatten().copied(),
    ))
}

fn vector(name: &str, values: &[f64], len: usize) -> Result<DVector<f64>> {
    if values.len() != len {
        return Err(Error::Parse(format!(
            "field \"{name}\": expected {len} entries, found {}",
            values.len()
        )));
    }
    if let Some(i) = values.iter().position(|x| !x.is_finite()) {
        return Err(Error::Parse(format!(
            "field \"{name}\": entry {i} is not finite"
        )));
    }
    Ok(DVector::from_column_slice(values))
}

/// Parse an instance from JSON text.
pub fn qp_from_json(text: &str) -> Result<QpInstance> {
    let file: QpFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let w = matrix("W", &file.w, file.n, file.n)?;
    let c = vector("c", &file.c, file.n)?;
    let a = matrix("A", &file.a, file.m, file.n)?;
    let b = vector("b", &file.b, file.m)?;
    QpInstance::new(w, c, a, b)
}

fn rows(mat: &DMatrix<f64>) -> Vec<Vec<f64>> {
    mat.row_iter().map(|r| r.iter().copied().collect()).collect()
}

pub fn qp_to_json(qp: &QpInstance) -> String {
    let file = QpFile {
        n: qp.n(),
        m: qp.m(),
        w: rows(qp.w()),
        c: qp.c().as_slice().to_vec(),
        a: rows(qp.a()),
        b: qp.b().as_slice().to_vec(),
    };
    serde_json::to_string_pretty(&file).expect("finite floats always serialize")
}

pub fn read_qp(path: impl AsRef<Path>) -> Result<QpInstance> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    qp_from_json(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn write_qp(qp: &QpInstance, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut text = qp_to_json(qp);
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
