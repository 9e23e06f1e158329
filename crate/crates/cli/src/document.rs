//! Self-describing JSON form of an operator matrix.

use lattice_digits::{Entry, LatticeSpec, OperatorMatrix};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixMeta {
    pub q: u32,
    pub n: u32,
    pub n_minus: u32,
    pub system: String,
    pub boundary: String,
    pub op: String,
    pub index: Option<i32>,
    pub amount: Option<String>,
    pub representation: Option<String>,
    pub basis_order: String,
}

impl MatrixMeta {
    pub fn new(spec: &LatticeSpec, system: &str, op: &str) -> Self {
        let boundary = match spec.boundary {
            lattice_digits::Boundary::Periodic => "periodic",
            lattice_digits::Boundary::Antiperiodic => "antiperiodic",
        };
        Self {
            q: spec.q(),
            n: spec.n,
            n_minus: spec.n_minus,
            system: system.to_string(),
            boundary: boundary.to_string(),
            op: op.to_string(),
            index: None,
            amount: None,
            representation: None,
            basis_order: basis_order_note(spec),
        }
    }
}

/// Human-readable statement of the row order.
pub fn basis_order_note(spec: &LatticeSpec) -> String {
    format!("rows ordered by decreasing x, {} labels", spec.basis.name())
}

/// A matrix with its metadata; entries are `[re, im]` pairs in row-major
/// order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub meta: MatrixMeta,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixDocument {
    pub fn new(meta: MatrixMeta, m: &OperatorMatrix) -> Self {
        Self {
            meta,
            rows: m.rows(),
            cols: m.cols(),
            entries: m.as_slice().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<OperatorMatrix, CliError> {
        if self.entries.len() != self.rows * self.cols {
            return Err(CliError::Config(format!(
                "document holds {} entries for a {}x{} matrix",
                self.entries.len(),
                self.rows,
                self.cols
            )));
        }
        let data = self.entries.iter().map(|[re, im]| Entry::new(*re, *im)).collect();
        Ok(OperatorMatrix::from_row_major(self.rows, self.cols, data)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("matrix documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("invalid matrix document: {e}")))
    }

    /// One line per entry: `row,col,re,im`.
    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["row", "col", "re", "im"])?;
        for (k, [re, im]) in self.entries.iter().enumerate() {
            let (i, j) = (k / self.cols, k % self.cols);
            w.serialize((i, j, re, im))?;
        }
        Ok(String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.to_string()))?)
            .expect("csv output is UTF-8"))
    }
}
