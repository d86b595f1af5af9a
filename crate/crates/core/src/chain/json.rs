use serde::{Deserialize, Serialize};

use super::{ChainComplex, ChainError};
use crate::linalg::{SparseMatrix, Triplet};
use crate::scalar::{Scalar, Variant};

/// Serialized form of a [`ChainComplex`]. Scalars are kept as strings in the
/// textual form of their variant, so the round trip is exact.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub variant: Variant,
    pub window: [i64; 2],
    pub dims: Vec<usize>,
    pub boundaries: Vec<BoundaryDoc>,
    pub labels: Vec<Vec<String>>,
}

/// `D_degree` as sparse `(row, col, scalar)` triplets.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryDoc {
    pub degree: i64,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Triplet>,
}

impl ChainComplex {
    pub fn to_doc(&self) -> ComplexDoc {
        ComplexDoc {
            variant: self.variant,
            window: [self.lo(), self.hi()],
            dims: self.dims(),
            boundaries: (self.lo() + 1..=self.hi())
                .map(|n| {
                    let d = self.boundary(n);
                    BoundaryDoc {
                        degree: n,
                        rows: d.nrows(),
                        cols: d.ncols(),
                        entries: d.to_triplets(),
                    }
                })
                .collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn from_doc(doc: &ComplexDoc) -> Result<Self, ChainError> {
        let [lo, hi] = doc.window;
        let len = hi - lo + 1;
        if len < 1 || doc.dims.len() as i64 != len || doc.labels.len() as i64 != len {
            return Err(ChainError::Document(format!(
                "window [{lo}, {hi}] does not match {} dims and {} label lists",
                doc.dims.len(),
                doc.labels.len()
            )));
        }
        for (k, (d, l)) in doc.dims.iter().zip(&doc.labels).enumerate() {
            if *d != l.len() {
                return Err(ChainError::Document(format!(
                    "degree {}: dim {} but {} labels",
                    lo + k as i64,
                    d,
                    l.len()
                )));
            }
        }
        if doc.boundaries.len() as i64 != len - 1 {
            return Err(ChainError::Document(format!(
                "expected {} boundary maps, got {}",
                len - 1,
                doc.boundaries.len()
            )));
        }
        let mut boundaries = Vec::new();
        for (k, b) in doc.boundaries.iter().enumerate() {
            let n = lo + k as i64 + 1;
            if b.degree != n {
                return Err(ChainError::Document(format!(
                    "boundary {k} has degree {}, expected {n}",
                    b.degree
                )));
            }
            let mut triplets = Vec::with_capacity(b.entries.len());
            for Triplet(r, c, s) in &b.entries {
                if *r >= b.rows || *c >= b.cols {
                    return Err(ChainError::Document(format!(
                        "entry ({r}, {c}) outside D_{n} of shape {}x{}",
                        b.rows, b.cols
                    )));
                }
                triplets.push((*r, *c, Scalar::parse(doc.variant, s)?));
            }
            boundaries.push(SparseMatrix::from_triplets(b.rows, b.cols, triplets));
        }
        ChainComplex::new(doc.variant, lo, doc.labels.clone(), boundaries)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("complex serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, ChainError> {
        let doc: ComplexDoc = serde_json::from_str(text).map_err(|e| ChainError::Document(e.to_string()))?;
        Self::from_doc(&doc)
    }
}
