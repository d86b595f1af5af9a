//! Finite chain complexes of free modules over a [`Scalar`] field.
//!
//! Grading is homological: `D_n : C_n → C_{n-1}`. A complex lives on an
//! explicit degree window `[lo, hi]`; every degree outside it is zero.

mod json;
mod maps;
mod ops;
pub mod random;

use std::borrow::Cow;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{self, SparseMatrix, SparseVec};
use crate::scalar::{ScalarError, Variant};

pub use json::ComplexDoc;
pub use maps::{check_homotopy, contracting_homotopy, ChainMap, Homotopy};
pub use ops::{cone, direct_sum, hom_complex, is_quasi_iso, shift, tensor_complex, truncate, Side};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChainError {
    #[error("shape mismatch in degree {degree}: {detail}")]
    ShapeMismatch { degree: i64, detail: String },
    #[error("coefficient variants differ: {left} vs {right}")]
    VariantMismatch { left: Variant, right: Variant },
    #[error("homology needs exact coefficients, got float")]
    FloatNotSupported,
    #[error("malformed complex document: {0}")]
    Document(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A bounded complex `C_hi → … → C_lo` with labelled bases.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex {
    variant: Variant,
    lo: i64,
    labels: Vec<Vec<String>>,
    /// `boundaries[k]` is `D_{lo+k+1}`.
    boundaries: Vec<SparseMatrix>,
}

/// Outcome of [`ChainComplex::verify`].
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum VerifyReport {
    Pass,
    /// `(D_degree · D_{degree+1})[row, col] = value ≠ 0`.
    Fail {
        degree: i64,
        row: usize,
        col: usize,
        value: String,
    },
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        matches!(self, VerifyReport::Pass)
    }
}

/// Homology in one degree: its dimension and cycle representatives of a basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Homology {
    pub degree: i64,
    pub dim: usize,
    pub basis: Vec<SparseVec>,
}

impl ChainComplex {
    /// Builds a complex from per-degree labels (degrees `lo, lo+1, …`) and the
    /// boundaries `D_{lo+1}, …, D_hi`. Shapes and coefficient variants are
    /// checked; `D∘D = 0` is not (see [`ChainComplex::verify`]).
    pub fn new(
        variant: Variant,
        lo: i64,
        labels: Vec<Vec<String>>,
        boundaries: Vec<SparseMatrix>,
    ) -> Result<Self, ChainError> {
        if labels.is_empty() {
            return Err(ChainError::ShapeMismatch {
                degree: lo,
                detail: "empty degree window".into(),
            });
        }
        if boundaries.len() + 1 != labels.len() {
            return Err(ChainError::ShapeMismatch {
                degree: lo,
                detail: format!(
                    "{} degrees need {} boundary maps, got {}",
                    labels.len(),
                    labels.len() - 1,
                    boundaries.len()
                ),
            });
        }
        for (k, d) in boundaries.iter().enumerate() {
            let n = lo + k as i64 + 1;
            let expected = (labels[k].len(), labels[k + 1].len());
            if d.shape() != expected {
                return Err(ChainError::ShapeMismatch {
                    degree: n,
                    detail: format!("D_{n} is {:?}, dims give {:?}", d.shape(), expected),
                });
            }
            if let Some((_, _, s)) = d.triplets().find(|(_, _, s)| s.variant() != variant) {
                return Err(ChainError::VariantMismatch {
                    left: variant,
                    right: s.variant(),
                });
            }
        }
        Ok(ChainComplex {
            variant,
            lo,
            labels,
            boundaries,
        })
    }

    /// Complex with the given dimensions and zero boundaries; labels are
    /// `e{degree}_{index}`.
    pub fn with_zero_boundaries(variant: Variant, lo: i64, dims: &[usize]) -> Self {
        let labels = default_labels(lo, dims);
        let boundaries = dims.windows(2).map(|w| SparseMatrix::zero(w[0], w[1])).collect();
        ChainComplex {
            variant,
            lo,
            labels,
            boundaries,
        }
    }

    /// The complex with nothing in it.
    pub fn zero(variant: Variant) -> Self {
        Self::with_zero_boundaries(variant, 0, &[0])
    }

    /// Builds from dimensions and boundaries with default labels.
    pub fn from_boundaries(
        variant: Variant,
        lo: i64,
        dims: &[usize],
        boundaries: Vec<SparseMatrix>,
    ) -> Result<Self, ChainError> {
        Self::new(variant, lo, default_labels(lo, dims), boundaries)
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.labels.len() as i64 - 1
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi())
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn in_window(&self, n: i64) -> bool {
        n >= self.lo && n <= self.hi()
    }

    pub fn dim(&self, n: i64) -> usize {
        if self.in_window(n) {
            self.labels[(n - self.lo) as usize].len()
        } else {
            0
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.labels.iter().map(Vec::len).sum()
    }

    pub fn labels(&self, n: i64) -> &[String] {
        if self.in_window(n) {
            &self.labels[(n - self.lo) as usize]
        } else {
            &[]
        }
    }

    /// `D_n : C_n → C_{n-1}`, a zero matrix outside the stored range.
    pub fn boundary(&self, n: i64) -> Cow<'_, SparseMatrix> {
        if n > self.lo && n <= self.hi() {
            Cow::Borrowed(&self.boundaries[(n - self.lo - 1) as usize])
        } else {
            Cow::Owned(SparseMatrix::zero(self.dim(n - 1), self.dim(n)))
        }
    }

    /// Checks `D_n ∘ D_{n+1} = 0` in every degree and reports the first
    /// nonzero entry of a composite.
    pub fn verify(&self) -> VerifyReport {
        for n in self.lo + 1..self.hi() {
            let prod = self.boundary(n).mul(&self.boundary(n + 1));
            if let Some((row, col, value)) = prod.first_nonzero() {
                return VerifyReport::Fail {
                    degree: n,
                    row,
                    col,
                    value: value.to_string(),
                };
            }
        }
        VerifyReport::Pass
    }

    fn require_exact(&self) -> Result<(), ChainError> {
        if self.variant.is_exact() {
            Ok(())
        } else {
            Err(ChainError::FloatNotSupported)
        }
    }

    /// `H_n` with representatives in `C_n` coordinates.
    pub fn homology(&self, n: i64) -> Result<Homology, ChainError> {
        self.require_exact()?;
        let basis = linalg::homology_basis(&self.boundary(n + 1), &self.boundary(n), self.variant);
        Ok(Homology {
            degree: n,
            dim: basis.len(),
            basis,
        })
    }

    /// `dim H_n`, by ranks only.
    pub fn homology_dim(&self, n: i64) -> Result<usize, ChainError> {
        self.require_exact()?;
        Ok(linalg::homology_dim(
            self.dim(n),
            &self.boundary(n + 1),
            &self.boundary(n),
            self.variant,
        ))
    }

    /// `(degree, dim H_degree)` over the window, degrees computed in parallel.
    pub fn homology_dims(&self) -> Result<Vec<(i64, usize)>, ChainError> {
        self.require_exact()?;
        self.degrees()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|n| self.homology_dim(n).map(|d| (n, d)))
            .collect()
    }

    /// `Σ (-1)^n dim C_n`.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|n| {
                let d = self.dim(n) as i64;
                if n.rem_euclid(2) == 0 {
                    d
                } else {
                    -d
                }
            })
            .sum()
    }

    /// True if all homology vanishes.
    pub fn is_acyclic(&self) -> Result<bool, ChainError> {
        Ok(self.homology_dims()?.iter().all(|(_, d)| *d == 0))
    }

    /// The same complex on a wider window, padded with zero terms.
    pub fn widen(&self, lo: i64, hi: i64) -> ChainComplex {
        assert!(lo <= self.lo && hi >= self.hi(), "widen must contain the window");
        let labels = (lo..=hi).map(|n| self.labels(n).to_vec()).collect();
        let boundaries = (lo + 1..=hi).map(|n| self.boundary(n).into_owned()).collect();
        ChainComplex {
            variant: self.variant,
            lo,
            labels,
            boundaries,
        }
    }

    pub(crate) fn into_parts(self) -> (Variant, i64, Vec<Vec<String>>, Vec<SparseMatrix>) {
        (self.variant, self.lo, self.labels, self.boundaries)
    }
}

fn default_labels(lo: i64, dims: &[usize]) -> Vec<Vec<String>> {
    dims.iter()
        .enumerate()
        .map(|(k, &d)| (0..d).map(|i| format!("e{}_{}", lo + k as i64, i)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn one() -> Scalar {
        Scalar::one(Variant::Rational)
    }

    #[test]
    fn zero_complex_verifies() {
        let z = ChainComplex::zero(Variant::Rational);
        assert!(z.verify().passed());
        assert_eq!(z.homology_dims().unwrap(), vec![(0, 0)]);
    }

    #[test]
    fn identity_twice_fails_at_the_composite() {
        let id = SparseMatrix::identity(1, Variant::Rational);
        let c = ChainComplex::from_boundaries(Variant::Rational, 0, &[1, 1, 1], vec![id.clone(), id]).unwrap();
        assert_eq!(
            c.verify(),
            VerifyReport::Fail {
                degree: 1,
                row: 0,
                col: 0,
                value: "1".into()
            }
        );
    }

    #[test]
    fn shape_errors_are_reported() {
        let bad = SparseMatrix::zero(2, 1);
        let e = ChainComplex::from_boundaries(Variant::Rational, 0, &[1, 1], vec![bad]).unwrap_err();
        assert!(matches!(e, ChainError::ShapeMismatch { degree: 1, .. }));
    }

    #[test]
    fn zero_boundaries_give_full_homology() {
        let c = ChainComplex::with_zero_boundaries(Variant::Rational, -1, &[2, 3, 1]);
        assert_eq!(c.homology_dims().unwrap(), vec![(-1, 2), (0, 3), (1, 1)]);
    }

    #[test]
    fn acyclic_two_term() {
        let d = SparseMatrix::from_triplets(1, 1, [(0, 0, one())]);
        let c = ChainComplex::from_boundaries(Variant::Rational, 0, &[1, 1], vec![d]).unwrap();
        assert!(c.is_acyclic().unwrap());
    }

    #[test]
    fn float_homology_is_refused() {
        let c = ChainComplex::with_zero_boundaries(Variant::Float, 0, &[1]);
        assert_eq!(c.homology(0).unwrap_err(), ChainError::FloatNotSupported);
    }
}
