use std::borrow::Cow;
use std::sync::Arc;

use super::{ChainComplex, ChainError, VerifyReport};
use crate::linalg::{self, Echelon, SparseMatrix, SparseVec};
use crate::scalar::Variant;

/// A degree-preserving map `f : C → C'` given by `f_n : C_n → C'_n` for `n`
/// in the source window.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    source: Arc<ChainComplex>,
    target: Arc<ChainComplex>,
    maps: Vec<SparseMatrix>,
}

/// A degree-raising map `h_n : C_n → C'_{n+1}` for `n` in the source window.
#[derive(Clone, Debug, PartialEq)]
pub struct Homotopy {
    source: Arc<ChainComplex>,
    target: Arc<ChainComplex>,
    maps: Vec<SparseMatrix>,
}

fn check_pair(source: &ChainComplex, target: &ChainComplex) -> Result<Variant, ChainError> {
    if source.variant() != target.variant() {
        return Err(ChainError::VariantMismatch {
            left: source.variant(),
            right: target.variant(),
        });
    }
    Ok(source.variant())
}

fn check_components(
    source: &ChainComplex,
    target: &ChainComplex,
    maps: &[SparseMatrix],
    raise: i64,
) -> Result<(), ChainError> {
    let variant = check_pair(source, target)?;
    if maps.len() != source.dims().len() {
        return Err(ChainError::ShapeMismatch {
            degree: source.lo(),
            detail: format!("{} components for {} source degrees", maps.len(), source.dims().len()),
        });
    }
    for (n, m) in source.degrees().zip(maps) {
        let expected = (target.dim(n + raise), source.dim(n));
        if m.shape() != expected {
            return Err(ChainError::ShapeMismatch {
                degree: n,
                detail: format!("component is {:?}, expected {:?}", m.shape(), expected),
            });
        }
        if !m.entries_in(variant) {
            return Err(ChainError::VariantMismatch {
                left: variant,
                right: m.triplets().find(|t| t.2.variant() != variant).unwrap().2.variant(),
            });
        }
    }
    Ok(())
}

impl ChainMap {
    pub fn new(
        source: Arc<ChainComplex>,
        target: Arc<ChainComplex>,
        maps: Vec<SparseMatrix>,
    ) -> Result<Self, ChainError> {
        check_components(&source, &target, &maps, 0)?;
        Ok(ChainMap { source, target, maps })
    }

    pub fn identity(c: Arc<ChainComplex>) -> Self {
        let maps = c
            .degrees()
            .map(|n| SparseMatrix::identity(c.dim(n), c.variant()))
            .collect();
        ChainMap {
            source: c.clone(),
            target: c,
            maps,
        }
    }

    pub fn zero(source: Arc<ChainComplex>, target: Arc<ChainComplex>) -> Result<Self, ChainError> {
        check_pair(&source, &target)?;
        let maps = source
            .degrees()
            .map(|n| SparseMatrix::zero(target.dim(n), source.dim(n)))
            .collect();
        Ok(ChainMap { source, target, maps })
    }

    pub fn source(&self) -> &Arc<ChainComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ChainComplex> {
        &self.target
    }

    pub fn variant(&self) -> Variant {
        self.source.variant()
    }

    /// `f_n`, zero outside the source window.
    pub fn component(&self, n: i64) -> Cow<'_, SparseMatrix> {
        if self.source.in_window(n) {
            Cow::Borrowed(&self.maps[(n - self.source.lo()) as usize])
        } else {
            Cow::Owned(SparseMatrix::zero(self.target.dim(n), self.source.dim(n)))
        }
    }

    /// Checks `D' f_n = f_{n-1} D` in every degree where either side can be nonzero.
    pub fn verify(&self) -> VerifyReport {
        let (lo, hi) = self.source.window();
        for n in lo..=hi + 1 {
            let left = self.target.boundary(n).mul(&self.component(n));
            let right = self.component(n - 1).mul(&self.source.boundary(n));
            let diff = left.sub(&right, self.variant());
            if let Some((row, col, value)) = diff.first_nonzero() {
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

    /// `self - other`, for maps between the same complexes.
    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        assert!(
            self.source == other.source && self.target == other.target,
            "maps must share source and target"
        );
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            maps: self
                .maps
                .iter()
                .zip(&other.maps)
                .map(|(a, b)| a.sub(b, self.variant()))
                .collect(),
        }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ChainMap) -> ChainMap {
        assert!(*first.target == *self.source, "composable maps required");
        let maps = first
            .source
            .degrees()
            .map(|n| self.component(n).mul(&first.component(n)))
            .collect();
        ChainMap {
            source: first.source.clone(),
            target: self.target.clone(),
            maps,
        }
    }

    /// Whether `f` and `g` induce the same map `H_n(C) → H_n(C')`: every
    /// homology representative has `f(z) - g(z)` in the image of `D'_{n+1}`.
    pub fn same_on_homology(&self, other: &ChainMap) -> Result<bool, ChainError> {
        let variant = self.variant();
        for n in self.source.degrees() {
            let h = self.source.homology(n)?;
            let image = linalg::column_space(&self.target.boundary(n + 1), variant);
            let (f, g) = (self.component(n), other.component(n));
            for z in &h.basis {
                let diff = f.apply(z).sub(&g.apply(z), variant);
                if !image.contains(&diff) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl Homotopy {
    pub fn new(
        source: Arc<ChainComplex>,
        target: Arc<ChainComplex>,
        maps: Vec<SparseMatrix>,
    ) -> Result<Self, ChainError> {
        check_components(&source, &target, &maps, 1)?;
        Ok(Homotopy { source, target, maps })
    }

    pub fn zero(source: Arc<ChainComplex>, target: Arc<ChainComplex>) -> Result<Self, ChainError> {
        check_pair(&source, &target)?;
        let maps = source
            .degrees()
            .map(|n| SparseMatrix::zero(target.dim(n + 1), source.dim(n)))
            .collect();
        Ok(Homotopy { source, target, maps })
    }

    pub fn source(&self) -> &Arc<ChainComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ChainComplex> {
        &self.target
    }

    /// `h_n : C_n → C'_{n+1}`, zero outside the source window.
    pub fn component(&self, n: i64) -> Cow<'_, SparseMatrix> {
        if self.source.in_window(n) {
            Cow::Borrowed(&self.maps[(n - self.source.lo()) as usize])
        } else {
            Cow::Owned(SparseMatrix::zero(self.target.dim(n + 1), self.source.dim(n)))
        }
    }

    /// The chain map `D' h + h D`.
    pub fn null_homotopic_map(&self) -> ChainMap {
        let variant = self.source.variant();
        let maps = self
            .source
            .degrees()
            .map(|n| {
                let a = self.target.boundary(n + 1).mul(&self.component(n));
                let b = self.component(n - 1).mul(&self.source.boundary(n));
                a.add(&b, variant)
            })
            .collect();
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            maps,
        }
    }
}

/// True iff `f - g = D' h + h D` in every degree.
pub fn check_homotopy(f: &ChainMap, g: &ChainMap, h: &Homotopy) -> Result<bool, ChainError> {
    for (a, b) in [
        (&f.source, &g.source),
        (&f.target, &g.target),
        (&f.source, &h.source),
        (&f.target, &h.target),
    ] {
        if a.dims() != b.dims() || a.window() != b.window() {
            return Err(ChainError::ShapeMismatch {
                degree: a.lo(),
                detail: "maps and homotopy must share source and target".into(),
            });
        }
    }
    let variant = f.variant();
    let dh = h.null_homotopic_map();
    Ok(f.source.degrees().all(|n| {
        let diff = f.component(n).sub(&g.component(n), variant);
        diff == *dh.component(n)
    }))
}

/// A contracting homotopy `h` with `D h + h D = id`, or `None` if the
/// complex has homology. Built degree by degree from the bottom: column `i`
/// of `h_n` solves `D_{n+1} x = e_i - h_{n-1} D_n e_i`.
pub fn contracting_homotopy(c: &Arc<ChainComplex>) -> Result<Option<Homotopy>, ChainError> {
    if !c.variant().is_exact() {
        return Err(ChainError::FloatNotSupported);
    }
    let variant = c.variant();
    let mut maps: Vec<SparseMatrix> = Vec::new();
    for n in c.degrees() {
        let up = c.boundary(n + 1);
        let mut e = Echelon::tracking(variant);
        for col in up.columns() {
            let _ = e.insert(col);
        }
        let down = c.boundary(n);
        let prev = if n > c.lo() {
            Some(&maps[(n - c.lo() - 1) as usize])
        } else {
            None
        };
        let mut cols = Vec::with_capacity(c.dim(n));
        for i in 0..c.dim(n) {
            let mut rhs = SparseVec::unit(i, variant);
            if let Some(p) = prev {
                rhs = rhs.sub(&p.apply(&down.apply(&SparseVec::unit(i, variant))), variant);
            }
            match e.express(&rhs) {
                Some(x) => cols.push(x),
                None => return Ok(None),
            }
        }
        maps.push(SparseMatrix::from_columns(c.dim(n + 1), cols));
    }
    Ok(Some(Homotopy {
        source: c.clone(),
        target: c.clone(),
        maps,
    }))
}
