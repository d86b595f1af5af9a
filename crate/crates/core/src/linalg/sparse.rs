use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::scalar::{Scalar, Variant};

/// A sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// Builds from unsorted pairs, summing duplicates and dropping zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut map: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, s) in pairs {
            match map.get_mut(&i) {
                Some(acc) => *acc = &*acc + &s,
                None => {
                    map.insert(i, s);
                }
            }
        }
        SparseVec {
            entries: map.into_iter().filter(|(_, s)| !s.is_zero()).collect(),
        }
    }

    /// Builds from pairs already sorted by index with no duplicates or zeros.
    pub(crate) fn from_sorted(entries: Vec<(usize, Scalar)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, s)| !s.is_zero()));
        SparseVec { entries }
    }

    pub fn unit(i: usize, variant: Variant) -> Self {
        SparseVec {
            entries: vec![(i, Scalar::one(variant))],
        }
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Scalar)> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&i, |e| e.0)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Scalar)> {
        self.entries.iter()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|e| e.0)
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, s)| (*i, s * c))
                .filter(|(_, s)| !s.is_zero())
                .collect(),
        }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, s)| (*i, -s)).collect(),
        }
    }

    /// `self + c * other`, by merging.
    pub fn axpy(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let v = x + &(c * y);
                        if !v.is_zero() {
                            out.push((*i, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec, variant: Variant) -> SparseVec {
        self.axpy(&Scalar::one(variant), other)
    }

    pub fn sub(&self, other: &SparseVec, variant: Variant) -> SparseVec {
        self.axpy(&Scalar::from_integer(variant, -1), other)
    }

    /// Re-indexes entries through `map`; indices mapped to `None` are dropped.
    pub fn reindex(&self, map: impl Fn(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_pairs(self.entries.iter().filter_map(|(i, s)| map(*i).map(|j| (j, s.clone()))))
    }

    /// Keeps indices in `[lo, hi)`, shifted down by `lo`.
    pub fn slice(&self, lo: usize, hi: usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| *i >= lo && *i < hi)
                .map(|(i, s)| (i - lo, s.clone()))
                .collect(),
        }
    }

    pub fn offset(&self, by: usize) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, s)| (i + by, s.clone())).collect(),
        }
    }
}

/// A sparse matrix stored by columns.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    nrows: usize,
    cols: Vec<SparseVec>,
}

/// One stored entry in serialized form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triplet(pub usize, pub usize, pub String);

impl SparseMatrix {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            cols: vec![SparseVec::new(); ncols],
        }
    }

    pub fn identity(n: usize, variant: Variant) -> Self {
        SparseMatrix {
            nrows: n,
            cols: (0..n).map(|i| SparseVec::unit(i, variant)).collect(),
        }
    }

    pub fn from_columns(nrows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.max_index().is_none_or(|m| m < nrows)));
        SparseMatrix { nrows, cols }
    }

    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Self {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); ncols];
        for (r, c, s) in triplets {
            assert!(r < nrows && c < ncols, "triplet ({r},{c}) outside {nrows}x{ncols}");
            buckets[c].push((r, s));
        }
        SparseMatrix {
            nrows,
            cols: buckets.into_iter().map(SparseVec::from_pairs).collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.cols.len())
    }

    pub fn col(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&Scalar> {
        self.cols[c].get(r)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SparseVec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_empty)
    }

    /// Iterates stored entries as (row, col, value) in column-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, v)| v.iter().map(move |(r, s)| (*r, c, s)))
    }

    /// First stored entry in column-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, Scalar)> {
        self.triplets().next().map(|(r, c, s)| (r, c, s.clone()))
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (j, x) in v.iter() {
            for (i, a) in self.cols[*j].iter() {
                let t = a * x;
                match acc.get_mut(i) {
                    Some(e) => *e = &*e + &t,
                    None => {
                        acc.insert(*i, t);
                    }
                }
            }
        }
        SparseVec::from_sorted(acc.into_iter().filter(|(_, s)| !s.is_zero()).collect())
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(
            self.ncols(),
            rhs.nrows,
            "product of {}x{} and {}x{}",
            self.nrows,
            self.ncols(),
            rhs.nrows,
            rhs.ncols()
        );
        SparseMatrix {
            nrows: self.nrows,
            cols: rhs.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, rhs: &SparseMatrix, variant: Variant) -> SparseMatrix {
        assert_eq!(self.shape(), rhs.shape());
        SparseMatrix {
            nrows: self.nrows,
            cols: self
                .cols
                .iter()
                .zip(&rhs.cols)
                .map(|(a, b)| a.add(b, variant))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &SparseMatrix, variant: Variant) -> SparseMatrix {
        assert_eq!(self.shape(), rhs.shape());
        SparseMatrix {
            nrows: self.nrows,
            cols: self
                .cols
                .iter()
                .zip(&rhs.cols)
                .map(|(a, b)| a.sub(b, variant))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> SparseMatrix {
        SparseMatrix {
            nrows: self.nrows,
            cols: self.cols.iter().map(|v| v.scale(c)).collect(),
        }
    }

    pub fn neg(&self) -> SparseMatrix {
        SparseMatrix {
            nrows: self.nrows,
            cols: self.cols.iter().map(SparseVec::neg).collect(),
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix::from_triplets(
            self.ncols(),
            self.nrows,
            self.triplets().map(|(r, c, s)| (c, r, s.clone())),
        )
    }

    /// Submatrix on the given column indices (rows unchanged).
    pub fn select_columns(&self, cols: &[usize]) -> SparseMatrix {
        SparseMatrix {
            nrows: self.nrows,
            cols: cols.iter().map(|&j| self.cols[j].clone()).collect(),
        }
    }

    /// Places `blocks[i][j]` at block position (i, j); `None` blocks are zero.
    /// Row heights and column widths are given explicitly so empty blocks are sized.
    pub fn block(row_dims: &[usize], col_dims: &[usize], blocks: &[Vec<Option<&SparseMatrix>>]) -> SparseMatrix {
        let nrows: usize = row_dims.iter().sum();
        let mut cols = Vec::with_capacity(col_dims.iter().sum());
        for (bj, &w) in col_dims.iter().enumerate() {
            for j in 0..w {
                let mut pairs = Vec::new();
                let mut row_off = 0;
                for (bi, &h) in row_dims.iter().enumerate() {
                    if let Some(m) = blocks[bi][bj] {
                        assert_eq!(m.shape(), (h, w), "block ({bi},{bj}) has wrong shape");
                        pairs.extend(m.cols[j].iter().map(|(r, s)| (r + row_off, s.clone())));
                    }
                    row_off += h;
                }
                cols.push(SparseVec::from_sorted(pairs));
            }
        }
        SparseMatrix { nrows, cols }
    }

    /// Kronecker product `self ⊗ rhs` with index (i, k) ↦ i * rhs.nrows + k.
    pub fn kron(&self, rhs: &SparseMatrix) -> SparseMatrix {
        let mut cols = Vec::with_capacity(self.ncols() * rhs.ncols());
        for a in &self.cols {
            for b in &rhs.cols {
                let mut pairs = Vec::with_capacity(a.len() * b.len());
                for (i, x) in a.iter() {
                    for (k, y) in b.iter() {
                        pairs.push((i * rhs.nrows + k, x * y));
                    }
                }
                cols.push(SparseVec::from_sorted(pairs));
            }
        }
        SparseMatrix {
            nrows: self.nrows * rhs.nrows,
            cols,
        }
    }

    pub fn to_triplets(&self) -> Vec<Triplet> {
        self.triplets().map(|(r, c, s)| Triplet(r, c, s.to_string())).collect()
    }

    /// True if every stored entry lies in the given coefficient world.
    pub fn entries_in(&self, variant: Variant) -> bool {
        self.triplets().all(|(_, _, s)| s.variant() == variant)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Scalar {
        Scalar::from_integer(Variant::Rational, n)
    }

    #[test]
    fn axpy_cancels_to_empty() {
        let v = SparseVec::from_pairs([(0, int(1)), (3, int(2))]);
        let w = v.axpy(&int(-1), &v);
        assert!(w.is_empty());
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseMatrix::from_triplets(2, 2, [(0, 0, int(1)), (0, 1, int(1)), (1, 1, int(1))]);
        let sq = a.mul(&a);
        assert_eq!(sq.get(0, 1), Some(&int(2)));
        assert_eq!(a.transpose().get(1, 0), Some(&int(1)));
        assert_eq!(a.transpose().get(0, 1), None);
    }

    #[test]
    fn kron_dimensions() {
        let a = SparseMatrix::identity(2, Variant::Rational);
        let b = SparseMatrix::from_triplets(3, 1, [(2, 0, int(5))]);
        let k = a.kron(&b);
        assert_eq!(k.shape(), (6, 2));
        assert_eq!(k.get(5, 1), Some(&int(5)));
    }
}
