//! Exact sparse linear algebra over a [`Scalar`] field.
//!
//! Everything here is built on [`Echelon`], an incrementally grown basis of
//! a subspace kept in triangular form with respect to insertion order: the
//! `i`-th stored vector vanishes at the pivots of all earlier vectors.
//! Reduction walks the stored vectors in insertion order, so one pass clears
//! every pivot.

mod modular;
mod sparse;

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

pub use sparse::{SparseMatrix, SparseVec, Triplet};

use crate::scalar::{Scalar, Variant};

/// Relative size below which a float entry is treated as zero.
const FLOAT_EPS: f64 = 1e-10;

#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    vec: SparseVec,
    /// Expression of `vec` as a combination of the inserted inputs.
    combo: Option<SparseVec>,
}

/// Incremental row-echelon basis of a subspace of `K^dim`.
#[derive(Clone, Debug)]
pub struct Echelon {
    variant: Variant,
    rows: Vec<Row>,
    by_pivot: HashMap<usize, usize>,
    track: bool,
    inserted: usize,
}

/// Result of reducing a vector against an [`Echelon`].
#[derive(Clone, Debug)]
pub struct Reduction {
    /// What is left after clearing all pivots; zero iff the vector was in the span.
    pub remainder: SparseVec,
    /// Coefficients `c` with `v = remainder + Σ c_i row_i`, indexed by row.
    pub coeffs: Vec<(usize, Scalar)>,
}

impl Echelon {
    pub fn new(variant: Variant) -> Self {
        Echelon {
            variant,
            rows: Vec::new(),
            by_pivot: HashMap::new(),
            track: false,
            inserted: 0,
        }
    }

    /// An echelon that remembers how each stored vector arose from the inputs,
    /// which is what kernels and solves need.
    pub fn tracking(variant: Variant) -> Self {
        Echelon {
            track: true,
            ..Self::new(variant)
        }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.pivot)
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.by_pivot.contains_key(&i)
    }

    fn chop(&self, v: SparseVec) -> SparseVec {
        if self.variant != Variant::Float {
            return v;
        }
        let scale = v
            .iter()
            .filter_map(|(_, s)| s.as_complex())
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if scale == 0.0 {
            return v;
        }
        SparseVec::from_sorted(
            v.into_entries()
                .into_iter()
                .filter(|(_, s)| s.as_complex().unwrap().norm() > FLOAT_EPS * scale.max(1.0))
                .collect(),
        )
    }

    /// Clears every pivot of `v`.
    pub fn reduce(&self, v: &SparseVec) -> Reduction {
        let mut cur = v.clone();
        let mut coeffs = Vec::new();
        let mut heap: BinaryHeap<Reverse<usize>> = cur
            .iter()
            .filter_map(|(i, _)| self.by_pivot.get(i).copied())
            .map(Reverse)
            .collect();
        let mut last = None;
        while let Some(Reverse(k)) = heap.pop() {
            if last == Some(k) {
                continue;
            }
            last = Some(k);
            let row = &self.rows[k];
            let Some(c) = cur.get(row.pivot).cloned() else {
                continue;
            };
            cur = self.chop(cur.axpy(&-&c, &row.vec));
            for (i, _) in row.vec.iter() {
                if let Some(&j) = self.by_pivot.get(i) {
                    if j > k {
                        heap.push(Reverse(j));
                    }
                }
            }
            coeffs.push((k, c));
        }
        Reduction { remainder: cur, coeffs }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).remainder.is_empty()
    }

    fn choose_pivot(&self, v: &SparseVec) -> (usize, Scalar) {
        if self.variant == Variant::Float {
            let (i, s) = v
                .iter()
                .max_by(|a, b| {
                    let (x, y) = (a.1.as_complex().unwrap().norm(), b.1.as_complex().unwrap().norm());
                    x.partial_cmp(&y).unwrap().then(a.0.cmp(&b.0))
                })
                .expect("nonzero vector");
            return (*i, s.clone());
        }
        let (i, s) = v
            .iter()
            .min_by(|a, b| a.1.cost().cmp(&b.1.cost()).then(b.0.cmp(&a.0)))
            .expect("nonzero vector");
        (*i, s.clone())
    }

    fn combo_of(&self, red: &Reduction, start: SparseVec) -> SparseVec {
        let mut combo = start;
        for (k, c) in &red.coeffs {
            let rc = self.rows[*k].combo.as_ref().expect("tracking echelon");
            combo = combo.axpy(&-c, rc);
        }
        combo
    }

    /// Inserts `v`. Returns `Ok(pivot)` if it enlarged the span; otherwise
    /// `Err(relation)`, where the relation is a combination of inserted
    /// inputs equal to zero (empty unless tracking).
    pub fn insert(&mut self, v: &SparseVec) -> Result<usize, SparseVec> {
        let id = self.inserted;
        self.inserted += 1;
        let red = self.reduce(v);
        let combo = self
            .track
            .then(|| self.combo_of(&red, SparseVec::unit(id, self.variant)));
        if red.remainder.is_empty() {
            return Err(combo.unwrap_or_default());
        }
        let (pivot, lead) = self.choose_pivot(&red.remainder);
        let inv = lead.inv().expect("pivot is nonzero");
        let vec = red.remainder.scale(&inv);
        let combo = combo.map(|c| c.scale(&inv));
        self.by_pivot.insert(pivot, self.rows.len());
        self.rows.push(Row { pivot, vec, combo });
        Ok(pivot)
    }

    /// Writes `v` as a combination of inserted inputs, if it lies in the span.
    pub fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        assert!(self.track, "express needs a tracking echelon");
        let red = self.reduce(v);
        if !red.remainder.is_empty() {
            return None;
        }
        let mut out = SparseVec::new();
        for (k, c) in &red.coeffs {
            out = out.axpy(c, self.rows[*k].combo.as_ref().unwrap());
        }
        Some(out)
    }

    /// Stored basis vectors (pivot entry equal to one).
    pub fn basis(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.iter().map(|r| &r.vec)
    }
}

/// Rank of a matrix. For ℚ and ℚ(q) a reduction modulo a prime is tried
/// first; a full-rank answer there is already a proof (a nonvanishing minor
/// lifts), anything else is settled exactly.
pub fn rank(m: &SparseMatrix, variant: Variant) -> usize {
    let bound = m.nrows().min(m.ncols());
    if bound == 0 || m.is_zero() {
        return 0;
    }
    if let Some(r) = modular::rank_mod_p(m) {
        if r == bound {
            return r;
        }
    }
    rank_exact(m, variant)
}

/// Exact rank by elimination over the coefficient field.
pub fn rank_exact(m: &SparseMatrix, variant: Variant) -> usize {
    let mut e = Echelon::new(variant);
    for c in m.columns() {
        if e.rank() == m.nrows() {
            break;
        }
        let _ = e.insert(c);
    }
    e.rank()
}

/// A basis of the null space `{x : m x = 0}`.
pub fn kernel(m: &SparseMatrix, variant: Variant) -> Vec<SparseVec> {
    let mut e = Echelon::tracking(variant);
    let mut out = Vec::new();
    for c in m.columns() {
        if let Err(rel) = e.insert(c) {
            out.push(rel);
        }
    }
    out
}

/// Some `x` with `m x = b`, or `None` if `b` is not in the column space.
pub fn solve(m: &SparseMatrix, b: &SparseVec, variant: Variant) -> Option<SparseVec> {
    let mut e = Echelon::tracking(variant);
    for c in m.columns() {
        let _ = e.insert(c);
    }
    e.express(b)
}

/// Echelon basis of the column space.
pub fn column_space(m: &SparseMatrix, variant: Variant) -> Echelon {
    let mut e = Echelon::new(variant);
    for c in m.columns() {
        let _ = e.insert(c);
    }
    e
}

/// Indices `i < n` that are not pivots of `e`: coordinates spanning a
/// complement of the span of `e`.
pub fn complement_coordinates(e: &Echelon, n: usize) -> Vec<usize> {
    (0..n).filter(|i| !e.is_pivot(*i)).collect()
}

/// Homology at the middle of `C_{n+1} --incoming--> C_n --outgoing--> C_{n-1}`.
/// Returns representatives of a basis of `ker outgoing / im incoming`.
pub fn homology_basis(incoming: &SparseMatrix, outgoing: &SparseMatrix, variant: Variant) -> Vec<SparseVec> {
    let cycles = kernel(outgoing, variant);
    let mut e = column_space(incoming, variant);
    cycles.into_iter().filter(|z| e.insert(z).is_ok()).collect()
}

/// `dim ker outgoing - rank incoming` for a space of dimension `dim`.
pub fn homology_dim(dim: usize, incoming: &SparseMatrix, outgoing: &SparseMatrix, variant: Variant) -> usize {
    let r_out = rank(outgoing, variant);
    let r_in = rank(incoming, variant);
    assert!(
        r_out + r_in <= dim,
        "ranks {r_in} + {r_out} exceed dimension {dim}: not a complex"
    );
    dim - r_out - r_in
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::RatFunc;

    fn int(n: i64) -> Scalar {
        Scalar::from_integer(Variant::Rational, n)
    }

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        let nrows = rows.len();
        let ncols = rows[0].len();
        SparseMatrix::from_triplets(
            nrows,
            ncols,
            rows.iter().enumerate().flat_map(|(i, r)| {
                r.iter()
                    .enumerate()
                    .filter(|(_, x)| **x != 0)
                    .map(move |(j, x)| (i, j, int(*x)))
            }),
        )
    }

    #[test]
    fn rank_of_singular_matrix() {
        let m = dense(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(rank(&m, Variant::Rational), 2);
        assert_eq!(rank_exact(&m, Variant::Rational), 2);
        let k = kernel(&m, Variant::Rational);
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).is_empty());
    }

    #[test]
    fn solve_finds_preimage() {
        let m = dense(&[&[1, 1], &[0, 1], &[1, 0]]);
        let b = SparseVec::from_pairs([(0, int(3)), (1, int(2)), (2, int(1))]);
        let x = solve(&m, &b, Variant::Rational).unwrap();
        assert_eq!(m.apply(&x), b);
        let bad = SparseVec::from_pairs([(0, int(1))]);
        assert!(solve(&m, &bad, Variant::Rational).is_none());
    }

    #[test]
    fn ratfunc_rank_drops_only_generically() {
        // [[1, q], [q, q^2]] has rank 1 over Q(q)
        let q = Scalar::RatFunc(RatFunc::q());
        let one = Scalar::one(Variant::RatFunc);
        let m = SparseMatrix::from_triplets(
            2,
            2,
            [
                (0, 0, one.clone()),
                (1, 0, q.clone()),
                (0, 1, q.clone()),
                (1, 1, &q * &q),
            ],
        );
        assert_eq!(rank(&m, Variant::RatFunc), 1);
        let m2 = SparseMatrix::from_triplets(2, 2, [(0, 0, one.clone()), (1, 0, q.clone()), (0, 1, q), (1, 1, one)]);
        assert_eq!(rank(&m2, Variant::RatFunc), 2);
    }

    #[test]
    fn homology_of_zero_maps() {
        let z = SparseMatrix::zero(3, 0);
        let o = SparseMatrix::zero(0, 3);
        assert_eq!(homology_basis(&z, &o, Variant::Rational).len(), 3);
        assert_eq!(homology_dim(3, &z, &o, Variant::Rational), 3);
    }

    #[test]
    fn float_elimination_tolerates_roundoff() {
        let f = |x: f64| Scalar::Float(num_complex::Complex64::new(x, 0.0));
        let m = SparseMatrix::from_triplets(2, 2, [(0, 0, f(0.1)), (1, 0, f(0.2)), (0, 1, f(0.3)), (1, 1, f(0.6))]);
        assert_eq!(rank_exact(&m, Variant::Float), 1);
    }
}
