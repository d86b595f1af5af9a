//! The length-one complex `(K𝔽_r ⊗ K𝔽_r)^r → K𝔽_r ⊗ K𝔽_r → K𝔽_r` with
//!
//! ```text
//! δ(x ⊗ y in copy j) = x ⊗ y - x s_j⁻¹ ⊗ s_j y,     μ(x ⊗ y) = xy
//! ```
//!
//! Both maps preserve the product `g = xy`, so the complex is a direct sum
//! of pieces indexed by `g`. Inside a piece a pair is determined by `x`, and
//! `δ` is the incidence map of the Cayley tree restricted to a convex set.

use std::collections::{BTreeMap, HashMap};

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use super::{alphabet, ball, ball_size, GroupAlgError, Word};
use crate::chain::ChainComplex;
use crate::linalg::{rank_exact, SparseMatrix, SparseVec};
use crate::scalar::{Scalar, Variant};

/// Pieces with more products than this skip the rim count.
const RIM_PRODUCT_LIMIT: usize = 200_000;

/// `{x : |x| ≤ l, |x⁻¹g| ≤ l}` in shortlex order.
///
/// Writes `x = p·w` with `p` the longest common prefix of `x` and `g`, so
/// `|x| = |p| + |w|` and `|x⁻¹g| = |w| + |g| - |p|`.
fn piece_vertices(rank: u32, g: &Word, l: usize) -> Vec<Word> {
    let gl = g.letters();
    let mut out = Vec::new();
    for k in 0..=gl.len() {
        let budget = (l as i64 - k as i64).min(l as i64 - gl.len() as i64 + k as i64);
        if budget < 0 {
            continue;
        }
        let mut forbidden = Vec::new();
        if let Some(&next) = gl.get(k) {
            forbidden.push(next);
        }
        if k > 0 {
            forbidden.push(-gl[k - 1]);
        }
        let mut stack = vec![gl[..k].to_vec()];
        while let Some(x) = stack.pop() {
            let depth = x.len() - k;
            if depth < budget as usize {
                for a in alphabet(rank) {
                    let ok = if depth == 0 {
                        !forbidden.contains(&a)
                    } else {
                        x.last() != Some(&-a)
                    };
                    if ok {
                        let mut y = x.clone();
                        y.push(a);
                        stack.push(y);
                    }
                }
            }
            out.push(Word(x));
        }
    }
    out.sort();
    out
}

/// One product-`g` piece: vertices at radius `l_target`, edges at `l_source`.
struct Piece {
    vertices: Vec<Word>,
    index: HashMap<Word, usize>,
    /// `(copy j, x)`.
    edges: Vec<(u32, Word)>,
}

impl Piece {
    fn new(rank: u32, g: &Word, l_source: usize) -> Self {
        let vertices = piece_vertices(rank, g, l_source + 1);
        let index = vertices.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let sources = piece_vertices(rank, g, l_source);
        let edges = (1..=rank)
            .flat_map(|j| sources.iter().map(move |x| (j, x.clone())))
            .collect();
        Piece { vertices, index, edges }
    }

    fn delta_column(&self, (j, x): &(u32, Word), variant: Variant) -> SparseVec {
        let a = self.index[x];
        let b = self.index[&x.times_letter(-(*j as i32))];
        SparseVec::from_pairs([(a, Scalar::one(variant)), (b, -&Scalar::one(variant))])
    }

    fn delta(&self, variant: Variant) -> SparseMatrix {
        SparseMatrix::from_columns(
            self.vertices.len(),
            self.edges.iter().map(|e| self.delta_column(e, variant)).collect(),
        )
    }
}

fn pair_label(x: &Word, g: &Word) -> String {
    format!("{x}⊗{}", x.inverse().mul(g))
}

/// The product-`g` summand of the pair complex, degrees -1, 0, 1: sources
/// with both factors of length `≤ radius`, pairs of length `≤ radius + 1`,
/// and the single word `g`.
pub fn pair_piece(rank: u32, radius: usize, g: &Word, variant: Variant) -> ChainComplex {
    let piece = Piece::new(rank, g, radius);
    let mu = SparseMatrix::from_columns(1, vec![SparseVec::unit(0, variant); piece.vertices.len()]);
    let labels = vec![
        vec![g.to_string()],
        piece.vertices.iter().map(|x| pair_label(x, g)).collect(),
        piece
            .edges
            .iter()
            .map(|(j, x)| format!("[{j}]{}", pair_label(x, g)))
            .collect(),
    ];
    ChainComplex::new(variant, -1, labels, vec![mu, piece.delta(variant)]).expect("shapes agree by construction")
}

/// The whole augmented complex on balls: sources `B_R × B_R` in `r` copies,
/// pairs `B_{R+1} × B_{R+1}`, words `B_{2R+2}`. Sizes grow like `(2r-1)^{2R}`;
/// meant for small radii and cross-checks.
pub fn fr_pair_complex(rank: u32, radius: usize, variant: Variant) -> ChainComplex {
    let src = ball(rank, radius);
    let tgt = ball(rank, radius + 1);
    let words = ball(rank, 2 * radius + 2);
    let word_index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let tgt_index: HashMap<&Word, usize> = tgt.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let nt = tgt.len();
    let pair = |x: &Word, y: &Word| tgt_index[x] * nt + tgt_index[y];

    let mut mu_cols = Vec::with_capacity(nt * nt);
    let mut pair_labels = Vec::with_capacity(nt * nt);
    for x in &tgt {
        for y in &tgt {
            mu_cols.push(SparseVec::unit(word_index[&x.mul(y)], variant));
            pair_labels.push(format!("{x}⊗{y}"));
        }
    }
    let mut delta_cols = Vec::new();
    let mut src_labels = Vec::new();
    for j in 1..=rank as i32 {
        for x in &src {
            for y in &src {
                let x2 = x.times_letter(-j);
                let y2 = Word::letter(j).mul(y);
                delta_cols.push(SparseVec::from_pairs([
                    (pair(x, y), Scalar::one(variant)),
                    (pair(&x2, &y2), -&Scalar::one(variant)),
                ]));
                src_labels.push(format!("[{j}]{x}⊗{y}"));
            }
        }
    }
    let labels = vec![words.iter().map(Word::to_string).collect(), pair_labels, src_labels];
    let mu = SparseMatrix::from_columns(words.len(), mu_cols);
    let delta = SparseMatrix::from_columns(nt * nt, delta_cols);
    ChainComplex::new(variant, -1, labels, vec![mu, delta]).expect("shapes agree by construction")
}

/// Exactness verdict for the pair complex on balls.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub rank: u32,
    pub radius: usize,
    pub inner_radius: usize,
    pub status: String,
    pub products_checked: usize,
    /// `μ ∘ δ = 0` on every piece.
    pub composites_vanish: bool,
    /// `δ` has zero kernel on all sources of radius `R`.
    pub injective: bool,
    /// Classes supported in the inner range that are not hit, per degree.
    pub inner_classes: BTreeMap<String, usize>,
    /// The same count at radius `R`; omitted when there are too many products.
    pub rim_classes: Option<BTreeMap<String, usize>>,
}

impl ExactnessReport {
    pub fn passed(&self) -> bool {
        self.status == "ok"
    }
}

#[derive(Default)]
struct PieceCounts {
    kernel_full: usize,
    deg1: usize,
    deg0: usize,
    deg_minus1: usize,
    composite_ok: bool,
}

/// Unhit classes of the product-`g` piece supported on pairs of radius `rho`.
///
/// Degree 0 uses `dim(E_S ∩ im B) = rank B - rank(B restricted to rows
/// outside S)`, so no kernel is ever formed.
fn count_piece(rank_r: u32, radius: usize, rho: usize, g: &Word, variant: Variant) -> PieceCounts {
    let piece = Piece::new(rank_r, g, radius);
    let b = piece.delta(variant);
    let composite_ok = b
        .columns()
        .iter()
        .all(|c| c.iter().fold(Scalar::zero(variant), |acc, (_, s)| &acc + s).is_zero());
    let rank_b = rank_exact(&b, variant);

    let inner: Vec<Word> = piece_vertices(rank_r, g, rho);
    let inner_set: std::collections::HashSet<usize> = inner.iter().map(|x| piece.index[x]).collect();
    let outside = SparseMatrix::from_columns(
        piece.vertices.len(),
        b.columns()
            .iter()
            .map(|c| c.reindex(|i| (!inner_set.contains(&i)).then_some(i)))
            .collect(),
    );
    let inner_edges: Vec<usize> = piece
        .edges
        .iter()
        .enumerate()
        .filter(|(_, (_, x))| x.len() <= rho && x.inverse().mul(g).len() <= rho)
        .map(|(i, _)| i)
        .collect();
    let b_inner = b.select_columns(&inner_edges);
    let s = inner.len();
    PieceCounts {
        kernel_full: b.ncols() - rank_b,
        deg1: inner_edges.len() - rank_exact(&b_inner, variant),
        deg0: (s.saturating_sub(1) + rank_exact(&outside, variant)) - rank_b,
        deg_minus1: usize::from(s == 0),
        composite_ok,
    }
}

fn tally(rank_r: u32, radius: usize, rho: usize, variant: Variant) -> (usize, BTreeMap<String, usize>, bool, bool) {
    let products = ball(rank_r, 2 * rho);
    let counts: Vec<PieceCounts> = products
        .par_iter()
        .map(|g| count_piece(rank_r, radius, rho, g, variant))
        .collect();
    let sum = |f: fn(&PieceCounts) -> usize| counts.iter().map(f).sum::<usize>();
    let mut classes = BTreeMap::new();
    classes.insert("1".to_string(), sum(|c| c.deg1));
    classes.insert("0".to_string(), sum(|c| c.deg0));
    classes.insert("-1".to_string(), sum(|c| c.deg_minus1));
    let injective = sum(|c| c.kernel_full) == 0;
    let composites = counts.iter().all(|c| c.composite_ok);
    (products.len(), classes, injective, composites)
}

/// Checks the pair complex on balls: sources of radius `R`, targets `R + 1`,
/// verdict on pairs with both factors of length `≤ R - 2`. Every product
/// `g` with `|g| ≤ 2(R - 2)` is examined.
pub fn fr_exactness_report(rank_r: u32, radius: usize, variant: Variant) -> Result<ExactnessReport, GroupAlgError> {
    if variant == Variant::Float {
        return Err(GroupAlgError::FloatNotSupported);
    }
    if radius < 2 {
        return Err(GroupAlgError::WindowTooSmall { radius, min: 2 });
    }
    let rho = radius - 2;
    let (products_checked, inner_classes, injective, composites_vanish) = tally(rank_r, radius, rho, variant);
    let rim_classes =
        (ball_size(rank_r, 2 * radius) <= RIM_PRODUCT_LIMIT).then(|| tally(rank_r, radius, radius, variant).1);
    let exact = inner_classes.values().all(|&c| c == 0);
    Ok(ExactnessReport {
        rank: rank_r,
        radius,
        inner_radius: rho,
        status: if exact && injective && composites_vanish {
            "ok".into()
        } else {
            "failed".into()
        },
        products_checked,
        composites_vanish,
        injective,
        inner_classes,
        rim_classes,
    })
}

/// `H_*(𝔽_r; K)` from the free resolution `K𝔽_r^r → K𝔽_r → K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupHomology {
    pub rank: u32,
    pub radius: usize,
    #[serde(rename = "H")]
    pub dims: BTreeMap<String, usize>,
    /// Dimensions agree for every radius `1..=R`.
    pub stable: bool,
}

/// The resolution truncated to `B_R`-sources and `B_{R+1}`-targets,
/// `δ(x e_j) = x - x s_j⁻¹`, with `K ⊗_{K𝔽_r} -` applied: every word maps to 1.
fn coinvariant_dims(rank_r: u32, radius: usize, variant: Variant) -> Result<[usize; 2], GroupAlgError> {
    let src = ball(rank_r, radius);
    let tgt = ball(rank_r, radius + 1);
    let index: HashMap<&Word, usize> = tgt.iter().enumerate().map(|(i, w)| (w, i)).collect();
    // Source generators e_j sit at x = e in copy j; their images under the
    // coinvariant map are the coefficient sums of δ(e_j).
    let cols: Vec<SparseVec> = (1..=rank_r as i32)
        .map(|j| {
            let x = &src[0];
            let image = SparseVec::from_pairs([
                (index[x], Scalar::one(variant)),
                (index[&x.times_letter(-j)], -&Scalar::one(variant)),
            ]);
            let total = image.iter().fold(Scalar::zero(variant), |a, (_, s)| &a + s);
            SparseVec::from_pairs([(0, total)])
        })
        .collect();
    let d = SparseMatrix::from_columns(1, cols);
    let c = ChainComplex::from_boundaries(variant, 0, &[1, rank_r as usize], vec![d])?;
    Ok([c.homology_dim(0)?, c.homology_dim(1)?])
}

/// Group homology of `𝔽_r` in degrees 0 and 1 with coefficients in the field.
pub fn fr_group_homology(rank_r: u32, radius: usize, variant: Variant) -> Result<GroupHomology, GroupAlgError> {
    if variant == Variant::Float {
        return Err(GroupAlgError::FloatNotSupported);
    }
    let all: Vec<[usize; 2]> = (1..=radius.max(1))
        .map(|r| coinvariant_dims(rank_r, r, variant))
        .collect::<Result<_, _>>()?;
    let last = *all.last().expect("at least one radius");
    Ok(GroupHomology {
        rank: rank_r,
        radius,
        dims: BTreeMap::from([("0".to_string(), last[0]), ("1".to_string(), last[1])]),
        stable: all.iter().all(|d| *d == last),
    })
}

/// One row of the conditioning experiment.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularValueRow {
    pub radius: usize,
    pub rows: usize,
    pub cols: usize,
    pub smallest_singular_value: f64,
    pub label: &'static str,
}

/// Evidence only: smallest singular value of `δ` on the product-`e` piece,
/// in the weighted `ℓ²` norms `(|x|+1)^k (|y|+1)^k` on both sides, for
/// growing radii. Nothing here is asserted; the rows are data for a reader.
pub fn singular_value_experiment(rank_r: u32, max_radius: usize, k: i32) -> Vec<SingularValueRow> {
    let e = Word::identity();
    (1..=max_radius)
        .map(|radius| {
            let piece = Piece::new(rank_r, &e, radius);
            let weight = |x: &Word| {
                let y = x.inverse();
                ((x.len() + 1) as f64 * (y.len() + 1) as f64).powi(k)
            };
            let mut m = DMatrix::<f64>::zeros(piece.vertices.len(), piece.edges.len());
            for (c, (j, x)) in piece.edges.iter().enumerate() {
                let w_src = weight(x);
                let x2 = x.times_letter(-(*j as i32));
                m[(piece.index[x], c)] += weight(x) / w_src;
                m[(piece.index[&x2], c)] -= weight(&x2) / w_src;
            }
            let sv = m.singular_values();
            SingularValueRow {
                radius,
                rows: piece.vertices.len(),
                cols: piece.edges.len(),
                smallest_singular_value: sv.iter().cloned().fold(f64::INFINITY, f64::min),
                label: "evidence only",
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Variant = Variant::Rational;

    #[test]
    fn piece_vertices_match_filter() {
        for (r, g, l) in [(2, "s1.s2", 3), (1, "s1^3", 2), (3, "e", 2), (2, "s1.s2^-1.s1", 2)] {
            let g: Word = g.parse().unwrap();
            let fast = piece_vertices(r, &g, l);
            let slow: Vec<Word> = ball(r, l)
                .into_iter()
                .filter(|x| x.inverse().mul(&g).len() <= l)
                .collect();
            assert_eq!(fast, slow, "g={g} l={l}");
        }
    }

    #[test]
    fn delta_on_unit_pair() {
        let c = fr_pair_complex(2, 1, Q);
        let col = c.labels(1).iter().position(|l| l == "[1]e⊗e").unwrap();
        let hit: Vec<&str> = c
            .boundary(1)
            .col(col)
            .iter()
            .map(|(i, _)| c.labels(0)[*i].as_str())
            .collect();
        assert!(hit.contains(&"e⊗e") && hit.contains(&"s1^-1⊗s1"));
        assert!(c.verify().passed());
    }

    #[test]
    fn rank_one_telescope() {
        let c = fr_pair_complex(1, 2, Q);
        let col = c.labels(1).iter().position(|l| l == "[1]s1.s1⊗s1^-1").unwrap();
        let target = c.labels(0).iter().position(|l| l == "s1⊗e").unwrap();
        assert_eq!(c.boundary(1).get(target, col), Some(&-&Scalar::one(Q)));
    }

    #[test]
    fn pieces_sum_to_whole() {
        let whole = fr_pair_complex(2, 1, Q);
        let products = ball(2, 2);
        let dim1: usize = products.iter().map(|g| pair_piece(2, 1, g, Q).dim(1)).sum();
        assert_eq!(dim1, whole.dim(1));
    }

    #[test]
    fn small_window_refused() {
        assert!(matches!(
            fr_exactness_report(2, 1, Q),
            Err(GroupAlgError::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn exact_on_inner_range() {
        for r in 1..=2 {
            let rep = fr_exactness_report(r, 3, Q).unwrap();
            assert!(rep.passed(), "{rep:?}");
            assert_eq!(rep.rim_classes.unwrap().values().sum::<usize>(), 0);
        }
    }

    #[test]
    fn homology_of_free_groups() {
        for r in 1..=3 {
            let h = fr_group_homology(r, 3, Q).unwrap();
            assert_eq!(h.dims["0"], 1);
            assert_eq!(h.dims["1"], r as usize);
            assert!(h.stable);
        }
    }
}
