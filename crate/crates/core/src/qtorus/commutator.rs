//! The commutator-quotient complex `P → P² → P`, the two-term complex `L`,
//! the identification of the former with `L ⊗ L`, and Hochschild homology.
//!
//! On `U^m V^n` the maps are scalar:
//!
//! ```text
//! δ2(x)      = (x - VxV⁻¹, UxU⁻¹ - x)      → (1 - q^{-m}, q^n - 1)
//! δ1(x1, x2) = x1 - Ux1U⁻¹ + x2 - Vx2V⁻¹   → (1 - q^n) x1 + (1 - q^{-m}) x2
//! ```

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{box_modes, mode_label, Mode, QTorusError};
use crate::chain::{tensor_complex, ChainComplex};
use crate::linalg::SparseMatrix;
use crate::scalar::{Scalar, Variant};
use crate::theta::Deformation;

fn one_minus_q(d: Deformation, k: i64) -> Scalar {
    &Scalar::one(d.variant()) - &d.q_pow(k)
}

/// `δ2` coefficients `(copy 1, copy 2)` on `U^m V^n`.
fn delta2(d: Deformation, (m, n): Mode) -> (Scalar, Scalar) {
    (one_minus_q(d, -m), -&one_minus_q(d, n))
}

/// `δ1` coefficients on `(U^m V^n in copy 1, U^m V^n in copy 2)`.
fn delta1(d: Deformation, (m, n): Mode) -> (Scalar, Scalar) {
    (one_minus_q(d, n), one_minus_q(d, -m))
}

/// The three-term complex on the monomials of the radius-`N` box, degrees
/// 0, 1, 2. Degree 1 lists copy 1 then copy 2, each in box order.
pub fn commutator_complex(radius: i64, d: Deformation) -> ChainComplex {
    let modes: Vec<Mode> = box_modes(radius).collect();
    let k = modes.len();
    let d1 = SparseMatrix::from_triplets(
        k,
        2 * k,
        modes.iter().enumerate().flat_map(|(i, &mode)| {
            let (a, b) = delta1(d, mode);
            [(i, i, a), (i, k + i, b)]
        }),
    );
    let d2 = SparseMatrix::from_triplets(
        2 * k,
        k,
        modes.iter().enumerate().flat_map(|(i, &mode)| {
            let (a, b) = delta2(d, mode);
            [(i, i, a), (k + i, i, b)]
        }),
    );
    let labels = vec![
        modes.iter().map(|m| mode_label(*m)).collect(),
        [1, 2]
            .iter()
            .flat_map(|c| modes.iter().map(move |m| format!("[{c}]{}", mode_label(*m))))
            .collect(),
        modes.iter().map(|m| mode_label(*m)).collect(),
    ];
    ChainComplex::new(d.variant(), 0, labels, vec![d1, d2]).expect("shapes agree by construction")
}

/// The commutator complex restricted to one mode: `K → K² → K`.
pub fn mode_complex(mode: Mode, d: Deformation) -> ChainComplex {
    let (a1, b1) = delta1(d, mode);
    let (a2, b2) = delta2(d, mode);
    let d1 = SparseMatrix::from_triplets(1, 2, [(0, 0, a1), (0, 1, b1)]);
    let d2 = SparseMatrix::from_triplets(2, 1, [(0, 0, a2), (1, 0, b2)]);
    ChainComplex::from_boundaries(d.variant(), 0, &[1, 2, 1], vec![d1, d2]).expect("shapes agree by construction")
}

/// `L : K^{2M+1} → K^{2M+1}`, `α δ_m = (1 - q^m) δ_m`, in degrees 0 and 1.
pub fn l_complex(radius: i64, d: Deformation) -> ChainComplex {
    let idx: Vec<i64> = (-radius..=radius).collect();
    let alpha = SparseMatrix::from_triplets(
        idx.len(),
        idx.len(),
        idx.iter().enumerate().map(|(i, &m)| (i, i, one_minus_q(d, m))),
    );
    let labels: Vec<String> = idx.iter().map(|m| format!("δ[{m}]")).collect();
    ChainComplex::new(d.variant(), 0, vec![labels.clone(), labels], vec![alpha]).expect("shapes agree by construction")
}

/// Indices `m` with `α δ_m = 0`, i.e. `q^m = 1`.
pub fn l_kernel(radius: i64, d: Deformation) -> Vec<i64> {
    (-radius..=radius).filter(|&m| one_minus_q(d, m).is_zero()).collect()
}

/// Homology of a single mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModeContribution {
    pub m: i64,
    pub n: i64,
    pub dims: [usize; 3],
}

/// Hochschild homology of the polynomial quantum torus on a box.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HochschildReport {
    pub theta: String,
    #[serde(rename = "box")]
    pub radius: i64,
    /// `degree → dimension`.
    #[serde(rename = "H")]
    pub dims: BTreeMap<String, usize>,
    /// Modes with nonzero homology, in box order.
    pub modes: Vec<ModeContribution>,
}

/// Homology of the commutator complex, computed mode by mode. The boundary
/// maps never mix modes, so the answer is exact for every mode in the box.
pub fn hochschild_homology(radius: i64, d: Deformation) -> Result<HochschildReport, QTorusError> {
    let modes: Vec<Mode> = box_modes(radius).collect();
    let per_mode: Vec<ModeContribution> = modes
        .par_iter()
        .map(|&mode| {
            let c = mode_complex(mode, d);
            let h = c.homology_dims()?;
            Ok(ModeContribution {
                m: mode.0,
                n: mode.1,
                dims: [h[0].1, h[1].1, h[2].1],
            })
        })
        .collect::<Result<_, QTorusError>>()?;
    let mut dims = BTreeMap::new();
    for k in 0..3 {
        dims.insert(k.to_string(), per_mode.iter().map(|c| c.dims[k]).sum());
    }
    Ok(HochschildReport {
        theta: d.describe(),
        radius,
        dims,
        modes: per_mode.into_iter().filter(|c| c.dims.iter().any(|&x| x > 0)).collect(),
    })
}

/// One matched basis pair of the identification.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Correspondence {
    pub commutator: String,
    pub tensor: String,
    pub unit: String,
}

/// The explicit isomorphism between the commutator complex and `L ⊗ L`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LLIdentification {
    pub theta: String,
    #[serde(rename = "box")]
    pub radius: i64,
    pub dims: [usize; 3],
    /// Per degree 0, 1, 2: commutator basis vector ↦ unit · tensor basis vector.
    pub bijection: Vec<Vec<Correspondence>>,
    /// `Φ ∘ δ^C = δ^{L⊗L} ∘ Φ` holds entry by entry.
    pub matrix_match: bool,
    pub homology_commutator: Option<[usize; 3]>,
    pub homology_tensor: Option<[usize; 3]>,
}

/// Builds `L ⊗ L` (both factors of radius `N`) and the map
///
/// ```text
/// U^m V^n        ↦            δ_n ⊗ δ_m
/// [1] U^m V^n    ↦            δ_n ⊗ δ_m   (first factor in degree 1)
/// [2] U^m V^n    ↦  -q^{-m} · δ_n ⊗ δ_m   (second factor in degree 1)
/// U^m V^n (deg 2) ↦  q^{-m} · δ_n ⊗ δ_m   (both in degree 1)
/// ```
///
/// then checks that it intertwines the boundaries exactly. With
/// `with_homology`, both sides' homology is computed as well.
pub fn identify_ll(radius: i64, d: Deformation, with_homology: bool) -> Result<LLIdentification, QTorusError> {
    let variant = d.variant();
    let comm = commutator_complex(radius, d);
    let l = l_complex(radius, d);
    let ll = tensor_complex(&l, &l)?;
    let modes: Vec<Mode> = box_modes(radius).collect();
    let k = modes.len();
    let w = (2 * radius + 1) as usize;
    let pos = |a: i64| (a + radius) as usize;
    // L⊗L block layout (see tensor_complex): degree 0 = L0⊗L0; degree 1 =
    // L0⊗L1 then L1⊗L0; degree 2 = L1⊗L1; inside a block e_a⊗e_b sits at a·w+b.
    let tensor_index = |first: i64, second: i64| pos(first) * w + pos(second);
    let mut phis = Vec::new();
    let mut bijection = Vec::new();
    for degree in 0..3i64 {
        let mut triplets = Vec::new();
        let mut corr = Vec::new();
        for (i, &(m, n)) in modes.iter().enumerate() {
            let base = tensor_index(n, m);
            let entries: Vec<(usize, usize, Scalar)> = match degree {
                0 => vec![(base, i, Scalar::one(variant))],
                1 => vec![
                    // copy 1 → L1⊗L0 block (offset k), copy 2 → L0⊗L1 block (offset 0)
                    (k + base, i, Scalar::one(variant)),
                    (base, k + i, -&d.q_pow(-m)),
                ],
                _ => vec![(base, i, d.q_pow(-m))],
            };
            for (row, col, unit) in &entries {
                corr.push(Correspondence {
                    commutator: comm.labels(degree)[*col].clone(),
                    tensor: ll.labels(degree)[*row].clone(),
                    unit: unit.to_string(),
                });
            }
            triplets.extend(entries);
        }
        corr.sort_by_key(|c| comm.labels(degree).iter().position(|l| *l == c.commutator));
        bijection.push(corr);
        phis.push(SparseMatrix::from_triplets(ll.dim(degree), comm.dim(degree), triplets));
    }
    for degree in 1..3i64 {
        let left = phis[(degree - 1) as usize].mul(&comm.boundary(degree));
        let right = ll.boundary(degree).mul(&phis[degree as usize]);
        if left != right {
            let (row, col) = first_difference(&left, &right, variant);
            let show = |m: &SparseMatrix| m.get(row, col).map(Scalar::to_string).unwrap_or_else(|| "0".into());
            return Err(QTorusError::IdentificationFailed {
                degree,
                row,
                col,
                expected: show(&left),
                found: show(&right),
            });
        }
    }
    let hdims = |c: &ChainComplex| -> Result<[usize; 3], QTorusError> {
        let h = c.homology_dims()?;
        Ok([h[0].1, h[1].1, h[2].1])
    };
    let (hc, ht) = if with_homology {
        (Some(hdims(&comm)?), Some(hdims(&ll)?))
    } else {
        (None, None)
    };
    Ok(LLIdentification {
        theta: d.describe(),
        radius,
        dims: [comm.dim(0), comm.dim(1), comm.dim(2)],
        bijection,
        matrix_match: true,
        homology_commutator: hc,
        homology_tensor: ht,
    })
}

fn first_difference(a: &SparseMatrix, b: &SparseMatrix, variant: Variant) -> (usize, usize) {
    (0..a.ncols())
        .find_map(|c| {
            let diff = a.col(c).sub(b.col(c), variant);
            diff.entries().first().map(|(r, _)| (*r, c))
        })
        .expect("matrices differ")
}

#[cfg(test)]
mod tests {
    use super::*;

    const F: Deformation = Deformation::Formal;

    #[test]
    fn mode_zero_is_central() {
        let c = mode_complex((0, 0), F);
        assert!(c.boundary(1).is_zero() && c.boundary(2).is_zero());
    }

    #[test]
    fn mode_one_zero_delta2() {
        let (a, b) = delta2(F, (1, 0));
        assert_eq!(a, one_minus_q(F, -1));
        assert!(b.is_zero());
    }

    #[test]
    fn classical_boundaries_vanish() {
        let c = commutator_complex(2, Deformation::Classical);
        assert!(c.boundary(1).is_zero() && c.boundary(2).is_zero());
        let h = hochschild_homology(2, Deformation::Classical).unwrap();
        assert_eq!(h.dims["0"], 25);
        assert_eq!(h.dims["1"], 50);
        assert_eq!(h.dims["2"], 25);
    }

    #[test]
    fn formal_hochschild() {
        let h = hochschild_homology(4, F).unwrap();
        assert_eq!(h.dims.values().copied().collect::<Vec<_>>(), vec![1, 2, 1]);
        assert_eq!(
            h.modes,
            vec![ModeContribution {
                m: 0,
                n: 0,
                dims: [1, 2, 1]
            }]
        );
        assert!(commutator_complex(3, F).verify().passed());
    }

    #[test]
    fn l_complex_kernels() {
        let l = l_complex(3, F);
        assert!(l.boundary(1).col(3).is_empty());
        assert_eq!(l_kernel(7, F), vec![0]);
        let z3 = Deformation::RootOfUnity { order: 3, power: 1 };
        assert_eq!(l_kernel(5, z3), vec![-3, 0, 3]);
    }

    #[test]
    fn identification_small_boxes() {
        for d in [
            F,
            Deformation::Classical,
            Deformation::RootOfUnity { order: 5, power: 1 },
        ] {
            let id = identify_ll(2, d, true).unwrap();
            assert!(id.matrix_match);
            assert_eq!(id.dims, [25, 50, 25]);
            assert_eq!(id.homology_commutator, id.homology_tensor);
        }
    }
}
