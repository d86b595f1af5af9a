//! Seeded random complexes with known homology, for property checks.

use rand::Rng;

use super::ChainComplex;
use crate::linalg::SparseMatrix;
use crate::scalar::{Scalar, Variant};

/// A random complex over ℚ together with the homology it was built to have.
#[derive(Clone, Debug)]
pub struct RandomComplex {
    pub complex: ChainComplex,
    pub homology: Vec<(i64, usize)>,
}

/// Builds a random complex with every `dim C_n ≤ max_dim` on a window of at
/// most `max_len` degrees.
///
/// The complex is a sum of copies of `ℚ` (homology) and of `ℚ --1--> ℚ`
/// (acyclic pairs), conjugated degreewise by random integer changes of basis,
/// so its homology is known without computing it.
pub fn random_complex<R: Rng>(rng: &mut R, max_dim: usize, max_len: usize) -> RandomComplex {
    assert!(max_dim >= 1 && max_len >= 1);
    let len = rng.gen_range(1..=max_len);
    let lo: i64 = rng.gen_range(-2..=2);
    // pairs[k] = number of acyclic pairs C_{lo+k} → C_{lo+k-1}
    let mut pairs = vec![0usize; len + 1];
    let mut hom = vec![0usize; len];
    for k in 0..len {
        let room = max_dim - pairs[k];
        if k + 1 < len {
            pairs[k + 1] = rng.gen_range(0..=room.min(max_dim));
        }
        hom[k] = rng.gen_range(0..=room - pairs[k + 1]);
    }
    let dims: Vec<usize> = (0..len).map(|k| hom[k] + pairs[k] + pairs[k + 1]).collect();
    let changes: Vec<(SparseMatrix, SparseMatrix)> = dims.iter().map(|&d| random_basis_change(rng, d)).collect();
    let variant = Variant::Rational;
    let boundaries = (1..len)
        .map(|k| {
            // standard form: the first pairs[k] "source" slots after the homology
            // block of C_k hit the trailing "target" slots of C_{k-1}
            let target_start = hom[k - 1] + pairs[k - 1];
            let source_start = hom[k];
            let e = SparseMatrix::from_triplets(
                dims[k - 1],
                dims[k],
                (0..pairs[k]).map(|i| (target_start + i, source_start + i, Scalar::one(variant))),
            );
            changes[k - 1].0.mul(&e).mul(&changes[k].1)
        })
        .collect();
    let complex = ChainComplex::from_boundaries(variant, lo, &dims, boundaries).expect("shapes agree by construction");
    let homology = (0..len).map(|k| (lo + k as i64, hom[k])).collect();
    RandomComplex { complex, homology }
}

/// A random invertible integer matrix and its inverse, as a product of
/// elementary row operations.
pub fn random_basis_change<R: Rng>(rng: &mut R, d: usize) -> (SparseMatrix, SparseMatrix) {
    let variant = Variant::Rational;
    let mut g = SparseMatrix::identity(d, variant);
    let mut g_inv = SparseMatrix::identity(d, variant);
    if d < 2 {
        if d == 1 && rng.gen_bool(0.5) {
            let m = SparseMatrix::from_triplets(1, 1, [(0, 0, Scalar::from_integer(variant, -1))]);
            return (m.clone(), m);
        }
        return (g, g_inv);
    }
    for _ in 0..2 * d {
        let i = rng.gen_range(0..d);
        let mut j = rng.gen_range(0..d - 1);
        if j >= i {
            j += 1;
        }
        let c: i64 = [-2, -1, 1, 2][rng.gen_range(0..4)];
        let op = elementary(d, i, j, c);
        let op_inv = elementary(d, i, j, -c);
        g = g.mul(&op);
        g_inv = op_inv.mul(&g_inv);
    }
    (g, g_inv)
}

fn elementary(d: usize, i: usize, j: usize, c: i64) -> SparseMatrix {
    let variant = Variant::Rational;
    SparseMatrix::from_triplets(
        d,
        d,
        (0..d)
            .map(|k| (k, k, Scalar::one(variant)))
            .chain(std::iter::once((i, j, Scalar::from_integer(variant, c)))),
    )
}

/// A random integer matrix with entries in `[-2, 2]`, about half of them zero.
pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> SparseMatrix {
    let mut t = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if rng.gen_bool(0.5) {
                let v: i64 = rng.gen_range(-2..=2);
                if v != 0 {
                    t.push((r, c, Scalar::from_integer(Variant::Rational, v)));
                }
            }
        }
    }
    SparseMatrix::from_triplets(rows, cols, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_complexes_have_the_advertised_homology() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let r = random_complex(&mut rng, 6, 5);
            assert!(r.complex.verify().passed());
            assert!(r.complex.dims().iter().all(|&d| d <= 6));
            assert_eq!(r.complex.homology_dims().unwrap(), r.homology);
        }
    }

    #[test]
    fn basis_change_inverts() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (g, gi) = random_basis_change(&mut rng, 5);
        assert_eq!(g.mul(&gi), SparseMatrix::identity(5, Variant::Rational));
    }
}
