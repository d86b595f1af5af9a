mod common;

use chainlab::qtorus::{check_resolution, hochschild_homology, identify_ll, l_kernel};
use chainlab::theta::{deformation, Deformation};

#[test]
fn formal_homology_is_one_two_one() {
    for n in [2, 5, 10] {
        let r = hochschild_homology(n, Deformation::Formal).unwrap();
        let dims: Vec<usize> = r.dims.values().copied().collect();
        assert_eq!(dims, vec![1, 2, 1]);
        assert_eq!(r.modes.len(), 1);
        assert_eq!((r.modes[0].m, r.modes[0].n), (0, 0));
    }
}

#[test]
fn classical_homology_fills_the_box() {
    for n in [1, 3] {
        let side = (2 * n + 1) as usize;
        let r = hochschild_homology(n, Deformation::Classical).unwrap();
        let dims: Vec<usize> = r.dims.values().copied().collect();
        assert_eq!(dims, vec![side * side, 2 * side * side, side * side]);
    }
}

#[test]
fn root_of_unity_modes_match_the_float_oracle() {
    for (text, theta) in [("1/3", 1.0 / 3.0), ("2/5", 0.4), ("1/4", 0.25)] {
        let r = hochschild_homology(6, deformation(text).unwrap()).unwrap();
        let mut expected = Vec::new();
        for m in -6..=6i64 {
            for n in -6..=6i64 {
                let dims = common::mode_homology_at_root(theta, m, n);
                if dims.iter().any(|&d| d > 0) {
                    expected.push((m, n, dims));
                }
            }
        }
        let got: Vec<(i64, i64, [usize; 3])> = r.modes.iter().map(|c| (c.m, c.n, c.dims)).collect();
        assert_eq!(got, expected, "θ = {text}");
    }
}

#[test]
fn l_kernel_at_roots() {
    assert_eq!(l_kernel(5, deformation("1/3").unwrap()), vec![-3, 0, 3]);
    assert_eq!(l_kernel(5, Deformation::Formal), vec![0]);
    assert_eq!(l_kernel(2, Deformation::Classical), vec![-2, -1, 0, 1, 2]);
}

#[test]
fn identification_matches_entrywise() {
    for (text, n) in [("formal", 3), ("1/5", 3), ("0", 2), ("2/7", 2)] {
        let r = identify_ll(n, deformation(text).unwrap(), true).unwrap();
        assert!(r.matrix_match, "θ = {text}");
        assert_eq!(r.homology_commutator, r.homology_tensor);
    }
}

#[test]
fn resolution_is_exact_inside() {
    for d in [Deformation::Formal, Deformation::Classical, deformation("1/3").unwrap()] {
        let r = check_resolution(3, d).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.inner_homology.values().all(|&c| c == 0));
        assert!(r.augmentation_onto);
    }
    let small = check_resolution(1, Deformation::Formal).unwrap();
    assert_eq!(small.status, "window too small");
}
