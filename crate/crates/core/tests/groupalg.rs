mod common;

use chainlab::groupalg::{
    ball, ball_size, fr_exactness_report, fr_group_homology, fr_pair_complex, pair_piece, symmetrizer_u, Direction,
    Group, GroupAlgError, GroupElement, PairFunction, Word,
};
use chainlab::scalar::{Scalar, Variant};

#[test]
fn group_homology_matches_the_bar_oracle() {
    for (rank, radius) in [(1u32, 3usize), (2, 3), (3, 2)] {
        let (h0, h1) = common::bar_homology_free(rank as i32, radius);
        let ours = fr_group_homology(rank, radius, Variant::Rational).unwrap();
        assert_eq!(ours.dims["0"], h0);
        assert_eq!(ours.dims["1"], h1);
        assert_eq!(h1, rank as usize);
        assert!(ours.stable);
    }
}

#[test]
fn ball_enumeration_agrees_with_the_oracle() {
    for (rank, radius) in [(1, 4), (2, 3), (3, 2)] {
        assert_eq!(ball(rank, radius).len(), common::free_ball(rank as i32, radius).len());
        assert_eq!(ball_size(rank, radius), common::free_ball(rank as i32, radius).len());
    }
}

#[test]
fn exactness_on_small_balls() {
    for rank in 1..=3 {
        let r = fr_exactness_report(rank, 3, Variant::Rational).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.injective && r.composites_vanish);
    }
    assert!(matches!(
        fr_exactness_report(2, 1, Variant::Rational),
        Err(GroupAlgError::WindowTooSmall { .. })
    ));
}

#[test]
fn pieces_assemble_the_full_complex() {
    let full = fr_pair_complex(2, 1, Variant::Rational);
    assert!(full.verify().passed());
    let e = pair_piece(2, 1, &Word::identity(), Variant::Rational);
    assert!(e.verify().passed());
    assert!(full.dim(0) >= e.dim(0));
}

#[test]
fn symmetrizer_directions_are_inverse() {
    let g = Group::Free { rank: 2 };
    let a = GroupElement::Free("s1.s2".parse().unwrap());
    let b = GroupElement::Free("s2^-1".parse().unwrap());
    let phi = PairFunction::new(
        g,
        Variant::Rational,
        [((a, b), Scalar::from_integer(Variant::Rational, 3))],
    );
    let there = symmetrizer_u(&phi, Direction::Forward);
    let back = symmetrizer_u(&there, Direction::Inverse);
    assert_eq!(back, phi);
}
