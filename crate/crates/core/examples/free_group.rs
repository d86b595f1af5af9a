//! The pair complex `ℚ[𝔽_r]^r ⊗ … → ℚ[𝔽_r × 𝔽_r] → ℚ[𝔽_r]` on balls: exactness,
//! group homology, the symmetrizer, and a conditioning table.
//!
//!     cargo run --release --example free_group -- 3 4

use chainlab::groupalg::{
    ball_size, convolve_pairs, fr_exactness_report, fr_group_homology, singular_value_experiment, symmetrizer_u,
    Direction, Group, GroupElement, PairFunction,
};
use chainlab::scalar::{Scalar, Variant};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let rank: u32 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2);
    let radius: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(4);
    let v = Variant::Rational;

    println!("F{rank}: |B_{radius}| = {}", ball_size(rank, radius));
    let r = fr_exactness_report(rank, radius, v)?;
    println!(
        "pair complex: {} on the inner range ρ = {} ({} products, inner classes {:?}, rim {:?})",
        r.status, r.inner_radius, r.products_checked, r.inner_classes, r.rim_classes
    );
    let h = fr_group_homology(rank, radius, v)?;
    println!("H_*(F{rank}; ℚ) = {:?}", h.dims);

    let g = Group::Free { rank: rank.max(2) };
    let a = GroupElement::Free("s1.s2".parse()?);
    let b = GroupElement::Free("s2^-1.s1".parse()?);
    let phi = PairFunction::new(g, v, [((a, b), Scalar::one(v))]);
    let u = symmetrizer_u(&phi, Direction::Forward);
    for (x, y) in u.values.keys() {
        println!("U δ(s1.s2, s2^-1.s1) = δ({x}, {y})");
    }
    println!("μ(Uφ) = Σ_h φ(·, h): {}", convolve_pairs(&u) == phi.integrate_second());

    println!("smallest singular values of δ on the e-piece, weight ((|x|+1)(|y|+1))^1 (evidence only):");
    for row in singular_value_experiment(rank, radius.min(4), 1) {
        println!(
            "  radius {}: {}×{}  σ_min = {:.5}",
            row.radius, row.rows, row.cols, row.smallest_singular_value
        );
    }
    Ok(())
}
