//! Weight functions on ℤ², the straight-line combing, and the compatibility
//! inequality `w(f_j(g)) w(f_j(g)⁻¹h) ≤ w̄(g) w̄(g⁻¹h)`.

use chainlab::groupalg::Group;
use chainlab::growth::{
    check_combing_compatibility, combing_straightline, is_submultiplicative, Weight, WeightCombination,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path: Vec<Vec<i64>> = (0..=7).map(|j| combing_straightline(&[4, -3], j)).collect();
    println!("combing path to (4,-3): {path:?}");

    let z2 = Group::Lattice { dim: 2 };
    for w in [Weight::polynomial(2), Weight::exponential(&[1, -2])] {
        let r = is_submultiplicative(&w, z2, 6)?;
        println!(
            "{}: submultiplicative {} (equality everywhere: {})",
            r.weight, r.passed, r.equality_everywhere
        );
    }

    let hom = vec![(
        Weight::exponential(&[1, 1]),
        WeightCombination::single(Weight::exponential(&[1, 1])),
    )];
    let poly = vec![(Weight::polynomial(1), WeightCombination::single(Weight::polynomial(2)))];
    let wrong = vec![(Weight::polynomial(1), WeightCombination::single(Weight::polynomial(1)))];
    for (name, pairs) in [
        ("homomorphism", hom),
        ("(l+1) vs (l+1)^2", poly),
        ("(l+1) vs itself", wrong),
    ] {
        let r = check_combing_compatibility(2, &pairs, 6, 12)?;
        print!("{name}: passed {} after {} checks", r.passed, r.checks);
        match r.witness {
            Some(w) => println!(", witness g={:?} h={:?} j={}: {} > {}", w.g, w.h, w.j, w.lhs, w.rhs),
            None => println!(" (equality everywhere: {})", r.equality_everywhere),
        }
    }
    Ok(())
}
