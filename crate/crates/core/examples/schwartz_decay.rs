//! Decay of sampled functions on ℤ² against the classes `𝒮`, `𝒮^ω`, `𝒪`.

use chainlab::groupalg::Group;
use chainlab::growth::{group_ball, schwartz_membership, SchwartzClass};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    type Radial = fn(u64) -> f64;
    let functions: [(&str, Radial); 4] = [
        ("2^-l", |l| 0.5f64.powi(l as i32)),
        ("(l+1)^-3", |l| ((l + 1) as f64).powi(-3)),
        ("exp(-l^2/8)", |l| (-((l * l) as f64) / 8.0).exp()),
        ("δ_e", |l| if l == 0 { 1.0 } else { 0.0 }),
    ];
    let ball = group_ball(Group::Lattice { dim: 2 }, 24);
    for (name, f) in functions {
        let samples: Vec<_> = ball.iter().map(|g| (g.clone(), f(g.length()))).collect();
        let verdicts: Vec<String> = [SchwartzClass::S, SchwartzClass::SOmega, SchwartzClass::O]
            .into_iter()
            .map(|c| {
                let v = schwartz_membership(&samples, c).map(|v| v.consistent);
                format!("{c}: {v:?}")
            })
            .collect();
        let decay = schwartz_membership(&samples, SchwartzClass::S)?.decay;
        println!("{name:<12} {:<30} {}", decay.to_string(), verdicts.join("  "));
    }
    Ok(())
}
