//! The Koszul resolution of the quantum torus as a bimodule, truncated to a
//! box, and its exactness check.

use chainlab::qtorus::{b2_image, check_resolution, koszul_resolution, KoszulGen};
use chainlab::theta::Deformation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k = koszul_resolution(2, Deformation::Formal);
    println!("K_2, K_1, K_0 on the radius-2 box: dims {:?}", k.complex.dims());

    let top = KoszulGen {
        copy: 0,
        left: (0, 0),
        right: (0, 0),
    };
    println!("b2({}) =", top.label());
    for (g, c) in b2_image(top, Deformation::Formal) {
        println!("  {c} · {}", g.label());
    }

    for d in [Deformation::Formal, Deformation::Classical] {
        let r = check_resolution(4, d)?;
        println!(
            "θ = {}: {} on inner radius {:?} ({} bidegrees), inner classes {:?}, augmentation onto: {}",
            r.theta, r.status, r.inner_radius, r.bidegrees_checked, r.inner_homology, r.augmentation_onto
        );
    }
    Ok(())
}
