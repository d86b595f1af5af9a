//! Hochschild homology of the polynomial quantum torus on a box, for a few
//! values of θ.
//!
//!     cargo run --release --example hochschild -- 8

use chainlab::qtorus::hochschild_homology;
use chainlab::theta::deformation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let radius: i64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(6);
    for theta in ["formal", "0", "1/3", "2/5"] {
        let r = hochschild_homology(radius, deformation(theta)?)?;
        let dims: Vec<String> = r.dims.iter().map(|(k, v)| format!("H_{k}={v}")).collect();
        println!(
            "θ = {theta:<6} box {radius}: {}  ({} modes)",
            dims.join(" "),
            r.modes.len()
        );
    }
    let formal = hochschild_homology(radius, deformation("formal")?)?;
    println!(
        "formal q: the only contributing mode is ({}, {})",
        formal.modes[0].m, formal.modes[0].n
    );
    Ok(())
}
