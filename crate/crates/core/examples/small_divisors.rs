//! Continued fractions of θ and the growth of `|1 - e^{2πiθm}|⁻¹`, with the
//! series written as CSV.
//!
//!     cargo run --release --example small_divisors -- cf:0,1 100000 divisors.csv

use chainlab::growth::{continued_fraction, small_divisor_growth, small_divisor_series, write_csv};
use chainlab::theta::ThetaSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let theta: ThetaSpec = args.next().as_deref().unwrap_or("cf:0,1").parse()?;
    let range: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(100_000);

    let cf = continued_fraction(&theta, 12)?;
    let conv: Vec<String> = cf.convergents.iter().map(|(p, q)| format!("{p}/{q}")).collect();
    println!("θ = {theta}: convergents {}", conv.join(", "));

    let v = small_divisor_growth(&theta, range)?;
    println!("class {} ({} mode), flags {:?}", v.class, v.mode, v.flags);
    if let Some(fit) = &v.fit {
        println!(
            "fitted exponent {:.4}, rms {:.2e}, over m ≥ {}",
            fit.slope, fit.residual, fit.from
        );
    }
    println!(
        "running-maximum jumps: {:?}",
        v.records.iter().map(|r| r.0).collect::<Vec<_>>()
    );
    println!("{}", v.note);

    for other in ["cf:0,2,4,16,256,65536,4294967296", "1/2"] {
        let v = small_divisor_growth(&other.parse()?, range)?;
        println!("θ = {other}: {} {:?}", v.class, v.flags);
    }

    if let Some(path) = args.next() {
        let series = small_divisor_series(&theta, range)?;
        let rows = series
            .iter()
            .enumerate()
            .map(|(i, g)| vec![(i + 1).to_string(), g.to_string()]);
        write_csv(std::fs::File::create(&path)?, &["m", "g"], rows)?;
        println!("wrote {path}");
    }
    Ok(())
}
