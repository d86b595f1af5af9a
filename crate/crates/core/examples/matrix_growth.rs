//! Which weighted ℓ₁ algebra of ℤⁿ a matrix representation is a bounded
//! module over, read off from the growth of `‖A^n‖`.

use chainlab::growth::{matrix_rep_growth, parse_matrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases: &[&[&str]] = &[
        &["[[1,1],[0,1]]"],
        &["[[1,0],[0,1]]"],
        &["[[1,1,0],[0,1,1],[0,0,1]]"],
        &[r#"[[2,0],[0,"1/2"]]"#],
        &["[[1,1],[0,1]]", "[[1,3],[0,1]]"],
    ];
    for gens in cases {
        let matrices = gens.iter().map(|g| parse_matrix(g)).collect::<Result<Vec<_>, _>>()?;
        let r = matrix_rep_growth(&matrices, 10_000)?;
        println!(
            "{:<40} exponent {:>7.4}  class {:<14} {}",
            gens.join(" "),
            r.exponent,
            r.class.to_string(),
            r.verdict
        );
    }
    Ok(())
}
