//! Building complexes by hand and with the seeded generator, then taking
//! cones, tensor products and Hom complexes.

use std::sync::Arc;

use chainlab::chain::random::random_complex;
use chainlab::chain::{cone, hom_complex, tensor_complex, ChainComplex, ChainMap};
use chainlab::linalg::SparseMatrix;
use chainlab::scalar::{Scalar, Variant};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let v = Variant::Rational;
    // The cellular complex of a circle with one vertex and one edge.
    let circle = ChainComplex::from_boundaries(v, 0, &[1, 1], vec![SparseMatrix::zero(1, 1)])?;
    // An interval: two vertices, one edge.
    let d = SparseMatrix::from_triplets(2, 1, [(0, 0, Scalar::from_integer(v, -1)), (1, 0, Scalar::one(v))]);
    let interval = ChainComplex::from_boundaries(v, 0, &[2, 1], vec![d])?;

    println!("H(circle)   = {:?}", circle.homology_dims()?);
    println!("H(interval) = {:?}", interval.homology_dims()?);
    let torus = tensor_complex(&circle, &circle)?;
    println!("H(torus)    = {:?}", torus.homology_dims()?);
    let hom = hom_complex(&circle, &circle)?;
    println!("H(Hom(S¹, S¹)) = {:?}", hom.homology_dims()?);

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let r = random_complex(&mut rng, 5, 4);
    println!(
        "random complex dims {:?}, built to have H = {:?}",
        r.complex.dims(),
        r.homology
    );
    println!("computed H = {:?}", r.complex.homology_dims()?);
    let k = cone(&ChainMap::identity(Arc::new(r.complex.clone())));
    println!("cone(id) acyclic: {}", k.is_acyclic()?);

    let text = torus.to_json();
    let back = ChainComplex::from_json(&text)?;
    println!("JSON round trip exact: {}", back == torus);
    Ok(())
}
