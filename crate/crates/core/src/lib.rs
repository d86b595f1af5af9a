//! Exact chain-complex workbench.

pub mod chain;
pub mod cli;
pub mod groupalg;
pub mod growth;
pub mod linalg;
pub mod qtorus;
pub mod scalar;
pub mod theta;
