//! Quantitative growth: weights and combings, decay classes, small divisors
//! `(1 - e^{2πiθm})⁻¹`, and norm growth of matrix representations of `ℤⁿ`.
//!
//! Every verdict describes a finite sample and says so; nothing here claims
//! a statement about an infinite range.

mod decay;
mod diophantine;
mod matrix;
mod weights;

use std::fmt;
use std::io::{self, Write};

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::groupalg::{ball, Group, GroupElement};

pub use decay::{schwartz_membership, schwartz_membership_radial, DecayClass, MembershipVerdict, SchwartzClass};
pub use diophantine::{
    continued_fraction, small_divisor_growth, small_divisor_series, ContinuedFraction, DivisorVerdict, HhAgreement,
};
pub use matrix::{matrix_rep_growth, parse_matrix, RationalMatrix, RepGrowth};
pub use weights::{
    check_combing_compatibility, combing_straightline, is_submultiplicative, CombingReport, CombingWitness,
    SubmultReport, Weight, WeightCombination, WeightValue,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GrowthError {
    #[error("sampled range too short: radius {radius} < {min}")]
    InsufficientRange { radius: u64, min: u64 },
    #[error("range M = {range} below the minimum {min}")]
    RangeTooSmall { range: u64, min: u64 },
    #[error("float theta supports only {reliable} reliable partial quotients, {requested} requested")]
    PrecisionExhausted { reliable: usize, requested: usize },
    #[error("theta `formal` has no numeric value")]
    NotNumeric,
    #[error("generator {index} is singular")]
    SingularGenerator { index: usize },
    #[error("generators {a} and {b} do not commute")]
    NotCommuting { a: usize, b: usize },
    #[error("bad matrix: {0}")]
    BadMatrix(String),
    #[error("cannot compare {0} exactly; use a single exponential term with coefficient 1")]
    InexactComparison(String),
    #[error("weight {weight} is not defined on {group}")]
    WrongGroup { weight: String, group: Group },
    #[error("weight {name} takes a nonpositive value at {at}")]
    NonPositive { name: String, at: String },
    #[error(transparent)]
    Io(#[from] IoError),
}

/// `io::Error` is neither `Clone` nor `PartialEq`; keep its text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IoError(pub String);

impl fmt::Display for IoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for IoError {}

impl From<io::Error> for GrowthError {
    fn from(e: io::Error) -> Self {
        GrowthError::Io(IoError(e.to_string()))
    }
}

/// Growth class of a sampled function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthClass {
    RootOfUnity,
    Polynomial(u32),
    Subexponential,
    Exponential,
    SuperExponential,
    Inconclusive,
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthClass::RootOfUnity => f.write_str("root-of-unity"),
            GrowthClass::Polynomial(d) => write!(f, "polynomial({d})"),
            GrowthClass::Subexponential => f.write_str("subexponential"),
            GrowthClass::Exponential => f.write_str("exponential"),
            GrowthClass::SuperExponential => f.write_str("super-exponential"),
            GrowthClass::Inconclusive => f.write_str("inconclusive"),
        }
    }
}

impl Serialize for GrowthClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Word length: reduced length in `𝔽_r`, `‖·‖₁` in `ℤⁿ`.
pub fn word_length(g: &GroupElement) -> u64 {
    g.length()
}

/// Lattice points of `ℤⁿ` with `‖x‖₁ ≤ radius`, by length, then lexicographically.
pub fn lattice_ball(dim: u32, radius: u64) -> Vec<Vec<i64>> {
    let mut pts: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..dim {
        let mut next = Vec::new();
        for p in &pts {
            let used: u64 = p.iter().map(|x| x.unsigned_abs()).sum();
            let room = (radius - used) as i64;
            for x in -room..=room {
                let mut q = p.clone();
                q.push(x);
                next.push(q);
            }
        }
        pts = next;
    }
    pts.sort_by_key(|p| (p.iter().map(|x| x.unsigned_abs()).sum::<u64>(), p.clone()));
    pts
}

/// All elements of length `≤ radius`.
pub fn group_ball(group: Group, radius: u64) -> Vec<GroupElement> {
    match group {
        Group::Free { rank } => ball(rank, radius as usize)
            .into_iter()
            .map(GroupElement::Free)
            .collect(),
        Group::Lattice { dim } => lattice_ball(dim, radius)
            .into_iter()
            .map(GroupElement::Lattice)
            .collect(),
    }
}

/// Least squares `y ≈ a + b x`; returns `(b, a, rms residual)`.
pub(crate) fn fit_line(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = points.len() as f64;
    if points.len() < 2 {
        return (f64::NAN, f64::NAN, f64::NAN);
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let b = sxy / sxx;
    let a = my - b * mx;
    let rss: f64 = points.iter().map(|p| (p.1 - a - b * p.0).powi(2)).sum();
    (b, a, (rss / n).sqrt())
}

/// Writes a CSV with a header row. Floats use Rust's shortest round-trip form.
pub fn write_csv<W: Write>(
    mut out: W,
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<(), GrowthError> {
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}
