//! Group algebras of free groups and lattices: reduced words, convolution,
//! the length-one pair complex of `𝔽_r`, and the symmetrizing operator `U`.

mod pair;
mod symmetrizer;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::chain::ChainError;
use crate::scalar::{Scalar, Variant};

pub use pair::{
    fr_exactness_report, fr_group_homology, fr_pair_complex, pair_piece, singular_value_experiment, ExactnessReport,
    GroupHomology, SingularValueRow,
};
pub use symmetrizer::{convolve_pairs, symmetrizer_u, Direction, PairFunction};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupAlgError {
    #[error("elements live in different groups: {left} vs {right}")]
    GroupMismatch { left: Group, right: Group },
    #[error("coefficient variants differ: {left} vs {right}")]
    VariantMismatch { left: Variant, right: Variant },
    #[error("homology needs exact coefficients")]
    FloatNotSupported,
    #[error("window too small: radius {radius} leaves no inner range (need at least {min})")]
    WindowTooSmall { radius: usize, min: usize },
    #[error("cannot parse word {text:?}: {reason}")]
    BadWord { text: String, reason: String },
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// A finitely generated group with a standard generating set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    Free { rank: u32 },
    Lattice { dim: u32 },
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Free { rank } => write!(f, "F{rank}"),
            Group::Lattice { dim } => write!(f, "Z^{dim}"),
        }
    }
}

/// A reduced word in `s_1^{±1}, …, s_r^{±1}`; letter `k > 0` is `s_k`, `-k` is `s_k⁻¹`.
///
/// Ordered shortlex, letters compared as `s1 < s1^-1 < s2 < …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<i32>);

fn letter_key(a: i32) -> (u32, bool) {
    (a.unsigned_abs(), a < 0)
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| {
            self.0
                .iter()
                .map(|&a| letter_key(a))
                .cmp(other.0.iter().map(|&a| letter_key(a)))
        })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// `s_k` for `k > 0`, `s_k⁻¹` for `k < 0`.
    pub fn letter(k: i32) -> Self {
        assert!(k != 0, "letters are nonzero");
        Word(vec![k])
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for a in letters {
            assert!(a != 0, "letters are nonzero");
            if out.last() == Some(&-a) {
                out.pop();
            } else {
                out.push(a);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|a| -a).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        let common = self
            .0
            .iter()
            .rev()
            .zip(other.0.iter())
            .take_while(|(a, b)| **a == -**b)
            .count();
        let mut out = self.0[..self.0.len() - common].to_vec();
        out.extend_from_slice(&other.0[common..]);
        Word(out)
    }

    /// Right multiplication by one letter.
    pub fn times_letter(&self, a: i32) -> Word {
        let mut out = self.0.clone();
        if out.last() == Some(&-a) {
            out.pop();
        } else {
            out.push(a);
        }
        Word(out)
    }

    /// Largest generator index used.
    pub fn max_generator(&self) -> u32 {
        self.0.iter().map(|a| a.unsigned_abs()).max().unwrap_or(0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&a| if a > 0 { format!("s{a}") } else { format!("s{}^-1", -a) })
            .collect();
        f.write_str(&parts.join("."))
    }
}

impl FromStr for Word {
    type Err = GroupAlgError;

    /// Accepts `e` or dot-separated `sK` / `sK^-1` / `sK^n`; the result is reduced.
    fn from_str(s: &str) -> Result<Self, GroupAlgError> {
        let text = s.trim();
        let bad = |reason: &str| GroupAlgError::BadWord {
            text: s.to_string(),
            reason: reason.to_string(),
        };
        if text == "e" || text.is_empty() {
            return Ok(Word::identity());
        }
        let mut letters = Vec::new();
        for part in text.split('.') {
            let rest = part
                .trim()
                .strip_prefix('s')
                .ok_or_else(|| bad("letters look like s1 or s2^-1"))?;
            let (gen, exp) = match rest.split_once('^') {
                Some((g, e)) => (g, e.parse::<i32>().map_err(|_| bad("bad exponent"))?),
                None => (rest, 1),
            };
            let k: i32 = gen.parse().map_err(|_| bad("bad generator index"))?;
            if k <= 0 {
                return Err(bad("generator indices start at 1"));
            }
            let a = if exp < 0 { -k } else { k };
            letters.extend(std::iter::repeat_n(a, exp.unsigned_abs() as usize));
        }
        Ok(Word::reduce(letters))
    }
}

/// All reduced words of length `≤ radius` in `𝔽_rank`, in shortlex order.
pub fn ball(rank: u32, radius: usize) -> Vec<Word> {
    let mut out = vec![Word::identity()];
    let mut layer = vec![Word::identity()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &layer {
            for a in alphabet(rank) {
                if w.0.last() != Some(&-a) {
                    let mut v = w.0.clone();
                    v.push(a);
                    next.push(Word(v));
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// `s1, s1^-1, s2, s2^-1, …`.
pub fn alphabet(rank: u32) -> impl Iterator<Item = i32> {
    (1..=rank as i32).flat_map(|k| [k, -k])
}

/// `|B_R|` in `𝔽_r`: `1 + 2r((2r-1)^R - 1)/(2r-2)`, or `2R+1` for `r = 1`.
pub fn ball_size(rank: u32, radius: usize) -> usize {
    let mut total = 1usize;
    let mut sphere = 2 * rank as usize;
    for _ in 0..radius {
        total += sphere;
        sphere *= (2 * rank as usize).saturating_sub(1).max(1);
    }
    total
}

/// A group element of either kind.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Free(Word),
    Lattice(Vec<i64>),
}

impl GroupElement {
    pub fn identity(group: Group) -> Self {
        match group {
            Group::Free { .. } => GroupElement::Free(Word::identity()),
            Group::Lattice { dim } => GroupElement::Lattice(vec![0; dim as usize]),
        }
    }

    /// Word length: reduced length in `𝔽_r`, `‖·‖₁` in `ℤⁿ`.
    pub fn length(&self) -> u64 {
        match self {
            GroupElement::Free(w) => w.len() as u64,
            GroupElement::Lattice(p) => p.iter().map(|x| x.unsigned_abs()).sum(),
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            GroupElement::Free(w) => GroupElement::Free(w.inverse()),
            GroupElement::Lattice(p) => GroupElement::Lattice(p.iter().map(|x| -x).collect()),
        }
    }

    /// Group product. Panics if the kinds (or lattice dimensions) differ.
    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (GroupElement::Free(a), GroupElement::Free(b)) => GroupElement::Free(a.mul(b)),
            (GroupElement::Lattice(a), GroupElement::Lattice(b)) => {
                assert_eq!(a.len(), b.len(), "lattice dimensions differ");
                GroupElement::Lattice(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            _ => panic!("free-group word times lattice point"),
        }
    }

    fn belongs_to(&self, group: Group) -> bool {
        match (self, group) {
            (GroupElement::Free(w), Group::Free { rank }) => w.max_generator() <= rank,
            (GroupElement::Lattice(p), Group::Lattice { dim }) => p.len() == dim as usize,
            _ => false,
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Free(w) => write!(f, "{w}"),
            GroupElement::Lattice(p) => {
                let parts: Vec<String> = p.iter().map(i64::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

/// A finitely supported function `G → K`, multiplied by convolution.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAlgebraElement {
    group: Group,
    variant: Variant,
    coeffs: BTreeMap<GroupElement, Scalar>,
}

impl GroupAlgebraElement {
    pub fn zero(group: Group, variant: Variant) -> Self {
        GroupAlgebraElement {
            group,
            variant,
            coeffs: BTreeMap::new(),
        }
    }

    /// `δ_g`.
    pub fn delta(group: Group, variant: Variant, g: GroupElement) -> Self {
        Self::from_terms(group, variant, [(g, Scalar::one(variant))])
    }

    /// Sums repeated keys and drops zeros. Panics on elements outside `group`
    /// or coefficients of another variant.
    pub fn from_terms(group: Group, variant: Variant, terms: impl IntoIterator<Item = (GroupElement, Scalar)>) -> Self {
        let mut out = Self::zero(group, variant);
        for (g, c) in terms {
            assert!(g.belongs_to(group), "{g} is not an element of {group}");
            assert_eq!(c.variant(), variant, "coefficient variant");
            let sum = match out.coeffs.remove(&g) {
                Some(a) => &a + &c,
                None => c,
            };
            if !sum.is_zero() {
                out.coeffs.insert(g, sum);
            }
        }
        out
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, g: &GroupElement) -> Option<&Scalar> {
        self.coeffs.get(g)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &Scalar)> {
        self.coeffs.iter()
    }

    fn check(&self, other: &Self) -> Result<(), GroupAlgError> {
        if self.group != other.group {
            return Err(GroupAlgError::GroupMismatch {
                left: self.group,
                right: other.group,
            });
        }
        if self.variant != other.variant {
            return Err(GroupAlgError::VariantMismatch {
                left: self.variant,
                right: other.variant,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, GroupAlgError> {
        self.check(other)?;
        Ok(Self::from_terms(
            self.group,
            self.variant,
            self.coeffs
                .iter()
                .chain(&other.coeffs)
                .map(|(g, c)| (g.clone(), c.clone())),
        ))
    }

    /// `[(element text, scalar text)]` in key order.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        self.coeffs
            .iter()
            .map(|(g, c)| (g.to_string(), c.to_string()))
            .collect()
    }
}

/// Convolution `(a·b)(g) = Σ_{xy=g} a(x) b(y)`.
pub fn group_mul(a: &GroupAlgebraElement, b: &GroupAlgebraElement) -> Result<GroupAlgebraElement, GroupAlgError> {
    a.check(b)?;
    Ok(GroupAlgebraElement::from_terms(
        a.group,
        a.variant,
        a.coeffs
            .iter()
            .flat_map(|(x, s)| b.coeffs.iter().map(move |(y, t)| (x.mul(y), s * t))),
    ))
}
