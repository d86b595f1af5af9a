//! The reindexing `Uφ(g, h) = φ(gh, g)` on finitely supported functions on
//! `G × G`, its inverse `U⁻¹φ(g, h) = φ(h, h⁻¹g)`, and convolution `μ`.
//!
//! On point masses, `U δ_(a,b) = δ_(b, b⁻¹a)` and `U⁻¹ δ_(a,b) = δ_(ab, a)`.

use std::collections::BTreeMap;

use super::{Group, GroupAlgebraElement, GroupElement};
use crate::scalar::{Scalar, Variant};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// A finitely supported function `G × G → K`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairFunction {
    pub group: Group,
    pub variant: Variant,
    pub values: BTreeMap<(GroupElement, GroupElement), Scalar>,
}

impl PairFunction {
    pub fn new(
        group: Group,
        variant: Variant,
        terms: impl IntoIterator<Item = ((GroupElement, GroupElement), Scalar)>,
    ) -> Self {
        let mut values: BTreeMap<_, Scalar> = BTreeMap::new();
        for (k, c) in terms {
            let sum = match values.remove(&k) {
                Some(a) => &a + &c,
                None => c,
            };
            if !sum.is_zero() {
                values.insert(k, sum);
            }
        }
        PairFunction { group, variant, values }
    }

    /// `δ_(a,b)`.
    pub fn point(group: Group, variant: Variant, a: GroupElement, b: GroupElement) -> Self {
        Self::new(group, variant, [((a, b), Scalar::one(variant))])
    }

    /// `g ↦ Σ_h φ(g, h)`.
    pub fn integrate_second(&self) -> GroupAlgebraElement {
        GroupAlgebraElement::from_terms(
            self.group,
            self.variant,
            self.values.iter().map(|((g, _), c)| (g.clone(), c.clone())),
        )
    }
}

/// Applies `U` or `U⁻¹`. The map is a bijection on supports.
pub fn symmetrizer_u(phi: &PairFunction, direction: Direction) -> PairFunction {
    PairFunction::new(
        phi.group,
        phi.variant,
        phi.values.iter().map(|((a, b), c)| {
            let key = match direction {
                Direction::Forward => (b.clone(), b.inverse().mul(a)),
                Direction::Inverse => (a.mul(b), a.clone()),
            };
            (key, c.clone())
        }),
    )
}

/// `μψ(g) = Σ_{xy=g} ψ(x, y)`.
pub fn convolve_pairs(psi: &PairFunction) -> GroupAlgebraElement {
    GroupAlgebraElement::from_terms(
        psi.group,
        psi.variant,
        psi.values.iter().map(|((x, y), c)| (x.mul(y), c.clone())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupalg::Word;

    const Q: Variant = Variant::Rational;
    const F2: Group = Group::Free { rank: 2 };

    fn el(s: &str) -> GroupElement {
        GroupElement::Free(s.parse::<Word>().unwrap())
    }

    #[test]
    fn point_masses() {
        let phi = PairFunction::point(F2, Q, el("s1"), el("s2"));
        let fwd = symmetrizer_u(&phi, Direction::Forward);
        assert_eq!(fwd, PairFunction::point(F2, Q, el("s2"), el("s2^-1.s1")));
        let inv = symmetrizer_u(&phi, Direction::Inverse);
        assert_eq!(inv, PairFunction::point(F2, Q, el("s1.s2"), el("s1")));
        assert_eq!(symmetrizer_u(&fwd, Direction::Inverse), phi);
    }

    #[test]
    fn mu_after_u_integrates() {
        let phi = PairFunction::point(F2, Q, el("s1.s2"), el("s2^-1"));
        let lhs = convolve_pairs(&symmetrizer_u(&phi, Direction::Forward));
        assert_eq!(lhs, phi.integrate_second());
        assert!(lhs.coeff(&el("s1.s2")).unwrap().is_one());
    }
}
