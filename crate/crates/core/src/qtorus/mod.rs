//! The quantum torus: Laurent polynomials in `U, V` with `UV = q VU`.
//!
//! Elements are kept in normal form `Σ a_{mn} U^m V^n` (all `U`s left of all
//! `V`s). Moving `V^n` past `U^p` costs `q^{-np}`.

mod commutator;
mod koszul;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::chain::ChainError;
use crate::scalar::{Scalar, Variant};
use crate::theta::Deformation;

pub use commutator::{
    commutator_complex, hochschild_homology, identify_ll, l_complex, l_kernel, mode_complex, HochschildReport,
    LLIdentification, ModeContribution,
};
pub use koszul::{b2_image, check_resolution, koszul_resolution, Koszul, KoszulGen, ResolutionReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QTorusError {
    #[error("coefficient variants differ: {left} vs {right}")]
    VariantMismatch { left: Variant, right: Variant },
    #[error("homology needs exact coefficients")]
    FloatNotSupported,
    #[error(
        "identification failed in degree {degree} at ({row}, {col}): commutator side {expected}, tensor side {found}"
    )]
    IdentificationFailed {
        degree: i64,
        row: usize,
        col: usize,
        expected: String,
        found: String,
    },
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// Monomial `U^m V^n` as its exponent pair.
pub type Mode = (i64, i64);

/// `U^a V^b · U^c V^d = q^{-bc} U^{a+c} V^{b+d}`; returns `(-bc, (a+c, b+d))`.
pub fn mono_mul(x: Mode, y: Mode) -> (i64, Mode) {
    (-x.1 * y.0, (x.0 + y.0, x.1 + y.1))
}

/// A finitely supported element `Σ a_{mn} U^m V^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct QTorusElement {
    deformation: Deformation,
    coeffs: BTreeMap<Mode, Scalar>,
}

/// The generator conjugated by in [`QTorusElement::conjugate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    U,
    V,
}

impl QTorusElement {
    pub fn zero(deformation: Deformation) -> Self {
        QTorusElement {
            deformation,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(deformation: Deformation) -> Self {
        Self::monomial(deformation, (0, 0), Scalar::one(deformation.variant()))
    }

    /// `c · U^m V^n`.
    pub fn monomial(deformation: Deformation, mode: Mode, c: Scalar) -> Self {
        assert_eq!(
            c.variant(),
            deformation.variant(),
            "coefficient outside the deformation's field"
        );
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(mode, c);
        }
        QTorusElement { deformation, coeffs }
    }

    pub fn u(deformation: Deformation) -> Self {
        Self::unit_monomial(deformation, (1, 0))
    }

    pub fn v(deformation: Deformation) -> Self {
        Self::unit_monomial(deformation, (0, 1))
    }

    pub fn unit_monomial(deformation: Deformation, mode: Mode) -> Self {
        Self::monomial(deformation, mode, Scalar::one(deformation.variant()))
    }

    /// Builds from `(m, n, coefficient)` triples, summing repeats.
    pub fn from_terms(deformation: Deformation, terms: impl IntoIterator<Item = (Mode, Scalar)>) -> Self {
        let mut out = Self::zero(deformation);
        for (mode, c) in terms {
            out.add_term(mode, c);
        }
        out
    }

    fn add_term(&mut self, mode: Mode, c: Scalar) {
        assert_eq!(
            c.variant(),
            self.deformation.variant(),
            "coefficient outside the deformation's field"
        );
        let sum = match self.coeffs.get(&mode) {
            Some(a) => a + &c,
            None => c,
        };
        if sum.is_zero() {
            self.coeffs.remove(&mode);
        } else {
            self.coeffs.insert(mode, sum);
        }
    }

    pub fn deformation(&self) -> Deformation {
        self.deformation
    }

    pub fn variant(&self) -> Variant {
        self.deformation.variant()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, mode: Mode) -> Option<&Scalar> {
        self.coeffs.get(&mode)
    }

    /// Terms in increasing `(m, n)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&Mode, &Scalar)> {
        self.coeffs.iter()
    }

    fn check(&self, other: &Self) -> Result<(), QTorusError> {
        if self.deformation != other.deformation {
            return Err(QTorusError::VariantMismatch {
                left: self.variant(),
                right: other.variant(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, QTorusError> {
        self.check(other)?;
        let mut out = self.clone();
        for (mode, c) in &other.coeffs {
            out.add_term(*mode, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(self.deformation, self.coeffs.iter().map(|(m, a)| (*m, a * c)))
    }

    /// The product in normal form.
    pub fn mul(&self, other: &Self) -> Result<Self, QTorusError> {
        self.check(other)?;
        let mut out = Self::zero(self.deformation);
        for (x, a) in &self.coeffs {
            for (y, b) in &other.coeffs {
                let (k, mode) = mono_mul(*x, *y);
                out.add_term(mode, &(a * b) * &self.deformation.q_pow(k));
            }
        }
        Ok(out)
    }

    /// `g x g^{-1}`: on `U^m V^n`, conjugation by `V` multiplies by `q^{-m}`
    /// and conjugation by `U` by `q^n`.
    pub fn conjugate(&self, g: Generator) -> Self {
        let d = self.deformation;
        Self::from_terms(
            d,
            self.coeffs.iter().map(|(&(m, n), a)| {
                let k = match g {
                    Generator::U => n,
                    Generator::V => -m,
                };
                ((m, n), a * &d.q_pow(k))
            }),
        )
    }

    /// `[(m, n, coefficient text)]` in increasing mode order.
    pub fn to_triples(&self) -> Vec<TermDoc> {
        self.coeffs
            .iter()
            .map(|(&(m, n), c)| TermDoc(m, n, c.to_string()))
            .collect()
    }
}

/// Serialized term `(m, n, scalar)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermDoc(pub i64, pub i64, pub String);

/// Monomials `(m, n)` with `|m|, |n| ≤ radius`, `m` major.
pub fn box_modes(radius: i64) -> impl Iterator<Item = Mode> {
    (-radius..=radius).flat_map(move |m| (-radius..=radius).map(move |n| (m, n)))
}

/// Text label `U^m V^n`.
pub fn mode_label(mode: Mode) -> String {
    format!("U^{}V^{}", mode.0, mode.1)
}

/// `qt_mul(a, b)`.
pub fn qt_mul(a: &QTorusElement, b: &QTorusElement) -> Result<QTorusElement, QTorusError> {
    a.mul(b)
}
