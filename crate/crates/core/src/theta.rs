//! The deformation parameter θ and the coefficient world it selects.
//!
//! Text grammar: `formal`, an integer or `p/N`, `cf:a0,a1,…`, `float:x`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::scalar::{Cyclotomic, RatFunc, Scalar, Variant};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ThetaError {
    #[error("cannot parse theta {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("continued fraction partial quotients after the first must be >= 1 (a_{index} = {value})")]
    BadPartialQuotient { index: usize, value: BigInt },
    #[error("float theta has no exact coefficient model; use `formal` or `p/N`")]
    FloatNotExact,
    #[error("root-of-unity order {0} is too large for cyclotomic arithmetic")]
    OrderTooLarge(BigInt),
}

/// A value of θ as given by the user.
#[derive(Clone, Debug, PartialEq)]
pub enum ThetaSpec {
    /// θ irrational, modelled by a transcendental `q`.
    Formal,
    Rational(BigRational),
    /// Partial quotients `[a0; a1, a2, …]`. The last listed quotient repeats
    /// forever, so the value is irrational (a quadratic irrational).
    ContinuedFraction(Vec<BigInt>),
    Float(f64),
}

impl FromStr for ThetaSpec {
    type Err = ThetaError;

    fn from_str(s: &str) -> Result<Self, ThetaError> {
        let text = s.trim();
        let err = |reason: &str| ThetaError::Parse {
            text: s.to_string(),
            reason: reason.to_string(),
        };
        if text == "formal" {
            return Ok(ThetaSpec::Formal);
        }
        if let Some(rest) = text.strip_prefix("cf:") {
            let quotients: Vec<BigInt> = rest
                .split(',')
                .map(|t| t.trim().parse::<BigInt>())
                .collect::<Result<_, _>>()
                .map_err(|_| err("expected comma-separated integers after `cf:`"))?;
            if quotients.is_empty() {
                return Err(err("empty continued fraction"));
            }
            for (index, value) in quotients.iter().enumerate().skip(1) {
                if value < &BigInt::one() {
                    return Err(ThetaError::BadPartialQuotient {
                        index,
                        value: value.clone(),
                    });
                }
            }
            return Ok(ThetaSpec::ContinuedFraction(quotients));
        }
        if let Some(rest) = text.strip_prefix("float:") {
            let x: f64 = rest
                .trim()
                .parse()
                .map_err(|_| err("expected a float after `float:`"))?;
            if !x.is_finite() {
                return Err(err("theta must be finite"));
            }
            return Ok(ThetaSpec::Float(x));
        }
        let (num, den) = match text.split_once('/') {
            Some((p, n)) => (p.trim(), n.trim()),
            None => (text, "1"),
        };
        let p: BigInt = num
            .parse()
            .map_err(|_| err("expected `formal`, `p/N`, `cf:…` or `float:x`"))?;
        let n: BigInt = den.parse().map_err(|_| err("bad denominator"))?;
        if n.is_zero() {
            return Err(err("zero denominator"));
        }
        Ok(ThetaSpec::Rational(BigRational::new(p, n)))
    }
}

impl fmt::Display for ThetaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaSpec::Formal => f.write_str("formal"),
            ThetaSpec::Rational(r) => write!(f, "{r}"),
            ThetaSpec::ContinuedFraction(a) => {
                let parts: Vec<String> = a.iter().map(BigInt::to_string).collect();
                write!(f, "cf:{}", parts.join(","))
            }
            ThetaSpec::Float(x) => write!(f, "float:{x:?}"),
        }
    }
}

/// The value of `q = exp(2πiθ)` as an element of a coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Deformation {
    /// `q` transcendental, coefficients in ℚ(q).
    Formal,
    /// `q = 1`, coefficients in ℚ.
    Classical,
    /// `q = ζ_order^power` with `gcd(power, order) = 1`, `order ≥ 2`.
    RootOfUnity { order: u32, power: i64 },
}

/// Orders above this are refused: cyclotomic arithmetic is polynomial in φ(N).
pub const MAX_ROOT_ORDER: u32 = 10_000;

impl Deformation {
    /// Chooses the exact model for θ. Rational θ reduces to lowest terms;
    /// continued fractions (irrational by the repeating-tail rule) map to
    /// the formal model; floats are refused.
    pub fn from_theta(theta: &ThetaSpec) -> Result<Self, ThetaError> {
        match theta {
            ThetaSpec::Formal | ThetaSpec::ContinuedFraction(_) => Ok(Deformation::Formal),
            ThetaSpec::Float(_) => Err(ThetaError::FloatNotExact),
            ThetaSpec::Rational(r) => {
                let (p, n) = (r.numer(), r.denom());
                if n.is_one() {
                    return Ok(Deformation::Classical);
                }
                let order = n
                    .to_u32()
                    .filter(|o| *o <= MAX_ROOT_ORDER)
                    .ok_or_else(|| ThetaError::OrderTooLarge(n.clone()))?;
                let power = p.mod_floor(n).to_i64().expect("residue below order");
                Ok(Deformation::RootOfUnity { order, power })
            }
        }
    }

    pub fn variant(self) -> Variant {
        match self {
            Deformation::Formal => Variant::RatFunc,
            Deformation::Classical => Variant::Rational,
            Deformation::RootOfUnity { order, .. } => Variant::Cyclotomic(order),
        }
    }

    /// `q^k`.
    pub fn q_pow(self, k: i64) -> Scalar {
        match self {
            Deformation::Formal => Scalar::RatFunc(RatFunc::monomial(BigRational::one(), k)),
            Deformation::Classical => Scalar::one(Variant::Rational),
            Deformation::RootOfUnity { order, power } => Scalar::Cyclotomic(Cyclotomic::zeta_pow(order, power * k)),
        }
    }

    /// `c · q^k` for an integer `c`.
    pub fn monomial(self, c: i64, k: i64) -> Scalar {
        if c == 1 {
            return self.q_pow(k);
        }
        &Scalar::from_integer(self.variant(), c) * &self.q_pow(k)
    }

    /// Whether `q^k = 1`.
    pub fn is_root(self, k: i64) -> bool {
        match self {
            Deformation::Formal => k == 0,
            Deformation::Classical => true,
            Deformation::RootOfUnity { order, power } => (power * k).rem_euclid(order as i64) == 0,
        }
    }

    /// Text used in reports: `formal`, `0`, or `p/N`.
    pub fn describe(self) -> String {
        match self {
            Deformation::Formal => "formal".into(),
            Deformation::Classical => "0".into(),
            Deformation::RootOfUnity { order, power } => format!("{power}/{order}"),
        }
    }
}

/// Convenience: parse θ text straight to a deformation.
pub fn deformation(text: &str) -> Result<Deformation, ThetaError> {
    Deformation::from_theta(&text.parse()?)
}
