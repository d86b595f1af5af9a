//! Exact coefficient arithmetic.
//!
//! A [`Scalar`] lives in exactly one coefficient world ([`Variant`]): ℚ, the
//! rational function field ℚ(q) in a formal unit `q`, a cyclotomic field
//! ℚ(ζ_N), or complex floats. Arithmetic never coerces between worlds; the
//! `try_*` methods report [`ScalarError::VariantMismatch`], while the operator
//! impls panic on mismatch and are meant for code that has already checked
//! the variant of its inputs (e.g. a validated [`crate::chain::ChainComplex`]).

mod cyclotomic;
mod parse;
mod poly;
mod ratfunc;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use cyclotomic::{cyclotomic_polynomial, totient, Cyclotomic};
pub use poly::QPoly;
pub use ratfunc::RatFunc;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScalarError {
    #[error("variant mismatch: {left} vs {right}")]
    VariantMismatch { left: Variant, right: Variant },
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at {target}")]
    PoleAtTarget { target: String },
    #[error("specialization needs a rational function, got {0}")]
    NotRatFunc(Variant),
    #[error("cannot parse {variant} scalar from {text:?}: {reason}")]
    Parse {
        variant: Variant,
        text: String,
        reason: String,
    },
    #[error("unknown coefficient variant {0:?}")]
    UnknownVariant(String),
}

/// The coefficient world of a scalar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Rational,
    RatFunc,
    Cyclotomic(u32),
    Float,
}

impl Variant {
    pub fn is_exact(self) -> bool {
        !matches!(self, Variant::Float)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Rational => f.write_str("rational"),
            Variant::RatFunc => f.write_str("ratfunc"),
            Variant::Cyclotomic(n) => write!(f, "cyclotomic:{n}"),
            Variant::Float => f.write_str("float"),
        }
    }
}

impl FromStr for Variant {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rational" => Ok(Variant::Rational),
            "ratfunc" => Ok(Variant::RatFunc),
            "float" => Ok(Variant::Float),
            _ => s
                .strip_prefix("cyclotomic:")
                .and_then(|n| n.parse::<u32>().ok())
                .filter(|&n| n >= 1)
                .map(Variant::Cyclotomic)
                .ok_or_else(|| ScalarError::UnknownVariant(s.to_string())),
        }
    }
}

impl Serialize for Variant {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Variant {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rational(BigRational),
    RatFunc(RatFunc),
    Cyclotomic(Cyclotomic),
    Float(Complex64),
}

/// Where to evaluate a formal `q`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Target {
    /// q = ζ_order^power, exact.
    RootOfUnity { order: u32, power: i64 },
    /// q = exp(2πiθ), as a complex float.
    Angle(f64),
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::RootOfUnity { order, power } => write!(f, "q = zeta_{order}^{power}"),
            Target::Angle(t) => write!(f, "q = exp(2*pi*i*{t})"),
        }
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Scalar {
    pub fn zero(variant: Variant) -> Scalar {
        match variant {
            Variant::Rational => Scalar::Rational(BigRational::zero()),
            Variant::RatFunc => Scalar::RatFunc(RatFunc::zero()),
            Variant::Cyclotomic(n) => Scalar::Cyclotomic(Cyclotomic::zero(n)),
            Variant::Float => Scalar::Float(Complex64::new(0.0, 0.0)),
        }
    }

    pub fn one(variant: Variant) -> Scalar {
        Self::from_integer(variant, 1)
    }

    pub fn from_integer(variant: Variant, n: i64) -> Scalar {
        Self::from_rational(variant, BigRational::from_integer(BigInt::from(n)))
    }

    /// Embeds a rational number into the given coefficient world.
    pub fn from_rational(variant: Variant, r: BigRational) -> Scalar {
        match variant {
            Variant::Rational => Scalar::Rational(r),
            Variant::RatFunc => Scalar::RatFunc(RatFunc::constant(r)),
            Variant::Cyclotomic(n) => Scalar::Cyclotomic(Cyclotomic::constant(n, r)),
            Variant::Float => Scalar::Float(Complex64::new(rational_to_f64(&r), 0.0)),
        }
    }

    pub fn variant(&self) -> Variant {
        match self {
            Scalar::Rational(_) => Variant::Rational,
            Scalar::RatFunc(_) => Variant::RatFunc,
            Scalar::Cyclotomic(c) => Variant::Cyclotomic(c.order()),
            Scalar::Float(_) => Variant::Float,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::RatFunc(f) => f.is_zero(),
            Scalar::Cyclotomic(c) => c.is_zero(),
            Scalar::Float(z) => *z == Complex64::new(0.0, 0.0),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::RatFunc(f) => f.is_one(),
            Scalar::Cyclotomic(c) => c.is_one(),
            Scalar::Float(z) => *z == Complex64::new(1.0, 0.0),
        }
    }

    /// Re-establishes the canonical form. Every constructor already returns
    /// canonical values, so this only matters for values assembled by hand.
    pub fn simplify(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.reduced()),
            Scalar::RatFunc(f) => Scalar::RatFunc(RatFunc::from_parts(f.shift(), f.numer().clone(), f.denom().clone())),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(Cyclotomic::from_poly(c.order(), c.rep().clone())),
            s @ Scalar::Float(_) => s,
        }
    }

    fn mismatch(&self, other: &Scalar) -> ScalarError {
        ScalarError::VariantMismatch {
            left: self.variant(),
            right: other.variant(),
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::RatFunc(a), Scalar::RatFunc(b)) => Scalar::RatFunc(a.add(b)),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) if a.order() == b.order() => Scalar::Cyclotomic(a.add(b)),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a + b),
            _ => return Err(self.mismatch(other)),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::RatFunc(a), Scalar::RatFunc(b)) => Scalar::RatFunc(a.sub(b)),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) if a.order() == b.order() => Scalar::Cyclotomic(a.sub(b)),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a - b),
            _ => return Err(self.mismatch(other)),
        })
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::RatFunc(a), Scalar::RatFunc(b)) => Scalar::RatFunc(a.mul(b)),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) if a.order() == b.order() => Scalar::Cyclotomic(a.mul(b)),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a * b),
            _ => return Err(self.mismatch(other)),
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        if self.variant() != other.variant() {
            return Err(self.mismatch(other));
        }
        let inv = other.inv()?;
        self.try_mul(&inv)
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::RatFunc(a) => Scalar::RatFunc(a.inv().expect("nonzero")),
            Scalar::Cyclotomic(a) => Scalar::Cyclotomic(a.inv().expect("nonzero")),
            Scalar::Float(a) => Scalar::Float(a.inv()),
        })
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::RatFunc(a) => Scalar::RatFunc(a.neg()),
            Scalar::Cyclotomic(a) => Scalar::Cyclotomic(a.neg()),
            Scalar::Float(a) => Scalar::Float(-a),
        }
    }

    /// Integer power; negative exponents need an invertible base.
    pub fn pow(&self, k: i64) -> Result<Scalar, ScalarError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut b = base;
        let mut acc = Scalar::one(self.variant());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Rough size of the value, used to prefer cheap pivots in elimination.
    pub fn cost(&self) -> u64 {
        match self {
            Scalar::Rational(r) => r.numer().bits() + r.denom().bits(),
            Scalar::RatFunc(f) => f.bit_cost(),
            Scalar::Cyclotomic(c) => c.bit_cost(),
            Scalar::Float(_) => 1,
        }
    }

    /// Evaluates a formal rational function at a root of unity or an angle.
    pub fn specialize(&self, target: Target) -> Result<Scalar, ScalarError> {
        let Scalar::RatFunc(f) = self else {
            return Err(ScalarError::NotRatFunc(self.variant()));
        };
        match target {
            Target::RootOfUnity { order, power } => {
                assert!(order >= 1, "root of unity order must be positive");
                let z = Cyclotomic::zeta_pow(order, power);
                let den = z.eval_poly(f.denom());
                if den.is_zero() {
                    return Err(ScalarError::PoleAtTarget {
                        target: target.to_string(),
                    });
                }
                let num = z.eval_poly(f.numer());
                let unit = Cyclotomic::zeta_pow(order, power * f.shift());
                Ok(Scalar::Cyclotomic(
                    unit.mul(&num).div(&den).expect("nonzero denominator"),
                ))
            }
            Target::Angle(theta) => {
                let z = cis(theta);
                let eval = |p: &QPoly| {
                    p.coeffs()
                        .iter()
                        .rev()
                        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + rational_to_f64(c))
                };
                let den = eval(f.denom());
                if den.norm() < 1e-12 {
                    return Err(ScalarError::PoleAtTarget {
                        target: target.to_string(),
                    });
                }
                let unit = cis((theta * f.shift() as f64).rem_euclid(1.0));
                Ok(Scalar::Float(unit * eval(f.numer()) / den))
            }
        }
    }

    /// Parses the textual form produced by `Display` in the given world.
    pub fn parse(variant: Variant, text: &str) -> Result<Scalar, ScalarError> {
        parse::parse_scalar(variant, text)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_ratfunc(&self) -> Option<&RatFunc> {
        match self {
            Scalar::RatFunc(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_cyclotomic(&self) -> Option<&Cyclotomic> {
        match self {
            Scalar::Cyclotomic(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_complex(&self) -> Option<Complex64> {
        match self {
            Scalar::Float(z) => Some(*z),
            Scalar::Rational(r) => Some(Complex64::new(rational_to_f64(r), 0.0)),
            Scalar::Cyclotomic(c) => Some(c.to_complex()),
            Scalar::RatFunc(_) => None,
        }
    }

    /// Image in ℤ/p under `q ↦ q_mod`, if every denominator is a unit mod p.
    /// Cyclotomic values are not supported and yield `None`.
    pub(crate) fn reduce_mod(&self, p: u64, q_mod: u64) -> Option<u64> {
        match self {
            Scalar::Rational(r) => rational_mod(r, p),
            Scalar::RatFunc(f) => {
                let num = poly_mod(f.numer(), p, q_mod)?;
                let den = poly_mod(f.denom(), p, q_mod)?;
                if den == 0 || q_mod == 0 {
                    return None;
                }
                let unit = if f.shift() >= 0 {
                    pow_mod(q_mod, f.shift() as u64, p)
                } else {
                    pow_mod(inv_mod(q_mod, p)?, f.shift().unsigned_abs(), p)
                };
                Some(mul_mod(mul_mod(unit, num, p), inv_mod(den, p)?, p))
            }
            Scalar::Cyclotomic(_) | Scalar::Float(_) => None,
        }
    }
}

pub(crate) fn cis(turns: f64) -> Complex64 {
    let angle = 2.0 * std::f64::consts::PI * turns;
    Complex64::new(angle.cos(), angle.sin())
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

fn int_mod(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r < BigInt::zero() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits in u64")
}

fn rational_mod(r: &BigRational, p: u64) -> Option<u64> {
    let den = int_mod(r.denom(), p);
    Some(mul_mod(int_mod(r.numer(), p), inv_mod(den, p)?, p))
}

fn poly_mod(poly: &QPoly, p: u64, x: u64) -> Option<u64> {
    let mut acc = 0u64;
    for c in poly.coeffs().iter().rev() {
        acc = (mul_mod(acc, x, p) + rational_mod(c, p)?) % p;
    }
    Some(acc)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => poly::write_rational(f, r),
            Scalar::RatFunc(r) => r.fmt(f),
            Scalar::Cyclotomic(c) => c.fmt(f),
            // Debug formatting of f64 is the shortest round-tripping form
            Scalar::Float(z) => write!(f, "({:?},{:?})", z.re, z.im),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Scalar {
        Scalar::RatFunc(RatFunc::q())
    }

    #[test]
    fn rationals_are_reduced() {
        let s = Scalar::Rational(BigRational::new_raw(2.into(), 4.into())).simplify();
        assert_eq!(s, Scalar::Rational(rational(1, 2)));
        assert_eq!(s.to_string(), "1/2");
    }

    #[test]
    fn cross_variant_arithmetic_is_an_error() {
        let a = Scalar::one(Variant::Rational);
        let b = Scalar::one(Variant::RatFunc);
        assert!(matches!(a.try_add(&b), Err(ScalarError::VariantMismatch { .. })));
        let c5 = Scalar::one(Variant::Cyclotomic(5));
        let c3 = Scalar::one(Variant::Cyclotomic(3));
        assert!(c5.try_mul(&c3).is_err());
    }

    #[test]
    fn specialize_one_over_one_minus_q() {
        let f = (Scalar::one(Variant::RatFunc) - q()).inv().unwrap();
        let at_minus_one = f.specialize(Target::RootOfUnity { order: 2, power: 1 }).unwrap();
        assert_eq!(
            at_minus_one,
            Scalar::Cyclotomic(Cyclotomic::constant(2, rational(1, 2)))
        );
        let pole = f.specialize(Target::RootOfUnity { order: 1, power: 1 });
        assert!(matches!(pole, Err(ScalarError::PoleAtTarget { .. })));
    }

    #[test]
    fn specialize_q_at_quarter_turn() {
        let z = q().specialize(Target::Angle(0.25)).unwrap().as_complex().unwrap();
        assert!((z - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn specialize_rejects_non_ratfunc() {
        let r = Scalar::one(Variant::Rational);
        assert!(matches!(
            r.specialize(Target::Angle(0.1)),
            Err(ScalarError::NotRatFunc(Variant::Rational))
        ));
    }

    #[test]
    fn variant_strings_round_trip() {
        for v in [
            Variant::Rational,
            Variant::RatFunc,
            Variant::Cyclotomic(7),
            Variant::Float,
        ] {
            assert_eq!(v.to_string().parse::<Variant>().unwrap(), v);
        }
        assert!("cyclotomic:0".parse::<Variant>().is_err());
    }

    #[test]
    fn negative_powers() {
        let x = q().pow(-3).unwrap();
        assert_eq!(x, Scalar::RatFunc(RatFunc::monomial(rational(1, 1), -3)));
        assert!(Scalar::zero(Variant::Rational).pow(-1).is_err());
    }

    #[test]
    fn modular_reduction_matches_evaluation() {
        let f = (Scalar::one(Variant::RatFunc) - q()).inv().unwrap();
        let p = 1_000_000_007;
        let v = f.reduce_mod(p, 3).unwrap();
        // 1/(1-3) = -1/2
        assert_eq!(mul_mod(v, p - 2, p), 1);
    }
}
