//! The rational function field ℚ(q) in a formal unit `q`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::QPoly;

/// `q^shift * num / den` in canonical form.
///
/// Canonical means: `num` and `den` are ordinary polynomials with nonzero
/// constant term, `den` is monic, `gcd(num, den) = 1`, and zero is stored as
/// `shift = 0, num = 0, den = 1`. Two values are equal iff their fields are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    shift: i64,
    num: QPoly,
    den: QPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            shift: 0,
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            shift: 0,
            num: QPoly::constant(c),
            den: QPoly::one(),
        }
    }

    /// `c * q^k`.
    pub fn monomial(c: BigRational, k: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            shift: k,
            num: QPoly::constant(c),
            den: QPoly::one(),
        }
    }

    pub fn q() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    /// Builds `q^shift * num / den` and brings it to canonical form.
    pub fn from_parts(shift: i64, num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        Self::normalize(shift, num, den)
    }

    /// Builds the quotient of two Laurent polynomials given as `(low exponent, coefficients)`.
    pub fn from_laurent(num: (i64, QPoly), den: (i64, QPoly)) -> Self {
        Self::from_parts(num.0 - den.0, num.1, den.1)
    }

    fn normalize(mut shift: i64, mut num: QPoly, mut den: QPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let vn = num.trailing_zeros();
        if vn > 0 {
            num = num.shr(vn);
            shift += vn as i64;
        }
        let vd = den.trailing_zeros();
        if vd > 0 {
            den = den.shr(vd);
            shift -= vd as i64;
        }
        if !num.is_constant() && !den.is_constant() {
            let g = num.gcd(&den);
            if !g.is_constant() {
                num = num.exact_div(&g);
                den = den.exact_div(&g);
            }
        }
        let lc = den.leading().expect("nonzero denominator").clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { shift, num, den }
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn numer(&self) -> &QPoly {
        &self.num
    }

    pub fn denom(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True for `c * q^k`, the units of the Laurent ring.
    pub fn is_monomial(&self) -> bool {
        self.num.is_constant() && self.den.is_one() && !self.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            shift: self.shift,
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let s = self.shift.min(other.shift);
        let a = self.num.shl((self.shift - s) as usize);
        let b = other.num.shl((other.shift - s) as usize);
        if self.den == other.den {
            let num = &a + &b;
            if self.den.is_one() {
                return Self::normalize_polynomial(s, num);
            }
            return Self::normalize(s, num, self.den.clone());
        }
        let num = &(&a * &other.den) + &(&b * &self.den);
        Self::normalize(s, num, &self.den * &other.den)
    }

    /// Normalization when the denominator is known to be 1.
    fn normalize_polynomial(shift: i64, num: QPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let v = num.trailing_zeros();
        RatFunc {
            shift: shift + v as i64,
            num: if v > 0 { num.shr(v) } else { num },
            den: QPoly::one(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let shift = self.shift + other.shift;
        if self.den.is_one() && other.den.is_one() {
            // constant terms are nonzero, so the product needs no reduction
            return RatFunc {
                shift,
                num: &self.num * &other.num,
                den: QPoly::one(),
            };
        }
        Self::normalize(shift, &self.num * &other.num, &self.den * &other.den)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::normalize(-self.shift, self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    /// Value at a nonzero rational point; `None` at a pole.
    pub fn eval(&self, q: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(q);
        if d.is_zero() {
            return None;
        }
        let unit = if self.shift >= 0 {
            num_traits::pow(q.clone(), self.shift as usize)
        } else {
            num_traits::pow(q.recip(), (-self.shift) as usize)
        };
        Some(unit * self.num.eval(q) / d)
    }

    pub fn bit_cost(&self) -> u64 {
        let deg = self.num.degree().unwrap_or(0) + self.den.degree().unwrap_or(0);
        (deg as u64) * 64 + self.num.bit_cost() + self.den.bit_cost()
    }
}

impl fmt::Display for RatFunc {
    /// `(numerator)/(denominator)` with the numerator written as a Laurent
    /// polynomial in `q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        self.num.write_terms(f, 'q', self.shift)?;
        f.write_str(")/(")?;
        self.den.write_terms(f, 'q', 0)?;
        f.write_str(")")
    }
}
