//! Cyclotomic fields ℚ(ζ_N), elements reduced modulo the N-th cyclotomic polynomial.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::One;

use super::poly::QPoly;

fn cache() -> &'static Mutex<HashMap<u32, Arc<QPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<QPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The N-th cyclotomic polynomial Φ_N, memoized.
pub fn cyclotomic_polynomial(order: u32) -> Arc<QPoly> {
    assert!(order >= 1, "cyclotomic order must be positive");
    if let Some(p) = cache().lock().unwrap().get(&order) {
        return p.clone();
    }
    // x^N - 1 = prod_{d | N} Φ_d
    let mut p = &QPoly::monomial(BigRational::one(), order as usize) - &QPoly::one();
    for d in 1..order {
        if order.is_multiple_of(d) {
            p = p.exact_div(&cyclotomic_polynomial(d));
        }
    }
    let p = Arc::new(p);
    cache().lock().unwrap().insert(order, p.clone());
    p
}

/// Euler's totient, the degree of Φ_N.
pub fn totient(order: u32) -> usize {
    (1..=order).filter(|k| num_integer::gcd(*k, order) == 1).count()
}

/// An element of ℚ(ζ_N) written in the power basis 1, ζ, …, ζ^{φ(N)-1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    order: u32,
    rep: QPoly,
}

impl Cyclotomic {
    /// Reduces an arbitrary polynomial in ζ_N.
    pub fn from_poly(order: u32, p: QPoly) -> Self {
        let modulus = cyclotomic_polynomial(order);
        Cyclotomic {
            order,
            rep: p.rem(&modulus),
        }
    }

    pub fn from_coeffs(order: u32, coeffs: Vec<BigRational>) -> Self {
        Self::from_poly(order, QPoly::from_coeffs(coeffs))
    }

    pub fn zero(order: u32) -> Self {
        Cyclotomic {
            order,
            rep: QPoly::zero(),
        }
    }

    pub fn one(order: u32) -> Self {
        Self::constant(order, BigRational::one())
    }

    pub fn constant(order: u32, c: BigRational) -> Self {
        Self::from_poly(order, QPoly::constant(c))
    }

    /// ζ_N^k for any integer k.
    pub fn zeta_pow(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        Self::from_poly(order, QPoly::monomial(BigRational::one(), e))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn rep(&self) -> &QPoly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rep.is_one()
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            rep: -&self.rep,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.order, other.order);
        Cyclotomic {
            order: self.order,
            rep: &self.rep + &other.rep,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.order, other.order);
        Cyclotomic {
            order: self.order,
            rep: &self.rep - &other.rep,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.order, other.order);
        if self.rep.is_constant() || other.rep.is_constant() {
            return Cyclotomic {
                order: self.order,
                rep: &self.rep * &other.rep,
            };
        }
        Self::from_poly(self.order, &self.rep * &other.rep)
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.rep.is_constant() {
            return Some(Self::constant(self.order, self.rep.coeff(0).recip()));
        }
        let modulus = cyclotomic_polynomial(self.order);
        let (g, s, _) = self.rep.ext_gcd(&modulus);
        // Φ_N is irreducible, so any nonzero reduced element is coprime to it
        debug_assert!(g.is_one());
        Some(Self::from_poly(self.order, s))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    /// Evaluates `p` at this element (Horner in ℚ(ζ_N)).
    pub fn eval_poly(&self, p: &QPoly) -> Self {
        let mut acc = Self::zero(self.order);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Self::constant(self.order, c.clone()));
        }
        acc
    }

    pub fn pow(&self, k: i64) -> Option<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut b = base;
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        Some(acc)
    }

    /// Numerical value with ζ_N = exp(2πi/N).
    pub fn to_complex(&self) -> num_complex::Complex64 {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for (k, c) in self.rep.coeffs().iter().enumerate() {
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / (self.order as f64);
            acc += num_complex::Complex64::from_polar(super::rational_to_f64(c), angle);
        }
        acc
    }

    pub fn bit_cost(&self) -> u64 {
        self.rep.bit_cost()
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.write_terms(f, 'z', 0)
    }
}
