//! Parser for the textual scalar forms.
//!
//! Grammar (whitespace between tokens is ignored):
//!
//! ```text
//! rational  := ["-"] digits ["/" digits]
//! term      := rational ["*" var "^" ["-"] digits]
//! poly      := "0" | term (("+" | "-") term)*
//! ratfunc   := "(" poly ")" "/" "(" poly ")"        var = q, Laurent exponents allowed
//! cyclotomic:= poly                                   var = z, exponents >= 0
//! float     := "(" f64 "," f64 ")"
//! ```

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Cyclotomic, QPoly, RatFunc, Scalar, ScalarError, Variant};

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), String> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(format!("expected '{}' at offset {}", c as char, self.pos))
        }
    }

    fn digits(&mut self) -> Result<BigInt, String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(format!("expected digits at offset {start}"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digit string"))
    }

    fn unsigned_rational(&mut self) -> Result<BigRational, String> {
        let n = self.digits()?;
        if self.eat(b'/') {
            let d = self.digits()?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(BigRational::new(n, d))
        } else {
            Ok(BigRational::from_integer(n))
        }
    }

    fn signed_int(&mut self) -> Result<i64, String> {
        let neg = self.eat(b'-');
        let v: i64 = self
            .digits()?
            .try_into()
            .map_err(|_| "exponent out of range".to_string())?;
        Ok(if neg { -v } else { v })
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

/// Parses a sum of `c*var^k` terms into (exponent, coefficient) pairs.
fn parse_terms(cur: &mut Cursor, var: u8) -> Result<Vec<(i64, BigRational)>, String> {
    let mut terms = Vec::new();
    let mut negative = cur.eat(b'-');
    loop {
        let mut c = cur.unsigned_rational()?;
        if negative {
            c = -c;
        }
        let mut k = 0;
        if cur.eat(b'*') {
            cur.expect(var)?;
            cur.expect(b'^')?;
            k = cur.signed_int()?;
        }
        terms.push((k, c));
        if cur.eat(b'+') {
            negative = false;
        } else if cur.eat(b'-') {
            negative = true;
        } else {
            break;
        }
    }
    Ok(terms)
}

/// Collects terms into `(lowest exponent, polynomial)`.
fn laurent(terms: Vec<(i64, BigRational)>) -> (i64, QPoly) {
    let low = terms.iter().map(|t| t.0).min().unwrap_or(0).min(0);
    let high = terms.iter().map(|t| t.0).max().unwrap_or(0);
    let mut coeffs = vec![BigRational::zero(); (high - low + 1) as usize];
    for (k, c) in terms {
        coeffs[(k - low) as usize] += c;
    }
    (low, QPoly::from_coeffs(coeffs))
}

pub(super) fn parse_scalar(variant: Variant, text: &str) -> Result<Scalar, ScalarError> {
    let err = |reason: String| ScalarError::Parse {
        variant,
        text: text.to_string(),
        reason,
    };
    let mut cur = Cursor::new(text);
    let value = match variant {
        Variant::Rational => {
            let neg = cur.eat(b'-');
            let r = cur.unsigned_rational().map_err(err)?;
            Scalar::Rational(if neg { -r } else { r })
        }
        Variant::RatFunc => {
            cur.expect(b'(').map_err(err)?;
            let num = laurent(parse_terms(&mut cur, b'q').map_err(err)?);
            cur.expect(b')').map_err(err)?;
            cur.expect(b'/').map_err(err)?;
            cur.expect(b'(').map_err(err)?;
            let den = laurent(parse_terms(&mut cur, b'q').map_err(err)?);
            cur.expect(b')').map_err(err)?;
            if den.1.is_zero() {
                return Err(err("zero denominator".into()));
            }
            Scalar::RatFunc(RatFunc::from_laurent(num, den))
        }
        Variant::Cyclotomic(n) => {
            let terms = parse_terms(&mut cur, b'z').map_err(err)?;
            let (low, poly) = laurent(terms);
            // negative powers of ζ are ζ^{N-k}
            let shifted = if low < 0 {
                let unit = Cyclotomic::zeta_pow(n, low);
                unit.mul(&Cyclotomic::from_poly(n, poly))
            } else {
                Cyclotomic::from_poly(n, poly)
            };
            Scalar::Cyclotomic(shifted)
        }
        Variant::Float => {
            let inner = text
                .trim()
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| err("expected (re,im)".into()))?;
            let (re, im) = inner.split_once(',').ok_or_else(|| err("expected (re,im)".into()))?;
            let re: f64 = re.trim().parse().map_err(|e| err(format!("{e}")))?;
            let im: f64 = im.trim().parse().map_err(|e| err(format!("{e}")))?;
            return Ok(Scalar::Float(Complex64::new(re, im)));
        }
    };
    if !cur.at_end() {
        return Err(err(format!("trailing input at offset {}", cur.pos)));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    #[test]
    fn parses_rationals() {
        assert_eq!(
            Scalar::parse(Variant::Rational, "-6/4").unwrap(),
            Scalar::Rational(rational(-3, 2))
        );
        assert!(Scalar::parse(Variant::Rational, "1/0").is_err());
        assert!(Scalar::parse(Variant::Rational, "1/2x").is_err());
    }

    #[test]
    fn parses_laurent_ratfunc() {
        let s = Scalar::parse(Variant::RatFunc, "(-1*q^-1 + 1)/(1)").unwrap();
        let expected = Scalar::one(Variant::RatFunc) - Scalar::RatFunc(RatFunc::monomial(rational(1, 1), -1));
        assert_eq!(s, expected);
        // unnormalized input is accepted and canonicalized
        let t = Scalar::parse(Variant::RatFunc, "(-1 + 1*q^2)/(-1 + 1*q^1)").unwrap();
        assert_eq!(t.to_string(), "(1 + 1*q^1)/(1)");
    }

    #[test]
    fn parses_cyclotomic_with_reduction() {
        let s = Scalar::parse(Variant::Cyclotomic(3), "1 + 1*z^1 + 1*z^2").unwrap();
        assert!(s.is_zero());
        let t = Scalar::parse(Variant::Cyclotomic(5), "1*z^-1").unwrap();
        assert_eq!(t, Scalar::Cyclotomic(Cyclotomic::zeta_pow(5, 4)));
    }

    #[test]
    fn float_round_trip_is_bit_exact() {
        let z = Scalar::Float(Complex64::new(0.1 + 0.2, -1e-300));
        let back = Scalar::parse(Variant::Float, &z.to_string()).unwrap();
        assert_eq!(back, z);
    }
}
