//! Norm growth of representations `ℤⁿ → GL(V)` given by commuting generators.
//!
//! A representation is a bounded module over `ℓ₁(ℤⁿ, (ℓ+1)^k)` exactly when
//! `‖A^x‖ = O((ℓ(x)+1)^k)`. Powers are formed exactly; norms are `∞`-norms
//! (maximal absolute row sum) and carried as logarithms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{fit_line, GrowthClass, GrowthError};

/// Log-linear slope of `ln N(n)` above which growth counts as exponential.
pub const EXPONENTIAL_RATE: f64 = 0.01;

/// Dense square matrix over `ℚ`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn new(rows: Vec<Vec<BigRational>>) -> Result<Self, GrowthError> {
        let n = rows.len();
        if n == 0 {
            return Err(GrowthError::BadMatrix("empty matrix".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(GrowthError::BadMatrix("matrix is not square".into()));
        }
        Ok(RationalMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigRational::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigRational::one();
        }
        RationalMatrix { n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut entries = vec![BigRational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        entries[i * n + j] += a * b;
                    }
                }
            }
        }
        RationalMatrix { n, entries }
    }

    /// Gauss-Jordan; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = RationalMatrix::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a.get(r, c).is_zero())?;
            for j in 0..n {
                a.entries.swap(c * n + j, p * n + j);
                inv.entries.swap(c * n + j, p * n + j);
            }
            let pivot = a.get(c, c).recip();
            for j in 0..n {
                a.entries[c * n + j] *= &pivot;
                inv.entries[c * n + j] *= &pivot;
            }
            for r in 0..n {
                let f = a.get(r, c).clone();
                if r == c || f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let (x, y) = (a.get(c, j) * &f, inv.get(c, j) * &f);
                    a.entries[r * n + j] -= x;
                    inv.entries[r * n + j] -= y;
                }
            }
        }
        Some(inv)
    }

    /// Maximal absolute row sum.
    pub fn inf_norm(&self) -> BigRational {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.get(i, j).abs())
                    .fold(BigRational::zero(), |s, x| s + x)
            })
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

/// Parses `[[1,1],[0,1]]`; entries are integers or `"p/q"` strings.
pub fn parse_matrix(text: &str) -> Result<RationalMatrix, GrowthError> {
    let bad = |m: String| GrowthError::BadMatrix(m);
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    let rows = value
        .as_array()
        .ok_or_else(|| bad("expected an array of rows".into()))?;
    let rows = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| bad("expected each row to be an array".into()))?
                .iter()
                .map(entry)
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    RationalMatrix::new(rows)
}

fn entry(v: &serde_json::Value) -> Result<BigRational, GrowthError> {
    let text = match v {
        serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        serde_json::Value::String(s) => s.trim().to_string(),
        other => {
            return Err(GrowthError::BadMatrix(format!(
                "entry {other} is not an integer or \"p/q\""
            )))
        }
    };
    let (p, q) = text.split_once('/').unwrap_or((&text, "1"));
    let p: BigInt = p
        .trim()
        .parse()
        .map_err(|_| GrowthError::BadMatrix(format!("bad entry {text:?}")))?;
    let q: BigInt = q
        .trim()
        .parse()
        .map_err(|_| GrowthError::BadMatrix(format!("bad entry {text:?}")))?;
    if q.is_zero() {
        return Err(GrowthError::BadMatrix(format!("zero denominator in {text:?}")));
    }
    Ok(BigRational::new(p, q))
}

/// `ln` of a positive rational, good to about 1e-15 relative at any size.
fn ln_rational(r: &BigRational) -> f64 {
    ln_bigint(r.numer()) - ln_bigint(r.denom())
}

fn ln_bigint(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return (num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)).abs().ln();
    }
    let shift = bits - 64;
    let top: BigInt = x.abs() >> shift;
    num_traits::ToPrimitive::to_f64(&top).unwrap_or(f64::NAN).ln() + shift as f64 * std::f64::consts::LN_2
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RepGrowth {
    pub generators: usize,
    pub range: u64,
    /// Fitted `k` in `N(n) ≈ C (n+1)^k` over the top decade.
    pub exponent: f64,
    pub fit_residual: f64,
    /// Slope of `ln N(n)` against `n` over the top decade.
    pub log_linear_rate: f64,
    pub class: GrowthClass,
    /// Least `k` with `N(n) = O((n+1)^k)` on the sample.
    pub tempered_k: Option<u32>,
    pub verdict: String,
    /// `(n, ln N(n))` for `n = 0..=range`, `N(n) = max ‖A_i^{±n}‖_∞`.
    #[serde(skip)]
    pub series: Vec<(u64, f64)>,
    pub note: String,
}

fn superscript(k: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    k.to_string()
        .chars()
        .map(|c| DIGITS[c as usize - '0' as usize])
        .collect()
}

/// Growth of `N(n) = max_{i,±} ‖A_i^{±n}‖_∞` for `0 ≤ n ≤ range`.
pub fn matrix_rep_growth(generators: &[RationalMatrix], range: u64) -> Result<RepGrowth, GrowthError> {
    if generators.is_empty() {
        return Err(GrowthError::BadMatrix("no generators".into()));
    }
    if range < 10 {
        return Err(GrowthError::RangeTooSmall { range, min: 10 });
    }
    let size = generators[0].size();
    if generators.iter().any(|g| g.size() != size) {
        return Err(GrowthError::BadMatrix("generators have different sizes".into()));
    }
    for (a, ga) in generators.iter().enumerate() {
        for (b, gb) in generators.iter().enumerate().skip(a + 1) {
            if ga.mul(gb) != gb.mul(ga) {
                return Err(GrowthError::NotCommuting { a, b });
            }
        }
    }
    let mut steps = Vec::with_capacity(2 * generators.len());
    for (index, g) in generators.iter().enumerate() {
        let inv = g.inverse().ok_or(GrowthError::SingularGenerator { index })?;
        steps.push(g.clone());
        steps.push(inv);
    }
    let mut log_norm = vec![f64::NEG_INFINITY; range as usize + 1];
    for step in &steps {
        let mut power = RationalMatrix::identity(size);
        for slot in log_norm.iter_mut() {
            *slot = slot.max(ln_rational(&power.inf_norm()));
            power = power.mul(step);
        }
    }
    let series: Vec<(u64, f64)> = log_norm.iter().enumerate().map(|(n, &v)| (n as u64, v)).collect();

    let lo = (range / 10).max(1);
    let top = &series[lo as usize..];
    let log_log: Vec<(f64, f64)> = top.iter().map(|&(n, v)| (((n + 1) as f64).ln(), v)).collect();
    let (exponent, _, fit_residual) = fit_line(&log_log);
    let lin: Vec<(f64, f64)> = top.iter().map(|&(n, v)| (n as f64, v)).collect();
    let (log_linear_rate, _, _) = fit_line(&lin);

    let (class, tempered_k) = if log_linear_rate > EXPONENTIAL_RATE {
        (GrowthClass::Exponential, None)
    } else {
        let k = (exponent - 0.15).ceil().max(0.0) as u32;
        (GrowthClass::Polynomial(k), Some(k))
    };
    let verdict = match tempered_k {
        Some(0) => "ℓ₁-tempered".to_string(),
        Some(k) => format!("𝒮{}-tempered, not ℓ₁-tempered", superscript(k)),
        None => "not 𝒮^k-tempered for any k".to_string(),
    };
    Ok(RepGrowth {
        generators: generators.len(),
        range,
        exponent,
        fit_residual,
        log_linear_rate,
        class,
        tempered_k,
        verdict,
        series,
        note: format!("on the sampled range n ≤ {range}, fit over n ≥ {lo}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        let m = parse_matrix(r#"[[2,"1/2"],[0,"-3/4"]]"#).unwrap();
        assert_eq!(m.get(0, 1), &BigRational::new(1.into(), 2.into()));
        assert_eq!(m.inf_norm(), BigRational::new(5.into(), 2.into()));
        assert!(parse_matrix("[[1,2]]").is_err());
        assert!(parse_matrix(r#"[["1/0"]]"#).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = parse_matrix(r#"[[2,1,0],[1,1,0],[0,"1/3",5]]"#).unwrap();
        assert_eq!(m.mul(&m.inverse().unwrap()), RationalMatrix::identity(3));
        assert!(parse_matrix("[[1,2],[2,4]]").unwrap().inverse().is_none());
    }

    #[test]
    fn unipotent_is_linear() {
        let g = parse_matrix("[[1,1],[0,1]]").unwrap();
        let r = matrix_rep_growth(&[g], 2000).unwrap();
        assert!((r.exponent - 1.0).abs() < 0.1);
        assert_eq!(r.verdict, "𝒮¹-tempered, not ℓ₁-tempered");
        assert!((r.series[7].1 - 8f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn identity_and_hyperbolic() {
        let r = matrix_rep_growth(&[RationalMatrix::identity(2)], 100).unwrap();
        assert_eq!(r.tempered_k, Some(0));
        assert_eq!(r.verdict, "ℓ₁-tempered");
        let h = parse_matrix(r#"[[2,0],[0,"1/2"]]"#).unwrap();
        let r = matrix_rep_growth(&[h], 3000).unwrap();
        assert_eq!(r.class, GrowthClass::Exponential);
        assert!((r.series[3000].1 - 3000.0 * std::f64::consts::LN_2).abs() < 1e-9);
        assert_eq!(r.verdict, "not 𝒮^k-tempered for any k");
    }

    #[test]
    fn errors() {
        let s = parse_matrix("[[1,0],[0,0]]").unwrap();
        assert_eq!(
            matrix_rep_growth(&[s], 100),
            Err(GrowthError::SingularGenerator { index: 0 })
        );
        let a = parse_matrix("[[1,1],[0,1]]").unwrap();
        let b = parse_matrix("[[1,0],[1,1]]").unwrap();
        assert_eq!(
            matrix_rep_growth(&[a, b], 100),
            Err(GrowthError::NotCommuting { a: 0, b: 1 })
        );
    }
}
