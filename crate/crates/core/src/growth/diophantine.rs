//! Continued fractions and the small divisors `g(m) = |1 - e^{2πiθm}|⁻¹`.
//!
//! `|1 - e^{2πix}| = 2|sin(πx)|` depends only on the distance `‖x‖` from `x`
//! to the nearest integer. For continued-fraction input `‖mθ‖` is computed
//! from a convergent `p/q` accurate far beyond the sampled range, with
//! `mp mod q` carried in exact integer arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{fit_line, GrowthClass, GrowthError};
use crate::theta::ThetaSpec;

/// Smallest `M` accepted by [`small_divisor_growth`].
pub const MIN_RANGE: u64 = 1000;
/// `polynomial(d)` tolerance on the fitted exponent.
pub const SLOPE_TOLERANCE: f64 = 0.15;
/// `polynomial(d)` bound on the rms log residual.
pub const RESIDUAL_BOUND: f64 = 0.1;
/// `ln g / m` at the last record above this reads as exponential growth.
pub const EXPONENTIAL_RATE: f64 = 0.05;
/// Slope of `ln ln(q_{k+1}/q_k)` against `k` that raises the super-polynomial flag.
pub const QUOTIENT_FLAG_SLOPE: f64 = 0.3;

fn ser_bigints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn ser_pairs<S: Serializer>(v: &[(BigInt, BigInt)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|(p, q)| format!("{p}/{q}")))
}

/// Partial quotients and convergents `p_k/q_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContinuedFraction {
    pub theta: String,
    #[serde(serialize_with = "ser_bigints")]
    pub quotients: Vec<BigInt>,
    #[serde(serialize_with = "ser_pairs")]
    pub convergents: Vec<(BigInt, BigInt)>,
    /// The expansion ended (θ rational) before the requested length.
    pub terminated: bool,
    /// Float input: quotients are those of the float's exact binary value.
    pub from_float: bool,
}

fn convergents_of(quotients: &[BigInt]) -> Vec<(BigInt, BigInt)> {
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (BigInt::zero(), BigInt::one());
    let mut out = Vec::with_capacity(quotients.len());
    for a in quotients {
        let p = a * &p0 + &p1;
        let q = a * &q0 + &q1;
        p1 = std::mem::replace(&mut p0, p.clone());
        q1 = std::mem::replace(&mut q0, q.clone());
        out.push((p, q));
    }
    out
}

/// Euclid on a rational, at most `terms` quotients.
fn euclid(r: &BigRational, terms: usize) -> (Vec<BigInt>, bool) {
    let (mut n, mut d) = (r.numer().clone(), r.denom().clone());
    let mut out = Vec::new();
    while out.len() < terms {
        let (a, rem) = n.div_mod_floor(&d);
        out.push(a);
        if rem.is_zero() {
            return (out, true);
        }
        n = std::mem::replace(&mut d, rem);
    }
    (out, false)
}

/// Quotient `k` of a listed expansion whose last entry repeats forever.
fn listed_quotient(list: &[BigInt], k: usize) -> BigInt {
    list.get(k).unwrap_or_else(|| list.last().expect("nonempty")).clone()
}

/// The first `terms` partial quotients with their convergents.
///
/// A float is expanded as the exact binary fraction it stores; only the
/// quotients with `q_k² · ulp(θ) < 1/4` are trusted, and asking for more is
/// an error.
pub fn continued_fraction(theta: &ThetaSpec, terms: usize) -> Result<ContinuedFraction, GrowthError> {
    let (quotients, terminated, from_float) = match theta {
        ThetaSpec::Formal => return Err(GrowthError::NotNumeric),
        ThetaSpec::Rational(r) => {
            let (q, t) = euclid(r, terms);
            (q, t, false)
        }
        ThetaSpec::ContinuedFraction(list) => ((0..terms).map(|k| listed_quotient(list, k)).collect(), false, false),
        ThetaSpec::Float(x) => {
            let r = BigRational::from_float(*x).ok_or(GrowthError::NotNumeric)?;
            let (q, t) = euclid(&r, terms);
            let reliable = reliable_float_terms(*x, &q);
            if !t && reliable < terms || t && reliable < q.len() && q.len() < terms {
                return Err(GrowthError::PrecisionExhausted {
                    reliable,
                    requested: terms,
                });
            }
            (q, t, true)
        }
    };
    let convergents = convergents_of(&quotients);
    Ok(ContinuedFraction {
        theta: theta.to_string(),
        quotients,
        convergents,
        terminated,
        from_float: from_float && !terminated,
    })
}

fn reliable_float_terms(x: f64, quotients: &[BigInt]) -> usize {
    let ulp = if x == 0.0 {
        f64::MIN_POSITIVE
    } else {
        (x.abs() * f64::EPSILON).max(f64::MIN_POSITIVE)
    };
    convergents_of(quotients)
        .iter()
        .take_while(|(_, q)| {
            let qf = q.to_f64().unwrap_or(f64::INFINITY);
            qf * qf * ulp < 0.25
        })
        .count()
}

/// How `‖mθ‖` is evaluated.
enum Distance {
    /// `θ ≈ p/q` with `q` far larger than the sampled range requires.
    Exact {
        p: BigInt,
        q: BigInt,
    },
    Float(f64),
}

impl Distance {
    fn for_theta(theta: &ThetaSpec, range: u64) -> Result<Option<Self>, GrowthError> {
        match theta {
            ThetaSpec::Formal => Err(GrowthError::NotNumeric),
            ThetaSpec::Rational(_) => Ok(None),
            ThetaSpec::Float(x) => Ok(Some(Distance::Float(*x))),
            ThetaSpec::ContinuedFraction(list) => {
                // Past the convergent q_J ≤ M < q_{J+1}, go until
                // q_K > 2^64 · M · q_{J+2}; then M/(q_K q_{K+1}) is negligible
                // against ‖mθ‖ ≥ 1/(2 q_{J+1}).
                let m = BigInt::from(range);
                let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
                let (mut p1, mut q1) = (BigInt::zero(), BigInt::one());
                let mut past_range = 0usize;
                let mut bound: Option<BigInt> = None;
                for k in 0.. {
                    let a = listed_quotient(list, k);
                    let p = &a * &p0 + &p1;
                    let q = &a * &q0 + &q1;
                    p1 = std::mem::replace(&mut p0, p);
                    q1 = std::mem::replace(&mut q0, q);
                    if q0 > m {
                        past_range += 1;
                    }
                    if past_range == 2 && bound.is_none() {
                        bound = Some((&m * &q0) << 64);
                    }
                    if let Some(b) = &bound {
                        if &q0 > b {
                            break;
                        }
                    }
                }
                Ok(Some(Distance::Exact { p: p0, q: q0 }))
            }
        }
    }

    /// `g(m)` for `m = 1..=range`.
    fn series(&self, range: u64) -> Vec<f64> {
        const CHUNK: u64 = 4096;
        let chunks: Vec<u64> = (0..range.div_ceil(CHUNK)).collect();
        chunks
            .par_iter()
            .flat_map_iter(|&c| {
                let lo = c * CHUNK + 1;
                let hi = ((c + 1) * CHUNK).min(range);
                let mut out = Vec::with_capacity((hi - lo + 1) as usize);
                match self {
                    Distance::Exact { p, q } => {
                        let step = p.mod_floor(q);
                        let mut r = (BigInt::from(lo) * p).mod_floor(q);
                        for _ in lo..=hi {
                            let other = q - &r;
                            let d = if r < other { &r } else { &other };
                            let x = BigRational::new_raw(d.clone(), q.clone()).to_f64().unwrap_or(0.0);
                            out.push(divisor(x));
                            r += &step;
                            if &r >= q {
                                r -= q;
                            }
                        }
                    }
                    Distance::Float(theta) => {
                        for m in lo..=hi {
                            let mf = m as f64;
                            let prod = mf * theta;
                            let err = mf.mul_add(*theta, -prod);
                            let frac = (prod - prod.round()) + err;
                            let d = (frac - frac.round()).abs();
                            out.push(divisor(d));
                        }
                    }
                }
                out
            })
            .collect()
    }
}

fn divisor(dist: f64) -> f64 {
    1.0 / (2.0 * (std::f64::consts::PI * dist).sin())
}

/// `g(m) = |1 - e^{2πiθm}|⁻¹` for `m = 1..=range`; infinite where `θm ∈ ℤ`.
pub fn small_divisor_series(theta: &ThetaSpec, range: u64) -> Result<Vec<f64>, GrowthError> {
    match Distance::for_theta(theta, range)? {
        Some(d) => Ok(d.series(range)),
        None => {
            let ThetaSpec::Rational(r) = theta else { unreachable!() };
            let (n, d) = (r.numer(), r.denom());
            Ok((1..=range)
                .map(|m| {
                    let num = (BigInt::from(m) * n).mod_floor(d);
                    let near = num.clone().min(d - &num);
                    let x = BigRational::new_raw(near, d.clone()).to_f64().unwrap_or(0.0);
                    if x == 0.0 {
                        f64::INFINITY
                    } else {
                        divisor(x)
                    }
                })
                .collect())
        }
    }
}

/// Which completed algebras keep the Hochschild homology of the polynomial
/// algebra, reading polynomial/subexponential/exponential growth as the
/// conditions for `𝒮`, `𝒮^ω`, `𝒪`. This mapping is interpretive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HhAgreement {
    #[serde(rename = "S")]
    pub s: bool,
    #[serde(rename = "S_omega")]
    pub s_omega: bool,
    #[serde(rename = "O")]
    pub o: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FitSummary {
    pub slope: f64,
    pub residual: f64,
    pub points: usize,
    /// Smallest `m` used in the fit.
    pub from: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DivisorVerdict {
    pub theta: String,
    pub range: u64,
    pub mode: &'static str,
    pub class: GrowthClass,
    pub fit: Option<FitSummary>,
    /// `(m, g(m))` where the running maximum increases: the convergent denominators.
    pub records: Vec<(u64, f64)>,
    /// `max g(m)/m` over the range.
    pub ratio_bound: Option<f64>,
    pub flags: Vec<String>,
    pub hh_agrees: Option<HhAgreement>,
    pub note: String,
}

fn records_of(series: &[f64]) -> Vec<(u64, f64)> {
    let mut best = f64::NEG_INFINITY;
    let mut out = Vec::new();
    for (i, &g) in series.iter().enumerate() {
        if g > best {
            best = g;
            out.push((i as u64 + 1, g));
        }
    }
    out
}

/// Fits `ln G` against `ln m` on the records in the top decade plus the
/// last record below it, widening by decades until three points are in.
fn top_fit(records: &[(u64, f64)], range: u64) -> Option<FitSummary> {
    let mut lo = (range / 10).max(1);
    loop {
        let start = records.iter().position(|&(m, _)| m >= lo).unwrap_or(records.len());
        let first = start.saturating_sub(1);
        let pts: Vec<(f64, f64)> = records[first..]
            .iter()
            .filter(|(m, _)| *m >= 2)
            .map(|&(m, g)| ((m as f64).ln(), g.ln()))
            .collect();
        if pts.len() >= 3 || lo == 1 {
            if pts.len() < 2 {
                return None;
            }
            let (slope, _, residual) = fit_line(&pts);
            return Some(FitSummary {
                slope,
                residual,
                points: pts.len(),
                from: records[first].0.max(2),
            });
        }
        lo = (lo / 10).max(1);
    }
}

fn classify(records: &[(u64, f64)], fit: &Option<FitSummary>) -> GrowthClass {
    if let Some(f) = fit {
        let d = f.slope.round();
        if d >= 0.0 && (f.slope - d).abs() <= SLOPE_TOLERANCE && f.residual <= RESIDUAL_BOUND {
            return GrowthClass::Polynomial(d as u32);
        }
    }
    let tail: Vec<&(u64, f64)> = records.iter().filter(|(m, _)| *m >= 2).collect();
    if tail.len() < 3 {
        return GrowthClass::Inconclusive;
    }
    let rate = |&&(m, g): &&(u64, f64)| g.ln() / m as f64;
    let expo = |&&(m, g): &&(u64, f64)| g.ln() / (m as f64).ln();
    let n = tail.len();
    let (r1, r2) = (rate(&tail[n - 2]), rate(&tail[n - 1]));
    if r2 >= EXPONENTIAL_RATE {
        return if r2 > 1.5 * r1 {
            GrowthClass::SuperExponential
        } else {
            GrowthClass::Exponential
        };
    }
    let e: Vec<f64> = tail[n - 3..].iter().map(expo).collect();
    if e[0] < e[1] && e[1] < e[2] {
        GrowthClass::Subexponential
    } else {
        GrowthClass::Inconclusive
    }
}

/// `ln ln(q_{k+1}/q_k)` rising at least linearly in `k`: partial quotients
/// growing doubly exponentially on the sampled convergents.
fn quotient_flag(records: &[(u64, f64)]) -> bool {
    let pts: Vec<(f64, f64)> = records
        .windows(2)
        .enumerate()
        .filter_map(|(k, w)| {
            let l = (w[1].0 as f64 / w[0].0 as f64).ln();
            (l > 0.0).then(|| (k as f64, l.ln()))
        })
        .collect();
    pts.len() >= 3 && fit_line(&pts).0 >= QUOTIENT_FLAG_SLOPE
}

/// Classifies the growth of `g(m)` for `1 ≤ m ≤ range` at the convergent
/// denominators (where its running maximum jumps).
///
/// * `polynomial(d)`: fitted log-log slope within 0.15 of `d`, rms residual ≤ 0.1;
/// * otherwise `exponential`/`super-exponential` if `ln g/m ≥ 0.05` at the
///   last record, `subexponential` if `ln g/ln m` keeps rising, else `inconclusive`.
///
/// The `super-polynomial` flag is raised when `ln ln(q_{k+1}/q_k)` grows
/// at slope ≥ 0.3 in `k`. Rational θ gives `root-of-unity`.
pub fn small_divisor_growth(theta: &ThetaSpec, range: u64) -> Result<DivisorVerdict, GrowthError> {
    if range < MIN_RANGE {
        return Err(GrowthError::RangeTooSmall { range, min: MIN_RANGE });
    }
    let note = format!("on the sampled range 1 ≤ m ≤ {range}");
    let distance = match Distance::for_theta(theta, range)? {
        Some(d) => d,
        None => {
            return Ok(DivisorVerdict {
                theta: theta.to_string(),
                range,
                mode: "root-of-unity",
                class: GrowthClass::RootOfUnity,
                fit: None,
                records: Vec::new(),
                ratio_bound: None,
                flags: Vec::new(),
                hh_agrees: None,
                note: "θ rational: 1 - e^{2πiθm} vanishes at multiples of the denominator".into(),
            })
        }
    };
    let mode = match distance {
        Distance::Exact { .. } => "exact",
        Distance::Float(_) => "float",
    };
    let series = distance.series(range);
    let records = records_of(&series);
    let fit = top_fit(&records, range);
    let class = classify(&records, &fit);
    let ratio_bound = series
        .iter()
        .enumerate()
        .map(|(i, g)| g / (i as f64 + 1.0))
        .fold(0.0, f64::max);
    let mut flags = Vec::new();
    if quotient_flag(&records) {
        flags.push("super-polynomial".to_string());
    }
    let hh_agrees = match class {
        GrowthClass::Polynomial(_) => Some((true, true, true)),
        GrowthClass::Subexponential => Some((false, true, true)),
        GrowthClass::Exponential => Some((false, false, true)),
        GrowthClass::SuperExponential => Some((false, false, false)),
        _ => None,
    }
    .map(|(s, s_omega, o)| HhAgreement { s, s_omega, o });
    Ok(DivisorVerdict {
        theta: theta.to_string(),
        range,
        mode,
        class,
        fit,
        records,
        ratio_bound: Some(ratio_bound),
        flags,
        hh_agrees,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> ThetaSpec {
        s.parse().unwrap()
    }

    #[test]
    fn euclid_examples() {
        let cf = continued_fraction(&spec("22/7"), 10).unwrap();
        assert_eq!(cf.quotients, vec![BigInt::from(3), BigInt::from(7)]);
        assert!(cf.terminated);
        let cf = continued_fraction(&spec("1/3"), 10).unwrap();
        assert_eq!(cf.quotients, vec![BigInt::from(0), BigInt::from(3)]);
        assert_eq!(cf.convergents.last().unwrap(), &(BigInt::from(1), BigInt::from(3)));
    }

    #[test]
    fn golden_convergents_are_fibonacci() {
        let cf = continued_fraction(&spec("cf:0,1"), 20).unwrap();
        let mut fib = vec![BigInt::from(0), BigInt::from(1)];
        for i in 2..24 {
            let next = &fib[i - 1] + &fib[i - 2];
            fib.push(next);
        }
        for (k, (p, q)) in cf.convergents.iter().enumerate() {
            assert_eq!((p, q), (&fib[k], &fib[k + 1]));
        }
    }

    #[test]
    fn float_precision_budget() {
        assert!(continued_fraction(&spec("float:0.6180339887498949"), 10).is_ok());
        assert!(matches!(
            continued_fraction(&spec("float:0.6180339887498949"), 60),
            Err(GrowthError::PrecisionExhausted { .. })
        ));
        let cf = continued_fraction(&spec("float:0.25"), 10).unwrap();
        assert!(cf.terminated);
        assert!(matches!(
            continued_fraction(&spec("formal"), 3),
            Err(GrowthError::NotNumeric)
        ));
    }

    #[test]
    fn records_are_convergent_denominators() {
        let series = small_divisor_series(&spec("cf:0,1"), 5000).unwrap();
        let ms: Vec<u64> = records_of(&series).iter().map(|r| r.0).collect();
        assert_eq!(
            ms,
            vec![1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610, 987, 1597, 2584, 4181]
        );
    }

    #[test]
    fn exact_and_float_agree() {
        let exact = small_divisor_series(&spec("cf:0,1"), 2000).unwrap();
        let float = small_divisor_series(&spec("float:0.6180339887498949"), 2000).unwrap();
        for (a, b) in exact.iter().zip(&float) {
            assert!((a - b).abs() / a < 1e-9);
        }
    }

    #[test]
    fn rational_theta() {
        let v = small_divisor_growth(&spec("1/2"), 1000).unwrap();
        assert_eq!(v.class, GrowthClass::RootOfUnity);
        let s = small_divisor_series(&spec("1/2"), 4).unwrap();
        assert!(s[1].is_infinite() && (s[0] - 0.5).abs() < 1e-12);
        assert!(matches!(
            small_divisor_growth(&spec("cf:0,1"), 10),
            Err(GrowthError::RangeTooSmall { .. })
        ));
    }

    #[test]
    fn golden_is_linear() {
        let v = small_divisor_growth(&spec("cf:0,1"), 100_000).unwrap();
        assert_eq!(v.class, GrowthClass::Polynomial(1));
        assert!(v.flags.is_empty());
        assert!(v.ratio_bound.unwrap() < 1.0);
    }

    #[test]
    fn squared_quotients_raise_the_flag() {
        let v = small_divisor_growth(&spec("cf:0,2,4,16,256,65536"), 100_000).unwrap();
        assert_eq!(
            v.records.iter().map(|r| r.0).collect::<Vec<_>>(),
            vec![1, 2, 9, 146, 37385]
        );
        assert_eq!(v.flags, vec!["super-polynomial".to_string()]);
        assert_eq!(v.class, GrowthClass::Polynomial(2));
    }
}
