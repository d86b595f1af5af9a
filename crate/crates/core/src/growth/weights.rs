//! Weight functions, submultiplicativity, and the compatibility inequality
//!
//! ```text
//! w(f_j(g)) · w(f_j(g)⁻¹h) ≤ w̄(g) · w̄(g⁻¹h)
//! ```
//!
//! for the straight-line combing of `ℤⁿ`. Exponential weights are compared
//! through their exact rational logarithms.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{group_ball, lattice_ball, GrowthError};
use crate::groupalg::{Group, GroupElement};

/// A positive function on a group.
#[derive(Clone)]
pub enum Weight {
    /// `(ℓ + 1)^k`.
    Polynomial { k: u32 },
    /// `exp(a · x)` on `ℤⁿ`; a homomorphism to `(ℝ_{>0}, ·)`.
    Exponential { a: Vec<BigRational> },
    /// `exp(c · ℓ)`.
    LengthExponential { c: BigRational },
    /// Any rational-valued function.
    Custom {
        name: String,
        f: Arc<dyn Fn(&GroupElement) -> BigRational + Send + Sync>,
    },
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Weight {
    pub fn polynomial(k: u32) -> Self {
        Weight::Polynomial { k }
    }

    /// `exp(a · x)` with integer coefficients.
    pub fn exponential(a: &[i64]) -> Self {
        Weight::Exponential {
            a: a.iter().map(|&x| BigRational::from_integer(x.into())).collect(),
        }
    }

    pub fn custom(name: impl Into<String>, f: impl Fn(&GroupElement) -> BigRational + Send + Sync + 'static) -> Self {
        Weight::Custom {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Weight::Polynomial { k } => format!("(l+1)^{k}"),
            Weight::Exponential { a } => {
                let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
                format!("exp(({})·x)", parts.join(","))
            }
            Weight::LengthExponential { c } => format!("exp({c}·l)"),
            Weight::Custom { name, .. } => name.clone(),
        }
    }

    pub fn eval(&self, g: &GroupElement) -> Result<WeightValue, GrowthError> {
        let value = match self {
            Weight::Polynomial { k } => {
                WeightValue::Exact(BigRational::from_integer(BigInt::from(g.length() + 1).pow(*k)))
            }
            Weight::Exponential { a } => match g {
                GroupElement::Lattice(x) if x.len() == a.len() => WeightValue::Exp(
                    a.iter()
                        .zip(x)
                        .map(|(c, &xi)| c * BigRational::from_integer(xi.into()))
                        .fold(BigRational::zero(), |s, t| s + t),
                ),
                _ => {
                    return Err(GrowthError::WrongGroup {
                        weight: self.name(),
                        group: group_of(g),
                    })
                }
            },
            Weight::LengthExponential { c } => WeightValue::Exp(c * BigRational::from_integer(g.length().into())),
            Weight::Custom { f, .. } => WeightValue::Exact(f(g)),
        };
        if let WeightValue::Exact(v) = &value {
            if !v.is_positive() {
                return Err(GrowthError::NonPositive {
                    name: self.name(),
                    at: g.to_string(),
                });
            }
        }
        Ok(value)
    }
}

fn group_of(g: &GroupElement) -> Group {
    match g {
        GroupElement::Free(w) => Group::Free {
            rank: w.max_generator().max(1),
        },
        GroupElement::Lattice(x) => Group::Lattice { dim: x.len() as u32 },
    }
}

/// An exact positive real: a rational, or `e^L` with `L` rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightValue {
    Exact(BigRational),
    Exp(BigRational),
}

impl fmt::Display for WeightValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightValue::Exact(v) => write!(f, "{v}"),
            WeightValue::Exp(l) => write!(f, "exp({l})"),
        }
    }
}

impl WeightValue {
    pub fn mul(&self, other: &Self) -> Result<Self, GrowthError> {
        match (self, other) {
            (WeightValue::Exact(a), WeightValue::Exact(b)) => Ok(WeightValue::Exact(a * b)),
            (WeightValue::Exp(a), WeightValue::Exp(b)) => Ok(WeightValue::Exp(a + b)),
            _ => Err(GrowthError::InexactComparison(format!("{self} · {other}"))),
        }
    }

    pub fn compare(&self, other: &Self) -> Result<Ordering, GrowthError> {
        match (self, other) {
            (WeightValue::Exact(a), WeightValue::Exact(b)) => Ok(a.cmp(b)),
            (WeightValue::Exp(a), WeightValue::Exp(b)) => Ok(a.cmp(b)),
            _ => Err(GrowthError::InexactComparison(format!("{self} vs {other}"))),
        }
    }
}

/// A finite combination `Σ c_i w_i` with `c_i ≥ 0`.
#[derive(Clone, Debug)]
pub struct WeightCombination(pub Vec<(BigRational, Weight)>);

impl WeightCombination {
    pub fn single(w: Weight) -> Self {
        WeightCombination(vec![(BigRational::one(), w)])
    }

    pub fn name(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|(c, w)| format!("{c}·{}", w.name())).collect();
        parts.join(" + ")
    }

    /// Sums exactly when every term is rational-valued; an exponential term
    /// must stand alone with coefficient 1.
    pub fn eval(&self, g: &GroupElement) -> Result<WeightValue, GrowthError> {
        if let [(c, w)] = self.0.as_slice() {
            let v = w.eval(g)?;
            return match v {
                WeightValue::Exp(_) if !c.is_one() => Err(GrowthError::InexactComparison(self.name())),
                WeightValue::Exp(_) => Ok(v),
                WeightValue::Exact(x) => Ok(WeightValue::Exact(c * x)),
            };
        }
        let mut total = BigRational::zero();
        for (c, w) in &self.0 {
            match w.eval(g)? {
                WeightValue::Exact(x) => total += c * x,
                WeightValue::Exp(_) => return Err(GrowthError::InexactComparison(self.name())),
            }
        }
        Ok(WeightValue::Exact(total))
    }
}

/// Outcome of the exhaustive `w(gh) ≤ w(g) w(h)` check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubmultReport {
    pub weight: String,
    pub radius: u64,
    pub pairs_checked: u64,
    pub passed: bool,
    /// `w(gh) = w(g) w(h)` on every checked pair.
    pub equality_everywhere: bool,
    /// First violating `(g, h)` in ball order.
    pub witness: Option<(String, String)>,
}

/// Checks all pairs with `ℓ(g), ℓ(h) ≤ radius`.
pub fn is_submultiplicative(w: &Weight, group: Group, radius: u64) -> Result<SubmultReport, GrowthError> {
    let elements = group_ball(group, radius);
    let values: Vec<WeightValue> = elements.iter().map(|g| w.eval(g)).collect::<Result<_, _>>()?;
    let mut pairs = 0u64;
    let mut equality = true;
    for (g, wg) in elements.iter().zip(&values) {
        for (h, wh) in elements.iter().zip(&values) {
            pairs += 1;
            let lhs = w.eval(&g.mul(h))?;
            match lhs.compare(&wg.mul(wh)?)? {
                Ordering::Greater => {
                    return Ok(SubmultReport {
                        weight: w.name(),
                        radius,
                        pairs_checked: pairs,
                        passed: false,
                        equality_everywhere: false,
                        witness: Some((g.to_string(), h.to_string())),
                    })
                }
                Ordering::Less => equality = false,
                Ordering::Equal => {}
            }
        }
    }
    Ok(SubmultReport {
        weight: w.name(),
        radius,
        pairs_checked: pairs,
        passed: true,
        equality_everywhere: equality,
        witness: None,
    })
}

/// The `j`-th vertex of the straight-line path from `0` to `g` in `ℤⁿ`.
///
/// Each step adds a unit in the coordinate whose magnitude lags furthest
/// behind `j·|g_i|/ℓ(g)` (lowest index on ties), so the path is monotone,
/// `ℓ(f_j(g)) = min(j, ℓ(g))`, and `f_j(g) = g` once `j ≥ ℓ(g)`.
pub fn combing_straightline(g: &[i64], j: u64) -> Vec<i64> {
    let len: u64 = g.iter().map(|x| x.unsigned_abs()).sum();
    if j >= len {
        return g.to_vec();
    }
    let mags: Vec<i128> = g.iter().map(|x| x.unsigned_abs() as i128).collect();
    let len = len as i128;
    let mut cur = vec![0i128; g.len()];
    for step in 1..=j as i128 {
        // Lag scaled by ℓ: step·|g_i| - cur_i·ℓ. `max_by_key` keeps the last
        // maximum, so scan indices in reverse to prefer the lowest one.
        let best = (0..g.len())
            .rev()
            .filter(|&i| cur[i] < mags[i])
            .max_by_key(|&i| step * mags[i] - cur[i] * len)
            .expect("a coordinate still has room before the endpoint");
        cur[best] += 1;
    }
    cur.iter()
        .zip(g)
        .map(|(&c, &x)| if x < 0 { -(c as i64) } else { c as i64 })
        .collect()
}

/// A failing instance of the compatibility inequality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CombingWitness {
    pub weight: String,
    pub g: Vec<i64>,
    pub h: Vec<i64>,
    pub j: u64,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CombingReport {
    pub dim: u32,
    pub radius: u64,
    pub steps: u64,
    pub checks: u64,
    pub passed: bool,
    pub equality_everywhere: bool,
    /// Weights that fail submultiplicativity on the range (a precondition).
    pub not_submultiplicative: Vec<String>,
    pub witness: Option<CombingWitness>,
}

/// Exhaustive check over `ℓ(g), ℓ(h) ≤ radius`, `0 ≤ j ≤ steps`, for each
/// pair `(w, w̄(w))`.
pub fn check_combing_compatibility(
    dim: u32,
    pairs: &[(Weight, WeightCombination)],
    radius: u64,
    steps: u64,
) -> Result<CombingReport, GrowthError> {
    let group = Group::Lattice { dim };
    let mut not_submult = Vec::new();
    for (w, _) in pairs {
        if !is_submultiplicative(w, group, radius)?.passed {
            not_submult.push(w.name());
        }
    }
    let points = lattice_ball(dim, radius);
    let far = lattice_ball(dim, 2 * radius);
    let mut checks = 0u64;
    let mut equality = true;
    for (w, wbar) in pairs {
        let mut wv = HashMap::new();
        let mut wbv = HashMap::new();
        for p in &far {
            let e = GroupElement::Lattice(p.clone());
            wv.insert(p.clone(), w.eval(&e)?);
            wbv.insert(p.clone(), wbar.eval(&e)?);
        }
        let diff = |a: &[i64], b: &[i64]| -> Vec<i64> { a.iter().zip(b).map(|(x, y)| y - x).collect() };
        for g in &points {
            let rhs_g = &wbv[g];
            for h in &points {
                let rhs = rhs_g.mul(&wbv[&diff(g, h)])?;
                for j in 0..=steps {
                    checks += 1;
                    let f = combing_straightline(g, j);
                    let lhs = wv[&f].mul(&wv[&diff(&f, h)])?;
                    match lhs.compare(&rhs)? {
                        Ordering::Greater => {
                            return Ok(CombingReport {
                                dim,
                                radius,
                                steps,
                                checks,
                                passed: false,
                                equality_everywhere: false,
                                not_submultiplicative: not_submult,
                                witness: Some(CombingWitness {
                                    weight: w.name(),
                                    g: g.clone(),
                                    h: h.clone(),
                                    j,
                                    lhs: lhs.to_string(),
                                    rhs: rhs.to_string(),
                                }),
                            })
                        }
                        Ordering::Less => equality = false,
                        Ordering::Equal => {}
                    }
                }
            }
        }
    }
    Ok(CombingReport {
        dim,
        radius,
        steps,
        checks,
        passed: not_submult.is_empty(),
        equality_everywhere: equality,
        not_submultiplicative: not_submult,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z2: Group = Group::Lattice { dim: 2 };

    #[test]
    fn submultiplicative_examples() {
        let hom = is_submultiplicative(&Weight::exponential(&[1, -2]), Z2, 3).unwrap();
        assert!(hom.passed && hom.equality_everywhere);
        let poly = is_submultiplicative(&Weight::polynomial(2), Z2, 4).unwrap();
        assert!(poly.passed && !poly.equality_everywhere);
        let recip = Weight::custom("1/(l+1)", |g| BigRational::new(1.into(), BigInt::from(g.length() + 1)));
        let rep = is_submultiplicative(&recip, Z2, 2).unwrap();
        assert!(!rep.passed);
        let (g, h) = rep.witness.unwrap();
        let parse = |s: &str| -> Vec<i64> {
            s.trim_matches(|c| c == '(' || c == ')')
                .split(',')
                .map(|t| t.parse().unwrap())
                .collect()
        };
        let (g, h) = (parse(&g), parse(&h));
        let len = |x: &[i64]| x.iter().map(|c| c.unsigned_abs()).sum::<u64>() + 1;
        let gh: Vec<i64> = g.iter().zip(&h).map(|(a, b)| a + b).collect();
        assert!(len(&g) * len(&h) > len(&gh), "1/(|gh|+1) > 1/((|g|+1)(|h|+1))");
    }

    #[test]
    fn exponential_needs_lattice() {
        let w = Weight::exponential(&[1]);
        let e = GroupElement::Free(Default::default());
        assert!(matches!(w.eval(&e), Err(GrowthError::WrongGroup { .. })));
    }

    #[test]
    fn combing_points() {
        assert_eq!(combing_straightline(&[3, 0], 2), vec![2, 0]);
        assert_eq!(combing_straightline(&[2, 2], 2), vec![1, 1]);
        assert_eq!(combing_straightline(&[2, -2], 2), vec![1, -1]);
        assert_eq!(combing_straightline(&[1, 3, 3], 3), vec![1, 1, 1]);
        assert_eq!(combing_straightline(&[1, 3, 3], 4), vec![1, 2, 1]);
        assert_eq!(combing_straightline(&[4, -1], 9), vec![4, -1]);
    }

    #[test]
    fn combing_paths_are_monotone_unit_steps() {
        for g in lattice_ball(3, 5) {
            let len: u64 = g.iter().map(|x| x.unsigned_abs()).sum();
            let mut prev = vec![0; 3];
            for j in 1..=len + 2 {
                let f = combing_straightline(&g, j);
                let step: u64 = f.iter().zip(&prev).map(|(a, b)| (a - b).unsigned_abs()).sum();
                assert_eq!(step, u64::from(j <= len), "g={g:?} j={j}");
                let fl: u64 = f.iter().map(|x| x.unsigned_abs()).sum();
                assert_eq!(fl, j.min(len));
                prev = f;
            }
        }
    }

    #[test]
    fn compatibility_cases() {
        let hom: Vec<_> = [[1, 0], [0, -1], [2, 3]]
            .iter()
            .map(|a| {
                (
                    Weight::exponential(a),
                    WeightCombination::single(Weight::exponential(a)),
                )
            })
            .collect();
        let rep = check_combing_compatibility(2, &hom, 3, 6).unwrap();
        assert!(rep.passed && rep.equality_everywhere);

        let poly = vec![(Weight::polynomial(1), WeightCombination::single(Weight::polynomial(2)))];
        assert!(check_combing_compatibility(2, &poly, 3, 6).unwrap().passed);

        let wrong = vec![(Weight::polynomial(1), WeightCombination::single(Weight::polynomial(1)))];
        let rep = check_combing_compatibility(2, &wrong, 3, 6).unwrap();
        assert!(!rep.passed && rep.witness.is_some());
    }
}
