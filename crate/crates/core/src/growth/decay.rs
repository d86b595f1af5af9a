//! Decay classes of sampled functions on a group.
//!
//! `𝒮`: `Σ|f|(ℓ+1)^k < ∞` for every `k`; `𝒮^ω`: `Σ|f|α^ℓ < ∞` for some
//! `α > 1`; `𝒪`: for every `α > 1`. All three only see the radial sums
//! `S(ℓ) = Σ_{ℓ(g)=ℓ} |f(g)|`, so the fits are done on those.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::{fit_line, GrowthError};
use crate::groupalg::GroupElement;

/// Shortest radius accepted.
pub const MIN_RADIUS: u64 = 16;
/// Quadratic coefficient of `ln S(ℓ)` below this reads as super-exponential decay.
pub const CURVATURE_BOUND: f64 = -0.02;
/// Log-linear slope below this reads as exponential decay.
pub const EXPONENTIAL_SLOPE: f64 = -0.05;
/// Largest rms residual of an accepted fit.
pub const FIT_RESIDUAL: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchwartzClass {
    S,
    SOmega,
    O,
}

impl fmt::Display for SchwartzClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SchwartzClass::S => "S",
            SchwartzClass::SOmega => "S_omega",
            SchwartzClass::O => "O",
        })
    }
}

impl FromStr for SchwartzClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "S" | "s" => Ok(SchwartzClass::S),
            "S_omega" | "S^omega" | "somega" => Ok(SchwartzClass::SOmega),
            "O" | "o" => Ok(SchwartzClass::O),
            _ => Err(format!("unknown class {s:?}; expected S, S_omega or O")),
        }
    }
}

impl Serialize for SchwartzClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Observed decay of the radial sums.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DecayClass {
    FiniteSupport,
    SuperExponential,
    /// `S(ℓ) ≈ C e^{-rate·ℓ}`.
    Exponential {
        rate: f64,
    },
    /// `S(ℓ) ≈ C (ℓ+1)^{-p}`.
    Polynomial {
        p: f64,
    },
    NotDecaying,
    Inconclusive,
}

impl fmt::Display for DecayClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecayClass::FiniteSupport => f.write_str("finite-support"),
            DecayClass::SuperExponential => f.write_str("super-exponential"),
            DecayClass::Exponential { rate } => write!(f, "exponential(rate {rate:.4})"),
            DecayClass::Polynomial { p } => write!(f, "polynomial(exponent {p:.4})"),
            DecayClass::NotDecaying => f.write_str("not-decaying"),
            DecayClass::Inconclusive => f.write_str("inconclusive"),
        }
    }
}

impl Serialize for DecayClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl DecayClass {
    /// Whether the observed decay is consistent with membership; `None` when undecided.
    pub fn consistent_with(self, class: SchwartzClass) -> Option<bool> {
        match self {
            DecayClass::FiniteSupport | DecayClass::SuperExponential => Some(true),
            DecayClass::Exponential { .. } => Some(class != SchwartzClass::O),
            DecayClass::Polynomial { .. } | DecayClass::NotDecaying => Some(false),
            DecayClass::Inconclusive => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecayFit {
    /// `log-linear`, `log-log` or `quadratic`.
    pub model: &'static str,
    pub slope: f64,
    /// Coefficient of `ℓ²` for the quadratic model.
    pub curvature: Option<f64>,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MembershipVerdict {
    pub class: SchwartzClass,
    pub consistent: Option<bool>,
    pub decay: DecayClass,
    pub fits: Vec<DecayFit>,
    /// For polynomial decay: the largest `k` with `Σ S(ℓ)(ℓ+1)^k` convergent.
    pub max_weight_exponent: Option<u32>,
    /// For exponential decay: `ℓ₁(α^ℓ)` membership holds for `α` below this.
    pub alpha_bound: Option<f64>,
    pub radius: u64,
    pub radial_sums: Vec<f64>,
    pub note: String,
}

/// Aggregates `|f|` over spheres and classifies.
pub fn schwartz_membership(
    samples: &[(GroupElement, f64)],
    class: SchwartzClass,
) -> Result<MembershipVerdict, GrowthError> {
    let mut sums: BTreeMap<u64, f64> = BTreeMap::new();
    for (g, v) in samples {
        *sums.entry(g.length()).or_default() += v.abs();
    }
    let radius = sums.keys().next_back().copied().unwrap_or(0);
    let radial: Vec<f64> = (0..=radius).map(|l| sums.get(&l).copied().unwrap_or(0.0)).collect();
    schwartz_membership_radial(&radial, class)
}

/// Classifies from radial sums `S(0), …, S(R)`.
pub fn schwartz_membership_radial(radial: &[f64], class: SchwartzClass) -> Result<MembershipVerdict, GrowthError> {
    let radius = radial.len().saturating_sub(1) as u64;
    if radius < MIN_RADIUS {
        return Err(GrowthError::InsufficientRange {
            radius,
            min: MIN_RADIUS,
        });
    }
    let radial: Vec<f64> = radial.iter().map(|v| v.abs()).collect();
    let half = (radius / 2) as usize;
    let (decay, fits) = classify(&radial[half..], half);
    let max_weight_exponent = match decay {
        DecayClass::Polynomial { p } if p > 1.0 => Some((p - 1.0).ceil() as u32 - 1),
        _ => None,
    };
    let alpha_bound = match decay {
        DecayClass::Exponential { rate } => Some(rate.exp()),
        _ => None,
    };
    Ok(MembershipVerdict {
        class,
        consistent: decay.consistent_with(class),
        decay,
        fits,
        max_weight_exponent,
        alpha_bound,
        radius,
        radial_sums: radial,
        note: format!("decay rates on the sampled range ℓ ≤ {radius}; no claim about the infinite sum"),
    })
}

fn classify(top: &[f64], offset: usize) -> (DecayClass, Vec<DecayFit>) {
    if top[1..].iter().all(|&v| v == 0.0) {
        return (DecayClass::FiniteSupport, Vec::new());
    }
    let pts: Vec<(f64, f64)> = top
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0.0)
        .map(|(i, &v)| ((i + offset) as f64, v.ln()))
        .collect();
    if pts.len() < 4 {
        return (DecayClass::Inconclusive, Vec::new());
    }
    let (lin_slope, _, lin_res) = fit_line(&pts);
    let log_pts: Vec<(f64, f64)> = pts.iter().map(|&(l, y)| ((l + 1.0).ln(), y)).collect();
    let (log_slope, _, log_res) = fit_line(&log_pts);
    let (quad_slope, curvature, quad_res) = fit_quadratic(&pts);
    let fits = vec![
        DecayFit {
            model: "log-linear",
            slope: lin_slope,
            curvature: None,
            residual: lin_res,
        },
        DecayFit {
            model: "log-log",
            slope: log_slope,
            curvature: None,
            residual: log_res,
        },
        DecayFit {
            model: "quadratic",
            slope: quad_slope,
            curvature: Some(curvature),
            residual: quad_res,
        },
    ];
    let decay = if curvature < CURVATURE_BOUND && quad_res <= FIT_RESIDUAL {
        DecayClass::SuperExponential
    } else if lin_slope >= 0.0 {
        DecayClass::NotDecaying
    } else {
        let exp_ok = lin_slope < EXPONENTIAL_SLOPE && lin_res <= FIT_RESIDUAL;
        let poly_ok = log_res <= FIT_RESIDUAL;
        match (exp_ok, poly_ok) {
            (true, false) => DecayClass::Exponential { rate: -lin_slope },
            (true, true) if lin_res < log_res => DecayClass::Exponential { rate: -lin_slope },
            (_, true) => DecayClass::Polynomial { p: -log_slope },
            _ => DecayClass::Inconclusive,
        }
    };
    (decay, fits)
}

/// Least squares `y ≈ a + b x + c x²` about the mean of `x`; returns
/// `(slope at the mean, c, rms residual)`.
fn fit_quadratic(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mut m = [[0.0f64; 3]; 3];
    let mut r = [0.0f64; 3];
    for &(x, y) in points {
        let t = x - mx;
        let basis = [1.0, t, t * t];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += basis[i] * basis[j];
            }
            r[i] += basis[i] * y;
        }
    }
    let coef = solve3(m, r);
    let rss: f64 = points
        .iter()
        .map(|&(x, y)| {
            let t = x - mx;
            (y - coef[0] - coef[1] * t - coef[2] * t * t).powi(2)
        })
        .sum();
    (coef[1], coef[2], (rss / n).sqrt())
}

fn solve3(mut m: [[f64; 3]; 3], mut r: [f64; 3]) -> [f64; 3] {
    for c in 0..3 {
        let p = (c..3).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())).unwrap();
        m.swap(c, p);
        r.swap(c, p);
        for i in c + 1..3 {
            let f = m[i][c] / m[c][c];
            let pivot_row = m[c];
            for (x, p) in m[i].iter_mut().zip(pivot_row).skip(c) {
                *x -= f * p;
            }
            r[i] -= f * r[c];
        }
    }
    let mut x = [0.0; 3];
    for c in (0..3).rev() {
        let s: f64 = (c + 1..3).map(|j| m[c][j] * x[j]).sum();
        x[c] = (r[c] - s) / m[c][c];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupalg::Group;
    use crate::growth::group_ball;

    fn sampled(dim: u32, radius: u64, f: impl Fn(u64) -> f64) -> Vec<(GroupElement, f64)> {
        group_ball(Group::Lattice { dim }, radius)
            .into_iter()
            .map(|g| {
                let v = f(g.length());
                (g, v)
            })
            .collect()
    }

    #[test]
    fn exponential_decay_on_z2() {
        let s = sampled(2, 24, |l| 0.5f64.powi(l as i32));
        let v = schwartz_membership(&s, SchwartzClass::SOmega).unwrap();
        assert!(matches!(v.decay, DecayClass::Exponential { .. }), "{:?}", v.decay);
        assert_eq!(v.consistent, Some(true));
        assert_eq!(
            schwartz_membership(&s, SchwartzClass::S).unwrap().consistent,
            Some(true)
        );
        assert_eq!(
            schwartz_membership(&s, SchwartzClass::O).unwrap().consistent,
            Some(false)
        );
    }

    #[test]
    fn cubic_decay_on_z2() {
        let s = sampled(2, 24, |l| ((l + 1) as f64).powi(-3));
        let v = schwartz_membership(&s, SchwartzClass::S).unwrap();
        match v.decay {
            DecayClass::Polynomial { p } => assert!((p - 2.0).abs() < 0.2, "{p}"),
            d => panic!("{d:?}"),
        }
        assert_eq!(v.consistent, Some(false));
        assert_eq!(v.max_weight_exponent, Some(0));
    }

    #[test]
    fn finite_and_gaussian() {
        let s = sampled(2, 16, |l| if l == 0 { 1.0 } else { 0.0 });
        for c in [SchwartzClass::S, SchwartzClass::SOmega, SchwartzClass::O] {
            let v = schwartz_membership(&s, c).unwrap();
            assert_eq!(v.decay, DecayClass::FiniteSupport);
            assert_eq!(v.consistent, Some(true));
        }
        let radial: Vec<f64> = (0..=20).map(|l| (-(l as f64).powi(2) / 4.0).exp()).collect();
        let v = schwartz_membership_radial(&radial, SchwartzClass::O).unwrap();
        assert_eq!(v.decay, DecayClass::SuperExponential);
    }

    #[test]
    fn growth_and_short_range() {
        let radial: Vec<f64> = (0..=20).map(|l| 3f64.powi(l)).collect();
        let v = schwartz_membership_radial(&radial, SchwartzClass::S).unwrap();
        assert_eq!(v.decay, DecayClass::NotDecaying);
        assert!(matches!(
            schwartz_membership_radial(&radial[..10], SchwartzClass::S),
            Err(GrowthError::InsufficientRange { radius: 9, .. })
        ));
    }
}
