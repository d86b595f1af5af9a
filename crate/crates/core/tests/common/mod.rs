//! Brute-force oracles that share no code with the library.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use std::collections::HashMap;

const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn to_mod(v: i64) -> u64 {
    v.rem_euclid(P as i64) as u64
}

/// Incremental row reduction modulo the Mersenne prime `2^61 - 1`.
pub struct ModRank {
    cols: usize,
    pivots: HashMap<usize, Vec<u64>>,
}

impl ModRank {
    pub fn new(cols: usize) -> Self {
        ModRank {
            cols,
            pivots: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn push(&mut self, entries: &[(usize, i64)]) {
        let mut row = vec![0u64; self.cols];
        for &(c, v) in entries {
            row[c] = (row[c] + to_mod(v)) % P;
        }
        for c in 0..self.cols {
            if row[c] == 0 {
                continue;
            }
            match self.pivots.get(&c) {
                Some(p) => {
                    let f = row[c];
                    for (x, y) in row.iter_mut().zip(p).skip(c) {
                        *x = (*x + P - mulmod(f, *y)) % P;
                    }
                }
                None => {
                    let inv = powmod(row[c], P - 2);
                    for x in row.iter_mut().skip(c) {
                        *x = mulmod(*x, inv);
                    }
                    self.pivots.insert(c, row);
                    return;
                }
            }
        }
    }
}

/// Free reduction of letter lists (`±k` is `s_k^{±1}`).
pub fn reduce(word: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for &x in word {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// All reduced words of length `≤ radius` in `𝔽_rank`, breadth first.
pub fn free_ball(rank: i32, radius: usize) -> Vec<Vec<i32>> {
    let letters: Vec<i32> = (1..=rank).flat_map(|k| [k, -k]).collect();
    let mut all = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &layer {
            for &x in &letters {
                if w.last() != Some(&-x) {
                    let mut v: Vec<i32> = w.clone();
                    v.push(x);
                    next.push(v);
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

/// `(dim H_0, dim H_1)` of `𝔽_rank` with rational coefficients from the
/// inhomogeneous bar complex truncated to the ball:
/// `C_1 = ℚ[B_ρ]`, `C_2 = ℚ[{(g,h) : g, h, gh ∈ B_ρ}]`,
/// `∂[g|h] = [h] - [gh] + [g]`, `∂[g] = 0`, `C_0 = ℚ`.
/// Rank is taken modulo a 61-bit prime.
pub fn bar_homology_free(rank: i32, radius: usize) -> (usize, usize) {
    let ball = free_ball(rank, radius);
    let index: HashMap<Vec<i32>, usize> = ball.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let mut m = ModRank::new(ball.len());
    for g in &ball {
        for h in &ball {
            let mut gh = g.clone();
            gh.extend(h);
            let gh = reduce(&gh);
            if let Some(&k) = index.get(&gh) {
                m.push(&[(index[h], 1), (k, -1), (index[g], 1)]);
            }
        }
    }
    (1, ball.len() - m.rank())
}

/// Per-mode Hochschild dimensions at `q = e^{2πiθ}` from the 1×2 and 2×1
/// boundary matrices of the Koszul complex, evaluated in floating point.
pub fn mode_homology_at_root(theta: f64, m: i64, n: i64) -> [usize; 3] {
    let q = |k: i64| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * theta * k as f64);
    let one = Complex64::new(1.0, 0.0);
    let small = |z: Complex64| z.norm() < 1e-9;
    let d1 = [one - q(n), one - q(-m)];
    let d2 = [one - q(-m), q(n) - one];
    let r1 = usize::from(!d1.iter().all(|&z| small(z)));
    let r2 = usize::from(!d2.iter().all(|&z| small(z)));
    [1 - r1, 2 - r1 - r2, 1 - r2]
}

/// Convergent denominators of `[a0; a1, …]` by the plain recurrence.
pub fn cf_denominators(quotients: &[u64]) -> Vec<BigInt> {
    let (mut q0, mut q1) = (BigInt::zero(), BigInt::one());
    let mut out = Vec::new();
    for &a in quotients {
        let q = BigInt::from(a) * &q0 + &q1;
        q1 = std::mem::replace(&mut q0, q.clone());
        out.push(q);
    }
    out
}

/// `‖m φ‖` for `φ = (√5 - 1)/2`, with `√5` to 200 bits by integer square root.
pub fn golden_distance(m: u64) -> f64 {
    let bits = 200u32;
    let scale = BigInt::one() << bits;
    let root5 = (BigInt::from(5) * &scale * &scale).sqrt();
    let phi_scaled = (root5 - &scale) / 2;
    let x = BigInt::from(m) * phi_scaled;
    let frac: BigInt = x % &scale;
    let other: BigInt = &scale - &frac;
    let near = frac.min(other);
    let shift = bits - 60;
    let top: BigInt = near >> shift;
    let top: f64 = top.to_string().parse().unwrap();
    top / 2f64.powi(60)
}

/// Partial sums `Σ_{ℓ ≤ L} S(ℓ)(ℓ+1)^k` of a radial function on `ℤ²`,
/// where the sphere of radius `ℓ ≥ 1` has `4ℓ` points.
pub fn z2_weighted_partial_sums(f: impl Fn(u64) -> f64, k: i32, radius: u64) -> Vec<f64> {
    let mut total = 0.0;
    (0..=radius)
        .map(|l| {
            let sphere = if l == 0 { 1.0 } else { 4.0 * l as f64 };
            total += sphere * f(l) * ((l + 1) as f64).powi(k);
            total
        })
        .collect()
}
