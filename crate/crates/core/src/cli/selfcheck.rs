//! Seeded invariant suite behind `chainlab selfcheck`.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chain::random::random_complex;
use crate::chain::{cone, shift, tensor_complex, ChainMap};
use crate::groupalg::{fr_exactness_report, fr_group_homology};
use crate::growth::{combing_straightline, lattice_ball};
use crate::qtorus::{check_resolution, hochschild_homology, identify_ll};
use crate::scalar::Variant;
use crate::theta::Deformation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub runs: u32,
    pub failures: u32,
    /// First failing case, if any.
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfcheckReport {
    pub seed: u64,
    pub cases: u32,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

struct Tally {
    name: &'static str,
    runs: u32,
    failures: u32,
    first: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            runs: 0,
            failures: 0,
            first: None,
        }
    }

    fn record(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.runs += 1;
        if !ok {
            self.failures += 1;
            self.first.get_or_insert_with(case);
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name.into(),
            runs: self.runs,
            failures: self.failures,
            first_failure: self.first,
        }
    }
}

/// Runs `cases` randomized chain-complex cases from `seed`, then a fixed set
/// of small computations with known answers.
pub fn selfcheck(seed: u64, cases: u32) -> SelfcheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut built = Tally::new("random complex homology");
    let mut cone_id = Tally::new("cone(id) acyclic");
    let mut shifted = Tally::new("shift moves homology");
    let mut euler = Tally::new("euler char of tensor");
    for case in 0..cases {
        let a = random_complex(&mut rng, 5, 4);
        let b = random_complex(&mut rng, 3, 3);
        let c = Arc::new(a.complex.clone());
        let label = || format!("case {case}: dims {:?} from {}", a.complex.dims(), a.complex.lo());

        let h = a.complex.homology_dims();
        built.record(a.complex.verify().passed() && h.as_ref() == Ok(&a.homology), label);

        let k = cone(&ChainMap::identity(c.clone()));
        cone_id.record(k.verify().passed() && k.is_acyclic() == Ok(true), label);

        let s = shift(&a.complex);
        let ok = a.homology.iter().all(|&(n, d)| s.homology_dim(n + 1) == Ok(d));
        shifted.record(ok, label);

        let ok = match tensor_complex(&a.complex, &b.complex) {
            Ok(t) => {
                t.verify().passed()
                    && t.euler_characteristic() == a.complex.euler_characteristic() * b.complex.euler_characteristic()
            }
            Err(_) => false,
        };
        euler.record(ok, label);
    }

    let mut fixed = Tally::new("fixed computations");
    let hh = |n, d| hochschild_homology(n, d).map(|r| r.dims.values().copied().collect::<Vec<_>>());
    fixed.record(hh(3, Deformation::Formal) == Ok(vec![1, 2, 1]), || {
        "hh formal box 3".into()
    });
    fixed.record(hh(1, Deformation::Classical) == Ok(vec![9, 18, 9]), || {
        "hh 0 box 1".into()
    });
    fixed.record(
        identify_ll(2, Deformation::Formal, false).map(|r| r.matrix_match) == Ok(true),
        || "identify-ll formal box 2".into(),
    );
    fixed.record(
        check_resolution(3, Deformation::Formal).map(|r| r.passed()) == Ok(true),
        || "resolve formal box 3".into(),
    );
    fixed.record(
        fr_exactness_report(2, 3, Variant::Rational).map(|r| r.passed()) == Ok(true),
        || "freegroup rank 2 radius 3".into(),
    );
    fixed.record(
        fr_group_homology(2, 3, Variant::Rational).map(|r| r.dims.values().copied().collect::<Vec<_>>())
            == Ok(vec![1, 2]),
        || "group homology of F2".into(),
    );
    let combing_ok = lattice_ball(2, 4).iter().all(|g| {
        let len: u64 = g.iter().map(|x| x.unsigned_abs()).sum();
        (0..=len + 1).all(|j| {
            let f = combing_straightline(g, j);
            f.iter().map(|x| x.unsigned_abs()).sum::<u64>() == j.min(len)
        })
    });
    fixed.record(combing_ok, || "combing lengths on the radius-4 ball".into());

    let checks: Vec<CheckResult> = [built, cone_id, shifted, euler, fixed]
        .into_iter()
        .map(Tally::finish)
        .collect();
    SelfcheckReport {
        seed,
        cases,
        passed: checks.iter().all(|c| c.failures == 0),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passes_and_is_deterministic() {
        let a = selfcheck(7, 20);
        assert!(a.passed, "{a:?}");
        assert_eq!(a, selfcheck(7, 20));
    }
}
