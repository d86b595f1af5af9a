mod common;

use chainlab::groupalg::Group;
use chainlab::growth::{
    check_combing_compatibility, combing_straightline, continued_fraction, group_ball, is_submultiplicative,
    lattice_ball, matrix_rep_growth, parse_matrix, schwartz_membership, small_divisor_growth, small_divisor_series,
    DecayClass, GrowthClass, SchwartzClass, Weight, WeightCombination,
};
use chainlab::theta::ThetaSpec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::Value;

fn spec(s: &str) -> ThetaSpec {
    s.parse().unwrap()
}

#[test]
fn verdicts_match_the_fixture() {
    let text = include_str!("fixtures/diophantine.json");
    let fixture: Value = serde_json::from_str(text).unwrap();
    for case in fixture["cases"].as_array().unwrap() {
        let theta = case["theta"].as_str().unwrap();
        let range = case["range"].as_u64().unwrap();
        let v = small_divisor_growth(&spec(theta), range).unwrap();
        assert_eq!(v.class.to_string(), case["class"].as_str().unwrap(), "{theta}");
        let flags: Vec<&str> = case["flags"]
            .as_array()
            .unwrap()
            .iter()
            .map(|f| f.as_str().unwrap())
            .collect();
        assert_eq!(v.flags, flags, "{theta}");
        if let Some(records) = case.get("records") {
            let want: Vec<u64> = records
                .as_array()
                .unwrap()
                .iter()
                .map(|r| r.as_u64().unwrap())
                .collect();
            assert_eq!(v.records.iter().map(|r| r.0).collect::<Vec<_>>(), want, "{theta}");
        }
        assert_eq!(v, small_divisor_growth(&spec(theta), range).unwrap());
    }
}

#[test]
fn records_are_the_oracle_denominators() {
    let quotients = [0u64, 2, 4, 16, 256, 65536];
    let q = common::cf_denominators(&quotients);
    let v = small_divisor_growth(&spec("cf:0,2,4,16,256,65536"), 100_000).unwrap();
    let want: Vec<u64> = q
        .iter()
        .filter(|d| **d <= BigInt::from(100_000))
        .map(|d| d.to_string().parse().unwrap())
        .collect();
    assert_eq!(v.records.iter().map(|r| r.0).collect::<Vec<_>>(), want);
}

#[test]
fn golden_divisors_match_the_square_root_oracle() {
    let series = small_divisor_series(&spec("cf:0,1"), 20_000).unwrap();
    for m in (1..=20_000u64).step_by(97).chain([6765, 10946, 17711]) {
        let x = common::golden_distance(m);
        let g = 1.0 / (2.0 * (std::f64::consts::PI * x).sin());
        assert!((series[m as usize - 1] - g).abs() <= 1e-9 * g, "m = {m}");
    }
    // ‖mθ‖ ≥ 1/(3m) for quotients bounded by 1, and 2 sin(πx) ≥ 4x.
    let v = small_divisor_growth(&spec("cf:0,1"), 100_000).unwrap();
    assert!(v.ratio_bound.unwrap() <= 0.75);
}

#[test]
fn convergents_bracket_theta() {
    let theta = BigRational::new(BigInt::from(1_234_567_891i64), BigInt::from(987_654_321i64));
    let cf = continued_fraction(&ThetaSpec::Rational(theta.clone()), 40).unwrap();
    assert!(cf.terminated);
    let conv: Vec<BigRational> = cf
        .convergents
        .iter()
        .map(|(p, q)| BigRational::new(p.clone(), q.clone()))
        .collect();
    for k in 0..conv.len() - 1 {
        let (qk, qk1) = (&cf.convergents[k].1, &cf.convergents[k + 1].1);
        assert!(qk < qk1 || k == 0);
        let err = (&theta - &conv[k]).abs();
        let bound = BigRational::new(BigInt::from(1), qk * qk1);
        // Equality only when the next convergent is θ itself.
        assert!(err < bound || (k + 2 == conv.len() && err == bound));
        let side = |c: &BigRational| c > &theta;
        if k + 1 < conv.len() - 1 {
            assert_ne!(side(&conv[k]), side(&conv[k + 1]));
        }
    }
    assert_eq!(conv.last().unwrap(), &theta);
}

#[test]
fn float_theta_warns_past_its_digits() {
    let v = small_divisor_growth(&spec("float:0.6180339887498949"), 10_000).unwrap();
    assert_eq!(v.mode, "float");
    assert_eq!(v.class, GrowthClass::Polynomial(1));
    assert!(continued_fraction(&spec("float:0.6180339887498949"), 80).is_err());
}

fn z2(radius: u64, f: impl Fn(u64) -> f64) -> Vec<(chainlab::groupalg::GroupElement, f64)> {
    group_ball(Group::Lattice { dim: 2 }, radius)
        .into_iter()
        .map(|g| {
            let v = f(g.length());
            (g, v)
        })
        .collect()
}

#[test]
fn exponential_decay_membership() {
    let s = z2(24, |l| 0.5f64.powi(l as i32));
    let s_verdict = schwartz_membership(&s, SchwartzClass::S).unwrap();
    assert!(matches!(s_verdict.decay, DecayClass::Exponential { .. }));
    assert_eq!(s_verdict.consistent, Some(true));
    assert_eq!(
        schwartz_membership(&s, SchwartzClass::SOmega).unwrap().consistent,
        Some(true)
    );
    // 𝒪 asks for every α > 1; 2^{-ℓ} fails at α = 2.
    assert_eq!(
        schwartz_membership(&s, SchwartzClass::O).unwrap().consistent,
        Some(false)
    );
    assert!((s_verdict.alpha_bound.unwrap() - 2.0).abs() < 0.2);
}

#[test]
fn cubic_decay_diverges_against_weights() {
    let f = |l: u64| ((l + 1) as f64).powi(-3);
    let s = z2(32, f);
    for class in [SchwartzClass::S, SchwartzClass::SOmega, SchwartzClass::O] {
        assert_eq!(schwartz_membership(&s, class).unwrap().consistent, Some(false));
    }
    for k in 1..=3 {
        let sums = common::z2_weighted_partial_sums(f, k, 32);
        assert!(sums[32] - sums[16] > 2.0, "k = {k}");
    }
    let converge = common::z2_weighted_partial_sums(f, 0, 32);
    assert!(converge[32] - converge[16] < 0.5);
}

#[test]
fn identity_indicator_is_in_every_class() {
    let s = z2(16, |l| if l == 0 { 1.0 } else { 0.0 });
    for class in [SchwartzClass::S, SchwartzClass::SOmega, SchwartzClass::O] {
        let v = schwartz_membership(&s, class).unwrap();
        assert_eq!(v.decay, DecayClass::FiniteSupport);
        assert_eq!(v.consistent, Some(true));
    }
}

#[test]
fn matrix_norms_follow_the_oracles() {
    let h = parse_matrix(r#"[[2,0],[0,"1/2"]]"#).unwrap();
    let r = matrix_rep_growth(&[h], 1000).unwrap();
    for &(n, ln) in r.series.iter().step_by(37) {
        assert!((ln - n as f64 * std::f64::consts::LN_2).abs() < 1e-9);
    }
    let u = parse_matrix("[[1,1],[0,1]]").unwrap();
    let r = matrix_rep_growth(&[u], 1000).unwrap();
    for a in (0..500).step_by(7) {
        for b in (0..500).step_by(11) {
            assert!(r.series[a + b].1 <= r.series[a].1 + r.series[b].1 + 1e-12);
        }
    }
    let two = [
        parse_matrix("[[1,1],[0,1]]").unwrap(),
        parse_matrix("[[1,2],[0,1]]").unwrap(),
    ];
    let r = matrix_rep_growth(&two, 1000).unwrap();
    assert_eq!(r.tempered_k, Some(1));
}

#[test]
fn weights_and_combing() {
    let z2 = Group::Lattice { dim: 2 };
    assert!(is_submultiplicative(&Weight::polynomial(2), z2, 5).unwrap().passed);
    let hom = vec![(
        Weight::exponential(&[3, -1]),
        WeightCombination::single(Weight::exponential(&[3, -1])),
    )];
    let r = check_combing_compatibility(2, &hom, 4, 8).unwrap();
    assert!(r.passed && r.equality_everywhere);
    for g in lattice_ball(2, 6) {
        let len: u64 = g.iter().map(|x| x.unsigned_abs()).sum();
        assert_eq!(combing_straightline(&g, len), g);
        assert_eq!(combing_straightline(&g, len + 3), g);
        for j in 0..=len {
            // Each vertex stays within distance 1 of the straight line.
            let f = combing_straightline(&g, j);
            for (fi, gi) in f.iter().zip(&g) {
                let ideal = j as f64 * *gi as f64 / len.max(1) as f64;
                assert!((*fi as f64 - ideal).abs() < 1.0 + 1e-9, "g={g:?} j={j}");
            }
        }
    }
}
