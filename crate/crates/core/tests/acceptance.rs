//! One line per acceptance criterion. Tolerances are fixed below.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use chainlab::chain::random::{random_complex, random_matrix};
use chainlab::chain::{cone, hom_complex, shift, tensor_complex, ChainMap, Homotopy};
use chainlab::cli::run_with;
use chainlab::groupalg::{fr_exactness_report, fr_group_homology};
use chainlab::growth::{
    check_combing_compatibility, matrix_rep_growth, parse_matrix, small_divisor_growth, GrowthClass, Weight,
    WeightCombination,
};
use chainlab::qtorus::{check_resolution, hochschild_homology, identify_ll};
use chainlab::scalar::Variant;
use chainlab::theta::{deformation, Deformation, ThetaSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const HH_TIME_LIMIT: Duration = Duration::from_secs(5);
const FREE_GROUP_TIME_LIMIT: Duration = Duration::from_secs(30);
const PROPERTY_CASES: u32 = 500;
const EXPONENT_TOLERANCE: f64 = 0.1;
/// Bound on `g(m)/m` for quotients all equal to 1: `‖mθ‖ ≥ 1/(3m)` and `2 sin(πx) ≥ 4x`.
const GOLDEN_RATIO_BOUND: f64 = 0.75;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn dims3(map: &std::collections::BTreeMap<String, usize>) -> Vec<usize> {
    map.values().copied().collect()
}

fn hh_formal() -> Outcome {
    let mut t20 = Duration::ZERO;
    for n in [2, 5, 10, 20] {
        let mut out = Vec::new();
        let start = Instant::now();
        let code = run_with(
            ["chainlab", "hh", "--theta", "formal", "--box", &n.to_string()],
            &mut out,
            &mut std::io::sink(),
        );
        let elapsed = start.elapsed();
        if n == 20 {
            t20 = elapsed;
        }
        ensure(code == 0, format!("exit {code} at N={n}"))?;
        let v: Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
        ensure(
            v["H"] == serde_json::json!({"0": 1, "1": 2, "2": 1}),
            format!("N={n}: H = {}", v["H"]),
        )?;
        let modes = v["modes"].as_array().cloned().unwrap_or_default();
        ensure(
            modes.len() == 1 && modes[0]["m"] == 0 && modes[0]["n"] == 0,
            format!("N={n}: modes {modes:?}"),
        )?;
    }
    ensure(t20 < HH_TIME_LIMIT, format!("N=20 took {t20:?}"))?;
    Ok(format!(
        "dims 1,2,1 from mode (0,0) for N in 2,5,10,20; N=20 in {t20:.2?}"
    ))
}

fn hh_classical() -> Outcome {
    for n in [1i64, 2, 4, 6] {
        let r = hochschild_homology(n, Deformation::Classical).map_err(|e| e.to_string())?;
        let s = ((2 * n + 1) * (2 * n + 1)) as usize;
        ensure(dims3(&r.dims) == vec![s, 2 * s, s], format!("N={n}: {:?}", r.dims))?;
    }
    Ok("dims (2N+1)^2, 2(2N+1)^2, (2N+1)^2 for N in 1,2,4,6".into())
}

fn hh_root_of_unity() -> Outcome {
    let r = hochschild_homology(6, deformation("1/3").map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let got: Vec<(i64, i64)> = r.modes.iter().map(|c| (c.m, c.n)).collect();
    let mut oracle = Vec::new();
    let mut expected = Vec::new();
    for m in -6..=6i64 {
        for n in -6..=6i64 {
            if common::mode_homology_at_root(1.0 / 3.0, m, n).iter().any(|&d| d > 0) {
                oracle.push((m, n));
            }
            if m % 3 == 0 && n % 3 == 0 {
                expected.push((m, n));
            }
        }
    }
    ensure(got == oracle, format!("modes {got:?} vs oracle {oracle:?}"))?;
    ensure(got == expected, "oracle modes are not the multiples of 3")?;
    Ok(format!("{} contributing modes, all with 3|m and 3|n", got.len()))
}

fn identify() -> Outcome {
    for theta in ["formal", "1/5"] {
        for n in [3, 6, 10] {
            let d = deformation(theta).map_err(|e| e.to_string())?;
            let r = identify_ll(n, d, false).map_err(|e| e.to_string())?;
            ensure(r.matrix_match, format!("θ={theta} N={n}: boundary mismatch"))?;
        }
    }
    Ok("exact boundary match for N in 3,6,10, formal and ζ5".into())
}

fn resolution() -> Outcome {
    for d in [Deformation::Formal, Deformation::Classical] {
        let r = check_resolution(6, d).map_err(|e| e.to_string())?;
        ensure(r.passed(), format!("{}: status {}", r.theta, r.status))?;
        for k in ["1", "2"] {
            ensure(
                r.inner_homology.get(k) == Some(&0),
                format!("{}: H_{k} = {:?}", r.theta, r.inner_homology),
            )?;
        }
        ensure(r.augmentation_onto, format!("{}: augmentation not onto", r.theta))?;
    }
    Ok("box 6, formal and θ=0: inner H_1 = H_2 = 0, augmentation onto".into())
}

fn chain_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_261_015);
    for case in 0..PROPERTY_CASES {
        let fail = |what: &str| format!("case {case}: {what}");
        let a = random_complex(&mut rng, 6, 5);
        let c = &a.complex;
        ensure(c.verify().passed(), fail("verify"))?;
        ensure(
            c.homology_dims().ok() == Some(a.homology.clone()),
            fail("built homology"),
        )?;
        let arc = Arc::new(c.clone());
        let k = cone(&ChainMap::identity(arc.clone()));
        ensure(k.verify().passed() && k.is_acyclic() == Ok(true), fail("cone(id)"))?;
        let s = shift(c);
        ensure(
            a.homology.iter().all(|&(n, d)| s.homology_dim(n + 1) == Ok(d)),
            fail("shift"),
        )?;
        let b = random_complex(&mut rng, 3, 3);
        let t = tensor_complex(c, &b.complex).map_err(|e| e.to_string())?;
        ensure(
            t.verify().passed()
                && t.euler_characteristic() == c.euler_characteristic() * b.complex.euler_characteristic(),
            fail("euler"),
        )?;
        let x = random_complex(&mut rng, 2, 3).complex;
        let y = random_complex(&mut rng, 2, 3).complex;
        let z = random_complex(&mut rng, 2, 3).complex;
        let left = hom_complex(&tensor_complex(&x, &y).map_err(|e| e.to_string())?, &z).map_err(|e| e.to_string())?;
        let right = hom_complex(&x, &hom_complex(&y, &z).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let (lo, hi) = (left.lo().min(right.lo()), left.hi().max(right.hi()));
        ensure(
            (lo..=hi).all(|n| left.dim(n) == right.dim(n) && left.homology_dim(n) == right.homology_dim(n)),
            fail("adjunction dimensions"),
        )?;
        let maps = arc
            .degrees()
            .map(|n| random_matrix(&mut rng, arc.dim(n + 1), arc.dim(n)))
            .collect();
        let h = Homotopy::new(arc.clone(), arc.clone(), maps).map_err(|e| e.to_string())?;
        let id = ChainMap::identity(arc.clone());
        let moved = id.sub(&h.null_homotopic_map());
        ensure(
            moved.verify().passed() && moved.same_on_homology(&id) == Ok(true),
            fail("homotopy invariance"),
        )?;
    }
    Ok(format!("{PROPERTY_CASES} cases, six properties each, zero failures"))
}

fn free_group() -> Outcome {
    let mut slowest = Duration::ZERO;
    for rank in 1..=3u32 {
        let start = Instant::now();
        let r = fr_exactness_report(rank, 5, Variant::Rational).map_err(|e| e.to_string())?;
        let h = fr_group_homology(rank, 5, Variant::Rational).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        ensure(r.passed(), format!("rank {rank}: {:?}", r.inner_classes))?;
        ensure(
            dims3(&h.dims) == vec![1, rank as usize],
            format!("rank {rank}: H = {:?}", h.dims),
        )?;
        for radius in 1..=3usize {
            if rank == 3 && radius == 3 {
                continue;
            }
            let oracle = common::bar_homology_free(rank as i32, radius);
            let ours = fr_group_homology(rank, radius, Variant::Rational).map_err(|e| e.to_string())?;
            ensure(
                (ours.dims["0"], ours.dims["1"]) == oracle,
                format!("rank {rank} radius {radius}: {:?} vs oracle {oracle:?}", ours.dims),
            )?;
        }
        if rank == 3 {
            ensure(elapsed < FREE_GROUP_TIME_LIMIT, format!("rank 3 took {elapsed:?}"))?;
        }
    }
    let oracle = common::bar_homology_free(3, 3);
    ensure(oracle == (1, 3), format!("bar oracle rank 3 radius 3: {oracle:?}"))?;
    Ok(format!(
        "inner exactness and H = (1, r) for r = 1,2,3 at radius 5; slowest {slowest:.2?}"
    ))
}

fn diophantine() -> Outcome {
    let fixture: Value = serde_json::from_str(include_str!("fixtures/diophantine.json")).map_err(|e| e.to_string())?;
    for case in fixture["cases"].as_array().ok_or("fixture has no cases")? {
        let theta = case["theta"].as_str().unwrap_or_default();
        let spec: ThetaSpec = theta.parse().map_err(|e: chainlab::theta::ThetaError| e.to_string())?;
        let range = case["range"].as_u64().unwrap_or_default();
        let v = small_divisor_growth(&spec, range).map_err(|e| e.to_string())?;
        let again = small_divisor_growth(&spec, range).map_err(|e| e.to_string())?;
        ensure(v == again, format!("{theta}: not deterministic"))?;
        ensure(
            v.class.to_string() == case["class"],
            format!("{theta}: class {}", v.class),
        )?;
        let flags: Vec<Value> = v.flags.iter().map(|f| Value::from(f.as_str())).collect();
        ensure(
            Value::from(flags) == case["flags"],
            format!("{theta}: flags {:?}", v.flags),
        )?;
    }
    let golden =
        small_divisor_growth(&"cf:0,1,1,1,1,1,1,1,1,1,1,1".parse().unwrap(), 100_000).map_err(|e| e.to_string())?;
    ensure(golden.class == GrowthClass::Polynomial(1), "golden ratio class")?;
    let ratio = golden.ratio_bound.unwrap_or(f64::INFINITY);
    ensure(ratio <= GOLDEN_RATIO_BOUND, format!("max g(m)/m = {ratio}"))?;
    Ok(format!(
        "fixture verdicts matched; golden ratio max g(m)/m = {ratio:.4}"
    ))
}

fn matrix_rep() -> Outcome {
    let g = parse_matrix("[[1,1],[0,1]]").map_err(|e| e.to_string())?;
    let r = matrix_rep_growth(&[g], 10_000).map_err(|e| e.to_string())?;
    ensure(
        (r.exponent - 1.0).abs() <= EXPONENT_TOLERANCE,
        format!("exponent {}", r.exponent),
    )?;
    ensure(
        r.verdict == "𝒮¹-tempered, not ℓ₁-tempered",
        format!("verdict {}", r.verdict),
    )?;
    Ok(format!("exponent {:.4} over n ≤ 10^4, {}", r.exponent, r.verdict))
}

fn weights() -> Outcome {
    let hom: Vec<_> = [[1, 0], [-1, 0], [0, 1], [0, -1], [2, -3]]
        .iter()
        .map(|a| {
            (
                Weight::exponential(a),
                WeightCombination::single(Weight::exponential(a)),
            )
        })
        .collect();
    let r = check_combing_compatibility(2, &hom, 8, 16).map_err(|e| e.to_string())?;
    ensure(r.passed && r.equality_everywhere, "homomorphism weights")?;
    for k in 1..=2 {
        let poly = vec![(
            Weight::polynomial(k),
            WeightCombination::single(Weight::polynomial(2 * k)),
        )];
        let r = check_combing_compatibility(2, &poly, 8, 16).map_err(|e| e.to_string())?;
        ensure(r.passed, format!("(l+1)^{k} with bar (l+1)^{}", 2 * k))?;
    }
    let wrong = vec![(Weight::polynomial(1), WeightCombination::single(Weight::polynomial(1)))];
    let r = check_combing_compatibility(2, &wrong, 8, 16).map_err(|e| e.to_string())?;
    let w = r.witness.ok_or("identity bar produced no witness")?;
    ensure(!r.passed, "identity bar passed")?;
    Ok(format!(
        "equality for homomorphisms, polynomial pass, witness g={:?} h={:?} j={} ({} > {})",
        w.g, w.h, w.j, w.lhs, w.rhs
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("quantum torus HH, formal q", hh_formal),
        ("commutative degeneration", hh_classical),
        ("root-of-unity modes", hh_root_of_unity),
        ("L⊗L identification", identify),
        ("Koszul resolution exactness", resolution),
        ("chain-engine properties", chain_properties),
        ("free group pair complex", free_group),
        ("Diophantine classifier", diophantine),
        ("matrix representation growth", matrix_rep),
        ("weights and combing", weights),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
