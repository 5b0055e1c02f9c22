//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};

use tracecode::verify;
use tracecode::RunConfig;
use tracecode_core::analysis::{
    ab_minimality_condition, brute_force_minimality, check_group_action, dual_low_weight_search,
    griesmer_gap_identity, is_distance_optimal, minimality_margin, nondegeneracy_check,
    verify_dual_witness,
};
use tracecode_core::bits::BinaryWord;
use tracecode_core::gf2m::{character_sum, DEFAULT_MODULI};
use tracecode_core::gray::{hamming_via_character_sum, lee_weight};
use tracecode_core::sss::SharingScheme;
use tracecode_core::trace_code::theoretical_lee_weight;
use tracecode_core::{CodeParameters, Gf2m, TraceCode, WeightDistribution};

type Outcome = Result<String, String>;

const SPECTRA: [(u32, u32, [(u64, u64); 3]); 3] = [
    (2, 1, [(0, 1), (12, 12), (16, 3)]),
    (3, 1, [(0, 1), (56, 56), (64, 7)]),
    (2, 2, [(0, 1), (384, 252), (512, 3)]),
];

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn code(m: u32, k: u32) -> TraceCode {
    TraceCode::with_params(m, k, None).expect("enumerable parameters")
}

fn pow2(e: u32) -> BigUint {
    BigUint::from(1u8) << e as usize
}

fn weight_spectrum() -> Outcome {
    let mut timings = Vec::new();
    for (m, k, expected) in SPECTRA {
        let start = Instant::now();
        let observed = code(m, k).weight_distribution();
        let expected = WeightDistribution::from_counts(&expected.into_iter().collect());
        ensure!(
            observed == expected,
            "(m,k)=({m},{k}): observed {observed:?}"
        );
        timings.push(format!("({m},{k}) {:.3}s", start.elapsed().as_secs_f64()));
    }
    Ok(timings.join(", "))
}

fn per_codeword_agreement() -> Outcome {
    let mut checked = 0u64;
    for (m, k, _) in SPECTRA {
        let c = code(m, k);
        let walked = c.lee_weights();
        for (i, &fast) in walked.iter().enumerate() {
            let a = c.ring().from_index(i as u64).unwrap();
            // ring multiplication, Frobenius-sum trace and the generic Gray map
            let direct = lee_weight(&c.evaluate(&a).unwrap()).unwrap();
            let formula = theoretical_lee_weight(&a).unwrap();
            ensure!(
                BigUint::from(direct) == formula && direct == fast,
                "(m,k)=({m},{k}) a={a}: direct {direct}, walk {fast}, formula {formula}"
            );
            checked += 1;
        }
    }
    Ok(format!("{checked} codewords"))
}

fn griesmer_optimality() -> Outcome {
    for (n, k, d) in [(24u64, 4u32, 12u64), (112, 6, 56), (768, 8, 384)] {
        let r = is_distance_optimal(&n.into(), k, &d.into());
        ensure!(
            r.optimal,
            "[{n},{k},{d}] not certified: sums {} / {}",
            r.griesmer_sum_at_d,
            r.griesmer_sum_at_d_plus_1
        );
    }
    let mut failures = Vec::new();
    for m in 2..=6u32 {
        for k in 1..=4u32 {
            let p = CodeParameters::new(m, k).unwrap();
            // independent evaluation of Σ ⌈(d+1)/2^j⌉ - N
            let d1 = p.distance() + 1u32;
            let sum: BigUint = (0..p.dimension)
                .map(|j| (&d1 + pow2(j) - 1u32) / pow2(j))
                .sum();
            let gap = BigInt::from(sum) - BigInt::from(p.length.clone());
            let closed = BigInt::from(((1u64 << k) - 1) * (m as u64 - 1) + k as u64);
            let library = griesmer_gap_identity(m, k);
            if gap != closed || library.is_err() {
                failures.push(format!(
                    "(m,k)=({m},{k}): Σ⌈(d+1)/2^j⌉ - N = {gap}, closed form {closed}"
                ));
            }
        }
    }
    ensure!(
        failures.is_empty(),
        "gap identity fails at {}",
        failures.join("; ")
    );
    Ok("3 certificates, 20 gap identities".into())
}

fn minimality() -> Outcome {
    for m in 2..=16u32 {
        for k in 1..=4u32 {
            let p = CodeParameters::new(m, k).unwrap();
            let formula = pow2(k - 1) * pow2(m * ((1 << k) - 1)) * (pow2(m) - 2u32);
            let margin = minimality_margin(m, k).unwrap();
            ensure!(
                margin == formula
                    && (&p.w1 << 1usize) - &p.w2 == formula
                    && formula > BigUint::ZERO,
                "(m,k)=({m},{k}): margin {margin}, formula {formula}"
            );
            ensure!(
                ab_minimality_condition(&p.w1, &p.w2),
                "(m,k)=({m},{k}): 2w1 <= w2"
            );
        }
    }
    for (m, k, _) in SPECTRA {
        let offenders = brute_force_minimality(&code(m, k).gray_codewords()).unwrap();
        ensure!(
            offenders.is_empty(),
            "(m,k)=({m},{k}): {} non-minimal codewords",
            offenders.len()
        );
    }
    Ok("margin formula on 2<=m<=16, 1<=k<=4; 0 non-minimal codewords".into())
}

fn nondegeneracy() -> Outcome {
    for (m, k) in [(2, 1), (2, 2), (3, 1)] {
        nondegeneracy_check(&code(m, k).ring()).map_err(|e| format!("(m,k)=({m},{k}): {e}"))?;
    }
    Ok("(2,1), (2,2), (3,1)".into())
}

fn dual_lee_distance() -> Outcome {
    let mut found = Vec::new();
    for (m, k) in [(2, 1), (3, 1)] {
        let c = code(m, k);
        let res = dual_low_weight_search(&c, 2).map_err(|e| e.to_string())?;
        ensure!(
            res.weight_one.is_none(),
            "(m,k)=({m},{k}): weight-1 dual word {:?}",
            res.weight_one
        );
        let w = res
            .weight_two
            .ok_or(format!("(m,k)=({m},{k}): no weight-2 dual word"))?;
        verify_dual_witness(&c, &w).map_err(|e| e.to_string())?;
        let entries: Vec<_> = w.entries.iter().map(|(_, g)| *g).collect();
        ensure!(
            lee_weight(&entries).unwrap() == 2,
            "witness Lee weight is not 2"
        );
        // Σ_x y_x ev(a)_x = 0 in R_k for every a, with ring arithmetic
        let bin = c.ring().binary_subring();
        for a in c.ring().elements().unwrap() {
            let ev = c.evaluate(&a).unwrap();
            let s = w
                .entries
                .iter()
                .fold(bin.zero(), |acc, (x, g)| acc + *g * ev[*x]);
            ensure!(
                s.is_zero(),
                "(m,k)=({m},{k}): witness not orthogonal to ev({a})"
            );
        }
        found.push(format!("({m},{k}) d'=2"));
    }
    Ok(found.join(", "))
}

fn abelian_structure() -> Outcome {
    let c = code(2, 1);
    let n = c.ring_length();
    ensure!(n == 12, "expected 12 units, got {n}");
    let words: BTreeSet<Vec<u16>> = c
        .ring()
        .elements()
        .unwrap()
        .map(|a| c.evaluate_bits(&a).unwrap())
        .collect();
    let mut joins = BTreeMap::new();
    for u in c.units() {
        let pi = c.coordinate_permutation(u).unwrap();
        let image: BTreeSet<Vec<u16>> = words
            .iter()
            .map(|w| (0..n).map(|i| w[pi[i]]).collect())
            .collect();
        ensure!(image == words, "π({u}) does not preserve the code");
        for (v, &w) in pi.iter().enumerate() {
            *joins.entry((v, w)).or_insert(0) += 1;
        }
    }
    ensure!(
        joins.len() == n * n && joins.values().all(|&c| c == 1),
        "action is not regular"
    );
    let r = check_group_action(&c).map_err(|e| e.to_string())?;
    ensure!(
        r.exhaustive && r.composition_checked,
        "library check was not exhaustive"
    );
    Ok("12 permutations preserve C; regular action".into())
}

fn character_sums() -> Outcome {
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    for _ in 0..10_000 {
        let len = rng.random_range(1..=512);
        let w = BinaryWord::from_fn(len, |_| rng.random::<bool>());
        ensure!(
            hamming_via_character_sum(&w) == w.weight(),
            "character-sum weight mismatch on {w}"
        );
    }
    for m in 1..=8u32 {
        let f = Gf2m::with_modulus(m, DEFAULT_MODULI[m as usize - 1]).unwrap();
        for z in f.nonzero_elements() {
            // direct sums of (-1)^tr(zx), independent of the library helper
            let full: i64 = f
                .elements()
                .map(|x| if (z * x).trace() == 1 { -1 } else { 1 })
                .sum();
            let units: i64 = f
                .nonzero_elements()
                .map(|x| if (z * x).trace() == 1 { -1 } else { 1 })
                .sum();
            ensure!(
                full == 0 && units == -1,
                "m={m} z={z}: sums {full}, {units}"
            );
            ensure!(
                character_sum(z, false) == 0 && character_sum(z, true) == -1,
                "m={m} z={z}: library sums differ"
            );
        }
    }
    Ok("10^4 random words; all z != 0 for m <= 8".into())
}

fn secret_sharing() -> Outcome {
    let scheme = SharingScheme::build(code(2, 1), 11).map_err(|e| e.to_string())?;
    let access = scheme.minimal_access_sets().map_err(|e| e.to_string())?;
    ensure!(
        access.minimal_sets.len() == 8,
        "{} minimal sets",
        access.minimal_sets.len()
    );
    ensure!(!access.dictators.is_empty(), "no dictator");
    for secret in [0u8, 1] {
        for seed in 0..5u64 {
            let shares = scheme.deal_with_seed(secret, seed);
            for set in &access.minimal_sets {
                let got = scheme
                    .reconstruct(set, &shares)
                    .map_err(|e| e.to_string())?;
                ensure!(
                    got == Some(secret),
                    "set {set:?} recovered {got:?} instead of {secret}"
                );
            }
        }
    }

    let participants: Vec<usize> = scheme.participants().collect();
    let mut unauthorized: Vec<Vec<usize>> = vec![vec![]];
    unauthorized.extend(participants.iter().map(|&p| vec![p]));
    for set in &access.minimal_sets {
        for drop in 0..set.len() {
            let mut sub = set.clone();
            sub.remove(drop);
            unauthorized.push(sub);
        }
    }
    unauthorized.push(
        participants
            .iter()
            .copied()
            .filter(|p| !access.dictators.contains(p))
            .collect(),
    );
    let mut rng = rand::rngs::StdRng::seed_from_u64(9);
    let mut sampled = 0;
    while sampled < 200 {
        let t: Vec<usize> = participants
            .iter()
            .copied()
            .filter(|_| rng.random_bool(0.4))
            .collect();
        let covers = access
            .minimal_sets
            .iter()
            .any(|s| s.iter().all(|p| t.contains(p)));
        let authorized = scheme.is_authorized(&t).map_err(|e| e.to_string())?;
        ensure!(
            authorized == covers,
            "coalition {t:?}: authorized {authorized}, covers a minimal set {covers}"
        );
        if !authorized {
            unauthorized.push(t);
            sampled += 1;
        }
    }
    let seeds: Vec<u64> = (0..16).collect();
    for t in &unauthorized {
        ensure!(
            !scheme.is_authorized(t).unwrap(),
            "coalition {t:?} should be unauthorized"
        );
        let probe = scheme
            .perfectness_probe(t, &seeds)
            .map_err(|e| e.to_string())?;
        ensure!(
            probe.balanced(),
            "coalition {t:?}: counts {:?}",
            probe.counts
        );
    }
    Ok(format!(
        "8 minimal sets; {} unauthorized coalitions balanced; dictators {:?}",
        unauthorized.len(),
        access.dictators
    ))
}

fn basis_invariance() -> Outcome {
    let a = verify::run(&RunConfig::new(3, 1).with_modulus(0xb)).map_err(|e| e.to_string())?;
    let b = verify::run(&RunConfig::new(3, 1).with_modulus(0xd)).map_err(|e| e.to_string())?;
    let dist = |r: &verify::VerifyReport| {
        r.observed_distribution
            .iter()
            .map(|e| (e.weight.clone(), e.frequency.clone()))
            .collect::<Vec<_>>()
    };
    ensure!(dist(&a) == dist(&b), "distributions differ");
    ensure!(
        a.verdicts() == b.verdicts(),
        "verdicts differ: {:?} vs {:?}",
        a.verdicts(),
        b.verdicts()
    );
    ensure!(a.all_verified, "claims violated under x^3+x+1");
    Ok("x^3+x+1 and x^3+x^2+1 agree".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("weight spectrum", weight_spectrum),
        ("per-codeword agreement", per_codeword_agreement),
        ("Griesmer optimality and gap identity", griesmer_optimality),
        ("minimality", minimality),
        ("nondegeneracy", nondegeneracy),
        ("dual Lee distance", dual_lee_distance),
        ("abelian structure", abelian_structure),
        ("character sums", character_sums),
        ("secret sharing", secret_sharing),
        ("basis invariance", basis_invariance),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2}: PASS  {name} ({secs:.2}s): {detail}",
                i + 1
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
