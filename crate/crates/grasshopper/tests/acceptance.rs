//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (visible with `cargo test --test acceptance -- --nocapture`).

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use grasshopper::coeffs::{self, AlphaTable, DistinctPartition, PolySpec};
use grasshopper::modular::{self, PrimeModulus};
use grasshopper::olympiad::{self, PositiveInstance};
use grasshopper::oracle::{self, EvalPoint};
use grasshopper::report::scientific;
use grasshopper::route::{self, HopMode, JumpMultiset, MineField};

fn pass(n: u32, what: &str) {
    println!("criterion {n} ({what}): PASS");
}

fn ck(k: u32) -> BigInt {
    coeffs::ck(k).expect("ck computes")
}

#[test]
fn criterion_01_ck_exact_small() {
    let expected = [
        (1u32, "1"),
        (2, "2"),
        (3, "90"),
        (4, "586656"),
        (5, "1915103977500"),
        (6, "7886133184567796056800"),
    ];
    for (k, want) in expected {
        assert_eq!(ck(k).to_string(), want, "c_{k} mismatch");
    }
    pass(1, "c_k exact for k = 1..6");
}

#[test]
fn criterion_02_ck_approx_large() {
    let expected = [
        (7u32, "8.587e34"),
        (8, "4.594e51"),
        (9, "2.060e72"),
        (10, "1.237e97"),
    ];
    for (k, want) in expected {
        assert_eq!(scientific(&ck(k), 4), want, "c_{k} approximation mismatch");
    }
    pass(2, "c_k matches 4-digit approximations for k = 7..10");
}

#[test]
fn criterion_03_evaluation_oracle_agreement() {
    for k in 1..=5u32 {
        assert_eq!(
            oracle::ck_via_evaluation(k).unwrap(),
            ck(k),
            "evaluation oracle disagrees at k = {k}"
        );
    }
    pass(3, "ck_via_evaluation = ck for k <= 5");
}

fn random_distinct_point(rng: &mut impl Rng, len: usize) -> EvalPoint {
    loop {
        let coords: Vec<i64> = (0..len).map(|_| rng.gen_range(-50..=50)).collect();
        let point = EvalPoint::new(coords).unwrap();
        if point.is_distinct() {
            return point;
        }
    }
}

#[test]
fn criterion_04_mines_cancel_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for k in 1..=4u32 {
        let c = ck(k);
        let signed_c = if k % 2 == 1 { -c.clone() } else { c.clone() };
        for _ in 0..20 {
            let point = random_distinct_point(&mut rng, 2 * k as usize);
            let expected = &signed_c * oracle::eval_vandermonde(&point);
            for _ in 0..5 {
                let mut mines = std::collections::BTreeSet::new();
                while mines.len() < k as usize {
                    mines.insert(rng.gen_range(-50i64..=50));
                }
                let mines = MineField::new(mines);
                let got = oracle::eval_q_mines(k, &mines, &point).unwrap();
                assert_eq!(got, expected, "identity fails at k={k}, point {point:?}");
            }
        }
    }
    pass(4, "permutation sum = (-1)^k c_k Vandermonde, mine-independent");
}

#[test]
fn criterion_05_recurrence_equivalence() {
    let mut discrepancies = 0u64;
    for n in 1..=4u32 {
        for u in 0..=3u32 {
            let table = AlphaTable::new(u);
            for v in 0..=3u32 {
                let spec = PolySpec::new(n, u, v).unwrap();
                let expansion = oracle::expand_q(spec).unwrap();

                // Every strictly decreasing exponent vector: expansion
                // coefficient equals alpha.
                for parts in coeffs::distinct_partitions(spec.degree(), n) {
                    let exps: Vec<u32> = parts.clone();
                    let from_expansion = expansion.coefficient(&exps);
                    let d = DistinctPartition::new(parts.clone()).unwrap();
                    let from_alpha = table.alpha(n, v, &d).unwrap();
                    if from_expansion != from_alpha {
                        discrepancies += 1;
                    }

                    // v-decrement identity.
                    if v >= 1 {
                        let mut sum = BigInt::zero();
                        for i in 0..parts.len() {
                            if parts[i] == 0 {
                                continue;
                            }
                            if i + 1 < parts.len() && parts[i] - 1 == parts[i + 1] {
                                continue;
                            }
                            let mut child = parts.clone();
                            child[i] -= 1;
                            let child = DistinctPartition::new(child).unwrap();
                            sum += table.alpha(n, v - 1, &child).unwrap();
                        }
                        if sum != from_alpha {
                            discrepancies += 1;
                        }
                    }

                    // v = 0 reduction.
                    if v == 0 && n >= 2 {
                        let expected = if *parts.last().unwrap() > 0 {
                            BigInt::zero()
                        } else {
                            let head =
                                DistinctPartition::new(parts[..parts.len() - 1].to_vec()).unwrap();
                            AlphaTable::new(u).alpha(n - 1, u, &head).unwrap()
                        };
                        if expected != from_alpha {
                            discrepancies += 1;
                        }
                    }
                }

                // And the reverse direction: every expansion term with a
                // strictly decreasing exponent vector is reproduced by the
                // coefficient table.
                let ctable = coeffs::coefficient_table(spec).unwrap();
                for (monomial, coeff) in expansion.terms() {
                    let exps = &monomial.0;
                    if exps.windows(2).all(|w| w[0] > w[1]) {
                        let d = DistinctPartition::new(exps.clone()).unwrap();
                        if ctable.entries.get(&d) != Some(coeff) {
                            discrepancies += 1;
                        }
                    }
                }
            }
        }
    }
    assert_eq!(discrepancies, 0);
    pass(5, "expansion/alpha agreement and both recurrence identities, n <= 4, u,v <= 3");
}

#[test]
fn criterion_06_nonnegativity_and_positivity() {
    for n in 1..=4u32 {
        for u in 0..=3u32 {
            let table = AlphaTable::new(u);
            for v in 0..=3u32 {
                let spec = PolySpec::new(n, u, v).unwrap();
                let ctable = coeffs::coefficient_table(spec).unwrap();
                for (d, value) in &ctable.entries {
                    assert!(
                        !value.is_negative(),
                        "negative coefficient at {spec:?} {d:?}"
                    );
                }
                // Positivity hypotheses: u >= n/2, full degree, d_n <= v.
                if 2 * u >= n {
                    for parts in coeffs::distinct_partitions(spec.degree(), n) {
                        if u64::from(*parts.last().unwrap()) <= u64::from(v) {
                            let d = DistinctPartition::new(parts).unwrap();
                            let value = table.alpha(n, v, &d).unwrap();
                            assert!(
                                value.is_positive(),
                                "positivity fails at {spec:?} {d:?}"
                            );
                        }
                    }
                }
            }
        }
    }
    pass(6, "no negative coefficients; positivity hypotheses give > 0");
}

#[test]
fn criterion_07_extremal_blockage_and_sharpness() {
    for n in 2..=20u32 {
        for hops in [HopMode::Allowed, HopMode::Prohibited] {
            let (jumps, mines) = route::extremal_instance(n, hops).unwrap();
            assert!(
                route::is_blocked(&jumps, &mines).unwrap(),
                "extremal n={n} {hops:?} should be blocked"
            );
        }
    }
    for n in 2..=16u32 {
        for hops in [HopMode::Allowed, HopMode::Prohibited] {
            let (jumps, mines) = route::extremal_instance(n, hops).unwrap();
            for m in mines.iter() {
                let reduced = mines.without(m);
                assert!(reduced.len() <= route::theorem_bound(&jumps));
                let verdict = route::find_safe_order(&jumps, &reduced).unwrap();
                let route_found = verdict.route().expect("must route after removing one mine");
                assert!(route_found.is_valid_for(&jumps, &reduced));
            }
        }
    }
    pass(7, "extremal families blocked (n <= 20); one mine fewer routes (n <= 16)");
}

#[test]
fn criterion_08_theorem_campaign() {
    for (allow_zero, seed) in [(false, 8u64), (true, 88u64)] {
        let config = route::CampaignConfig {
            trials: 5_000,
            n_min: 2,
            n_max: 12,
            jump_min: -20,
            jump_max: 20,
            allow_zero,
            seed,
        };
        let stats = route::random_campaign(&config).unwrap();
        assert_eq!(stats.trials_run, 5_000);
        assert_eq!(
            stats.violations, 0,
            "violation with allow_zero={allow_zero}: {:?}",
            stats.first_violation
        );
    }
    pass(8, "10 000 random instances at the exact bound, zero violations");
}

#[test]
fn criterion_09_subset_dp_vs_exhaustive() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for trial in 0..1_000 {
        let n = rng.gen_range(2..=8usize);
        let allow_zero = rng.gen_bool(0.3);
        let mut vals = std::collections::BTreeSet::new();
        while vals.len() < n {
            let v: i64 = rng.gen_range(-12..=12);
            if v != 0 || allow_zero {
                vals.insert(v);
            }
        }
        let jumps = JumpMultiset::new(vals.into_iter().collect(), allow_zero).unwrap();
        let mine_count = rng.gen_range(0..=n);
        let mines = MineField::new((0..mine_count).map(|_| rng.gen_range(-15i64..=15)));

        let dp = route::find_safe_order(&jumps, &mines).unwrap();
        let brute = route::exhaustive_route(&jumps, &mines).unwrap();
        assert_eq!(
            dp.is_blocked(),
            brute.is_none(),
            "verdict mismatch on trial {trial}: jumps {:?}, mines {:?}",
            jumps.jumps(),
            mines.iter().collect::<Vec<_>>()
        );
        if let Some(r) = dp.route() {
            assert!(r.is_valid_for(&jumps, &mines));
        }
    }
    pass(9, "subset DP agrees with n! enumeration on 1 000 random instances");
}

#[test]
fn criterion_10_appendix_algorithm_corpus() {
    use itertools::Itertools;
    const CAP: usize = 100_000;
    let mut instances = 0usize;
    'outer: for n in 1..=6usize {
        for jumps in (1i64..=8).combinations(n) {
            let total: i64 = jumps.iter().sum();
            for mines in (1i64..=total).combinations(n - 1) {
                let instance = PositiveInstance::from_integers(&jumps, &mines).unwrap();
                let route = olympiad::positive_safe_order(&instance)
                    .unwrap_or_else(|e| panic!("jumps {jumps:?} mines {mines:?}: {e}"));
                assert!(
                    route.is_valid_for(&instance),
                    "invalid route for jumps {jumps:?} mines {mines:?}"
                );
                instances += 1;
                if instances >= CAP {
                    break 'outer;
                }
            }
        }
    }
    assert!(instances > 10_000, "corpus unexpectedly small: {instances}");
    pass(10, "positive-jumps construction valid on exhaustive small corpus");
}

#[test]
fn criterion_11_factorizations_and_scan() {
    for claim in modular::published_claims() {
        assert!(
            modular::verify_factorization(&claim).unwrap(),
            "published claim for k={} fails",
            claim.k
        );
    }
    assert_eq!(modular::divisor_scan(4, 100).unwrap(), vec![2, 3, 7, 97]);
    pass(11, "published factorizations verify; divisor_scan(4, 100) = {2,3,7,97}");
}

#[test]
fn criterion_12_modular_consistency() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let exact: Vec<BigInt> = (1..=6).map(|k| ck(k)).collect();
    for _ in 0..20 {
        let p = loop {
            let candidate = rng.gen_range((1u64 << 30)..(1u64 << 31));
            if modular::is_prime_u64(candidate) {
                break candidate;
            }
        };
        let modulus = PrimeModulus::new(p).unwrap();
        for k in 1..=6u32 {
            let expected = (&exact[k as usize - 1] % BigInt::from(p))
                .to_string()
                .parse::<u64>()
                .unwrap();
            assert_eq!(
                modular::ck_mod(k, &modulus).unwrap(),
                expected,
                "residue mismatch at k={k}, p={p}"
            );
        }
    }
    pass(12, "ck_mod agrees with exact reduction over 20 random 31-bit primes");
}

#[test]
fn criterion_13_nullstellensatz_toy_identity() {
    for k in 1..=2u32 {
        assert_eq!(oracle::nullstellensatz_coefficient(k).unwrap(), ck(k));
    }
    pass(13, "grid-certificate coefficient equals c_k for k <= 2");
}
