//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use selfsim::conjugacy::{
    is_conj_in_g, min_level_distinguishing, recognize_type_c, CandidateFamily, DEFAULT_ORBIT_BUDGET,
};
use selfsim::dynamics::{
    identify_groups, orbit_classify, ArithmeticGroup, ClassifyOptions, GeometricGroup,
    GroupIdentification, OrbitCase, QuadraticMorphism,
};
use selfsim::group::{
    enumerate_level, generator_signs, hausdorff_dimension, is_member, order_log2,
    standard_generators, verify_product_relation, Generator, DEFAULT_MAX_ELEMENTS,
};
use selfsim::inclusions::{check_inclusion, refute_reverse};
use selfsim::normalizer::{coset_independence, normalizer_report};
use selfsim::tree::{conj_in_w, Portrait};

const SEED: u64 = 0x5eed;

/// Least `n` at which `a_i` and `b_i` are not conjugate in `G_n`, found by
/// orbit search and pinned here: `(r, i, n)`.
const DISTINGUISHING_LEVELS: [(u32, u32, u32); 6] = [
    (1, 1, 2),
    (2, 1, 3),
    (2, 2, 4),
    (3, 1, 4),
    (3, 2, 5),
    (3, 3, 6),
];

/// Least `n` with `φ(k) ∉ G_n` for nonzero `k ⊂ {1 … 4}`. Every computed
/// value equals `r + min(k)`.
fn independence_level(r: u32, support_min: u32) -> u32 {
    r + support_min
}

const ORDER_CASES: [(u32, u32); 3] = [(1, 5), (2, 4), (3, 4)];
const PRODUCT_TIME_LIMIT: Duration = Duration::from_secs(5);
const ORDER_TIME_LIMIT: Duration = Duration::from_secs(60);
const SEMIRIGID_TIME_LIMIT: Duration = Duration::from_secs(120);
const DYNAMICS_TIME_LIMIT: Duration = Duration::from_secs(1);
const MEMBERSHIP_SAMPLES: usize = 10_000;
const SEMIRIGID_TRIALS: usize = 100;
const HAUSDORFF_TOLERANCE: f64 = 1.0 / 64.0;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

type Check = fn() -> Outcome;

fn order_formula() -> Outcome {
    let start = Instant::now();
    for (r, n_max) in ORDER_CASES {
        for n in 1..=n_max {
            let level = match enumerate_level(r, n, DEFAULT_MAX_ELEMENTS) {
                Ok(l) => l,
                Err(e) => return outcome(false, format!("r={r} n={n}: {e}")),
            };
            let expected = 1u128 << order_log2(r, n);
            if level.len() as u128 != expected {
                return outcome(
                    false,
                    format!("r={r} n={n}: enumerated {} vs {expected}", level.len()),
                );
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        elapsed < ORDER_TIME_LIMIT,
        format!("enumerated orders match 2^(2^n - 2^(n-r)), |G_5| = 65536 for r=1, {elapsed:.2?}"),
    )
}

fn full_group_low_levels() -> Outcome {
    for r in 1..=3 {
        for n in 1..=r + 1 {
            let size = enumerate_level(r, n, DEFAULT_MAX_ELEMENTS).unwrap().len() as u128;
            let full = size == 1u128 << ((1u32 << n) - 1);
            if full != (n <= r) {
                return outcome(false, format!("r={r} n={n}: |G_n| = {size}"));
            }
        }
    }
    outcome(true, "G_n = W_n exactly for n <= r, r <= 3")
}

fn product_relation() -> Outcome {
    let start = Instant::now();
    for r in 1..=4 {
        for n in 1..=12 {
            if !verify_product_relation(r, n).unwrap() {
                return outcome(false, format!("r={r} n={n}"));
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        elapsed < PRODUCT_TIME_LIMIT,
        format!("b_1...b_r = a_1 a_2 ... at depths <= 12, r <= 4, {elapsed:.2?}"),
    )
}

fn generator_sign_table() -> Outcome {
    for r in 1..=4 {
        let table = generator_signs(r, 12).unwrap();
        for (g, row) in &table.rows {
            let i = match g {
                Generator::A(i) | Generator::B(i) => *i,
            };
            for (m, s) in row.iter().enumerate() {
                let want = if i <= r && m as u32 + 1 == i { -1 } else { 1 };
                if *s != want {
                    return outcome(false, format!("r={r} {g} sgn_{}", m + 1));
                }
            }
        }
    }
    outcome(true, "sgn_n(a_i) = sgn_n(b_i) = (-1)^delta(n,i) for i <= r, sgn_n(a_i) = 1 for i > r; r <= 4, n, i <= 12")
}

fn membership_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut disagreements = 0;
    let mut checked = 0;
    for r in 1..=3 {
        for n in 1..=3 {
            let level = enumerate_level(r, n, DEFAULT_MAX_ELEMENTS).unwrap();
            for g in Portrait::all(n) {
                checked += 1;
                disagreements += usize::from(is_member(&g, r) != level.contains(&g));
            }
        }
    }
    for (r, n) in [(1, 4), (2, 4), (3, 4), (1, 5)] {
        let level = enumerate_level(r, n, DEFAULT_MAX_ELEMENTS).unwrap();
        for k in 0..MEMBERSHIP_SAMPLES {
            let g = if k % 2 == 0 {
                Portrait::random(n, &mut rng)
            } else {
                level.elements.choose(&mut rng).unwrap().clone()
            };
            checked += 1;
            disagreements += usize::from(is_member(&g, r) != level.contains(&g));
        }
    }
    outcome(
        disagreements == 0,
        format!("{disagreements} disagreements in {checked} checks against enumeration"),
    )
}

fn conjugacy_dichotomy() -> Outcome {
    for r in 1..=3 {
        let gens = standard_generators(r, 8).unwrap();
        for i in 1..=r {
            if !conj_in_w(&gens.a(i), gens.b(i)).unwrap() {
                return outcome(false, format!("a_{i}, b_{i} not W-conjugate at r={r}"));
            }
        }
    }
    for (r, i, n) in DISTINGUISHING_LEVELS {
        let found = min_level_distinguishing(i, r, 6, DEFAULT_ORBIT_BUDGET).unwrap();
        if found != Some(n) {
            return outcome(false, format!("r={r} i={i}: level {found:?}, pinned {n}"));
        }
    }
    let gens = standard_generators(1, 4).unwrap();
    let b = standard_generators(1, 3).unwrap().b(1).clone();
    let diag = Portrait::pair(&b, &b, false).unwrap();
    let w_conj = conj_in_w(&diag, &gens.a(2)).unwrap();
    let g_conj = is_conj_in_g(&gens.a(2), &diag, 1, DEFAULT_ORBIT_BUDGET)
        .unwrap()
        .is_some();
    outcome(
        w_conj && !g_conj,
        "a_i ~_W b_i; G_n-separation at n = r + i; (b_1, b_1) vs a_2 W- but not G_4-conjugate",
    )
}

fn normalizer_suite() -> Outcome {
    for r in 1..=3 {
        for n in 1..=8 {
            let rep = normalizer_report(r, n, 5).unwrap();
            if !rep.passed() {
                return outcome(false, format!("r={r} n={n}: {rep:?}"));
            }
        }
        for (k, level) in coset_independence(r, 4, 8).unwrap() {
            let pinned = independence_level(r, *k.support().first().unwrap());
            if level != Some(pinned) {
                return outcome(
                    false,
                    format!("r={r} k={k}: level {level:?}, pinned {pinned}"),
                );
            }
        }
    }
    outcome(
        true,
        "w_1..w_5 and w~ normalize, commutators and w~^2 in G, w_1^-1 a_1 w_1 = b_1, phi(k) leaves G at n = r + min(k)",
    )
}

fn inclusions() -> Outcome {
    for r_big in 2..=4 {
        for r_small in 1..r_big {
            if !check_inclusion(r_small, r_big, 10).unwrap() {
                return outcome(
                    false,
                    format!("G({r_small}), N({r_small}) not inside G({r_big})"),
                );
            }
            if refute_reverse(r_small, r_big).is_none() {
                return outcome(
                    false,
                    format!("no order growth separating G({r_big}) from G({r_small})"),
                );
            }
        }
    }
    outcome(
        true,
        "G(r') and N(r') inside G(r) at depths <= 10, reverse refuted by order growth",
    )
}

fn semirigidity() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut successes = 0;
    for trial in 0..SEMIRIGID_TRIALS {
        let r = 1 + (trial % 2) as u32;
        let n = 1 + (trial / 2 % 5) as u32;
        let x = Portrait::random(n, &mut rng);
        let fam = CandidateFamily::standard(r, n).unwrap().conjugated(&x);
        let Ok(conj) = recognize_type_c(&fam) else {
            continue;
        };
        if !conj.verify(&fam).unwrap() {
            continue;
        }
        // Independent check by orbit search where the groups are small.
        if n <= 4 {
            let gens = standard_generators(r, n).unwrap();
            let w_inv = conj.w.inverse();
            let pairs = [
                (gens.a(1), Generator::A(1)),
                (gens.b(1).clone(), Generator::B(1)),
            ];
            let all_found = pairs.iter().all(|(s, g)| {
                let target = fam.get(*g).conjugate_by(&w_inv);
                is_conj_in_g(s, &target, r, DEFAULT_ORBIT_BUDGET)
                    .unwrap()
                    .is_some()
            });
            if !all_found {
                continue;
            }
        }
        successes += 1;
    }
    let elapsed = start.elapsed();
    outcome(
        successes == SEMIRIGID_TRIALS && elapsed < SEMIRIGID_TIME_LIMIT,
        format!("{successes}/{SEMIRIGID_TRIALS} random conjugates recognised, {elapsed:.2?}"),
    )
}

fn dynamics_family() -> Outcome {
    let mut slowest = Duration::ZERO;
    for a in [2, 3, 5, -2, 1, -1] {
        let start = Instant::now();
        let f = QuadraticMorphism::from_integers([1, 0, -a, 1, 0, a]).unwrap();
        let c = orbit_classify(&f, ClassifyOptions::default()).unwrap();
        let ids = identify_groups(&c).unwrap();
        slowest = slowest.max(start.elapsed());
        let ok = if a.abs() == 1 {
            matches!(c.case, OrbitCase::FiniteOrbit(_))
        } else {
            c.case == OrbitCase::CaseC { r: 1, s: 1 }
                && c.critical_points_rational
                && ids
                    == GroupIdentification::Identified {
                        geometric: GeometricGroup::Gr(1),
                        arithmetic: ArithmeticGroup::SameAsGeometric,
                    }
        };
        if !ok {
            return outcome(false, format!("a={a}: {} / {ids}", c.case));
        }
    }
    outcome(
        slowest < DYNAMICS_TIME_LIMIT,
        format!("(x^2-a)/(x^2+a): a in {{2,3,5,-2}} case C(1,1) -> G(1), a = +-1 finite; slowest {slowest:.2?}"),
    )
}

fn hausdorff() -> Outcome {
    for r in 1..=4u32 {
        let limit = 1.0 - 0.5f64.powi(r as i32);
        if hausdorff_dimension(r) != Ratio::new((1u128 << r) - 1, 1u128 << r) {
            return outcome(false, format!("r={r}: {}", hausdorff_dimension(r)));
        }
        for n in 1..=12u32 {
            let ratio = Ratio::new(order_log2(r, n), (1u128 << n) - 1);
            let closed = if n <= r {
                Ratio::from_integer(1)
            } else {
                Ratio::new((1u128 << n) - (1u128 << (n - r)), (1u128 << n) - 1)
            };
            if ratio != closed {
                return outcome(false, format!("r={r} n={n}: {ratio} vs {closed}"));
            }
        }
        let at12 = order_log2(r, 12) as f64 / 4095.0;
        if (at12 - limit).abs() > HAUSDORFF_TOLERANCE {
            return outcome(false, format!("r={r}: {at12} vs {limit}"));
        }
    }
    outcome(
        true,
        "log2|G_n| / (2^n - 1) within 2^-6 of 1 - 2^-r at n = 12, r <= 4",
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 11] = [
        ("order formula", order_formula),
        ("full group at low levels", full_group_low_levels),
        ("product relation", product_relation),
        ("generator signs", generator_sign_table),
        ("membership oracle", membership_oracle),
        ("conjugacy dichotomy", conjugacy_dichotomy),
        ("normalizer", normalizer_suite),
        ("inclusions", inclusions),
        ("semirigidity round trip", semirigidity),
        ("dynamics", dynamics_family),
        ("hausdorff dimension", hausdorff),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let Outcome { ok, detail } = check();
        failed += usize::from(!ok);
        println!(
            "{} {:>2} {name}: {detail}",
            if ok { "PASS" } else { "FAIL" },
            k + 1
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
