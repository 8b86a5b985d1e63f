use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use selfsim::conjugacy::{recognize_type_c, CandidateFamily};
use selfsim::group::{enumerate_level, is_member, standard_generators, DEFAULT_MAX_ELEMENTS};
use selfsim::tree::{Portrait, VertexPath};

fn portrait(depth: u32, seed: u64) -> Portrait {
    Portrait::random(depth, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Parity of the permutation `g` induces on level `m`, from its cycle count.
fn leaf_parity(g: &Portrait, m: u32) -> i8 {
    let size = 1usize << m;
    let mut seen = vec![false; size];
    let mut cycles = 0;
    for start in 0..size {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            v = g.act(&VertexPath::from_offset(m, v)).unwrap().offset();
        }
    }
    if (size - cycles).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn random_word(r: u32, n: u32, picks: &[u8]) -> Portrait {
    let gens = standard_generators(r, n).unwrap().nontrivial();
    picks.iter().fold(Portrait::identity(n), |acc, &k| {
        &acc * &gens[k as usize % gens.len()]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn composition_is_associative(depth in 1u32..=10, s in any::<[u64; 3]>()) {
        let (f, g, h) = (portrait(depth, s[0]), portrait(depth, s[1]), portrait(depth, s[2]));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
    }

    #[test]
    fn inverse_cancels(depth in 0u32..=12, seed in any::<u64>()) {
        let g = portrait(depth, seed);
        prop_assert!((&g * &g.inverse()).is_identity());
        prop_assert!((&g.inverse() * &g).is_identity());
        prop_assert_eq!(g.inverse().inverse(), g);
    }

    #[test]
    fn action_respects_composition(depth in 1u32..=8, s in any::<[u64; 2]>(), leaf in any::<usize>()) {
        let (g, h) = (portrait(depth, s[0]), portrait(depth, s[1]));
        let v = VertexPath::from_offset(depth, leaf % (1 << depth));
        prop_assert_eq!((&g * &h).act(&v).unwrap(), g.act(&h.act(&v).unwrap()).unwrap());
    }

    #[test]
    fn sign_is_multiplicative(depth in 1u32..=10, s in any::<[u64; 2]>()) {
        let (g, h) = (portrait(depth, s[0]), portrait(depth, s[1]));
        for m in 1..=depth {
            prop_assert_eq!((&g * &h).sign(m).unwrap(), g.sign(m).unwrap() * h.sign(m).unwrap());
        }
    }

    #[test]
    fn sign_is_leaf_parity(depth in 4u32..=8, seed in any::<u64>()) {
        let g = portrait(depth, seed);
        for m in 1..=depth {
            prop_assert_eq!(g.sign(m).unwrap(), leaf_parity(&g, m));
        }
    }

    #[test]
    fn hex_round_trip(depth in 0u32..=16, seed in any::<u64>()) {
        let g = portrait(depth, seed);
        prop_assert_eq!(Portrait::from_hex(&g.to_hex(), depth).unwrap(), g);
    }

    #[test]
    fn truncation_is_a_homomorphism(depth in 2u32..=10, m in 0u32..=10, s in any::<[u64; 2]>()) {
        let m = m.min(depth);
        let (g, h) = (portrait(depth, s[0]), portrait(depth, s[1]));
        prop_assert_eq!(
            (&g * &h).truncate(m).unwrap(),
            &g.truncate(m).unwrap() * &h.truncate(m).unwrap()
        );
    }

    #[test]
    fn generator_words_are_members(r in 1u32..=4, n in 1u32..=10, picks in prop::collection::vec(any::<u8>(), 0..24)) {
        let g = random_word(r, n, &picks);
        prop_assert!(is_member(&g, r));
        prop_assert!(is_member(&g.inverse(), r));
    }

    #[test]
    fn membership_is_closed(r in 1u32..=3, n in 1u32..=9, p in prop::collection::vec(any::<u8>(), 0..16), q in prop::collection::vec(any::<u8>(), 0..16), seed in any::<u64>()) {
        let g = random_word(r, n, &p);
        let h = random_word(r, n, &q);
        prop_assert!(is_member(&(&g * &h), r));
        let x = portrait(n, seed);
        prop_assert_eq!(is_member(&(&g * &x), r), is_member(&x, r));
    }

    #[test]
    fn recogniser_round_trip(r in 1u32..=2, n in 1u32..=6, seed in any::<u64>()) {
        let x = portrait(n, seed);
        let fam = CandidateFamily::standard(r, n).unwrap().conjugated(&x);
        let conj = recognize_type_c(&fam).unwrap();
        prop_assert!(conj.verify(&fam).unwrap());
    }
}

#[test]
fn sign_is_leaf_parity_exhaustive_w3() {
    for g in Portrait::all(3) {
        for m in 1..=3 {
            assert_eq!(g.sign(m).unwrap(), leaf_parity(&g, m));
        }
    }
}

#[test]
fn generator_truncation_is_coherent() {
    for r in 1..=4 {
        let top = standard_generators(r, 12).unwrap();
        for n in 1..=12 {
            let expected = standard_generators(r, n).unwrap();
            let truncated = top.truncate(n).unwrap();
            assert_eq!(
                truncated.labelled(),
                expected.labelled(),
                "r = {r}, n = {n}"
            );
        }
    }
}

#[test]
fn membership_matches_enumeration() {
    for r in 1..=2 {
        for n in 1..=4 {
            let level = enumerate_level(r, n, DEFAULT_MAX_ELEMENTS).unwrap();
            for g in Portrait::all(n) {
                assert_eq!(is_member(&g, r), level.contains(&g), "r = {r}, g = {g}");
            }
        }
    }
}
