mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use turan3::constructions::{make_complete_tripartite, make_extremal, make_pattern, PatternTag};
use turan3::designs::ExF2tConfig;
use turan3::detection::automorphism_count;
use turan3::{contains_f5t, count_copies, find_embedding, Budget, Containment, Hypergraph3};

fn random_host(rng: &mut ChaCha8Rng, n: u32, p: f64) -> Hypergraph3 {
    let edges: Vec<[u32; 3]> = common::triples(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
    Hypergraph3::new(n, edges).unwrap()
}

#[test]
fn embedding_examples() {
    let f5 = make_pattern(PatternTag::F5t, 0);
    let f52 = make_pattern(PatternTag::F5t, 2);
    let e = find_embedding(&f52, &f5, Budget::unlimited());
    assert!(e.embedding().unwrap().is_valid(&f52, &f5));
    let s12 = make_complete_tripartite(12).unwrap().hypergraph;
    assert_eq!(find_embedding(&s12, &f5, Budget::unlimited()), Containment::Absent);
    let k4 = make_pattern(PatternTag::K4Minus, 0);
    assert_eq!(find_embedding(&f5, &k4, Budget::unlimited()), Containment::Absent);
    assert!(!common::naive_contains(&f5, &k4));
    assert_eq!(find_embedding(&f5, &f52, Budget::unlimited()), Containment::Absent);
}

#[test]
fn budget_is_reported() {
    let fhat = make_pattern(PatternTag::FHat, 0);
    let host = make_pattern(PatternTag::F5t, 0).blow_up(7).unwrap();
    assert_eq!(find_embedding(&host, &fhat, Budget::nodes(10)), Containment::Timeout);
}

#[test]
fn specialized_examples() {
    for t in 0..=5 {
        let p = make_pattern(PatternTag::F5t, t);
        assert!(contains_f5t(&p, t).unwrap().is_valid(&p, &p));
        assert!(contains_f5t(&p, t + 1).is_none());
    }
    let f53 = make_pattern(PatternTag::F5t, 3);
    let w = contains_f5t(&f53, 2).unwrap();
    assert!(w.is_valid(&f53, &make_pattern(PatternTag::F5t, 2)));
    let h = make_extremal(21, 1, &ExF2tConfig::default()).unwrap().hypergraph;
    assert!(contains_f5t(&h, 1).is_none());
}

#[test]
fn copy_counts() {
    let f5 = make_pattern(PatternTag::F5t, 0);
    assert_eq!(automorphism_count(&f5), 4);
    assert_eq!(count_copies(&f5, &f5, Budget::unlimited()), Some(1));
    let edge = Hypergraph3::new(3, [[1, 2, 3]]).unwrap();
    assert_eq!(count_copies(&Hypergraph3::complete(5), &edge, Budget::unlimited()), Some(10));
    let s9 = make_complete_tripartite(9).unwrap().hypergraph;
    assert_eq!(count_copies(&s9, &f5, Budget::unlimited()), Some(0));
    assert_eq!(count_copies(&Hypergraph3::complete(5), &f5, Budget::unlimited()), Some(30));
}

#[test]
fn blow_up_contains_satellites() {
    let f5 = make_pattern(PatternTag::F5t, 0);
    for t in 0..=5 {
        let host = f5.blow_up(t + 1).unwrap();
        let p = make_pattern(PatternTag::F5t, t);
        let e = find_embedding(&host, &p, Budget::unlimited());
        assert!(e.embedding().unwrap().is_valid(&host, &p), "t = {t}");
    }
}

#[test]
fn specialized_agrees_with_generic() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..500 {
        let n = rng.gen_range(5..=12);
        let t = rng.gen_range(0..=3);
        let p = [0.05, 0.15, 0.3][i % 3];
        let h = random_host(&mut rng, n, p);
        let fast = contains_f5t(&h, t);
        let slow = find_embedding(&h, &make_pattern(PatternTag::F5t, t), Budget::unlimited());
        assert_eq!(fast.is_some(), slow.is_found(), "n={n} t={t} edges={:?}", h.edges());
        if let Some(w) = fast {
            assert!(w.is_valid(&h, &make_pattern(PatternTag::F5t, t)));
        }
    }
}

#[test]
fn generic_agrees_with_naive() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let patterns = [
        make_pattern(PatternTag::F5t, 0),
        make_pattern(PatternTag::F5t, 1),
        make_pattern(PatternTag::K4Minus, 0),
        make_pattern(PatternTag::F2t, 2),
    ];
    for i in 0..200 {
        let n = rng.gen_range(4..=7);
        let h = random_host(&mut rng, n, [0.2, 0.4][i % 2]);
        for p in &patterns {
            let found = find_embedding(&h, p, Budget::unlimited()).is_found();
            assert_eq!(found, common::naive_contains(&h, p));
            let copies = count_copies(&h, p, Budget::unlimited()).unwrap();
            assert_eq!(copies == 0, !found);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn freeness_is_monotone(seed in any::<u64>(), n in 5u32..=11, t in 0u32..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_host(&mut rng, n, 0.2);
        if contains_f5t(&h, t).is_none() {
            for u in t..=t + 3 {
                prop_assert!(contains_f5t(&h, u).is_none());
            }
        }
    }
}
