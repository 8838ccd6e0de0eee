mod common;

use proptest::prelude::*;
use turan3::constructions::{make_complete_tripartite, s};
use turan3::search::{best_partition, export_maxsat, random_free_sample, turan_exact, PartitionConfig, TuranConfig, DEFAULT_COPY_LIMIT};
use turan3::{contains_f5t, ForbiddenFamily, Hypergraph3, SearchStatus};

fn family(spec: &str) -> ForbiddenFamily {
    ForbiddenFamily::parse(spec).unwrap()
}

fn exact(n: u32, spec: &str) -> i64 {
    let out = turan_exact(n, &family(spec), &TuranConfig::default()).unwrap();
    assert_eq!(out.status, SearchStatus::Optimal);
    assert_eq!(out.best, out.upper);
    assert_eq!(out.witness.edge_count() as i64, out.best);
    for p in family(spec).patterns() {
        assert!(!common::naive_contains(&out.witness, p));
    }
    out.best
}

/// Weighted maxSAT optimum of the exported text, by include/exclude search.
fn wcnf_optimum(text: &str) -> i64 {
    let mut lines = text.lines();
    let header: Vec<u64> = lines.next().unwrap().split_whitespace().skip(2).map(|x| x.parse().unwrap()).collect();
    let (vars, top) = (header[0] as usize, header[2]);
    let mut hard: Vec<Vec<usize>> = Vec::new();
    let mut soft = 0;
    for line in lines {
        let nums: Vec<i64> = line.split_whitespace().map(|x| x.parse().unwrap()).collect();
        assert_eq!(*nums.last().unwrap(), 0);
        if nums[0] as u64 == top {
            assert!(nums[1..nums.len() - 1].iter().all(|&l| l < 0));
            hard.push(nums[1..nums.len() - 1].iter().map(|&l| (-l) as usize).collect());
        } else {
            assert_eq!(nums.len(), 3);
            soft += 1;
        }
    }
    assert_eq!(soft, vars);
    let mut by_last: Vec<Vec<usize>> = vec![Vec::new(); vars + 1];
    for (i, c) in hard.iter().enumerate() {
        by_last[*c.iter().max().unwrap()].push(i);
    }
    fn go(v: usize, vars: usize, on: &mut Vec<bool>, size: i64, best: &mut i64, hard: &[Vec<usize>], by_last: &[Vec<usize>]) {
        if size + (vars + 1 - v) as i64 <= *best {
            return;
        }
        if v > vars {
            *best = size;
            return;
        }
        on[v] = true;
        if by_last[v].iter().all(|&c| hard[c].iter().any(|&x| !on[x])) {
            go(v + 1, vars, on, size + 1, best, hard, by_last);
        }
        on[v] = false;
        go(v + 1, vars, on, size, best, hard, by_last);
    }
    let mut best = 0;
    go(1, vars, &mut vec![false; vars + 1], 0, &mut best, &hard, &by_last);
    best
}

#[test]
fn matches_enumeration() {
    for spec in ["f5t:0", "f2t:1", "k4minus", "k4minus,f5t:0"] {
        let fam = family(spec);
        for n in 3..=5 {
            let oracle = common::brute_max(n, |h| fam.patterns().all(|p| !common::naive_contains(h, p)));
            assert_eq!(exact(n, spec), oracle as i64, "{spec} at n = {n}");
        }
    }
}

#[test]
fn examples() {
    assert_eq!(exact(5, "f2t:1"), 2);
    assert_eq!(exact(4, "k4minus"), 2);
    let f5 = exact(5, "f5");
    assert!(f5 >= 6 && f5 >= s(5));
}

#[test]
fn two_pattern_family_matches_tripartite() {
    for n in 4..=7 {
        assert_eq!(exact(n, "k4minus,f5t:0"), s(n), "n = {n}");
    }
}

#[test]
fn monotone() {
    for spec in ["f5t:0", "f2t:1", "k4minus", "f5t:1"] {
        let values: Vec<i64> = (3..=7).map(|n| exact(n, spec)).collect();
        assert!(values.windows(2).all(|w| w[0] <= w[1]), "{spec}: {values:?}");
    }
    for n in 4..=7 {
        assert!(exact(n, "k4minus,f5t:0") <= exact(n, "k4minus").min(exact(n, "f5t:0")));
        assert!(exact(n, "f5t:0,f2t:1") <= exact(n, "f2t:1"));
    }
}

#[test]
fn deterministic() {
    let a = turan_exact(6, &family("f5t:1"), &TuranConfig::default()).unwrap();
    let b = turan_exact(6, &family("f5t:1"), &TuranConfig::default()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn budget_gives_bounds() {
    let config = TuranConfig {
        budget: turan3::Budget::nodes(50),
        max_n: 10,
    };
    let out = turan_exact(7, &family("f5t:0"), &config).unwrap();
    assert_ne!(out.status, SearchStatus::Optimal);
    assert!(out.best <= out.upper);
    assert!(contains_f5t(&out.witness, 0).is_none());
    assert!(turan_exact(11, &family("f5"), &TuranConfig::default()).is_err());
}

#[test]
fn wcnf_counts() {
    let w = export_maxsat(5, &family("f5"), DEFAULT_COPY_LIMIT).unwrap();
    assert_eq!((w.vars, w.soft_count(), w.hard.len()), (10, 10, 30));
    let w = export_maxsat(4, &family("f2t:1"), DEFAULT_COPY_LIMIT).unwrap();
    assert_eq!(w.hard.len(), 6);
    assert!(w.hard.iter().all(|c| c.len() == 2));
    let w = export_maxsat(3, &family("f5"), DEFAULT_COPY_LIMIT).unwrap();
    assert_eq!((w.vars, w.soft_count(), w.hard.len()), (1, 1, 0));
    assert!(export_maxsat(12, &family("f5"), 1000).is_err());
}

#[test]
fn wcnf_optimum_matches_search() {
    for spec in ["f5t:0", "f2t:1", "k4minus", "k4minus,f5t:0", "f5t:1"] {
        for n in 3..=6 {
            let text = export_maxsat(n, &family(spec), DEFAULT_COPY_LIMIT).unwrap().to_string();
            assert_eq!(wcnf_optimum(&text), exact(n, spec), "{spec} at n = {n}");
        }
    }
}

fn brute_partition(h: &Hypergraph3) -> usize {
    let n = h.n() as usize;
    let mut best = 0;
    for code in 0..3usize.pow(n as u32) {
        let colour: Vec<usize> = (0..n).map(|i| code / 3usize.pow(i as u32) % 3).collect();
        let crossing = h
            .edges()
            .iter()
            .filter(|e| {
                let [a, b, c] = e.vertices().map(|v| colour[v as usize - 1]);
                a != b && b != c && a != c
            })
            .count();
        best = best.max(crossing);
    }
    best
}

#[test]
fn partition_examples() {
    let s9 = make_complete_tripartite(9).unwrap();
    let r = best_partition(&s9.hypergraph, &PartitionConfig::default());
    assert_eq!(r.crossing, 27);
    assert!(r.exact);
    let mut parts: Vec<Vec<u32>> = r.partition.parts().to_vec();
    let mut want: Vec<Vec<u32>> = s9.partition.parts().to_vec();
    parts.sort();
    want.sort();
    assert_eq!(parts, want);
    let r = best_partition(&Hypergraph3::complete(6), &PartitionConfig::default());
    assert_eq!(r.crossing, 8);
    assert_eq!(best_partition(&Hypergraph3::empty(7), &PartitionConfig::default()).crossing, 0);
}

#[test]
fn samples() {
    let h = random_free_sample(12, 1, 0.0, 5).unwrap();
    assert_eq!(h.edge_count(), 0);
    assert_eq!(random_free_sample(12, 1, 0.4, 5).unwrap(), random_free_sample(12, 1, 0.4, 5).unwrap());
    assert!(random_free_sample(12, 1, 1.5, 5).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn partition_is_optimal(n in 3u32..=8, mask in any::<u64>()) {
        let all = common::triples(n);
        let h = common::from_mask(n, &all, mask);
        let r = best_partition(&h, &PartitionConfig::default());
        prop_assert_eq!(r.crossing, brute_partition(&h));
        prop_assert_eq!(h.crossing_count(&r.partition), r.crossing);
    }

    #[test]
    fn samples_are_free(n in 5u32..=16, t in 0u32..=3, density in 0.0f64..=1.0, seed in any::<u64>()) {
        let h = random_free_sample(n, t, density, seed).unwrap();
        prop_assert!(contains_f5t(&h, t).is_none());
        prop_assert_eq!(h, random_free_sample(n, t, density, seed).unwrap());
    }

    #[test]
    fn search_witness_is_free(n in 3u32..=6, t in 0u32..=2) {
        let out = turan_exact(n, &ForbiddenFamily::f5t(t), &TuranConfig::default()).unwrap();
        prop_assert!(contains_f5t(&out.witness, t).is_none());
        prop_assert_eq!(out.witness.edge_count() as i64, out.best);
    }
}
