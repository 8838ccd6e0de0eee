mod common;

use turan3::constructions::{
    balanced_sizes, make_complete_tripartite, make_decorated_tripartite, make_extremal, make_pattern, make_satellite, make_shat, s,
    Decoration, PatternTag,
};
use turan3::designs::{c4_free_graph, ExF2tConfig};
use turan3::{contains_f5t, find_embedding, Budget, Hypergraph3};

#[test]
fn tripartite_sizes() {
    for (n, m) in [(6, 8), (9, 27), (7, 12)] {
        let h = make_complete_tripartite(n).unwrap();
        assert_eq!(h.hypergraph.edge_count(), m);
        assert_eq!(s(n), m as i64);
        assert!(h.partition.is_balanced());
    }
    assert!(make_complete_tripartite(2).is_err());
    for n in 3..40 {
        let [a, b, c] = balanced_sizes(n);
        assert_eq!((a, b, c), (n / 3, (n + 1) / 3, n.div_ceil(3)));
    }
}

#[test]
fn pattern_shapes() {
    let f5 = make_pattern(PatternTag::F5t, 0);
    assert_eq!(f5, Hypergraph3::new(5, [[1, 2, 3], [1, 2, 4], [3, 4, 5]]).unwrap());
    assert_eq!(
        make_pattern(PatternTag::F2t, 2),
        Hypergraph3::new(5, [[1, 2, 3], [1, 2, 4], [1, 2, 5]]).unwrap()
    );
    for t in 0..6 {
        let p = make_pattern(PatternTag::F5t, t);
        assert_eq!((p.n(), p.edge_count()), (5 + t, t as usize + 3));
        let b = make_pattern(PatternTag::F2t, t);
        assert_eq!((b.n(), b.edge_count()), (3 + t, t as usize + 1));
    }
    let k4 = make_pattern(PatternTag::K4Minus, 0);
    assert_eq!((k4.n(), k4.edge_count()), (4, 3));
    let f5p = make_pattern(PatternTag::F5Prime, 0);
    assert_eq!((f5p.n(), f5p.edge_count()), (7, 4));
    let fhat = make_pattern(PatternTag::FHat, 0);
    assert_eq!((fhat.n(), fhat.edge_count()), (20, 18));
    assert!("nonsense".parse::<PatternTag>().is_err());
}

#[test]
fn decorations() {
    for m in 9..=20 {
        for d in [Decoration::InnerTriple, Decoration::TwoPlusOne] {
            let h = make_decorated_tripartite(m, d).unwrap();
            assert_eq!(h.hypergraph.edge_count() as i64, s(m) + 1);
            assert_eq!(h.hypergraph.n(), m);
        }
        let p = make_decorated_tripartite(m, Decoration::PendantVertex).unwrap();
        assert_eq!(p.hypergraph.edge_count() as i64, s(m - 1) + 1);
        assert_eq!(p.hypergraph.n(), m);
    }
    assert!(make_decorated_tripartite(8, Decoration::InnerTriple).is_err());
    assert!(make_decorated_tripartite(5, Decoration::TwoPlusOne).is_err());
    assert!(make_decorated_tripartite(6, Decoration::PendantVertex).is_err());
}

fn recount_satellite(n: u32, t: u32, sizes: [u32; 3]) -> usize {
    let part = |v: u32| -> Option<usize> {
        if v <= t {
            return None;
        }
        let mut lo = t;
        for (i, &s) in sizes.iter().enumerate() {
            if v <= lo + s {
                return Some(i);
            }
            lo += s;
        }
        unreachable!()
    };
    common::triples(n)
        .into_iter()
        .filter(|&[a, b, c]| match (part(a), part(b), part(c)) {
            (None, None, None) => true,
            (None, Some(x), Some(y)) => x == y,
            (None, None, Some(_)) => false,
            (Some(x), Some(y), Some(z)) => x != y && y != z && x != z,
            _ => false,
        })
        .count()
}

#[test]
fn satellite_counts() {
    let h = make_satellite(12, 3, [3, 3, 3]).unwrap();
    assert_eq!(h.hypergraph.edge_count(), 55);
    assert_eq!(make_satellite(10, 1, [3, 3, 3]).unwrap().hypergraph.edge_count(), 36);
    for (n, t, sizes) in [(12, 3, [3, 3, 3]), (10, 1, [3, 3, 3]), (11, 2, [0, 4, 5]), (15, 4, [2, 3, 6]), (9, 5, [4, 0, 0])] {
        let h = make_satellite(n, t, sizes).unwrap();
        assert_eq!(h.hypergraph.edge_count(), recount_satellite(n, t, sizes));
        assert_eq!(h.tower, (1..=t).collect::<Vec<_>>());
    }
    assert!(make_satellite(10, 1, [3, 3, 2]).is_err());
    assert!(make_satellite(10, 0, [3, 3, 4]).is_err());
}

/// Maximum C4-free graph size by include/exclude search.
fn brute_c4(m: u32) -> usize {
    let pairs: Vec<(u32, u32)> = (1..=m).flat_map(|u| (u + 1..=m).map(move |v| (u, v))).collect();
    let mut adj = vec![vec![false; m as usize + 1]; m as usize + 1];
    let mut best = 0;
    #[allow(clippy::needless_range_loop)]
    fn c4_through(adj: &[Vec<bool>], u: usize, v: usize) -> bool {
        let m = adj.len() - 1;
        for x in 1..=m {
            if x == u || x == v || !adj[u][x] {
                continue;
            }
            for y in 1..=m {
                if y != u && y != v && y != x && adj[x][y] && adj[y][v] {
                    return true;
                }
            }
        }
        false
    }
    fn go(i: usize, size: usize, pairs: &[(u32, u32)], adj: &mut Vec<Vec<bool>>, best: &mut usize) {
        if size + pairs.len() - i <= *best {
            return;
        }
        if i == pairs.len() {
            *best = size;
            return;
        }
        let (u, v) = (pairs[i].0 as usize, pairs[i].1 as usize);
        if !c4_through(adj, u, v) {
            adj[u][v] = true;
            adj[v][u] = true;
            go(i + 1, size + 1, pairs, adj, best);
            adj[u][v] = false;
            adj[v][u] = false;
        }
        go(i + 1, size, pairs, adj, best);
    }
    go(0, 0, &pairs, &mut adj, &mut best);
    best
}

#[test]
fn c4_free_block_is_maximum() {
    for m in 1..=9 {
        let g = c4_free_graph(m);
        assert_eq!(g.edge_count(), brute_c4(m), "m = {m}");
        assert!(g.certified_maximum);
    }
}

#[test]
fn shat_counts() {
    for n in 10..=30 {
        let h = make_shat(n).unwrap();
        let sizes = balanced_sizes(n - 1).map(|x| x as usize);
        let expected = s(n - 1) as usize + sizes[0] * (sizes[0] - 1) / 2 + sizes[1] * (sizes[1] - 1) / 2 + h.c4_free.edge_count();
        assert_eq!(h.hypergraph.edge_count(), expected);
        assert_eq!(h.hypergraph.degree(n).unwrap() as usize, expected - s(n - 1) as usize);
    }
    assert!(make_shat(9).is_err());
}

#[test]
fn extremal_examples() {
    let config = ExF2tConfig::default();
    let h = make_extremal(21, 1, &config).unwrap();
    assert_eq!(h.hypergraph.edge_count(), 364);
    assert_eq!(h.value.as_exact(), Some(364));
    let h = make_extremal(9, 0, &config).unwrap();
    assert_eq!(h.hypergraph.edge_count(), 27);
    assert_eq!(h.value.as_exact(), Some(27));
    let h = make_extremal(12, 1, &config).unwrap();
    assert_eq!(h.value.as_exact(), Some(67));
    let (crossing, missing) = h.hypergraph.crossing_split(&h.partition).unwrap();
    assert_eq!((crossing.edge_count(), missing.edge_count()), (64, 0));
    assert!(make_extremal(8, 1, &config).is_err());
}

#[test]
fn extremal_blocks_are_free() {
    let config = ExF2tConfig::default();
    for n in 9..=18 {
        for t in 0..=3 {
            let h = make_extremal(n, t, &config).unwrap();
            for block in &h.inner {
                assert!(block.witness.max_codegree() <= t);
                assert_eq!(block.witness.edge_count() as i64, block.value.lo());
            }
            assert_eq!(h.hypergraph.edge_count() as i64, h.value.lo());
            assert!(contains_f5t(&h.hypergraph, t).is_none(), "H°({n},{t})");
        }
    }
}

#[test]
fn tripartite_is_f5_free() {
    let f5 = make_pattern(PatternTag::F5t, 0);
    for n in 3..=15 {
        let h = make_complete_tripartite(n).unwrap().hypergraph;
        assert!(contains_f5t(&h, 0).is_none());
        assert!(!find_embedding(&h, &f5, Budget::unlimited()).is_found());
    }
}
