mod common;

use proptest::prelude::*;
use turan3::designs::{
    appendix_lower_bound, build_steiner_triple_system, pair_covering, dense_block, decompose_exact, dehon_admissible, ex_f2t, ex_f2t_upper,
    k3t_divisible, verify_design, Decomposition, Design, ExF2tConfig, MultiplicityTarget,
};
use turan3::{canonical_form, Budget, Hypergraph3, Triple};

fn binom2(n: u32) -> u32 {
    n * n.saturating_sub(1) / 2
}

#[test]
fn dehon_grid() {
    for n in 2..=30i64 {
        for t in 0..=(n - 2).min(5) {
            let direct = (t * n * (n - 1)) % 6 == 0 && (t * (n - 1)) % 2 == 0;
            assert_eq!(dehon_admissible(n, t).unwrap(), direct, "({n},{t})");
        }
    }
    assert!(dehon_admissible(7, 1).unwrap());
    assert!(!dehon_admissible(6, 1).unwrap());
    assert!(dehon_admissible(9, 2).unwrap());
    assert!(dehon_admissible(5, 4).is_err());
    assert!(dehon_admissible(5, -1).is_err());
}

#[test]
fn steiner_systems() {
    for n in [3, 7, 9, 13, 15, 19, 21, 25, 27, 31, 33] {
        let d = build_steiner_triple_system(n).unwrap();
        assert_eq!(d.blocks.edge_count() as u32, n * (n - 1) / 6);
        assert!(verify_design(&d).valid);
    }
    assert_eq!(build_steiner_triple_system(3).unwrap().blocks.edges(), &[Triple::of(1, 2, 3)]);
    for n in [4, 5, 6, 8, 11] {
        assert!(build_steiner_triple_system(n).is_err());
    }
}

#[test]
fn decompositions() {
    let fano = decompose_exact(&MultiplicityTarget::complete(7), 1, Budget::unlimited()).unwrap().design().unwrap();
    assert_eq!(fano.blocks.edge_count(), 7);
    let sts7 = build_steiner_triple_system(7).unwrap();
    assert_eq!(canonical_form(&fano.blocks).unwrap(), canonical_form(&sts7.blocks).unwrap());

    assert!(matches!(
        decompose_exact(&MultiplicityTarget::complete(4), 1, Budget::unlimited()).unwrap(),
        Decomposition::Infeasible(_)
    ));

    let octa = MultiplicityTarget::complete_minus(6, [(1, 2), (3, 4), (5, 6)]).unwrap();
    let d = decompose_exact(&octa, 1, Budget::unlimited()).unwrap().design().unwrap();
    assert_eq!(d.blocks.edge_count(), 4);
    assert!(verify_design(&d).valid);
    assert!(decompose_exact(&octa, 0, Budget::unlimited()).is_err());
}

#[test]
fn divisibility() {
    assert!(k3t_divisible(&MultiplicityTarget::complete(9), 1));
    assert!(!k3t_divisible(&MultiplicityTarget::complete(8), 1));
    assert!(!k3t_divisible(&MultiplicityTarget::complete_minus(8, [(1, 2)]).unwrap(), 3));
}

#[test]
fn design_violations() {
    let fano = build_steiner_triple_system(7).unwrap();
    assert!(verify_design(&fano).valid);
    let fewer: Vec<Triple> = fano.blocks.edges()[1..].to_vec();
    let d = Design::from_blocks(fewer, 1, MultiplicityTarget::complete(7)).unwrap();
    let check = verify_design(&d);
    assert!(!check.valid);
    assert_eq!(check.violations.len(), 3);
    assert!(check.violations.iter().all(|v| v.expected == 1 && v.found == 0));
    let twice = vec![Triple::of(1, 2, 3), Triple::of(1, 2, 3)];
    assert!(Design::from_blocks(twice, 1, MultiplicityTarget::complete(3)).is_err());
}

#[test]
fn admissible_complete_graphs_decompose() {
    for n in 3..=13u32 {
        for t in 1..=3u32.min(n - 2) {
            if !dehon_admissible(n as i64, t as i64).unwrap() {
                continue;
            }
            let d = decompose_exact(&MultiplicityTarget::complete(n), t, Budget::nodes(20_000_000))
                .unwrap()
                .design()
                .unwrap_or_else(|| panic!("no design for ({n},{t})"));
            assert!(verify_design(&d).valid);
            assert_eq!(3 * d.blocks.edge_count() as u32, t * binom2(n));
        }
    }
}

#[test]
fn appendix_examples() {
    let a = appendix_lower_bound(9, 2, Budget::nodes(20_000_000)).unwrap();
    assert_eq!(a.hypergraph.edge_count(), 24);
    for x in 1..=9 {
        for y in x + 1..=9 {
            assert_eq!(a.hypergraph.codegree_all(x, y).unwrap(), 2);
        }
    }

    let h = pair_covering(8).unwrap();
    assert_eq!(h.edge_count(), 11);
    assert!(common::max_codegree(&h) >= 1);
    for x in 1..=8 {
        for y in x + 1..=8 {
            assert!(h.codegree_all(x, y).unwrap() >= 1);
        }
    }

    assert_eq!(dense_block(1).unwrap(), Hypergraph3::new(4, [[2, 3, 4]]).unwrap());
}

#[test]
fn pair_covering_range() {
    for n in (8..=20).step_by(2) {
        let h = pair_covering(n).unwrap();
        for x in 1..=n {
            for y in x + 1..=n {
                assert!(h.codegree_all(x, y).unwrap() >= 1);
            }
        }
        assert!(3 * h.edge_count() as u32 <= binom2(n) + n, "n = {n}");
    }
}

#[test]
fn dense_blocks() {
    for t in [1u32, 3, 5] {
        let h = dense_block(t).unwrap();
        assert_eq!(h.n(), t + 3);
        assert!(h.max_codegree() <= t);
        assert!(3 * h.edge_count() as u32 + (t + 3) >= t * binom2(t + 3));
    }
}

#[test]
fn packing_examples() {
    let c = ExF2tConfig::default();
    assert_eq!(ex_f2t(7, 1, &c).value.as_exact(), Some(7));
    assert_eq!(ex_f2t(4, 1, &c).value.as_exact(), Some(1));
    assert_eq!(ex_f2t(5, 1, &c).value.as_exact(), Some(2));
    for m in 1..20 {
        assert_eq!(ex_f2t(m, 0, &c).value.as_exact(), Some(0));
    }
}

#[test]
fn packing_matches_search() {
    let c = ExF2tConfig::default();
    for (t, top) in [(1, 11), (2, 9)] {
        for m in 3..=top {
            let r = ex_f2t(m, t, &c);
            assert_eq!(r.value.as_exact(), Some(common::brute_packing(m, t) as i64), "ex({m}, F2^{t})");
            assert_eq!(r.witness.edge_count() as i64, r.value.lo());
        }
    }
}

#[test]
fn packing_bounds_consistent() {
    let c = ExF2tConfig::default();
    for t in 0..=5 {
        for m in 1..=40 {
            let r = ex_f2t(m, t, &c);
            assert!(r.value.lo() <= r.value.hi());
            assert!(r.value.hi() <= ex_f2t_upper(m, t));
            assert!(r.witness.max_codegree() <= t);
            assert_eq!(r.witness.edge_count() as i64, r.value.lo());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn decompositions_verify(n in 4u32..=11, removed in proptest::collection::vec((1u32..=11, 1u32..=11), 0..6), t in 1u32..=2) {
        let pairs: Vec<(u32, u32)> = removed.into_iter().filter(|&(u, v)| u != v && u <= n && v <= n).map(|(u, v)| (u.min(v), u.max(v))).collect();
        let target = MultiplicityTarget::complete_minus(n, pairs).unwrap();
        match decompose_exact(&target, t, Budget::nodes(2_000_000)).unwrap() {
            Decomposition::Found(d) => {
                prop_assert!(verify_design(&d).valid);
                prop_assert!(k3t_divisible(&target, t));
            }
            Decomposition::Infeasible(_) | Decomposition::Timeout { .. } => {}
        }
    }
}

#[test]
fn appendix_grid() {
    let mut built = 0;
    for t in 1..=5u32 {
        for n in t + 3..=30 {
            match appendix_lower_bound(n, t, Budget::nodes(20_000_000)) {
                Ok(a) => {
                    assert!(a.hypergraph.max_codegree() <= t, "({n},{t})");
                    assert!(a.hypergraph.edge_count() as i64 >= a.claimed, "({n},{t})");
                    assert!(num_rational::Ratio::from(a.claimed) >= a.bound);
                    built += 1;
                }
                Err(turan3::Error::Infeasible(_)) => assert!(t % 2 == 1 && n % 2 == 0 && n <= 22, "({n},{t})"),
                Err(e) => panic!("({n},{t}): {e}"),
            }
        }
    }
    assert!(built > 100);
}
